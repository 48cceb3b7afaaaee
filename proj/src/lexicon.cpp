#include "gridgather/lexicon.hpp"

#include <algorithm>

namespace gridgather {

std::pair<Coord, Coord> Frame::coords(Node v) const {
  const Node d = v - corner;
  return {d.x * outer.x + d.y * outer.y, d.x * inner.x + d.y * inner.y};
}

Coord Frame::index(Node v) const {
  auto [line, pos] = coords(v);
  return line * line_length + pos;
}

Node Frame::node_at(Coord index) const {
  const Coord line = index / line_length;
  const Coord pos = index % line_length;
  return {corner.x + outer.x * line + inner.x * pos, corner.y + outer.y * line + inner.y * pos};
}

namespace {

// Label characters of every node of `rect`, column-major.
class LabelGrid {
 public:
  LabelGrid(const Configuration& c, const Rect& rect, Labeler labeler)
      : rect_(rect), cells_(rect.node_count(), '0') {
    if (labeler == Labeler::LambdaBinary) {
      for (Node m : c.meeting_nodes())
        if (rect.contains(m)) at(m) = '1';
      return;
    }
    for (Node m : c.meeting_nodes())
      if (rect.contains(m)) at(m) = '1';
    for (Node r : c.robots()) {
      if (!rect.contains(r)) continue;
      char& cell = at(r);
      switch (cell) {
        case '0': cell = '4'; break;
        case '1': cell = '2'; break;
        case '2': cell = '3'; break;
        case '4': cell = '5'; break;
        default: break;
      }
    }
  }

  char get(Node n) const { return cells_[offset(n)]; }

 private:
  std::size_t offset(Node n) const {
    return static_cast<std::size_t>((n.x - rect_.min_x) * (rect_.q() + 1) + (n.y - rect_.min_y));
  }
  char& at(Node n) { return cells_[offset(n)]; }

  Rect rect_;
  std::string cells_;
};

std::string scan(const LabelGrid& grid, const Rect& rect, const Frame& f) {
  std::string out;
  const Coord lines = static_cast<Coord>(rect.node_count()) / f.line_length;
  out.reserve(rect.node_count());
  for (Coord line = 0; line < lines; ++line) {
    Node n{f.corner.x + f.outer.x * line, f.corner.y + f.outer.y * line};
    for (Coord pos = 0; pos < f.line_length; ++pos) {
      out.push_back(grid.get(n));
      n = n + f.inner;
    }
  }
  return out;
}

std::pair<Frame, Frame> corner_frames(const Rect& rect, Node corner) {
  const Coord dx = corner.x == rect.min_x ? 1 : -1;
  const Coord dy = corner.y == rect.min_y ? 1 : -1;
  Frame vertical{corner, {dx, 0}, {0, dy}, rect.q() + 1};
  Frame horizontal{corner, {0, dy}, {dx, 0}, rect.p() + 1};
  return {vertical, horizontal};
}

std::vector<Node> distinct_corners(const Rect& rect) {
  std::vector<Node> out;
  for (Node k : rect.corners())
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  return out;
}

}  // namespace

std::vector<CornerString> corner_strings(const Configuration& c, const Rect& rect, Labeler labeler) {
  const LabelGrid grid(c, rect, labeler);
  std::vector<CornerString> out;
  out.reserve(8);
  for (Node k : rect.corners()) {
    auto [v, h] = corner_frames(rect, k);
    out.push_back({v, scan(grid, rect, v)});
    out.push_back({h, scan(grid, rect, h)});
  }
  return out;
}

CornerString string_repr(const CornerString& inner_vertical, const CornerString& inner_horizontal,
                         const Rect& rect) {
  if (rect.q() < rect.p()) return inner_vertical;
  if (rect.p() < rect.q()) return inner_horizontal;
  return inner_horizontal.symbols > inner_vertical.symbols ? inner_horizontal : inner_vertical;
}

std::vector<CornerString> corner_reprs(const Configuration& c, const Rect& rect, Labeler labeler) {
  const LabelGrid grid(c, rect, labeler);
  std::vector<CornerString> out;
  for (Node k : distinct_corners(rect)) {
    auto [v, h] = corner_frames(rect, k);
    if (rect.q() < rect.p()) {
      out.push_back({v, scan(grid, rect, v)});
    } else if (rect.p() < rect.q()) {
      out.push_back({h, scan(grid, rect, h)});
    } else {
      out.push_back(string_repr({v, scan(grid, rect, v)}, {h, scan(grid, rect, h)}, rect));
    }
  }
  return out;
}

std::vector<CornerString> maximal_reprs(const Configuration& c, const Rect& rect, Labeler labeler) {
  std::vector<CornerString> reprs = corner_reprs(c, rect, labeler);
  const auto best = std::max_element(reprs.begin(), reprs.end(), [](const auto& a, const auto& b) {
                      return a.symbols < b.symbols;
                    })->symbols;
  std::vector<CornerString> out;
  for (auto& r : reprs)
    if (r.symbols == best) out.push_back(std::move(r));
  return out;
}

KeyCorner key_corner(const Configuration& c) {
  auto best = maximal_reprs(c, mer(c), Labeler::Senary);
  if (best.size() != 1) {
    std::vector<Node> tied;
    for (const auto& r : best) tied.push_back(r.corner());
    throw NoUniqueKeyCorner(std::move(tied));
  }
  return {best.front().corner(), best.front()};
}

std::string max_repr_string(const Configuration& c) {
  return maximal_reprs(c, mer(c), Labeler::Senary).front().symbols;
}

std::vector<CornerString> leading_corners(const Configuration& c) {
  return maximal_reprs(c, mer_f(c), Labeler::LambdaBinary);
}

ConfigView config_view(const Configuration& c, const CornerString& key, Node v) {
  return {key.frame.index(v), label(c, v)};
}

std::vector<Node> appearance_order(const CornerString& scan, const std::vector<Node>& nodes) {
  std::vector<std::pair<Coord, Node>> keyed;
  keyed.reserve(nodes.size());
  for (Node n : nodes) keyed.emplace_back(scan.frame.index(n), n);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Node> out;
  for (auto& [idx, n] : keyed) out.push_back(n);
  return out;
}

MeetingOrder ordering_O(const Configuration& c) {
  const auto leading = leading_corners(c);
  if (leading.size() != 1) throw Error(ErrorCode::OrderingUndefined, "meeting nodes are symmetric");
  return {appearance_order(leading.front(), c.meeting_nodes()), OrderKind::Full};
}

MeetingOrder ordering_O_prime(const Configuration& c, const Isometry& axis) {
  if (!axis.is_reflection()) throw Error(ErrorCode::OrderingUndefined, "not a reflection");
  for (Node m : c.meeting_nodes())
    if (!c.is_meeting(axis.apply(m))) throw Error(ErrorCode::OrderingUndefined, "axis is not a symmetry of M");
  std::vector<Node> on_axis;
  for (Node m : c.meeting_nodes())
    if (axis.fixes(m)) on_axis.push_back(m);
  if (on_axis.empty()) throw Error(ErrorCode::OrderingUndefined, "no meeting node on the axis");
  const auto leading = leading_corners(c);
  return {appearance_order(leading.front(), on_axis), OrderKind::OnAxis};
}

MeetingOrder ordering_O_doubleprime(const Configuration& c, Node guard) {
  if (!mer(c).is_corner(guard)) throw Error(ErrorCode::OrderingUndefined, "guard is not at a corner");
  std::vector<Node> pts = c.meeting_nodes();
  pts.push_back(guard);
  const Rect rect = bounding_rect(pts);
  const LabelGrid grid(c, rect, Labeler::LambdaBinary);
  auto [v, h] = corner_frames(rect, guard);
  const CornerString repr = string_repr({v, scan(grid, rect, v)}, {h, scan(grid, rect, h)}, rect);
  return {appearance_order(repr, c.meeting_nodes()), OrderKind::FromGuard};
}

}  // namespace gridgather
