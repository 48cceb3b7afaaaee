#include "gridgather/symmetry.hpp"

#include <algorithm>
#include <sstream>

namespace gridgather {

namespace {

Coord abs_c(Coord v) { return v < 0 ? -v : v; }
bool even(Coord v) { return (v % 2) == 0; }

const LabeledPoint* find_point(std::span<const LabeledPoint> sorted, Node n) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), n,
                             [](const LabeledPoint& p, Node v) { return p.first < v; });
  if (it == sorted.end() || it->first != n) return nullptr;
  return &*it;
}

}  // namespace

std::string_view to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Identity: return "Identity";
    case IsometryKind::ReflectVertical: return "ReflectVertical";
    case IsometryKind::ReflectHorizontal: return "ReflectHorizontal";
    case IsometryKind::ReflectDiagonal: return "ReflectDiagonal";
    case IsometryKind::ReflectAntidiagonal: return "ReflectAntidiagonal";
    case IsometryKind::Rotate90: return "Rotate90";
    case IsometryKind::Rotate180: return "Rotate180";
    case IsometryKind::Rotate270: return "Rotate270";
  }
  return "?";
}

Isometry::Isometry(IsometryKind kind, Node doubled_anchor) : kind_(kind), anchor2_(doubled_anchor) {
  switch (kind_) {
    case IsometryKind::ReflectDiagonal:
    case IsometryKind::ReflectAntidiagonal:
    case IsometryKind::Rotate90:
    case IsometryKind::Rotate270:
      if (!even(anchor2_.x - anchor2_.y))
        throw Error(ErrorCode::InvalidConfiguration, "anchor parity does not map nodes to nodes");
      break;
    default:
      break;
  }
}

Node Isometry::apply(Node n) const {
  const Coord ax = anchor2_.x;
  const Coord ay = anchor2_.y;
  switch (kind_) {
    case IsometryKind::Identity: return n;
    case IsometryKind::ReflectVertical: return {ax - n.x, n.y};
    case IsometryKind::ReflectHorizontal: return {n.x, ay - n.y};
    case IsometryKind::ReflectDiagonal: return {(ax - ay) / 2 + n.y, n.x - (ax - ay) / 2};
    case IsometryKind::ReflectAntidiagonal: return {(ax + ay) / 2 - n.y, (ax + ay) / 2 - n.x};
    case IsometryKind::Rotate90: return {(ax + ay) / 2 - n.y, (ay - ax) / 2 + n.x};
    case IsometryKind::Rotate180: return {ax - n.x, ay - n.y};
    case IsometryKind::Rotate270: return {(ax - ay) / 2 + n.y, (ax + ay) / 2 - n.x};
  }
  return n;
}

int Isometry::order() const {
  switch (kind_) {
    case IsometryKind::Identity: return 1;
    case IsometryKind::Rotate90:
    case IsometryKind::Rotate270: return 4;
    default: return 2;
  }
}

bool Isometry::is_reflection() const {
  return kind_ == IsometryKind::ReflectVertical || kind_ == IsometryKind::ReflectHorizontal ||
         kind_ == IsometryKind::ReflectDiagonal || kind_ == IsometryKind::ReflectAntidiagonal;
}

bool Isometry::is_rotation() const {
  return kind_ == IsometryKind::Rotate90 || kind_ == IsometryKind::Rotate180 ||
         kind_ == IsometryKind::Rotate270;
}

bool Isometry::has_fixed_nodes() const {
  switch (kind_) {
    case IsometryKind::Identity: return true;
    case IsometryKind::ReflectVertical: return even(anchor2_.x);
    case IsometryKind::ReflectHorizontal: return even(anchor2_.y);
    // A diagonal through a lattice-parity anchor always contains nodes.
    case IsometryKind::ReflectDiagonal:
    case IsometryKind::ReflectAntidiagonal: return true;
    default: return even(anchor2_.x) && even(anchor2_.y);
  }
}

Coord Isometry::doubled_distance(Node n) const {
  const Coord dx = 2 * n.x - anchor2_.x;
  const Coord dy = 2 * n.y - anchor2_.y;
  switch (kind_) {
    case IsometryKind::Identity: return 0;
    case IsometryKind::ReflectVertical: return abs_c(dx);
    case IsometryKind::ReflectHorizontal: return abs_c(dy);
    case IsometryKind::ReflectDiagonal: return abs_c(dx - dy);
    case IsometryKind::ReflectAntidiagonal: return abs_c(dx + dy);
    default: return abs_c(dx) + abs_c(dy);
  }
}

bool operator==(const Isometry& a, const Isometry& b) {
  if (a.kind_ != b.kind_) return false;
  const Node p = a.anchor2_;
  const Node q = b.anchor2_;
  switch (a.kind_) {
    case IsometryKind::Identity: return true;
    case IsometryKind::ReflectVertical: return p.x == q.x;
    case IsometryKind::ReflectHorizontal: return p.y == q.y;
    case IsometryKind::ReflectDiagonal: return p.x - p.y == q.x - q.y;
    case IsometryKind::ReflectAntidiagonal: return p.x + p.y == q.x + q.y;
    default: return p == q;
  }
}

std::string Isometry::describe() const {
  std::ostringstream os;
  auto half = [](Coord v2) {
    std::ostringstream h;
    if (even(v2)) {
      h << v2 / 2;
    } else {
      h << (v2 < 0 ? "-" : "") << abs_c(v2) / 2 << ".5";
    }
    return h.str();
  };
  const Node a = anchor2_;
  switch (kind_) {
    case IsometryKind::Identity: os << "identity"; break;
    case IsometryKind::ReflectVertical: os << "reflection x=" << half(a.x); break;
    case IsometryKind::ReflectHorizontal: os << "reflection y=" << half(a.y); break;
    case IsometryKind::ReflectDiagonal: os << "reflection x-y=" << half(a.x - a.y); break;
    case IsometryKind::ReflectAntidiagonal: os << "reflection x+y=" << half(a.x + a.y); break;
    default:
      os << "rotation " << (kind_ == IsometryKind::Rotate180 ? 180 : (kind_ == IsometryKind::Rotate90 ? 90 : 270))
         << " about (" << half(a.x) << ',' << half(a.y) << ")";
      break;
  }
  return os.str();
}

std::vector<LabeledPoint> labeled_points(const Configuration& c) {
  std::vector<Node> nodes = c.positions();
  nodes.insert(nodes.end(), c.meeting_nodes().begin(), c.meeting_nodes().end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<LabeledPoint> out;
  out.reserve(nodes.size());
  for (Node n : nodes) out.emplace_back(n, label(c, n));
  return out;
}

std::vector<LabeledPoint> meeting_points(const Configuration& c) {
  std::vector<LabeledPoint> out;
  out.reserve(c.meeting_nodes().size());
  for (Node n : c.meeting_nodes()) out.emplace_back(n, NodeLabel::Meeting);
  return out;
}

std::vector<Isometry> SymmetryReport::reflections() const {
  std::vector<Isometry> out;
  for (const auto& a : automorphisms)
    if (a.is_reflection()) out.push_back(a);
  return out;
}

std::optional<Isometry> SymmetryReport::rotation180() const {
  for (const auto& a : automorphisms)
    if (a.kind() == IsometryKind::Rotate180) return a;
  return std::nullopt;
}

bool SymmetryReport::has_quarter_turn() const {
  return std::any_of(automorphisms.begin(), automorphisms.end(),
                     [](const Isometry& a) { return a.kind() == IsometryKind::Rotate90; });
}

SymmetryReport find_automorphisms(std::span<const LabeledPoint> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyPointSet);
  std::vector<LabeledPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<Node> nodes;
  nodes.reserve(sorted.size());
  for (const auto& p : sorted) nodes.push_back(p.first);
  const Rect box = bounding_rect(nodes);
  const Node center = box.doubled_center();

  std::vector<IsometryKind> candidates{IsometryKind::ReflectVertical, IsometryKind::ReflectHorizontal,
                                       IsometryKind::Rotate180};
  if (box.is_square()) {
    candidates.insert(candidates.end(), {IsometryKind::ReflectDiagonal, IsometryKind::ReflectAntidiagonal,
                                         IsometryKind::Rotate90, IsometryKind::Rotate270});
  }

  SymmetryReport report;
  for (IsometryKind kind : candidates) {
    const Isometry iso(kind, center);
    bool ok = true;
    for (const auto& [n, l] : sorted) {
      const LabeledPoint* image = find_point(sorted, iso.apply(n));
      if (image == nullptr || image->second != l) {
        ok = false;
        break;
      }
    }
    if (ok) report.automorphisms.push_back(iso);
  }
  report.is_asymmetric = report.automorphisms.empty();
  auto refl = report.reflections();
  if (refl.size() == 1) report.unique_reflection_axis = refl.front();
  if (auto r = report.rotation180()) report.rotation_center = r->doubled_anchor();
  return report;
}

SymmetryReport find_automorphisms(const Configuration& c) {
  const auto pts = labeled_points(c);
  return find_automorphisms(pts);
}

Rect stable_universe(const Rect& r, const Isometry& iso) {
  if (iso.kind() == IsometryKind::Identity) return r;
  const Node a = iso.doubled_anchor();
  Coord hx = std::max(abs_c(2 * r.min_x - a.x), abs_c(2 * r.max_x - a.x));
  Coord hy = std::max(abs_c(2 * r.min_y - a.y), abs_c(2 * r.max_y - a.y));
  switch (iso.kind()) {
    case IsometryKind::ReflectVertical:
      return {(a.x - hx) / 2, r.min_y, (a.x + hx) / 2, r.max_y};
    case IsometryKind::ReflectHorizontal:
      return {r.min_x, (a.y - hy) / 2, r.max_x, (a.y + hy) / 2};
    case IsometryKind::Rotate180:
      return {(a.x - hx) / 2, (a.y - hy) / 2, (a.x + hx) / 2, (a.y + hy) / 2};
    default: {
      // Quarter turns and diagonals need a square centred on the anchor.
      Coord h = std::max(hx, hy);
      if (!even(h - a.x)) ++h;
      return {(a.x - h) / 2, (a.y - h) / 2, (a.x + h) / 2, (a.y + h) / 2};
    }
  }
}

OrbitPartition orbits(const Rect& universe, const Isometry& iso) {
  for (Node corner : universe.corners()) {
    if (!universe.is_corner(iso.apply(corner))) throw Error(ErrorCode::UniverseNotStable);
  }
  OrbitPartition out;
  out.generator = iso;
  std::set<Node> seen;
  for (Coord x = universe.min_x; x <= universe.max_x; ++x) {
    for (Coord y = universe.min_y; y <= universe.max_y; ++y) {
      const Node start{x, y};
      if (seen.contains(start)) continue;
      std::vector<Node> cycle;
      Node cur = start;
      do {
        cycle.push_back(cur);
        seen.insert(cur);
        cur = iso.apply(cur);
      } while (cur != start);
      out.orbits.push_back(std::move(cycle));
    }
  }
  return out;
}

std::set<Node> fixed_nodes(const Configuration& c, const Isometry& iso) {
  std::set<Node> out;
  const Rect u = stable_universe(mer(c), iso);
  for (Coord x = u.min_x; x <= u.max_x; ++x)
    for (Coord y = u.min_y; y <= u.max_y; ++y)
      if (iso.fixes({x, y})) out.insert({x, y});
  return out;
}

bool is_partitive(const Configuration& c, const Isometry& iso, const std::set<Node>& excluded) {
  const int k = iso.order();
  if (k <= 1) return false;
  const OrbitPartition part = orbits(stable_universe(mer(c), iso), iso);
  for (const auto& orbit : part.orbits) {
    if (static_cast<int>(orbit.size()) == k) continue;
    for (Node n : orbit)
      if (!excluded.contains(n)) return false;
  }
  return true;
}

std::optional<Isometry> ungatherable_witness(const Configuration& c) {
  const auto pts = labeled_points(c);
  const SymmetryReport rep = find_automorphisms(pts);
  for (const Isometry& iso : rep.automorphisms) {
    bool occupied_fixed = false;
    for (const auto& [n, l] : pts) {
      if (iso.fixes(n)) {
        occupied_fixed = true;
        break;
      }
    }
    if (!occupied_fixed) return iso;
  }
  return std::nullopt;
}

bool is_ungatherable(const Configuration& c) { return ungatherable_witness(c).has_value(); }

Configuration apply(const Isometry& g, const Configuration& c) {
  std::vector<Node> r;
  std::vector<Node> m;
  for (Node n : c.robots()) r.push_back(g.apply(n));
  for (Node n : c.meeting_nodes()) m.push_back(g.apply(n));
  return Configuration(std::move(r), std::move(m));
}

}  // namespace gridgather
