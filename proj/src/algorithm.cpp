#include "gridgather/algorithm.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "gridgather/lexicon.hpp"
#include "gridgather/symmetry.hpp"

namespace gridgather {

Snapshot Snapshot::of(const Configuration& c, Node self) {
  return {weaken(c), self, c.robots_at(self) > 1};
}

namespace {

struct ConfigHash {
  std::size_t operator()(const Configuration& c) const {
    std::size_t h = c.robots().size() * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](Node n) {
      h ^= NodeHash{}(n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (Node n : c.robots()) mix(n);
    for (Node n : c.meeting_nodes()) mix(n);
    return h;
  }
};

Rect grown(const Rect& r) { return {r.min_x - 1, r.min_y - 1, r.max_x + 1, r.max_y + 1}; }

Coord witness_distance(const std::optional<Isometry>& w, Node n) {
  return w ? w->doubled_distance(n) : 0;
}

// Path costs to a target. Entering a meeting node other than the target costs
// more than any detour around it inside the box.
class Field {
 public:
  /// Nodes outside `box`, and nodes at least `limit` from the witness when
  /// given, are never entered.
  Field(const Configuration& v, Node target, const Rect& box,
        const std::optional<std::pair<Isometry, Coord>>& limit = std::nullopt)
      : target_(target), box_(box) {
    penalty_ = static_cast<Coord>(box_.node_count());
    dist_.assign(box_.node_count(), kInf);
    extra_.assign(box_.node_count(), 0);
    for (Node m : v.meeting_nodes())
      if (m != target && box_.contains(m)) extra_[offset(m)] = penalty_;

    using Item = std::pair<Coord, Node>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist_[offset(target)] = 0;
    queue.emplace(0, target);
    while (!queue.empty()) {
      auto [d, w] = queue.top();
      queue.pop();
      if (d != dist_[offset(w)]) continue;
      if (w != target && limit && limit->first.doubled_distance(w) >= limit->second) continue;
      const Coord through = d + enter(w);
      for (Node u : neighbors(w)) {
        if (!box_.contains(u) || through >= dist_[offset(u)]) continue;
        dist_[offset(u)] = through;
        queue.emplace(through, u);
      }
    }
  }

  Coord cost(Node n) const { return box_.contains(n) ? dist_[offset(n)] : kInf; }
  Coord enter(Node n) const { return 1 + extra_[offset(n)]; }
  Node target() const { return target_; }

 private:
  static constexpr Coord kInf = std::numeric_limits<Coord>::max() / 4;

  std::size_t offset(Node n) const {
    return static_cast<std::size_t>((n.x - box_.min_x) * (box_.q() + 1) + (n.y - box_.min_y));
  }

  Node target_;
  Rect box_;
  Coord penalty_ = 0;
  std::vector<Coord> dist_;
  std::vector<Coord> extra_;
};

// Stepping onto a meeting node next to another robot could let both arrive
// together and end the run on the wrong node.
bool crowded_meeting(const Configuration& view, Node from, Node n) {
  if (!view.is_meeting(n)) return false;
  if (view.robots_at(n) > 0) return true;
  for (Node u : neighbors(n))
    if (u != from && view.robots_at(u) > 0) return true;
  return false;
}

// Steps that follow the field, best first.
// With `hold_distance` a step only has to avoid moving away from the witness;
// otherwise the step closest to it wins.
std::vector<Node> ranked_steps(const Configuration& view, Node from, const Field& field,
                               const std::optional<Isometry>& witness, const CornerString& frame,
                               bool hold_distance = false) {
  std::vector<Node> closer;
  for (Node n : neighbors(from))
    if (field.cost(n) < field.cost(from) && field.cost(n) + field.enter(n) == field.cost(from))
      closer.push_back(n);
  const Coord here = witness_distance(witness, from);
  auto key = [&](Node n) {
    const Coord d = witness_distance(witness, n);
    return std::make_tuple(n != field.target() && crowded_meeting(view, from, n),
                           hold_distance ? Coord{d > here} : d, frame.frame.coords(n));
  };
  std::sort(closer.begin(), closer.end(), [&](Node a, Node b) { return key(a) < key(b); });
  return closer;
}

Node step_with(const Configuration& view, Node from, const Field& field,
               const std::optional<Isometry>& witness, const CornerString& frame, bool hold_distance = false) {
  return ranked_steps(view, from, field, witness, frame, hold_distance).front();
}

// Resulting-string rule: keep the configuration gatherable, then prefer it
// asymmetric, then the largest representation; last resort scan order.
Node pick_by_result(const Configuration& view, Node from, const std::vector<Node>& candidates,
                    const CornerString& frame) {
  using Key = std::tuple<bool, bool, std::string, std::pair<Coord, Coord>>;
  std::optional<Key> best_key;
  Node best = candidates.front();
  for (Node to : candidates) {
    const Configuration after = weaken(with_move(view, from, to));
    const auto coords = frame.frame.coords(to);
    Key k{!is_ungatherable(after), find_automorphisms(after).is_asymmetric, max_repr_string(after),
          std::make_pair(-coords.first, -coords.second)};
    if (!best_key || k > *best_key) {
      best_key = std::move(k);
      best = to;
    }
  }
  return best;
}

bool leads_to_u(const Configuration& view, Node from, Node to) {
  return is_ungatherable(weaken(with_move(view, from, to)));
}

// Positions on the fixed set of some automorphism, then their spread around
// the centre of mer_f (larger spread is lower).
std::pair<std::size_t, Coord> symmetry_potential(const Configuration& c) {
  const Node c2 = mer_f(c).doubled_center();
  const auto autos = find_automorphisms(c).automorphisms;
  std::size_t count = 0;
  Coord spread = 0;
  for (Node n : c.positions()) {
    if (std::none_of(autos.begin(), autos.end(), [&](const Isometry& w) { return w.fixes(n); })) continue;
    ++count;
    spread += std::abs(2 * n.x - c2.x) + std::abs(2 * n.y - c2.y);
  }
  return {count, -spread};
}

Node break_symmetry_move(const Analysis& a, Node robot, const Isometry& axis) {
  const Configuration& v = a.view;
  const auto before = symmetry_potential(v);
  std::vector<Node> off_axis;
  std::vector<Node> on_axis;
  for (Node n : neighbors(robot)) (axis.fixes(n) ? on_axis : off_axis).push_back(n);
  std::vector<Node> free_off;
  std::copy_if(off_axis.begin(), off_axis.end(), std::back_inserter(free_off), [&](Node n) {
    return v.robots_at(n) == 0 && symmetry_potential(weaken(with_move(v, robot, n))) < before;
  });
  const Node chosen = pick_by_result(v, robot, free_off.empty() ? off_axis : free_off, a.tie_frame);
  // Merging into a neighbour shrinks the occupancy view and landing on a
  // fuller axis undoes the progress, so walk the axis instead.
  const bool merges = v.robots_at(chosen) > 0;
  if ((!merges && !free_off.empty() && !leads_to_u(v, robot, chosen)) || on_axis.empty()) return chosen;
  const Node c2 = mer_f(v).doubled_center();
  auto away = [&](Node n) {
    return std::abs(2 * n.x - c2.x) + std::abs(2 * n.y - c2.y);
  };
  std::vector<Node> outward;
  const Coord best = away(*std::max_element(on_axis.begin(), on_axis.end(),
                                           [&](Node x, Node y) { return away(x) < away(y); }));
  for (Node n : on_axis)
    if (away(n) == best) outward.push_back(n);
  return pick_by_result(v, robot, outward, a.tie_frame);
}

void plan_symmetry_break(Plan& p) {
  const Analysis& a = p.analysis;
  const Configuration& v = a.view;
  const Isometry& w = *a.cls.witness;
  if (a.cls.value == ClassKind::I32) {
    const Node center{w.doubled_anchor().x / 2, w.doubled_anchor().y / 2};
    const auto around = neighbors(center);
    p.moves[center] = pick_by_result(v, center, {around.begin(), around.end()}, a.tie_frame);
    return;
  }
  std::vector<Node> on_axis;
  for (Node r : v.positions())
    if (w.fixes(r)) on_axis.push_back(r);
  const Node robot = *std::max_element(on_axis.begin(), on_axis.end(), [&](Node x, Node y) {
    return config_view(v, a.tie_frame, x) < config_view(v, a.tie_frame, y);
  });
  p.moves[robot] = break_symmetry_move(a, robot, w);
}

void plan_guard_select(Plan& p) {
  const Analysis& a = p.analysis;
  const Node g = *a.guard;
  std::vector<Node> away;
  for (Node n : neighbors(g))
    if (a.m_witness->doubled_distance(n) > a.m_witness->doubled_distance(g)) away.push_back(n);
  p.moves[g] = pick_by_result(a.view, g, away, a.tie_frame);
}

void plan_guard_place(Plan& p) {
  const Analysis& a = p.analysis;
  const Isometry& w = *a.m_witness;
  const Node g = *a.guard;
  const Coord here = w.doubled_distance(g);
  auto steps_to = [&](Node k) {
    std::vector<Node> out;
    if (k.x != g.x) out.push_back({g.x + (k.x > g.x ? 1 : -1), g.y});
    if (k.y != g.y) out.push_back({g.x, g.y + (k.y > g.y ? 1 : -1)});
    return out;
  };
  auto feasible = [&](Node k) {
    const auto s = steps_to(k);
    return std::all_of(s.begin(), s.end(), [&](Node n) { return w.doubled_distance(n) >= here; });
  };
  std::vector<Node> corners;
  for (Node k : mer(a.view).corners())
    if (k != g && std::find(corners.begin(), corners.end(), k) == corners.end()) corners.push_back(k);
  std::vector<Node> pool;
  std::copy_if(corners.begin(), corners.end(), std::back_inserter(pool), feasible);
  if (pool.empty()) pool = corners;
  Coord nearest = -1;
  for (Node k : pool)
    if (nearest < 0 || manhattan_distance(g, k) < nearest) nearest = manhattan_distance(g, k);
  std::vector<Node> candidates;
  for (Node k : pool) {
    if (manhattan_distance(g, k) != nearest) continue;
    for (Node n : steps_to(k))
      if (std::find(candidates.begin(), candidates.end(), n) == candidates.end()) candidates.push_back(n);
  }
  std::vector<Node> keep;
  for (Node n : candidates)
    if (w.doubled_distance(n) >= here) keep.push_back(n);
  p.moves[g] = pick_by_result(a.view, g, keep.empty() ? candidates : keep, a.tie_frame);
}

// Robots mirrored across an axis of the whole configuration head for a
// meeting node on it. Targets and step choices whose synchronous outcome is
// ungatherable are skipped.
void plan_axis_gap(Plan& p, const std::optional<Isometry>& witness) {
  Analysis& a = p.analysis;
  const Configuration& v = a.view;
  const Isometry& axis = *a.cls.witness;
  // Side of the perpendicular axis through the centre of M on which the robots
  // weigh more; staying on it keeps the robots from becoming symmetric under
  // the rotation of M.
  const Node c2 = witness->doubled_anchor();
  auto across = [&](Node n) {
    switch (axis.kind()) {
      case IsometryKind::ReflectVertical: return 2 * n.y - c2.y;
      case IsometryKind::ReflectHorizontal: return 2 * n.x - c2.x;
      case IsometryKind::ReflectDiagonal: return 2 * (n.x + n.y) - (c2.x + c2.y);
      default: return 2 * (n.x - n.y) - (c2.x - c2.y);
    }
  };
  Coord weight = 0;
  for (Node r : v.positions()) weight += across(r);
  std::vector<std::tuple<int, Coord, Node>> ranked;
  for (Node m : v.meeting_nodes()) {
    if (!axis.fixes(m)) continue;
    Coord total = 0;
    for (Node r : v.positions()) total += manhattan_distance(r, m);
    const Coord side = across(m) * weight;
    ranked.emplace_back(side > 0 ? 0 : (side == 0 ? 1 : 2), total, m);
  }
  std::sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
    return a.tie_frame.frame.index(std::get<2>(x)) > a.tie_frame.frame.index(std::get<2>(y));
  });
  std::optional<std::pair<Node, std::map<Node, Node>>> fallback;
  for (const auto& [side, total, target] : ranked) {
    const Field field(v, target, grown(mer(v)));
    std::vector<Node> movers;
    std::vector<std::vector<Node>> options;
    // Only the nearest robots move, so a partner left behind by the
    // scheduler is never one the guard flow would pick.
    Coord nearest = -1;
    for (Node r : v.positions())
      if (r != target && (nearest < 0 || field.cost(r) < nearest)) nearest = field.cost(r);
    for (Node r : v.positions()) {
      if (r == target || field.cost(r) != nearest) continue;
      movers.push_back(r);
      options.push_back(ranked_steps(v, r, field, witness, a.tie_frame));
      if (weight != 0)
        std::stable_sort(options.back().begin(), options.back().end(), [&](Node x, Node y) {
          return across(x) * weight > across(y) * weight;
        });
    }
    std::vector<std::size_t> pick(movers.size(), 0);
    for (int tries = 0; tries < 256; ++tries) {
      std::map<Node, Node> moves;
      Configuration after = v;
      for (std::size_t i = 0; i < movers.size(); ++i) {
        moves[movers[i]] = options[i][pick[i]];
        after = with_move(after, movers[i], options[i][pick[i]]);
      }
      if (!fallback) fallback.emplace(target, moves);
      if (!is_ungatherable(weaken(after))) {
        a.target = target;
        p.moves = std::move(moves);
        return;
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  a.target = fallback->first;
  p.moves = std::move(fallback->second);
}

}  // namespace

Plan plan(const Configuration& c) {
  Plan p{analyze(c), {}};
  const Analysis& a = p.analysis;
  const Configuration& v = a.view;
  const auto witness = meeting_witness(v);
  std::optional<Field> field;
  if (a.phase == Phase::MakeMultiplicity) {
    field.emplace(v, *a.target, mer(v), std::make_pair(*a.m_witness, a.m_witness->doubled_distance(*a.guard)));
  } else if (a.target) {
    field.emplace(v, *a.target, grown(mer(v)));
  }
  auto toward = [&](Node from) { return step_with(v, from, *field, witness, a.tie_frame); };

  switch (a.phase) {
    case Phase::Done:
      break;
    case Phase::MoveToInvariantTarget:
      if (a.cls.configuration_axis) {
        plan_axis_gap(p, witness);
        break;
      }
      for (Node r : v.positions())
        if (r != *a.target) p.moves[r] = toward(r);
      break;
    case Phase::SymmetryBreak:
      plan_symmetry_break(p);
      break;
    case Phase::GuardSelect:
      plan_guard_select(p);
      break;
    case Phase::GuardPlace:
      plan_guard_place(p);
      break;
    case Phase::MakeMultiplicity: {
      Coord nearest = -1;
      for (Node r : v.positions()) {
        if (r == *a.guard || r == *a.target) continue;
        const Coord d = field->cost(r);
        if (nearest < 0 || d < nearest) nearest = d;
      }
      for (Node r : v.positions())
        if (r != *a.guard && r != *a.target && field->cost(r) == nearest)
          p.moves[r] = toward(r);
      break;
    }
    case Phase::GuardMove:
      p.moves[*a.guard] = step_with(v, *a.guard, *field, witness, a.tie_frame, true);
      break;
  }
  return p;
}

const Plan& cached_plan(const Configuration& c) {
  thread_local std::unordered_map<Configuration, Plan, ConfigHash> cache;
  Configuration view = weaken(c);
  if (auto it = cache.find(view); it != cache.end()) return it->second;
  if (cache.size() > (1u << 15)) cache.clear();
  Plan p = plan(view);
  return cache.emplace(std::move(view), std::move(p)).first->second;
}

Node target_meeting_node(const Configuration& c) {
  const Analysis& a = cached_plan(c).analysis;
  switch (a.phase) {
    case Phase::GuardSelect:
    case Phase::GuardPlace:
    case Phase::SymmetryBreak:
      throw Error(ErrorCode::NoGuardYet, std::string(to_string(a.phase)));
    default:
      return *a.target;
  }
}

Node step_toward(Node from, Node to, const Configuration& c) {
  const Configuration v = weaken(c);
  if (from == to) return from;
  std::vector<Node> pts = v.positions();
  pts.insert(pts.end(), v.meeting_nodes().begin(), v.meeting_nodes().end());
  pts.push_back(from);
  pts.push_back(to);
  return step_with(v, from, Field(v, to, grown(bounding_rect(pts))), meeting_witness(v), maximal_reprs(v, mer(v), Labeler::Senary).front());
}

// Robots on a multiplicity whose occupancy view is symmetric are the only
// ones that know otherwise. They step so that the view stays asymmetric
// whether one or all of them move.
Node escape_multiplicity(const Configuration& view, Node self) {
  using Key = std::tuple<bool, bool, bool, std::string, std::string, Node>;
  std::optional<Key> best_key;
  Node best = self;
  for (Node to : neighbors(self)) {
    const Configuration all = weaken(with_move(view, self, to));
    std::vector<Node> split = view.positions();
    split.push_back(to);
    const Configuration some = weaken(Configuration(split, view.meeting_nodes()));
    Key k{!is_ungatherable(all) && !is_ungatherable(some),
          find_automorphisms(all).is_asymmetric && find_automorphisms(some).is_asymmetric, view.robots_at(to) == 0,
          max_repr_string(all), max_repr_string(some), to};
    if (!best_key || k > *best_key) {
      best_key = std::move(k);
      best = to;
    }
  }
  return best;
}

Decision decide(const Snapshot& s) {
  const Plan* p = nullptr;
  try {
    p = &cached_plan(s.observed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Ungatherable) throw;
    if (!s.self_multiplicity) return {};
    return {escape_multiplicity(s.observed, s.self)};
  }
  if (auto it = p->moves.find(s.self); it != p->moves.end()) return {it->second};
  return {};
}

Node guard_designate(const Configuration& c) {
  const Configuration v = weaken(c);
  const auto witness = meeting_witness(v);
  if (!witness) throw Error(ErrorCode::SymmetricConfiguration, "meeting nodes are asymmetric");
  try {
    const KeyCorner key = key_corner(v);
    return designated_guard(v, *witness, key.repr);
  } catch (const NoUniqueKeyCorner& e) {
    throw Error(ErrorCode::SymmetricConfiguration, e.what());
  }
}

}  // namespace gridgather
