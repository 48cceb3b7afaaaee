#include "gridgather/classifier.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace gridgather {

namespace {

constexpr std::array<std::pair<ClassKind, std::string_view>, 10> kClassNames{{
    {ClassKind::I11, "I11"},
    {ClassKind::I12, "I12"},
    {ClassKind::I13, "I13"},
    {ClassKind::I21, "I21"},
    {ClassKind::I22, "I22"},
    {ClassKind::I31, "I31"},
    {ClassKind::I32, "I32"},
    {ClassKind::U, "U"},
    {ClassKind::Final, "Final"},
    {ClassKind::RunningAsym, "RunningAsym"},
}};

bool any_fixed(const Isometry& iso, const std::vector<Node>& nodes) {
  return std::any_of(nodes.begin(), nodes.end(), [&](Node n) { return iso.fixes(n); });
}

Node center_node(const Isometry& rotation) {
  const Node a = rotation.doubled_anchor();
  return {a.x / 2, a.y / 2};
}

}  // namespace

std::string_view to_string(ClassKind k) {
  for (const auto& [kind, name] : kClassNames)
    if (kind == k) return name;
  return "?";
}

std::optional<ClassKind> class_from_string(std::string_view s) {
  for (const auto& [kind, name] : kClassNames)
    if (name == s) return kind;
  return std::nullopt;
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::MoveToInvariantTarget: return "MoveToInvariantTarget";
    case Phase::SymmetryBreak: return "SymmetryBreak";
    case Phase::GuardSelect: return "GuardSelect";
    case Phase::GuardPlace: return "GuardPlace";
    case Phase::MakeMultiplicity: return "MakeMultiplicity";
    case Phase::GuardMove: return "GuardMove";
    case Phase::Done: return "Done";
  }
  return "?";
}

std::string ConfigClass::describe() const {
  std::ostringstream os;
  os << to_string(value);
  if (witness) {
    const bool rot = witness->is_rotation();
    const Node a = witness->doubled_anchor();
    os << " (" << (rot ? "rotational" : "reflective") << ", " << witness->describe();
    if (rot) {
      const bool node = (a.x % 2 == 0) && (a.y % 2 == 0);
      const bool face = (a.x % 2 != 0) && (a.y % 2 != 0);
      os << ", center " << (node ? "node" : (face ? "face" : "edge"));
    } else {
      os << ", axis through " << (witness->has_fixed_nodes() ? "nodes" : "edges");
    }
    if (value == ClassKind::U) os << ", nothing at " << (rot ? "center" : "axis");
    if (configuration_axis) os << ", axis of R∪M";
    os << ')';
  }
  return os.str();
}

std::optional<Isometry> meeting_witness(const Configuration& c) {
  if (c.meeting_nodes().size() < 2) return std::nullopt;
  const auto pts = meeting_points(c);
  const SymmetryReport rep = find_automorphisms(pts);
  if (rep.is_asymmetric) return std::nullopt;
  if (auto rot = rep.rotation180()) return rot;
  return rep.unique_reflection_axis;
}

ConfigClass classify(const Configuration& c) {
  if (is_final(c)) return {ClassKind::Final, std::nullopt};
  if (auto w = ungatherable_witness(c)) return {ClassKind::U, w};

  const auto& meeting = c.meeting_nodes();
  const auto witness = meeting_witness(c);
  if (!witness) return {ClassKind::I11, std::nullopt};

  if (witness->is_rotation()) {
    if (witness->has_fixed_nodes() && c.is_meeting(center_node(*witness)))
      return {ClassKind::I13, witness};
  } else if (any_fixed(*witness, meeting)) {
    return {ClassKind::I12, witness};
  }

  const SymmetryReport whole = find_automorphisms(c);
  if (whole.is_asymmetric) {
    if (c.has_multiplicity()) return {ClassKind::RunningAsym, witness};
    return {witness->is_rotation() ? ClassKind::I22 : ClassKind::I21, witness};
  }
  if (auto rot = whole.rotation180()) return {ClassKind::I32, rot};

  // Only one reflection of R∪M remains; it is one of M's axes.
  const Isometry axis = whole.reflections().front();
  if (any_fixed(axis, c.positions())) return {ClassKind::I31, axis};
  return {ClassKind::I12, axis, true};
}

std::optional<Node> valid_guard(const Configuration& view, const Isometry& witness) {
  Coord d1 = 0;
  for (Node m : view.meeting_nodes()) d1 = std::max(d1, witness.doubled_distance(m));
  std::optional<Node> best;
  Coord best_d = -1;
  bool unique = false;
  for (Node p : view.positions()) {
    const Coord d = witness.doubled_distance(p);
    if (d > best_d) {
      best_d = d;
      best = p;
      unique = true;
    } else if (d == best_d) {
      unique = false;
    }
  }
  if (!unique || best_d <= d1) return std::nullopt;
  return best;
}

Node designated_guard(const Configuration& view, const Isometry& witness, const CornerString& key) {
  Coord best_d = -1;
  std::vector<Node> farthest;
  for (Node p : view.positions()) {
    const Coord d = witness.doubled_distance(p);
    if (d > best_d) {
      best_d = d;
      farthest.clear();
    }
    if (d == best_d) farthest.push_back(p);
  }
  return *std::max_element(farthest.begin(), farthest.end(), [&](Node a, Node b) {
    return config_view(view, key, a) < config_view(view, key, b);
  });
}

Node guard_target(const Configuration& view, Node guard) {
  Coord best = -1;
  std::vector<Node> closest;
  for (Node m : view.meeting_nodes()) {
    const Coord d = manhattan_distance(guard, m);
    if (best < 0 || d < best) {
      best = d;
      closest.clear();
    }
    if (d == best) closest.push_back(m);
  }
  if (closest.size() == 1) return closest.front();
  for (Node m : ordering_O_doubleprime(view, guard).ordered)
    if (std::find(closest.begin(), closest.end(), m) != closest.end()) return m;
  return closest.front();
}

namespace {

Node invariant_target(const Configuration& view, const ConfigClass& cls) {
  switch (cls.value) {
    case ClassKind::I11:
      if (view.meeting_nodes().size() == 1) return view.meeting_nodes().front();
      return ordering_O(view).ordered.back();
    case ClassKind::I13:
      return center_node(*cls.witness);
    case ClassKind::I12: {
      if (!cls.configuration_axis) return ordering_O_prime(view, *cls.witness).ordered.back();
      // Nearest on-axis meeting node in total distance to the robot positions.
      std::vector<Node> nearest;
      Coord best = -1;
      for (Node m : view.meeting_nodes()) {
        if (!cls.witness->fixes(m)) continue;
        Coord total = 0;
        for (Node r : view.positions()) total += manhattan_distance(r, m);
        if (best < 0 || total < best) {
          best = total;
          nearest.clear();
        }
        if (total == best) nearest.push_back(m);
      }
      const auto scan = maximal_reprs(view, mer(view), Labeler::Senary).front();
      return appearance_order(scan, nearest).back();
    }
    default:
      throw Error(ErrorCode::OrderingUndefined, "class has no invariant target");
  }
}

std::vector<Node> closest_meeting(const Configuration& view, Node from) {
  Coord best = -1;
  std::vector<Node> out;
  for (Node m : view.meeting_nodes()) {
    const Coord d = manhattan_distance(from, m);
    if (best < 0 || d < best) {
      best = d;
      out.clear();
    }
    if (d == best) out.push_back(m);
  }
  return out;
}

// Finalization: everything but one off-meeting position sits on one meeting
// node that is among the closest to it.
bool finalization(Analysis& a) {
  const Configuration& v = a.view;
  const auto pos = v.positions();
  if (pos.size() == 1) {
    if (v.is_meeting(pos.front())) return false;
    const auto closest = closest_meeting(v, pos.front());
    a.target = appearance_order(a.tie_frame, closest).front();
    a.guard = pos.front();
    return true;
  }
  if (pos.size() != 2) return false;
  const bool m0 = v.is_meeting(pos[0]);
  const bool m1 = v.is_meeting(pos[1]);
  if (m0 == m1) return false;
  const Node p = m0 ? pos[0] : pos[1];
  const Node q = m0 ? pos[1] : pos[0];
  const auto closest = closest_meeting(v, q);
  if (std::find(closest.begin(), closest.end(), p) == closest.end()) return false;
  if (a.m_witness) {
    const auto g = valid_guard(v, *a.m_witness);
    if (g && *g == q && mer(v).is_corner(q) && guard_target(v, q) != p) return false;
  }
  a.guard = q;
  a.target = p;
  return true;
}

}  // namespace

Analysis analyze(const Configuration& c) {
  Analysis a{weaken(c), {}, Phase::Done, std::nullopt, std::nullopt, std::nullopt, {}};
  const Configuration& v = a.view;
  a.cls = classify(v);
  a.tie_frame = maximal_reprs(v, mer(v), Labeler::Senary).front();

  switch (a.cls.value) {
    case ClassKind::Final:
      a.phase = Phase::Done;
      a.target = v.robots().front();
      return a;
    case ClassKind::U:
      throw Error(ErrorCode::Ungatherable, a.cls.describe());
    case ClassKind::I11:
    case ClassKind::I13:
      a.phase = Phase::MoveToInvariantTarget;
      a.target = invariant_target(v, a.cls);
      return a;
    case ClassKind::I12:
      if (!a.cls.configuration_axis) {
        a.phase = Phase::MoveToInvariantTarget;
        a.target = invariant_target(v, a.cls);
        return a;
      }
      break;
    default:
      break;
  }

  a.m_witness = meeting_witness(v);
  if (finalization(a)) {
    a.phase = Phase::GuardMove;
    return a;
  }

  const bool guarded = a.m_witness && !a.cls.configuration_axis && valid_guard(v, *a.m_witness);
  switch (a.cls.value) {
    case ClassKind::I31:
    case ClassKind::I32:
      if (guarded) break;
      a.phase = Phase::SymmetryBreak;
      return a;
    case ClassKind::I12:
      a.phase = Phase::MoveToInvariantTarget;
      a.target = invariant_target(v, a.cls);
      return a;
    default:
      break;
  }

  // I21 / I22: the occupancy view is asymmetric, so the key corner is unique.
  const Isometry& w = *a.m_witness;
  const auto guard = valid_guard(v, w);
  if (!guard) {
    a.phase = Phase::GuardSelect;
    a.guard = designated_guard(v, w, a.tie_frame);
    return a;
  }
  a.guard = guard;
  if (!mer(v).is_corner(*guard)) {
    a.phase = Phase::GuardPlace;
    return a;
  }
  a.target = guard_target(v, *guard);
  a.phase = Phase::MakeMultiplicity;
  return a;
}

Phase infer_phase(const Configuration& c) { return analyze(c).phase; }

}  // namespace gridgather
