#include "gridgather/verify.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "gridgather/algorithm.hpp"
#include "gridgather/classifier.hpp"

namespace gridgather {

std::optional<Node> predicted_target(const Configuration& c0) {
  const ConfigClass cls = classify(weaken(c0));
  const bool invariant = cls.value == ClassKind::I11 || cls.value == ClassKind::I13 ||
                         (cls.value == ClassKind::I12 && !cls.configuration_axis);
  if (!invariant) return std::nullopt;
  return analyze(c0).target;
}

namespace {

std::string str(Node n) {
  std::ostringstream os;
  os << n;
  return os.str();
}

int phase_rank(Phase p) {
  switch (p) {
    case Phase::SymmetryBreak: return 0;
    case Phase::GuardSelect: return 1;
    case Phase::GuardPlace: return 2;
    case Phase::MakeMultiplicity: return 3;
    case Phase::GuardMove: return 4;
    case Phase::Done: return 5;
    case Phase::MoveToInvariantTarget: return -1;
  }
  return -1;
}

bool has_guard(Phase p) { return p == Phase::GuardPlace || p == Phase::MakeMultiplicity; }

// Symmetry-breaking potential: positions on the fixed set of the symmetry,
// then their total spread from the centre of the meeting nodes (a robot pushed
// along the axis to find a free side moves outward).
// Counts positions on the fixed set of any automorphism of c, so a step that
// trades one symmetry for another is still measured on the same footing.
std::pair<std::size_t, Coord> break_potential(const Configuration& c) {
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

void check_events(const RunTrace& trace, std::vector<std::string>& out) {
  std::vector<std::optional<Node>> looked(trace.initial.robot_count());
  std::size_t moves = 0;
  for (const TraceEvent& e : trace.events) {
    if (e.robot >= looked.size()) {
      out.push_back("event for unknown robot");
      return;
    }
    if (manhattan_distance(e.from, e.to) > 1) out.push_back("move longer than one edge at t=" + std::to_string(e.t));
    if (e.phase == EventPhase::Look) {
      looked[e.robot] = e.to;
      continue;
    }
    if (!looked[e.robot] || *looked[e.robot] != e.to)
      out.push_back("move without matching look at t=" + std::to_string(e.t));
    looked[e.robot].reset();
    if (e.from != e.to) ++moves;
  }
  if (moves != trace.total_moves) out.push_back("total_moves does not match the events");
  try {
    if (replay(trace.initial, trace.events) != trace.final_config) out.push_back("replay differs from final configuration");
  } catch (const Error& e) {
    out.push_back(e.what());
  }
}

}  // namespace

std::vector<std::string> check_trace(const RunTrace& trace) {
  std::vector<std::string> out;
  const Configuration& c0 = trace.initial;
  if (classify(c0).value == ClassKind::U) {
    if (trace.outcome != Outcome::Ungatherable) out.push_back("ungatherable start not reported");
    return out;
  }
  check_events(trace, out);
  if (trace.outcome != Outcome::Gathered) {
    out.push_back("did not gather within " + std::to_string(trace.max_steps) + " decisions");
  } else if (!is_final(trace.final_config) || !trace.gathered_at || !c0.is_meeting(*trace.gathered_at)) {
    out.push_back("gathered outcome on a non-final configuration");
  }

  const auto predicted = predicted_target(c0);
  if (predicted && trace.gathered_at && *trace.gathered_at != *predicted)
    out.push_back("gathered at " + str(*trace.gathered_at) + " instead of " + str(*predicted));

  // Configurations some robot actually looked at, and the moves between them.
  std::vector<Configuration> traj{c0};
  std::vector<std::vector<std::pair<Node, Node>>> steps;
  {
    std::vector<Node> pos = c0.robots();
    std::vector<std::pair<Node, Node>> pending;
    auto flush = [&] {
      Configuration now(pos, c0.meeting_nodes());
      if (now == traj.back()) return;
      traj.push_back(std::move(now));
      steps.push_back(std::move(pending));
      pending.clear();
    };
    for (const TraceEvent& e : trace.events) {
      if (e.phase == EventPhase::Look) {
        flush();
      } else if (e.from != e.to) {
        pos[e.robot] = e.to;
        pending.emplace_back(e.from, e.to);
      }
    }
    flush();
  }

  std::optional<Analysis> prev;
  std::optional<Node> committed;
  // From the axis case a partial move can leave R∪M symmetric again, so the
  // phase order is not monotone there.
  const bool axis_start = classify(weaken(trace.initial)).configuration_axis;
  for (std::size_t k = 0; k < traj.size() && out.size() < 8; ++k) {
    const Configuration& c = traj[k];
    if (classify(c).value == ClassKind::U) {
      out.push_back("entered an ungatherable configuration at step " + std::to_string(k));
      break;
    }
    std::optional<Analysis> current;
    try {
      current = cached_plan(c).analysis;
    } catch (const Error&) {
      // Only a multiplicity hidden from the other robots can make the
      // occupancy view symmetric while c itself is not.
      if (!c.has_multiplicity()) {
        out.push_back("occupancy view ungatherable at step " + std::to_string(k));
        break;
      }
      prev.reset();
      continue;
    }
    const Analysis& a = *current;
    const std::string at = " at step " + std::to_string(k);
    if (a.phase == Phase::MakeMultiplicity || a.phase == Phase::GuardMove) {
      if (!committed) committed = a.target;
      else if (a.target != committed) out.push_back("guard target changed" + at);
    }
    if (prev) {
      if (a.phase == prev->phase && a.target && prev->target && *a.target != *prev->target &&
          a.phase != Phase::Done)
        out.push_back("target changed within " + std::string(to_string(a.phase)) + at);
      const int r0 = phase_rank(prev->phase);
      const int r1 = phase_rank(a.phase);
      if (r0 >= 0 && r1 >= 0 && r1 < r0 && !axis_start)
        out.push_back(std::string("phase went back from ") + std::string(to_string(prev->phase)) + " to " +
                      std::string(to_string(a.phase)) + at);
      if (has_guard(prev->phase) && has_guard(a.phase)) {
        const auto& moved = steps[k - 1];
        const bool followed = std::find(moved.begin(), moved.end(), std::make_pair(*prev->guard, *a.guard)) != moved.end();
        if (*a.guard != *prev->guard && !followed)
          out.push_back("guard changed identity" + at);
      }
      if (has_guard(prev->phase) && a.phase == Phase::GuardSelect) out.push_back("guard lost" + at);
      if (prev->phase == Phase::SymmetryBreak && a.phase == Phase::SymmetryBreak &&
          break_potential(c) >= break_potential(traj[k - 1]))
        out.push_back("symmetry breaking made no progress" + at);
    }
    prev = std::move(current);
  }
  if (committed && trace.gathered_at && *trace.gathered_at != *committed)
    out.push_back("gathered at " + str(*trace.gathered_at) + " instead of guard target " + str(*committed));
  return out;
}

namespace {

// Per robot: position and frozen decision (-1 idle, 0..3 a unit step, 4 stay).
struct RobotState {
  Node pos;
  int pending = -1;
  friend bool operator==(const RobotState&, const RobotState&) = default;
};

using State = std::vector<RobotState>;

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::size_t h = 0;
    for (const auto& r : s) {
      h = h * 1000003u ^ NodeHash{}(r.pos);
      h = h * 31u + static_cast<std::size_t>(r.pending + 1);
    }
    return h;
  }
};

Node destination(const RobotState& r) {
  return r.pending >= 0 && r.pending < 4 ? r.pos + kUnitSteps[static_cast<std::size_t>(r.pending)] : r.pos;
}

int encode(Node from, Node to) {
  for (int i = 0; i < 4; ++i)
    if (from + kUnitSteps[static_cast<std::size_t>(i)] == to) return i;
  return 4;
}

}  // namespace

ExhaustiveResult exhaustive_async(const Configuration& c0, std::size_t state_cap) {
  ExhaustiveResult res;
  const std::size_t n = c0.robot_count();
  const auto& meeting = c0.meeting_nodes();
  auto config_of = [&](const State& s) {
    std::vector<Node> pos;
    for (const auto& r : s) pos.push_back(r.pos);
    return Configuration(pos, meeting);
  };

  std::unordered_map<State, std::size_t, StateHash> index;
  std::vector<State> states;
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> edges;
  std::vector<bool> absorbing;

  State s0;
  for (Node r : c0.robots()) s0.push_back({r, -1});
  index.emplace(s0, 0);
  states.push_back(s0);

  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    const State s = states[cur];
    edges.emplace_back();
    const Configuration c = config_of(s);
    const bool settled = std::all_of(s.begin(), s.end(), [](const RobotState& r) { return r.pending < 0 || r.pending == 4; });
    if (settled && is_final(c)) {
      absorbing.push_back(true);
      res.gathering_nodes.insert(s.front().pos);
      continue;
    }
    absorbing.push_back(false);
    const Plan* p = nullptr;
    try {
      p = &cached_plan(c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Ungatherable) throw;
    }
    for (std::size_t i = 0; i < n; ++i) {
      State next = s;
      const bool is_move = s[i].pending >= 0;
      if (is_move) {
        next[i] = {destination(s[i]), -1};
      } else {
        Node dest = s[i].pos;
        if (p) {
          if (auto it = p->moves.find(s[i].pos); it != p->moves.end()) dest = it->second;
        } else {
          dest = decide(Snapshot::of(c, s[i].pos)).move_to.value_or(dest);
        }
        next[i].pending = encode(s[i].pos, dest);
      }
      auto [it, fresh] = index.emplace(next, states.size());
      if (fresh) {
        if (states.size() >= state_cap) {
          res.states = states.size();
          res.detail = "state cap reached";
          return res;
        }
        states.push_back(next);
      }
      edges[cur].emplace_back(it->second, static_cast<unsigned>(2 * i + (is_move ? 1 : 0)));
    }
  }
  res.states = states.size();
  res.complete = true;

  // Tarjan's algorithm, iterative.
  const std::size_t total = states.size();
  const std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> idx(total, kNone), low(total, 0), comp(total, kNone);
  std::vector<bool> on_stack(total, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;
  std::size_t counter = 0, comps = 0;
  for (std::size_t root = 0; root < total; ++root) {
    if (idx[root] != kNone) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e == 0 && idx[v] == kNone) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (e < edges[v].size()) {
        const std::size_t w = edges[v][e].first;
        ++e;
        if (idx[w] == kNone) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  std::vector<std::uint64_t> labels(comps, 0);
  for (std::size_t v = 0; v < total; ++v) {
    if (absorbing[v]) continue;
    for (const auto& [w, l] : edges[v])
      if (comp[w] == comp[v]) labels[comp[v]] |= std::uint64_t{1} << l;
  }
  const std::uint64_t all = (std::uint64_t{1} << (2 * n)) - 1;
  for (std::size_t k = 0; k < comps; ++k) {
    if (labels[k] == all) {
      res.fair_cycle = true;
      std::ostringstream os;
      os << "fair cycle through";
      int shown = 0;
      for (std::size_t v = 0; v < total && shown < 12; ++v) {
        if (comp[v] != k) continue;
        os << (shown++ ? "; " : " ") << config_of(states[v]) << " pending";
        for (const auto& r : states[v]) os << ' ' << (r.pending < 0 ? std::string("-") : std::to_string(r.pending));
      }
      res.detail = os.str();
      break;
    }
  }
  return res;
}

}  // namespace gridgather
