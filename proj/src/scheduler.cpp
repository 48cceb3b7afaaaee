#include "gridgather/scheduler.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>

#include "gridgather/algorithm.hpp"
#include "gridgather/classifier.hpp"
#include "gridgather/verify.hpp"

namespace gridgather {

std::string_view to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::FSYNC: return "FSYNC";
    case SchedulerKind::SSYNC: return "SSYNC";
    case SchedulerKind::ASYNC: return "ASYNC";
  }
  return "?";
}

std::optional<SchedulerKind> scheduler_from_string(std::string_view s) {
  for (auto k : {SchedulerKind::FSYNC, SchedulerKind::SSYNC, SchedulerKind::ASYNC})
    if (std::equal(s.begin(), s.end(), to_string(k).begin(), to_string(k).end(),
                   [](char a, char b) { return std::toupper(static_cast<unsigned char>(a)) == b; }))
      return k;
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Gathered: return "Gathered";
    case Outcome::StepLimit: return "StepLimit";
    case Outcome::Ungatherable: return "Ungatherable";
  }
  return "?";
}

std::size_t default_max_steps(const Configuration& c0, const SchedulerPolicy& policy) {
  const Rect r = mer(c0);
  const std::size_t d = static_cast<std::size_t>(std::max<Coord>({r.p(), r.q(), 1}));
  const std::size_t n = c0.robot_count();
  return 16 * d * n * policy.window_for(n);
}

namespace {

class Engine {
 public:
  Engine(const Configuration& c0, const SchedulerPolicy& policy, std::size_t max_steps)
      : pos_(c0.robots()),
        meeting_(c0.meeting_nodes()),
        pending_(pos_.size()),
        look_time_(pos_.size(), 0),
        last_cycle_(pos_.size(), 0),
        idle_null_(pos_.size(), false),
        rng_(policy.seed),
        policy_(policy),
        max_steps_(max_steps) {
    trace_.initial = c0;
    trace_.policy = policy;
    trace_.max_steps = max_steps;
  }

  RunTrace execute() {
    const std::size_t n = pos_.size();
    const std::size_t window = policy_.window_for(n);
    if (finished()) return finish();
    while (trace_.events.size() < max_steps_) {
      switch (policy_.kind) {
        case SchedulerKind::FSYNC:
          round(all_robots());
          break;
        case SchedulerKind::SSYNC:
          round(ssync_subset(window));
          break;
        case SchedulerKind::ASYNC:
          async_decision(window);
          break;
      }
      if (finished() || stuck()) break;
    }
    return finish();
  }

 private:
  Configuration config() const { return Configuration(pos_, meeting_); }

  std::vector<std::size_t> all_robots() const {
    std::vector<std::size_t> ids(pos_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return ids;
  }

  std::vector<std::size_t> ssync_subset(std::size_t window) {
    const std::size_t n = pos_.size();
    const std::size_t now = trace_.events.size();
    std::vector<std::size_t> ids;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i) {
      const bool overdue = now + 2 * n >= last_cycle_[i] + window;
      if (coin(rng_) || overdue) ids.push_back(i);
    }
    if (ids.empty()) ids.push_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_));
    return ids;
  }

  void round(const std::vector<std::size_t>& ids) {
    for (std::size_t i : ids) look(i);
    for (std::size_t i : ids) move(i);
  }

  void async_decision(std::size_t window) {
    const std::size_t n = pos_.size();
    const std::size_t now = trace_.events.size();
    const std::size_t split = policy_.split_for(n);
    std::optional<std::size_t> forced;
    for (std::size_t i = 0; i < n && !forced; ++i) {
      if (pending_[i] && now >= look_time_[i] + split) forced = i;
    }
    for (std::size_t i = 0; i < n && !forced; ++i) {
      if (now + 2 * n >= last_cycle_[i] + window) forced = i;
    }
    const std::size_t i =
        forced ? *forced : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    if (pending_[i]) move(i);
    else look(i);
  }

  void look(std::size_t i) {
    const Configuration c = config();
    Decision d;
    try {
      d = decide(Snapshot::of(c, pos_[i]));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Ungatherable) throw;
    }
    const Node dest = d.move_to.value_or(pos_[i]);
    pending_[i] = dest;
    look_time_[i] = trace_.events.size();
    idle_null_[i] = dest == pos_[i];
    trace_.events.push_back({trace_.events.size(), i, EventPhase::Look, pos_[i], dest});
  }

  void move(std::size_t i) {
    const Node from = pos_[i];
    const Node to = *pending_[i];
    pending_[i].reset();
    pos_[i] = to;
    if (to != from) {
      ++trace_.total_moves;
      std::fill(idle_null_.begin(), idle_null_.end(), false);
    }
    trace_.events.push_back({trace_.events.size(), i, EventPhase::Move, from, to});
    last_cycle_[i] = trace_.events.size();
  }

  bool finished() const {
    for (std::size_t i = 0; i < pos_.size(); ++i)
      if (pending_[i] && *pending_[i] != pos_[i]) return false;
    return is_final(config());
  }

  // Every robot looked at the current configuration and chose to stay.
  bool stuck() const {
    for (std::size_t i = 0; i < pos_.size(); ++i)
      if (!idle_null_[i] || (pending_[i] && *pending_[i] != pos_[i])) return false;
    return true;
  }

  RunTrace finish() {
    trace_.final_config = config();
    if (finished()) {
      trace_.outcome = Outcome::Gathered;
      trace_.gathered_at = pos_.front();
    } else {
      trace_.outcome = Outcome::StepLimit;
    }
    return std::move(trace_);
  }

  std::vector<Node> pos_;
  std::vector<Node> meeting_;
  std::vector<std::optional<Node>> pending_;
  std::vector<std::size_t> look_time_;
  std::vector<std::size_t> last_cycle_;
  std::vector<bool> idle_null_;
  std::mt19937_64 rng_;
  SchedulerPolicy policy_;
  std::size_t max_steps_;
  RunTrace trace_{Configuration({{0, 0}}, {{0, 0}}), {}, 0, {}, 0, Outcome::StepLimit, {},
                  Configuration({{0, 0}}, {{0, 0}})};
};

}  // namespace

RunTrace run(const Configuration& c0, const SchedulerPolicy& policy, std::size_t max_steps) {
  if (max_steps == 0) max_steps = default_max_steps(c0, policy);
  if (classify(c0).value == ClassKind::U) {
    return {c0, policy, max_steps, {}, 0, Outcome::Ungatherable, std::nullopt, c0};
  }
  return Engine(c0, policy, max_steps).execute();
}

std::vector<Node> replay_positions(const Configuration& c0, const std::vector<TraceEvent>& events) {
  std::vector<Node> pos = c0.robots();
  for (const TraceEvent& e : events) {
    if (e.phase != EventPhase::Move) continue;
    if (e.robot >= pos.size() || pos[e.robot] != e.from)
      throw Error(ErrorCode::InvalidConfiguration, "trace does not replay");
    pos[e.robot] = e.to;
  }
  return pos;
}

Configuration replay(const Configuration& c0, const std::vector<TraceEvent>& events) {
  return Configuration(replay_positions(c0, events), c0.meeting_nodes());
}

std::vector<Configuration> trajectory(const RunTrace& trace) {
  std::vector<Configuration> out{trace.initial};
  std::vector<Node> pos = trace.initial.robots();
  for (const TraceEvent& e : trace.events) {
    if (e.phase != EventPhase::Move || e.from == e.to) continue;
    pos[e.robot] = e.to;
    out.emplace_back(pos, trace.initial.meeting_nodes());
  }
  return out;
}

RunTrace run_symmetric_adversary(const Configuration& c0, std::size_t k_steps, std::uint64_t seed) {
  std::optional<Isometry> phi;
  for (const Isometry& g : find_automorphisms(c0).automorphisms) {
    const auto fixed = fixed_nodes(c0, g);
    const bool robot_on_fixed = std::any_of(c0.robots().begin(), c0.robots().end(),
                                            [&](Node r) { return fixed.contains(r); });
    if (!robot_on_fixed && is_partitive(c0, g, fixed)) {
      phi = g;
      break;
    }
  }
  if (!phi) throw Error(ErrorCode::NotPartitive, "no partitive automorphism without robots on fixed nodes");

  SchedulerPolicy policy{SchedulerKind::FSYNC, seed, 0, 0};
  RunTrace trace{c0, policy, k_steps, {}, 0, Outcome::StepLimit, std::nullopt, c0};
  std::mt19937_64 rng(seed);
  std::vector<Node> pos = c0.robots();
  const int k = phi->order();
  auto power = [&](Node n, int j) {
    for (int s = 0; s < j; ++s) n = phi->apply(n);
    return n;
  };

  for (std::size_t round = 0; round < k_steps; ++round) {
    std::map<Node, std::vector<std::size_t>> at;
    for (std::size_t i = 0; i < pos.size(); ++i) at[pos[i]].push_back(i);
    std::vector<Node> dest = pos;
    std::set<Node> done;
    for (const auto& [u, ids] : at) {
      if (done.contains(u)) continue;
      std::uniform_int_distribution<int> pick(0, 4);
      if (phi->fixes(u)) {
        done.insert(u);
        const int dir = pick(rng);
        if (dir == 4) continue;
        const Node w = u + kUnitSteps[static_cast<std::size_t>(dir)];
        if (phi->fixes(w)) {
          for (std::size_t i : ids) dest[i] = w;
        } else if (ids.size() % static_cast<std::size_t>(k) == 0) {
          for (std::size_t t = 0; t < ids.size(); ++t) dest[ids[t]] = power(w, static_cast<int>(t % k));
        }
        continue;
      }
      for (std::size_t t = 0; t < ids.size(); ++t) {
        const int dir = pick(rng);
        const Node w = dir == 4 ? u : u + kUnitSteps[static_cast<std::size_t>(dir)];
        for (int j = 0; j < k; ++j) dest[at.at(power(u, j))[t]] = power(w, j);
      }
      for (int j = 0; j < k; ++j) done.insert(power(u, j));
    }
    for (std::size_t i = 0; i < pos.size(); ++i)
      trace.events.push_back({trace.events.size(), i, EventPhase::Look, pos[i], dest[i]});
    for (std::size_t i = 0; i < pos.size(); ++i) {
      trace.events.push_back({trace.events.size(), i, EventPhase::Move, pos[i], dest[i]});
      if (dest[i] != pos[i]) ++trace.total_moves;
      pos[i] = dest[i];
    }
    const Configuration c(pos, c0.meeting_nodes());
    if (apply(*phi, c) != c || !is_partitive(c, *phi, fixed_nodes(c, *phi)))
      throw Error(ErrorCode::InvalidConfiguration, "partitivity lost in round " + std::to_string(round));
    if (is_final(c)) {
      trace.outcome = Outcome::Gathered;
      trace.gathered_at = pos.front();
      break;
    }
  }
  trace.final_config = Configuration(pos, c0.meeting_nodes());
  return trace;
}

SearchResult adversarial_search(const Configuration& c0, std::size_t budget, std::uint64_t seed) {
  SearchResult best{run(c0, {SchedulerKind::FSYNC, seed, 0, 0}), {}};
  best.violations = check_trace(best.worst);
  if (budget == 0 || !best.violations.empty()) return best;
  std::mt19937_64 rng(seed);
  const std::size_t n = c0.robot_count();
  for (std::size_t i = 0; i < budget; ++i) {
    SchedulerPolicy p{SchedulerKind::ASYNC, rng(), 0, 0};
    p.async_split = std::uniform_int_distribution<std::size_t>(1, 3 * n)(rng);
    p.fairness_window = 2 * p.async_split + 2 * n + 2;
    RunTrace t = run(c0, p);
    auto v = check_trace(t);
    if (!v.empty()) return {std::move(t), std::move(v)};
    if (t.total_moves > best.worst.total_moves) best = {std::move(t), {}};
  }
  return best;
}

}  // namespace gridgather
