#pragma once

// Executions under FSYNC, SSYNC and ASYNC activation, with trace recording.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridgather/geometry.hpp"
#include "gridgather/symmetry.hpp"

namespace gridgather {

enum class SchedulerKind { FSYNC, SSYNC, ASYNC };

std::string_view to_string(SchedulerKind k);
std::optional<SchedulerKind> scheduler_from_string(std::string_view s);

inline constexpr std::string_view kGeneratorName = "mt19937_64";

struct SchedulerPolicy {
  SchedulerKind kind = SchedulerKind::FSYNC;
  std::uint64_t seed = 0;
  /// Every robot completes a cycle within any window of this many scheduler
  /// decisions. 0 picks 4n.
  std::size_t fairness_window = 0;
  /// Longest delay, in decisions, between a robot's Look and its Move. 0 picks 2n.
  std::size_t async_split = 0;

  std::size_t window_for(std::size_t n) const { return fairness_window ? fairness_window : 4 * n; }
  std::size_t split_for(std::size_t n) const { return async_split ? async_split : 2 * n; }
};

enum class EventPhase { Look, Move };

struct TraceEvent {
  std::size_t t = 0;
  std::size_t robot = 0;
  EventPhase phase = EventPhase::Look;
  Node from;
  Node to;  // Look: the destination decided; Move: where the robot ends up
};

enum class Outcome { Gathered, StepLimit, Ungatherable };

std::string_view to_string(Outcome o);

struct RunTrace {
  Configuration initial;
  SchedulerPolicy policy;
  std::size_t max_steps = 0;
  std::vector<TraceEvent> events;
  std::size_t total_moves = 0;
  Outcome outcome = Outcome::StepLimit;
  std::optional<Node> gathered_at;
  Configuration final_config;
};

/// 16 * D * n * fairness_window with D the longer side of mer(c0).
std::size_t default_max_steps(const Configuration& c0, const SchedulerPolicy& policy);

/// max_steps counts scheduler decisions (Look and Move events); 0 picks the default.
RunTrace run(const Configuration& c0, const SchedulerPolicy& policy, std::size_t max_steps = 0);

/// Robot positions after applying the Move events of `events` to `c0`, in
/// initial robot order.
std::vector<Node> replay_positions(const Configuration& c0, const std::vector<TraceEvent>& events);
Configuration replay(const Configuration& c0, const std::vector<TraceEvent>& events);

/// Configurations after every Move event that changed something, starting with c0.
std::vector<Configuration> trajectory(const RunTrace& trace);

/// FSYNC execution in which orbit-mates under a partitive automorphism always
/// make mapped moves. Throws NotPartitive when c0 admits no such automorphism,
/// and InvalidConfiguration if partitivity is lost during the run.
RunTrace run_symmetric_adversary(const Configuration& c0, std::size_t k_steps, std::uint64_t seed = 0);

struct SearchResult {
  RunTrace worst;
  std::vector<std::string> violations;  // of `worst`
};

/// Randomised ASYNC schedules; returns the first violating trace or the one
/// with the most moves. Budget 0 returns the FSYNC run.
SearchResult adversarial_search(const Configuration& c0, std::size_t budget, std::uint64_t seed = 0);

}  // namespace gridgather
