#pragma once

// Run-level correctness checks: trace well-formedness, the per-phase
// invariants of the algorithm, and an exhaustive ASYNC state exploration for
// small instances.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridgather/geometry.hpp"
#include "gridgather/scheduler.hpp"

namespace gridgather {

/// Target the run must gather at, when it can be read off c0 (classes I11,
/// I12, I13).
std::optional<Node> predicted_target(const Configuration& c0);

/// Human-readable violations; empty when the trace is sound. Checks replay,
/// move accounting, single-edge moves, gathering, never entering U, target
/// invariance within a phase, guard uniqueness and phase order.
std::vector<std::string> check_trace(const RunTrace& trace);

struct ExhaustiveResult {
  std::size_t states = 0;
  bool complete = false;          // state cap not hit
  bool fair_cycle = false;        // a fair execution that never gathers
  std::set<Node> gathering_nodes; // over every reachable final state
  std::string detail;
};

/// Explores every ASYNC interleaving of Look and Move events from c0 with
/// unbounded delays; states are robot positions plus frozen decisions.
ExhaustiveResult exhaustive_async(const Configuration& c0, std::size_t state_cap = 200000);

}  // namespace gridgather
