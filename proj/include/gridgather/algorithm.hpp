#pragma once

// Per-robot decision function. A robot sees occupancy everywhere and the
// multiplicity bit of its own node only.

#include <map>
#include <optional>

#include "gridgather/classifier.hpp"
#include "gridgather/geometry.hpp"

namespace gridgather {

struct Snapshot {
  Configuration observed;  // occupancy view: one robot per occupied node
  Node self;
  bool self_multiplicity = false;

  /// What a robot standing at `self` perceives of `c`.
  static Snapshot of(const Configuration& c, Node self);
};

struct Decision {
  std::optional<Node> move_to;  // absent: null movement
};

/// Moves chosen for every occupied node of one occupancy view. Robots sharing
/// a node share the decision.
struct Plan {
  Analysis analysis;
  std::map<Node, Node> moves;
};

Plan plan(const Configuration& c);

/// Memoised plan for the occupancy view of `c`.
const Plan& cached_plan(const Configuration& c);

/// Throws NoGuardYet while the guard is still being selected or placed.
Node target_meeting_node(const Configuration& c);

/// A neighbour of `from` strictly closer to `to`. Both axes reducing: prefer
/// the one not moving away from the symmetry of M, then the earlier node in
/// the tie-breaking scan.
Node step_toward(Node from, Node to, const Configuration& c);

Decision decide(const Snapshot& s);

/// Throws SymmetricConfiguration without a unique key corner.
Node guard_designate(const Configuration& c);

}  // namespace gridgather
