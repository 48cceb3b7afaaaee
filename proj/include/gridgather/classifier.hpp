#pragma once

// Configuration classes and the running phase each robot infers from its
// snapshot.

#include <optional>
#include <string>
#include <vector>

#include "gridgather/geometry.hpp"
#include "gridgather/lexicon.hpp"
#include "gridgather/symmetry.hpp"

namespace gridgather {

enum class ClassKind { I11, I12, I13, I21, I22, I31, I32, U, Final, RunningAsym };

std::string_view to_string(ClassKind k);
std::optional<ClassKind> class_from_string(std::string_view s);

struct ConfigClass {
  ClassKind value = ClassKind::I11;
  /// Axis or centre supporting the verdict: the symmetry of M for I12/I13/I2x,
  /// the symmetry of R∪M for I3x and U.
  std::optional<Isometry> witness;
  /// I12 reached through an axis of the whole configuration rather than a
  /// unique axis of M (M is rotational, the axis carries meeting nodes).
  bool configuration_axis = false;

  std::string describe() const;
};

/// Total classification of any configuration, multiplicities included.
ConfigClass classify(const Configuration& c);

enum class Phase { MoveToInvariantTarget, SymmetryBreak, GuardSelect, GuardPlace, MakeMultiplicity, GuardMove, Done };

std::string_view to_string(Phase p);

/// Symmetry of M that the guard machinery measures distances from: the
/// rotation (centre c) if M has one, else its unique axis L.
std::optional<Isometry> meeting_witness(const Configuration& c);

/// Everything a robot derives from one snapshot. Computed on the
/// occupancy-only view so every observer agrees.
struct Analysis {
  Configuration view;
  ConfigClass cls;
  Phase phase = Phase::Done;
  std::optional<Isometry> m_witness;  // set when M is symmetric without a meeting node on it
  std::optional<Node> guard;          // designated (GuardSelect) or valid guard
  std::optional<Node> target;         // defined in MoveToInvariantTarget, MakeMultiplicity, GuardMove
  /// Frame for deterministic tie-breaking: the key corner scan, or the first
  /// tied maximal scan for symmetric views.
  CornerString tie_frame;
};

/// Throws Ungatherable when the occupancy view is in U.
Analysis analyze(const Configuration& c);

/// Phase of analyze(c); throws Ungatherable for U.
Phase infer_phase(const Configuration& c);

/// Unique strict farthest position from the witness, farther than every
/// meeting node.
std::optional<Node> valid_guard(const Configuration& view, const Isometry& witness);

/// Farthest positions from the witness with the maximum configuration view.
Node designated_guard(const Configuration& view, const Isometry& witness, const CornerString& key);

/// Closest meeting node to the guard, ties broken by the guard-anchored ordering.
Node guard_target(const Configuration& view, Node guard);

}  // namespace gridgather
