#pragma once

// Grid automorphisms of labelled point sets.
//
// Only the eight point-group candidates anchored at the centre of the bounding
// rectangle are tried: any automorphism of a finite labelled set maps its
// bounding rectangle onto itself, so that list is complete.

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridgather/geometry.hpp"

namespace gridgather {

enum class IsometryKind : std::uint8_t {
  Identity,
  ReflectVertical,      // axis x = const
  ReflectHorizontal,    // axis y = const
  ReflectDiagonal,      // axis x - y = const
  ReflectAntidiagonal,  // axis x + y = const
  Rotate90,             // counter-clockwise
  Rotate180,
  Rotate270,
};

std::string_view to_string(IsometryKind k);

/// A grid isometry with a half-integer anchor stored doubled.
///
/// For reflections the anchor is a point on the axis, for rotations the
/// centre. An even doubled coordinate means the axis or centre passes through
/// grid nodes in that dimension.
class Isometry {
 public:
  Isometry() = default;
  /// Throws InvalidConfiguration when the anchor parity cannot map nodes to nodes.
  Isometry(IsometryKind kind, Node doubled_anchor);

  IsometryKind kind() const { return kind_; }
  Node doubled_anchor() const { return anchor2_; }

  Node apply(Node n) const;
  /// 1 for the identity, 4 for quarter turns, 2 otherwise.
  int order() const;
  bool is_reflection() const;
  bool is_rotation() const;
  bool fixes(Node n) const { return apply(n) == n; }
  /// True when at least one grid node is fixed (axis through nodes, or a node centre).
  bool has_fixed_nodes() const;

  /// Doubled Manhattan distance from n to the fixed set (axis line or centre).
  Coord doubled_distance(Node n) const;

  /// Same point map (identity reflections with different anchors are equal, etc).
  friend bool operator==(const Isometry& a, const Isometry& b);

  std::string describe() const;

 private:
  IsometryKind kind_ = IsometryKind::Identity;
  Node anchor2_{};
};

using LabeledPoint = std::pair<Node, NodeLabel>;

/// Every node with a non-empty label, sorted by node.
std::vector<LabeledPoint> labeled_points(const Configuration& c);
/// Meeting nodes labelled Meeting, i.e. the binary view of M.
std::vector<LabeledPoint> meeting_points(const Configuration& c);

struct SymmetryReport {
  std::vector<Isometry> automorphisms;  // identity excluded
  std::optional<Isometry> unique_reflection_axis;
  std::optional<Node> rotation_center;  // doubled
  bool is_asymmetric = true;

  std::vector<Isometry> reflections() const;
  std::optional<Isometry> rotation180() const;
  bool has_quarter_turn() const;
};

SymmetryReport find_automorphisms(std::span<const LabeledPoint> points);
SymmetryReport find_automorphisms(const Configuration& c);

struct OrbitPartition {
  std::vector<std::vector<Node>> orbits;
  Isometry generator;
};

/// Cycles of `iso` on the nodes of `universe`; throws UniverseNotStable.
OrbitPartition orbits(const Rect& universe, const Isometry& iso);

/// Smallest rectangle containing r that `iso` maps onto itself.
Rect stable_universe(const Rect& r, const Isometry& iso);

/// Every node of the iso-stable hull of mer(c) outside `excluded` has an orbit
/// of full size order(iso).
bool is_partitive(const Configuration& c, const Isometry& iso, const std::set<Node>& excluded);

/// Fixed nodes of iso inside the iso-stable hull of mer(c).
std::set<Node> fixed_nodes(const Configuration& c, const Isometry& iso);

/// Some automorphism of the labelled configuration has no robot and no meeting
/// node on its fixed set (axis or centre; possibly an edge line or face centre).
bool is_ungatherable(const Configuration& c);

/// The automorphism witnessing is_ungatherable, if any.
std::optional<Isometry> ungatherable_witness(const Configuration& c);

Configuration apply(const Isometry& g, const Configuration& c);

}  // namespace gridgather
