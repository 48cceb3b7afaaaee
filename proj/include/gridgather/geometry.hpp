#pragma once

// Core grid geometry: nodes, configurations, node labels and enclosing rectangles.
//
// The infinite grid is never materialised. A Configuration only stores the
// robot multiset and the meeting-node set; every other node is empty.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "gridgather/error.hpp"

namespace gridgather {

using Coord = std::int64_t;

struct Node {
  Coord x = 0;
  Coord y = 0;

  friend constexpr auto operator<=>(const Node&, const Node&) = default;
  friend constexpr Node operator+(Node a, Node b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Node operator-(Node a, Node b) { return {a.x - b.x, a.y - b.y}; }
};

std::ostream& operator<<(std::ostream& os, Node n);

struct NodeHash {
  std::size_t operator()(Node n) const noexcept {
    auto h = static_cast<std::uint64_t>(n.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(n.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// The four unit steps, in a fixed order: +x, -x, +y, -y.
inline constexpr std::array<Node, 4> kUnitSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

std::array<Node, 4> neighbors(Node n);

constexpr Coord manhattan_distance(Node a, Node b) {
  const Coord dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const Coord dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx + dy;
}

/// Status of a node, encoded as the digits used in corner strings.
enum class NodeLabel : std::uint8_t {
  Empty = 0,
  Meeting = 1,
  SingleOnMeeting = 2,
  MultiOnMeeting = 3,
  SingleOffMeeting = 4,
  MultiOffMeeting = 5,
};

constexpr int label_value(NodeLabel l) { return static_cast<int>(l); }
constexpr bool is_occupied(NodeLabel l) { return label_value(l) >= 2; }
constexpr bool is_meeting_label(NodeLabel l) { return label_value(l) >= 1 && label_value(l) <= 3; }
constexpr bool is_multiplicity(NodeLabel l) {
  return l == NodeLabel::MultiOnMeeting || l == NodeLabel::MultiOffMeeting;
}

/// Axis-aligned rectangle of grid nodes. p() and q() are side lengths in edges.
struct Rect {
  Coord min_x = 0;
  Coord min_y = 0;
  Coord max_x = 0;
  Coord max_y = 0;

  Coord p() const { return max_x - min_x; }
  Coord q() const { return max_y - min_y; }
  bool is_square() const { return p() == q(); }
  std::size_t node_count() const {
    return static_cast<std::size_t>((p() + 1) * (q() + 1));
  }
  bool contains(Node n) const {
    return n.x >= min_x && n.x <= max_x && n.y >= min_y && n.y <= max_y;
  }
  bool is_corner(Node n) const {
    return (n.x == min_x || n.x == max_x) && (n.y == min_y || n.y == max_y);
  }
  /// Corners in a fixed order: (min,min), (max,min), (max,max), (min,max).
  std::array<Node, 4> corners() const {
    return {{{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}}};
  }
  /// Doubled centre, exact for every rectangle.
  Node doubled_center() const { return {min_x + max_x, min_y + max_y}; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

std::ostream& operator<<(std::ostream& os, const Rect& r);

/// Tight bounding rectangle; throws EmptyPointSet for an empty span.
Rect bounding_rect(std::span<const Node> points);

/// Robot multiset plus meeting-node set.
///
/// Both containers are kept sorted, so two configurations compare equal iff
/// they hold the same multiset and set.
class Configuration {
 public:
  /// Validates: meeting nodes non-empty and pairwise distinct, robots non-empty.
  Configuration(std::vector<Node> robots, std::vector<Node> meeting_nodes);

  /// Like the constructor, but also rejects co-located robots (DuplicateRobot).
  static Configuration initial(std::vector<Node> robots, std::vector<Node> meeting_nodes);

  const std::vector<Node>& robots() const { return robots_; }
  const std::vector<Node>& meeting_nodes() const { return meeting_; }
  std::size_t robot_count() const { return robots_.size(); }

  std::size_t robots_at(Node v) const;
  bool is_meeting(Node v) const;
  /// Distinct robot positions, sorted.
  std::vector<Node> positions() const;
  bool has_multiplicity() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<Node> robots_;
  std::vector<Node> meeting_;
};

std::ostream& operator<<(std::ostream& os, const Configuration& c);

NodeLabel label(const Configuration& c, Node v);

/// Minimum enclosing rectangle of robots and meeting nodes.
Rect mer(const Configuration& c);
/// Minimum enclosing rectangle of the meeting nodes only.
Rect mer_f(const Configuration& c);

bool is_final(const Configuration& c);
std::size_t distinct_robot_positions(const Configuration& c);

/// Occupancy-only view: one robot per occupied node. This is what every
/// robot can see of the nodes it does not stand on.
Configuration weaken(const Configuration& c);

/// Configuration with one robot moved from `from` to `to`.
Configuration with_move(const Configuration& c, Node from, Node to);

}  // namespace gridgather

template <>
struct std::hash<gridgather::Node> : gridgather::NodeHash {};
