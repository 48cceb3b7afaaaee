#pragma once

// String views of a configuration: corner strings, key corner, leading
// corner, configuration view and the meeting-node orderings built on them.

#include <string>
#include <utility>
#include <vector>

#include "gridgather/geometry.hpp"
#include "gridgather/symmetry.hpp"

namespace gridgather {

enum class Labeler { Senary, LambdaBinary };

/// A raster scan anchored at a rectangle corner. `inner` is the unit step
/// along each scanned line, `outer` the step from one line to the next.
struct Frame {
  Node corner;
  Node outer;
  Node inner;
  Coord line_length = 1;  // nodes per inner line

  /// (line index, position in line); defined for any node, in range inside the rect.
  std::pair<Coord, Coord> coords(Node v) const;
  Coord index(Node v) const;
  Node node_at(Coord index) const;
};

struct CornerString {
  Frame frame;
  std::string symbols;  // '0'..'5' for senary strings, '0'/'1' for binary ones

  Node corner() const { return frame.corner; }
  Node direction() const { return frame.inner; }
  Node sweep() const { return frame.outer; }
  bool inner_vertical() const { return frame.inner.x == 0; }
};

class NoUniqueKeyCorner : public Error {
 public:
  explicit NoUniqueKeyCorner(std::vector<Node> tied)
      : Error(ErrorCode::NoUniqueKeyCorner, std::to_string(tied.size()) + " tied corners"),
        tied_(std::move(tied)) {}
  const std::vector<Node>& tied_corners() const { return tied_; }

 private:
  std::vector<Node> tied_;
};

/// Eight strings: per corner (in Rect::corners() order) inner-vertical first,
/// then inner-horizontal.
std::vector<CornerString> corner_strings(const Configuration& c, const Rect& rect, Labeler labeler);

/// Picks the string representation of one corner from its two strings.
CornerString string_repr(const CornerString& inner_vertical, const CornerString& inner_horizontal,
                         const Rect& rect);

/// One representation per distinct corner node.
std::vector<CornerString> corner_reprs(const Configuration& c, const Rect& rect, Labeler labeler);

/// All corners whose representation is the lexicographic maximum.
std::vector<CornerString> maximal_reprs(const Configuration& c, const Rect& rect, Labeler labeler);

struct KeyCorner {
  Node corner;
  CornerString repr;
};

/// Unique maximum of the senary representations over mer(c); throws
/// NoUniqueKeyCorner when tied.
KeyCorner key_corner(const Configuration& c);

/// Largest senary representation over mer(c), defined for symmetric
/// configurations too.
std::string max_repr_string(const Configuration& c);

/// Corners of mer_f(c) with the largest binary representation.
std::vector<CornerString> leading_corners(const Configuration& c);

struct ConfigView {
  Coord scan_index = 0;
  NodeLabel status = NodeLabel::Empty;
  friend auto operator<=>(const ConfigView&, const ConfigView&) = default;
};

ConfigView config_view(const Configuration& c, const CornerString& key, Node v);

enum class OrderKind { Full, OnAxis, FromGuard };

struct MeetingOrder {
  std::vector<Node> ordered;
  OrderKind kind = OrderKind::Full;
};

/// Meeting nodes in order of appearance in `scan`, restricted to `keep`.
std::vector<Node> appearance_order(const CornerString& scan, const std::vector<Node>& nodes);

/// Ordering from the unique leading corner; needs M asymmetric (or |M| = 1).
MeetingOrder ordering_O(const Configuration& c);
/// Meeting nodes on `axis`, a reflection of M, in leading-corner scan order.
MeetingOrder ordering_O_prime(const Configuration& c, const Isometry& axis);
/// Binary scan of the rectangle spanned by M and the guard, from the guard's
/// corner. The guard must sit at a corner of mer(c).
MeetingOrder ordering_O_doubleprime(const Configuration& c, Node guard);

}  // namespace gridgather
