#pragma once

// Configurations rebuilt from the strings of two worked corner examples. Each
// string is laid out from corner (0,0) with lines running up the short side,
// so the expected corner is (0,0).

#include <string>
#include <vector>

#include "gridgather/geometry.hpp"

namespace examples {

using gridgather::Configuration;
using gridgather::Coord;
using gridgather::Node;

inline constexpr const char* kKeyCornerString = "001001400004000000000000404000400401000000100";
inline constexpr const char* kLeadingCornerString = "01000001000000101000000000001001000";
inline constexpr Coord kLine = 5;

inline Node at(std::size_t k) { return {static_cast<Coord>(k) / kLine, static_cast<Coord>(k) % kLine}; }

/// Robots ('4') and meeting nodes ('1') of the senary example string.
inline Configuration key_corner_example() {
  std::vector<Node> robots, meeting;
  const std::string s = kKeyCornerString;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '4') robots.push_back(at(k));
    if (s[k] == '1') meeting.push_back(at(k));
  }
  return Configuration::initial(robots, meeting);
}

/// Meeting nodes of the binary example string. Its row y = 0 holds no meeting
/// node, so one robot there restores the rectangle the string was read over.
inline Configuration leading_corner_example() {
  std::vector<Node> meeting;
  const std::string s = kLeadingCornerString;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] == '1') meeting.push_back(at(k));
  return Configuration::initial({{3, 0}}, meeting);
}

}  // namespace examples
