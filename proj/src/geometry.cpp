#include "gridgather/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace gridgather {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyPointSet: return "EmptyPointSet";
    case ErrorCode::UniverseNotStable: return "UniverseNotStable";
    case ErrorCode::NoUniqueKeyCorner: return "NoUniqueKeyCorner";
    case ErrorCode::OrderingUndefined: return "OrderingUndefined";
    case ErrorCode::NoGuardYet: return "NoGuardYet";
    case ErrorCode::Ungatherable: return "Ungatherable";
    case ErrorCode::SymmetricConfiguration: return "SymmetricConfiguration";
    case ErrorCode::NotPartitive: return "NotPartitive";
    case ErrorCode::InfeasibleClassParams: return "InfeasibleClassParams";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::DuplicateRobot: return "DuplicateRobot";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::ostream& operator<<(std::ostream& os, Node n) { return os << '(' << n.x << ',' << n.y << ')'; }

std::ostream& operator<<(std::ostream& os, const Rect& r) {
  return os << Node{r.min_x, r.min_y} << '-' << Node{r.max_x, r.max_y};
}

std::array<Node, 4> neighbors(Node n) {
  return {{n + kUnitSteps[0], n + kUnitSteps[1], n + kUnitSteps[2], n + kUnitSteps[3]}};
}

Rect bounding_rect(std::span<const Node> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyPointSet);
  Rect r{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const Node& n : points) {
    r.min_x = std::min(r.min_x, n.x);
    r.max_x = std::max(r.max_x, n.x);
    r.min_y = std::min(r.min_y, n.y);
    r.max_y = std::max(r.max_y, n.y);
  }
  return r;
}

Configuration::Configuration(std::vector<Node> robots, std::vector<Node> meeting_nodes)
    : robots_(std::move(robots)), meeting_(std::move(meeting_nodes)) {
  if (robots_.empty()) throw Error(ErrorCode::InvalidConfiguration, "no robots");
  if (meeting_.empty()) throw Error(ErrorCode::InvalidConfiguration, "no meeting nodes");
  std::sort(robots_.begin(), robots_.end());
  std::sort(meeting_.begin(), meeting_.end());
  if (std::adjacent_find(meeting_.begin(), meeting_.end()) != meeting_.end())
    throw Error(ErrorCode::InvalidConfiguration, "duplicate meeting node");
}

Configuration Configuration::initial(std::vector<Node> robots, std::vector<Node> meeting_nodes) {
  Configuration c(std::move(robots), std::move(meeting_nodes));
  auto dup = std::adjacent_find(c.robots_.begin(), c.robots_.end());
  if (dup != c.robots_.end()) {
    std::ostringstream os;
    os << "two robots at " << *dup;
    throw Error(ErrorCode::DuplicateRobot, os.str());
  }
  return c;
}

std::size_t Configuration::robots_at(Node v) const {
  auto [lo, hi] = std::equal_range(robots_.begin(), robots_.end(), v);
  return static_cast<std::size_t>(hi - lo);
}

bool Configuration::is_meeting(Node v) const {
  return std::binary_search(meeting_.begin(), meeting_.end(), v);
}

std::vector<Node> Configuration::positions() const {
  std::vector<Node> out = robots_;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Configuration::has_multiplicity() const {
  return std::adjacent_find(robots_.begin(), robots_.end()) != robots_.end();
}

std::ostream& operator<<(std::ostream& os, const Configuration& c) {
  os << "R{";
  for (std::size_t i = 0; i < c.robots().size(); ++i) os << (i ? "," : "") << c.robots()[i];
  os << "} M{";
  for (std::size_t i = 0; i < c.meeting_nodes().size(); ++i)
    os << (i ? "," : "") << c.meeting_nodes()[i];
  return os << '}';
}

NodeLabel label(const Configuration& c, Node v) {
  const std::size_t k = c.robots_at(v);
  const bool meeting = c.is_meeting(v);
  if (k == 0) return meeting ? NodeLabel::Meeting : NodeLabel::Empty;
  if (meeting) return k == 1 ? NodeLabel::SingleOnMeeting : NodeLabel::MultiOnMeeting;
  return k == 1 ? NodeLabel::SingleOffMeeting : NodeLabel::MultiOffMeeting;
}

Rect mer(const Configuration& c) {
  Rect r = bounding_rect(c.robots());
  const Rect f = bounding_rect(c.meeting_nodes());
  return {std::min(r.min_x, f.min_x), std::min(r.min_y, f.min_y), std::max(r.max_x, f.max_x),
          std::max(r.max_y, f.max_y)};
}

Rect mer_f(const Configuration& c) { return bounding_rect(c.meeting_nodes()); }

bool is_final(const Configuration& c) {
  const auto& r = c.robots();
  return r.front() == r.back() && c.is_meeting(r.front());
}

std::size_t distinct_robot_positions(const Configuration& c) { return c.positions().size(); }

Configuration weaken(const Configuration& c) {
  return Configuration(c.positions(), c.meeting_nodes());
}

Configuration with_move(const Configuration& c, Node from, Node to) {
  std::vector<Node> robots = c.robots();
  auto it = std::find(robots.begin(), robots.end(), from);
  if (it == robots.end()) throw Error(ErrorCode::InvalidConfiguration, "no robot to move");
  *it = to;
  return Configuration(std::move(robots), c.meeting_nodes());
}

}  // namespace gridgather
