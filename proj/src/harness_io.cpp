#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gridgather/harness.hpp"
#include "json.hpp"

namespace gridgather {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
}

Node node_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    parse_fail(where + ": expected [x,y] integer pair");
  return {j[0].get<Coord>(), j[1].get<Coord>()};
}

std::vector<Node> nodes_from(const json& obj, const char* field) {
  if (!obj.contains(field)) parse_fail(std::string("missing field \"") + field + "\"");
  const json& arr = obj.at(field);
  if (!arr.is_array()) parse_fail(std::string("field \"") + field + "\": expected a list");
  std::vector<Node> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(node_from(arr[i], std::string(field) + "[" + std::to_string(i) + "]"));
  return out;
}

json node_json(Node n) { return json::array({n.x, n.y}); }

json nodes_json(const std::vector<Node>& ns) {
  json arr = json::array();
  for (Node n : ns) arr.push_back(node_json(n));
  return arr;
}

Configuration config_from(const json& obj, bool initial) {
  if (!obj.is_object()) parse_fail("expected a JSON object");
  auto robots = nodes_from(obj, "robots");
  auto meeting = nodes_from(obj, "meeting_nodes");
  try {
    return initial ? Configuration::initial(std::move(robots), std::move(meeting))
                   : Configuration(std::move(robots), std::move(meeting));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DuplicateRobot) throw;
    parse_fail(e.what());
  }
}

json config_json(const Configuration& c) {
  return json{{"robots", nodes_json(c.robots())}, {"meeting_nodes", nodes_json(c.meeting_nodes())}};
}

}  // namespace

ConfigFile parse_config(std::string_view text, bool initial) {
  const json obj = parse_json(text);
  Configuration c = config_from(obj, initial);
  std::string name;
  if (obj.contains("name")) {
    if (!obj["name"].is_string()) parse_fail("field \"name\": expected a string");
    name = obj["name"].get<std::string>();
  }
  return {name, std::move(c)};
}

ConfigFile load_config(const std::filesystem::path& path, bool initial) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ConfigFile f = parse_config(buf.str(), initial);
  if (f.name.empty()) f.name = path.stem().string();
  return f;
}

std::string to_json(const ConfigFile& file) {
  json j = config_json(file.config);
  if (!file.name.empty()) j["name"] = file.name;
  return j.dump();
}

void write_trace(std::ostream& os, const RunTrace& trace) {
  json head{{"seed", trace.policy.seed},
            {"policy", std::string(to_string(trace.policy.kind))},
            {"generator", std::string(kGeneratorName)},
            {"fairness_window", trace.policy.window_for(trace.initial.robot_count())},
            {"async_split", trace.policy.split_for(trace.initial.robot_count())},
            {"max_steps", trace.max_steps},
            {"initial", config_json(trace.initial)}};
  os << head.dump() << '\n';
  for (const TraceEvent& e : trace.events) {
    json line{{"t", e.t},
              {"r", e.robot},
              {"ph", e.phase == EventPhase::Look ? "look" : "move"},
              {"from", node_json(e.from)},
              {"to", node_json(e.to)}};
    os << line.dump() << '\n';
  }
  json tail{{"outcome", std::string(to_string(trace.outcome))},
            {"total_moves", trace.total_moves},
            {"final", config_json(trace.final_config)}};
  os << tail.dump() << '\n';
}

TraceFile read_trace(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) parse_fail("empty trace");
  const json head = parse_json(line);
  if (!head.contains("initial")) parse_fail("trace line 1: missing field \"initial\"");
  const Configuration initial = config_from(head["initial"], false);
  SchedulerPolicy policy;
  const auto kind = scheduler_from_string(head.value("policy", std::string()));
  if (!kind) parse_fail("trace line 1: unknown policy");
  policy.kind = *kind;
  policy.seed = head.value("seed", std::uint64_t{0});
  policy.fairness_window = head.value("fairness_window", std::size_t{0});
  policy.async_split = head.value("async_split", std::size_t{0});

  std::vector<TraceEvent> events;
  std::optional<Configuration> final_config;
  for (std::size_t no = 2; std::getline(is, line); ++no) {
    if (line.empty()) continue;
    const json j = parse_json(line);
    if (j.contains("final")) {
      final_config = config_from(j["final"], false);
      continue;
    }
    const std::string where = "trace line " + std::to_string(no);
    if (!j.contains("t") || !j.contains("r") || !j.contains("ph")) parse_fail(where + ": missing event field");
    TraceEvent e;
    e.t = j["t"].get<std::size_t>();
    e.robot = j["r"].get<std::size_t>();
    const std::string ph = j["ph"].get<std::string>();
    if (ph != "look" && ph != "move") parse_fail(where + ": field \"ph\" must be look or move");
    e.phase = ph == "look" ? EventPhase::Look : EventPhase::Move;
    e.from = node_from(j.value("from", json()), where + " from");
    e.to = node_from(j.value("to", json()), where + " to");
    events.push_back(e);
  }
  if (!final_config) final_config = replay(initial, events);
  return {initial, policy, std::move(events), *final_config};
}

std::string render(const Configuration& c) {
  const Rect r = mer(c);
  std::ostringstream os;
  os << "@ " << r.min_x << ' ' << r.min_y << '\n';
  for (Coord y = r.max_y; y >= r.min_y; --y) {
    for (Coord x = r.min_x; x <= r.max_x; ++x) os << ".m23rR"[label_value(label(c, {x, y}))];
    os << '\n';
  }
  return os.str();
}

Configuration parse_render(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string at;
  Coord x0 = 0, y0 = 0;
  if (!(in >> at >> x0 >> y0) || at != "@") parse_fail("render: missing \"@ x y\" origin line");
  std::vector<std::string> rows;
  for (std::string row; in >> row;) rows.push_back(row);
  std::vector<Node> robots, meeting;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Coord y = y0 + static_cast<Coord>(rows.size() - 1 - i);
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      const Node v{x0 + static_cast<Coord>(k), y};
      switch (rows[i][k]) {
        case '.': break;
        case 'm': meeting.push_back(v); break;
        case '2': meeting.push_back(v); robots.push_back(v); break;
        case '3': meeting.push_back(v); robots.insert(robots.end(), 2, v); break;
        case 'r': robots.push_back(v); break;
        case 'R': robots.insert(robots.end(), 2, v); break;
        default: parse_fail("render: row " + std::to_string(i + 2) + ": unknown glyph");
      }
    }
  }
  return Configuration(std::move(robots), std::move(meeting));
}

}  // namespace gridgather
