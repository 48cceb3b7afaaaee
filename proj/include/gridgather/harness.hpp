#pragma once

// File formats, corpus generation, batch statistics and ASCII rendering used
// by the command-line tool and the test suites.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridgather/classifier.hpp"
#include "gridgather/geometry.hpp"
#include "gridgather/scheduler.hpp"

namespace gridgather {

// ---- configuration files -------------------------------------------------

struct ConfigFile {
  std::string name;
  Configuration config;
};

/// Parses {"robots": [[x,y],...], "meeting_nodes": [[x,y],...], "name": "..."}.
/// Throws ParseError naming the offending field, DuplicateRobot when
/// `initial` and two robots share a node.
ConfigFile parse_config(std::string_view text, bool initial = true);
ConfigFile load_config(const std::filesystem::path& path, bool initial = true);
std::string to_json(const ConfigFile& file);

// ---- traces ----------------------------------------------------------------

/// Header line with the policy, seed and generator, then one line per event.
void write_trace(std::ostream& os, const RunTrace& trace);

struct TraceFile {
  Configuration initial;
  SchedulerPolicy policy;
  std::vector<TraceEvent> events;
  Configuration final_config;
};
TraceFile read_trace(std::istream& is);

// ---- rendering ---------------------------------------------------------------

/// Rows from the top of mer(c) down, preceded by "@ x y" giving the
/// bottom-left node. Glyphs . m 2 3 r R follow the node label digits.
std::string render(const Configuration& c);
/// Inverse of render; a multiplicity glyph reads back as two robots.
Configuration parse_render(std::string_view text);

// ---- generation ----------------------------------------------------------------

struct GenParams {
  ClassKind cls = ClassKind::I11;
  std::size_t n = 3;
  Coord d = 6;            // nodes lie in [0,d] x [0,d]
  std::size_t meeting = 0;  // 0 draws 1..4 per sample
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t max_rejections = 100000;
};

/// Initial configurations that classify as p.cls. Throws
/// InfeasibleClassParams when the box cannot hold them or sampling gives up.
std::vector<ConfigFile> generate(const GenParams& p);

// ---- batch runs ------------------------------------------------------------------

struct BatchRow {
  std::string name;
  std::uint64_t seed = 0;
  ClassKind cls = ClassKind::I11;
  SchedulerKind scheduler = SchedulerKind::FSYNC;
  Outcome outcome = Outcome::StepLimit;
  std::size_t total_moves = 0;
  Coord d = 0;
  std::size_t n = 0;
  double ratio = 0;  // total_moves / (d * n), 0 for Ungatherable rows
};

struct BatchReport {
  std::vector<BatchRow> rows;
  double max_ratio = 0;
  std::vector<std::string> failures;
};

/// Line family: n robots in a row next to a single meeting node at its end.
Configuration line_configuration(std::size_t n);

/// Runs every file under every scheduler with each seed. An empty scheduler
/// list means all three. Gatherable runs that do not gather, and runs whose
/// trace fails check_trace, are failures.
BatchReport bench(const std::vector<ConfigFile>& corpus, std::vector<SchedulerKind> schedulers,
                  const std::vector<std::uint64_t>& seeds = {0});

std::string to_json(const BatchReport& report);

}  // namespace gridgather
