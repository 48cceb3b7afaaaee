#include <sstream>

#include "doctest.h"
#include "gridgather/harness.hpp"
#include "gridgather/verify.hpp"

using namespace gridgather;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed");
  return ErrorCode::ParseError;
}

std::string what_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("configuration files round-trip") {
  const ConfigFile f{"pair", Configuration({{0, 0}, {-3, 7}}, {{1, 1}, {4, -2}})};
  const ConfigFile back = parse_config(to_json(f));
  CHECK(back.name == "pair");
  CHECK(back.config == f.config);
}

TEST_CASE("configuration file errors") {
  CHECK(code_of(R"({"robots": [[0,0],[0,0]], "meeting_nodes": [[1,1]]})") == ErrorCode::DuplicateRobot);
  CHECK_NOTHROW(parse_config(R"({"robots": [[0,0],[0,0]], "meeting_nodes": [[1,1]]})", false));
  CHECK(code_of(R"({"robots": [[0,0]]})") == ErrorCode::ParseError);
  CHECK(what_of(R"({"robots": [[0,"a"]], "meeting_nodes": [[1,1]]})").find("robots") != std::string::npos);
  CHECK(what_of("{\n\"robots\": [[0,0]],\n\"meeting_nodes\": [[1,1]\n}").find("line 4") != std::string::npos);
  CHECK(code_of(R"({"robots": [], "meeting_nodes": [[1,1]]})") != ErrorCode::DuplicateRobot);
}

TEST_CASE("rendering round-trips") {
  const Configuration c({{0, 0}, {2, 1}, {-1, 3}}, {{1, 0}, {2, 1}, {0, 3}});
  const std::string text = render(c);
  CHECK(text.rfind("@ -1 0", 0) == 0);
  CHECK(parse_render(text) == c);

  const Configuration stacked({{1, 1}, {1, 1}, {0, 0}}, {{1, 1}});
  CHECK(parse_render(render(stacked)) == Configuration({{1, 1}, {1, 1}, {0, 0}}, {{1, 1}}));
}

TEST_CASE("traces replay from their file") {
  const Configuration c({{0, 0}, {3, 1}, {5, 4}}, {{2, 2}, {6, 0}});
  const RunTrace t = run(c, {SchedulerKind::ASYNC, 11, 0, 0});
  std::stringstream ss;
  write_trace(ss, t);
  const TraceFile f = read_trace(ss);
  CHECK(f.initial == c);
  CHECK(f.policy.kind == SchedulerKind::ASYNC);
  CHECK(f.policy.seed == 11);
  CHECK(f.events.size() == t.events.size());
  CHECK(replay(f.initial, f.events) == f.final_config);
  CHECK(f.final_config == t.final_config);
  // Rerunning from the header gives the same events.
  CHECK(run(f.initial, f.policy).events.size() == f.events.size());
}

TEST_CASE("generated configurations have the requested class") {
  for (ClassKind k : {ClassKind::I11, ClassKind::I12, ClassKind::I13, ClassKind::I21, ClassKind::I22,
                      ClassKind::I31, ClassKind::I32, ClassKind::U}) {
    GenParams p;
    p.cls = k;
    p.n = k == ClassKind::I32 ? 5 : 4;
    p.seed = 3;
    p.count = 3;
    const auto files = generate(p);
    REQUIRE(files.size() == 3);
    for (const ConfigFile& f : files) {
      CHECK(classify(f.config).value == k);
      CHECK(f.config.robot_count() == p.n);
      CHECK(f.config.positions().size() == p.n);
    }
  }
  GenParams same;
  same.cls = ClassKind::I12;
  same.seed = 9;
  CHECK(generate(same)[0].config == generate(same)[0].config);
}

TEST_CASE("infeasible generation requests") {
  GenParams crowded;
  crowded.n = 1000000;
  crowded.d = 3;
  try {
    generate(crowded);
    FAIL("generated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleClassParams);
  }
  GenParams odd;
  odd.cls = ClassKind::U;
  odd.n = 3;
  odd.max_rejections = 2000;
  CHECK_THROWS_AS(generate(odd), Error);
}

TEST_CASE("line family and batch reports") {
  const Configuration line = line_configuration(5);
  CHECK(line.robot_count() == 5);
  const BatchReport r = bench({{"line5", line}}, {SchedulerKind::FSYNC});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].total_moves == 15);
  CHECK(r.failures.empty());

  const ConfigFile u{"u", Configuration({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}})};
  const BatchReport all = bench({{"line5", line}, u}, {});
  CHECK(all.rows.size() == 6);
  CHECK(all.failures.empty());
  for (const BatchRow& row : all.rows)
    if (row.name == "u") {
      CHECK(row.outcome == Outcome::Ungatherable);
      CHECK(row.ratio == 0);
    }
  CHECK(all.max_ratio == doctest::Approx(15.0 / 25.0));
  CHECK(to_json(all).find("\"max_ratio\"") != std::string::npos);
}
