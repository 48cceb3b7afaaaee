// gridgather: classify, run, generate, benchmark and render configurations.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gridgather/classifier.hpp"
#include "gridgather/harness.hpp"
#include "gridgather/lexicon.hpp"
#include "gridgather/scheduler.hpp"

namespace fs = std::filesystem;
using namespace gridgather;

namespace {

constexpr int kExitGathered = 0;
constexpr int kExitError = 1;
constexpr int kExitUngatherable = 2;
constexpr int kExitStepLimit = 3;

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("GRIDGATHER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "GRIDGATHER_SEED is not an unsigned integer");
    }
  }
  return flag;
}

std::string symbols_at(const CornerString& s) {
  std::ostringstream os;
  os << s.corner() << ' ' << s.symbols;
  return os.str();
}

int cmd_classify(const std::string& path) {
  const ConfigFile f = load_config(path);
  const ConfigClass cls = classify(f.config);
  std::cout << cls.describe() << '\n';
  try {
    const std::string key = symbols_at(key_corner(f.config).repr);
    std::cout << "key corner " << key << '\n';
  } catch (const NoUniqueKeyCorner& e) {
    std::cout << "key corner undefined (" << e.tied_corners().size() << " tied)\n";
  }
  const auto leading = leading_corners(f.config);
  if (leading.size() == 1)
    std::cout << "leading corner " << symbols_at(leading.front()) << '\n';
  else
    std::cout << "leading corner undefined (" << leading.size() << " tied)\n";
  return kExitGathered;
}

int cmd_run(const std::string& path, SchedulerPolicy policy, std::size_t max_steps, const std::string& trace_out) {
  const ConfigFile f = load_config(path);
  const RunTrace t = run(f.config, policy, max_steps);
  if (!trace_out.empty()) {
    std::ofstream out(trace_out);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + trace_out);
    write_trace(out, t);
  }
  switch (t.outcome) {
    case Outcome::Gathered:
      std::cout << "Gathered at " << *t.gathered_at << ", moves=" << t.total_moves << '\n';
      return kExitGathered;
    case Outcome::Ungatherable:
      std::cout << "Ungatherable: " << classify(f.config).describe() << '\n';
      return kExitUngatherable;
    case Outcome::StepLimit:
      break;
  }
  std::cout << "StepLimit after " << t.max_steps << " steps, moves=" << t.total_moves << '\n';
  return kExitStepLimit;
}

int cmd_gen(GenParams p, const std::string& out_dir) {
  const auto files = generate(p);
  if (out_dir.empty()) {
    for (const ConfigFile& f : files) std::cout << to_json(f) << '\n';
    return kExitGathered;
  }
  fs::create_directories(out_dir);
  for (const ConfigFile& f : files) std::ofstream(fs::path(out_dir) / (f.name + ".json")) << to_json(f) << '\n';
  std::cout << "wrote " << files.size() << " files to " << out_dir << '\n';
  return kExitGathered;
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& names, std::uint64_t seed,
              std::size_t seeds, std::size_t line_max, const std::string& report_out) {
  std::vector<ConfigFile> corpus;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) corpus.push_back(load_config(p));
  for (std::size_t n = 2; n <= line_max; ++n) corpus.push_back({"line-" + std::to_string(n), line_configuration(n)});
  if (corpus.empty()) throw Error(ErrorCode::ParseError, "empty corpus " + dir);

  std::vector<SchedulerKind> kinds;
  for (const std::string& s : names) {
    const auto k = scheduler_from_string(s);
    if (!k) throw Error(ErrorCode::ParseError, "unknown scheduler " + s);
    kinds.push_back(*k);
  }
  std::vector<std::uint64_t> seed_list;
  for (std::size_t i = 0; i < seeds; ++i) seed_list.push_back(seed + i);

  const BatchReport report = bench(corpus, kinds, seed_list);
  for (const BatchRow& r : report.rows) {
    if (r.name.rfind("line-", 0) != 0 || r.scheduler != SchedulerKind::FSYNC || r.seed != seed) continue;
    std::cout << r.name << " moves=" << r.total_moves << " n(n+1)/2=" << r.n * (r.n + 1) / 2
              << " n(n-1)/2=" << r.n * (r.n - 1) / 2 << '\n';
  }
  std::cout << "runs " << report.rows.size() << " max moves/(D*n) " << report.max_ratio << " failures "
            << report.failures.size() << '\n';
  for (const std::string& f : report.failures) std::cout << "FAIL " << f << '\n';
  if (!report_out.empty()) std::ofstream(report_out) << to_json(report) << '\n';
  return report.failures.empty() ? kExitGathered : kExitError;
}

int cmd_render(const std::string& path) {
  std::cout << render(load_config(path, false).config);
  return kExitGathered;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gathering of oblivious robots on meeting nodes of the grid"};
  app.require_subcommand(1);

  std::string path;
  auto* classify_cmd = app.add_subcommand("classify", "Print the class of a configuration file");
  classify_cmd->add_option("path", path, "Configuration JSON")->required();

  SchedulerPolicy policy;
  std::string scheduler = "fsync", trace_out;
  std::size_t max_steps = 0;
  auto* run_cmd = app.add_subcommand("run", "Run the algorithm on a configuration file");
  run_cmd->add_option("path", path, "Configuration JSON")->required();
  run_cmd->add_option("--scheduler", scheduler, "fsync, ssync or async")->capture_default_str();
  run_cmd->add_option("--seed", policy.seed, "Scheduler seed (GRIDGATHER_SEED overrides)");
  run_cmd->add_option("--max-steps", max_steps, "Scheduler decisions before giving up (0: default)");
  run_cmd->add_option("--fairness-window", policy.fairness_window, "0: 4n");
  run_cmd->add_option("--async-split", policy.async_split, "0: 2n");
  run_cmd->add_option("--trace", trace_out, "Write a JSONL trace here");

  GenParams gen;
  std::string cls_name = "I11", out_dir;
  auto* gen_cmd = app.add_subcommand("gen", "Generate configurations of a given class");
  gen_cmd->add_option("--class", cls_name, "I11 I12 I13 I21 I22 I31 I32 U")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Robots")->capture_default_str();
  gen_cmd->add_option("--d", gen.d, "Nodes lie in [0,d]^2")->capture_default_str();
  gen_cmd->add_option("--meeting", gen.meeting, "Meeting nodes (0: random 1..4)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed (GRIDGATHER_SEED overrides)");
  gen_cmd->add_option("--count", gen.count, "Configurations to emit")->capture_default_str();
  gen_cmd->add_option("--out", out_dir, "Directory for one file per configuration (default: stdout)");

  std::string corpus_dir, report_out;
  std::vector<std::string> schedulers;
  std::uint64_t bench_seed = 0;
  std::size_t seeds = 1, line_max = 10;
  auto* bench_cmd = app.add_subcommand("bench", "Run a corpus under several schedulers");
  bench_cmd->add_option("corpus", corpus_dir, "Directory of configuration JSON files")->required();
  bench_cmd->add_option("--schedulers", schedulers, "Subset of fsync ssync async (default: all)")->delimiter(',');
  bench_cmd->add_option("--seed", bench_seed, "First seed (GRIDGATHER_SEED overrides)");
  bench_cmd->add_option("--seeds", seeds, "Seeds per scheduler")->capture_default_str();
  bench_cmd->add_option("--line-max", line_max, "Add the line family for n = 2..line-max")->capture_default_str();
  bench_cmd->add_option("--report", report_out, "Write the BatchReport JSON here");

  auto* render_cmd = app.add_subcommand("render", "Draw a configuration file as ASCII");
  render_cmd->add_option("path", path, "Configuration JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd) return cmd_classify(path);
    if (*run_cmd) {
      const auto kind = scheduler_from_string(scheduler);
      if (!kind) throw Error(ErrorCode::ParseError, "unknown scheduler " + scheduler);
      policy.kind = *kind;
      policy.seed = effective_seed(policy.seed);
      return cmd_run(path, policy, max_steps, trace_out);
    }
    if (*gen_cmd) {
      const auto cls = class_from_string(cls_name);
      if (!cls) throw Error(ErrorCode::ParseError, "unknown class " + cls_name);
      gen.cls = *cls;
      gen.seed = effective_seed(gen.seed);
      return cmd_gen(gen, out_dir);
    }
    if (*bench_cmd) return cmd_bench(corpus_dir, schedulers, effective_seed(bench_seed), seeds, line_max, report_out);
    if (*render_cmd) return cmd_render(path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
