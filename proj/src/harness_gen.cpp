#include <algorithm>
#include <random>
#include <set>

#include "gridgather/harness.hpp"
#include "gridgather/symmetry.hpp"
#include "gridgather/verify.hpp"
#include "json.hpp"

namespace gridgather {

namespace {

using Rng = std::mt19937_64;

Coord uniform(Rng& rng, Coord lo, Coord hi) { return std::uniform_int_distribution<Coord>(lo, hi)(rng); }

constexpr IsometryKind kSymmetries[] = {
    IsometryKind::Identity,          IsometryKind::ReflectVertical,   IsometryKind::ReflectHorizontal,
    IsometryKind::ReflectDiagonal,   IsometryKind::ReflectAntidiagonal, IsometryKind::Rotate180,
    IsometryKind::Rotate90,
};

// A random symmetry anchored near the centre of the box, or none.
std::optional<Isometry> draw_symmetry(Rng& rng, Coord d) {
  const IsometryKind kind = kSymmetries[uniform(rng, 0, std::size(kSymmetries) - 1)];
  if (kind == IsometryKind::Identity) return std::nullopt;
  for (;;) {
    const Node anchor{d + uniform(rng, -1, 1), d + uniform(rng, -1, 1)};
    try {
      return Isometry(kind, anchor);
    } catch (const Error&) {
    }
  }
}

std::vector<Node> orbit_of(Node v, const std::optional<Isometry>& g) {
  std::vector<Node> out{v};
  if (!g) return out;
  for (Node w = g->apply(v); w != v; w = g->apply(w)) out.push_back(w);
  return out;
}

// k distinct nodes of [0,d]^2 outside `taken`, closed under g.
std::optional<std::vector<Node>> draw_set(Rng& rng, std::size_t k, Coord d, const std::optional<Isometry>& g,
                                          const std::set<Node>& taken) {
  std::set<Node> chosen;
  for (int attempt = 0; chosen.size() < k && attempt < 64 * static_cast<int>(k + 4); ++attempt) {
    const Node v{uniform(rng, 0, d), uniform(rng, 0, d)};
    const auto orbit = orbit_of(v, g);
    if (chosen.size() + orbit.size() > k) continue;
    const bool ok = std::all_of(orbit.begin(), orbit.end(), [&](Node w) {
      return w.x >= 0 && w.y >= 0 && w.x <= d && w.y <= d && !chosen.count(w) && !taken.count(w);
    });
    if (ok) chosen.insert(orbit.begin(), orbit.end());
  }
  if (chosen.size() != k) return std::nullopt;
  return std::vector<Node>(chosen.begin(), chosen.end());
}

}  // namespace

std::vector<ConfigFile> generate(const GenParams& p) {
  const auto box = static_cast<std::size_t>((p.d + 1) * (p.d + 1));
  if (p.n == 0 || p.d < 0 || p.n > box || p.meeting > box)
    throw Error(ErrorCode::InfeasibleClassParams, "n=" + std::to_string(p.n) + " d=" + std::to_string(p.d));
  if (p.cls == ClassKind::RunningAsym)
    throw Error(ErrorCode::InfeasibleClassParams, "initial configurations carry no multiplicity");

  Rng rng(p.seed);
  std::vector<ConfigFile> out;
  std::size_t rejected = 0;
  while (out.size() < p.count) {
    if (rejected++ > p.max_rejections)
      throw Error(ErrorCode::InfeasibleClassParams,
                  std::string(to_string(p.cls)) + " after " + std::to_string(p.max_rejections) + " rejections");
    const std::size_t m = p.meeting ? p.meeting : static_cast<std::size_t>(uniform(rng, 1, 4));
    if (m > box) continue;
    const auto m_sym = draw_symmetry(rng, p.d);
    const auto r_sym = uniform(rng, 0, 1) ? m_sym : draw_symmetry(rng, p.d);
    const auto meeting = draw_set(rng, m, p.d, m_sym, {});
    if (!meeting) continue;
    // Robots may stand on meeting nodes, but only sometimes.
    std::set<Node> taken;
    if (uniform(rng, 0, 3) != 0) taken.insert(meeting->begin(), meeting->end());
    if (p.n + taken.size() > box) taken.clear();
    const auto robots = draw_set(rng, p.n, p.d, r_sym, taken);
    if (!robots) continue;
    Configuration c = Configuration::initial(*robots, *meeting);
    if (classify(c).value != p.cls) continue;
    out.push_back({std::string(to_string(p.cls)) + "-" + std::to_string(p.seed) + "-" + std::to_string(out.size()),
                   std::move(c)});
    rejected = 0;
  }
  return out;
}

Configuration line_configuration(std::size_t n) {
  std::vector<Node> robots;
  for (std::size_t i = 1; i <= n; ++i) robots.push_back({static_cast<Coord>(i), 0});
  return Configuration::initial(std::move(robots), {{0, 0}});
}

BatchReport bench(const std::vector<ConfigFile>& corpus, std::vector<SchedulerKind> schedulers,
                  const std::vector<std::uint64_t>& seeds) {
  if (schedulers.empty()) schedulers = {SchedulerKind::FSYNC, SchedulerKind::SSYNC, SchedulerKind::ASYNC};
  BatchReport report;
  for (const ConfigFile& f : corpus) {
    const ClassKind cls = classify(f.config).value;
    const Rect r = mer(f.config);
    const Coord d = std::max<Coord>(1, std::max(r.p(), r.q()));
    for (SchedulerKind kind : schedulers) {
      for (std::uint64_t seed : seeds) {
        const RunTrace t = run(f.config, SchedulerPolicy{kind, seed});
        BatchRow row{f.name, seed, cls, kind, t.outcome, t.total_moves, d, f.config.robot_count(), 0};
        const std::string tag = f.name + " " + std::string(to_string(kind)) + " seed " + std::to_string(seed);
        if (t.outcome == Outcome::Ungatherable) {
          if (cls != ClassKind::U) report.failures.push_back(tag + ": refused a gatherable configuration");
        } else {
          row.ratio = static_cast<double>(t.total_moves) / static_cast<double>(d * static_cast<Coord>(row.n));
          report.max_ratio = std::max(report.max_ratio, row.ratio);
          if (t.outcome != Outcome::Gathered) report.failures.push_back(tag + ": " + std::string(to_string(t.outcome)));
          for (const std::string& v : check_trace(t)) report.failures.push_back(tag + ": " + v);
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

std::string to_json(const BatchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BatchRow& r : report.rows)
    rows.push_back({{"name", r.name},
                    {"seed", r.seed},
                    {"class", std::string(to_string(r.cls))},
                    {"scheduler", std::string(to_string(r.scheduler))},
                    {"outcome", std::string(to_string(r.outcome))},
                    {"total_moves", r.total_moves},
                    {"D", r.d},
                    {"n", r.n},
                    {"ratio", r.ratio}});
  nlohmann::json j{{"rows", rows}, {"summary", {{"max_ratio", report.max_ratio}, {"failures", report.failures}}}};
  return j.dump(2);
}

}  // namespace gridgather
