// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "examples.hpp"
#include "gridgather/algorithm.hpp"
#include "gridgather/harness.hpp"
#include "gridgather/lexicon.hpp"
#include "gridgather/verify.hpp"
#include "oracles.hpp"

using namespace gridgather;

namespace {

constexpr std::size_t kTaxonomySamples = 100000;
constexpr std::size_t kTaxonomyMaxRobots = 20;
constexpr Coord kTaxonomyMaxSide = 30;
constexpr double kTaxonomySeconds = 60.0;
constexpr std::size_t kAdversaryInstances = 100;
constexpr std::size_t kAdversaryRounds = 100;
constexpr std::size_t kPerClass = 150;
constexpr std::size_t kSeedsPerScheduler = 5;
constexpr std::size_t kMinCorpus = 1000;
constexpr double kMoveBound = 4.0;
constexpr std::size_t kLineMax = 50;
constexpr std::size_t kFuzzSamples = 10000;
constexpr Coord kUniverse = 4;  // nodes per side of the exhaustive universe
constexpr std::size_t kExhaustiveCap = 400000;
constexpr std::size_t kExhaustiveMeeting = 4;

const std::vector<SchedulerKind> kSchedulers{SchedulerKind::FSYNC, SchedulerKind::SSYNC, SchedulerKind::ASYNC};

struct Verdict {
  bool pass = true;
  std::ostringstream note;
};

void report(int k, const std::string& title, const Verdict& v) {
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << k << " " << title << ": " << v.note.str() << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Random configuration in a box of side d, mirrored onto itself under a
/// random isometry most of the time so that every class shows up.
Configuration taxonomy_sample(std::mt19937_64& rng) {
  std::uniform_int_distribution<Coord> side(1, kTaxonomyMaxSide);
  const Coord d = side(rng);
  std::uniform_int_distribution<Coord> u(0, d);
  const bool mirror = rng() % 3 != 0;
  const std::size_t n_max = mirror ? kTaxonomyMaxRobots / 2 : kTaxonomyMaxRobots;
  const std::size_t n = 1 + rng() % n_max;
  const std::size_t m = 1 + rng() % 4;
  std::vector<Node> robots;
  std::set<Node> ms;
  for (std::size_t i = 0; i < n; ++i) robots.push_back({u(rng), u(rng)});
  while (ms.size() < m) ms.insert({u(rng), u(rng)});
  if (!mirror) return Configuration(robots, {ms.begin(), ms.end()});
  const int g = std::uniform_int_distribution<int>(1, 7)(rng);
  auto image = [&](Node v) { return oracle::mul(oracle::linear_maps()[g], v) + Node{d, d}; };
  std::vector<Node> mm(ms.begin(), ms.end());
  for (Node v : ms)
    if (!ms.contains(image(v))) mm.push_back(image(v));
  const std::size_t base = robots.size();
  if (rng() % 4)
    for (std::size_t i = 0; i < base; ++i) robots.push_back(image(robots[i]));
  return Configuration(robots, mm);
}

Verdict taxonomy() {
  Verdict v;
  std::mt19937_64 rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t disagree = 0, variant = 0;
  std::map<ClassKind, std::size_t> seen;
  for (std::size_t s = 0; s < kTaxonomySamples; ++s) {
    const Configuration c = taxonomy_sample(rng);
    const ClassKind k = classify(c).value;
    ++seen[k];
    if (k != oracle::classify(c)) {
      if (disagree++ == 0) v.note << "first disagreement " << c << "; ";
    }
    std::uniform_int_distribution<Coord> t(-1000, 1000);
    for (int g = 0; g < 8; ++g)
      if (classify(oracle::transform(c, g, {t(rng), t(rng)})).value != k) ++variant;
  }
  const double secs = seconds_since(t0);
  v.pass = disagree == 0 && variant == 0 && secs < kTaxonomySeconds;
  v.note << kTaxonomySamples << " configurations, " << disagree << " oracle disagreements, " << variant
         << " isometry mismatches, " << seen.size() << " classes seen, " << secs << " s";
  return v;
}

Verdict impossibility() {
  Verdict v;
  std::size_t refused = 0, generated = 0, instances = 0, lost = 0, gathered = 0;
  for (std::size_t n : {2, 4, 6, 8}) {
    GenParams p;
    p.cls = ClassKind::U;
    p.n = n;
    p.d = 8;
    p.seed = 200 + n;
    p.count = kAdversaryInstances / 4;
    for (const ConfigFile& f : generate(p)) {
      ++generated;
      const RunTrace t = run(f.config, {SchedulerKind::ASYNC, n, 0, 0});
      if (t.outcome == Outcome::Ungatherable && t.total_moves == 0) ++refused;
      try {
        // Throws InvalidConfiguration as soon as a round breaks partitivity.
        const RunTrace a = run_symmetric_adversary(f.config, kAdversaryRounds, n);
        if (a.outcome == Outcome::Gathered) ++gathered;
        ++instances;
      } catch (const Error& e) {
        if (lost++ == 0) v.note << "first failure " << e.what() << "; ";
      }
    }
  }
  v.pass = refused == generated && instances >= kAdversaryInstances && lost == 0 && gathered == 0;
  v.note << refused << "/" << generated << " U configurations refused, " << instances << " partitive instances x "
         << kAdversaryRounds << " rounds, " << lost << " partitivity violations";
  return v;
}

std::vector<ConfigFile> gathering_corpus() {
  std::vector<ConfigFile> corpus;
  const std::vector<ClassKind> classes{ClassKind::I11, ClassKind::I12, ClassKind::I13, ClassKind::I21,
                                       ClassKind::I22, ClassKind::I31, ClassKind::I32};
  for (ClassKind k : classes) {
    for (std::size_t batch = 0; batch < 5; ++batch) {
      GenParams p;
      p.cls = k;
      p.n = 2 + batch + (k == ClassKind::I32 && batch % 2 == 0);
      if (k == ClassKind::I32 && p.n % 2 == 0) ++p.n;
      p.d = 4 + 2 * static_cast<Coord>(batch);
      p.seed = 300 + 10 * static_cast<std::uint64_t>(k) + batch;
      p.count = kPerClass / 5;
      for (ConfigFile& f : generate(p)) corpus.push_back(std::move(f));
    }
  }
  return corpus;
}

struct Runs {
  std::size_t runs = 0, not_gathered = 0, wrong_target = 0, step_limit = 0, violations = 0;
  std::string first_failure, first_violation;
};

Runs run_corpus(const std::vector<ConfigFile>& corpus) {
  Runs r;
  for (const ConfigFile& f : corpus) {
    const auto target = predicted_target(f.config);
    for (SchedulerKind k : kSchedulers)
      for (std::uint64_t seed = 0; seed < kSeedsPerScheduler; ++seed) {
        const RunTrace t = run(f.config, {k, seed, 0, 0});
        ++r.runs;
        std::ostringstream where;
        where << f.name << " " << f.config << " " << to_string(k) << " seed " << seed;
        if (t.outcome == Outcome::StepLimit) ++r.step_limit;
        if (t.outcome != Outcome::Gathered) {
          if (r.not_gathered++ == 0) r.first_failure = where.str();
        } else if (target && t.gathered_at != target) {
          if (r.wrong_target++ == 0) r.first_failure = where.str();
        }
        const auto bad = check_trace(t);
        if (!bad.empty() && r.violations++ == 0) r.first_violation = where.str() + ": " + bad.front();
      }
  }
  return r;
}

/// Every configuration with 1..n_max robots (distinct nodes unless
/// `multiset`) and 1..m_max meeting nodes inside the universe.
void for_each_small(std::size_t n_max, std::size_t m_max, bool multiset,
                    const std::function<void(const Configuration&)>& visit) {
  std::vector<Node> grid;
  for (Coord x = 0; x < kUniverse; ++x)
    for (Coord y = 0; y < kUniverse; ++y) grid.push_back({x, y});
  const std::size_t g = grid.size();
  std::vector<std::vector<std::size_t>> robot_sets, meeting_sets;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t, bool, std::vector<std::vector<std::size_t>>&)> pick =
      [&](std::size_t from, std::size_t left, bool repeat, std::vector<std::vector<std::size_t>>& out) {
        if (!cur.empty()) out.push_back(cur);
        if (left == 0) return;
        for (std::size_t i = from; i < g; ++i) {
          cur.push_back(i);
          pick(repeat ? i : i + 1, left - 1, repeat, out);
          cur.pop_back();
        }
      };
  pick(0, n_max, multiset, robot_sets);
  pick(0, m_max, false, meeting_sets);
  for (const auto& rs : robot_sets)
    for (const auto& ms : meeting_sets) {
      std::vector<Node> r, m;
      for (std::size_t i : rs) r.push_back(grid[i]);
      for (std::size_t i : ms) m.push_back(grid[i]);
      visit(Configuration(r, m));
    }
}

/// Smallest image of c under the eight isometries, normalised to the origin.
std::string canonical(const Configuration& c) {
  std::string best;
  for (int g = 0; g < 8; ++g) {
    const Configuration t = oracle::transform(c, g, {0, 0});
    const Rect box = mer(t);
    const Configuration n = oracle::transform(t, 0, {-box.min_x, -box.min_y});
    std::ostringstream os;
    os << n;
    if (best.empty() || os.str() < best) best = os.str();
  }
  return best;
}

Verdict gathering(const std::vector<ConfigFile>& corpus, const Runs& r) {
  Verdict v;
  std::size_t explored = 0, failed = 0, several = 0;
  std::set<std::string> seen;
  for_each_small(3, kExhaustiveMeeting, false, [&](const Configuration& c) {
    if (is_final(c) || is_ungatherable(c) || !seen.insert(canonical(c)).second) return;
    ++explored;
    const ExhaustiveResult e = exhaustive_async(c, kExhaustiveCap);
    // The axis case may end on either of its axis nodes; every other class has one target.
    const bool axis_case = classify(c).configuration_axis;
    if (e.gathering_nodes.size() > 1 && axis_case) ++several;
    if (!e.complete || e.fair_cycle || e.gathering_nodes.empty() || (e.gathering_nodes.size() > 1 && !axis_case)) {
      if (failed++ == 0) v.note << "first exhaustive failure " << c << " " << e.detail << "; ";
    }
  });
  v.pass = corpus.size() >= kMinCorpus && r.not_gathered == 0 && r.wrong_target == 0 && r.step_limit == 0 &&
           failed == 0;
  if (!r.first_failure.empty()) v.note << "first run failure " << r.first_failure << "; ";
  v.note << corpus.size() << " configurations x " << kSchedulers.size() << " schedulers x " << kSeedsPerScheduler
         << " seeds = " << r.runs << " runs, " << r.not_gathered << " not gathered, " << r.wrong_target
         << " off target, " << r.step_limit << " step limits; exhaustive ASYNC " << explored
         << " configurations (n<=3, |M|<=" << kExhaustiveMeeting << ", 4x4), " << failed << " failures, " << several
         << " axis-case configurations with more than one reachable gathering node";
  return v;
}

Verdict invariants(const Runs& r) {
  Verdict v;
  v.pass = r.violations == 0;
  if (!r.first_violation.empty()) v.note << "first violation " << r.first_violation << "; ";
  v.note << r.runs << " traces checked, " << r.violations << " with violations";
  return v;
}

Verdict move_bound(const std::vector<ConfigFile>& corpus) {
  Verdict v;
  const BatchReport b = bench(corpus, kSchedulers);
  std::size_t line_bad = 0;
  for (std::size_t n = 2; n <= kLineMax; ++n) {
    const RunTrace t = run(line_configuration(n), {SchedulerKind::FSYNC, 0, 0, 0});
    if (t.outcome != Outcome::Gathered || t.total_moves != n * (n + 1) / 2) {
      if (line_bad++ == 0) v.note << "line n=" << n << " took " << t.total_moves << "; ";
    }
  }
  v.pass = b.max_ratio <= kMoveBound && b.failures.empty() && line_bad == 0;
  v.note << "max total_moves/(D*n) = " << b.max_ratio << " (C = " << kMoveBound << ") over " << b.rows.size()
         << " runs, " << b.failures.size() << " bench failures; line family n(n+1)/2 for n=2.." << kLineMax << ", "
         << line_bad << " mismatches";
  return v;
}

Verdict strings() {
  Verdict v;
  std::size_t configs = 0, mismatches = 0;
  for_each_small(3, 2, true, [&](const Configuration& c) {
    ++configs;
    for (const CornerString& s : corner_strings(c, mer(c), Labeler::Senary))
      if (s.symbols != oracle::naive_scan(c, mer(c), s.corner(), s.inner_vertical(), false)) ++mismatches;
    for (const CornerString& s : corner_strings(c, mer_f(c), Labeler::LambdaBinary))
      if (s.symbols != oracle::naive_scan(c, mer_f(c), s.corner(), s.inner_vertical(), true)) ++mismatches;
  });
  const Configuration key = examples::key_corner_example();
  const KeyCorner k = key_corner(key);
  const bool key_ok = k.corner == Node{0, 0} && k.repr.symbols == examples::kKeyCornerString;
  const Configuration lead = examples::leading_corner_example();
  const auto over_mer = maximal_reprs(lead, mer(lead), Labeler::LambdaBinary);
  const auto leading = leading_corners(lead);
  const bool lead_ok = over_mer.size() == 1 && over_mer[0].corner() == Node{0, 0} &&
                       over_mer[0].symbols == examples::kLeadingCornerString && leading.size() == 1 &&
                       leading[0].corner() == Node{0, 1};
  v.pass = mismatches == 0 && key_ok && lead_ok;
  v.note << configs << " configurations (<=3 robots with repeats, <=2 meeting nodes, 4x4), " << mismatches
         << " string mismatches; key corner example " << (key_ok ? "reproduced" : "differs")
         << "; leading corner example " << (lead_ok ? "reproduced" : "differs");
  return v;
}

Verdict local_weak() {
  Verdict v;
  std::mt19937_64 rng(707);
  std::size_t samples = 0, diverged = 0;
  while (samples < kFuzzSamples) {
    std::uniform_int_distribution<Coord> u(0, 8);
    std::vector<Node> robots;
    std::set<Node> ms;
    const std::size_t n = 2 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) robots.push_back({u(rng), u(rng)});
    while (ms.size() < 1 + rng() % 4) ms.insert({u(rng), u(rng)});
    const Configuration base(robots, {ms.begin(), ms.end()});
    if (is_final(base) || is_ungatherable(base)) continue;
    const auto pos = base.positions();
    const Node self = pos[rng() % pos.size()];
    std::vector<Node> heavy = base.robots();
    for (Node p : pos)
      if (p != self) heavy.insert(heavy.end(), rng() % 4, p);
    const Configuration other(heavy, base.meeting_nodes());
    ++samples;
    if (decide(Snapshot::of(base, self)).move_to != decide(Snapshot::of(other, self)).move_to)
      if (diverged++ == 0) v.note << "first divergence " << base << " self " << self << "; ";
  }
  v.pass = diverged == 0;
  v.note << samples << " snapshot pairs, " << diverged << " divergent decisions";
  return v;
}

}  // namespace

int main() {
  bool all = true;
  auto record = [&](int k, const std::string& title, const Verdict& v) {
    report(k, title, v);
    all = all && v.pass;
  };
  record(1, "taxonomy soundness", taxonomy());
  record(2, "impossibility gate", impossibility());
  const std::vector<ConfigFile> corpus = gathering_corpus();
  const Runs runs = run_corpus(corpus);
  record(3, "gathering correctness", gathering(corpus, runs));
  record(4, "run invariants", invariants(runs));
  record(5, "move bound", move_bound(corpus));
  record(6, "string machinery", strings());
  record(7, "local-weak compliance", local_weak());
  return all ? 0 : 1;
}
