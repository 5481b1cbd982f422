// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit if
// any criterion fails.
//
// Optional replication check: set CRDIFF_REPLICATION_CHANNELS to a channel
// file of a published open-source system and CRDIFF_REPLICATION_SYSTEM to
// one of android, vscode, react.

#include <sys/resource.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "crdiff/journeys.hpp"
#include "crdiff/metrics.hpp"
#include "crdiff/pipeline.hpp"
#include "crdiff/synthetic.hpp"
#include "crdiff/time.hpp"
#include "properties.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace crdiff;
using namespace crdiff::testing;

namespace {

enum class Outcome { pass, fail, skip };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

Verdict pass(std::string detail = {}) { return {Outcome::pass, std::move(detail)}; }
Verdict fail(std::string detail) { return {Outcome::fail, std::move(detail)}; }
Verdict skip(std::string detail) { return {Outcome::skip, std::move(detail)}; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

double peak_rss_mib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / 1024.0;  // KiB on Linux
}

Verdict worked_example() {
  const auto net = build_network(example_favorable(), window(0, 100));
  const auto got = horizon(single_source(net, "v1"));
  const std::set<ParticipantId> want = {"v2", "v3", "v4", "v5", "v6"};
  if (got != want) return fail("horizon(v1) has " + std::to_string(got.size()) + " vertices");
  return pass("horizon(v1) = {v2..v6}");
}

Verdict oracle_equivalence() {
  constexpr int kNetworks = 1000;
  const auto start = std::chrono::steady_clock::now();
  const auto problem = check_oracle_equivalence(20240304, kNetworks);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!problem.empty()) return fail(problem);
  if (seconds >= 60.0) return fail("took " + std::to_string(seconds) + " s (limit 60 s)");
  std::ostringstream d;
  d << kNetworks << " networks, " << seconds << " s";
  return pass(d.str());
}

Verdict property_suites() {
  constexpr int kCases = 200;
  const std::vector<std::pair<std::string, std::function<std::string()>>> suites = {
      {"monotonicity", [] { return check_monotonicity(101, kCases); }},
      {"time-shift", [] { return check_time_shift(102, kCases); }},
      {"time-scaling", [] { return check_time_scaling(103, kCases); }},
      {"ecdf", [] { return check_ecdf_monotone(104, kCases); }},
      {"bounds-shares", [] { return check_bounds_shares(105, kCases); }},
      {"permutation", [] { return check_permutation_invariance(106, kCases); }},
  };
  for (const auto& [name, run] : suites) {
    if (auto problem = run(); !problem.empty()) return fail(name + ": " + problem);
  }
  const auto net = build_network({channel("A", {"u", "w"}, 0, 10), channel("B", {"w", "v"}, 5, 20)}, window(0, 100));
  const bool forward = single_source(net, "u").find("v") != nullptr;
  const bool backward = single_source(net, "v").find("u") != nullptr;
  if (!forward || backward) return fail("asymmetry witness not reproduced");
  return pass("6 suites x " + std::to_string(kCases) + " cases + asymmetry witness");
}

Verdict determinism() {
  const auto root = fs::temp_directory_path() / "crdiff_acceptance_determinism";
  fs::remove_all(root);
  const fs::path events = fs::path(CRDIFF_FIXTURE_DIR) / "events_sample.jsonl";

  auto run_once = [&](const std::string& name, unsigned jobs) {
    RunConfig config;
    config.window = TimeWindow::make(parse_timestamp("2024-03-04"), parse_timestamp("2024-03-31T23:59:59Z"));
    config.salt = "acceptance";
    config.bot_rules_path = fs::path(CRDIFF_FIXTURE_DIR) / "bots.txt";
    config.jobs = jobs;
    config.output_dir = root / name;
    cmd_run(events, config);
    std::string all;
    for (const char* f : {"channels.jsonl", "reach.csv", "ranges.csv", "topological_distances.csv",
                          "temporal_distances.csv", "bounds.csv"}) {
      all += slurp(config.output_dir / f);
    }
    return all;
  };

  // A larger synthetic network exercises the worker pool.
  auto simulate_once = [&](const std::string& name, unsigned jobs) {
    GeneratorParams params;
    params.vertices = 300;
    params.channels = 1200;
    params.seed = 7;
    cmd_generate(params, root / (name + ".jsonl"));
    RunConfig config;
    config.jobs = jobs;
    config.output_dir = root / name;
    cmd_simulate(root / (name + ".jsonl"), config);
    cmd_report(config.output_dir / kReachDumpFile, root / (name + ".jsonl"), config.output_dir);
    std::string all;
    for (const char* f : {"reach.csv", "ranges.csv", "topological_distances.csv", "temporal_distances.csv",
                          "bounds.csv"}) {
      all += slurp(config.output_dir / f);
    }
    return all;
  };

  const auto a = run_once("run1", 1);
  const auto b = run_once("run2", 1);
  const auto c = run_once("run3", 1);
  const auto d = run_once("run8", 8);
  const auto s1 = simulate_once("syn1", 1);
  const auto s8 = simulate_once("syn8", 8);
  fs::remove_all(root);
  if (a.empty() || s1.empty()) return fail("no output produced");
  if (a != b || b != c) return fail("fixture outputs differ across runs");
  if (a != d) return fail("fixture outputs differ between 1 and 8 workers");
  if (s1 != s8) return fail("synthetic outputs differ between 1 and 8 workers");
  return pass("3 runs identical; jobs 1 == jobs 8 (fixture and 300x1200 synthetic)");
}

Verdict scale_check() {
  const auto root = fs::temp_directory_path() / "crdiff_acceptance_scale";
  fs::remove_all(root);
  GeneratorParams params;
  params.vertices = 1800;
  params.channels = 10000;
  params.seed = 2024;
  const auto channels_path = root / "android_scale.jsonl";

  const auto start = std::chrono::steady_clock::now();
  cmd_generate(params, channels_path);
  RunConfig config;
  config.jobs = std::max(1u, std::thread::hardware_concurrency());
  config.output_dir = root;
  const auto sim = cmd_simulate(channels_path, config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double rss = peak_rss_mib();

  std::ifstream dump_in(root / kReachDumpFile);
  const auto results = read_reach_dump(dump_in);
  std::ifstream channels_in(channels_path);
  auto file = read_channels(channels_in);
  const auto net = build_network(std::move(file.channels), *file.window);
  fs::remove_all(root);

  const auto d = distance_distributions(results);
  std::size_t horizon_total = 0;
  for (const auto& r : results) horizon_total += r.reach.size();

  std::ostringstream detail;
  detail << sim.vertices << " vertices, " << sim.channels << " channels, " << sim.reachable_pairs << " pairs, "
         << seconds << " s, peak RSS " << rss << " MiB, jobs " << config.jobs;
  if (seconds > 600.0) return fail("too slow: " + detail.str());
  if (rss > 4096.0) return fail("too much memory: " + detail.str());
  if (results.size() != net.vertex_count()) return fail("missing sources: " + detail.str());
  if (d.topological.empty() || d.temporal_hours.empty()) return fail("empty distance lists");
  if (d.topological.size() != d.temporal_hours.size() || d.topological.size() != horizon_total) {
    return fail("distance list lengths disagree");
  }
  if (auto problem = check_horizon_consistency(results, net.window().length()); !problem.empty()) {
    return fail(problem);
  }
  for (const auto& r : results) {
    for (const auto& e : r.reach) {
      if (static_cast<std::size_t>(e.label.hops) > net.channel_count() || e.target == r.source) {
        return fail("label out of bounds for " + r.source);
      }
      if (!net.window().contains(e.label.foremost_arrival)) return fail("arrival outside window for " + r.source);
    }
  }
  const auto normalized = normalized_ranges(results, net.vertex_count());
  for (const auto& [id, value] : normalized) {
    if (value < 0.0 || value > static_cast<double>(net.vertex_count() - 1) / static_cast<double>(net.vertex_count())) {
      return fail("normalized range out of bounds for " + id);
    }
  }
  double total = 0.0;
  for (const auto& [kind, share] : bounds_shares(net.channels())) total += share;
  if (std::abs(total - 1.0) > 1e-9) return fail("bounds shares do not sum to 1");
  return pass(detail.str());
}

Verdict replication_table() {
  const char* path = std::getenv("CRDIFF_REPLICATION_CHANNELS");
  const char* system = std::getenv("CRDIFF_REPLICATION_SYSTEM");
  if (!path || !system) return skip("replication dataset not supplied");

  // Normalized-range quantile rows (q = 0.3, 0.5, 0.7, 0.9; upper = max).
  const std::map<std::string, std::array<double, 5>> table = {
      {"react", {0.19, 0.39, 0.58, 0.64, 0.72}},
      {"vscode", {0.03, 0.45, 0.64, 0.69, 0.72}},
      {"android", {0.23, 0.53, 0.66, 0.74, 0.78}},
  };
  const auto row = table.find(system);
  if (row == table.end()) return fail(std::string("unknown system '") + system + "'");
  if (!fs::exists(path)) return skip(std::string("dataset path does not exist: ") + path);

  std::ifstream in(path);
  auto file = read_channels(in);
  const auto w = file.window ? *file.window : covering_window(file.channels);
  const auto net = build_network(std::move(file.channels), w);
  const auto results = all_pairs(net, std::nullopt, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<double> values;
  for (const auto& [id, v] : normalized_ranges(results, net.vertex_count())) values.push_back(v);
  const auto rows = quantile_ranges(values);

  std::ostringstream detail;
  bool ok = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    detail << "q" << rows[k].q << "=" << rows[k].lower << " ";
    ok = ok && std::abs(rows[k].lower - row->second[k]) <= 0.01;
  }
  detail << "max=" << rows[0].upper;
  ok = ok && std::abs(rows[0].upper - row->second[4]) <= 0.01;
  return ok ? pass(detail.str()) : fail(detail.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"worked example horizon", worked_example},
      {"oracle equivalence (1000 networks)", oracle_equivalence},
      {"property suites (>= 200 cases each)", property_suites},
      {"pipeline determinism", determinism},
      {"Android-scale simulate (1800 x 10000)", scale_check},
      {"replication quantile table (optional)", replication_table},
  };

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const char* tag = v.outcome == Outcome::pass ? "PASS" : v.outcome == Outcome::skip ? "SKIP" : "FAIL";
    if (v.outcome == Outcome::fail) ++failures;
    std::cout << tag << "  " << name;
    if (!v.detail.empty()) std::cout << "  (" << v.detail << ")";
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
