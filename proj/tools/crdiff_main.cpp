// crdiff: code review information diffusion pipeline.
//
//   crdiff ingest events.jsonl --window-start 2024-03-04 --window-end 2024-03-31T23:59:59Z --salt s --out out/
//   crdiff simulate out/channels.jsonl --jobs 8 --out out/
//   crdiff report out/reach.csv out/channels.jsonl --out out/
//   crdiff run events.jsonl ... --out out/
//   crdiff generate --vertices 1800 --channels 10000 --seed 7 --out synthetic.jsonl

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "crdiff/pipeline.hpp"
#include "crdiff/time.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

struct WindowFlags {
  std::string start;
  std::string end;

  std::optional<crdiff::TimeWindow> resolve(bool required) const {
    if (start.empty() && end.empty()) {
      if (required) throw crdiff::ConfigError("--window-start and --window-end are required");
      return std::nullopt;
    }
    if (start.empty() || end.empty()) throw crdiff::ConfigError("--window-start and --window-end go together");
    crdiff::TimeStamp s, e;
    try {
      s = crdiff::parse_timestamp(start);
      e = crdiff::parse_timestamp(end);
    } catch (const crdiff::DataError& err) {
      throw crdiff::ConfigError(err.what());
    }
    return crdiff::TimeWindow::make(s, e);
  }
};

void add_window(CLI::App* cmd, WindowFlags& w) {
  cmd->add_option("--window-start", w.start, "Window start (ISO-8601 UTC or epoch seconds)");
  cmd->add_option("--window-end", w.end, "Window end, inclusive (ISO-8601 UTC or epoch seconds)");
}

void print_report(const crdiff::ReportSummary& s) {
  std::cout << "vertices: " << s.vertices << "\nchannels: " << s.channels << "\nsources: " << s.sources
            << "\nreachable pairs: " << s.reachable_pairs << '\n';
  if (s.median_hops) std::cout << "median hops: " << *s.median_hops << '\n';
  if (s.median_hours) std::cout << "median hours: " << *s.median_hours << '\n';
  if (s.max_normalized_range) std::cout << "max normalized range: " << *s.max_normalized_range << '\n';
}

void print_simulate(const crdiff::SimulateSummary& s) {
  std::cout << "simulated " << s.sources << " sources over " << s.vertices << " vertices and " << s.channels
            << " channels; " << s.reachable_pairs << " reachable pairs\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper-bound information diffusion in code review communication networks"};
  app.require_subcommand(1);

  WindowFlags window;
  std::string salt, bots, sources, out = ".";
  unsigned jobs = 1;
  std::uint64_t seed = 42;
  bool drop_singletons = false;
  std::string input, second_input;

  auto* ingest = app.add_subcommand("ingest", "Turn a review event log into a channel file");
  ingest->add_option("events", input, "Event log (JSON Lines)")->required();
  add_window(ingest, window);
  ingest->add_option("--salt", salt, "Anonymization key");
  ingest->add_option("--bots", bots, "Bot rule file");
  ingest->add_flag("--drop-singletons", drop_singletons, "Drop channels with a single participant");
  ingest->add_option("--out", out, "Output directory");

  auto* simulate = app.add_subcommand("simulate", "Compute horizons and minimal journeys");
  simulate->add_option("channels", input, "Channel file")->required();
  add_window(simulate, window);
  simulate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--sources", sources, "sample:N or comma-separated participant ids");
  simulate->add_option("--seed", seed, "Seed for source sampling");
  simulate->add_option("--out", out, "Output directory");

  auto* report = app.add_subcommand("report", "Write range, distance and boundedness CSVs");
  report->add_option("reach", input, "Reach dump from simulate")->required();
  report->add_option("channels", second_input, "Channel file")->required();
  add_window(report, window);
  report->add_option("--out", out, "Output directory");

  auto* run = app.add_subcommand("run", "ingest, simulate and report in one go");
  run->add_option("events", input, "Event log (JSON Lines)")->required();
  add_window(run, window);
  run->add_option("--salt", salt, "Anonymization key");
  run->add_option("--bots", bots, "Bot rule file");
  run->add_flag("--drop-singletons", drop_singletons, "Drop channels with a single participant");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--sources", sources, "sample:N or comma-separated participant ids");
  run->add_option("--seed", seed, "Seed for source sampling");
  run->add_option("--out", out, "Output directory");

  crdiff::GeneratorParams gen;
  double mean_duration_hours = gen.mean_duration / 3600.0;
  std::string gen_out = "synthetic.jsonl";
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic channel file");
  generate->add_option("--vertices", gen.vertices, "Number of participants");
  generate->add_option("--channels", gen.channels, "Number of channels");
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--mean-size", gen.mean_channel_size, "Mean participants per channel (>= 2)");
  generate->add_option("--mean-duration", mean_duration_hours, "Mean channel duration in hours");
  add_window(generate, window);
  generate->add_option("--out", gen_out, "Output channel file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    crdiff::RunConfig config;
    config.salt = salt;
    if (!bots.empty()) config.bot_rules_path = bots;
    config.jobs = jobs;
    config.seed = seed;
    config.output_dir = out;
    config.drop_singletons = drop_singletons;
    if (!sources.empty()) config.sources = crdiff::parse_source_selection(sources);

    if (ingest->parsed()) {
      config.window = window.resolve(true);
      std::cout << crdiff::cmd_ingest(input, config);
    } else if (simulate->parsed()) {
      config.window = window.resolve(false);
      print_simulate(crdiff::cmd_simulate(input, config));
    } else if (report->parsed()) {
      print_report(crdiff::cmd_report(input, second_input, out, window.resolve(false)));
    } else if (run->parsed()) {
      config.window = window.resolve(true);
      const auto summary = crdiff::cmd_run(input, config);
      std::cout << summary.ingest;
      print_simulate(summary.simulate);
      print_report(summary.report);
    } else if (generate->parsed()) {
      gen.seed = seed;
      gen.mean_duration = mean_duration_hours * 3600.0;
      if (auto w = window.resolve(false)) gen.window = *w;
      crdiff::cmd_generate(gen, gen_out);
      std::cout << "wrote " << gen.channels << " channels to " << gen_out << '\n';
    }
  } catch (const crdiff::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const crdiff::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
