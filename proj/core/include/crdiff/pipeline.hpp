// End-to-end stages: ingest -> simulate -> report, plus the synthetic
// generator. Each stage validates its configuration and reads all inputs
// before it creates any output file.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crdiff/ingest.hpp"
#include "crdiff/model.hpp"
#include "crdiff/synthetic.hpp"

namespace crdiff {

/// Either a seeded random sample of N sources or an explicit id list.
struct SourceSample {
  std::size_t count = 0;
};
using SourceSelection = std::variant<SourceSample, std::vector<ParticipantId>>;

/// "sample:N" or a comma-separated id list. Throws ConfigError.
SourceSelection parse_source_selection(std::string_view text);

struct RunConfig {
  std::optional<TimeWindow> window;
  std::string salt;
  std::optional<std::filesystem::path> bot_rules_path;
  unsigned jobs = 1;
  std::optional<SourceSelection> sources;
  std::uint64_t seed = 42;
  std::filesystem::path output_dir = ".";
  bool drop_singletons = false;
};

// Output file names inside RunConfig::output_dir.
inline constexpr const char* kChannelsFile = "channels.jsonl";
inline constexpr const char* kIngestReportFile = "ingest_report.txt";
inline constexpr const char* kReachDumpFile = "reach.csv";

/// Sorted sample of `count` vertex ids drawn with `seed` (all of them if
/// count >= |V|).
std::vector<ParticipantId> sample_sources(const CommunicationNetwork& network, std::size_t count,
                                          std::uint64_t seed);

/// parse -> filter bots -> anonymize -> build channels. Writes channels.jsonl
/// and ingest_report.txt. Needs window and salt.
IngestReport cmd_ingest(const std::filesystem::path& events_path, const RunConfig& config);

struct SimulateSummary {
  std::size_t vertices = 0;
  std::size_t channels = 0;
  std::size_t sources = 0;
  std::size_t reachable_pairs = 0;
};

/// Builds the network (window from config, else the file header, else the
/// channels' extent) and writes reach.csv.
SimulateSummary cmd_simulate(const std::filesystem::path& channels_path, const RunConfig& config);

struct ReportSummary {
  std::size_t vertices = 0;
  std::size_t channels = 0;
  std::size_t sources = 0;
  std::size_t reachable_pairs = 0;
  std::optional<double> median_hops;
  std::optional<double> median_hours;
  std::optional<double> max_normalized_range;
};

ReportSummary cmd_report(const std::filesystem::path& reach_path, const std::filesystem::path& channels_path,
                         const std::filesystem::path& output_dir, std::optional<TimeWindow> window = std::nullopt);

/// Writes the generated channels as a channel file.
void cmd_generate(const GeneratorParams& params, const std::filesystem::path& output_path);

struct RunSummary {
  IngestReport ingest;
  SimulateSummary simulate;
  ReportSummary report;
};

/// All three stages into config.output_dir.
RunSummary cmd_run(const std::filesystem::path& events_path, const RunConfig& config);

}  // namespace crdiff
