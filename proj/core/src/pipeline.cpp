#include "crdiff/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "crdiff/journeys.hpp"
#include "crdiff/metrics.hpp"

namespace crdiff {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  return in;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out << content;
  if (out) out.flush();
  if (!out) throw std::filesystem::filesystem_error("cannot write", path, std::make_error_code(std::errc::io_error));
}

void validate(const RunConfig& config) {
  if (config.jobs < 1) throw ConfigError("--jobs must be at least 1");
  if (config.window && !(config.window->start < config.window->end)) {
    throw ConfigError("window start must be before window end");
  }
}

ChannelFile load_channels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_channels(in);
}

CommunicationNetwork network_from(ChannelFile file, std::optional<TimeWindow> window) {
  const auto w = window ? *window : file.window ? *file.window : covering_window(file.channels);
  return build_network(std::move(file.channels), w);
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile(values, 0.5);
}

}  // namespace

SourceSelection parse_source_selection(std::string_view text) {
  constexpr std::string_view kSample = "sample:";
  if (text.starts_with(kSample)) {
    const auto digits = text.substr(kSample.size());
    std::size_t count = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || count == 0) {
      throw ConfigError("--sources sample size must be a positive integer, got '" + std::string(digits) + "'");
    }
    return SourceSample{count};
  }
  std::vector<ParticipantId> ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!piece.empty()) ids.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (ids.empty()) throw ConfigError("--sources lists no participant ids");
  return ids;
}

std::vector<ParticipantId> sample_sources(const CommunicationNetwork& network, std::size_t count,
                                          std::uint64_t seed) {
  std::vector<ParticipantId> ids = network.vertices();
  if (count >= ids.size()) return ids;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + rng() % (ids.size() - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

IngestReport cmd_ingest(const std::filesystem::path& events_path, const RunConfig& config) {
  validate(config);
  if (!config.window) throw ConfigError("ingest needs --window-start and --window-end");
  if (config.salt.empty()) throw ConfigError("ingest needs a non-empty --salt");

  BotRuleSet rules;
  if (config.bot_rules_path) {
    auto in = open_input(*config.bot_rules_path);
    rules = BotRuleSet::parse(in);
  }
  auto in = open_input(events_path);
  auto parsed = parse_events(in);

  const auto before = parsed.events.size();
  auto humans = filter_humans(std::move(parsed.events), rules);
  const auto dropped_bot = before - humans.size();
  auto anonymous = anonymize(std::move(humans), config.salt);
  auto build = build_channels(anonymous, *config.window, ChannelBuildOptions{config.drop_singletons});

  auto& report = build.report;
  report.events_read = parsed.lines_read;
  report.events_dropped_bot = dropped_bot;
  report.events_dropped_unknown_type = parsed.dropped_unknown_type;

  std::ostringstream channels;
  write_channels(channels, build.channels, *config.window);
  std::ostringstream text;
  text << report;
  write_text(config.output_dir / kChannelsFile, channels.str());
  write_text(config.output_dir / kIngestReportFile, text.str());
  return report;
}

SimulateSummary cmd_simulate(const std::filesystem::path& channels_path, const RunConfig& config) {
  validate(config);
  const auto network = network_from(load_channels(channels_path), config.window);

  std::optional<std::vector<ParticipantId>> sources;
  if (config.sources) {
    if (const auto* sample = std::get_if<SourceSample>(&*config.sources)) {
      sources = sample_sources(network, sample->count, config.seed);
    } else {
      sources = std::get<std::vector<ParticipantId>>(*config.sources);
    }
  }
  const auto results = all_pairs(network, sources, config.jobs);

  std::ostringstream dump;
  write_reach_dump(dump, results);
  write_text(config.output_dir / kReachDumpFile, dump.str());

  SimulateSummary summary{network.vertex_count(), network.channel_count(), results.size(), 0};
  for (const auto& r : results) summary.reachable_pairs += r.reach.size();
  return summary;
}

ReportSummary cmd_report(const std::filesystem::path& reach_path, const std::filesystem::path& channels_path,
                         const std::filesystem::path& output_dir, std::optional<TimeWindow> window) {
  std::vector<SourceResult> results;
  {
    auto in = open_input(reach_path);
    results = read_reach_dump(in);
  }
  const auto network = network_from(load_channels(channels_path), window);
  for (const auto& r : results) {
    if (!network.contains_vertex(r.source)) {
      throw DataError("reach dump source '" + r.source + "' is not a participant of the channel file");
    }
    for (const auto& e : r.reach) {
      if (!network.contains_vertex(e.target)) {
        throw DataError("reach dump target '" + e.target + "' is not a participant of the channel file");
      }
    }
  }

  write_reports(results, network.channels(), network, output_dir);

  ReportSummary summary;
  summary.vertices = network.vertex_count();
  summary.channels = network.channel_count();
  summary.sources = results.size();
  const auto distances = distance_distributions(results);
  summary.reachable_pairs = distances.topological.size();
  if (!distances.topological.empty()) {
    summary.median_hops = median(std::vector<double>(distances.topological.begin(), distances.topological.end()));
    summary.median_hours = median(distances.temporal_hours);
  }
  if (network.vertex_count() > 0 && !results.empty()) {
    const auto normalized = normalized_ranges(results, network.vertex_count());
    double best = 0.0;
    for (const auto& [id, value] : normalized) best = std::max(best, value);
    summary.max_normalized_range = best;
  }
  return summary;
}

void cmd_generate(const GeneratorParams& params, const std::filesystem::path& output_path) {
  const auto channels = generate_channels(params);
  std::ostringstream out;
  write_channels(out, channels, params.window);
  write_text(output_path, out.str());
}

RunSummary cmd_run(const std::filesystem::path& events_path, const RunConfig& config) {
  RunSummary summary;
  summary.ingest = cmd_ingest(events_path, config);
  const auto channels = config.output_dir / kChannelsFile;
  summary.simulate = cmd_simulate(channels, config);
  summary.report = cmd_report(config.output_dir / kReachDumpFile, channels, config.output_dir, config.window);
  return summary;
}

}  // namespace crdiff
