#include "crdiff/metrics.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "crdiff/csv.hpp"

namespace crdiff {

std::map<ParticipantId, std::int64_t> absolute_ranges(std::span<const SourceResult> results) {
  std::map<ParticipantId, std::int64_t> out;
  for (const auto& r : results) out[r.source] = static_cast<std::int64_t>(r.reach.size());
  return out;
}

std::map<ParticipantId, double> normalized_ranges(std::span<const SourceResult> results, std::size_t vertex_count) {
  if (vertex_count == 0) throw ConfigError("normalized ranges need at least one vertex");
  std::map<ParticipantId, double> out;
  for (const auto& r : results) {
    if (r.reach.size() + 1 > vertex_count) {
      throw DataError("horizon of '" + r.source + "' (" + std::to_string(r.reach.size()) +
                      ") exceeds vertex count " + std::to_string(vertex_count) + " - 1");
    }
    out[r.source] = static_cast<double>(r.reach.size()) / static_cast<double>(vertex_count);
  }
  return out;
}

EcdfSeries ecdf(std::span<const double> values) {
  if (values.empty()) throw ConfigError("ECDF of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  EcdfSeries series;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    series.push_back(EcdfPoint{sorted[i], static_cast<double>(i + 1) / n});
  }
  return series;
}

double quantile(std::span<const double> sorted_values, double q) {
  const auto n = sorted_values.size();
  const double h = static_cast<double>(n - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, n - 1);
  return sorted_values[lo] + (h - static_cast<double>(lo)) * (sorted_values[hi] - sorted_values[lo]);
}

std::vector<QuantileRange> quantile_ranges(std::span<const double> values, std::span<const double> qs) {
  if (values.empty()) throw ConfigError("quantiles of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<QuantileRange> rows;
  for (double q : qs) {
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("quantile level must lie in (0, 1), got " + csv::format_double(q));
    rows.push_back(QuantileRange{q, quantile(sorted, q), sorted.back()});
  }
  return rows;
}

DistanceDistributions distance_distributions(std::span<const SourceResult> results) {
  DistanceDistributions d;
  for (const auto& r : results) {
    for (const auto& e : r.reach) {
      d.topological.push_back(e.label.hops);
      d.temporal_hours.push_back(static_cast<double>(e.label.duration) / 3600.0);
    }
  }
  return d;
}

BoundsShares bounds_shares(std::span<const Channel> channels) {
  if (channels.empty()) throw ConfigError("boundedness shares of an empty channel set");
  BoundsShares shares;
  for (auto b : kAllBoundedness) shares[b] = 0.0;
  for (const auto& c : channels) shares[c.boundedness] += 1.0;
  for (auto& [kind, share] : shares) share /= static_cast<double>(channels.size());
  return shares;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out << content;
  if (out) out.flush();
  if (!out) {
    throw std::filesystem::filesystem_error("cannot write report", path, std::error_code(errno, std::generic_category()));
  }
}

template <class T>
std::string ecdf_csv(const std::vector<T>& values) {
  std::ostringstream out;
  out << "value,fraction\n";
  if (values.empty()) return out.str();
  std::vector<double> as_double(values.begin(), values.end());
  for (const auto& p : ecdf(as_double)) {
    out << csv::format_double(p.value) << ',' << csv::format_double(p.fraction) << '\n';
  }
  return out.str();
}

}  // namespace

void write_reports(std::span<const SourceResult> results, std::span<const Channel> channels,
                   const CommunicationNetwork& network, const std::filesystem::path& output_dir) {
  std::filesystem::create_directories(output_dir);

  std::vector<const SourceResult*> sorted;
  for (const auto& r : results) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->source < b->source; });

  const auto absolute = absolute_ranges(results);
  std::map<ParticipantId, double> normalized;
  if (network.vertex_count() > 0) normalized = normalized_ranges(results, network.vertex_count());

  std::ostringstream ranges;
  ranges << "participant,absolute_range,normalized_range\n";
  std::vector<double> absolute_values, normalized_values;
  for (const auto& [id, n] : absolute) {
    const double norm = normalized.at(id);
    ranges << csv::escape(id) << ',' << n << ',' << csv::format_double(norm) << '\n';
    absolute_values.push_back(static_cast<double>(n));
    normalized_values.push_back(norm);
  }
  write_file(output_dir / "ranges.csv", ranges.str());

  std::ostringstream topo, temporal;
  topo << "source,target,hops\n";
  temporal << "source,target,hours\n";
  for (const auto* r : sorted) {
    const auto source = csv::escape(r->source);
    for (const auto& e : r->reach) {
      const auto target = csv::escape(e.target);
      topo << source << ',' << target << ',' << e.label.hops << '\n';
      temporal << source << ',' << target << ',' << csv::format_fixed(static_cast<double>(e.label.duration) / 3600.0, 3)
               << '\n';
    }
  }
  write_file(output_dir / "topological_distances.csv", topo.str());
  write_file(output_dir / "temporal_distances.csv", temporal.str());

  std::ostringstream bounds;
  bounds << "boundedness,count,share\n";
  if (!channels.empty()) {
    std::map<Boundedness, std::size_t> counts;
    for (const auto& c : channels) ++counts[c.boundedness];
    for (const auto& [kind, share] : bounds_shares(channels)) {
      bounds << to_string(kind) << ',' << counts[kind] << ',' << csv::format_double(share) << '\n';
    }
  }
  write_file(output_dir / "bounds.csv", bounds.str());

  const auto distances = distance_distributions(results);
  write_file(output_dir / "ecdf_absolute_range.csv", ecdf_csv(absolute_values));
  write_file(output_dir / "ecdf_normalized_range.csv", ecdf_csv(normalized_values));
  write_file(output_dir / "ecdf_hops.csv", ecdf_csv(distances.topological));
  write_file(output_dir / "ecdf_hours.csv", ecdf_csv(distances.temporal_hours));

  std::ostringstream quantiles;
  quantiles << "metric,q,lower,upper\n";
  auto table = [&](std::string_view metric, const std::vector<double>& values) {
    if (values.empty()) return;
    for (const auto& row : quantile_ranges(values)) {
      quantiles << metric << ',' << csv::format_double(row.q) << ',' << csv::format_double(row.lower) << ','
                << csv::format_double(row.upper) << '\n';
    }
  };
  table("absolute_range", absolute_values);
  table("normalized_range", normalized_values);
  write_file(output_dir / "quantiles.csv", quantiles.str());
}

}  // namespace crdiff
