// Diffusion measurements aggregated from per-source results.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "crdiff/journeys.hpp"
#include "crdiff/model.hpp"

namespace crdiff {

/// Horizon size per source.
std::map<ParticipantId, std::int64_t> absolute_ranges(std::span<const SourceResult> results);

/// Horizon size per source divided by |V|. Throws ConfigError if vertex_count
/// is 0, DataError if a horizon does not fit into vertex_count - 1.
std::map<ParticipantId, double> normalized_ranges(std::span<const SourceResult> results, std::size_t vertex_count);

struct EcdfPoint {
  double value;
  double fraction;
};

/// One point per distinct value, ascending; fraction = share of values <= x.
using EcdfSeries = std::vector<EcdfPoint>;

/// Throws ConfigError on empty input.
EcdfSeries ecdf(std::span<const double> values);

inline constexpr std::array<double, 4> kDefaultQuantiles = {0.3, 0.5, 0.7, 0.9};

struct QuantileRange {
  double q;
  double lower;  // Q(q)
  double upper;  // max
};

/// Quantile with linear interpolation between closest ranks: h = (n-1)q,
/// Q = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
double quantile(std::span<const double> sorted_values, double q);

/// (Q(q), max) for each q. Throws ConfigError on empty input or q outside (0,1).
std::vector<QuantileRange> quantile_ranges(std::span<const double> values,
                                           std::span<const double> qs = kDefaultQuantiles);

struct DistanceDistributions {
  std::vector<std::int64_t> topological;  // hops per reachable ordered pair
  std::vector<double> temporal_hours;     // duration / 3600 per reachable ordered pair
};

DistanceDistributions distance_distributions(std::span<const SourceResult> results);

using BoundsShares = std::map<Boundedness, double>;

/// Share of channels per boundedness kind; all four kinds present. Throws
/// ConfigError on empty input.
BoundsShares bounds_shares(std::span<const Channel> channels);

/// Writes ranges.csv, topological_distances.csv, temporal_distances.csv,
/// bounds.csv, the ecdf_<metric>.csv files and quantiles.csv into
/// output_dir. Throws std::filesystem::filesystem_error naming the path on
/// I/O failure.
void write_reports(std::span<const SourceResult> results, std::span<const Channel> channels,
                   const CommunicationNetwork& network, const std::filesystem::path& output_dir);

}  // namespace crdiff
