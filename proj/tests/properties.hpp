// Property checks over seeded random networks. Each returns an empty string
// on success or a description of the first counterexample.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "crdiff/journeys.hpp"
#include "crdiff/metrics.hpp"
#include "support.hpp"

namespace crdiff::testing {

inline std::string describe(int case_no, std::string_view what) {
  std::ostringstream out;
  out << "case " << case_no << ": " << what;
  return out.str();
}

inline std::map<ParticipantId, SourceResult> by_source(const std::vector<SourceResult>& results) {
  std::map<ParticipantId, SourceResult> out;
  for (const auto& r : results) out[r.source] = r;
  return out;
}

inline std::string check_oracle_equivalence(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto net = build_network(random_channels(rng), window(0, 100));
    for (const auto& source : net.vertices()) {
      if (single_source(net, source) != oracle_result(net, source)) return describe(i, "mismatch for " + source);
    }
  }
  return {};
}

/// Adding a channel never shrinks a horizon and never delays a foremost
/// arrival (nor increases hops or durations).
inline std::string check_monotonicity(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    auto channels = random_channels(rng);
    const auto before = by_source(all_pairs(build_network(channels, window(0, 100))));
    auto extra = random_channels(rng, RandomNetworkShape{7, 1, 4, 100});
    if (extra.empty()) extra = {channel("x", {"a", "b"}, 10, 20)};
    extra[0].id = "added";
    channels.push_back(extra[0]);
    const auto after = by_source(all_pairs(build_network(channels, window(0, 100))));
    for (const auto& [source, r] : before) {
      const auto& grown = after.at(source);
      for (const auto& e : r.reach) {
        const auto* label = grown.find(e.target);
        if (!label) return describe(i, "horizon of " + source + " lost " + e.target);
        if (label->foremost_arrival > e.label.foremost_arrival) return describe(i, "foremost arrival increased");
        if (label->hops > e.label.hops) return describe(i, "hops increased");
        if (label->duration > e.label.duration) return describe(i, "duration increased");
      }
    }
  }
  return {};
}

/// Shifting every timestamp by a constant keeps horizons, hops and
/// durations; foremost arrivals shift by the same constant.
inline std::string check_time_shift(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto channels = random_channels(rng);
    const std::int64_t offset = 1 + static_cast<std::int64_t>(rng() % 1'000'000'000);
    auto shifted = channels;
    for (auto& c : shifted) {
      c.opens_at = c.opens_at + offset;
      c.closes_at = c.closes_at + offset;
    }
    const auto a = all_pairs(build_network(channels, window(0, 100)));
    const auto b = all_pairs(build_network(shifted, window(offset, 100 + offset)));
    if (a.size() != b.size()) return describe(i, "vertex sets differ");
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (a[s].reach.size() != b[s].reach.size()) return describe(i, "horizon changed");
      for (std::size_t k = 0; k < a[s].reach.size(); ++k) {
        const auto& x = a[s].reach[k];
        const auto& y = b[s].reach[k];
        if (x.target != y.target || x.label.hops != y.label.hops || x.label.duration != y.label.duration ||
            x.label.foremost_arrival + offset != y.label.foremost_arrival) {
          return describe(i, "label changed under shift");
        }
      }
    }
  }
  return {};
}

/// Scaling every timestamp by a positive integer scales durations exactly
/// and keeps horizons and hops.
inline std::string check_time_scaling(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto channels = random_channels(rng);
    const std::int64_t factor = 1 + static_cast<std::int64_t>(rng() % 5000);
    auto scaled = channels;
    for (auto& c : scaled) {
      c.opens_at = TimeStamp{c.opens_at.seconds * factor};
      c.closes_at = TimeStamp{c.closes_at.seconds * factor};
    }
    const auto a = all_pairs(build_network(channels, window(0, 100)));
    const auto b = all_pairs(build_network(scaled, window(0, 100 * factor)));
    if (a.size() != b.size()) return describe(i, "vertex sets differ");
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (a[s].reach.size() != b[s].reach.size()) return describe(i, "horizon changed");
      for (std::size_t k = 0; k < a[s].reach.size(); ++k) {
        const auto& x = a[s].reach[k];
        const auto& y = b[s].reach[k];
        if (x.target != y.target || x.label.hops != y.label.hops || x.label.duration * factor != y.label.duration) {
          return describe(i, "label not scaled");
        }
      }
    }
  }
  return {};
}

/// Horizon from hop labels equals the union of per-first-channel fastest
/// scans; reported directly by the engine as one set, so here the check is
/// that every reachable target has a finite duration and a hop count.
inline std::string check_horizon_consistency(const std::vector<SourceResult>& results, Seconds window_length) {
  for (const auto& r : results) {
    for (const auto& e : r.reach) {
      if (e.label.hops < 1) return "target without hop label: " + e.target;
      if (e.label.duration < 0 || e.label.duration > window_length) return "duration out of range: " + e.target;
    }
  }
  return {};
}

inline std::string check_ecdf_monotone(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::vector<double> values(1 + rng() % 50);
    for (auto& v : values) v = static_cast<double>(rng() % 20) / 4.0;
    const auto series = ecdf(values);
    for (std::size_t k = 1; k < series.size(); ++k) {
      if (!(series[k - 1].value < series[k].value)) return describe(i, "values not strictly increasing");
      if (!(series[k - 1].fraction < series[k].fraction)) return describe(i, "fractions not strictly increasing");
    }
    if (series.back().fraction != 1.0) return describe(i, "last fraction is not 1");
    for (const auto& p : series) {
      const auto below = std::count_if(values.begin(), values.end(), [&](double v) { return v <= p.value; });
      if (p.fraction != static_cast<double>(below) / static_cast<double>(values.size())) {
        return describe(i, "fraction is not the share of values <= x");
      }
    }
  }
  return {};
}

inline std::string check_bounds_shares(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::vector<Channel> channels(1 + rng() % 200);
    for (auto& c : channels) c.boundedness = kAllBoundedness[rng() % 4];
    double total = 0.0;
    for (const auto& [kind, share] : bounds_shares(channels)) {
      if (share < 0.0 || share > 1.0) return describe(i, "share outside [0,1]");
      total += share;
    }
    if (std::abs(total - 1.0) > 1e-9) return describe(i, "shares do not sum to 1");
  }
  return {};
}

/// Renaming participants by a random bijection leaves every metric's
/// multiset of values unchanged.
inline std::string check_permutation_invariance(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto channels = random_channels(rng);
    std::vector<char> letters = {'a', 'b', 'c', 'd', 'e', 'f', 'g'};
    std::shuffle(letters.begin(), letters.end(), rng);
    auto renamed = channels;
    for (auto& c : renamed) {
      for (auto& p : c.participants) p = std::string("q") + letters[static_cast<std::size_t>(p[0] - 'a')];
      normalize_participants(c);
    }
    const auto net_a = build_network(channels, window(0, 100));
    const auto net_b = build_network(renamed, window(0, 100));
    const auto a = all_pairs(net_a);
    const auto b = all_pairs(net_b);

    auto values = [](const auto& map) {
      std::vector<double> v;
      for (const auto& [k, x] : map) v.push_back(static_cast<double>(x));
      std::sort(v.begin(), v.end());
      return v;
    };
    if (values(absolute_ranges(a)) != values(absolute_ranges(b))) return describe(i, "absolute ranges differ");
    if (net_a.vertex_count() > 0 &&
        values(normalized_ranges(a, net_a.vertex_count())) != values(normalized_ranges(b, net_b.vertex_count()))) {
      return describe(i, "normalized ranges differ");
    }
    auto da = distance_distributions(a);
    auto db = distance_distributions(b);
    std::sort(da.topological.begin(), da.topological.end());
    std::sort(db.topological.begin(), db.topological.end());
    std::sort(da.temporal_hours.begin(), da.temporal_hours.end());
    std::sort(db.temporal_hours.begin(), db.temporal_hours.end());
    if (da.topological != db.topological) return describe(i, "topological distances differ");
    if (da.temporal_hours != db.temporal_hours) return describe(i, "temporal distances differ");
    if (!net_a.channels().empty() && bounds_shares(net_a.channels()) != bounds_shares(net_b.channels())) {
      return describe(i, "bounds shares differ");
    }
  }
  return {};
}

}  // namespace crdiff::testing
