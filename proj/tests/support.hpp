// Shared fixtures for the unit and acceptance suites.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crdiff/journeys.hpp"
#include "crdiff/model.hpp"
#include "crdiff/oracle.hpp"

namespace crdiff::testing {

inline Channel channel(std::string id, std::vector<std::string> participants, std::int64_t opens, std::int64_t closes,
                       Boundedness b = Boundedness::bounded) {
  Channel c{std::move(id), std::move(participants), TimeStamp{opens}, TimeStamp{closes}, b};
  normalize_participants(c);
  return c;
}

inline TimeWindow window(std::int64_t start, std::int64_t end) { return TimeWindow{TimeStamp{start}, TimeStamp{end}}; }

/// The six-vertex, four-hyperedge example: e1={v1,v2,v3}, e2={v2,v4},
/// e3={v3,v5,v6}, e4={v4,v5,v6}. `close` gives the close time of e1..e4;
/// every channel is one tick wide.
inline std::vector<Channel> example_channels(std::int64_t c1, std::int64_t c2, std::int64_t c3, std::int64_t c4) {
  return {channel("e1", {"v1", "v2", "v3"}, c1 - 1, c1), channel("e2", {"v2", "v4"}, c2 - 1, c2),
          channel("e3", {"v3", "v5", "v6"}, c3 - 1, c3), channel("e4", {"v4", "v5", "v6"}, c4 - 1, c4)};
}

/// Close-time ordering e1 < e2 < e4 < e3.
inline std::vector<Channel> example_favorable() { return example_channels(1, 2, 4, 3); }

struct RandomNetworkShape {
  int max_vertices = 7;
  int max_channels = 8;
  int max_channel_size = 4;
  std::int64_t horizon = 100;
};

/// Random channels over vertices "a".."g" with closed intervals in
/// [0, shape.horizon].
inline std::vector<Channel> random_channels(std::mt19937_64& rng, const RandomNetworkShape& shape = {}) {
  auto pick = [&](int lo, int hi) { return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const int n_vertices = pick(1, shape.max_vertices);
  const int n_channels = pick(0, shape.max_channels);
  std::vector<Channel> out;
  for (int i = 0; i < n_channels; ++i) {
    const int size = pick(1, std::min(shape.max_channel_size, n_vertices));
    std::vector<std::string> members;
    for (int k = 0; k < size; ++k) members.push_back(std::string(1, static_cast<char>('a' + pick(0, n_vertices - 1))));
    const auto t1 = pick(0, static_cast<int>(shape.horizon));
    const auto t2 = pick(0, static_cast<int>(shape.horizon));
    out.push_back(channel("x" + std::to_string(i), members, std::min(t1, t2), std::max(t1, t2)));
  }
  return out;
}

/// Ground truth for `source` from exhaustive enumeration.
inline SourceResult oracle_result(const CommunicationNetwork& net, const std::string& source) {
  const int max_hops = std::max<int>(1, static_cast<int>(net.channel_count()));
  return journey_minima(net, source, enumerate_journeys_oracle(net, source, max_hops));
}

}  // namespace crdiff::testing
