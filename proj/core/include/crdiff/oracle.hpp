// Exhaustive journey enumeration, used to verify JourneySolver on small
// networks. Exponential in the number of channels.
#pragma once

#include <string_view>
#include <vector>

#include "crdiff/journeys.hpp"
#include "crdiff/model.hpp"

namespace crdiff {

struct Journey {
  std::vector<ChannelIndex> channels;  // into network.channels()
  TimeStamp departure;                 // opens_at of the first channel
  TimeStamp arrival;                   // closes_at of the last channel

  int hops() const { return static_cast<int>(channels.size()); }
  Seconds duration() const { return arrival - departure; }
};

inline constexpr std::size_t kDefaultOracleChannelLimit = 12;

/// Every journey from `source` with at most `max_hops` channels, in
/// depth-first order. Throws ConfigError if max_hops < 1 or the network has
/// more than `channel_limit` channels, DataError for an unknown source.
std::vector<Journey> enumerate_journeys_oracle(const CommunicationNetwork& network, std::string_view source,
                                               int max_hops, std::size_t channel_limit = kDefaultOracleChannelLimit);

/// Reduces enumerated journeys to per-target minima (hops, duration, arrival).
SourceResult journey_minima(const CommunicationNetwork& network, std::string_view source,
                            const std::vector<Journey>& journeys);

}  // namespace crdiff
