#pragma once

#include <cstdint>
#include <vector>

#include "crdiff/model.hpp"

namespace crdiff {

struct GeneratorParams {
  std::size_t vertices = 100;
  std::size_t channels = 300;
  std::uint64_t seed = 42;
  TimeWindow window{TimeStamp{0}, TimeStamp{28 * 86400}};
  double mean_channel_size = 3.0;
  double mean_duration = 2.0 * 86400;  // seconds

  /// Throws ConfigError for infeasible parameters.
  void validate() const;
};

/// Seeded random channels: sizes are 2 + geometric around the mean (capped
/// at the vertex count), participants uniform without replacement, opening
/// times uniform in the window, durations exponential and cut at the window
/// end (such channels are marked left-bounded). Identical output for
/// identical parameters on every platform.
std::vector<Channel> generate_channels(const GeneratorParams& params);

}  // namespace crdiff
