#include "crdiff/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace crdiff {

namespace {

// std distributions are implementation-defined; these are not.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double exponential(double mean) { return -mean * std::log1p(-unit()); }
  /// Failures before the first success, success probability p.
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 0;
    return static_cast<std::uint64_t>(std::floor(std::log1p(-unit()) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 rng_;
};

std::string padded(char prefix, std::size_t value, std::size_t width) {
  auto digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

}  // namespace

void GeneratorParams::validate() const {
  if (vertices < 1) throw ConfigError("generator needs at least one vertex");
  if (!(window.start < window.end)) throw ConfigError("generator window must satisfy start < end");
  if (channels == 0) return;
  if (vertices < 2) throw ConfigError("channels need at least two participants but only one vertex exists");
  if (!(mean_channel_size >= 2.0)) throw ConfigError("mean channel size must be at least 2");
  if (mean_channel_size > static_cast<double>(vertices)) {
    throw ConfigError("mean channel size " + std::to_string(mean_channel_size) + " exceeds vertex count " +
                      std::to_string(vertices));
  }
  if (!(mean_duration >= 0.0)) throw ConfigError("mean duration must be non-negative");
}

std::vector<Channel> generate_channels(const GeneratorParams& params) {
  params.validate();
  Draw draw(params.seed);

  const auto vertex_width = std::to_string(params.vertices - 1).size();
  const auto channel_width = std::to_string(params.channels == 0 ? 0 : params.channels - 1).size();
  std::vector<std::size_t> pool(params.vertices);
  std::iota(pool.begin(), pool.end(), 0);

  const double success = 1.0 / (params.mean_channel_size - 1.0);
  const auto span = static_cast<std::uint64_t>(params.window.length());

  std::vector<Channel> out;
  out.reserve(params.channels);
  for (std::size_t i = 0; i < params.channels; ++i) {
    const auto size = std::min<std::uint64_t>(2 + draw.geometric(success), params.vertices);

    Channel c;
    c.id = padded('c', i, channel_width);
    for (std::size_t k = 0; k < size; ++k) {
      const auto j = k + draw.below(params.vertices - k);
      std::swap(pool[k], pool[j]);
      c.participants.push_back(padded('p', pool[k], vertex_width));
    }
    std::sort(c.participants.begin(), c.participants.end());

    c.opens_at = params.window.start + static_cast<Seconds>(draw.below(span + 1));
    const auto duration = static_cast<Seconds>(std::llround(draw.exponential(params.mean_duration)));
    if (duration > params.window.end - c.opens_at) {
      c.closes_at = params.window.end;
      c.boundedness = Boundedness::left_bounded;
    } else {
      c.closes_at = c.opens_at + duration;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace crdiff
