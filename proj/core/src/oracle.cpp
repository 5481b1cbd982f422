#include "crdiff/oracle.hpp"

#include <algorithm>
#include <map>

namespace crdiff {

namespace {

bool share_participant(const Channel& a, const Channel& b) {
  // participant lists are sorted
  auto i = a.participants.begin();
  auto j = b.participants.begin();
  while (i != a.participants.end() && j != b.participants.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool has_participant(const Channel& c, std::string_view id) {
  return std::find(c.participants.begin(), c.participants.end(), id) != c.participants.end();
}

class Enumerator {
 public:
  Enumerator(const CommunicationNetwork& net, int max_hops) : net_(net), max_hops_(max_hops) {}

  std::vector<Journey> run(std::string_view source) {
    const auto& channels = net_.channels();
    for (ChannelIndex c = 0; c < channels.size(); ++c) {
      if (!has_participant(channels[c], source)) continue;
      path_.assign(1, c);
      extend();
    }
    return std::move(out_);
  }

 private:
  void extend() {
    const auto& channels = net_.channels();
    const Channel& first = channels[path_.front()];
    const Channel& last = channels[path_.back()];
    out_.push_back(Journey{path_, first.opens_at, last.closes_at});
    if (static_cast<int>(path_.size()) >= max_hops_) return;
    for (ChannelIndex c = 0; c < channels.size(); ++c) {
      const Channel& next = channels[c];
      if (next.closes_at <= last.closes_at || !share_participant(last, next)) continue;
      path_.push_back(c);
      extend();
      path_.pop_back();
    }
  }

  const CommunicationNetwork& net_;
  int max_hops_;
  std::vector<ChannelIndex> path_;
  std::vector<Journey> out_;
};

}  // namespace

std::vector<Journey> enumerate_journeys_oracle(const CommunicationNetwork& network, std::string_view source,
                                               int max_hops, std::size_t channel_limit) {
  if (max_hops < 1) throw ConfigError("oracle max_hops must be at least 1");
  if (network.channel_count() > channel_limit) {
    throw ConfigError("oracle refuses networks with more than " + std::to_string(channel_limit) + " channels (got " +
                      std::to_string(network.channel_count()) + ")");
  }
  if (!network.contains_vertex(source)) throw DataError("unknown source participant '" + std::string(source) + "'");
  return Enumerator(network, max_hops).run(source);
}

SourceResult journey_minima(const CommunicationNetwork& network, std::string_view source,
                            const std::vector<Journey>& journeys) {
  std::map<ParticipantId, ReachLabel> best;
  for (const auto& j : journeys) {
    for (const auto& v : network.channels()[j.channels.back()].participants) {
      if (v == source) continue;
      auto [it, inserted] = best.try_emplace(v, ReachLabel{j.hops(), j.duration(), j.arrival});
      if (inserted) continue;
      auto& label = it->second;
      label.hops = std::min(label.hops, j.hops());
      label.duration = std::min(label.duration, j.duration());
      label.foremost_arrival = std::min(label.foremost_arrival, j.arrival);
    }
  }
  SourceResult result{std::string(source), {}};
  for (auto& [target, label] : best) result.reach.push_back(ReachEntry{target, label});
  return result;
}

}  // namespace crdiff
