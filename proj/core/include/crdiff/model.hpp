// Time-varying hypergraph model of code review communication.
//
// A network is H = (V, E, rho, xi, psi) over a window T: participants are
// vertices, review discussions are interval-stamped hyperedges ("channels").
// Information injected into an active channel reaches every participant of
// that channel when it closes.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crdiff/error.hpp"

namespace crdiff {

/// Duration in whole seconds.
using Seconds = std::int64_t;

/// Integer seconds since the Unix epoch, UTC.
struct TimeStamp {
  std::int64_t seconds = 0;

  friend constexpr auto operator<=>(TimeStamp, TimeStamp) = default;
  friend constexpr Seconds operator-(TimeStamp a, TimeStamp b) { return a.seconds - b.seconds; }
  friend constexpr TimeStamp operator+(TimeStamp a, Seconds d) { return TimeStamp{a.seconds + d}; }
};

/// Closed observation window [start, end]; start < end.
struct TimeWindow {
  TimeStamp start;
  TimeStamp end;

  static TimeWindow make(TimeStamp start, TimeStamp end);
  bool contains(TimeStamp t) const { return start <= t && t <= end; }
  Seconds length() const { return end - start; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

using ParticipantId = std::string;

enum class Boundedness { bounded, left_bounded, right_bounded, unbounded };

inline constexpr Boundedness kAllBoundedness[] = {Boundedness::bounded, Boundedness::left_bounded,
                                                  Boundedness::right_bounded, Boundedness::unbounded};

std::string_view to_string(Boundedness b);
/// Throws DataError on an unknown name.
Boundedness boundedness_from_string(std::string_view name);

struct Channel {
  std::string id;
  std::vector<ParticipantId> participants;  // sorted, unique
  TimeStamp opens_at;
  TimeStamp closes_at;
  Boundedness boundedness = Boundedness::bounded;

  friend bool operator==(const Channel&, const Channel&) = default;
};

/// Sorts and deduplicates the participant list in place.
void normalize_participants(Channel& channel);

/// Presence function: true iff opens_at <= t <= closes_at.
constexpr bool is_active(const Channel& channel, TimeStamp t) {
  return channel.opens_at <= t && t <= channel.closes_at;
}

/// Latency function: closes_at - opens_at.
constexpr Seconds latency(const Channel& channel) { return channel.closes_at - channel.opens_at; }

using VertexIndex = std::uint32_t;
using ChannelIndex = std::uint32_t;

/// Immutable time-varying hypergraph.
///
/// Vertices are kept sorted by id and channels sorted by id, so indices are
/// stable for a given input. Safe to share read-only between threads.
class CommunicationNetwork {
 public:
  CommunicationNetwork() = default;

  const std::vector<ParticipantId>& vertices() const { return vertices_; }
  const std::vector<Channel>& channels() const { return channels_; }
  const TimeWindow& window() const { return window_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t channel_count() const { return channels_.size(); }

  /// Vertex presence: every participant is available throughout the window.
  static constexpr bool vertex_presence(VertexIndex, TimeStamp) { return true; }

  /// Index of a participant, or -1 if absent.
  std::int64_t find_vertex(std::string_view id) const;
  bool contains_vertex(std::string_view id) const { return find_vertex(id) >= 0; }

  /// Participants of a channel as vertex indices, ascending.
  std::span<const VertexIndex> members(ChannelIndex c) const {
    return {member_index_.data() + member_offset_[c], member_index_.data() + member_offset_[c + 1]};
  }
  /// Channels incident to a vertex, ordered by (closes_at, id).
  std::span<const ChannelIndex> incident(VertexIndex v) const {
    return {incident_index_.data() + incident_offset_[v], incident_index_.data() + incident_offset_[v + 1]};
  }
  /// All channels ordered by (closes_at, id).
  std::span<const ChannelIndex> by_close() const { return by_close_; }

  /// Total number of (participant, channel) incidences.
  std::size_t incidence_count() const { return member_index_.size(); }

  friend CommunicationNetwork build_network(std::vector<Channel> channels, TimeWindow window);

 private:
  std::vector<ParticipantId> vertices_;
  std::vector<Channel> channels_;
  TimeWindow window_{};
  std::vector<std::size_t> member_offset_{0};
  std::vector<VertexIndex> member_index_;
  std::vector<std::size_t> incident_offset_{0};
  std::vector<ChannelIndex> incident_index_;
  std::vector<ChannelIndex> by_close_;
};

/// Clamps channels to the window, drops those lying entirely outside it, and
/// indexes participants. Throws DataError on duplicate ids, empty participant
/// sets or opens_at > closes_at.
CommunicationNetwork build_network(std::vector<Channel> channels, TimeWindow window);

/// Bipartite equivalent: left nodes are vertices, right nodes are channels.
struct BipartiteGraph {
  std::vector<ParticipantId> left;
  std::vector<Channel> right;  // carries the interval attributes
  std::vector<std::pair<VertexIndex, ChannelIndex>> incidences;  // sorted
};

BipartiteGraph to_bipartite(const CommunicationNetwork& network);

// Channel file: JSON Lines, a header record followed by one channel per line.

struct ChannelFile {
  std::optional<TimeWindow> window;
  std::vector<Channel> channels;
};

void write_channels(std::ostream& out, std::span<const Channel> channels, std::optional<TimeWindow> window);
/// Throws DataError with the line number on malformed input.
ChannelFile read_channels(std::istream& in);

/// Smallest valid window covering all channels; [0, 1] when there are none.
TimeWindow covering_window(std::span<const Channel> channels);

}  // namespace crdiff
