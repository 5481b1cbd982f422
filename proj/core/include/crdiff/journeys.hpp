// Minimal time-respecting journeys in a communication network.
//
// A journey is a sequence of channels e1..ek where consecutive channels share
// a participant and close times strictly increase. For a source u and every
// other participant v the engine reports
//   - the fewest channels (hops) of any journey u -> v,
//   - the shortest duration closes(ek) - opens(e1) of any journey u -> v,
//   - the earliest arrival closes(ek) of any journey u -> v.
// The three minima are generally attained by different journeys.
#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "crdiff/model.hpp"

namespace crdiff {

struct ReachLabel {
  int hops = 0;
  Seconds duration = 0;
  TimeStamp foremost_arrival;

  friend bool operator==(const ReachLabel&, const ReachLabel&) = default;
};

struct ReachEntry {
  ParticipantId target;
  ReachLabel label;

  friend bool operator==(const ReachEntry&, const ReachEntry&) = default;
};

struct SourceResult {
  ParticipantId source;
  std::vector<ReachEntry> reach;  // sorted by target, never contains source

  const ReachLabel* find(std::string_view target) const;

  friend bool operator==(const SourceResult&, const SourceResult&) = default;
};

/// The set of participants reachable from the result's source.
std::set<ParticipantId> horizon(const SourceResult& result);

/// Reusable per-thread solver; holds scratch buffers sized to the network.
class JourneySolver {
 public:
  explicit JourneySolver(const CommunicationNetwork& network);

  SourceResult solve(VertexIndex source);

 private:
  static constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kAlways = std::numeric_limits<std::int64_t>::min();

  void min_hops_and_foremost(VertexIndex source);
  void fastest(VertexIndex source);

  const CommunicationNetwork& net_;
  std::vector<std::size_t> first_later_;  // per channel: position in by_close() of the first strictly later close

  std::vector<std::int64_t> arrival_;  // earliest arrival, all hops
  std::vector<int> hops_;
  std::vector<Seconds> duration_;

  std::vector<std::int64_t> pending_;
  std::vector<char> fired_;
  std::vector<VertexIndex> frontier_;
  std::vector<VertexIndex> touched_;

  std::vector<std::int64_t> scan_arrival_;
  std::vector<VertexIndex> scan_touched_;
};

/// Throws DataError naming the id if source is not a vertex of the network.
SourceResult single_source(const CommunicationNetwork& network, std::string_view source);

/// One result per requested source (default: every vertex), sorted by source
/// id. Work is spread over `jobs` threads; output does not depend on `jobs`.
std::vector<SourceResult> all_pairs(const CommunicationNetwork& network,
                                    const std::optional<std::vector<ParticipantId>>& sources = std::nullopt,
                                    unsigned jobs = 1);

// Reach dump: CSV `source,target,hops,duration_seconds,foremost_arrival`,
// rows sorted by (source, target). A source with an empty horizon is written
// as a single row with the remaining fields empty.

void write_reach_dump(std::ostream& out, std::span<const SourceResult> results);
/// Throws DataError naming the line on schema mismatch.
std::vector<SourceResult> read_reach_dump(std::istream& in);

}  // namespace crdiff
