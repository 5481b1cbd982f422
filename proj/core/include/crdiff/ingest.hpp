// Review event logs -> anonymized, bot-free communication channels.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crdiff/model.hpp"

namespace crdiff {

enum class ActorKind { human, bot, unknown };
enum class EventType { create, comment, edit, approve, close, merge };

std::string_view to_string(ActorKind k);
std::string_view to_string(EventType t);

struct ReviewEvent {
  std::string review_id;
  std::string actor_id;
  ActorKind actor_kind = ActorKind::unknown;
  EventType event_type = EventType::comment;
  TimeStamp timestamp;
  std::optional<TimeStamp> review_created_at;
  std::optional<TimeStamp> review_closed_at;

  friend bool operator==(const ReviewEvent&, const ReviewEvent&) = default;
};

struct ParsedEvents {
  std::vector<ReviewEvent> events;
  std::uint64_t lines_read = 0;
  std::uint64_t dropped_unknown_type = 0;
};

/// One JSON object per line with the ReviewEvent fields; timestamps are epoch
/// seconds or ISO-8601 UTC strings. Blank lines are skipped. Records with an
/// event_type outside the supported set (reactions, labels, ...) are counted
/// and dropped. Throws DataError naming the line for malformed records.
ParsedEvents parse_events(std::istream& in);

/// Exact actor ids plus case-insensitive glob patterns ('*' and '?').
class BotRuleSet {
 public:
  BotRuleSet() = default;

  void add_exact(std::string id);
  /// Throws ConfigError on an empty pattern.
  void add_pattern(std::string pattern);

  /// Plain text, one entry per line; '#' starts a comment. Lines containing
  /// '*' or '?' are patterns, the rest exact ids.
  static BotRuleSet parse(std::istream& in);

  bool matches(std::string_view actor_id) const;
  bool empty() const { return exact_ids_.empty() && patterns_.empty(); }

 private:
  std::vector<std::string> exact_ids_;  // sorted
  std::vector<std::string> patterns_;   // lower-cased
};

/// Case-insensitive glob match supporting '*' and '?'.
bool glob_match(std::string_view pattern, std::string_view text);

/// Removes events by bots (actor_kind or rule match), keeping order.
std::vector<ReviewEvent> filter_humans(std::vector<ReviewEvent> events, const BotRuleSet& rules);

/// Hex HMAC-SHA256 of the actor id keyed by the salt.
std::string anonymize_id(std::string_view salt, std::string_view actor_id);

/// Replaces every actor_id with anonymize_id(salt, actor_id). Throws
/// ConfigError on an empty salt.
std::vector<ReviewEvent> anonymize(std::vector<ReviewEvent> events, std::string_view salt);

Boundedness classify_boundedness(std::optional<TimeStamp> review_created_at, TimeStamp first_event,
                                 TimeStamp last_event, std::optional<TimeStamp> review_closed_at,
                                 TimeWindow window);

struct IngestReport {
  std::uint64_t events_read = 0;
  std::uint64_t events_kept = 0;
  std::uint64_t events_dropped_bot = 0;
  std::uint64_t events_dropped_outside_window = 0;
  std::uint64_t events_dropped_unknown_type = 0;
  std::uint64_t reviews_seen = 0;
  std::uint64_t channels_emitted = 0;
  std::uint64_t singleton_channels = 0;
  std::uint64_t singleton_channels_dropped = 0;

  bool consistent() const {
    return events_read ==
           events_kept + events_dropped_bot + events_dropped_outside_window + events_dropped_unknown_type;
  }
};

std::ostream& operator<<(std::ostream& out, const IngestReport& report);

struct ChannelBuildOptions {
  bool drop_singletons = false;
};

struct ChannelBuild {
  std::vector<Channel> channels;  // sorted by id
  IngestReport report;
};

/// Groups events by review and emits one channel per review with at least one
/// in-window event. Fills the window- and channel-related report counters.
ChannelBuild build_channels(const std::vector<ReviewEvent>& events, TimeWindow window,
                            ChannelBuildOptions options = {});

}  // namespace crdiff
