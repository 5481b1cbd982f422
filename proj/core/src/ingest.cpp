#include "crdiff/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "crdiff/time.hpp"

namespace crdiff {

std::string_view to_string(ActorKind k) {
  switch (k) {
    case ActorKind::human:
      return "human";
    case ActorKind::bot:
      return "bot";
    case ActorKind::unknown:
      return "unknown";
  }
  return "unknown";
}

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::create:
      return "create";
    case EventType::comment:
      return "comment";
    case EventType::edit:
      return "edit";
    case EventType::approve:
      return "approve";
    case EventType::close:
      return "close";
    case EventType::merge:
      return "merge";
  }
  return "comment";
}

namespace {

std::optional<EventType> event_type_from(std::string_view name) {
  for (auto t : {EventType::create, EventType::comment, EventType::edit, EventType::approve, EventType::close,
                 EventType::merge}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

ActorKind actor_kind_from(std::string_view name) {
  for (auto k : {ActorKind::human, ActorKind::bot, ActorKind::unknown}) {
    if (to_string(k) == name) return k;
  }
  throw DataError("unknown actor_kind '" + std::string(name) + "'");
}

TimeStamp json_timestamp(const nlohmann::json& value, std::string_view field) {
  if (value.is_number_integer()) {
    const auto s = value.get<std::int64_t>();
    if (s < 0) throw DataError(std::string(field) + " is negative");
    return TimeStamp{s};
  }
  if (value.is_string()) return parse_timestamp(value.get<std::string>());
  throw DataError(std::string(field) + " must be epoch seconds or an ISO-8601 string");
}

std::optional<TimeStamp> optional_timestamp(const nlohmann::json& rec, std::string_view field) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  return json_timestamp(*it, field);
}

std::string required_string(const nlohmann::json& rec, std::string_view field) {
  auto it = rec.find(field);
  if (it == rec.end()) throw DataError("missing field '" + std::string(field) + "'");
  if (!it->is_string()) throw DataError("field '" + std::string(field) + "' must be a string");
  auto s = it->get<std::string>();
  if (s.empty()) throw DataError("field '" + std::string(field) + "' is empty");
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ParsedEvents parse_events(std::istream& in) {
  ParsedEvents parsed;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++parsed.lines_read;
    try {
      const auto rec = nlohmann::json::parse(line);
      if (!rec.is_object()) throw DataError("record is not an object");
      ReviewEvent ev;
      ev.review_id = required_string(rec, "review_id");
      ev.actor_id = required_string(rec, "actor_id");
      ev.actor_kind = rec.contains("actor_kind") ? actor_kind_from(rec.at("actor_kind").get<std::string>())
                                                 : ActorKind::unknown;
      const auto type = event_type_from(required_string(rec, "event_type"));
      if (!rec.contains("timestamp") || rec.at("timestamp").is_null()) throw DataError("missing field 'timestamp'");
      ev.timestamp = json_timestamp(rec.at("timestamp"), "timestamp");
      ev.review_created_at = optional_timestamp(rec, "review_created_at");
      ev.review_closed_at = optional_timestamp(rec, "review_closed_at");
      if (!type) {
        ++parsed.dropped_unknown_type;
        continue;
      }
      ev.event_type = *type;
      if (ev.review_created_at && ev.timestamp < *ev.review_created_at) {
        throw DataError("timestamp precedes review_created_at");
      }
      parsed.events.push_back(std::move(ev));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("events line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("events line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return parsed;
}

void BotRuleSet::add_exact(std::string id) {
  auto it = std::lower_bound(exact_ids_.begin(), exact_ids_.end(), id);
  if (it == exact_ids_.end() || *it != id) exact_ids_.insert(it, std::move(id));
}

void BotRuleSet::add_pattern(std::string pattern) {
  if (pattern.empty()) throw ConfigError("empty bot pattern");
  patterns_.push_back(lower(pattern));
}

BotRuleSet BotRuleSet::parse(std::istream& in) {
  BotRuleSet rules;
  std::string line;
  while (std::getline(in, line)) {
    auto entry = trim(line.substr(0, line.find('#')));
    if (entry.empty()) continue;
    if (entry.find_first_of("*?") != std::string::npos) {
      rules.add_pattern(std::move(entry));
    } else {
      rules.add_exact(std::move(entry));
    }
  }
  return rules;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  // Iterative matcher with single-star backtracking.
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  auto eq = [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  };
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || (pattern[p] != '*' && eq(pattern[p], text[t])))) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

bool BotRuleSet::matches(std::string_view actor_id) const {
  if (std::binary_search(exact_ids_.begin(), exact_ids_.end(), actor_id)) return true;
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [&](const std::string& p) { return glob_match(p, actor_id); });
}

std::vector<ReviewEvent> filter_humans(std::vector<ReviewEvent> events, const BotRuleSet& rules) {
  std::erase_if(events, [&](const ReviewEvent& e) { return e.actor_kind == ActorKind::bot || rules.matches(e.actor_id); });
  return events;
}

std::string anonymize_id(std::string_view salt, std::string_view actor_id) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  HMAC(EVP_sha256(), salt.data(), static_cast<int>(salt.size()),
       reinterpret_cast<const unsigned char*>(actor_id.data()), actor_id.size(), digest, &length);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::vector<ReviewEvent> anonymize(std::vector<ReviewEvent> events, std::string_view salt) {
  if (salt.empty()) throw ConfigError("anonymization salt must not be empty");
  std::map<std::string, std::string, std::less<>> cache;
  for (auto& e : events) {
    auto it = cache.find(e.actor_id);
    if (it == cache.end()) it = cache.emplace(e.actor_id, anonymize_id(salt, e.actor_id)).first;
    e.actor_id = it->second;
  }
  return events;
}

Boundedness classify_boundedness(std::optional<TimeStamp> review_created_at, TimeStamp /*first_event*/,
                                 TimeStamp /*last_event*/, std::optional<TimeStamp> review_closed_at,
                                 TimeWindow window) {
  const bool started_before = review_created_at && *review_created_at < window.start;
  const bool ends_after = !review_closed_at || *review_closed_at > window.end;
  if (started_before && ends_after) return Boundedness::unbounded;
  if (started_before) return Boundedness::right_bounded;
  if (ends_after) return Boundedness::left_bounded;
  return Boundedness::bounded;
}

std::ostream& operator<<(std::ostream& out, const IngestReport& r) {
  out << "events_read: " << r.events_read << '\n'
      << "events_kept: " << r.events_kept << '\n'
      << "events_dropped_bot: " << r.events_dropped_bot << '\n'
      << "events_dropped_outside_window: " << r.events_dropped_outside_window << '\n'
      << "events_dropped_unknown_type: " << r.events_dropped_unknown_type << '\n'
      << "reviews_seen: " << r.reviews_seen << '\n'
      << "channels_emitted: " << r.channels_emitted << '\n'
      << "singleton_channels: " << r.singleton_channels << '\n'
      << "singleton_channels_dropped: " << r.singleton_channels_dropped << '\n';
  return out;
}

namespace {

struct ReviewAccumulator {
  std::optional<TimeStamp> created_at;
  std::optional<TimeStamp> closed_at;
  std::optional<TimeStamp> create_event;
  std::optional<TimeStamp> close_event;
  std::optional<TimeStamp> first_in_window;
  std::optional<TimeStamp> last_in_window;
  std::set<std::string> participants;
};

template <class T>
void keep_min(std::optional<T>& slot, T value) {
  if (!slot || value < *slot) slot = value;
}

template <class T>
void keep_max(std::optional<T>& slot, T value) {
  if (!slot || *slot < value) slot = value;
}

}  // namespace

ChannelBuild build_channels(const std::vector<ReviewEvent>& events, TimeWindow window, ChannelBuildOptions options) {
  ChannelBuild build;
  auto& report = build.report;
  std::map<std::string, ReviewAccumulator> reviews;

  for (const auto& e : events) {
    auto& acc = reviews[e.review_id];
    if (e.review_created_at) keep_min(acc.created_at, *e.review_created_at);
    if (e.review_closed_at) keep_max(acc.closed_at, *e.review_closed_at);
    if (e.event_type == EventType::create) keep_min(acc.create_event, e.timestamp);
    if (e.event_type == EventType::close || e.event_type == EventType::merge) keep_max(acc.close_event, e.timestamp);
    if (!window.contains(e.timestamp)) {
      ++report.events_dropped_outside_window;
      continue;
    }
    ++report.events_kept;
    keep_min(acc.first_in_window, e.timestamp);
    keep_max(acc.last_in_window, e.timestamp);
    acc.participants.insert(e.actor_id);
  }
  report.reviews_seen = reviews.size();

  for (auto& [id, acc] : reviews) {
    if (!acc.first_in_window) continue;
    const auto created = acc.created_at ? acc.created_at : acc.create_event;
    const auto closed = acc.closed_at ? acc.closed_at : acc.close_event;
    Channel c;
    c.id = id;
    c.participants.assign(acc.participants.begin(), acc.participants.end());
    c.opens_at = *acc.first_in_window;
    c.closes_at = *acc.last_in_window;
    c.boundedness = classify_boundedness(created, c.opens_at, c.closes_at, closed, window);
    if (c.participants.size() == 1) {
      ++report.singleton_channels;
      if (options.drop_singletons) {
        ++report.singleton_channels_dropped;
        continue;
      }
    }
    build.channels.push_back(std::move(c));
  }
  report.channels_emitted = build.channels.size();
  return build;
}

}  // namespace crdiff
