#include "crdiff/model.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace crdiff {

namespace {

constexpr std::string_view kChannelFormat = "crdiff-channels";
constexpr int kChannelFormatVersion = 1;

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

TimeWindow TimeWindow::make(TimeStamp start, TimeStamp end) {
  if (!(start < end)) {
    throw ConfigError("invalid window: start " + std::to_string(start.seconds) + " is not before end " +
                      std::to_string(end.seconds));
  }
  return TimeWindow{start, end};
}

std::string_view to_string(Boundedness b) {
  switch (b) {
    case Boundedness::bounded:
      return "bounded";
    case Boundedness::left_bounded:
      return "left-bounded";
    case Boundedness::right_bounded:
      return "right-bounded";
    case Boundedness::unbounded:
      return "unbounded";
  }
  return "bounded";
}

Boundedness boundedness_from_string(std::string_view name) {
  for (auto b : kAllBoundedness) {
    if (to_string(b) == name) return b;
  }
  throw DataError("unknown boundedness '" + std::string(name) + "'");
}

void normalize_participants(Channel& channel) {
  auto& p = channel.participants;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
}

std::int64_t CommunicationNetwork::find_vertex(std::string_view id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const ParticipantId& a, std::string_view b) { return a < b; });
  if (it == vertices_.end() || *it != id) return -1;
  return it - vertices_.begin();
}

CommunicationNetwork build_network(std::vector<Channel> channels, TimeWindow window) {
  window = TimeWindow::make(window.start, window.end);

  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(channels.size());
  for (auto& c : channels) {
    if (c.id.empty()) throw DataError("channel with empty id");
    if (!seen_ids.insert(c.id).second) throw DataError("duplicate channel id '" + c.id + "'");
    if (c.opens_at > c.closes_at) {
      throw DataError("channel '" + c.id + "' opens after it closes");
    }
    normalize_participants(c);
    if (c.participants.empty()) throw DataError("channel '" + c.id + "' has no participants");
    if (c.participants.front().empty()) throw DataError("channel '" + c.id + "' has an empty participant id");
  }

  std::erase_if(channels, [&](const Channel& c) { return c.closes_at < window.start || c.opens_at > window.end; });
  for (auto& c : channels) {
    c.opens_at = std::max(c.opens_at, window.start);
    c.closes_at = std::min(c.closes_at, window.end);
  }
  std::sort(channels.begin(), channels.end(), [](const Channel& a, const Channel& b) { return a.id < b.id; });

  CommunicationNetwork net;
  net.window_ = window;

  for (const auto& c : channels) {
    net.vertices_.insert(net.vertices_.end(), c.participants.begin(), c.participants.end());
  }
  std::sort(net.vertices_.begin(), net.vertices_.end());
  net.vertices_.erase(std::unique(net.vertices_.begin(), net.vertices_.end()), net.vertices_.end());
  net.channels_ = std::move(channels);

  const auto n_channels = net.channels_.size();
  const auto n_vertices = net.vertices_.size();

  std::vector<std::size_t> degree(n_vertices, 0);
  net.member_offset_.assign(1, 0);
  net.member_offset_.reserve(n_channels + 1);
  for (const auto& c : net.channels_) {
    for (const auto& p : c.participants) {
      auto v = static_cast<VertexIndex>(net.find_vertex(p));
      net.member_index_.push_back(v);
      ++degree[v];
    }
    net.member_offset_.push_back(net.member_index_.size());
  }

  net.by_close_.resize(n_channels);
  for (ChannelIndex i = 0; i < n_channels; ++i) net.by_close_[i] = i;
  std::stable_sort(net.by_close_.begin(), net.by_close_.end(), [&](ChannelIndex a, ChannelIndex b) {
    return net.channels_[a].closes_at < net.channels_[b].closes_at;
  });

  net.incident_offset_.assign(n_vertices + 1, 0);
  for (std::size_t v = 0; v < n_vertices; ++v) net.incident_offset_[v + 1] = net.incident_offset_[v] + degree[v];
  net.incident_index_.resize(net.member_index_.size());
  std::vector<std::size_t> fill(net.incident_offset_.begin(), net.incident_offset_.end() - 1);
  for (ChannelIndex c : net.by_close_) {
    for (VertexIndex v : net.members(c)) net.incident_index_[fill[v]++] = c;
  }
  return net;
}

BipartiteGraph to_bipartite(const CommunicationNetwork& network) {
  BipartiteGraph g;
  g.left = network.vertices();
  g.right = network.channels();
  g.incidences.reserve(network.incidence_count());
  for (ChannelIndex c = 0; c < network.channel_count(); ++c) {
    for (VertexIndex v : network.members(c)) g.incidences.emplace_back(v, c);
  }
  std::sort(g.incidences.begin(), g.incidences.end());
  return g;
}

TimeWindow covering_window(std::span<const Channel> channels) {
  if (channels.empty()) return TimeWindow{TimeStamp{0}, TimeStamp{1}};
  TimeStamp lo = channels.front().opens_at;
  TimeStamp hi = channels.front().closes_at;
  for (const auto& c : channels) {
    lo = std::min(lo, c.opens_at);
    hi = std::max(hi, c.closes_at);
  }
  if (!(lo < hi)) hi = lo + 1;
  return TimeWindow{lo, hi};
}

void write_channels(std::ostream& out, std::span<const Channel> channels, std::optional<TimeWindow> window) {
  nlohmann::ordered_json header;
  header["format"] = kChannelFormat;
  header["version"] = kChannelFormatVersion;
  if (window) header["window"] = {{"start", window->start.seconds}, {"end", window->end.seconds}};
  out << header.dump() << '\n';
  for (const auto& c : channels) {
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["participants"] = c.participants;
    rec["opens_at"] = c.opens_at.seconds;
    rec["closes_at"] = c.closes_at.seconds;
    rec["boundedness"] = to_string(c.boundedness);
    out << rec.dump() << '\n';
  }
}

ChannelFile read_channels(std::istream& in) {
  ChannelFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(at_line(line_no) + "malformed record: " + e.what());
    }
    if (!rec.is_object()) throw DataError(at_line(line_no) + "record is not an object");
    try {
      if (rec.contains("format")) {
        if (rec.at("format").get<std::string>() != kChannelFormat) {
          throw DataError(at_line(line_no) + "not a channel file");
        }
        if (rec.contains("window")) {
          const auto& w = rec.at("window");
          file.window = TimeWindow::make(TimeStamp{w.at("start").get<std::int64_t>()},
                                         TimeStamp{w.at("end").get<std::int64_t>()});
        }
        continue;
      }
      Channel c;
      c.id = rec.at("id").get<std::string>();
      c.participants = rec.at("participants").get<std::vector<std::string>>();
      c.opens_at = TimeStamp{rec.at("opens_at").get<std::int64_t>()};
      c.closes_at = TimeStamp{rec.at("closes_at").get<std::int64_t>()};
      c.boundedness = rec.contains("boundedness")
                          ? boundedness_from_string(rec.at("boundedness").get<std::string>())
                          : Boundedness::bounded;
      normalize_participants(c);
      file.channels.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(at_line(line_no) + e.what());
    } catch (const ConfigError& e) {
      throw DataError(at_line(line_no) + e.what());
    } catch (const DataError& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      throw DataError(at_line(line_no) + what);
    }
  }
  return file;
}

}  // namespace crdiff
