#include "crdiff/journeys.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "crdiff/csv.hpp"

namespace crdiff {

const ReachLabel* SourceResult::find(std::string_view target) const {
  auto it = std::lower_bound(reach.begin(), reach.end(), target,
                             [](const ReachEntry& e, std::string_view t) { return e.target < t; });
  if (it == reach.end() || it->target != target) return nullptr;
  return &it->label;
}

std::set<ParticipantId> horizon(const SourceResult& result) {
  std::set<ParticipantId> out;
  for (const auto& e : result.reach) out.insert(e.target);
  return out;
}

JourneySolver::JourneySolver(const CommunicationNetwork& network)
    : net_(network),
      arrival_(network.vertex_count(), kNever),
      hops_(network.vertex_count(), 0),
      duration_(network.vertex_count(), kNever),
      pending_(network.vertex_count(), kNever),
      fired_(network.channel_count(), 0),
      scan_arrival_(network.vertex_count(), kNever) {
  const auto order = net_.by_close();
  first_later_.resize(net_.channel_count());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto close = net_.channels()[order[i]].closes_at;
    pos = std::max(pos, i);
    while (pos < order.size() && net_.channels()[order[pos]].closes_at <= close) ++pos;
    first_later_[order[i]] = pos;
  }
}

// Hop-layered earliest arrival. After layer k, arrival_[v] is the earliest
// arrival over journeys with at most k channels, so the layer at which a
// vertex first becomes finite is its minimal hop count. Every (hops, arrival)
// pair recorded along the way is Pareto-optimal. A channel is fired once, at
// the first layer in which some participant already knew strictly before it
// closed; firing it again later could only add hops.
void JourneySolver::min_hops_and_foremost(VertexIndex source) {
  const auto& channels = net_.channels();
  std::fill(arrival_.begin(), arrival_.end(), kNever);
  std::fill(hops_.begin(), hops_.end(), 0);
  std::fill(fired_.begin(), fired_.end(), 0);

  arrival_[source] = kAlways;
  frontier_.assign(1, source);
  for (int layer = 1; !frontier_.empty(); ++layer) {
    touched_.clear();
    for (VertexIndex x : frontier_) {
      const auto incident = net_.incident(x);
      const std::int64_t known = arrival_[x];
      auto it = std::upper_bound(incident.begin(), incident.end(), known, [&](std::int64_t t, ChannelIndex c) {
        return t < channels[c].closes_at.seconds;
      });
      for (; it != incident.end(); ++it) {
        const ChannelIndex c = *it;
        if (fired_[c]) continue;
        fired_[c] = 1;
        const std::int64_t close = channels[c].closes_at.seconds;
        for (VertexIndex y : net_.members(c)) {
          if (close < pending_[y]) {
            if (pending_[y] == kNever) touched_.push_back(y);
            pending_[y] = close;
          }
        }
      }
    }
    frontier_.clear();
    for (VertexIndex y : touched_) {
      if (pending_[y] < arrival_[y]) {
        arrival_[y] = pending_[y];
        if (hops_[y] == 0 && y != source) hops_[y] = layer;
        frontier_.push_back(y);
      }
      pending_[y] = kNever;
    }
  }
}

// Fastest journeys: for each channel of the source taken as the first hop,
// run an earliest-arrival scan over the channels closing strictly later. With
// the departure fixed at opens(e1), the earliest arrival is the shortest
// duration among journeys starting with e1.
void JourneySolver::fastest(VertexIndex source) {
  const auto& channels = net_.channels();
  const auto order = net_.by_close();
  std::fill(duration_.begin(), duration_.end(), kNever);

  for (ChannelIndex first : net_.incident(source)) {
    const std::int64_t depart = channels[first].opens_at.seconds;
    const std::int64_t first_close = channels[first].closes_at.seconds;
    scan_touched_.clear();
    for (VertexIndex v : net_.members(first)) {
      scan_arrival_[v] = first_close;
      scan_touched_.push_back(v);
    }
    for (std::size_t i = first_later_[first]; i < order.size(); ++i) {
      const ChannelIndex c = order[i];
      const std::int64_t close = channels[c].closes_at.seconds;
      const auto members = net_.members(c);
      const bool reached =
          std::any_of(members.begin(), members.end(), [&](VertexIndex v) { return scan_arrival_[v] < close; });
      if (!reached) continue;
      for (VertexIndex v : members) {
        if (scan_arrival_[v] == kNever) {
          scan_arrival_[v] = close;
          scan_touched_.push_back(v);
        }
      }
    }
    for (VertexIndex v : scan_touched_) {
      duration_[v] = std::min(duration_[v], scan_arrival_[v] - depart);
      scan_arrival_[v] = kNever;
    }
  }
}

SourceResult JourneySolver::solve(VertexIndex source) {
  min_hops_and_foremost(source);
  fastest(source);

  SourceResult result;
  result.source = net_.vertices()[source];
  for (VertexIndex v = 0; v < net_.vertex_count(); ++v) {
    if (v == source) continue;
    // Both passes must agree on the horizon.
    if ((hops_[v] == 0) != (duration_[v] == kNever)) {
      throw std::logic_error("horizon mismatch between hop and duration passes at '" + net_.vertices()[v] + "'");
    }
    if (hops_[v] == 0) continue;
    result.reach.push_back(ReachEntry{net_.vertices()[v], ReachLabel{hops_[v], duration_[v], TimeStamp{arrival_[v]}}});
  }
  return result;
}

SourceResult single_source(const CommunicationNetwork& network, std::string_view source) {
  const auto index = network.find_vertex(source);
  if (index < 0) throw DataError("unknown source participant '" + std::string(source) + "'");
  JourneySolver solver(network);
  return solver.solve(static_cast<VertexIndex>(index));
}

std::vector<SourceResult> all_pairs(const CommunicationNetwork& network,
                                    const std::optional<std::vector<ParticipantId>>& sources, unsigned jobs) {
  std::vector<VertexIndex> todo;
  if (sources) {
    std::vector<std::string> missing;
    for (const auto& id : *sources) {
      const auto index = network.find_vertex(id);
      if (index < 0) {
        missing.push_back(id);
      } else {
        todo.push_back(static_cast<VertexIndex>(index));
      }
    }
    if (!missing.empty()) {
      std::string names;
      for (const auto& m : missing) names += (names.empty() ? "'" : ", '") + m + "'";
      throw DataError("unknown source participant(s) " + names);
    }
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  } else {
    todo.resize(network.vertex_count());
    for (VertexIndex v = 0; v < todo.size(); ++v) todo[v] = v;
  }

  std::vector<SourceResult> results(todo.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      JourneySolver solver(network);
      for (std::size_t i = next++; i < todo.size(); i = next++) results[i] = solver.solve(todo[i]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = todo.size();
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(todo.size(), 1))));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  // Vertex indices follow id order, so results are already sorted by source.
  return results;
}

void write_reach_dump(std::ostream& out, std::span<const SourceResult> results) {
  out << "source,target,hops,duration_seconds,foremost_arrival\n";
  std::vector<const SourceResult*> sorted;
  for (const auto& r : results) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->source < b->source; });
  for (const auto* r : sorted) {
    const auto source = csv::escape(r->source);
    if (r->reach.empty()) {
      out << source << ",,,,\n";
      continue;
    }
    for (const auto& e : r->reach) {
      out << source << ',' << csv::escape(e.target) << ',' << e.label.hops << ',' << e.label.duration << ','
          << e.label.foremost_arrival.seconds << '\n';
    }
  }
}

namespace {

std::int64_t parse_int(const std::string& field, std::size_t line_no, std::string_view column) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError("reach dump line " + std::to_string(line_no) + ": column '" + std::string(column) +
                    "' is not an integer");
  }
  return value;
}

}  // namespace

std::vector<SourceResult> read_reach_dump(std::istream& in) {
  static constexpr std::string_view kHeader = "source,target,hops,duration_seconds,foremost_arrival";
  std::vector<SourceResult> results;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kHeader) throw DataError("reach dump line 1: expected header '" + std::string(kHeader) + "'");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    try {
      f = csv::split(line);
    } catch (const DataError& e) {
      throw DataError("reach dump line " + std::to_string(line_no) + ": " + e.what());
    }
    if (f.size() != 5) {
      throw DataError("reach dump line " + std::to_string(line_no) + ": expected 5 columns, got " +
                      std::to_string(f.size()));
    }
    if (results.empty() || results.back().source != f[0]) {
      if (!results.empty() && f[0] < results.back().source) {
        throw DataError("reach dump line " + std::to_string(line_no) + ": rows not sorted by source");
      }
      results.push_back(SourceResult{f[0], {}});
    }
    if (f[1].empty()) continue;
    ReachLabel label;
    label.hops = static_cast<int>(parse_int(f[2], line_no, "hops"));
    label.duration = parse_int(f[3], line_no, "duration_seconds");
    label.foremost_arrival = TimeStamp{parse_int(f[4], line_no, "foremost_arrival")};
    results.back().reach.push_back(ReachEntry{f[1], label});
  }
  if (line_no == 0) throw DataError("reach dump is empty (missing header)");
  for (auto& r : results) {
    std::sort(r.reach.begin(), r.reach.end(), [](const auto& a, const auto& b) { return a.target < b.target; });
  }
  return results;
}

}  // namespace crdiff
