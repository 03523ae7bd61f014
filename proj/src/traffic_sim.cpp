#include "owcpon/traffic_sim.hpp"

#include <algorithm>

#include "owcpon/error.hpp"
#include "owcpon/kernels.hpp"

namespace owcpon {

void TrafficMatrix::add(const std::string& src, const std::string& dst, const Rational& gbps) {
  if (gbps < 0) {
    throw Error(ErrorCode::InvalidValue,
                "negative demand " + format_rational(gbps) + " for " + src + " -> " + dst);
  }
  if (gbps == 0) return;
  entries_[{src, dst}] += gbps;
}

Rational TrafficMatrix::total() const {
  Rational sum;
  for (const auto& [key, gbps] : entries_) sum += gbps;
  return sum;
}

TrafficMatrix& TrafficMatrix::operator+=(const TrafficMatrix& other) {
  for (const auto& [key, gbps] : other.entries_) entries_[key] += gbps;
  return *this;
}

LinkLoadReport make_link_report(const NetworkGraph& graph, std::vector<Rational> loads,
                                Rational carried) {
  LinkLoadReport report;
  report.carried_gbps = std::move(carried);
  const auto links = graph.links();
  report.links.reserve(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    LinkLoad entry{links[i].id, links[i].capacity_gbps, std::move(loads[i]), {}};
    // Capacity is positive on valid graphs; a zero-capacity link only appears in
    // a graph validate() already rejects.
    if (entry.capacity_gbps > 0) entry.utilization = entry.load_gbps / entry.capacity_gbps;
    if (entry.utilization > report.max_utilization) report.max_utilization = entry.utilization;
    if (entry.utilization > 1) report.saturated.push_back(entry.link_id);
    report.links.push_back(std::move(entry));
  }
  return report;
}

LinkLoadReport assign(const NetworkGraph& graph, const TrafficMatrix& tm,
                      const RoutingPolicy& policy) {
  return parallel::assign(graph, tm, policy);
}

std::string_view to_string(TrafficPattern::Kind kind) {
  switch (kind) {
    case TrafficPattern::Kind::Uniform: return "uniform";
    case TrafficPattern::Kind::HotspotRack: return "hotspot_rack";
    case TrafficPattern::Kind::IntraRackHeavy: return "intra_rack_heavy";
  }
  return "?";
}

namespace {

std::uint32_t spec_racks(const NetworkGraph& graph) {
  return std::visit([](const auto& s) { return s.num_racks; }, graph.spec());
}

}  // namespace

TrafficMatrix generate_traffic(const TrafficPattern& pattern, const NetworkGraph& graph) {
  if (pattern.demand_gbps < 0) {
    throw Error(ErrorCode::InvalidValue, "pattern demand must be non-negative");
  }
  const auto nodes = graph.nodes();
  const auto servers = graph.servers();
  TrafficMatrix tm;

  switch (pattern.kind) {
    case TrafficPattern::Kind::Uniform:
      for (auto s : servers) {
        for (auto d : servers) {
          if (s != d) tm.add(nodes[s].id, nodes[d].id, pattern.demand_gbps);
        }
      }
      break;

    case TrafficPattern::Kind::HotspotRack: {
      if (pattern.rack >= spec_racks(graph)) {
        throw Error(ErrorCode::UnknownRack, "rack " + std::to_string(pattern.rack) +
                                                " does not exist (graph has " +
                                                std::to_string(spec_racks(graph)) + " racks)");
      }
      for (auto s : servers) {
        if (nodes[s].rack == pattern.rack) continue;
        for (auto d : servers) {
          if (nodes[d].rack == pattern.rack) tm.add(nodes[s].id, nodes[d].id, pattern.demand_gbps);
        }
      }
      break;
    }

    case TrafficPattern::Kind::IntraRackHeavy: {
      if (pattern.fraction < 0 || pattern.fraction > 1) {
        throw Error(ErrorCode::InvalidValue, "intra-rack fraction must lie in [0, 1]");
      }
      std::map<std::uint32_t, std::size_t> rack_size;
      for (auto s : servers) ++rack_size[nodes[s].rack.value_or(0)];
      for (auto s : servers) {
        const auto rack = nodes[s].rack.value_or(0);
        const std::size_t peers = rack_size[rack] - 1;
        const std::size_t others = servers.size() - rack_size[rack];
        const Rational local =
            peers ? Rational(pattern.fraction * pattern.demand_gbps / peers) : Rational(0);
        const Rational remote =
            others ? Rational((1 - pattern.fraction) * pattern.demand_gbps / others)
                   : Rational(0);
        for (auto d : servers) {
          if (s == d) continue;
          tm.add(nodes[s].id, nodes[d].id, nodes[d].rack.value_or(0) == rack ? local : remote);
        }
      }
      break;
    }
  }
  return tm;
}

std::vector<LinkLoad> bottlenecks(const LinkLoadReport& report, std::size_t top_n) {
  std::vector<LinkLoad> loaded;
  for (const auto& l : report.links) {
    if (l.load_gbps > 0) loaded.push_back(l);
  }
  std::sort(loaded.begin(), loaded.end(), [](const LinkLoad& a, const LinkLoad& b) {
    if (a.utilization != b.utilization) return a.utilization > b.utilization;
    return a.link_id < b.link_id;
  });
  if (loaded.size() > top_n) loaded.resize(top_n);
  return loaded;
}

}  // namespace owcpon
