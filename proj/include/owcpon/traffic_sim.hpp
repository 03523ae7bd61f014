#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "owcpon/rational.hpp"
#include "owcpon/routing.hpp"
#include "owcpon/topology.hpp"

namespace owcpon {

// Sparse (src, dst) -> Gb/s demand. Repeated additions accumulate.
class TrafficMatrix {
 public:
  using Key = std::pair<std::string, std::string>;

  // Throws Error(InvalidValue) on negative demand. Zero demands are not stored.
  void add(const std::string& src, const std::string& dst, const Rational& gbps);

  const std::map<Key, Rational>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  Rational total() const;

  TrafficMatrix& operator+=(const TrafficMatrix& other);
  friend TrafficMatrix operator+(TrafficMatrix a, const TrafficMatrix& b) { return a += b; }

  bool operator==(const TrafficMatrix&) const = default;

 private:
  std::map<Key, Rational> entries_;
};

struct LinkLoad {
  std::string link_id;
  Rational capacity_gbps;
  Rational load_gbps;
  Rational utilization;

  bool operator==(const LinkLoad&) const = default;
};

// One entry per graph link, in graph order. Loads are undirected: both
// directions of a link add into the same total.
struct LinkLoadReport {
  std::vector<LinkLoad> links;
  Rational max_utilization;
  std::vector<std::string> saturated;  // utilization > 1, graph order
  Rational carried_gbps;

  bool operator==(const LinkLoadReport&) const = default;
};

// Loads a raw per-link vector into a report; shared by the serial and
// parallel kernels.
LinkLoadReport make_link_report(const NetworkGraph& graph, std::vector<Rational> loads,
                                Rational carried);

// Routes every demand with resolve_route and accumulates it on each traversed
// link. NoRoute / UnknownServer errors name the offending pair.
LinkLoadReport assign(const NetworkGraph& graph, const TrafficMatrix& tm,
                      const RoutingPolicy& policy = {});

struct TrafficPattern {
  enum class Kind : std::uint8_t { Uniform, HotspotRack, IntraRackHeavy };

  Kind kind = Kind::Uniform;
  Rational demand_gbps;
  std::uint32_t rack = 0;  // HotspotRack
  Rational fraction;       // IntraRackHeavy, in [0, 1]

  static TrafficPattern uniform(Rational d) { return {Kind::Uniform, std::move(d), 0, 0}; }
  static TrafficPattern hotspot(std::uint32_t rack, Rational d) {
    return {Kind::HotspotRack, std::move(d), rack, 0};
  }
  static TrafficPattern intra_rack_heavy(Rational fraction, Rational d) {
    return {Kind::IntraRackHeavy, std::move(d), 0, std::move(fraction)};
  }

  bool operator==(const TrafficPattern&) const = default;
};

std::string_view to_string(TrafficPattern::Kind kind);

// Uniform(d): d on every ordered pair of distinct servers.
// HotspotRack(r, d): every server outside rack r sends d to each server in r.
// IntraRackHeavy(f, d): each server's egress d is split f to its rack peers and
// (1 - f) to all other servers, evenly within each share.
// Throws Error(UnknownRack) and Error(InvalidValue).
TrafficMatrix generate_traffic(const TrafficPattern& pattern, const NetworkGraph& graph);

// Links with load > 0 by utilization descending, ties by link id ascending.
std::vector<LinkLoad> bottlenecks(const LinkLoadReport& report, std::size_t top_n);

}  // namespace owcpon
