#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "owcpon/topology.hpp"

namespace owcpon {

enum class PathClass : std::uint8_t {
  SameServer,
  IntraRack,
  InterRackIntraGroup,
  InterGroupDirect,
  InterGroupRelayed,
  External,
  // Traditional fabric: server-leaf-spine-leaf-server.
  InterRackViaSpine,
};

std::string_view to_string(PathClass cls);

// Node and link positions index into the graph the route was resolved on.
struct Route {
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> links;
  PathClass path_class = PathClass::SameServer;

  std::size_t hop_count() const { return links.size(); }

  bool operator==(const Route&) const = default;
};

std::vector<std::string> node_ids_of(const NetworkGraph& graph, const Route& route);
std::vector<std::string> link_ids_of(const NetworkGraph& graph, const Route& route);

struct RoutingPolicy {
  bool prefer_direct_inter_group = true;
  bool allow_relay_fallback = true;

  bool operator==(const RoutingPolicy&) const = default;
};

// Deterministic rule-chain route between two servers:
//   same rack        server-leaf-server
//   same group       ...-nic-ocs-nic'-...
//   direct link      ...-nic-nic'-...
//   OLT relay        ...-nic-ocs-gw-olt-gw'-ocs'-nic'-... (a gateway endpoint
//                    skips its own ocs detour)
// Throws Error(NoRoute) when a required element is missing and
// Error(PolicyExcluded) for inter-group pairs with both mechanisms disabled.
Route resolve_route(const NetworkGraph& graph, std::size_t src, std::size_t dst,
                    const RoutingPolicy& policy = {});
Route resolve_route(const NetworkGraph& graph, std::string_view src, std::string_view dst,
                    const RoutingPolicy& policy = {});

// server-...-nic[-ocs-gw]-olt-external.
Route route_to_external(const NetworkGraph& graph, std::size_t src);
Route route_to_external(const NetworkGraph& graph, std::string_view src);

using HopHistogram = std::map<std::pair<PathClass, std::size_t>, std::uint64_t>;

std::uint64_t class_total(const HopHistogram& histogram, PathClass cls);

// Every ordered (src, dst) server pair, including src == dst.
HopHistogram all_pairs_summary(const NetworkGraph& graph, const RoutingPolicy& policy = {});

}  // namespace owcpon
