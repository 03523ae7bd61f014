#pragma once

// Pieces shared by the serial and OpenMP kernels.

#include <string>
#include <vector>

#include "owcpon/error.hpp"
#include "owcpon/kernels.hpp"

namespace owcpon::detail {

struct Demand {
  std::size_t src;
  std::size_t dst;
  const Rational* gbps;
  const TrafficMatrix::Key* key;
};

inline Error with_pair(const TrafficMatrix::Key& key, const Error& e) {
  return Error(e.code(), key.first + " -> " + key.second + ": " + e.message());
}

// Resolves server ids up front; throws UnknownServer naming the first bad pair
// in matrix order.
inline std::vector<Demand> resolve_demands(const NetworkGraph& graph, const TrafficMatrix& tm) {
  std::vector<Demand> out;
  out.reserve(tm.size());
  for (const auto& [key, gbps] : tm.entries()) {
    auto src = graph.find_node(key.first);
    auto dst = graph.find_node(key.second);
    for (const auto& [idx, id] : {std::pair{src, &key.first}, std::pair{dst, &key.second}}) {
      if (!idx || graph.nodes()[*idx].kind != DeviceKind::Server) {
        throw Error(ErrorCode::UnknownServer, key.first + " -> " + key.second + ": " + *id +
                                                  " is not a server in this graph");
      }
    }
    out.push_back({*src, *dst, &gbps, &key});
  }
  return out;
}

inline void accumulate(const NetworkGraph& graph, const Demand& d, const RoutingPolicy& policy,
                       std::vector<Rational>& loads, Rational& carried) {
  Route route;
  try {
    route = resolve_route(graph, d.src, d.dst, policy);
  } catch (const Error& e) {
    throw with_pair(*d.key, e);
  }
  for (auto link : route.links) loads[link] += *d.gbps;
  carried += *d.gbps;
}

}  // namespace owcpon::detail
