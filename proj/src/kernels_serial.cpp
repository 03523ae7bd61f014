#include "kernels_common.hpp"

namespace owcpon::serial {

HopHistogram all_pairs_summary(const NetworkGraph& graph, const RoutingPolicy& policy) {
  HopHistogram histogram;
  const auto servers = graph.servers();
  for (auto s : servers) {
    for (auto d : servers) {
      const auto route = resolve_route(graph, s, d, policy);
      ++histogram[{route.path_class, route.hop_count()}];
    }
  }
  return histogram;
}

LinkLoadReport assign(const NetworkGraph& graph, const TrafficMatrix& tm,
                      const RoutingPolicy& policy) {
  const auto demands = detail::resolve_demands(graph, tm);
  std::vector<Rational> loads(graph.links().size());
  Rational carried;
  for (const auto& d : demands) detail::accumulate(graph, d, policy, loads, carried);
  return make_link_report(graph, std::move(loads), std::move(carried));
}

std::vector<SweepPoint> scaling_sweep(const SweepFamily& family, const CatalogPair& catalogs,
                                      const PowerOptions& options) {
  std::vector<SweepPoint> out;
  for (const auto& [t, o] : expand_family(family)) {
    out.push_back(evaluate_point(t, o, catalogs, options));
  }
  return out;
}

}  // namespace owcpon::serial
