#pragma once

// Data-parallel kernels. Every kernel has a serial reference in
// owcpon::serial and an OpenMP version in owcpon::parallel; the two must
// produce identical results (all accumulation is exact and commutative).

#include <vector>

#include "owcpon/power_model.hpp"
#include "owcpon/routing.hpp"
#include "owcpon/traffic_sim.hpp"

namespace owcpon {

namespace serial {

HopHistogram all_pairs_summary(const NetworkGraph& graph, const RoutingPolicy& policy);
LinkLoadReport assign(const NetworkGraph& graph, const TrafficMatrix& tm,
                      const RoutingPolicy& policy);
std::vector<SweepPoint> scaling_sweep(const SweepFamily& family, const CatalogPair& catalogs,
                                      const PowerOptions& options);

}  // namespace serial

namespace parallel {

HopHistogram all_pairs_summary(const NetworkGraph& graph, const RoutingPolicy& policy);
LinkLoadReport assign(const NetworkGraph& graph, const TrafficMatrix& tm,
                      const RoutingPolicy& policy);
std::vector<SweepPoint> scaling_sweep(const SweepFamily& family, const CatalogPair& catalogs,
                                      const PowerOptions& options);

// Worker count the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace parallel

}  // namespace owcpon
