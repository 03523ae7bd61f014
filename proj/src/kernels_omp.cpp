#include <exception>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kernels_common.hpp"

namespace owcpon::parallel {

namespace {

// Keeps the exception raised at the lowest work index so the parallel kernels
// fail with the same error the serial loop would hit first.
class FirstFailure {
 public:
  void record(std::size_t index, std::exception_ptr error) {
#pragma omp critical(owcpon_first_failure)
    {
      if (!index_ || index < *index_) {
        index_ = index;
        error_ = std::move(error);
      }
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::optional<std::size_t> index_;
  std::exception_ptr error_;
};

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

HopHistogram all_pairs_summary(const NetworkGraph& graph, const RoutingPolicy& policy) {
  const auto servers = graph.servers();
  const auto n = static_cast<std::ptrdiff_t>(servers.size());
  HopHistogram histogram;
  FirstFailure failure;

#pragma omp parallel
  {
    HopHistogram local;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        for (std::ptrdiff_t j = 0; j < n; ++j) {
          const auto route = resolve_route(graph, servers[i], servers[j], policy);
          ++local[{route.path_class, route.hop_count()}];
        }
      } catch (...) {
        failure.record(static_cast<std::size_t>(i), std::current_exception());
      }
    }
#pragma omp critical(owcpon_merge_histogram)
    for (const auto& [key, count] : local) histogram[key] += count;
  }

  failure.rethrow();
  return histogram;
}

LinkLoadReport assign(const NetworkGraph& graph, const TrafficMatrix& tm,
                      const RoutingPolicy& policy) {
  const auto demands = detail::resolve_demands(graph, tm);
  const auto n = static_cast<std::ptrdiff_t>(demands.size());
  const std::size_t num_links = graph.links().size();
  std::vector<Rational> loads(num_links);
  Rational carried;
  FirstFailure failure;

#pragma omp parallel
  {
    std::vector<Rational> local(num_links);
    Rational local_carried;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        detail::accumulate(graph, demands[i], policy, local, local_carried);
      } catch (...) {
        failure.record(static_cast<std::size_t>(i), std::current_exception());
      }
    }
    // Exact rational addition is associative and commutative, so merge order
    // cannot change the result.
#pragma omp critical(owcpon_merge_loads)
    {
      for (std::size_t l = 0; l < num_links; ++l) {
        if (local[l] != 0) loads[l] += local[l];
      }
      carried += local_carried;
    }
  }

  failure.rethrow();
  return make_link_report(graph, std::move(loads), std::move(carried));
}

std::vector<SweepPoint> scaling_sweep(const SweepFamily& family, const CatalogPair& catalogs,
                                      const PowerOptions& options) {
  const auto specs = expand_family(family);
  const auto n = static_cast<std::ptrdiff_t>(specs.size());
  std::vector<SweepPoint> out(specs.size());
  FirstFailure failure;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = evaluate_point(specs[i].first, specs[i].second, catalogs, options);
    } catch (...) {
      failure.record(static_cast<std::size_t>(i), std::current_exception());
    }
  }

  failure.rethrow();
  return out;
}

}  // namespace owcpon::parallel
