#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owcpon/rational.hpp"
#include "owcpon/topology.hpp"

namespace owcpon {

// Per-device-kind wattage in integer milliwatts.
struct PowerCatalog {
  std::map<DeviceKind, Milliwatts> entries;

  std::optional<Milliwatts> get(DeviceKind kind) const;
  void set(DeviceKind kind, Milliwatts mw) { entries[kind] = mw; }

  // Spine 660 W, leaf 508 W, server transceiver 3 W.
  static PowerCatalog traditional_default();
  // OWC transceiver 0.4 W (rack and AP side), leaf 508 W, OLT 480 W,
  // server transceiver 3 W, NIC 45 W, optical switch 75 W.
  static PowerCatalog owc_pon_default();

  bool operator==(const PowerCatalog&) const = default;
};

enum class NicCountMode : std::uint8_t { PerAp, PerServer };

std::string_view to_string(NicCountMode mode);

struct PowerOptions {
  bool include_owc_transceivers = false;
  bool include_server_transceivers = false;
  NicCountMode nic_count_mode = NicCountMode::PerAp;

  static PowerOptions reproduction() { return {}; }
  static PowerOptions as_written() { return {false, true, NicCountMode::PerAp}; }

  bool operator==(const PowerOptions&) const = default;
};

// "reproduction" and "as-written" are the only named profiles.
std::optional<PowerOptions> profile_options(std::string_view name);
inline constexpr std::string_view kProfileReproduction = "reproduction";
inline constexpr std::string_view kProfileAsWritten = "as-written";

struct PowerTerm {
  DeviceKind kind;
  std::uint64_t count = 0;
  Milliwatts unit_mw = 0;
  Milliwatts subtotal_mw = 0;
  bool included = true;

  bool operator==(const PowerTerm&) const = default;
};

// Terms appear in the order the closed-form expression lists them.
struct PowerReport {
  Architecture architecture = Architecture::Traditional;
  std::vector<PowerTerm> terms;
  Milliwatts total_mw = 0;
  PowerOptions options;
  PowerCatalog catalog;

  const PowerTerm* term(DeviceKind kind) const;

  bool operator==(const PowerReport&) const = default;
};

// Spine-and-leaf: P_spine*N_spine + P_leaf*N_leaf [+ P_txrx*N_txrx].
PowerReport eval_eq1(const Census& census, const PowerCatalog& catalog,
                     const PowerOptions& options);

// OWC-PON: [P_owc*N_owc] + K_olt + T_ocs*N_ocs + O_nic*N_nic + P_leaf*N_leaf
// [+ P_txrx*N_txrx]. The OLT term is a single constant, not multiplied by a count.
PowerReport eval_eq2(const Census& census, const PowerCatalog& catalog,
                     const PowerOptions& options);

// Closed form selected by the graph's architecture tag.
PowerReport eval_closed_form(const NetworkGraph& graph, const PowerCatalog& catalog,
                             const PowerOptions& options);

// Node-by-node summation, independent of the census path. Agrees exactly with
// eval_closed_form on every valid graph.
PowerReport eval_generic(const NetworkGraph& graph, const PowerCatalog& catalog,
                         const PowerOptions& options);

struct Reduction {
  Rational fraction;
  std::string percent;  // one decimal, e.g. "45.9%"

  bool operator==(const Reduction&) const = default;
};

std::string render_percent(const Rational& fraction);

// (baseline - proposed) / baseline. Throws Error(ZeroBaseline).
Reduction compare(const PowerReport& baseline, const PowerReport& proposed);

// Parameter family for scaling sweeps. Points are the ordered product
// racks x groups x servers_per_rack; the traditional side uses num_spine
// spines, or one spine per rack when unset.
struct SweepFamily {
  std::vector<std::uint32_t> racks;
  std::vector<std::uint32_t> groups{2};
  std::vector<std::uint32_t> servers_per_rack{8};
  std::optional<std::uint32_t> num_spine;

  bool operator==(const SweepFamily&) const = default;
};

struct CatalogPair {
  PowerCatalog traditional = PowerCatalog::traditional_default();
  PowerCatalog owc_pon = PowerCatalog::owc_pon_default();

  bool operator==(const CatalogPair&) const = default;
};

struct SweepPoint {
  TraditionalSpec traditional;
  OwcPonSpec owc_pon;
  std::optional<PowerReport> traditional_report;
  std::optional<PowerReport> owc_pon_report;
  std::optional<Reduction> reduction;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
  bool operator==(const SweepPoint&) const = default;
};

std::vector<std::pair<TraditionalSpec, OwcPonSpec>> expand_family(const SweepFamily& family);

// Builds both graphs and evaluates them; failures are recorded on the point.
SweepPoint evaluate_point(const TraditionalSpec& traditional, const OwcPonSpec& owc_pon,
                          const CatalogPair& catalogs, const PowerOptions& options);

// Parallel over points; output order follows expand_family.
std::vector<SweepPoint> scaling_sweep(const SweepFamily& family, const CatalogPair& catalogs,
                                      const PowerOptions& options);

}  // namespace owcpon
