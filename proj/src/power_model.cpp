#include "owcpon/power_model.hpp"

#include "owcpon/error.hpp"
#include "owcpon/kernels.hpp"

namespace owcpon {

std::optional<Milliwatts> PowerCatalog::get(DeviceKind kind) const {
  auto it = entries.find(kind);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

PowerCatalog PowerCatalog::traditional_default() {
  PowerCatalog c;
  c.set(DeviceKind::SpineSwitch, 660'000);
  c.set(DeviceKind::LeafSwitch, 508'000);
  c.set(DeviceKind::ServerTransceiver, 3'000);
  return c;
}

PowerCatalog PowerCatalog::owc_pon_default() {
  PowerCatalog c;
  c.set(DeviceKind::RackTransceiver, 400);
  c.set(DeviceKind::ApTransceiver, 400);
  c.set(DeviceKind::LeafSwitch, 508'000);
  c.set(DeviceKind::Olt, 480'000);
  c.set(DeviceKind::ServerTransceiver, 3'000);
  c.set(DeviceKind::Nic, 45'000);
  c.set(DeviceKind::OpticalSwitch, 75'000);
  return c;
}

std::string_view to_string(NicCountMode mode) {
  return mode == NicCountMode::PerAp ? "per_ap" : "per_server";
}

std::optional<PowerOptions> profile_options(std::string_view name) {
  if (name == kProfileReproduction) return PowerOptions::reproduction();
  if (name == kProfileAsWritten) return PowerOptions::as_written();
  return std::nullopt;
}

const PowerTerm* PowerReport::term(DeviceKind kind) const {
  for (const auto& t : terms) {
    if (t.kind == kind) return &t;
  }
  return nullptr;
}

namespace {

Milliwatts checked_mul(std::uint64_t count, Milliwatts unit) {
  Milliwatts out = 0;
  if (count > static_cast<std::uint64_t>(INT64_MAX) ||
      __builtin_mul_overflow(static_cast<Milliwatts>(count), unit, &out)) {
    throw Error(ErrorCode::InvalidValue, "power subtotal overflows 64-bit milliwatts");
  }
  return out;
}

Milliwatts checked_add(Milliwatts a, Milliwatts b) {
  Milliwatts out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::InvalidValue, "power total overflows 64-bit milliwatts");
  }
  return out;
}

// Term skeleton shared by the closed forms and the per-node oracle: the kinds,
// inclusion flags and unit prices, with zero counts.
struct TermPlan {
  DeviceKind kind;
  bool included;
  // Constant term (OLT): subtotal is the unit price once, whatever the count.
  bool constant = false;
};

std::vector<TermPlan> plan_for(Architecture arch, const PowerOptions& o) {
  if (arch == Architecture::Traditional) {
    return {{DeviceKind::SpineSwitch, true},
            {DeviceKind::LeafSwitch, true},
            {DeviceKind::ServerTransceiver, o.include_server_transceivers}};
  }
  return {{DeviceKind::RackTransceiver, o.include_owc_transceivers},
          {DeviceKind::ApTransceiver, o.include_owc_transceivers},
          {DeviceKind::Olt, true, true},
          {DeviceKind::OpticalSwitch, true},
          {DeviceKind::Nic, true},
          {DeviceKind::LeafSwitch, true},
          {DeviceKind::ServerTransceiver, o.include_server_transceivers}};
}

PowerReport skeleton(Architecture arch, const PowerCatalog& catalog,
                     const PowerOptions& options) {
  PowerReport report;
  report.architecture = arch;
  report.options = options;
  report.catalog = catalog;
  for (const auto& plan : plan_for(arch, options)) {
    auto unit = catalog.get(plan.kind);
    if (plan.included && !unit) {
      throw Error(ErrorCode::MissingCatalogEntry,
                  "no power entry for " + std::string(to_string(plan.kind)));
    }
    report.terms.push_back({plan.kind, 0, unit.value_or(0), 0, plan.included});
  }
  return report;
}

void finish_closed_form(PowerReport& report, Architecture arch) {
  const auto plans = plan_for(arch, report.options);
  report.total_mw = 0;
  for (std::size_t i = 0; i < report.terms.size(); ++i) {
    auto& t = report.terms[i];
    if (!t.included) {
      t.subtotal_mw = 0;
    } else if (plans[i].constant) {
      t.subtotal_mw = t.unit_mw;
    } else {
      t.subtotal_mw = checked_mul(t.count, t.unit_mw);
    }
    report.total_mw = checked_add(report.total_mw, t.subtotal_mw);
  }
}

PowerReport eval_from_census(Architecture arch, const Census& census,
                             const PowerCatalog& catalog, const PowerOptions& options) {
  PowerReport report = skeleton(arch, catalog, options);
  for (auto& t : report.terms) {
    auto source = t.kind;
    if (t.kind == DeviceKind::Nic && options.nic_count_mode == NicCountMode::PerServer) {
      source = DeviceKind::Server;
    }
    t.count = census_count(census, source);
  }
  finish_closed_form(report, arch);
  return report;
}

}  // namespace

PowerReport eval_eq1(const Census& census, const PowerCatalog& catalog,
                     const PowerOptions& options) {
  return eval_from_census(Architecture::Traditional, census, catalog, options);
}

PowerReport eval_eq2(const Census& census, const PowerCatalog& catalog,
                     const PowerOptions& options) {
  if (census_count(census, DeviceKind::Olt) == 0) {
    throw Error(ErrorCode::MissingOlt, "OWC-PON evaluation needs an OLT in the census");
  }
  return eval_from_census(Architecture::OwcPon, census, catalog, options);
}

PowerReport eval_closed_form(const NetworkGraph& graph, const PowerCatalog& catalog,
                             const PowerOptions& options) {
  const auto census = device_census(graph);
  return graph.architecture() == Architecture::Traditional ? eval_eq1(census, catalog, options)
                                                           : eval_eq2(census, catalog, options);
}

PowerReport eval_generic(const NetworkGraph& graph, const PowerCatalog& catalog,
                         const PowerOptions& options) {
  const auto arch = graph.architecture();
  PowerReport report = skeleton(arch, catalog, options);
  const bool nic_per_server =
      arch == Architecture::OwcPon && options.nic_count_mode == NicCountMode::PerServer;

  for (const auto& node : graph.nodes()) {
    DeviceKind billed = node.kind;
    if (nic_per_server) {
      if (node.kind == DeviceKind::Nic) continue;
      if (node.kind == DeviceKind::Server) billed = DeviceKind::Nic;
    }
    for (auto& t : report.terms) {
      if (t.kind != billed) continue;
      ++t.count;
      if (t.included) t.subtotal_mw = checked_add(t.subtotal_mw, t.unit_mw);
      report.total_mw = t.included ? checked_add(report.total_mw, t.unit_mw) : report.total_mw;
    }
  }
  return report;
}

std::string render_percent(const Rational& fraction) {
  return format_decimal(fraction * 100, 1) + "%";
}

Reduction compare(const PowerReport& baseline, const PowerReport& proposed) {
  if (baseline.total_mw == 0) {
    throw Error(ErrorCode::ZeroBaseline, "baseline total is 0 mW");
  }
  Rational fraction(Rational(baseline.total_mw) - Rational(proposed.total_mw));
  fraction /= Rational(baseline.total_mw);
  return {fraction, render_percent(fraction)};
}

std::vector<std::pair<TraditionalSpec, OwcPonSpec>> expand_family(const SweepFamily& family) {
  std::vector<std::pair<TraditionalSpec, OwcPonSpec>> out;
  for (auto racks : family.racks) {
    for (auto groups : family.groups) {
      for (auto servers : family.servers_per_rack) {
        TraditionalSpec t;
        t.num_racks = racks;
        t.servers_per_rack = servers;
        t.num_spine = family.num_spine.value_or(racks);
        OwcPonSpec o;
        o.num_racks = racks;
        o.servers_per_rack = servers;
        o.num_groups = groups;
        o.aps_per_group = groups == 0 ? 0 : racks / groups;
        out.emplace_back(t, o);
      }
    }
  }
  return out;
}

SweepPoint evaluate_point(const TraditionalSpec& traditional, const OwcPonSpec& owc_pon,
                          const CatalogPair& catalogs, const PowerOptions& options) {
  SweepPoint point{traditional, owc_pon, {}, {}, {}, {}};
  try {
    const auto t_graph = build_traditional(traditional);
    const auto o_graph = build_owc_pon(owc_pon);
    point.traditional_report = eval_closed_form(t_graph, catalogs.traditional, options);
    point.owc_pon_report = eval_closed_form(o_graph, catalogs.owc_pon, options);
    point.reduction = compare(*point.traditional_report, *point.owc_pon_report);
  } catch (const Error& e) {
    point.traditional_report.reset();
    point.owc_pon_report.reset();
    point.reduction.reset();
    point.error = e.what();
  }
  return point;
}

std::vector<SweepPoint> scaling_sweep(const SweepFamily& family, const CatalogPair& catalogs,
                                      const PowerOptions& options) {
  return parallel::scaling_sweep(family, catalogs, options);
}

}  // namespace owcpon
