#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "owcpon/error.hpp"
#include "owcpon/scenario_io.hpp"
#include "owcpon/version.hpp"

namespace owcpon {

using Json = nlohmann::ordered_json;

bool matches_reference_reduction(const Rational& fraction) {
  // Whole-percent rounding, half away from zero.
  return format_decimal(fraction * 100, 0) == std::to_string(kReferenceReductionPercent);
}

namespace {

ArchitectureResult evaluate(const NetworkGraph& graph, const PowerCatalog& catalog,
                            const PowerOptions& options) {
  if (auto violations = validate(graph); !violations.empty()) {
    std::string msg = std::string(to_string(graph.architecture())) + " graph is invalid:";
    for (const auto& v : violations) msg += " " + to_string(v);
    throw Error(ErrorCode::ValidationFailed, msg);
  }
  return {graph.architecture(), device_census(graph),
          eval_closed_form(graph, catalog, options)};
}

}  // namespace

BenchmarkReport run_benchmark(const Scenario& scenario) {
  if (scenario.select != ArchitectureSelect::Both) {
    throw Error(ErrorCode::SpecMismatch, "benchmark needs [architecture] select = both");
  }
  BenchmarkReport report;
  try {
    report.traditional = evaluate(build_traditional(scenario.traditional),
                                  scenario.catalogs.traditional, scenario.options);
    report.owc_pon = evaluate(build_owc_pon(scenario.owc_pon), scenario.catalogs.owc_pon,
                              scenario.options);
    report.reduction = compare(report.traditional.power, report.owc_pon.power);
  } catch (const Error& e) {
    throw Error(e.code(), "benchmark (profile " + scenario.profile.value_or("custom") +
                              "): " + e.message());
  }
  report.matches_reference = matches_reference_reduction(report.reduction.fraction);
  report.toolkit_version = std::string(kToolkitVersion);
  report.scenario_text = serialize_scenario(scenario);
  return report;
}

namespace {

std::string decimal(const Rational& r) { return format_decimal(r, 6); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json census_json(const Census& census) {
  Json j = Json::object();
  for (auto kind : kAllDeviceKinds) j[std::string(to_string(kind))] = census_count(census, kind);
  return j;
}

Json options_json(const PowerOptions& o) {
  return Json{{"include_owc_transceivers", o.include_owc_transceivers},
              {"include_server_transceivers", o.include_server_transceivers},
              {"nic_count_mode", to_string(o.nic_count_mode)}};
}

Json power_json(const PowerReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    terms.push_back(Json{{"kind", to_string(t.kind)},
                         {"count", t.count},
                         {"unit_mw", t.unit_mw},
                         {"subtotal_mw", t.subtotal_mw},
                         {"included", t.included}});
  }
  return Json{{"architecture", to_string(r.architecture)},
              {"terms", std::move(terms)},
              {"total_mw", r.total_mw},
              {"total_w", format_watts(r.total_mw)},
              {"options", options_json(r.options)}};
}

Json reduction_json(const Reduction& red) {
  return Json{{"fraction", format_rational(red.fraction)},
              {"decimal", decimal(red.fraction)},
              {"percent", red.percent}};
}

void power_csv_rows(std::ostream& os, const PowerReport& r) {
  const auto arch = to_string(r.architecture);
  for (const auto& t : r.terms) {
    os << arch << "," << to_string(t.kind) << "," << t.count << "," << t.unit_mw << ","
       << t.subtotal_mw << "," << (t.included ? "true" : "false") << "\n";
  }
  os << arch << ",TOTAL,,," << r.total_mw << ",\n";
}

constexpr std::string_view kPowerCsvHeader =
    "architecture,device_kind,count,unit_mw,subtotal_mw,included\n";

void power_table(std::ostream& os, const PowerReport& r) {
  os << to_string(r.architecture) << "\n";
  os << "  " << std::left << std::setw(20) << "device kind" << std::right << std::setw(8)
     << "count" << std::setw(12) << "unit (W)" << std::setw(15) << "subtotal (W)" << "\n";
  for (const auto& t : r.terms) {
    os << "  " << std::left << std::setw(20) << to_string(t.kind) << std::right << std::setw(8)
       << t.count << std::setw(12) << format_watts(t.unit_mw) << std::setw(15)
       << (t.included ? format_watts(t.subtotal_mw) : std::string("excluded")) << "\n";
  }
  os << "  " << std::left << std::setw(40) << "TOTAL" << std::right << std::setw(15)
     << format_watts(r.total_mw) << "\n";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string emit_report(const BenchmarkReport& report, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      Json j;
      j["schema"] = kBenchmarkSchema;
      j["toolkit_version"] = report.toolkit_version;
      j["architectures"] = Json::object();
      for (const auto* a : {&report.traditional, &report.owc_pon}) {
        j["architectures"][std::string(to_string(a->architecture))] =
            Json{{"census", census_json(a->census)}, {"power", power_json(a->power)}};
      }
      j["reduction"] = reduction_json(report.reduction);
      j["reference_percent"] = kReferenceReductionPercent;
      j["matches_reference"] = report.matches_reference;
      j["scenario"] = report.scenario_text;
      return dump(j);
    }
    case OutputFormat::Csv:
      os << kPowerCsvHeader;
      power_csv_rows(os, report.traditional.power);
      power_csv_rows(os, report.owc_pon.power);
      return os.str();
    case OutputFormat::Table:
      os << "Power consumption benchmark (owcpon " << report.toolkit_version << ")\n\n";
      power_table(os, report.traditional.power);
      os << "\n";
      power_table(os, report.owc_pon.power);
      os << "\nreduction: " << report.reduction.percent << "  (exact "
         << format_rational(report.reduction.fraction) << ")\n";
      os << "reference: " << kReferenceReductionPercent << "% -> "
         << (report.matches_reference ? "reproduced" : "NOT reproduced") << "\n";
      return os.str();
  }
  return {};
}

std::string emit_power(const std::vector<PowerReport>& reports, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(power_json(r));
      return dump(Json{{"schema", "owcpon.power/1"}, {"reports", std::move(arr)}});
    }
    case OutputFormat::Csv:
      os << kPowerCsvHeader;
      for (const auto& r : reports) power_csv_rows(os, r);
      return os.str();
    case OutputFormat::Table:
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) os << "\n";
        power_table(os, reports[i]);
      }
      return os.str();
  }
  return {};
}

std::string emit_reduction(const PowerReport& baseline, const PowerReport& proposed,
                           const Reduction& reduction, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json:
      return dump(Json{{"schema", "owcpon.compare/1"},
                       {"baseline_mw", baseline.total_mw},
                       {"proposed_mw", proposed.total_mw},
                       {"reduction", reduction_json(reduction)},
                       {"matches_reference", matches_reference_reduction(reduction.fraction)}});
    case OutputFormat::Csv:
      os << "baseline_mw,proposed_mw,reduction_fraction,reduction_percent\n";
      os << baseline.total_mw << "," << proposed.total_mw << ","
         << format_rational(reduction.fraction) << "," << reduction.percent << "\n";
      return os.str();
    case OutputFormat::Table:
      os << "baseline  (" << to_string(baseline.architecture)
         << "): " << format_watts(baseline.total_mw) << " W\n";
      os << "proposed  (" << to_string(proposed.architecture)
         << "): " << format_watts(proposed.total_mw) << " W\n";
      os << "reduction: " << reduction.percent << "  (exact " << format_rational(reduction.fraction)
         << ")\n";
      return os.str();
  }
  return {};
}

std::string emit_graph(const NetworkGraph& graph, OutputFormat format) {
  std::ostringstream os;
  const auto census = device_census(graph);
  auto opt = [](const std::optional<std::uint32_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  switch (format) {
    case OutputFormat::Json: {
      Json nodes = Json::array();
      for (const auto& n : graph.nodes()) {
        Json jn{{"id", n.id}, {"kind", to_string(n.kind)}};
        if (n.rack) jn["rack"] = *n.rack;
        if (n.group) jn["group"] = *n.group;
        if (n.ap) jn["ap"] = *n.ap;
        jn["ordinal"] = n.ordinal;
        if (n.is_gateway) jn["gateway"] = true;
        if (n.host) jn["host"] = *n.host;
        nodes.push_back(std::move(jn));
      }
      Json links = Json::array();
      for (const auto& l : graph.links()) {
        links.push_back(Json{{"id", l.id},
                             {"a", l.endpoint_a},
                             {"b", l.endpoint_b},
                             {"kind", to_string(l.kind)},
                             {"capacity_gbps", format_rational(l.capacity_gbps)}});
      }
      return dump(Json{{"schema", "owcpon.graph/1"},
                       {"architecture", to_string(graph.architecture())},
                       {"census", census_json(census)},
                       {"nodes", std::move(nodes)},
                       {"links", std::move(links)}});
    }
    case OutputFormat::Csv:
      os << "record,id,kind,rack,group,ap,gateway,endpoint_a,endpoint_b,capacity_gbps\n";
      for (const auto& n : graph.nodes()) {
        os << "node," << csv_field(n.id) << "," << to_string(n.kind) << "," << opt(n.rack) << ","
           << opt(n.group) << "," << opt(n.ap) << "," << (n.is_gateway ? "true" : "false")
           << ",,,\n";
      }
      for (const auto& l : graph.links()) {
        os << "link," << csv_field(l.id) << "," << to_string(l.kind) << ",,,,,"
           << csv_field(l.endpoint_a) << "," << csv_field(l.endpoint_b) << ","
           << format_rational(l.capacity_gbps) << "\n";
      }
      for (auto kind : kAllDeviceKinds) {
        os << "census," << to_string(kind) << ",," << census_count(census, kind) << ",,,,,,\n";
      }
      return os.str();
    case OutputFormat::Table:
      os << to_string(graph.architecture()) << " fabric: " << graph.nodes().size() << " nodes, "
         << graph.links().size() << " links\n\ncensus\n";
      for (auto kind : kAllDeviceKinds) {
        os << "  " << std::left << std::setw(20) << to_string(kind) << std::right << std::setw(8)
           << census_count(census, kind) << "\n";
      }
      os << "\nlinks\n";
      for (const auto& l : graph.links()) {
        os << "  " << std::left << std::setw(6) << to_string(l.kind) << std::right << std::setw(5)
           << format_rational(l.capacity_gbps) << " Gb/s  " << l.endpoint_a << " -- "
           << l.endpoint_b << "\n";
      }
      return os.str();
  }
  return {};
}

std::string emit_violations(const NetworkGraph& graph, const std::vector<Violation>& violations,
                            OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      Json arr = Json::array();
      for (const auto& v : violations) {
        arr.push_back(Json{{"kind", to_string(v.kind)}, {"subject", v.subject}});
      }
      return dump(Json{{"schema", "owcpon.validate/1"},
                       {"architecture", to_string(graph.architecture())},
                       {"valid", violations.empty()},
                       {"violations", std::move(arr)}});
    }
    case OutputFormat::Csv:
      os << "kind,subject\n";
      for (const auto& v : violations) os << to_string(v.kind) << "," << csv_field(v.subject) << "\n";
      return os.str();
    case OutputFormat::Table:
      os << to_string(graph.architecture()) << ": "
         << (violations.empty() ? "valid" : std::to_string(violations.size()) + " violation(s)")
         << "\n";
      for (const auto& v : violations) os << "  " << to_string(v) << "\n";
      return os.str();
  }
  return {};
}

std::string emit_route(const NetworkGraph& graph, const Route& route, OutputFormat format) {
  std::ostringstream os;
  const auto nodes = node_ids_of(graph, route);
  const auto links = link_ids_of(graph, route);
  switch (format) {
    case OutputFormat::Json:
      return dump(Json{{"schema", "owcpon.route/1"},
                       {"class", to_string(route.path_class)},
                       {"hop_count", route.hop_count()},
                       {"nodes", nodes},
                       {"links", links}});
    case OutputFormat::Csv:
      os << "hop,link_id,from,to\n";
      for (std::size_t i = 0; i < links.size(); ++i) {
        os << i + 1 << "," << csv_field(links[i]) << "," << csv_field(nodes[i]) << ","
           << csv_field(nodes[i + 1]) << "\n";
      }
      return os.str();
    case OutputFormat::Table:
      os << to_string(route.path_class) << ", " << route.hop_count() << " hop(s)\n";
      for (std::size_t i = 0; i < nodes.size(); ++i) os << "  " << nodes[i] << "\n";
      return os.str();
  }
  return {};
}

std::string emit_summary(const HopHistogram& histogram, OutputFormat format) {
  std::ostringstream os;
  std::uint64_t total = 0;
  for (const auto& [key, count] : histogram) total += count;
  switch (format) {
    case OutputFormat::Json: {
      Json arr = Json::array();
      for (const auto& [key, count] : histogram) {
        arr.push_back(Json{{"class", to_string(key.first)}, {"hop_count", key.second},
                           {"pairs", count}});
      }
      return dump(Json{{"schema", "owcpon.summary/1"}, {"total_pairs", total},
                       {"histogram", std::move(arr)}});
    }
    case OutputFormat::Csv:
      os << "class,hop_count,pairs\n";
      for (const auto& [key, count] : histogram) {
        os << to_string(key.first) << "," << key.second << "," << count << "\n";
      }
      return os.str();
    case OutputFormat::Table:
      os << std::left << std::setw(22) << "class" << std::right << std::setw(6) << "hops"
         << std::setw(10) << "pairs" << "\n";
      for (const auto& [key, count] : histogram) {
        os << std::left << std::setw(22) << to_string(key.first) << std::right << std::setw(6)
           << key.second << std::setw(10) << count << "\n";
      }
      os << std::left << std::setw(28) << "TOTAL" << std::right << std::setw(10) << total << "\n";
      return os.str();
  }
  return {};
}

std::string emit_link_loads(const NetworkGraph& graph, const LinkLoadReport& report,
                            std::size_t top_n, OutputFormat format) {
  std::ostringstream os;
  const auto top = bottlenecks(report, top_n);
  switch (format) {
    case OutputFormat::Json: {
      Json links = Json::array();
      for (const auto& l : report.links) {
        links.push_back(Json{{"id", l.link_id},
                             {"capacity_gbps", format_rational(l.capacity_gbps)},
                             {"load_gbps", format_rational(l.load_gbps)},
                             {"utilization", format_rational(l.utilization)},
                             {"utilization_decimal", decimal(l.utilization)}});
      }
      Json tops = Json::array();
      for (const auto& l : top) {
        tops.push_back(Json{{"id", l.link_id}, {"utilization", format_rational(l.utilization)}});
      }
      return dump(Json{{"schema", "owcpon.simulate/1"},
                       {"architecture", to_string(graph.architecture())},
                       {"carried_gbps", format_rational(report.carried_gbps)},
                       {"max_utilization", format_rational(report.max_utilization)},
                       {"saturated", report.saturated},
                       {"bottlenecks", std::move(tops)},
                       {"links", std::move(links)}});
    }
    case OutputFormat::Csv:
      os << "link_id,capacity_gbps,load_gbps,utilization,utilization_decimal\n";
      for (const auto& l : report.links) {
        os << csv_field(l.link_id) << "," << format_rational(l.capacity_gbps) << ","
           << format_rational(l.load_gbps) << "," << format_rational(l.utilization) << ","
           << decimal(l.utilization) << "\n";
      }
      return os.str();
    case OutputFormat::Table:
      os << "carried demand: " << decimal(report.carried_gbps) << " Gb/s\n";
      os << "max utilization: " << decimal(report.max_utilization) << "\n";
      os << "saturated links: " << report.saturated.size() << "\n\n";
      os << "top " << top.size() << " bottleneck(s)\n";
      for (const auto& l : top) {
        os << "  " << std::left << std::setw(44) << l.link_id << std::right << std::setw(14)
           << decimal(l.utilization) << "\n";
      }
      return os.str();
  }
  return {};
}

std::string emit_sweep(const std::vector<SweepPoint>& points, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      Json arr = Json::array();
      for (const auto& p : points) {
        Json j{{"racks", p.traditional.num_racks},
               {"servers_per_rack", p.traditional.servers_per_rack},
               {"spines", p.traditional.num_spine},
               {"groups", p.owc_pon.num_groups},
               {"aps_per_group", p.owc_pon.aps_per_group}};
        if (p.ok()) {
          j["traditional_mw"] = p.traditional_report->total_mw;
          j["owc_pon_mw"] = p.owc_pon_report->total_mw;
          j["reduction"] = reduction_json(*p.reduction);
        } else {
          j["error"] = p.error;
        }
        arr.push_back(std::move(j));
      }
      return dump(Json{{"schema", "owcpon.sweep/1"}, {"points", std::move(arr)}});
    }
    case OutputFormat::Csv:
      os << "racks,servers_per_rack,spines,groups,aps_per_group,traditional_mw,owc_pon_mw,"
            "reduction_percent,status\n";
      for (const auto& p : points) {
        os << p.traditional.num_racks << "," << p.traditional.servers_per_rack << ","
           << p.traditional.num_spine << "," << p.owc_pon.num_groups << ","
           << p.owc_pon.aps_per_group << ",";
        if (p.ok()) {
          os << p.traditional_report->total_mw << "," << p.owc_pon_report->total_mw << ","
             << p.reduction->percent << ",ok\n";
        } else {
          os << ",,," << csv_field(p.error) << "\n";
        }
      }
      return os.str();
    case OutputFormat::Table:
      os << std::right << std::setw(6) << "racks" << std::setw(8) << "srv/rk" << std::setw(8)
         << "spines" << std::setw(8) << "groups" << std::setw(14) << "traditional W"
         << std::setw(12) << "owc-pon W" << std::setw(11) << "reduction" << "\n";
      for (const auto& p : points) {
        os << std::setw(6) << p.traditional.num_racks << std::setw(8)
           << p.traditional.servers_per_rack << std::setw(8) << p.traditional.num_spine
           << std::setw(8) << p.owc_pon.num_groups;
        if (p.ok()) {
          os << std::setw(14) << format_watts(p.traditional_report->total_mw) << std::setw(12)
             << format_watts(p.owc_pon_report->total_mw) << std::setw(11) << p.reduction->percent
             << "\n";
        } else {
          os << "  failed: " << p.error << "\n";
        }
      }
      return os.str();
  }
  return {};
}

}  // namespace owcpon
