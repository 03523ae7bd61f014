#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "owcpon/power_model.hpp"
#include "owcpon/routing.hpp"
#include "owcpon/topology.hpp"
#include "owcpon/traffic_sim.hpp"

namespace owcpon {

enum class ArchitectureSelect : std::uint8_t { Traditional, OwcPon, Both };
enum class OutputFormat : std::uint8_t { Table, Json, Csv };

std::string_view to_string(ArchitectureSelect select);
std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> output_format_from_string(std::string_view name);

struct Flow {
  std::string src;
  std::string dst;
  Rational gbps;

  bool operator==(const Flow&) const = default;
};

struct TrafficSection {
  std::optional<TrafficPattern> pattern;
  std::vector<Flow> flows;
  std::uint32_t top_n = 10;

  bool operator==(const TrafficSection&) const = default;
};

// Fully resolved scenario: every field holds a concrete value after parsing.
struct Scenario {
  std::optional<std::string> profile;
  ArchitectureSelect select = ArchitectureSelect::Both;
  TraditionalSpec traditional;
  OwcPonSpec owc_pon;
  CatalogPair catalogs;
  PowerOptions options;
  RoutingPolicy routing;
  std::optional<TrafficSection> traffic;
  SweepFamily sweep{{8}, {2}, {8}, std::nullopt};
  OutputFormat format = OutputFormat::Table;

  bool includes(Architecture arch) const {
    return select == ArchitectureSelect::Both ||
           (arch == Architecture::Traditional) == (select == ArchitectureSelect::Traditional);
  }

  bool operator==(const Scenario&) const = default;
};

// Line-oriented `key = value` text with [section] headers; see README for the
// key reference. The file must name a `profile` or an `[architecture] select`.
// Throws ParseError carrying line/column with code ParseError, UnknownKey or
// InvalidValue.
Scenario parse_scenario(std::string_view text);

// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

// The scenario a file containing only `profile = reproduction` resolves to.
Scenario default_scenario();

// Builds the traffic matrix a scenario's [traffic] section describes.
TrafficMatrix scenario_traffic(const TrafficSection& section, const NetworkGraph& graph);

// ---------------------------------------------------------------------------

struct ArchitectureResult {
  Architecture architecture = Architecture::Traditional;
  Census census;
  PowerReport power;

  bool operator==(const ArchitectureResult&) const = default;
};

inline constexpr int kReferenceReductionPercent = 46;

struct BenchmarkReport {
  ArchitectureResult traditional;
  ArchitectureResult owc_pon;
  Reduction reduction;
  // The reduction rounds to the 46% reference figure at whole-percent precision.
  bool matches_reference = false;
  std::string toolkit_version;
  std::string scenario_text;

  bool operator==(const BenchmarkReport&) const = default;
};

inline constexpr std::string_view kBenchmarkSchema = "owcpon.benchmark/1";

bool matches_reference_reduction(const Rational& fraction);

// Builds and validates both fabrics, evaluates both closed forms and compares
// them. Throws Error(SpecMismatch) when the scenario does not select both
// architectures and Error(ValidationFailed) for a structurally invalid graph.
BenchmarkReport run_benchmark(const Scenario& scenario);

std::string emit_report(const BenchmarkReport& report, OutputFormat format);

// Emitters behind the CLI subcommands. Output depends only on the inputs.
std::string emit_graph(const NetworkGraph& graph, OutputFormat format);
std::string emit_violations(const NetworkGraph& graph, const std::vector<Violation>& violations,
                            OutputFormat format);
std::string emit_power(const std::vector<PowerReport>& reports, OutputFormat format);
std::string emit_reduction(const PowerReport& baseline, const PowerReport& proposed,
                           const Reduction& reduction, OutputFormat format);
std::string emit_route(const NetworkGraph& graph, const Route& route, OutputFormat format);
std::string emit_summary(const HopHistogram& histogram, OutputFormat format);
std::string emit_link_loads(const NetworkGraph& graph, const LinkLoadReport& report,
                            std::size_t top_n, OutputFormat format);
std::string emit_sweep(const std::vector<SweepPoint>& points, OutputFormat format);

}  // namespace owcpon
