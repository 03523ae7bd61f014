#include <doctest.h>

#include <json.hpp>
#include <random>

#include "owcpon/error.hpp"
#include "owcpon/scenario_io.hpp"
#include "support/scenario_gen.hpp"

using namespace owcpon;

namespace {

ParseError parse_failure(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError for: " << text);
  return ParseError(ErrorCode::ParseError, 0, 0, "");
}

}  // namespace

TEST_CASE("minimal reproduction file resolves to the documented defaults") {
  auto s = parse_scenario("profile = reproduction\n");
  CHECK(s.profile == std::optional<std::string>("reproduction"));
  CHECK(s.select == ArchitectureSelect::Both);
  CHECK(s.traditional == TraditionalSpec{8, 8, 8, {}});
  CHECK(s.owc_pon == OwcPonSpec{});
  CHECK(s.catalogs.traditional == PowerCatalog::traditional_default());
  CHECK(s.catalogs.owc_pon == PowerCatalog::owc_pon_default());
  CHECK(s.options == PowerOptions::reproduction());
  CHECK(s.routing == RoutingPolicy{});
  CHECK_FALSE(s.traffic.has_value());
  CHECK(s == default_scenario());
}

TEST_CASE("empty file needs a selector") {
  for (const char* text : {"", "\n\n# only a comment\n", "[options]\nnic_count_mode = per_ap\n"}) {
    auto e = parse_failure(text);
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("architecture selector required") != std::string::npos);
  }
  CHECK(parse_scenario("[architecture]\nselect = owc_pon\n").select == ArchitectureSelect::OwcPon);
}

TEST_CASE("single-field catalog override") {
  auto s = parse_scenario("profile = reproduction\n[catalog]\nowc_pon.olt = 500\n");
  CHECK(*s.catalogs.owc_pon.get(DeviceKind::Olt) == 500000);
  auto expected = default_scenario();
  expected.catalogs.owc_pon.set(DeviceKind::Olt, 500000);
  CHECK(s == expected);

  auto t = parse_scenario("profile = reproduction\n[catalog]\nowc_pon.owc_transceiver = 0.125\n");
  CHECK(*t.catalogs.owc_pon.get(DeviceKind::RackTransceiver) == 125);
  CHECK(*t.catalogs.owc_pon.get(DeviceKind::ApTransceiver) == 125);
}

TEST_CASE("profiles and explicit options") {
  CHECK(parse_scenario("profile = as-written").options == PowerOptions::as_written());
  auto s = parse_scenario(
      "profile = as-written\n[options]\nnic_count_mode = per_server  # override\n");
  CHECK(s.options == PowerOptions{false, true, NicCountMode::PerServer});
  auto bare = parse_scenario("[architecture]\nselect = both\n");
  CHECK(bare.options == PowerOptions{});
  CHECK_FALSE(bare.profile.has_value());
}

TEST_CASE("error codes and positions") {
  auto unknown = parse_failure("profile = reproduction\n[options]\n  colour = blue\n");
  CHECK(unknown.code() == ErrorCode::UnknownKey);
  CHECK(unknown.line() == 3);
  CHECK(unknown.column() == 3);

  CHECK(parse_failure("profile = reproduction\n[bogus]\n").code() == ErrorCode::UnknownKey);

  auto neg = parse_failure("profile = reproduction\n[catalog]\ntraditional.spine_switch = -660\n");
  CHECK(neg.code() == ErrorCode::InvalidValue);
  CHECK(neg.line() == 3);
  CHECK(neg.column() == 28);

  CHECK(parse_failure("profile = reproduction\n[catalog]\nowc_pon.nic = 1.2345\n").code() ==
        ErrorCode::InvalidValue);
  CHECK(parse_failure("profile = nonsense\n").code() == ErrorCode::InvalidValue);
  CHECK(parse_failure("profile = reproduction\nprofile = as-written\n").code() ==
        ErrorCode::ParseError);
  CHECK(parse_failure("profile = reproduction\n[options]\n[options]\n").code() ==
        ErrorCode::ParseError);
  CHECK(parse_failure("profile = reproduction\njust words\n").code() == ErrorCode::ParseError);
  CHECK(parse_failure("profile = reproduction\n[options\n").code() == ErrorCode::ParseError);
  CHECK(parse_failure("profile = reproduction\n[architecture]\nowc_pon.racks = -1\n").code() ==
        ErrorCode::InvalidValue);
  CHECK(parse_failure("profile = reproduction\n[traffic]\ndemand = 2\n").code() ==
        ErrorCode::InvalidValue);
  CHECK(parse_failure("profile = reproduction\n[traffic]\npattern = uniform\ndemand = -2\n")
            .code() == ErrorCode::InvalidValue);
  CHECK(parse_failure("profile = reproduction\n[traffic]\nflow = a b\n").code() ==
        ErrorCode::InvalidValue);
}

TEST_CASE("traffic section") {
  auto s = parse_scenario(
      "profile = reproduction\n"
      "[traffic]\n"
      "pattern = hotspot_rack\n"
      "rack = 3\n"
      "demand = 1/2\n"
      "top = 4\n"
      "flow = rack0/server0 rack1/server0 2.5\n"
      "flow = rack0/server0 rack1/server0 0.5\n");
  REQUIRE(s.traffic);
  CHECK(*s.traffic->pattern == TrafficPattern::hotspot(3, Rational(1, 2)));
  CHECK(s.traffic->top_n == 4);
  CHECK(s.traffic->flows.size() == 2);
  auto g = build_owc_pon(s.owc_pon);
  auto tm = scenario_traffic(*s.traffic, g);
  CHECK(tm.total() == Rational(56 * 8, 2) + 3);
}

TEST_CASE("architecture keys") {
  auto s = parse_scenario(
      "[architecture]\n"
      "select = owc_pon\n"
      "owc_pon.adjacency = explicit\n"
      "owc_pon.pairs = 0:1-1:2, 0:3-1:0\n"
      "owc_pon.gateway_ap = 1, 2\n"
      "owc_pon.owc_channels = 2\n"
      "owc_pon.capacity.owc = 2.5\n"
      "traditional.capacity.fiber = 100\n");
  CHECK(s.owc_pon.adjacency == AdjacencyPolicy::ExplicitPairs);
  CHECK(s.owc_pon.explicit_pairs ==
        std::vector<std::pair<ApRef, ApRef>>{{{0, 1}, {1, 2}}, {{0, 3}, {1, 0}}});
  CHECK(s.owc_pon.gateway_ap == std::vector<std::uint32_t>{1, 2});
  CHECK(s.owc_pon.owc_channels == 2);
  CHECK(s.owc_pon.capacities.owc == Rational(5, 2));
  CHECK(s.traditional.capacities.fiber == 100);
}

TEST_CASE("round trip over generated scenarios") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 200; ++i) {
    auto s = oracle::random_scenario(rng);
    auto text = serialize_scenario(s);
    CAPTURE(text);
    auto back = parse_scenario(text);
    CHECK(back == s);
    CHECK(serialize_scenario(back) == text);
  }
}

TEST_CASE("benchmark runner") {
  auto r = run_benchmark(default_scenario());
  CHECK(r.traditional.power.total_mw == 9344000);
  CHECK(r.owc_pon.power.total_mw == 5054000);
  CHECK(r.reduction.percent == "45.9%");
  CHECK(r.matches_reference);
  CHECK(r.scenario_text == serialize_scenario(default_scenario()));

  auto aw = run_benchmark(parse_scenario("profile = as-written"));
  CHECK(aw.reduction.percent == "45.0%");
  CHECK(aw.matches_reference == false);  // rounds to 45, not the reference 46

  auto ps = run_benchmark(parse_scenario("profile = as-written\n[options]\nnic_count_mode = per_server"));
  CHECK(ps.owc_pon.power.total_mw == 7766000);
  CHECK(ps.reduction.percent == "18.6%");
  CHECK_FALSE(ps.matches_reference);

  auto only = default_scenario();
  only.select = ArchitectureSelect::OwcPon;
  CHECK_THROWS_AS(run_benchmark(only), Error);

  auto bad = default_scenario();
  bad.owc_pon.num_racks = 6;
  try {
    run_benchmark(bad);
    FAIL("expected SpecMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecMismatch);
    CHECK(std::string(e.what()).find("reproduction") != std::string::npos);
  }
}

TEST_CASE("report emission") {
  auto r = run_benchmark(default_scenario());
  for (auto f : {OutputFormat::Json, OutputFormat::Csv, OutputFormat::Table}) {
    CHECK(emit_report(r, f) == emit_report(run_benchmark(default_scenario()), f));
  }

  auto csv = emit_report(r, OutputFormat::Csv);
  CHECK(csv.rfind("architecture,device_kind,count,unit_mw,subtotal_mw,included\n", 0) == 0);
  CHECK(csv.find("traditional,SpineSwitch,8,660000,5280000,true\n") != std::string::npos);
  CHECK(csv.find("traditional,LeafSwitch,8,508000,4064000,true\n") != std::string::npos);
  CHECK(csv.find("traditional,TOTAL,,,9344000,\n") != std::string::npos);
  CHECK(csv.find("owc_pon,Olt,1,480000,480000,true\n") != std::string::npos);
  CHECK(csv.find("owc_pon,TOTAL,,,5054000,\n") != std::string::npos);

  auto j = nlohmann::json::parse(emit_report(r, OutputFormat::Json));
  CHECK(j["schema"] == std::string(kBenchmarkSchema));
  CHECK(j["architectures"]["traditional"]["power"]["total_mw"].get<Milliwatts>() == 9344000);
  CHECK(j["architectures"]["owc_pon"]["power"]["total_mw"].get<Milliwatts>() == 5054000);
  CHECK(j["architectures"]["owc_pon"]["census"]["Nic"].get<int>() == 8);
  CHECK(j["reduction"]["percent"] == "45.9%");
  CHECK(j["reduction"]["fraction"] == "2145/4672");
  CHECK(j["matches_reference"] == true);
  CHECK(parse_scenario(j["scenario"].get<std::string>()) == default_scenario());
  for (const auto& t : j["architectures"]["owc_pon"]["power"]["terms"]) {
    const auto& term = *r.owc_pon.power.term(*device_kind_from_string(t["kind"].get<std::string>()));
    CHECK(t["subtotal_mw"].get<Milliwatts>() == term.subtotal_mw);
    CHECK(t["unit_mw"].get<Milliwatts>() == term.unit_mw);
  }

  auto table = emit_report(r, OutputFormat::Table);
  CHECK(table.find("9344") != std::string::npos);
  CHECK(table.find("5054") != std::string::npos);
  CHECK(table.find("45.9%") != std::string::npos);

  auto ps = run_benchmark(parse_scenario("profile = as-written\n[options]\nnic_count_mode = per_server"));
  CHECK(emit_report(ps, OutputFormat::Table).find("NOT reproduced") != std::string::npos);
  CHECK(nlohmann::json::parse(emit_report(ps, OutputFormat::Json))["matches_reference"] == false);
}

TEST_CASE("other emitters produce parseable JSON") {
  auto g = build_owc_pon({});
  auto graph = nlohmann::json::parse(emit_graph(g, OutputFormat::Json));
  CHECK(graph["nodes"].size() == g.nodes().size());
  CHECK(graph["links"].size() == 103);
  auto v = nlohmann::json::parse(emit_violations(g, validate(g), OutputFormat::Json));
  CHECK(v["valid"] == true);
  auto route = nlohmann::json::parse(
      emit_route(g, resolve_route(g, "rack0/server0", "rack1/server0"), OutputFormat::Json));
  CHECK(route["hop_count"] == 10);
  CHECK(route["class"] == "InterRackIntraGroup");
  auto summary = nlohmann::json::parse(emit_summary(all_pairs_summary(g), OutputFormat::Json));
  CHECK(summary["total_pairs"] == 4096);
  auto loads = nlohmann::json::parse(emit_link_loads(
      g, assign(g, generate_traffic(TrafficPattern::uniform(1), g)), 5, OutputFormat::Json));
  CHECK(loads["bottlenecks"].size() == 5);
  auto sweep = nlohmann::json::parse(
      emit_sweep(scaling_sweep({{4, 8}, {2}, {8}, std::nullopt}, {}, {}), OutputFormat::Json));
  CHECK(sweep["points"].size() == 2);
}
