// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "owcpon/cli.hpp"
#include "owcpon/error.hpp"
#include "owcpon/kernels.hpp"
#include "owcpon/scenario_io.hpp"
#include "support/mutations.hpp"
#include "support/oracles.hpp"
#include "support/scenario_gen.hpp"

using namespace owcpon;

namespace {

// Collects the first failing check of a criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0 = untimed
  std::function<std::string(Check&)> body;  // returns a short summary
};

// ---------------------------------------------------------------------------

std::string benchmark_reproduction(Check& c) {
  const auto report = run_benchmark(parse_scenario("profile = reproduction\n"));
  // Hand computation: 8*660 + 8*508 and 480 + 2*75 + 8*45 + 8*508, in mW.
  const Milliwatts traditional = 8 * 660000 + 8 * 508000;
  const Milliwatts proposed = 480000 + 2 * 75000 + 8 * 45000 + 8 * 508000;
  c.require(traditional == 9344000 && proposed == 5054000, "hand computation");
  c.require(report.traditional.power.total_mw == traditional, "traditional total");
  c.require(report.owc_pon.power.total_mw == proposed, "OWC-PON total");
  c.require(report.reduction.fraction == Rational(traditional - proposed, traditional),
            "exact reduction");
  c.require(report.reduction.percent == "45.9%", "rendered reduction");
  const Rational pct = report.reduction.fraction * 100;
  c.require(pct >= 45 && pct <= 46, "reduction within [45.0%, 46.0%]");
  c.require(report.matches_reference, "reference flag");
  return format_watts(report.traditional.power.total_mw) + " W vs " +
         format_watts(report.owc_pon.power.total_mw) + " W, " + report.reduction.percent;
}

std::string profile_sensitivity(Check& c) {
  const auto aw = run_benchmark(parse_scenario("profile = as-written\n"));
  c.require(aw.traditional.power.total_mw == 9536000, "as-written traditional 9536 W");
  c.require(aw.owc_pon.power.total_mw == 5246000, "as-written OWC-PON 5246 W");
  c.require(aw.reduction.percent == "45.0%", "as-written 45.0%");

  const auto ps = run_benchmark(
      parse_scenario("profile = as-written\n[options]\nnic_count_mode = per_server\n"));
  c.require(ps.owc_pon.power.total_mw == 7766000, "per-server OWC-PON 7766 W");
  c.require(ps.reduction.percent == "18.6%", "per-server 18.6%");
  c.require(!ps.matches_reference, "per-server flagged as non-reproducing");
  c.require(emit_report(ps, OutputFormat::Table).find("NOT reproduced") != std::string::npos,
            "per-server table flag");
  return "as-written " + aw.reduction.percent + ", per-server NIC " + ps.reduction.percent +
         " (flagged)";
}

std::string oracle_equivalence(Check& c) {
  std::mt19937_64 rng(46);
  const PowerOptions options[] = {PowerOptions::reproduction(), PowerOptions::as_written(),
                                  {true, true, NicCountMode::PerAp},
                                  {true, true, NicCountMode::PerServer}};
  int specs = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& opts = options[i % 4];
    auto o = build_owc_pon(oracle::random_owc_pon(rng));
    auto t = build_traditional(oracle::random_traditional(rng));
    auto ocat = PowerCatalog::owc_pon_default();
    auto tcat = PowerCatalog::traditional_default();
    for (auto* cat : {&ocat, &tcat}) {
      for (auto& [kind, mw] : cat->entries) {
        mw = std::uniform_int_distribution<Milliwatts>(0, 1000000)(rng);
      }
    }
    const auto og = eval_generic(o, ocat, opts);
    const auto oc = eval_closed_form(o, ocat, opts);
    const auto tg = eval_generic(t, tcat, opts);
    const auto tc = eval_closed_form(t, tcat, opts);
    c.require(og.total_mw == oc.total_mw && og == oc, "OWC-PON spec " + std::to_string(i));
    c.require(tg.total_mw == tc.total_mw && tg == tc, "traditional spec " + std::to_string(i));
    specs += 2;
  }
  return std::to_string(specs) + " randomized specs, exact mW equality";
}

std::string routing_invariants(Check& c) {
  const auto g = build_owc_pon({});
  const auto servers = g.servers();
  c.require(servers.size() == 64, "64 servers");
  HopHistogram h;
  std::size_t pairs = 0;
  for (auto a : servers) {
    for (auto b : servers) {
      Route r;
      try {
        r = resolve_route(g, a, b);
      } catch (const Error& e) {
        c.require(false, std::string("pair failed to resolve: ") + e.what());
        continue;
      }
      ++pairs;
      ++h[{r.path_class, r.hop_count()}];
      const auto back = resolve_route(g, b, a);
      c.require(std::vector<std::size_t>(back.links.rbegin(), back.links.rend()) == r.links &&
                    back.path_class == r.path_class,
                "symmetry " + g.nodes()[a].id + " / " + g.nodes()[b].id);
      c.require(oracle::permitted_hops(g, a, b, true) == r.hop_count(),
                "shortest-path oracle " + g.nodes()[a].id + " -> " + g.nodes()[b].id);
    }
    const auto ext = route_to_external(g, a);
    const bool gateway = g.nodes()[a].rack && *g.nodes()[a].rack % 4 == 0;
    c.require(ext.hop_count() == (gateway ? 6u : 8u), "external hop count");
  }
  c.require(pairs == 4096, "4096 pairs");

  // Frozen class table for the default fabric.
  const HopHistogram frozen{{{PathClass::SameServer, 0}, 64},
                            {{PathClass::IntraRack, 2}, 448},
                            {{PathClass::InterRackIntraGroup, 10}, 1536},
                            {{PathClass::InterGroupDirect, 9}, 512},
                            {{PathClass::InterGroupRelayed, 12}, 768},
                            {{PathClass::InterGroupRelayed, 14}, 768}};
  c.require(h == frozen, "class/hop table");
  c.require(all_pairs_summary(g) == frozen, "all_pairs_summary");

  // Relayed sub-case with both endpoints on gateways needs a fabric without
  // the index-matched direct links.
  OwcPonSpec bare;
  bare.adjacency = AdjacencyPolicy::None;
  const auto b = build_owc_pon(bare);
  c.require(resolve_route(b, "rack0/server0", "rack4/server0").hop_count() == 10, "relayed 10");
  c.require(resolve_route(b, "rack0/server0", "rack5/server0").hop_count() == 12, "relayed 12");
  c.require(resolve_route(b, "rack1/server0", "rack5/server0").hop_count() == 14, "relayed 14");
  return std::to_string(pairs) + " pairs; 2/10/9, relayed 10/12/14, external 6/8";
}

std::string validation_suite(Check& c) {
  c.require(validate(build_owc_pon({})).empty(), "default fabric valid");
  c.require(oracle::structural_problems(build_owc_pon({})).empty(), "independent checker");
  int matched = 0;
  for (const auto& m : oracle::default_mutations()) {
    const auto v = validate(m.graph);
    const bool ok = v == std::vector<Violation>{m.expected};
    c.require(ok, m.name + " -> expected " + to_string(m.expected));
    matched += ok;
  }
  return "default clean; " + std::to_string(matched) + "/6 mutations flagged exactly";
}

std::string traffic_conservation(Check& c) {
  const auto g = build_owc_pon({});
  const Rational d(1, 3);
  const auto tm = generate_traffic(TrafficPattern::uniform(d), g);
  const auto report = assign(g, tm);
  const auto expected = oracle::brute_force_uniform(g, d);
  c.require(report.links.size() == expected.size(), "link count");
  std::size_t loaded = 0;
  for (const auto& l : report.links) {
    c.require(expected.at(l.link_id) == l.load_gbps, "load on " + l.link_id);
    loaded += l.load_gbps > 0;
  }
  c.require(report.carried_gbps == d * 64 * 63, "carried total");
  c.require(report == serial::assign(g, tm, {}), "parallel == serial");
  return std::to_string(report.links.size()) + " links (" + std::to_string(loaded) +
         " loaded) match exactly";
}

std::string determinism(Check& c) {
  auto run = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
  };
  const std::string traffic =
      (std::filesystem::temp_directory_path() / "owcpon_acceptance_traffic.scn").string();
  {
    std::ofstream f(traffic);
    f << "profile = reproduction\n[traffic]\npattern = intra_rack_heavy\nfraction = 0.7\n"
         "demand = 2\nflow = rack0/server0 rack5/server3 1.5\n";
  }
  const std::vector<std::vector<std::string>> commands = {
      {"build"},   {"validate"}, {"power"},   {"compare"},   {"route", "rack1/server0", "rack6/server2"},
      {"summary"}, {"simulate", "-s", traffic}, {"sweep", "--racks", "4,8,16"}, {"benchmark"}};
  int runs = 0;
  for (const auto& base : commands) {
    for (const char* fmt : {"json", "csv", "table"}) {
      auto args = base;
      args.insert(args.end(), {"--format", fmt});
      const auto a = run(args);
      const auto b = run(args);
      c.require(a.rfind("0\n", 0) == 0, base.front() + " exit status");
      c.require(a == b, base.front() + " --format " + fmt + " differs between runs");
      ++runs;
    }
  }
  std::mt19937_64 rng(777);
  const int scenarios = 150;
  for (int i = 0; i < scenarios; ++i) {
    const auto s = oracle::random_scenario(rng);
    const auto text = serialize_scenario(s);
    c.require(parse_scenario(text) == s, "round trip of generated scenario " + std::to_string(i));
  }
  return std::to_string(runs) + " subcommand/format pairs x2 identical; " +
         std::to_string(scenarios) + " scenarios round-trip";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "benchmark reproduction", 1.0, benchmark_reproduction},
      {2, "profile sensitivity", 0, profile_sensitivity},
      {3, "oracle equivalence", 10.0, oracle_equivalence},
      {4, "routing invariants", 5.0, routing_invariants},
      {5, "validation suite", 0, validation_suite},
      {6, "traffic conservation", 0, traffic_conservation},
      {7, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    std::string summary;
    const auto start = std::chrono::steady_clock::now();
    try {
      summary = cr.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      check.require(false, "took " + std::to_string(secs) + " s");
    }
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs << " s";
    if (cr.limit_seconds > 0) time << " < " << cr.limit_seconds << " s";
    std::cout << (check.ok() ? "PASS" : "FAIL") << " criterion " << cr.number << " ("
              << cr.title << "): " << (check.ok() ? summary : check.failure()) << " ["
              << time.str() << "]\n";
    failed += !check.ok();
  }
  return failed;
}
