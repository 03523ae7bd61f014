#include "owcpon/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "owcpon/error.hpp"
#include "owcpon/scenario_io.hpp"
#include "owcpon/version.hpp"

namespace owcpon::cli {

namespace {

struct Common {
  std::string scenario_path;
  std::string format;
  std::string out_path;
  std::string arch;
};

// Usage problems detected after CLI11 has accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  Scenario scenario;
  OutputFormat format;
  std::optional<Architecture> arch;
};

Scenario load_scenario(const std::string& path) {
  if (path.empty()) return default_scenario();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + e.what());
  }
}

Context resolve(const Common& c) {
  Context ctx{load_scenario(c.scenario_path), OutputFormat::Table, std::nullopt};
  ctx.format = ctx.scenario.format;
  if (!c.format.empty()) ctx.format = *output_format_from_string(c.format);
  if (!c.arch.empty()) {
    const auto arch = c.arch == "traditional" ? Architecture::Traditional : Architecture::OwcPon;
    if (!ctx.scenario.includes(arch)) {
      throw UsageError("architecture '" + c.arch + "' is not selected by the scenario");
    }
    ctx.arch = arch;
  }
  return ctx;
}

// Single-architecture commands default to owc_pon when the scenario selects both.
Architecture single_arch(const Context& ctx) {
  if (ctx.arch) return *ctx.arch;
  return ctx.scenario.select == ArchitectureSelect::Traditional ? Architecture::Traditional
                                                                : Architecture::OwcPon;
}

std::vector<Architecture> selected_archs(const Context& ctx) {
  if (ctx.arch) return {*ctx.arch};
  std::vector<Architecture> out;
  for (auto a : {Architecture::Traditional, Architecture::OwcPon}) {
    if (ctx.scenario.includes(a)) out.push_back(a);
  }
  return out;
}

NetworkGraph build(const Scenario& s, Architecture arch) {
  return arch == Architecture::Traditional ? build_traditional(s.traditional)
                                           : build_owc_pon(s.owc_pon);
}

const PowerCatalog& catalog_for(const Scenario& s, Architecture arch) {
  return arch == Architecture::Traditional ? s.catalogs.traditional : s.catalogs.owc_pon;
}

// Commands that evaluate a graph refuse structurally invalid ones.
void require_valid(const NetworkGraph& g) {
  auto violations = validate(g);
  if (violations.empty()) return;
  std::string msg = std::string(to_string(g.architecture())) + " graph is invalid:";
  for (const auto& v : violations) msg += " " + to_string(v);
  throw Error(ErrorCode::ValidationFailed, msg);
}

struct Result {
  std::string text;
  int code = kOk;
};

using Handler = std::function<Result(const Context&)>;

std::vector<std::uint32_t> parse_list(const std::string& text, const char* flag) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      auto v = std::stoul(item, &used);
      if (used != item.size() || v == 0 || v > 1u << 20) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw UsageError(std::string(flag) + ": expected a comma-separated list of positive "
                                           "integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"OWC-PON vs spine-and-leaf data-centre power and topology toolkit", "owcpon"};
  app.set_version_flag("--version", std::string(kToolkitVersion));
  app.require_subcommand(1);

  Common common;
  std::string route_src, route_dst;
  std::string sweep_racks, sweep_groups, sweep_servers;
  Handler handler;

  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-s,--scenario", common.scenario_path,
                    "Scenario file (default: built-in reproduction profile)");
    sub->add_option("-f,--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("-o,--out", common.out_path, "Write output to this file instead of stdout");
    sub->add_option("--arch", common.arch, "Restrict to one architecture")
        ->check(CLI::IsMember({"traditional", "owc_pon"}));
    sub->callback([&handler, h] { handler = h; });
    return sub;
  };

  add("build", "Construct the fabric and print its graph and device census",
      [](const Context& ctx) {
        return Result{emit_graph(build(ctx.scenario, single_arch(ctx)), ctx.format)};
      });

  add("validate", "Check the fabric's structural rules (exit 2 on violations)",
      [](const Context& ctx) {
        auto g = build(ctx.scenario, single_arch(ctx));
        auto violations = validate(g);
        return Result{emit_violations(g, violations, ctx.format),
                      violations.empty() ? kOk : kInvalid};
      });

  add("power", "Evaluate the closed-form power model", [](const Context& ctx) {
    std::vector<PowerReport> reports;
    for (auto arch : selected_archs(ctx)) {
      auto g = build(ctx.scenario, arch);
      require_valid(g);
      reports.push_back(eval_closed_form(g, catalog_for(ctx.scenario, arch), ctx.scenario.options));
    }
    return Result{emit_power(reports, ctx.format)};
  });

  add("compare", "Relative power reduction of OWC-PON against spine-and-leaf",
      [](const Context& ctx) {
        if (ctx.scenario.select != ArchitectureSelect::Both || ctx.arch) {
          throw UsageError("compare needs both architectures");
        }
        auto t = build(ctx.scenario, Architecture::Traditional);
        auto o = build(ctx.scenario, Architecture::OwcPon);
        require_valid(t);
        require_valid(o);
        const auto& s = ctx.scenario;
        auto base = eval_closed_form(t, s.catalogs.traditional, s.options);
        auto prop = eval_closed_form(o, s.catalogs.owc_pon, s.options);
        return Result{emit_reduction(base, prop, compare(base, prop), ctx.format)};
      });

  auto* route = add("route", "Resolve the path between two servers (dst may be 'external')",
                    [&route_src, &route_dst](const Context& ctx) {
                      auto g = build(ctx.scenario, single_arch(ctx));
                      require_valid(g);
                      auto r = route_dst == node_ids::kExternal
                                   ? route_to_external(g, route_src)
                                   : resolve_route(g, route_src, route_dst, ctx.scenario.routing);
                      return Result{emit_route(g, r, ctx.format)};
                    });
  route->add_option("src", route_src, "Source server id, e.g. rack0/server0")->required();
  route->add_option("dst", route_dst, "Destination server id or 'external'")->required();

  add("summary", "Hop-count histogram over all ordered server pairs", [](const Context& ctx) {
    auto g = build(ctx.scenario, single_arch(ctx));
    require_valid(g);
    return Result{emit_summary(all_pairs_summary(g, ctx.scenario.routing), ctx.format)};
  });

  add("simulate", "Assign the scenario's [traffic] demands and report link loads",
      [](const Context& ctx) {
        if (!ctx.scenario.traffic) throw UsageError("scenario has no [traffic] section");
        auto g = build(ctx.scenario, single_arch(ctx));
        require_valid(g);
        auto tm = scenario_traffic(*ctx.scenario.traffic, g);
        auto report = assign(g, tm, ctx.scenario.routing);
        return Result{emit_link_loads(g, report, ctx.scenario.traffic->top_n, ctx.format)};
      });

  auto* sweep = add("sweep", "Evaluate both power models over a parameter family",
                    [&sweep_racks, &sweep_groups, &sweep_servers](const Context& ctx) {
                      auto family = ctx.scenario.sweep;
                      if (!sweep_racks.empty()) family.racks = parse_list(sweep_racks, "--racks");
                      if (!sweep_groups.empty()) {
                        family.groups = parse_list(sweep_groups, "--groups");
                      }
                      if (!sweep_servers.empty()) {
                        family.servers_per_rack = parse_list(sweep_servers, "--servers");
                      }
                      auto points =
                          scaling_sweep(family, ctx.scenario.catalogs, ctx.scenario.options);
                      bool failed = std::any_of(points.begin(), points.end(),
                                                [](const SweepPoint& p) { return !p.ok(); });
                      return Result{emit_sweep(points, ctx.format), failed ? kEvaluation : kOk};
                    });
  sweep->add_option("--racks", sweep_racks, "Comma-separated rack counts");
  sweep->add_option("--groups", sweep_groups, "Comma-separated group counts");
  sweep->add_option("--servers", sweep_servers, "Comma-separated servers-per-rack counts");

  add("benchmark", "Full power benchmark report for both architectures", [](const Context& ctx) {
    if (ctx.arch) throw UsageError("benchmark always covers both architectures");
    return Result{emit_report(run_benchmark(ctx.scenario), ctx.format)};
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Context ctx = resolve(common);
    Result result = handler(ctx);
    if (common.out_path.empty()) {
      out << result.text;
    } else {
      std::ofstream file(common.out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw UsageError("cannot write '" + common.out_path + "'");
      file << result.text;
      if (!file.flush()) throw UsageError("failed writing '" + common.out_path + "'");
    }
    return result.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::UnknownKey:
        return kUsage;
      case ErrorCode::ValidationFailed:
        return kInvalid;
      case ErrorCode::UnknownServer:
        // A bad route endpoint is a usage problem, not an evaluation failure.
        return kUsage;
      default:
        return kEvaluation;
    }
  }
}

}  // namespace owcpon::cli
