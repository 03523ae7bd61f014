#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "owcpon/error.hpp"
#include "owcpon/scenario_io.hpp"

namespace owcpon {

std::string_view to_string(ArchitectureSelect select) {
  switch (select) {
    case ArchitectureSelect::Traditional: return "traditional";
    case ArchitectureSelect::OwcPon: return "owc_pon";
    case ArchitectureSelect::Both: return "both";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

std::optional<OutputFormat> output_format_from_string(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

namespace {

// snake_case catalog key for each device kind
std::string_view catalog_key(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::Server: return "server";
    case DeviceKind::ServerTransceiver: return "server_transceiver";
    case DeviceKind::LeafSwitch: return "leaf_switch";
    case DeviceKind::SpineSwitch: return "spine_switch";
    case DeviceKind::RackTransceiver: return "rack_transceiver";
    case DeviceKind::ApTransceiver: return "ap_transceiver";
    case DeviceKind::Nic: return "nic";
    case DeviceKind::OpticalSwitch: return "optical_switch";
    case DeviceKind::Olt: return "olt";
    case DeviceKind::ExternalGateway: return "external_gateway";
  }
  return "?";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// A value token and where it sits in the source.
struct Value {
  std::string_view text;
  std::size_t line;
  std::size_t column;

  [[noreturn]] void invalid(const std::string& why) const {
    throw ParseError(ErrorCode::InvalidValue, line, column,
                     "invalid value '" + std::string(text) + "': " + why);
  }

  std::uint32_t count() const {
    std::uint32_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      invalid("expected a non-negative integer count");
    }
    return out;
  }

  std::vector<std::uint32_t> counts() const {
    std::vector<std::uint32_t> out;
    for (auto part : split(text, ',')) out.push_back(Value{part, line, column}.count());
    return out;
  }

  bool boolean() const {
    if (text == "true") return true;
    if (text == "false") return false;
    invalid("expected true or false");
  }

  Rational rational(bool allow_zero) const {
    auto r = parse_rational(text);
    if (!r) invalid("expected a decimal or p/q rational");
    if (*r < 0 || (!allow_zero && *r == 0)) {
      invalid(allow_zero ? "must be non-negative" : "must be positive");
    }
    return *r;
  }

  Milliwatts watts() const {
    auto mw = parse_watts(text);
    if (!mw) invalid("expected non-negative watts with at most 3 fractional digits");
    return *mw;
  }

  ApRef ap_ref(std::string_view part) const {
    auto colon = part.find(':');
    if (colon == std::string_view::npos) invalid("expected group:ap");
    return {Value{trim(part.substr(0, colon)), line, column}.count(),
            Value{trim(part.substr(colon + 1)), line, column}.count()};
  }

  std::vector<std::pair<ApRef, ApRef>> ap_pairs() const {
    std::vector<std::pair<ApRef, ApRef>> out;
    for (auto part : split(text, ',')) {
      auto dash = part.find('-');
      if (dash == std::string_view::npos) invalid("expected group:ap-group:ap");
      out.emplace_back(ap_ref(trim(part.substr(0, dash))), ap_ref(trim(part.substr(dash + 1))));
    }
    return out;
  }
};

// Explicit option values, applied on top of the profile once the file is read.
struct Pending {
  bool has_selector = false;
  std::optional<bool> include_owc;
  std::optional<bool> include_servers;
  std::optional<NicCountMode> nic_mode;
  std::optional<std::string> pattern;  // "none" or a pattern kind
  std::optional<Rational> demand;
  std::optional<std::uint32_t> rack;
  std::optional<Rational> fraction;
};

using Setter = std::function<void(Scenario&, Pending&, const Value&)>;

void add_capacity_keys(std::map<std::string, Setter>& keys, const std::string& prefix,
                       std::function<LinkCapacities&(Scenario&)> caps) {
  keys[prefix + "capacity.wired"] = [caps](Scenario& s, Pending&, const Value& v) {
    caps(s).wired = v.rational(false);
  };
  keys[prefix + "capacity.owc"] = [caps](Scenario& s, Pending&, const Value& v) {
    caps(s).owc = v.rational(false);
  };
  keys[prefix + "capacity.fiber"] = [caps](Scenario& s, Pending&, const Value& v) {
    caps(s).fiber = v.rational(false);
  };
}

const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> k;

    k[".profile"] = [](Scenario& s, Pending& p, const Value& v) {
      if (!profile_options(v.text)) v.invalid("known profiles are reproduction and as-written");
      s.profile = std::string(v.text);
      p.has_selector = true;
    };
    k[".format"] = [](Scenario& s, Pending&, const Value& v) {
      auto f = output_format_from_string(v.text);
      if (!f) v.invalid("expected table, json or csv");
      s.format = *f;
    };

    k["architecture.select"] = [](Scenario& s, Pending& p, const Value& v) {
      if (v.text == "traditional") {
        s.select = ArchitectureSelect::Traditional;
      } else if (v.text == "owc_pon") {
        s.select = ArchitectureSelect::OwcPon;
      } else if (v.text == "both") {
        s.select = ArchitectureSelect::Both;
      } else {
        v.invalid("expected traditional, owc_pon or both");
      }
      p.has_selector = true;
    };
    k["architecture.traditional.spines"] = [](Scenario& s, Pending&, const Value& v) {
      s.traditional.num_spine = v.count();
    };
    k["architecture.traditional.racks"] = [](Scenario& s, Pending&, const Value& v) {
      s.traditional.num_racks = v.count();
    };
    k["architecture.traditional.servers_per_rack"] = [](Scenario& s, Pending&, const Value& v) {
      s.traditional.servers_per_rack = v.count();
    };
    add_capacity_keys(k, "architecture.traditional.",
                      [](Scenario& s) -> LinkCapacities& { return s.traditional.capacities; });
    k["architecture.owc_pon.racks"] = [](Scenario& s, Pending&, const Value& v) {
      s.owc_pon.num_racks = v.count();
    };
    k["architecture.owc_pon.servers_per_rack"] = [](Scenario& s, Pending&, const Value& v) {
      s.owc_pon.servers_per_rack = v.count();
    };
    k["architecture.owc_pon.groups"] = [](Scenario& s, Pending&, const Value& v) {
      s.owc_pon.num_groups = v.count();
    };
    k["architecture.owc_pon.aps_per_group"] = [](Scenario& s, Pending&, const Value& v) {
      s.owc_pon.aps_per_group = v.count();
    };
    k["architecture.owc_pon.adjacency"] = [](Scenario& s, Pending&, const Value& v) {
      if (v.text == "index_matched") {
        s.owc_pon.adjacency = AdjacencyPolicy::IndexMatched;
      } else if (v.text == "explicit") {
        s.owc_pon.adjacency = AdjacencyPolicy::ExplicitPairs;
      } else if (v.text == "none") {
        s.owc_pon.adjacency = AdjacencyPolicy::None;
      } else {
        v.invalid("expected index_matched, explicit or none");
      }
    };
    k["architecture.owc_pon.pairs"] = [](Scenario& s, Pending&, const Value& v) {
      s.owc_pon.explicit_pairs = v.ap_pairs();
    };
    k["architecture.owc_pon.gateway_ap"] = [](Scenario& s, Pending&, const Value& v) {
      s.owc_pon.gateway_ap = v.counts();
    };
    k["architecture.owc_pon.owc_channels"] = [](Scenario& s, Pending&, const Value& v) {
      s.owc_pon.owc_channels = v.count();
      if (s.owc_pon.owc_channels == 0) v.invalid("need at least one channel");
    };
    add_capacity_keys(k, "architecture.owc_pon.",
                      [](Scenario& s) -> LinkCapacities& { return s.owc_pon.capacities; });

    for (auto kind : kAllDeviceKinds) {
      const std::string name(catalog_key(kind));
      k["catalog.traditional." + name] = [kind](Scenario& s, Pending&, const Value& v) {
        s.catalogs.traditional.set(kind, v.watts());
      };
      k["catalog.owc_pon." + name] = [kind](Scenario& s, Pending&, const Value& v) {
        s.catalogs.owc_pon.set(kind, v.watts());
      };
    }
    k["catalog.owc_pon.owc_transceiver"] = [](Scenario& s, Pending&, const Value& v) {
      s.catalogs.owc_pon.set(DeviceKind::RackTransceiver, v.watts());
      s.catalogs.owc_pon.set(DeviceKind::ApTransceiver, v.watts());
    };

    k["options.include_owc_transceivers"] = [](Scenario&, Pending& p, const Value& v) {
      p.include_owc = v.boolean();
    };
    k["options.include_server_transceivers"] = [](Scenario&, Pending& p, const Value& v) {
      p.include_servers = v.boolean();
    };
    k["options.nic_count_mode"] = [](Scenario&, Pending& p, const Value& v) {
      if (v.text == "per_ap") {
        p.nic_mode = NicCountMode::PerAp;
      } else if (v.text == "per_server") {
        p.nic_mode = NicCountMode::PerServer;
      } else {
        v.invalid("expected per_ap or per_server");
      }
    };

    k["routing.prefer_direct_inter_group"] = [](Scenario& s, Pending&, const Value& v) {
      s.routing.prefer_direct_inter_group = v.boolean();
    };
    k["routing.allow_relay_fallback"] = [](Scenario& s, Pending&, const Value& v) {
      s.routing.allow_relay_fallback = v.boolean();
    };

    k["sweep.racks"] = [](Scenario& s, Pending&, const Value& v) { s.sweep.racks = v.counts(); };
    k["sweep.groups"] = [](Scenario& s, Pending&, const Value& v) { s.sweep.groups = v.counts(); };
    k["sweep.servers_per_rack"] = [](Scenario& s, Pending&, const Value& v) {
      s.sweep.servers_per_rack = v.counts();
    };
    k["sweep.spines"] = [](Scenario& s, Pending&, const Value& v) {
      if (v.text == "auto") {
        s.sweep.num_spine.reset();
      } else {
        s.sweep.num_spine = v.count();
      }
    };

    k["traffic.pattern"] = [](Scenario&, Pending& p, const Value& v) {
      if (v.text != "none" && v.text != "uniform" && v.text != "hotspot_rack" &&
          v.text != "intra_rack_heavy") {
        v.invalid("expected none, uniform, hotspot_rack or intra_rack_heavy");
      }
      p.pattern = std::string(v.text);
    };
    k["traffic.demand"] = [](Scenario&, Pending& p, const Value& v) {
      p.demand = v.rational(true);
    };
    k["traffic.rack"] = [](Scenario&, Pending& p, const Value& v) { p.rack = v.count(); };
    k["traffic.fraction"] = [](Scenario&, Pending& p, const Value& v) {
      p.fraction = v.rational(true);
      if (*p.fraction > 1) v.invalid("fraction must lie in [0, 1]");
    };
    k["traffic.top"] = [](Scenario& s, Pending&, const Value& v) { s.traffic->top_n = v.count(); };
    k["traffic.flow"] = [](Scenario& s, Pending&, const Value& v) {
      auto parts = split_ws(v.text);
      if (parts.size() != 3) v.invalid("expected '<src> <dst> <gbps>'");
      s.traffic->flows.push_back(
          {std::string(parts[0]), std::string(parts[1]), Value{parts[2], v.line, v.column}.rational(true)});
    };
    return k;
  }();
  return table;
}

const std::set<std::string_view> kSections = {"architecture", "catalog", "options",
                                              "routing",      "sweep",   "traffic"};

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  Pending pending;
  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::string_view body = raw;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    std::size_t indent = 0;
    while (indent < body.size() && std::isspace(static_cast<unsigned char>(body[indent]))) {
      ++indent;
    }
    body = trim(body);
    if (body.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t col = indent + 1;

    if (body.front() == '[') {
      if (body.back() != ']') {
        throw ParseError(ErrorCode::ParseError, line_no, col, "unterminated section header");
      }
      std::string name(trim(body.substr(1, body.size() - 2)));
      if (!kSections.contains(name)) {
        throw ParseError(ErrorCode::UnknownKey, line_no, col, "unknown section [" + name + "]");
      }
      if (!seen.insert("[" + name + "]").second) {
        throw ParseError(ErrorCode::ParseError, line_no, col, "section [" + name + "] repeated");
      }
      section = std::move(name);
      if (section == "traffic") s.traffic.emplace();
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(ErrorCode::ParseError, line_no, col, "expected 'key = value'");
    }
    const std::string key(trim(body.substr(0, eq)));
    if (key.empty()) throw ParseError(ErrorCode::ParseError, line_no, col, "missing key");
    const std::string_view value_raw = body.substr(eq + 1);
    const std::string_view value = trim(value_raw);
    const std::size_t value_col =
        col + eq + 1 + (value.empty() ? 0 : static_cast<std::size_t>(value.data() - value_raw.data()));

    const std::string qualified = section + "." + key;
    const auto& table = key_table();
    auto it = table.find(qualified);
    if (it == table.end()) {
      throw ParseError(ErrorCode::UnknownKey, line_no, col,
                       "unknown key '" + key + "'" +
                           (section.empty() ? std::string(" at top level")
                                            : " in [" + section + "]"));
    }
    if (qualified != "traffic.flow" && !seen.insert(qualified).second) {
      throw ParseError(ErrorCode::ParseError, line_no, col, "key '" + key + "' repeated");
    }
    it->second(s, pending, Value{value, line_no, value_col});
  }

  if (!pending.has_selector) {
    throw ParseError(ErrorCode::ParseError, 1, 1,
                     "architecture selector required: set 'profile' or [architecture] select");
  }

  s.options = s.profile ? *profile_options(*s.profile) : PowerOptions{};
  if (pending.include_owc) s.options.include_owc_transceivers = *pending.include_owc;
  if (pending.include_servers) s.options.include_server_transceivers = *pending.include_servers;
  if (pending.nic_mode) s.options.nic_count_mode = *pending.nic_mode;

  if (s.traffic && pending.pattern && *pending.pattern != "none") {
    TrafficPattern p;
    if (*pending.pattern == "uniform") p.kind = TrafficPattern::Kind::Uniform;
    if (*pending.pattern == "hotspot_rack") p.kind = TrafficPattern::Kind::HotspotRack;
    if (*pending.pattern == "intra_rack_heavy") p.kind = TrafficPattern::Kind::IntraRackHeavy;
    p.demand_gbps = pending.demand.value_or(Rational(1));
    p.rack = pending.rack.value_or(0);
    p.fraction = pending.fraction.value_or(Rational(0));
    s.traffic->pattern = p;
  } else if (pending.demand || pending.rack || pending.fraction) {
    throw ParseError(ErrorCode::InvalidValue, 1, 1,
                     "traffic demand/rack/fraction given without a traffic pattern");
  }
  return s;
}

namespace {

std::string join_counts(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

void write_capacities(std::ostream& os, const std::string& prefix, const LinkCapacities& c) {
  os << prefix << "capacity.wired = " << format_rational(c.wired) << "\n";
  os << prefix << "capacity.owc = " << format_rational(c.owc) << "\n";
  os << prefix << "capacity.fiber = " << format_rational(c.fiber) << "\n";
}

void write_catalog(std::ostream& os, const std::string& prefix, const PowerCatalog& c) {
  for (auto kind : kAllDeviceKinds) {
    if (auto mw = c.get(kind)) os << prefix << catalog_key(kind) << " = " << format_watts(*mw) << "\n";
  }
}

std::string_view bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  if (s.profile) os << "profile = " << *s.profile << "\n";
  os << "format = " << to_string(s.format) << "\n";

  os << "\n[architecture]\n";
  os << "select = " << to_string(s.select) << "\n";
  os << "traditional.spines = " << s.traditional.num_spine << "\n";
  os << "traditional.racks = " << s.traditional.num_racks << "\n";
  os << "traditional.servers_per_rack = " << s.traditional.servers_per_rack << "\n";
  write_capacities(os, "traditional.", s.traditional.capacities);
  os << "owc_pon.racks = " << s.owc_pon.num_racks << "\n";
  os << "owc_pon.servers_per_rack = " << s.owc_pon.servers_per_rack << "\n";
  os << "owc_pon.groups = " << s.owc_pon.num_groups << "\n";
  os << "owc_pon.aps_per_group = " << s.owc_pon.aps_per_group << "\n";
  os << "owc_pon.adjacency = " << to_string(s.owc_pon.adjacency) << "\n";
  os << "owc_pon.pairs =";
  for (std::size_t i = 0; i < s.owc_pon.explicit_pairs.size(); ++i) {
    const auto& [a, b] = s.owc_pon.explicit_pairs[i];
    os << (i ? ", " : " ") << a.group << ":" << a.ap << "-" << b.group << ":" << b.ap;
  }
  os << "\n";
  os << "owc_pon.gateway_ap =" << (s.owc_pon.gateway_ap.empty() ? "" : " ")
     << join_counts(s.owc_pon.gateway_ap) << "\n";
  os << "owc_pon.owc_channels = " << s.owc_pon.owc_channels << "\n";
  write_capacities(os, "owc_pon.", s.owc_pon.capacities);

  os << "\n[catalog]\n";
  write_catalog(os, "traditional.", s.catalogs.traditional);
  write_catalog(os, "owc_pon.", s.catalogs.owc_pon);

  os << "\n[options]\n";
  os << "include_owc_transceivers = " << bool_text(s.options.include_owc_transceivers) << "\n";
  os << "include_server_transceivers = " << bool_text(s.options.include_server_transceivers)
     << "\n";
  os << "nic_count_mode = " << to_string(s.options.nic_count_mode) << "\n";

  os << "\n[routing]\n";
  os << "prefer_direct_inter_group = " << bool_text(s.routing.prefer_direct_inter_group) << "\n";
  os << "allow_relay_fallback = " << bool_text(s.routing.allow_relay_fallback) << "\n";

  os << "\n[sweep]\n";
  os << "racks =" << (s.sweep.racks.empty() ? "" : " ") << join_counts(s.sweep.racks) << "\n";
  os << "groups =" << (s.sweep.groups.empty() ? "" : " ") << join_counts(s.sweep.groups) << "\n";
  os << "servers_per_rack =" << (s.sweep.servers_per_rack.empty() ? "" : " ")
     << join_counts(s.sweep.servers_per_rack) << "\n";
  os << "spines = " << (s.sweep.num_spine ? std::to_string(*s.sweep.num_spine) : "auto") << "\n";

  if (s.traffic) {
    os << "\n[traffic]\n";
    if (s.traffic->pattern) {
      const auto& p = *s.traffic->pattern;
      os << "pattern = " << to_string(p.kind) << "\n";
      os << "demand = " << format_rational(p.demand_gbps) << "\n";
      os << "rack = " << p.rack << "\n";
      os << "fraction = " << format_rational(p.fraction) << "\n";
    } else {
      os << "pattern = none\n";
    }
    os << "top = " << s.traffic->top_n << "\n";
    for (const auto& f : s.traffic->flows) {
      os << "flow = " << f.src << " " << f.dst << " " << format_rational(f.gbps) << "\n";
    }
  }
  return os.str();
}

Scenario default_scenario() { return parse_scenario("profile = reproduction\n"); }

TrafficMatrix scenario_traffic(const TrafficSection& section, const NetworkGraph& graph) {
  TrafficMatrix tm;
  if (section.pattern) tm = generate_traffic(*section.pattern, graph);
  for (const auto& f : section.flows) tm.add(f.src, f.dst, f.gbps);
  return tm;
}

}  // namespace owcpon
