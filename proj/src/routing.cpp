#include "owcpon/routing.hpp"

#include <algorithm>
#include <functional>

#include "owcpon/error.hpp"
#include "owcpon/kernels.hpp"

namespace owcpon {

std::string_view to_string(PathClass cls) {
  switch (cls) {
    case PathClass::SameServer: return "SameServer";
    case PathClass::IntraRack: return "IntraRack";
    case PathClass::InterRackIntraGroup: return "InterRackIntraGroup";
    case PathClass::InterGroupDirect: return "InterGroupDirect";
    case PathClass::InterGroupRelayed: return "InterGroupRelayed";
    case PathClass::External: return "External";
    case PathClass::InterRackViaSpine: return "InterRackViaSpine";
  }
  return "?";
}

std::vector<std::string> node_ids_of(const NetworkGraph& graph, const Route& route) {
  std::vector<std::string> out;
  out.reserve(route.nodes.size());
  for (auto n : route.nodes) out.push_back(graph.nodes()[n].id);
  return out;
}

std::vector<std::string> link_ids_of(const NetworkGraph& graph, const Route& route) {
  std::vector<std::string> out;
  out.reserve(route.links.size());
  for (auto l : route.links) out.push_back(graph.links()[l].id);
  return out;
}

std::uint64_t class_total(const HopHistogram& histogram, PathClass cls) {
  std::uint64_t total = 0;
  for (const auto& [key, count] : histogram) {
    if (key.first == cls) total += count;
  }
  return total;
}

namespace {

[[noreturn]] void no_route(const NetworkGraph& g, std::size_t at, const std::string& what) {
  throw Error(ErrorCode::NoRoute, g.nodes()[at].id + ": " + what);
}

// A path being walked outward from one endpoint.
struct Chain {
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> links;

  std::size_t tip() const { return nodes.back(); }
  void step(const NetworkGraph::Adjacent& adj) {
    nodes.push_back(adj.node);
    links.push_back(adj.link);
  }
};

using NodePredicate = std::function<bool(const Node&)>;

std::optional<NetworkGraph::Adjacent> find_neighbor(const NetworkGraph& g, std::size_t from,
                                                    const NodePredicate& pred) {
  for (const auto& adj : g.neighbors(from)) {
    if (pred(g.nodes()[adj.node])) return adj;
  }
  return std::nullopt;
}

void extend(const NetworkGraph& g, Chain& chain, const NodePredicate& pred,
            const std::string& what) {
  auto adj = find_neighbor(g, chain.tip(), pred);
  if (!adj) no_route(g, chain.tip(), "no link to " + what);
  chain.step(*adj);
}

NodePredicate of_kind(DeviceKind kind) {
  return [kind](const Node& n) { return n.kind == kind; };
}

std::size_t require_server(const NetworkGraph& g, std::string_view id) {
  auto idx = g.find_node(id);
  if (!idx || g.nodes()[*idx].kind != DeviceKind::Server) {
    throw Error(ErrorCode::UnknownServer, std::string(id) + " is not a server in this graph");
  }
  return *idx;
}

void check_server(const NetworkGraph& g, std::size_t idx) {
  if (idx >= g.nodes().size() || g.nodes()[idx].kind != DeviceKind::Server) {
    throw Error(ErrorCode::UnknownServer, "node index " + std::to_string(idx) +
                                              " is not a server in this graph");
  }
}

std::uint32_t owc_channels(const NetworkGraph& g) {
  if (const auto* spec = std::get_if<OwcPonSpec>(&g.spec())) {
    return std::max<std::uint32_t>(spec->owc_channels, 1);
  }
  return 1;
}

// server -> leaf
Chain to_leaf(const NetworkGraph& g, std::size_t server) {
  Chain c{{server}, {}};
  extend(g, c, of_kind(DeviceKind::LeafSwitch), "a leaf switch");
  return c;
}

// server -> leaf -> rack transceiver[channel] -> AP transceiver -> NIC
Chain to_nic(const NetworkGraph& g, std::size_t server, std::uint32_t channel) {
  Chain c = to_leaf(g, server);
  extend(
      g, c,
      [channel](const Node& n) {
        return n.kind == DeviceKind::RackTransceiver && n.ordinal == channel;
      },
      "rack transceiver channel " + std::to_string(channel));
  extend(g, c, of_kind(DeviceKind::ApTransceiver), "an AP transceiver");
  extend(g, c, of_kind(DeviceKind::Nic), "a NIC");
  return c;
}

// Extends a chain ending at a NIC to its group's gateway NIC and then the OLT.
void nic_to_olt(const NetworkGraph& g, Chain& c) {
  const Node& nic = g.nodes()[c.tip()];
  if (!nic.is_gateway) {
    const auto group = nic.group;
    extend(
        g, c,
        [group](const Node& n) { return n.kind == DeviceKind::OpticalSwitch && n.group == group; },
        "its group's optical switch");
    extend(
        g, c,
        [group](const Node& n) {
          return n.kind == DeviceKind::Nic && n.is_gateway && n.group == group;
        },
        "the group gateway NIC");
  }
  extend(g, c, of_kind(DeviceKind::Olt), "the OLT");
}

// Joins an outbound chain and a chain walked outward from the destination.
Route join(Chain out, const Chain& back, std::optional<std::size_t> middle_link, PathClass cls) {
  Route r;
  r.path_class = cls;
  r.nodes = std::move(out.nodes);
  r.links = std::move(out.links);
  if (middle_link) r.links.push_back(*middle_link);
  // back.tip() is either out.tip() (shared junction) or the far side of middle_link.
  std::size_t skip = middle_link ? 0 : 1;
  for (std::size_t i = back.nodes.size(); i-- > 0;) {
    if (i + skip >= back.nodes.size()) continue;
    r.nodes.push_back(back.nodes[i]);
  }
  for (std::size_t i = back.links.size(); i-- > 0;) r.links.push_back(back.links[i]);
  return r;
}

Route traditional_route(const NetworkGraph& g, std::size_t src, std::size_t dst) {
  Chain a = to_leaf(g, src);
  Chain b = to_leaf(g, dst);
  if (a.tip() == b.tip()) return join(std::move(a), b, std::nullopt, PathClass::IntraRack);

  std::vector<std::size_t> common;
  for (const auto& adj : g.neighbors(a.tip())) {
    if (g.nodes()[adj.node].kind == DeviceKind::SpineSwitch &&
        g.link_between(b.tip(), adj.node)) {
      common.push_back(adj.node);
    }
  }
  std::sort(common.begin(), common.end());
  common.erase(std::unique(common.begin(), common.end()), common.end());
  if (common.empty()) no_route(g, a.tip(), "no spine shared with " + g.nodes()[b.tip()].id);

  const auto ra = g.nodes()[a.tip()].rack.value_or(0);
  const auto rb = g.nodes()[b.tip()].rack.value_or(0);
  const auto spine = common[(std::uint64_t{ra} + rb) % common.size()];
  a.step({spine, *g.link_between(a.tip(), spine)});
  b.step({spine, *g.link_between(b.tip(), spine)});
  return join(std::move(a), b, std::nullopt, PathClass::InterRackViaSpine);
}

Route owc_pon_route(const NetworkGraph& g, std::size_t src, std::size_t dst,
                    const RoutingPolicy& policy) {
  {
    Chain a = to_leaf(g, src);
    Chain b = to_leaf(g, dst);
    if (a.tip() == b.tip()) return join(std::move(a), b, std::nullopt, PathClass::IntraRack);
  }
  const auto channel = static_cast<std::uint32_t>(
      (std::uint64_t{g.nodes()[src].ordinal} + g.nodes()[dst].ordinal) % owc_channels(g));
  Chain a = to_nic(g, src, channel);
  Chain b = to_nic(g, dst, channel);
  const Node& nic_a = g.nodes()[a.tip()];
  const Node& nic_b = g.nodes()[b.tip()];

  if (a.tip() == b.tip()) return join(std::move(a), b, std::nullopt, PathClass::InterRackIntraGroup);

  if (nic_a.group == nic_b.group) {
    const auto group = nic_a.group;
    extend(
        g, a,
        [group](const Node& n) { return n.kind == DeviceKind::OpticalSwitch && n.group == group; },
        "its group's optical switch");
    auto back = g.link_between(b.tip(), a.tip());
    if (!back) no_route(g, b.tip(), "no link to " + g.nodes()[a.tip()].id);
    b.step({a.tip(), *back});
    return join(std::move(a), b, std::nullopt, PathClass::InterRackIntraGroup);
  }

  if (!policy.prefer_direct_inter_group && !policy.allow_relay_fallback) {
    throw Error(ErrorCode::PolicyExcluded,
                g.nodes()[src].id + " -> " + g.nodes()[dst].id +
                    ": both direct and relayed inter-group routing are disabled");
  }
  std::optional<std::size_t> direct;
  if (auto l = g.link_between(a.tip(), b.tip()); l && g.links()[*l].kind == LinkKind::Fiber) {
    direct = l;
  }
  if (policy.prefer_direct_inter_group && direct) {
    return join(std::move(a), b, direct, PathClass::InterGroupDirect);
  }
  if (!policy.allow_relay_fallback) {
    no_route(g, a.tip(), "no direct link to " + nic_b.id + " and OLT relay is disabled");
  }
  nic_to_olt(g, a);
  nic_to_olt(g, b);
  if (a.tip() != b.tip()) no_route(g, a.tip(), "gateways reach different OLTs");
  return join(std::move(a), b, std::nullopt, PathClass::InterGroupRelayed);
}

}  // namespace

Route resolve_route(const NetworkGraph& graph, std::size_t src, std::size_t dst,
                    const RoutingPolicy& policy) {
  check_server(graph, src);
  check_server(graph, dst);
  if (src == dst) return Route{{src}, {}, PathClass::SameServer};
  if (graph.architecture() == Architecture::Traditional) {
    return traditional_route(graph, src, dst);
  }
  return owc_pon_route(graph, src, dst, policy);
}

Route resolve_route(const NetworkGraph& graph, std::string_view src, std::string_view dst,
                    const RoutingPolicy& policy) {
  return resolve_route(graph, require_server(graph, src), require_server(graph, dst), policy);
}

Route route_to_external(const NetworkGraph& graph, std::size_t src) {
  check_server(graph, src);
  if (graph.architecture() != Architecture::OwcPon) {
    no_route(graph, src, "the traditional fabric has no modeled external gateway");
  }
  Chain c = to_nic(graph, src, graph.nodes()[src].ordinal % owc_channels(graph));
  nic_to_olt(graph, c);
  extend(graph, c, of_kind(DeviceKind::ExternalGateway), "an external gateway");
  return Route{std::move(c.nodes), std::move(c.links), PathClass::External};
}

Route route_to_external(const NetworkGraph& graph, std::string_view src) {
  return route_to_external(graph, require_server(graph, src));
}

HopHistogram all_pairs_summary(const NetworkGraph& graph, const RoutingPolicy& policy) {
  return parallel::all_pairs_summary(graph, policy);
}

}  // namespace owcpon
