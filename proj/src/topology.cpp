#include "owcpon/topology.hpp"

#include <algorithm>
#include <set>

#include "owcpon/error.hpp"

namespace owcpon {

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::Server: return "Server";
    case DeviceKind::ServerTransceiver: return "ServerTransceiver";
    case DeviceKind::LeafSwitch: return "LeafSwitch";
    case DeviceKind::SpineSwitch: return "SpineSwitch";
    case DeviceKind::RackTransceiver: return "RackTransceiver";
    case DeviceKind::ApTransceiver: return "ApTransceiver";
    case DeviceKind::Nic: return "Nic";
    case DeviceKind::OpticalSwitch: return "OpticalSwitch";
    case DeviceKind::Olt: return "Olt";
    case DeviceKind::ExternalGateway: return "ExternalGateway";
  }
  return "?";
}

std::optional<DeviceKind> device_kind_from_string(std::string_view name) {
  for (auto kind : kAllDeviceKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::Wired: return "Wired";
    case LinkKind::Owc: return "Owc";
    case LinkKind::Fiber: return "Fiber";
  }
  return "?";
}

std::string_view to_string(Architecture arch) {
  return arch == Architecture::Traditional ? "traditional" : "owc_pon";
}

std::string_view to_string(AdjacencyPolicy policy) {
  switch (policy) {
    case AdjacencyPolicy::IndexMatched: return "index_matched";
    case AdjacencyPolicy::ExplicitPairs: return "explicit";
    case AdjacencyPolicy::None: return "none";
  }
  return "?";
}

std::uint64_t census_count(const Census& census, DeviceKind kind) {
  auto it = census.find(kind);
  return it == census.end() ? 0 : it->second;
}

namespace node_ids {
std::string leaf(std::uint32_t rack) { return "rack" + std::to_string(rack) + "/leaf"; }
std::string server(std::uint32_t rack, std::uint32_t slot) {
  return "rack" + std::to_string(rack) + "/server" + std::to_string(slot);
}
std::string server_transceiver(std::uint32_t rack, std::uint32_t slot) {
  return server(rack, slot) + "/txrx";
}
std::string rack_transceiver(std::uint32_t rack, std::uint32_t channel) {
  return "rack" + std::to_string(rack) + "/owc" + std::to_string(channel);
}
std::string spine(std::uint32_t index) { return "spine" + std::to_string(index); }
std::string ap_transceiver(ApRef ap, std::uint32_t channel) {
  return "group" + std::to_string(ap.group) + "/ap" + std::to_string(ap.ap) + "/owc" +
         std::to_string(channel);
}
std::string nic(ApRef ap) {
  return "group" + std::to_string(ap.group) + "/ap" + std::to_string(ap.ap) + "/nic";
}
std::string optical_switch(std::uint32_t group) {
  return "group" + std::to_string(group) + "/ocs";
}
}  // namespace node_ids

// ---------------------------------------------------------------------------

NetworkGraph::NetworkGraph(Architecture arch, Spec spec, std::vector<Node> nodes,
                           std::vector<Link> links)
    : arch_(arch), spec_(std::move(spec)), nodes_(std::move(nodes)), links_(std::move(links)) {
  node_index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) node_index_.try_emplace(nodes_[i].id, i);
  link_index_.reserve(links_.size());
  for (std::size_t i = 0; i < links_.size(); ++i) link_index_.try_emplace(links_[i].id, i);

  endpoints_.resize(links_.size());
  adjacency_.resize(nodes_.size());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    auto a = find_node(links_[i].endpoint_a);
    auto b = find_node(links_[i].endpoint_b);
    if (!a || !b) continue;
    endpoints_[i] = std::pair{*a, *b};
    adjacency_[*a].push_back({*b, i});
    if (*a != *b) adjacency_[*b].push_back({*a, i});
  }
}

std::optional<std::size_t> NetworkGraph::find_node(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> NetworkGraph::find_link(std::string_view id) const {
  auto it = link_index_.find(std::string(id));
  if (it == link_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> NetworkGraph::link_between(std::size_t a, std::size_t b) const {
  std::optional<std::size_t> best;
  for (const auto& adj : adjacency_[a]) {
    if (adj.node == b && (!best || adj.link < *best)) best = adj.link;
  }
  return best;
}

std::optional<std::pair<std::size_t, std::size_t>> NetworkGraph::endpoints(
    std::size_t link) const {
  return endpoints_[link];
}

std::vector<std::size_t> NetworkGraph::servers() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == DeviceKind::Server) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class GraphBuilder {
 public:
  void node(Node n) { nodes_.push_back(std::move(n)); }

  void link(const std::string& a, const std::string& b, LinkKind kind, const Rational& capacity) {
    links_.push_back(Link{a + "|" + b, a, b, kind, capacity});
  }

  NetworkGraph finish(Architecture arch, NetworkGraph::Spec spec) && {
    return NetworkGraph(arch, std::move(spec), std::move(nodes_), std::move(links_));
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
};

Node make_node(std::string id, DeviceKind kind) {
  Node n;
  n.id = std::move(id);
  n.kind = kind;
  return n;
}

void add_rack_servers(GraphBuilder& b, std::uint32_t rack, std::uint32_t servers,
                      const Rational& wired) {
  const auto leaf = node_ids::leaf(rack);
  for (std::uint32_t s = 0; s < servers; ++s) {
    Node server = make_node(node_ids::server(rack, s), DeviceKind::Server);
    server.rack = rack;
    server.ordinal = s;
    Node txrx = make_node(node_ids::server_transceiver(rack, s), DeviceKind::ServerTransceiver);
    txrx.rack = rack;
    txrx.ordinal = s;
    txrx.host = server.id;
    b.node(server);
    b.node(std::move(txrx));
    b.link(server.id, leaf, LinkKind::Wired, wired);
  }
}

}  // namespace

NetworkGraph build_traditional(const TraditionalSpec& spec) {
  GraphBuilder b;
  for (std::uint32_t i = 0; i < spec.num_spine; ++i) {
    Node n = make_node(node_ids::spine(i), DeviceKind::SpineSwitch);
    n.ordinal = i;
    b.node(std::move(n));
  }
  for (std::uint32_t r = 0; r < spec.num_racks; ++r) {
    Node leaf = make_node(node_ids::leaf(r), DeviceKind::LeafSwitch);
    leaf.rack = r;
    b.node(std::move(leaf));
    add_rack_servers(b, r, spec.servers_per_rack, spec.capacities.wired);
  }
  // Full bipartite leaf-spine mesh.
  for (std::uint32_t r = 0; r < spec.num_racks; ++r) {
    for (std::uint32_t i = 0; i < spec.num_spine; ++i) {
      b.link(node_ids::leaf(r), node_ids::spine(i), LinkKind::Fiber, spec.capacities.fiber);
    }
  }
  return std::move(b).finish(Architecture::Traditional, spec);
}

ApRef ap_for_rack(const OwcPonSpec& spec, std::uint32_t rack) {
  return ApRef{rack / spec.aps_per_group, rack % spec.aps_per_group};
}

namespace {

void check_owc_pon_spec(const OwcPonSpec& spec) {
  if (std::uint64_t{spec.num_groups} * spec.aps_per_group != spec.num_racks) {
    throw Error(ErrorCode::SpecMismatch,
                "num_groups (" + std::to_string(spec.num_groups) + ") x aps_per_group (" +
                    std::to_string(spec.aps_per_group) + ") != num_racks (" +
                    std::to_string(spec.num_racks) + ")");
  }
  if (spec.owc_channels == 0) {
    throw Error(ErrorCode::SpecMismatch, "owc_channels must be at least 1");
  }
  if (!spec.gateway_ap.empty() && spec.gateway_ap.size() != spec.num_groups) {
    throw Error(ErrorCode::SpecMismatch, "gateway_ap lists " +
                                             std::to_string(spec.gateway_ap.size()) +
                                             " entries for " + std::to_string(spec.num_groups) +
                                             " groups");
  }
  for (std::size_t g = 0; g < spec.gateway_ap.size(); ++g) {
    if (spec.gateway_ap[g] >= spec.aps_per_group) {
      throw Error(ErrorCode::SpecMismatch, "gateway AP " + std::to_string(spec.gateway_ap[g]) +
                                               " of group " + std::to_string(g) +
                                               " does not exist");
    }
  }
  if (spec.adjacency != AdjacencyPolicy::ExplicitPairs) return;
  std::set<std::pair<ApRef, ApRef>> seen;
  for (const auto& [a, b] : spec.explicit_pairs) {
    for (const auto& ap : {a, b}) {
      if (ap.group >= spec.num_groups || ap.ap >= spec.aps_per_group) {
        throw Error(ErrorCode::BadAdjacency, "pair references missing AP " +
                                                 std::to_string(ap.group) + ":" +
                                                 std::to_string(ap.ap));
      }
    }
    if (a.group == b.group) {
      throw Error(ErrorCode::BadAdjacency,
                  "pair within group " + std::to_string(a.group) + " is not inter-group");
    }
    if (!seen.insert(std::minmax(a, b)).second) {
      throw Error(ErrorCode::BadAdjacency, "duplicate pair " + std::to_string(a.group) + ":" +
                                               std::to_string(a.ap) + "-" +
                                               std::to_string(b.group) + ":" +
                                               std::to_string(b.ap));
    }
  }
}

}  // namespace

NetworkGraph build_owc_pon(const OwcPonSpec& spec) {
  check_owc_pon_spec(spec);
  const auto& cap = spec.capacities;
  GraphBuilder b;

  for (std::uint32_t r = 0; r < spec.num_racks; ++r) {
    const auto leaf_id = node_ids::leaf(r);
    Node leaf = make_node(leaf_id, DeviceKind::LeafSwitch);
    leaf.rack = r;
    b.node(std::move(leaf));
    add_rack_servers(b, r, spec.servers_per_rack, cap.wired);
    const ApRef ap = ap_for_rack(spec, r);
    for (std::uint32_t k = 0; k < spec.owc_channels; ++k) {
      Node txrx = make_node(node_ids::rack_transceiver(r, k), DeviceKind::RackTransceiver);
      txrx.rack = r;
      txrx.ordinal = k;
      b.node(txrx);
      b.link(leaf_id, txrx.id, LinkKind::Wired, cap.wired);
      b.link(txrx.id, node_ids::ap_transceiver(ap, k), LinkKind::Owc, cap.owc);
    }
  }

  for (std::uint32_t g = 0; g < spec.num_groups; ++g) {
    const auto ocs_id = node_ids::optical_switch(g);
    Node ocs = make_node(ocs_id, DeviceKind::OpticalSwitch);
    ocs.group = g;
    b.node(std::move(ocs));
    for (std::uint32_t a = 0; a < spec.aps_per_group; ++a) {
      const ApRef ap{g, a};
      const bool gateway = spec.gateway_for(g) == a;
      const auto nic_id = node_ids::nic(ap);
      for (std::uint32_t k = 0; k < spec.owc_channels; ++k) {
        Node txrx = make_node(node_ids::ap_transceiver(ap, k), DeviceKind::ApTransceiver);
        txrx.group = g;
        txrx.ap = a;
        txrx.ordinal = k;
        txrx.is_gateway = gateway;
        b.node(txrx);
        b.link(txrx.id, nic_id, LinkKind::Fiber, cap.fiber);
      }
      Node nic = make_node(nic_id, DeviceKind::Nic);
      nic.group = g;
      nic.ap = a;
      nic.is_gateway = gateway;
      b.node(std::move(nic));
      b.link(nic_id, ocs_id, LinkKind::Fiber, cap.fiber);
    }
  }

  const std::string olt_id(node_ids::kOlt);
  const std::string external_id(node_ids::kExternal);
  b.node(make_node(olt_id, DeviceKind::Olt));
  b.node(make_node(external_id, DeviceKind::ExternalGateway));
  for (std::uint32_t g = 0; g < spec.num_groups; ++g) {
    b.link(node_ids::nic({g, spec.gateway_for(g)}), olt_id, LinkKind::Fiber, cap.fiber);
  }

  switch (spec.adjacency) {
    case AdjacencyPolicy::IndexMatched:
      for (std::uint32_t g = 0; g < spec.num_groups; ++g) {
        for (std::uint32_t h = g + 1; h < spec.num_groups; ++h) {
          for (std::uint32_t a = 0; a < spec.aps_per_group; ++a) {
            b.link(node_ids::nic({g, a}), node_ids::nic({h, a}), LinkKind::Fiber, cap.fiber);
          }
        }
      }
      break;
    case AdjacencyPolicy::ExplicitPairs:
      for (const auto& [x, y] : spec.explicit_pairs) {
        b.link(node_ids::nic(x), node_ids::nic(y), LinkKind::Fiber, cap.fiber);
      }
      break;
    case AdjacencyPolicy::None:
      break;
  }

  b.link(olt_id, external_id, LinkKind::Fiber, cap.fiber);
  return std::move(b).finish(Architecture::OwcPon, spec);
}

Census device_census(const NetworkGraph& graph) {
  Census census;
  for (auto kind : kAllDeviceKinds) census[kind] = 0;
  for (const auto& n : graph.nodes()) ++census[n.kind];
  return census;
}

}  // namespace owcpon
