#include <map>
#include <set>
#include <unordered_map>

#include "owcpon/topology.hpp"

namespace owcpon {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateNodeId: return "DuplicateNodeId";
    case ViolationKind::DanglingLink: return "DanglingLink";
    case ViolationKind::SelfLoopLink: return "SelfLoopLink";
    case ViolationKind::NonPositiveCapacity: return "NonPositiveCapacity";
    case ViolationKind::BadOwcLink: return "BadOwcLink";
    case ViolationKind::MissingLeafSwitch: return "MissingLeafSwitch";
    case ViolationKind::DuplicateLeafSwitch: return "DuplicateLeafSwitch";
    case ViolationKind::ServerTransceiverCount: return "ServerTransceiverCount";
    case ViolationKind::MissingRackTransceiver: return "MissingRackTransceiver";
    case ViolationKind::ExtraRackTransceiver: return "ExtraRackTransceiver";
    case ViolationKind::MissingApTransceiver: return "MissingApTransceiver";
    case ViolationKind::ExtraApTransceiver: return "ExtraApTransceiver";
    case ViolationKind::OrphanNic: return "OrphanNic";
    case ViolationKind::MissingNic: return "MissingNic";
    case ViolationKind::DuplicateNic: return "DuplicateNic";
    case ViolationKind::MissingOpticalSwitch: return "MissingOpticalSwitch";
    case ViolationKind::DuplicateOpticalSwitch: return "DuplicateOpticalSwitch";
    case ViolationKind::NicNotOnOpticalSwitch: return "NicNotOnOpticalSwitch";
    case ViolationKind::MissingGateway: return "MissingGateway";
    case ViolationKind::DuplicateGateway: return "DuplicateGateway";
    case ViolationKind::MissingOltUplink: return "MissingOltUplink";
    case ViolationKind::MissingOlt: return "MissingOlt";
    case ViolationKind::DuplicateOlt: return "DuplicateOlt";
    case ViolationKind::Disconnected: return "Disconnected";
  }
  return "?";
}

std::string to_string(const Violation& violation) {
  return std::string(to_string(violation.kind)) + "(" + violation.subject + ")";
}

namespace {

std::string rack_subject(std::uint32_t rack) { return "rack " + std::to_string(rack); }
std::string group_subject(std::uint32_t group) { return "group " + std::to_string(group); }

class Validator {
 public:
  explicit Validator(const NetworkGraph& g) : g_(g) {}

  std::vector<Violation> run() {
    check_ids();
    check_links();
    check_racks();
    if (g_.architecture() == Architecture::OwcPon) {
      check_aps();
      check_groups();
      check_olt();
    }
    if (out_.empty()) check_connected();
    return std::move(out_);
  }

 private:
  void add(ViolationKind kind, std::string subject) {
    out_.push_back({kind, std::move(subject)});
  }

  void check_ids() {
    std::set<std::string_view> seen;
    for (const auto& n : g_.nodes()) {
      if (!seen.insert(n.id).second) add(ViolationKind::DuplicateNodeId, n.id);
    }
  }

  void check_links() {
    const auto nodes = g_.nodes();
    for (std::size_t i = 0; i < g_.links().size(); ++i) {
      const auto& l = g_.links()[i];
      auto ends = g_.endpoints(i);
      if (!ends) {
        add(ViolationKind::DanglingLink, l.id);
        continue;
      }
      if (ends->first == ends->second) add(ViolationKind::SelfLoopLink, l.id);
      if (l.capacity_gbps <= 0) add(ViolationKind::NonPositiveCapacity, l.id);
      if (l.kind == LinkKind::Owc) {
        auto ka = nodes[ends->first].kind;
        auto kb = nodes[ends->second].kind;
        bool ok = (ka == DeviceKind::RackTransceiver && kb == DeviceKind::ApTransceiver) ||
                  (ka == DeviceKind::ApTransceiver && kb == DeviceKind::RackTransceiver);
        if (!ok) add(ViolationKind::BadOwcLink, l.id);
      }
    }
  }

  std::uint32_t expected_racks() const {
    return std::visit([](const auto& s) { return s.num_racks; }, g_.spec());
  }

  void check_racks() {
    std::map<std::uint32_t, std::size_t> leaves;
    std::map<std::uint32_t, std::size_t> rack_txrx;
    for (std::uint32_t r = 0; r < expected_racks(); ++r) {
      leaves[r] = 0;
      rack_txrx[r] = 0;
    }
    std::unordered_map<std::string_view, std::size_t> server_txrx;
    for (const auto& n : g_.nodes()) {
      if (n.kind == DeviceKind::Server) server_txrx.try_emplace(n.id, 0);
    }
    for (const auto& n : g_.nodes()) {
      if (n.rack) {
        leaves.try_emplace(*n.rack, 0);
        rack_txrx.try_emplace(*n.rack, 0);
      }
      if (n.kind == DeviceKind::LeafSwitch && n.rack) ++leaves[*n.rack];
      if (n.kind == DeviceKind::RackTransceiver && n.rack) ++rack_txrx[*n.rack];
      if (n.kind == DeviceKind::ServerTransceiver) {
        auto it = n.host ? server_txrx.find(*n.host) : server_txrx.end();
        if (it != server_txrx.end()) ++it->second;
      }
    }
    for (const auto& [rack, count] : leaves) {
      if (count == 0) add(ViolationKind::MissingLeafSwitch, rack_subject(rack));
      if (count > 1) add(ViolationKind::DuplicateLeafSwitch, rack_subject(rack));
    }
    for (const auto& n : g_.nodes()) {
      if (n.kind == DeviceKind::Server && server_txrx[n.id] != 1) {
        add(ViolationKind::ServerTransceiverCount, n.id);
      }
    }
    if (g_.architecture() != Architecture::OwcPon) return;
    const auto channels = std::get<OwcPonSpec>(g_.spec()).owc_channels;
    for (const auto& [rack, count] : rack_txrx) {
      if (count < channels) add(ViolationKind::MissingRackTransceiver, rack_subject(rack));
      if (count > channels) add(ViolationKind::ExtraRackTransceiver, rack_subject(rack));
    }
  }

  void check_aps() {
    const auto& spec = std::get<OwcPonSpec>(g_.spec());
    struct Counts {
      std::size_t nic = 0;
      std::size_t txrx = 0;
    };
    std::map<ApRef, Counts> aps;
    for (std::uint32_t grp = 0; grp < spec.num_groups; ++grp) {
      for (std::uint32_t a = 0; a < spec.aps_per_group; ++a) aps[{grp, a}];
    }
    for (const auto& n : g_.nodes()) {
      if (!n.group || !n.ap) continue;
      if (n.kind == DeviceKind::Nic) ++aps[{*n.group, *n.ap}].nic;
      if (n.kind == DeviceKind::ApTransceiver) ++aps[{*n.group, *n.ap}].txrx;
    }
    for (const auto& [ap, c] : aps) {
      const std::string subject = node_ids::nic(ap);
      if (c.nic > 0 && c.txrx == 0) {
        add(ViolationKind::OrphanNic, subject);
      } else if (c.txrx < spec.owc_channels) {
        add(ViolationKind::MissingApTransceiver, subject);
      }
      if (c.txrx > spec.owc_channels) add(ViolationKind::ExtraApTransceiver, subject);
      if (c.nic == 0) add(ViolationKind::MissingNic, subject);
      if (c.nic > 1) add(ViolationKind::DuplicateNic, subject);
    }
  }

  void check_groups() {
    const auto& spec = std::get<OwcPonSpec>(g_.spec());
    const auto nodes = g_.nodes();
    std::map<std::uint32_t, std::vector<std::size_t>> ocs;
    std::map<std::uint32_t, std::vector<std::size_t>> nics;
    std::map<std::uint32_t, std::vector<std::size_t>> gateways;
    for (std::uint32_t grp = 0; grp < spec.num_groups; ++grp) {
      ocs[grp];
      gateways[grp];
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (!n.group) continue;
      if (n.kind == DeviceKind::OpticalSwitch) ocs[*n.group].push_back(i);
      if (n.kind == DeviceKind::Nic) {
        nics[*n.group].push_back(i);
        gateways[*n.group];
        if (n.is_gateway) gateways[*n.group].push_back(i);
      }
    }
    for (const auto& [grp, switches] : ocs) {
      if (switches.empty()) add(ViolationKind::MissingOpticalSwitch, group_subject(grp));
      if (switches.size() > 1) add(ViolationKind::DuplicateOpticalSwitch, group_subject(grp));
      if (switches.size() != 1) continue;
      for (auto nic : nics[grp]) {
        std::size_t links = 0;
        for (const auto& adj : g_.neighbors(nic)) links += adj.node == switches.front();
        if (links != 1) add(ViolationKind::NicNotOnOpticalSwitch, nodes[nic].id);
      }
    }
    for (const auto& [grp, gws] : gateways) {
      if (gws.empty()) add(ViolationKind::MissingGateway, group_subject(grp));
      if (gws.size() > 1) add(ViolationKind::DuplicateGateway, group_subject(grp));
      if (gws.size() != 1) continue;
      bool uplink = false;
      for (const auto& adj : g_.neighbors(gws.front())) {
        uplink |= nodes[adj.node].kind == DeviceKind::Olt;
      }
      if (!uplink) add(ViolationKind::MissingOltUplink, group_subject(grp));
    }
  }

  void check_olt() {
    std::size_t olts = 0;
    for (const auto& n : g_.nodes()) olts += n.kind == DeviceKind::Olt;
    if (olts == 0) add(ViolationKind::MissingOlt, std::string(node_ids::kOlt));
    if (olts > 1) add(ViolationKind::DuplicateOlt, std::string(node_ids::kOlt));
  }

  // Server transceivers carry no links; they count as reached through their host.
  void check_connected() {
    const auto nodes = g_.nodes();
    bool any_server = false;
    for (const auto& n : nodes) any_server |= n.kind == DeviceKind::Server;
    if (!any_server && expected_racks() == 0) return;

    std::vector<char> reached(nodes.size(), 0);
    std::size_t start = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].kind != DeviceKind::ServerTransceiver) {
        start = i;
        break;
      }
    }
    if (start == nodes.size()) return;
    std::vector<std::size_t> frontier{start};
    reached[start] = 1;
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (const auto& adj : g_.neighbors(cur)) {
        if (!reached[adj.node]) {
          reached[adj.node] = 1;
          frontier.push_back(adj.node);
        }
      }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      bool ok = reached[i] != 0;
      if (n.kind == DeviceKind::ServerTransceiver) {
        auto host = n.host ? g_.find_node(*n.host) : std::nullopt;
        ok = host && reached[*host];
      }
      if (!ok) {
        add(ViolationKind::Disconnected, n.id);
        return;
      }
    }
  }

  const NetworkGraph& g_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const NetworkGraph& graph) { return Validator(graph).run(); }

}  // namespace owcpon
