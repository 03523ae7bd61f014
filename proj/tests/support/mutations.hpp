#pragma once

// The six targeted structural mutations of the default OWC-PON fabric, each
// paired with the single violation it must produce.

#include <algorithm>
#include <string>
#include <vector>

#include "owcpon/topology.hpp"

namespace oracle {

struct Mutation {
  std::string name;
  owcpon::NetworkGraph graph;
  owcpon::Violation expected;
};

inline std::vector<Mutation> default_mutations() {
  using namespace owcpon;
  const auto base = build_owc_pon({});
  auto edit = [&](auto&& fn) {
    std::vector<Node> nodes(base.nodes().begin(), base.nodes().end());
    std::vector<Link> links(base.links().begin(), base.links().end());
    fn(nodes, links);
    return NetworkGraph(base.architecture(), base.spec(), std::move(nodes), std::move(links));
  };
  auto fibre = [](const std::string& a, const std::string& b) {
    return Link{a + "|" + b, a, b, LinkKind::Fiber, Rational(40)};
  };

  std::vector<Mutation> out;
  out.push_back({"remove OLT uplink", edit([](auto&, auto& links) {
                   std::erase_if(links, [](const Link& l) {
                     return l.endpoint_a == node_ids::nic({1, 0}) && l.endpoint_b == "olt";
                   });
                 }),
                 {ViolationKind::MissingOltUplink, "group 1"}});
  out.push_back({"duplicate optical switch", edit([&](auto& nodes, auto& links) {
                   Node n{"group0/ocs-spare", DeviceKind::OpticalSwitch, std::nullopt, 0u,
                          std::nullopt, 1, false, std::nullopt};
                   nodes.push_back(n);
                   links.push_back(fibre(n.id, node_ids::nic({0, 0})));
                 }),
                 {ViolationKind::DuplicateOpticalSwitch, "group 0"}});
  out.push_back({"orphan NIC", edit([&](auto& nodes, auto& links) {
                   Node n{"group0/ap7/nic", DeviceKind::Nic, std::nullopt, 0u, 7u, 0, false,
                          std::nullopt};
                   nodes.push_back(n);
                   links.push_back(fibre(n.id, node_ids::optical_switch(0)));
                 }),
                 {ViolationKind::OrphanNic, "group0/ap7/nic"}});
  out.push_back({"dangling link", edit([&](auto&, auto& links) {
                   links.push_back(fibre("olt", "nowhere"));
                 }),
                 {ViolationKind::DanglingLink, "olt|nowhere"}});
  out.push_back({"second OLT", edit([&](auto& nodes, auto& links) {
                   nodes.push_back(Node{"olt2", DeviceKind::Olt, std::nullopt, std::nullopt,
                                        std::nullopt, 1, false, std::nullopt});
                   links.push_back(fibre("olt2", "external"));
                 }),
                 {ViolationKind::DuplicateOlt, "olt"}});
  out.push_back({"rack without transceiver", edit([](auto& nodes, auto& links) {
                   const auto id = node_ids::rack_transceiver(3, 0);
                   std::erase_if(nodes, [&](const Node& n) { return n.id == id; });
                   std::erase_if(links, [&](const Link& l) {
                     return l.endpoint_a == id || l.endpoint_b == id;
                   });
                 }),
                 {ViolationKind::MissingRackTransceiver, "rack 3"}});
  return out;
}

}  // namespace oracle
