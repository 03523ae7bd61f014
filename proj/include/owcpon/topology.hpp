#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "owcpon/rational.hpp"

namespace owcpon {

enum class DeviceKind : std::uint8_t {
  Server,
  ServerTransceiver,
  LeafSwitch,
  SpineSwitch,
  RackTransceiver,
  ApTransceiver,
  Nic,
  OpticalSwitch,
  Olt,
  ExternalGateway,
};

inline constexpr std::array<DeviceKind, 10> kAllDeviceKinds = {
    DeviceKind::Server,          DeviceKind::ServerTransceiver, DeviceKind::LeafSwitch,
    DeviceKind::SpineSwitch,     DeviceKind::RackTransceiver,   DeviceKind::ApTransceiver,
    DeviceKind::Nic,             DeviceKind::OpticalSwitch,     DeviceKind::Olt,
    DeviceKind::ExternalGateway,
};

std::string_view to_string(DeviceKind kind);
std::optional<DeviceKind> device_kind_from_string(std::string_view name);

enum class LinkKind : std::uint8_t { Wired, Owc, Fiber };

std::string_view to_string(LinkKind kind);

enum class Architecture : std::uint8_t { Traditional, OwcPon };

std::string_view to_string(Architecture arch);

struct Node {
  std::string id;
  DeviceKind kind = DeviceKind::Server;
  std::optional<std::uint32_t> rack;
  std::optional<std::uint32_t> group;
  std::optional<std::uint32_t> ap;
  // Ordinal within the owning container: server slot, transceiver channel, spine index.
  std::uint32_t ordinal = 0;
  bool is_gateway = false;
  // ServerTransceiver only: id of the server it is attached to.
  std::optional<std::string> host;

  bool operator==(const Node&) const = default;
};

struct Link {
  std::string id;
  std::string endpoint_a;
  std::string endpoint_b;
  LinkKind kind = LinkKind::Wired;
  Rational capacity_gbps;

  bool operator==(const Link&) const = default;
};

struct LinkCapacities {
  Rational wired{10};
  Rational owc{10};
  Rational fiber{40};

  bool operator==(const LinkCapacities&) const = default;
};

struct TraditionalSpec {
  std::uint32_t num_spine = 8;
  std::uint32_t num_racks = 8;
  std::uint32_t servers_per_rack = 8;
  LinkCapacities capacities;

  bool operator==(const TraditionalSpec&) const = default;
};

struct ApRef {
  std::uint32_t group = 0;
  std::uint32_t ap = 0;

  auto operator<=>(const ApRef&) const = default;
};

enum class AdjacencyPolicy : std::uint8_t { IndexMatched, ExplicitPairs, None };

std::string_view to_string(AdjacencyPolicy policy);

struct OwcPonSpec {
  std::uint32_t num_racks = 8;
  std::uint32_t servers_per_rack = 8;
  std::uint32_t num_groups = 2;
  std::uint32_t aps_per_group = 4;
  AdjacencyPolicy adjacency = AdjacencyPolicy::IndexMatched;
  std::vector<std::pair<ApRef, ApRef>> explicit_pairs;
  // One entry per group, or empty for "AP 0 everywhere".
  std::vector<std::uint32_t> gateway_ap;
  // OWC transceivers per rack and per AP; rack channel k pairs with AP channel k.
  std::uint32_t owc_channels = 1;
  LinkCapacities capacities;

  std::uint32_t gateway_for(std::uint32_t group) const {
    return group < gateway_ap.size() ? gateway_ap[group] : 0;
  }

  bool operator==(const OwcPonSpec&) const = default;
};

using Census = std::map<DeviceKind, std::uint64_t>;

std::uint64_t census_count(const Census& census, DeviceKind kind);

class NetworkGraph {
 public:
  using Spec = std::variant<TraditionalSpec, OwcPonSpec>;

  struct Adjacent {
    std::size_t node;
    std::size_t link;
  };

  // Accepts arbitrary node/link sets, including invalid ones, so malformed
  // fabrics can be represented and reported by validate().
  NetworkGraph(Architecture arch, Spec spec, std::vector<Node> nodes, std::vector<Link> links);

  Architecture architecture() const noexcept { return arch_; }
  const Spec& spec() const noexcept { return spec_; }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Link> links() const noexcept { return links_; }

  // Index of the first node with this id.
  std::optional<std::size_t> find_node(std::string_view id) const;
  std::optional<std::size_t> find_link(std::string_view id) const;

  // Links whose endpoints both resolve; dangling links are skipped.
  std::span<const Adjacent> neighbors(std::size_t node) const { return adjacency_[node]; }

  // First link (in insertion order) joining the two nodes, either direction.
  std::optional<std::size_t> link_between(std::size_t a, std::size_t b) const;

  // Resolved endpoint node indices, or nullopt for a dangling link.
  std::optional<std::pair<std::size_t, std::size_t>> endpoints(std::size_t link) const;

  std::vector<std::size_t> servers() const;

  bool operator==(const NetworkGraph& other) const {
    return arch_ == other.arch_ && spec_ == other.spec_ && nodes_ == other.nodes_ &&
           links_ == other.links_;
  }

 private:
  Architecture arch_;
  Spec spec_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::unordered_map<std::string, std::size_t> link_index_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> endpoints_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

NetworkGraph build_traditional(const TraditionalSpec& spec);

// Throws Error(SpecMismatch) when num_groups * aps_per_group != num_racks and
// Error(BadAdjacency) for explicit pairs naming a missing AP or a same-group pair.
NetworkGraph build_owc_pon(const OwcPonSpec& spec);

Census device_census(const NetworkGraph& graph);

// Rack r is served by AP (r % aps_per_group) of group (r / aps_per_group).
ApRef ap_for_rack(const OwcPonSpec& spec, std::uint32_t rack);

namespace node_ids {
std::string leaf(std::uint32_t rack);
std::string server(std::uint32_t rack, std::uint32_t slot);
std::string server_transceiver(std::uint32_t rack, std::uint32_t slot);
std::string rack_transceiver(std::uint32_t rack, std::uint32_t channel);
std::string spine(std::uint32_t index);
std::string ap_transceiver(ApRef ap, std::uint32_t channel);
std::string nic(ApRef ap);
std::string optical_switch(std::uint32_t group);
inline constexpr std::string_view kOlt = "olt";
inline constexpr std::string_view kExternal = "external";
}  // namespace node_ids

// ---------------------------------------------------------------------------
// Structural validation

enum class ViolationKind : std::uint8_t {
  DuplicateNodeId,
  DanglingLink,
  SelfLoopLink,
  NonPositiveCapacity,
  BadOwcLink,
  MissingLeafSwitch,
  DuplicateLeafSwitch,
  ServerTransceiverCount,
  MissingRackTransceiver,
  ExtraRackTransceiver,
  MissingApTransceiver,
  ExtraApTransceiver,
  OrphanNic,
  MissingNic,
  DuplicateNic,
  MissingOpticalSwitch,
  DuplicateOpticalSwitch,
  NicNotOnOpticalSwitch,
  MissingGateway,
  DuplicateGateway,
  MissingOltUplink,
  MissingOlt,
  DuplicateOlt,
  Disconnected,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // Node/link id, or "group 1" / "rack 3" for container-level rules.
  std::string subject;

  bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& violation);

// Empty iff the graph satisfies the architecture's structural rules.
// Connectivity is reported only when every local rule holds, since a local
// failure (a removed uplink, a missing transceiver) already implies it.
std::vector<Violation> validate(const NetworkGraph& graph);

}  // namespace owcpon
