#pragma once

// EIGRP router: neighbor discovery, reliable transport (RTP) and DUAL.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eigrpvv/metric.hpp"
#include "eigrpvv/packet.hpp"
#include "eigrpvv/simulation.hpp"
#include "eigrpvv/tables.hpp"

namespace eigrpvv::eigrp {

enum class HelloStyle {
  PeerTopology,  // PARAMETERS, SOFTWARE_VERSION, PEER_TID_LIST
  Stub,          // PARAMETERS, STUB
};

struct EigrpConfig {
  std::uint16_t as_number = 1;
  KValues k;
  SimTime hello_interval = SimTime::from_seconds(5);
  std::uint16_t hold_time_s = 15;
  SimTime retransmit_timeout = SimTime::from_seconds(1);
  int retransmit_limit = 16;
  /// Interfaces whose address falls inside one of these run EIGRP.
  std::vector<Ipv4Prefix> networks;
  std::optional<std::string> auth_magic;
  HelloStyle hello_style = HelloStyle::PeerTopology;
  codec::SoftwareVersionTlv software_version;
};

enum class NeighborState { Pending, Up };

struct OutboundPacket {
  codec::EigrpPacket packet;  // sequence already assigned
  bool multicast = false;     // first transmission goes to 224.0.0.10
  bool sent = false;
  int retransmissions = 0;
};

struct Neighbor {
  Ipv4Address address;
  int iface = -1;
  MacAddress mac;
  NeighborState state = NeighborState::Pending;
  std::uint16_t hold_time_s = 15;
  sim::EventHandle hold_timer;
  bool our_init_acked = false;
  bool peer_init_received = false;
  std::optional<std::uint32_t> last_sequence;  // of the last reliable packet accepted
  std::uint32_t ack_owed = 0;                  // sequence still to acknowledge, 0 when none
  std::deque<OutboundPacket> queue;            // head is the single in-flight packet
  sim::EventHandle rto_timer;
};

/// Where a route is learned from: a directly connected subnet or a neighbor.
struct SourceId {
  bool connected = false;
  Ipv4Address neighbor;  // unset for connected sources
  int iface = -1;
  auto operator<=>(const SourceId&) const = default;
  std::string to_string() const;
};

struct RouteSourceInfo {
  RouteComponents reported;  // as advertised by the neighbor
  RouteComponents total;     // via our incoming interface
  Metric reported_distance = kInfiniteMetric;
  Metric distance = kInfiniteMetric;
};

enum class DualState { Passive, Active };

struct TopologyEntry {
  Ipv4Prefix destination;
  DualState state = DualState::Passive;
  Metric feasible_distance = kInfiniteMetric;
  std::map<SourceId, RouteSourceInfo> sources;  // reachable sources only
  std::set<SourceId> successors;
  std::set<Ipv4Address> replies_outstanding;
  std::set<Ipv4Address> deferred_replies;  // queriers waiting for this computation
};

struct RouterCounters {
  std::size_t packets_sent = 0;
  std::size_t packets_received = 0;
  std::size_t decode_errors = 0;
  std::size_t auth_failures = 0;
  std::size_t retransmissions = 0;
  std::size_t neighbor_teardowns = 0;
  std::size_t feasibility_violations = 0;
  std::size_t split_horizon_violations = 0;
};

class EigrpRouter final : public sim::NodeAgent {
 public:
  EigrpRouter(sim::Simulation& sim, int node, EigrpConfig config);

  void start() override;
  void on_interface_state(int iface, bool up) override;
  void on_frame(int iface, std::span<const std::uint8_t> frame) override;

  const std::string& name() const;
  const EigrpConfig& config() const { return config_; }
  const std::map<Ipv4Prefix, TopologyEntry>& topology() const { return topology_; }
  const std::map<Ipv4Address, Neighbor>& neighbors() const { return neighbors_; }
  const tables::RoutingTable& routing_table() const { return routing_; }
  const RouterCounters& counters() const { return counters_; }
  tables::TableSnapshot take_snapshot() const;

 private:
  struct Advertisement {
    RouteComponents components = RouteComponents::unreachable_route();  // poisoned or withdrawn by default
    Metric metric = kInfiniteMetric;
  };

  // Outputs collected while handling one event, sent together by flush().
  struct PendingOutput {
    std::map<Ipv4Address, std::set<Ipv4Prefix>> replies;
    std::map<int, std::set<Ipv4Prefix>> queries;
  };

  // interfaces
  bool enabled(int iface) const;
  bool iface_up(int iface) const;
  sim::PortRef port(int iface) const { return {node_, iface}; }
  const sim::Interface& iface(int i) const;
  void interface_up(int iface);
  void interface_down(int iface);
  void send_hello(int iface);

  // transport
  codec::EigrpPacket make_packet(codec::Opcode op, std::uint32_t flags = 0) const;
  void transmit(int iface, const codec::EigrpPacket& pkt, std::optional<Ipv4Address> unicast_to);
  void enqueue_reliable(Neighbor& n, codec::EigrpPacket pkt, bool multicast);
  void send_head(Neighbor& n);
  void on_rto(Ipv4Address neighbor);
  void handle_ack(Neighbor& n, std::uint32_t ack);
  void send_standalone_ack(Neighbor& n);

  // neighbors
  void process_hello(int iface, const codec::EigrpPacket& pkt, const FrameHeaders& h);
  void add_pending_neighbor(int iface, const FrameHeaders& h, std::uint16_t hold);
  void restart_hold_timer(Neighbor& n);
  void maybe_neighbor_up(Neighbor& n);
  void initial_sync(Neighbor& n);
  void tear_down(Ipv4Address address, const std::string& reason, std::set<Ipv4Prefix>& touched);
  void tear_down_and_flush(Ipv4Address address, const std::string& reason);
  std::vector<Neighbor*> up_neighbors_on(int iface);

  // DUAL
  void process_update(Neighbor& n, const codec::EigrpPacket& pkt);
  void process_query(Neighbor& n, const codec::EigrpPacket& pkt);
  void process_reply(Neighbor& n, const codec::EigrpPacket& pkt);
  bool set_source(TopologyEntry& e, const SourceId& id, const RouteComponents& reported, int iface);
  void reevaluate(const Ipv4Prefix& dest, std::optional<Ipv4Address> querier = std::nullopt);
  void select_successors(TopologyEntry& e);
  void go_active(TopologyEntry& e, std::optional<Ipv4Address> querier);
  void complete_diffusion(TopologyEntry& e);
  Advertisement advertise_filter(const TopologyEntry& e, int iface) const;
  codec::InternalRouteTlv route_tlv(const Ipv4Prefix& dest, const RouteComponents& c) const;
  void flush();
  void sync_routing_table();

  sim::Simulation& sim_;
  int node_;
  EigrpConfig config_;
  std::map<Ipv4Address, Neighbor> neighbors_;
  std::map<Ipv4Prefix, TopologyEntry> topology_;
  // Last value each interface's neighbors heard from us in an Update.
  std::map<int, std::map<Ipv4Prefix, Metric>> advertised_;
  std::map<int, sim::EventHandle> hello_timers_;
  std::set<int> active_ifaces_;
  PendingOutput pending_;
  tables::RoutingTable routing_;
  RouterCounters counters_;
  std::uint32_t next_sequence_ = 1;
  mutable std::uint16_t next_ip_id_ = 1;
};

}  // namespace eigrpvv::eigrp
