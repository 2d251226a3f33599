#include "eigrpvv/router.hpp"

#include <algorithm>

namespace eigrpvv::eigrp {

using codec::EigrpPacket;
using codec::Opcode;

std::string SourceId::to_string() const { return connected ? "connected" : neighbor.to_string(); }

EigrpRouter::EigrpRouter(sim::Simulation& sim, int node, EigrpConfig config)
    : sim_(sim), node_(node), config_(std::move(config)) {
  sim_.attach(node_, this);
}

const std::string& EigrpRouter::name() const { return sim_.node(node_).name; }

const sim::Interface& EigrpRouter::iface(int i) const { return sim_.interface(port(i)); }

bool EigrpRouter::enabled(int i) const {
  if (config_.networks.empty()) return true;
  Ipv4Address a = iface(i).address.address;
  return std::any_of(config_.networks.begin(), config_.networks.end(), [&](const auto& p) { return p.contains(a); });
}

bool EigrpRouter::iface_up(int i) const { return sim_.interface_up(port(i)); }

void EigrpRouter::start() {
  sim_.log(node_, "eigrp " + std::to_string(config_.as_number) + " starting");
  int count = static_cast<int>(sim_.node(node_).interfaces.size());
  for (int i = 0; i < count; ++i)
    if (enabled(i) && iface_up(i)) interface_up(i);
  flush();
}

void EigrpRouter::on_interface_state(int i, bool up) {
  if (!enabled(i)) return;
  if (up) {
    interface_up(i);
    flush();
  } else {
    interface_down(i);
  }
}

void EigrpRouter::interface_up(int i) {
  if (!active_ifaces_.insert(i).second) return;
  const auto& itf = iface(i);
  Ipv4Prefix subnet = itf.address.subnet();
  TopologyEntry& e = topology_[subnet];
  e.destination = subnet;
  RouteSourceInfo info;
  info.total = RouteComponents::connected(itf.metric);
  info.reported = info.total;
  info.reported_distance = 0;
  info.distance = compute_metric(info.total, config_.k);
  e.sources[SourceId{true, {}, i}] = info;
  reevaluate(subnet);
  send_hello(i);
}

void EigrpRouter::interface_down(int i) {
  if (active_ifaces_.erase(i) == 0) return;
  if (auto it = hello_timers_.find(i); it != hello_timers_.end()) {
    sim_.events().cancel(it->second);
    hello_timers_.erase(it);
  }
  std::set<Ipv4Prefix> touched;
  std::vector<Ipv4Address> on_iface;
  for (const auto& [addr, n] : neighbors_)
    if (n.iface == i) on_iface.push_back(addr);
  for (auto addr : on_iface) tear_down(addr, "interface down", touched);
  Ipv4Prefix subnet = iface(i).address.subnet();
  if (auto it = topology_.find(subnet); it != topology_.end()) {
    it->second.sources.erase(SourceId{true, {}, i});
    touched.insert(subnet);
  }
  advertised_.erase(i);
  for (const auto& d : touched) reevaluate(d);
  flush();
}

void EigrpRouter::send_hello(int i) {
  EigrpPacket pkt = make_packet(Opcode::Hello);
  codec::ParametersTlv params;
  params.k = config_.k.k;
  params.hold_time = config_.hold_time_s;
  pkt.tlvs.emplace_back(params);
  if (config_.hello_style == HelloStyle::PeerTopology) {
    pkt.tlvs.emplace_back(config_.software_version);
    pkt.tlvs.emplace_back(codec::PeerTopologyIdListTlv{});
  } else {
    pkt.tlvs.emplace_back(codec::StubTlv{});
  }
  transmit(i, pkt, std::nullopt);
  hello_timers_[i] = sim_.events().schedule_in(config_.hello_interval, [this, i]() { send_hello(i); });
}

// ---------------------------------------------------------------- transport

EigrpPacket EigrpRouter::make_packet(Opcode op, std::uint32_t flags) const {
  EigrpPacket pkt;
  pkt.header.opcode = op;
  pkt.header.flags = flags;
  pkt.header.autonomous_system = config_.as_number;
  if (config_.auth_magic) pkt.tlvs.emplace_back(codec::AuthenticationTlv{*config_.auth_magic});
  return pkt;
}

void EigrpRouter::transmit(int i, const EigrpPacket& pkt, std::optional<Ipv4Address> unicast_to) {
  const auto& itf = iface(i);
  FrameHeaders h;
  h.src_mac = itf.mac;
  h.src = itf.address.address;
  if (unicast_to) {
    auto it = neighbors_.find(*unicast_to);
    if (it == neighbors_.end()) return;
    h.dst = *unicast_to;
    h.dst_mac = it->second.mac;
  } else {
    h.dst = kAllEigrpRouters;
    h.dst_mac = MacAddress::for_multicast(kAllEigrpRouters);
  }
  h.ip_id = next_ip_id_++;
  sim_.transmit(port(i), build_eigrp_frame(h, codec::encode_packet(pkt)));
  ++counters_.packets_sent;
}

void EigrpRouter::enqueue_reliable(Neighbor& n, EigrpPacket pkt, bool multicast) {
  pkt.header.sequence = next_sequence_++;
  if (next_sequence_ == 0) next_sequence_ = 1;
  n.queue.push_back(OutboundPacket{std::move(pkt), multicast, false, 0});
  if (n.queue.size() == 1) send_head(n);
}

void EigrpRouter::send_head(Neighbor& n) {
  if (n.queue.empty()) return;
  OutboundPacket& head = n.queue.front();
  if (n.ack_owed != 0) {
    head.packet.header.acknowledgment = n.ack_owed;
    n.ack_owed = 0;
  }
  bool multicast = head.multicast && !head.sent;
  transmit(n.iface, head.packet, multicast ? std::nullopt : std::optional{n.address});
  head.sent = true;
  Ipv4Address addr = n.address;
  n.rto_timer = sim_.events().schedule_in(config_.retransmit_timeout, [this, addr]() { on_rto(addr); });
}

void EigrpRouter::on_rto(Ipv4Address addr) {
  auto it = neighbors_.find(addr);
  if (it == neighbors_.end() || it->second.queue.empty()) return;
  Neighbor& n = it->second;
  OutboundPacket& head = n.queue.front();
  if (head.retransmissions >= config_.retransmit_limit) {
    tear_down_and_flush(addr, "retransmit limit exceeded");
    return;
  }
  ++head.retransmissions;
  ++counters_.retransmissions;
  send_head(n);
}

void EigrpRouter::handle_ack(Neighbor& n, std::uint32_t ack) {
  if (ack == 0 || n.queue.empty()) return;
  const OutboundPacket& head = n.queue.front();
  if (!head.sent || head.packet.header.sequence != ack) return;
  sim_.events().cancel(n.rto_timer);
  bool was_init = (head.packet.header.flags & codec::flags::kInit) != 0;
  n.queue.pop_front();
  send_head(n);
  if (was_init) {
    n.our_init_acked = true;
    maybe_neighbor_up(n);
  }
}

void EigrpRouter::send_standalone_ack(Neighbor& n) {
  EigrpPacket ack = make_packet(Opcode::Hello);
  ack.header.acknowledgment = n.ack_owed;
  n.ack_owed = 0;
  transmit(n.iface, ack, n.address);
}

// ---------------------------------------------------------------- neighbors

void EigrpRouter::on_frame(int i, std::span<const std::uint8_t> frame) {
  if (!active_ifaces_.contains(i)) return;
  auto parsed = parse_eigrp_frame(frame);
  if (!parsed) return;
  const FrameHeaders& h = parsed->headers;
  if (h.src == iface(i).address.address) return;
  EigrpPacket pkt;
  try {
    pkt = codec::decode_packet(parsed->eigrp);
  } catch (const codec::DecodeError& e) {
    ++counters_.decode_errors;
    sim_.log(node_, std::string("dropped packet from ") + h.src.to_string() + ": " + e.what());
    return;
  }
  ++counters_.packets_received;
  if (pkt.header.autonomous_system != config_.as_number) return;

  const codec::AuthenticationTlv* auth = nullptr;
  for (const auto& t : pkt.tlvs)
    if (auto* a = std::get_if<codec::AuthenticationTlv>(&t)) auth = a;
  bool auth_ok = config_.auth_magic ? (auth && auth->magic == *config_.auth_magic) : auth == nullptr;
  if (!auth_ok) {
    ++counters_.auth_failures;
    sim_.log(node_, "authentication mismatch from " + h.src.to_string());
    return;
  }

  if (pkt.header.opcode == Opcode::Hello) {
    process_hello(i, pkt, h);
    if (pkt.header.acknowledgment != 0) {
      auto it = neighbors_.find(h.src);
      if (it != neighbors_.end() && it->second.iface == i) handle_ack(it->second, pkt.header.acknowledgment);
    }
    flush();
    return;
  }

  auto it = neighbors_.find(h.src);
  if (it == neighbors_.end() || it->second.iface != i) return;
  std::uint32_t seq = pkt.header.sequence;

  if (pkt.header.flags & codec::flags::kInit) {
    if (it->second.state == NeighborState::Up) {
      std::uint16_t hold = it->second.hold_time_s;
      tear_down_and_flush(h.src, "peer restarted");
      add_pending_neighbor(i, h, hold);
      it = neighbors_.find(h.src);
    }
    Neighbor& n = it->second;
    n.peer_init_received = true;
    n.last_sequence = seq;
    n.ack_owed = seq;
    handle_ack(n, pkt.header.acknowledgment);
    if (n.ack_owed != 0) send_standalone_ack(n);
    maybe_neighbor_up(n);
    flush();
    return;
  }

  Neighbor& n = it->second;
  if (n.state != NeighborState::Up) return;  // not synchronized yet: no ack, peer retransmits
  if (n.last_sequence && *n.last_sequence == seq) {
    n.ack_owed = seq;
    send_standalone_ack(n);
    return;
  }
  n.last_sequence = seq;
  n.ack_owed = seq;
  handle_ack(n, pkt.header.acknowledgment);
  if (n.ack_owed != 0) send_standalone_ack(n);

  switch (pkt.header.opcode) {
    case Opcode::Update:
      process_update(n, pkt);
      break;
    case Opcode::Query:
      process_query(n, pkt);
      break;
    case Opcode::Reply:
      process_reply(n, pkt);
      break;
    case Opcode::Hello:
      break;
  }
  flush();
}

void EigrpRouter::process_hello(int i, const EigrpPacket& pkt, const FrameHeaders& h) {
  const codec::ParametersTlv* params = nullptr;
  for (const auto& t : pkt.tlvs)
    if (auto* p = std::get_if<codec::ParametersTlv>(&t)) params = p;
  if (!params) return;
  auto it = neighbors_.find(h.src);
  if (params->k != config_.k.k) {
    if (it != neighbors_.end()) {
      tear_down_and_flush(h.src, "K-value mismatch");
    } else {
      sim_.log(node_, "K-value mismatch with " + h.src.to_string() + ", no adjacency");
    }
    return;
  }
  if (it == neighbors_.end()) {
    add_pending_neighbor(i, h, params->hold_time);
    return;
  }
  if (it->second.iface != i) return;
  it->second.hold_time_s = params->hold_time;
  restart_hold_timer(it->second);
}

void EigrpRouter::add_pending_neighbor(int i, const FrameHeaders& h, std::uint16_t hold) {
  Neighbor n;
  n.address = h.src;
  n.iface = i;
  n.mac = h.src_mac;
  n.hold_time_s = hold;
  auto [it, inserted] = neighbors_.emplace(h.src, std::move(n));
  sim_.log(node_, "neighbor " + h.src.to_string() + " (" + iface(i).name + ") pending");
  restart_hold_timer(it->second);
  enqueue_reliable(it->second, make_packet(Opcode::Update, codec::flags::kInit), false);
}

void EigrpRouter::restart_hold_timer(Neighbor& n) {
  sim_.events().cancel(n.hold_timer);
  Ipv4Address addr = n.address;
  n.hold_timer = sim_.events().schedule_in(SimTime::from_seconds(n.hold_time_s),
                                           [this, addr]() { tear_down_and_flush(addr, "hold time expired"); });
}

void EigrpRouter::maybe_neighbor_up(Neighbor& n) {
  if (n.state != NeighborState::Pending || !n.our_init_acked || !n.peer_init_received) return;
  n.state = NeighborState::Up;
  sim_.log(node_, "neighbor " + n.address.to_string() + " (" + iface(n.iface).name + ") is up");
  initial_sync(n);
}

void EigrpRouter::initial_sync(Neighbor& n) {
  auto& adv = advertised_[n.iface];
  adv.clear();
  EigrpPacket pkt = make_packet(Opcode::Update, codec::flags::kEndOfTable);
  for (const auto& [dest, e] : topology_) {
    if (e.state != DualState::Passive) continue;
    Advertisement a = advertise_filter(e, n.iface);
    if (a.metric == kInfiniteMetric) continue;
    pkt.tlvs.emplace_back(route_tlv(dest, a.components));
    adv[dest] = a.metric;
  }
  enqueue_reliable(n, std::move(pkt), true);
}

std::vector<Neighbor*> EigrpRouter::up_neighbors_on(int i) {
  std::vector<Neighbor*> out;
  for (auto& [addr, n] : neighbors_)
    if (n.iface == i && n.state == NeighborState::Up) out.push_back(&n);
  return out;
}

void EigrpRouter::tear_down(Ipv4Address addr, const std::string& reason, std::set<Ipv4Prefix>& touched) {
  auto it = neighbors_.find(addr);
  if (it == neighbors_.end()) return;
  Neighbor& n = it->second;
  sim_.events().cancel(n.hold_timer);
  sim_.events().cancel(n.rto_timer);
  int i = n.iface;
  sim_.log(node_, "neighbor " + addr.to_string() + " (" + iface(i).name + ") is down: " + reason);
  ++counters_.neighbor_teardowns;
  neighbors_.erase(it);
  for (auto& [dest, e] : topology_) {
    bool hit = false;
    for (auto s = e.sources.begin(); s != e.sources.end();) {
      if (!s->first.connected && s->first.neighbor == addr) {
        s = e.sources.erase(s);
        hit = true;
      } else {
        ++s;
      }
    }
    if (e.replies_outstanding.erase(addr)) hit = true;
    e.deferred_replies.erase(addr);
    if (hit) touched.insert(dest);
  }
  pending_.replies.erase(addr);
  if (up_neighbors_on(i).empty()) advertised_.erase(i);
}

void EigrpRouter::tear_down_and_flush(Ipv4Address addr, const std::string& reason) {
  std::set<Ipv4Prefix> touched;
  tear_down(addr, reason, touched);
  for (const auto& d : touched) reevaluate(d);
  flush();
}

// ---------------------------------------------------------------- DUAL

bool EigrpRouter::set_source(TopologyEntry& e, const SourceId& id, const RouteComponents& reported, int i) {
  if (reported.unreachable()) return e.sources.erase(id) > 0;
  RouteSourceInfo info;
  info.reported = reported;
  info.total = compose(reported, iface(i).metric);
  info.reported_distance = compute_metric(reported, config_.k);
  info.distance = compute_metric(info.total, config_.k);
  auto it = e.sources.find(id);
  if (it != e.sources.end() && it->second.reported == info.reported) return false;
  e.sources[id] = info;
  return true;
}

void EigrpRouter::process_update(Neighbor& n, const EigrpPacket& pkt) {
  std::set<Ipv4Prefix> touched;
  SourceId id{false, n.address, n.iface};
  for (const auto& r : pkt.routes()) {
    RouteComponents c = from_wire(r);
    auto it = topology_.find(r.destination);
    if (it == topology_.end()) {
      if (c.unreachable()) continue;
      it = topology_.emplace(r.destination, TopologyEntry{}).first;
      it->second.destination = r.destination;
    }
    if (set_source(it->second, id, c, n.iface)) touched.insert(r.destination);
  }
  for (const auto& d : touched) reevaluate(d);
}

void EigrpRouter::process_query(Neighbor& n, const EigrpPacket& pkt) {
  SourceId id{false, n.address, n.iface};
  for (const auto& r : pkt.routes()) {
    RouteComponents c = from_wire(r);
    auto it = topology_.find(r.destination);
    if (it == topology_.end()) {
      if (!c.unreachable()) {
        it = topology_.emplace(r.destination, TopologyEntry{}).first;
        it->second.destination = r.destination;
        set_source(it->second, id, c, n.iface);
        reevaluate(r.destination);
      }
      pending_.replies[n.address].insert(r.destination);
      continue;
    }
    TopologyEntry& e = it->second;
    if (e.state == DualState::Active) {
      set_source(e, id, c, n.iface);
      pending_.replies[n.address].insert(r.destination);
      continue;
    }
    set_source(e, id, c, n.iface);
    reevaluate(r.destination, n.address);
    it = topology_.find(r.destination);
    if (it != topology_.end() && it->second.state == DualState::Active) {
      it->second.deferred_replies.insert(n.address);
    } else {
      pending_.replies[n.address].insert(r.destination);
    }
  }
}

void EigrpRouter::process_reply(Neighbor& n, const EigrpPacket& pkt) {
  SourceId id{false, n.address, n.iface};
  for (const auto& r : pkt.routes()) {
    auto it = topology_.find(r.destination);
    if (it == topology_.end()) {
      sim_.log(node_, "unexpected reply for " + r.destination.to_string() + " from " + n.address.to_string());
      continue;
    }
    TopologyEntry& e = it->second;
    bool changed = set_source(e, id, from_wire(r), n.iface);
    bool expected = e.state == DualState::Active && e.replies_outstanding.erase(n.address) > 0;
    if (!expected)
      sim_.log(node_, "unexpected reply for " + r.destination.to_string() + " from " + n.address.to_string());
    if (expected || changed) reevaluate(r.destination);
  }
}

void EigrpRouter::select_successors(TopologyEntry& e) {
  e.successors.clear();
  // An attached subnet is always reached through its own interface, even when a path
  // through a neighbor has the lower metric.
  bool attached = std::any_of(e.sources.begin(), e.sources.end(), [](const auto& s) { return s.first.connected; });
  auto eligible = [&](const SourceId& id) { return id.connected || !attached; };
  Metric best = kInfiniteMetric;
  for (const auto& [id, s] : e.sources)
    if (eligible(id)) best = std::min(best, s.distance);
  if (best == kInfiniteMetric) return;
  for (const auto& [id, s] : e.sources)
    if (eligible(id) && s.distance == best && feasibility_check(s.reported_distance, e.feasible_distance))
      e.successors.insert(id);
  if (!e.successors.empty()) e.feasible_distance = std::min(e.feasible_distance, best);
}

void EigrpRouter::reevaluate(const Ipv4Prefix& dest, std::optional<Ipv4Address> querier) {
  auto it = topology_.find(dest);
  if (it == topology_.end()) return;
  TopologyEntry& e = it->second;
  if (e.state == DualState::Active) {
    if (e.replies_outstanding.empty()) complete_diffusion(e);
  } else if (e.sources.empty()) {
    if (!e.successors.empty()) go_active(e, querier);
  } else {
    bool had_route = !e.successors.empty();
    select_successors(e);
    if (e.successors.empty() && had_route) {
      go_active(e, querier);
    } else if (e.successors.empty()) {
      // never had a route: take the best source outright
      e.feasible_distance = kInfiniteMetric;
      select_successors(e);
    }
  }
  if (e.state == DualState::Passive && e.sources.empty() && e.successors.empty() && e.deferred_replies.empty())
    topology_.erase(it);
}

void EigrpRouter::go_active(TopologyEntry& e, std::optional<Ipv4Address> querier) {
  e.state = DualState::Active;
  std::erase_if(e.successors, [&](const SourceId& s) { return !e.sources.contains(s); });
  e.replies_outstanding.clear();
  for (const auto& [addr, n] : neighbors_) {
    if (n.state != NeighborState::Up || (querier && addr == *querier)) continue;
    e.replies_outstanding.insert(addr);
    pending_.queries[n.iface].insert(e.destination);
  }
  sim_.log(node_, e.destination.to_string() + " active, " + std::to_string(e.replies_outstanding.size()) +
                      " replies outstanding");
  if (e.replies_outstanding.empty()) complete_diffusion(e);
}

void EigrpRouter::complete_diffusion(TopologyEntry& e) {
  e.state = DualState::Passive;
  e.replies_outstanding.clear();
  e.feasible_distance = kInfiniteMetric;
  select_successors(e);
  sim_.log(node_, e.destination.to_string() + " passive, " +
                      (e.successors.empty() ? std::string("unreachable")
                                            : "fd " + std::to_string(e.feasible_distance)));
  for (auto q : e.deferred_replies)
    if (neighbors_.contains(q)) pending_.replies[q].insert(e.destination);
  e.deferred_replies.clear();
}

EigrpRouter::Advertisement EigrpRouter::advertise_filter(const TopologyEntry& e, int i) const {
  Advertisement a;
  if (e.state != DualState::Passive || e.successors.empty()) return a;
  for (const auto& s : e.successors)
    if (s.iface == i) return a;  // split horizon with poison reverse
  const RouteSourceInfo& best = e.sources.at(*e.successors.begin());
  a.components = best.total;
  a.metric = best.distance;
  return a;
}

codec::InternalRouteTlv EigrpRouter::route_tlv(const Ipv4Prefix& dest, const RouteComponents& c) const {
  codec::InternalRouteTlv t;
  t.destination = dest;
  to_wire(c, t);
  return t;
}

void EigrpRouter::flush() {
  PendingOutput out = std::move(pending_);
  pending_ = {};

  for (const auto& [addr, dests] : out.replies) {
    auto it = neighbors_.find(addr);
    if (it == neighbors_.end() || it->second.state != NeighborState::Up) continue;
    EigrpPacket pkt = make_packet(Opcode::Reply);
    for (const auto& d : dests) {
      auto e = topology_.find(d);
      Advertisement a = e == topology_.end() ? Advertisement{} : advertise_filter(e->second, it->second.iface);
      pkt.tlvs.emplace_back(route_tlv(d, a.components));
    }
    enqueue_reliable(it->second, std::move(pkt), false);
  }

  for (const auto& [i, dests] : out.queries) {
    for (Neighbor* n : up_neighbors_on(i)) {
      EigrpPacket pkt = make_packet(Opcode::Query);
      for (const auto& d : dests) {
        auto e = topology_.find(d);
        if (e == topology_.end() || e->second.state != DualState::Active ||
            !e->second.replies_outstanding.contains(n->address))
          continue;
        pkt.tlvs.emplace_back(route_tlv(d, RouteComponents::unreachable_route()));
      }
      if (!pkt.routes().empty()) enqueue_reliable(*n, std::move(pkt), true);
    }
  }

  for (int i : active_ifaces_) {
    auto nbrs = up_neighbors_on(i);
    if (nbrs.empty()) continue;
    auto& adv = advertised_[i];
    std::set<Ipv4Prefix> dests;
    for (const auto& [d, e] : topology_) dests.insert(d);
    for (const auto& [d, m] : adv) dests.insert(d);
    EigrpPacket pkt = make_packet(Opcode::Update);
    for (const auto& d : dests) {
      auto e = topology_.find(d);
      if (e != topology_.end() && e->second.state == DualState::Active) continue;
      Advertisement a = e == topology_.end() ? Advertisement{} : advertise_filter(e->second, i);
      auto known = adv.find(d);
      Metric was = known == adv.end() ? kInfiniteMetric : known->second;
      if (a.metric == was) continue;
      if (a.metric != kInfiniteMetric && e != topology_.end()) {
        for (const auto& s : e->second.successors)
          if (s.iface == i) ++counters_.split_horizon_violations;
      }
      pkt.tlvs.emplace_back(route_tlv(d, a.components));
      if (a.metric == kInfiniteMetric) {
        adv.erase(d);
      } else {
        adv[d] = a.metric;
      }
    }
    if (pkt.routes().empty()) continue;
    for (Neighbor* n : nbrs) enqueue_reliable(*n, pkt, true);
  }

  sync_routing_table();
}

void EigrpRouter::sync_routing_table() {
  std::vector<tables::RoutingEntry> desired;
  for (const auto& [d, e] : topology_) {
    for (const auto& id : e.successors) {
      auto s = e.sources.find(id);
      if (s == e.sources.end()) continue;
      if (e.state == DualState::Passive && s->second.reported_distance >= e.feasible_distance)
        ++counters_.feasibility_violations;
      tables::RoutingEntry r;
      r.source = id.connected ? tables::RouteSource::Connected : tables::RouteSource::Eigrp;
      r.destination = d;
      if (!id.connected) r.next_hop = id.neighbor;
      r.exit_interface = iface(id.iface).name;
      r.metric = id.connected ? 0 : s->second.distance;
      r.admin_distance = tables::administrative_distance(r.source);
      desired.push_back(r);
    }
  }
  auto delta = routing_.sync(std::move(desired));
  for (const auto& r : delta.removed)
    sim_.log(node_, "route removed " + r.destination.to_string() + " via " +
                        (r.next_hop ? r.next_hop->to_string() : "connected"));
  for (const auto& r : delta.added)
    sim_.log(node_, "route added " + r.destination.to_string() + " via " +
                        (r.next_hop ? r.next_hop->to_string() : "connected") + " metric " +
                        std::to_string(r.metric));
}

tables::TableSnapshot EigrpRouter::take_snapshot() const {
  tables::TableSnapshot snap;
  snap.node = name();
  snap.taken_at = sim_.now();
  snap.routes = routing_.entries();
  for (const auto& [d, e] : topology_) {
    tables::TopologySummary t;
    t.destination = d;
    t.active = e.state == DualState::Active;
    t.feasible_distance = e.feasible_distance;
    for (const auto& s : e.successors) t.successors.push_back(s.to_string());
    snap.topology.push_back(std::move(t));
  }
  for (const auto& [addr, n] : neighbors_)
    snap.neighbors.push_back({addr, iface(n.iface).name, n.state == NeighborState::Up});
  return snap;
}

}  // namespace eigrpvv::eigrp
