#include "eigrpvv/simulation.hpp"

#include <algorithm>

namespace eigrpvv::sim {

std::optional<ChannelProfile> channel_profile(std::string_view name) {
  std::string shortname = short_channel_name(name);
  if (shortname == "Eth10M") return ChannelProfile{"Eth10M", 10'000'000, {}};
  if (shortname == "Eth100M") return ChannelProfile{"Eth100M", 100'000'000, {}};
  if (shortname == "Eth1G") return ChannelProfile{"Eth1G", 1'000'000'000, {}};
  return std::nullopt;
}

int Simulation::add_node(std::string name, SimTime start) {
  if (find_node(name)) throw SimError(SimErrorKind::InvalidTopology, "duplicate node " + name);
  nodes_.push_back(Node{std::move(name), start, {}, nullptr});
  return static_cast<int>(nodes_.size() - 1);
}

int Simulation::add_interface(int node_id, std::string name, InterfaceAddress address, eigrp::InterfaceMetric metric) {
  auto& n = nodes_.at(static_cast<std::size_t>(node_id));
  for (const auto& i : n.interfaces)
    if (i.name == name) throw SimError(SimErrorKind::InvalidTopology, "duplicate interface " + n.name + "." + name);
  int iface = static_cast<int>(n.interfaces.size());
  MacAddress mac{{0x02, 0x00, 0x00, 0x00, static_cast<std::uint8_t>(node_id + 1), static_cast<std::uint8_t>(iface + 1)}};
  n.interfaces.push_back(Interface{std::move(name), address, metric, mac, -1});
  return iface;
}

int Simulation::add_link(PortRef a, PortRef b, ChannelProfile channel, bool up) {
  for (PortRef p : {a, b}) {
    if (interface(p).link != -1)
      throw SimError(SimErrorKind::InvalidTopology, port_name(p) + " already has a link attached");
  }
  if (a == b) throw SimError(SimErrorKind::InvalidTopology, "link endpoints must differ");
  int id = static_cast<int>(links_.size());
  links_.push_back(Link{a, b, std::move(channel), up, 0, {}});
  nodes_[static_cast<std::size_t>(a.node)].interfaces[static_cast<std::size_t>(a.iface)].link = id;
  nodes_[static_cast<std::size_t>(b.node)].interfaces[static_cast<std::size_t>(b.iface)].link = id;
  return id;
}

void Simulation::attach(int node_id, NodeAgent* agent) { nodes_.at(static_cast<std::size_t>(node_id)).agent = agent; }

const Interface& Simulation::interface(PortRef p) const {
  if (p.node < 0 || static_cast<std::size_t>(p.node) >= nodes_.size())
    throw SimError(SimErrorKind::UnknownNode, "no node with id " + std::to_string(p.node));
  const auto& ifs = nodes_[static_cast<std::size_t>(p.node)].interfaces;
  if (p.iface < 0 || static_cast<std::size_t>(p.iface) >= ifs.size())
    throw SimError(SimErrorKind::UnknownLink, "no interface " + std::to_string(p.iface) + " on " + node(p.node).name);
  return ifs[static_cast<std::size_t>(p.iface)];
}

std::optional<int> Simulation::find_node(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<PortRef> Simulation::find_port(std::string_view node_name, std::string_view iface) const {
  auto n = find_node(node_name);
  if (!n) return std::nullopt;
  std::string wanted = normalize_gate(iface);
  const auto& ifs = nodes_[static_cast<std::size_t>(*n)].interfaces;
  for (std::size_t i = 0; i < ifs.size(); ++i)
    if (ifs[i].name == wanted) return PortRef{*n, static_cast<int>(i)};
  return std::nullopt;
}

std::optional<int> Simulation::link_at(PortRef p) const {
  int l = interface(p).link;
  if (l < 0) return std::nullopt;
  return l;
}

std::string Simulation::port_name(PortRef p) const { return node(p.node).name + "." + interface(p).name; }

bool Simulation::interface_up(PortRef p) const {
  int l = interface(p).link;
  return l < 0 || links_[static_cast<std::size_t>(l)].up;
}

std::optional<PortRef> Simulation::peer(PortRef p) const {
  int l = interface(p).link;
  if (l < 0) return std::nullopt;
  const Link& link = links_[static_cast<std::size_t>(l)];
  if (!link.up) return std::nullopt;
  return link.a == p ? link.b : link.a;
}

void Simulation::transmit(PortRef from, Bytes frame) {
  if (!jitter_) {
    start_transmission(from, std::move(frame));
    return;
  }
  auto [lo, hi] = *jitter_;
  std::uint64_t span = static_cast<std::uint64_t>((hi - lo).ps()) + 1;
  SimTime delay = lo + SimTime::from_ps(static_cast<std::int64_t>(rng_() % span));
  events_.schedule_in(delay, [this, from, f = std::move(frame)]() mutable { start_transmission(from, std::move(f)); });
}

void Simulation::start_transmission(PortRef from, Bytes frame) {
  auto link_id = link_at(from);
  if (!link_id) return;
  Link& link = links_[static_cast<std::size_t>(*link_id)];
  if (!link.up) return;
  int side = link.a == from ? 0 : 1;
  PortRef to = side == 0 ? link.b : link.a;
  SimTime start = std::max(now(), link.busy_until[side]);
  std::int64_t bits = static_cast<std::int64_t>(frame.size()) * 8;
  SimTime serialization =
      SimTime::from_ps(bits * SimTime::kPerSecond / static_cast<std::int64_t>(link.channel.bandwidth_bps));
  link.busy_until[side] = start + serialization;
  record(from, Direction::Out, start, frame);
  SimTime arrival = start + serialization + link.channel.propagation;
  std::uint64_t generation = link.generation;
  int lid = *link_id;
  events_.schedule(arrival, [this, lid, generation, from, to, f = std::move(frame)]() {
    const Link& l = links_[static_cast<std::size_t>(lid)];
    if (!l.up || l.generation != generation) return;
    if (drop_filter_ && drop_filter_(from, to, f)) return;
    record(to, Direction::In, now(), f);
    if (NodeAgent* agent = nodes_[static_cast<std::size_t>(to.node)].agent) agent->on_frame(to.iface, f);
  });
}

void Simulation::record(PortRef point, Direction dir, SimTime at, const Bytes& frame) {
  for (const auto& c : captures_) {
    if (c.point == point && at >= c.start && at < c.stop) {
      records_.push_back(TraceRecord{point, dir, at, frame});
      return;
    }
  }
}

void Simulation::enable_jitter(SimTime min, SimTime max) {
  if (max < min) std::swap(min, max);
  jitter_ = std::pair{min, max};
}

void Simulation::enable_capture(PortRef point, SimTime start, SimTime stop) {
  (void)interface(point);
  captures_.push_back(Capture{point, start, stop});
}

std::vector<TraceRecord> Simulation::trace(PortRef point) const {
  std::vector<TraceRecord> out;
  for (const auto& r : records_)
    if (r.point == point) out.push_back(r);
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.timestamp < y.timestamp; });
  return out;
}

void Simulation::set_link_state(int link_id, bool up, const ChannelProfile* channel) {
  Link& link = links_[static_cast<std::size_t>(link_id)];
  link.up = up;
  ++link.generation;
  if (channel) link.channel = *channel;
  if (up) link.busy_until[0] = link.busy_until[1] = now();
}

ActionOutcome Simulation::apply_scenario_action(const ScenarioAction& action) {
  auto src = find_port(action.src_module, action.src_gate);
  if (!src)
    throw SimError(SimErrorKind::UnknownLink, "unknown gate " + action.src_module + "." + action.src_gate);
  std::optional<PortRef> dest;
  if (!action.dest_module.empty()) {
    dest = find_port(action.dest_module, action.dest_gate);
    if (!dest)
      throw SimError(SimErrorKind::UnknownLink, "unknown gate " + action.dest_module + "." + action.dest_gate);
  }
  auto link_id = link_at(*src);
  if (!link_id) throw SimError(SimErrorKind::UnknownLink, port_name(*src) + " has no link");
  Link& link = links_[static_cast<std::size_t>(*link_id)];
  PortRef other = link.a == *src ? link.b : link.a;
  if (dest && *dest != other)
    throw SimError(SimErrorKind::UnknownLink, "no link between " + port_name(*src) + " and " + port_name(*dest));

  bool want_up = action.kind == ActionKind::Connect;
  if (link.up == want_up) {
    log(src->node, std::string("link ") + port_name(*src) + " already " + (want_up ? "up" : "down") + ", ignored");
    return ActionOutcome::AlreadyInState;
  }
  std::optional<ChannelProfile> profile;
  if (want_up) {
    profile = channel_profile(action.channel);
    if (!profile) throw SimError(SimErrorKind::InvalidTopology, "unknown channel type " + action.channel);
  }
  set_link_state(*link_id, want_up, profile ? &*profile : nullptr);
  log(src->node, std::string(want_up ? "connect " : "disconnect ") + port_name(*src) + " <-> " + port_name(other));
  for (PortRef p : {*src, other}) {
    if (NodeAgent* agent = nodes_[static_cast<std::size_t>(p.node)].agent) agent->on_interface_state(p.iface, want_up);
  }
  return ActionOutcome::Applied;
}

void Simulation::schedule_scenario(const std::vector<ScenarioAction>& actions) {
  for (const auto& a : actions)
    events_.schedule(a.at, [this, a]() { apply_scenario_action(a); }, Priority::Scenario);
}

RunReport Simulation::run(SimTime until) {
  if (!booted_) {
    booted_ = true;
    for (auto& n : nodes_)
      if (n.agent) events_.schedule(n.start, [agent = n.agent]() { agent->start(); }, Priority::Normal);
  }
  std::size_t fired = events_.run_until(until);
  return RunReport{now(), fired};
}

void Simulation::log(int node_id, std::string message) {
  std::string name = node_id >= 0 ? node(node_id).name : std::string{};
  log_.push_back(LogEntry{now(), std::move(name), std::move(message)});
}

}  // namespace eigrpvv::sim
