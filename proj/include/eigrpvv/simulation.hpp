#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigrpvv/bytes.hpp"
#include "eigrpvv/frame.hpp"
#include "eigrpvv/ipv4.hpp"
#include "eigrpvv/metric.hpp"
#include "eigrpvv/scenario.hpp"
#include "eigrpvv/scheduler.hpp"

namespace eigrpvv::sim {

struct ChannelProfile {
  std::string name = "Eth10M";
  std::uint64_t bandwidth_bps = 10'000'000;
  SimTime propagation{};
};

/// Known link profiles by short name (Eth10M, Eth100M, Eth1G); accepts dotted
/// channel-type paths too.
std::optional<ChannelProfile> channel_profile(std::string_view name);

struct PortRef {
  int node = -1;
  int iface = -1;
  auto operator<=>(const PortRef&) const = default;
};

enum class Direction { In, Out };

struct TraceRecord {
  PortRef point;
  Direction direction = Direction::Out;
  SimTime timestamp;
  Bytes frame;
};

/// Protocol side of a node. All callbacks run on the simulation thread.
class NodeAgent {
 public:
  virtual ~NodeAgent() = default;
  virtual void start() = 0;
  virtual void on_interface_state(int iface, bool up) = 0;
  virtual void on_frame(int iface, std::span<const std::uint8_t> frame) = 0;
};

struct Interface {
  std::string name;
  InterfaceAddress address;
  eigrp::InterfaceMetric metric;
  MacAddress mac;
  int link = -1;  // -1: stub network with no attached link, always up
};

struct Node {
  std::string name;
  SimTime start{};
  std::vector<Interface> interfaces;
  NodeAgent* agent = nullptr;
};

struct Link {
  PortRef a;
  PortRef b;
  ChannelProfile channel;
  bool up = true;
  std::uint64_t generation = 0;  // bumped on every state change; in-flight frames from older generations drop
  SimTime busy_until[2]{};       // transmitter availability at a and at b
};

struct LogEntry {
  SimTime at;
  std::string node;
  std::string message;
};

enum class SimErrorKind { UnknownNode, UnknownLink, InvalidTopology };

struct SimError : std::runtime_error {
  SimError(SimErrorKind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  SimErrorKind kind;
};

enum class ActionOutcome { Applied, AlreadyInState };

struct RunReport {
  SimTime end;
  std::size_t events_fired = 0;
};

/// One isolated simulation: scheduler, nodes, point-to-point links and capture points.
/// Single-threaded; distinct instances share nothing.
class Simulation {
 public:
  explicit Simulation(std::uint64_t seed = 0) : rng_(seed) {}
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  EventQueue& events() { return events_; }
  SimTime now() const { return events_.now(); }

  int add_node(std::string name, SimTime start = {});
  int add_interface(int node, std::string name, InterfaceAddress address, eigrp::InterfaceMetric metric = {});
  int add_link(PortRef a, PortRef b, ChannelProfile channel = {}, bool up = true);
  void attach(int node, NodeAgent* agent);

  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const Interface& interface(PortRef p) const;
  const std::vector<Link>& links() const { return links_; }
  std::optional<int> find_node(std::string_view name) const;
  std::optional<PortRef> find_port(std::string_view node, std::string_view iface) const;
  std::optional<int> link_at(PortRef p) const;
  std::string port_name(PortRef p) const;

  bool interface_up(PortRef p) const;
  /// Far end of the up link attached at `p`.
  std::optional<PortRef> peer(PortRef p) const;

  /// Queues `frame` for serialization out of `from`. Dropped silently when the port
  /// has no up link. With jitter enabled the hand-off is delayed by a seeded draw.
  void transmit(PortRef from, Bytes frame);

  /// Uniform per-transmission delay in [min, max].
  void enable_jitter(SimTime min, SimTime max);
  /// Records frames at `point` with timestamps in [start, stop).
  void enable_capture(PortRef point, SimTime start, SimTime stop);
  /// Records of one capture point, stably ordered by timestamp.
  std::vector<TraceRecord> trace(PortRef point) const;
  const std::vector<TraceRecord>& all_records() const { return records_; }

  /// Fault injection: frames for which the predicate returns true are lost in transit.
  using DropFilter = std::function<bool(PortRef from, PortRef to, std::span<const std::uint8_t> frame)>;
  void set_drop_filter(DropFilter filter) { drop_filter_ = std::move(filter); }

  /// Throws SimError{UnknownLink} when the referenced gate has no link to act on.
  ActionOutcome apply_scenario_action(const ScenarioAction& action);
  void schedule_scenario(const std::vector<ScenarioAction>& actions);

  /// Boots nodes on the first call, then fires all events up to `until`.
  RunReport run(SimTime until);

  void log(int node, std::string message);
  const std::vector<LogEntry>& log_entries() const { return log_; }

 private:
  void set_link_state(int link_id, bool up, const ChannelProfile* channel);
  void start_transmission(PortRef from, Bytes frame);
  void record(PortRef point, Direction dir, SimTime at, const Bytes& frame);

  EventQueue events_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  struct Capture {
    PortRef point;
    SimTime start;
    SimTime stop;
  };
  std::vector<Capture> captures_;
  std::vector<TraceRecord> records_;
  std::vector<LogEntry> log_;
  DropFilter drop_filter_;
  std::mt19937_64 rng_;
  std::optional<std::pair<SimTime, SimTime>> jitter_;
  bool booted_ = false;
};

}  // namespace eigrpvv::sim
