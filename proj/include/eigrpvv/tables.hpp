#pragma once

// Routing table entries, per-router snapshots and their text form.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eigrpvv/ipv4.hpp"
#include "eigrpvv/metric.hpp"
#include "eigrpvv/sim_time.hpp"

namespace eigrpvv::tables {

enum class RouteSource { Connected, Eigrp };

char source_code(RouteSource s);
std::uint8_t administrative_distance(RouteSource s);

struct RoutingEntry {
  RouteSource source = RouteSource::Eigrp;
  Ipv4Prefix destination;
  std::optional<Ipv4Address> next_hop;  // empty for connected routes
  std::string exit_interface;
  eigrp::Metric metric = 0;
  std::uint8_t admin_distance = 90;

  bool operator==(const RoutingEntry&) const = default;
};

/// Table order: prefix, then mask, then next hop (connected sorts first).
bool entry_less(const RoutingEntry& a, const RoutingEntry& b);

struct RoutingDelta {
  std::vector<RoutingEntry> added;
  std::vector<RoutingEntry> removed;
  bool empty() const { return added.empty() && removed.empty(); }
};

/// Installed routes of one router.
class RoutingTable {
 public:
  /// Replaces the contents with `desired` and reports what changed.
  RoutingDelta sync(std::vector<RoutingEntry> desired);
  const std::vector<RoutingEntry>& entries() const { return entries_; }

 private:
  std::vector<RoutingEntry> entries_;
};

struct TopologySummary {
  Ipv4Prefix destination;
  bool active = false;
  eigrp::Metric feasible_distance = eigrp::kInfiniteMetric;
  std::vector<std::string> successors;
};

struct NeighborSummary {
  Ipv4Address address;
  std::string interface;
  bool up = false;
};

struct TableSnapshot {
  std::string node;
  SimTime taken_at;
  std::vector<RoutingEntry> routes;
  std::vector<TopologySummary> topology;
  std::vector<NeighborSummary> neighbors;
};

/// Text form:
///   # node=R1 t=100.000000
///   D 2.0.0.0/24 [90/307200] via 10.0.12.2, ethg0
///   C 1.0.0.0/24 [0/0] via connected, ethg2
/// Topology and neighbor summaries follow as "# topo" and "# nbr" comment lines.
std::string write_snapshot(const TableSnapshot& snap);

struct SnapshotParseError : std::runtime_error {
  SnapshotParseError(const std::string& what, int line) : std::runtime_error(what), line(line) {}
  int line;
};

/// Reads routes and the header; comment lines other than the header are skipped.
TableSnapshot parse_snapshot(std::string_view text);

enum class TableDiffKind { Missing, Extra, FieldMismatch };

struct TableDiff {
  TableDiffKind kind = TableDiffKind::Missing;
  Ipv4Prefix destination;
  std::optional<Ipv4Address> next_hop;
  std::string field;  // for FieldMismatch
  std::string reference_value;
  std::string simulated_value;
};

struct NodeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Entries are keyed by (destination, next hop). Missing: only in the reference.
/// Throws NodeMismatch when the snapshots belong to different routers.
std::vector<TableDiff> diff_tables(const TableSnapshot& reference, const TableSnapshot& simulated);

std::string describe(const TableDiff& d);

}  // namespace eigrpvv::tables
