#pragma once

// Builds a simulation from a topology and a scenario, runs it, and collects the
// captures and routing table snapshots the comparison works on.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eigrpvv/pcap.hpp"
#include "eigrpvv/router.hpp"
#include "eigrpvv/scenario.hpp"
#include "eigrpvv/simulation.hpp"
#include "eigrpvv/tables.hpp"
#include "eigrpvv/topology.hpp"

namespace eigrpvv {

struct ExperimentOptions {
  std::uint64_t seed = 0;
  std::optional<std::pair<SimTime, SimTime>> jitter;
  sim::Simulation::DropFilter drop_filter;
};

struct CaptureResult {
  std::string node;
  std::string iface;
  std::vector<pcap::Record> records;
};

struct ExperimentResult {
  SimTime first_action{};
  SimTime end{};
  std::vector<CaptureResult> captures;
  /// Routers owning a capture point, at the first action (before it applies) and at the end.
  std::vector<tables::TableSnapshot> begin_snapshots;
  std::vector<tables::TableSnapshot> end_snapshots;
  std::vector<sim::LogEntry> log;
  std::map<std::string, eigrp::RouterCounters> counters;
};

/// Simulation with routers attached, ready to run. Owns the routers.
class Experiment {
 public:
  Experiment(const topo::TopologySpec& topology, ExperimentOptions options = {});

  sim::Simulation& simulation() { return sim_; }
  eigrp::EigrpRouter& router(std::string_view name);
  const std::vector<std::unique_ptr<eigrp::EigrpRouter>>& routers() const { return routers_; }

  /// Schedules `actions`, captures over [first action, first action + window) and runs.
  ExperimentResult run(const std::vector<sim::ScenarioAction>& actions);

 private:
  topo::TopologySpec topology_;
  sim::Simulation sim_;
  std::vector<std::unique_ptr<eigrp::EigrpRouter>> routers_;
};

/// Convenience wrapper around Experiment.
ExperimentResult run_experiment(const topo::TopologySpec& topology, const std::vector<sim::ScenarioAction>& actions,
                                ExperimentOptions options = {});

}  // namespace eigrpvv
