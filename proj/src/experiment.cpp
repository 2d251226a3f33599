#include "eigrpvv/experiment.hpp"

namespace eigrpvv {

Experiment::Experiment(const topo::TopologySpec& topology, ExperimentOptions options)
    : topology_(topology), sim_(options.seed) {
  for (const auto& r : topology_.routers) {
    int node = sim_.add_node(r.name, r.start);
    for (const auto& i : r.interfaces) sim_.add_interface(node, i.name, i.address, i.metric);
  }
  for (const auto& l : topology_.links) {
    auto a = sim_.find_port(l.a_node, l.a_iface);
    auto b = sim_.find_port(l.b_node, l.b_iface);
    if (!a || !b)
      throw sim::SimError(sim::SimErrorKind::UnknownLink,
                          "link " + l.a_node + "." + l.a_iface + " <-> " + l.b_node + "." + l.b_iface +
                              " names an unknown interface");
    auto channel = sim::channel_profile(l.channel);
    if (!channel) throw sim::SimError(sim::SimErrorKind::InvalidTopology, "unknown channel " + l.channel);
    sim_.add_link(*a, *b, *channel, l.up);
  }
  for (std::size_t i = 0; i < topology_.routers.size(); ++i)
    routers_.push_back(
        std::make_unique<eigrp::EigrpRouter>(sim_, static_cast<int>(i), topology_.routers[i].eigrp));
  if (options.jitter) sim_.enable_jitter(options.jitter->first, options.jitter->second);
  if (options.drop_filter) sim_.set_drop_filter(std::move(options.drop_filter));
}

eigrp::EigrpRouter& Experiment::router(std::string_view name) {
  auto id = sim_.find_node(name);
  if (!id) throw sim::SimError(sim::SimErrorKind::UnknownNode, "no router " + std::string(name));
  return *routers_[static_cast<std::size_t>(*id)];
}

ExperimentResult Experiment::run(const std::vector<sim::ScenarioAction>& actions) {
  ExperimentResult result;
  result.first_action = actions.empty() ? SimTime{} : actions.front().at;
  for (const auto& a : actions) result.first_action = std::min(result.first_action, a.at);
  result.end = result.first_action + topology_.window;

  std::vector<sim::PortRef> points;
  std::vector<int> snap_nodes;
  for (const auto& c : topology_.captures) {
    auto p = sim_.find_port(c.node, c.iface);
    if (!p) throw sim::SimError(sim::SimErrorKind::UnknownLink, "capture point " + c.node + "." + c.iface + " unknown");
    points.push_back(*p);
    sim_.enable_capture(*p, result.first_action, result.end);
    if (std::find(snap_nodes.begin(), snap_nodes.end(), p->node) == snap_nodes.end()) snap_nodes.push_back(p->node);
  }
  for (int n : snap_nodes) {
    sim_.events().schedule(
        result.first_action,
        [this, n, &result]() { result.begin_snapshots.push_back(routers_[static_cast<std::size_t>(n)]->take_snapshot()); },
        sim::Priority::Snapshot);
  }
  sim_.schedule_scenario(actions);
  sim_.run(result.end);

  for (std::size_t i = 0; i < points.size(); ++i) {
    CaptureResult c{topology_.captures[i].node, topology_.captures[i].iface, {}};
    for (const auto& r : sim_.trace(points[i])) c.records.push_back(pcap::Record{r.timestamp, r.frame});
    result.captures.push_back(std::move(c));
  }
  for (int n : snap_nodes) result.end_snapshots.push_back(routers_[static_cast<std::size_t>(n)]->take_snapshot());
  result.log = sim_.log_entries();
  for (const auto& r : routers_) result.counters[r->name()] = r->counters();
  return result;
}

ExperimentResult run_experiment(const topo::TopologySpec& topology, const std::vector<sim::ScenarioAction>& actions,
                                ExperimentOptions options) {
  Experiment e(topology, std::move(options));
  return e.run(actions);
}

}  // namespace eigrpvv
