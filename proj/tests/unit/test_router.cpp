#include <gtest/gtest.h>

#include <algorithm>

#include "eigrpvv/experiment.hpp"
#include "scenarios.hpp"

using namespace eigrpvv;

namespace {

Ipv4Prefix pfx(const char* s) { return *Ipv4Prefix::parse(s); }

std::optional<tables::RoutingEntry> best_route(const eigrp::EigrpRouter& r, const char* prefix) {
  std::optional<tables::RoutingEntry> best;
  for (const auto& e : r.routing_table().entries())
    if (e.destination == pfx(prefix) && (!best || e.metric < best->metric)) best = e;
  return best;
}

// R1 reaches R4's LAN through R2 (successor) or R3. `r3_delay` is R3's delay toward R4
// and decides whether R3 is a feasible successor.
std::string square(int r3_delay) {
  return R"(
router R1
  interface ethg0 10.0.12.1/30
  interface ethg1 10.0.13.1/30
  eigrp 1
router R2
  interface ethg0 10.0.12.2/30
  interface ethg1 10.0.24.1/30
  eigrp 1
router R3
  interface ethg0 10.0.13.2/30
  interface ethg1 10.0.34.1/30 delay )" +
         std::to_string(r3_delay) + R"(
  eigrp 1
router R4
  interface ethg0 10.0.24.2/30
  interface ethg1 10.0.34.2/30
  interface lan 4.0.0.1/24
  eigrp 1
link R1 ethg0 R2 ethg0
link R1 ethg1 R3 ethg0
link R2 ethg1 R4 ethg0
link R3 ethg1 R4 ethg1
capture R1 ethg1
window 10
)";
}

std::vector<sim::ScenarioAction> cut_r1_r2_at(int seconds) {
  sim::ScenarioAction a;
  a.at = SimTime::from_seconds(seconds);
  a.kind = sim::ActionKind::Disconnect;
  a.src_module = "R1";
  a.src_gate = "ethg0";
  return {a};
}

}  // namespace

TEST(Router, TwoRoutersFormAdjacencyAndExchangeRoutes) {
  auto t = topo::parse_topology(R"(
router R1
  interface ethg0 10.0.12.1/30
  interface lan 1.0.0.1/24
  eigrp 1
router R2
  interface ethg0 10.0.12.2/30
  interface lan 2.0.0.1/24 delay 50
  eigrp 1
link R1 ethg0 R2 ethg0
)");
  Experiment e(t);
  e.simulation().run(SimTime::from_seconds(10));
  const auto& r1 = e.router("R1");
  ASSERT_EQ(r1.neighbors().size(), 1u);
  EXPECT_EQ(r1.neighbors().begin()->second.state, eigrp::NeighborState::Up);
  auto r = best_route(r1, "2.0.0.0/24");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->source, tables::RouteSource::Eigrp);
  EXPECT_EQ(r->metric, 256u * (1000 + 100 + 50));
  EXPECT_EQ(r->next_hop, Ipv4Address(10, 0, 12, 2));
  EXPECT_EQ(r->admin_distance, 90);
  auto c = best_route(r1, "1.0.0.0/24");
  ASSERT_TRUE(c);
  EXPECT_EQ(c->source, tables::RouteSource::Connected);
  EXPECT_EQ(c->metric, 0u);
}

TEST(Router, FeasibleSuccessorTakesOverWithoutQuery) {
  // Via R2: 256*(1000+300) = 332800 (FD). R3 reports 256*(1000+150+100) = 320000 < FD.
  Experiment e(topo::parse_topology(square(150)));
  auto res = e.run(cut_r1_r2_at(60));
  // The lost link's own subnets may still be queried; R4's LAN must not be.
  for (const auto& m : testsupport::messages(res))
    if (m.opcode == codec::Opcode::Query)
      for (const auto& r : m.routes) EXPECT_NE(r.destination, pfx("4.0.0.0/24")) << m.timestamp.to_string();
  auto r = best_route(e.router("R1"), "4.0.0.0/24");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->metric, 256u * (1000 + 100 + 150 + 100));
  EXPECT_EQ(r->next_hop, Ipv4Address(10, 0, 13, 2));
  EXPECT_EQ(e.router("R1").counters().feasibility_violations, 0u);
}

TEST(Router, NoFeasibleSuccessorGoesActiveAndQueries) {
  // R3 reports 256*(1000+300+100) = 358400 >= FD 332800: not feasible.
  Experiment e(topo::parse_topology(square(300)));
  auto res = e.run(cut_r1_r2_at(60));
  auto trace = testsupport::messages(res);
  auto q = std::find_if(trace.begin(), trace.end(), [](const auto& m) {
    return m.opcode == codec::Opcode::Query && m.src == Ipv4Address(10, 0, 13, 1);
  });
  ASSERT_NE(q, trace.end());
  bool asks_lan = std::any_of(q->routes.begin(), q->routes.end(),
                              [](const auto& r) { return r.destination == pfx("4.0.0.0/24") && !r.reachable; });
  EXPECT_TRUE(asks_lan);
  bool replied = std::any_of(trace.begin(), trace.end(), [](const auto& m) {
    return m.opcode == codec::Opcode::Reply && m.src == Ipv4Address(10, 0, 13, 2);
  });
  EXPECT_TRUE(replied);

  const auto& r1 = e.router("R1");
  EXPECT_EQ(r1.topology().at(pfx("4.0.0.0/24")).state, eigrp::DualState::Passive);
  auto r = best_route(r1, "4.0.0.0/24");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->metric, 256u * (1000 + 100 + 300 + 100));
  for (const auto& [name, c] : res.counters) {
    EXPECT_EQ(c.feasibility_violations, 0u) << name;
    EXPECT_EQ(c.split_horizon_violations, 0u) << name;
  }
}

TEST(Router, LosingTheOnlyPathWithdrawsTheRoute) {
  auto t = topo::parse_topology(R"(
router R1
  interface ethg0 10.0.12.1/30
  eigrp 1
router R2
  interface ethg0 10.0.12.2/30
  interface lan 2.0.0.1/24
  eigrp 1
link R1 ethg0 R2 ethg0
capture R1 ethg0
window 5
)");
  Experiment e(t);
  sim::ScenarioAction a;
  a.at = SimTime::from_seconds(30);
  a.src_module = "R2";
  a.src_gate = "ethg0";
  e.run({a});
  EXPECT_FALSE(best_route(e.router("R1"), "2.0.0.0/24"));
  EXPECT_TRUE(e.router("R1").neighbors().empty());
}

TEST(Router, AuthenticationMismatchBlocksAdjacency) {
  auto t = topo::parse_topology(R"(
router R1
  interface ethg0 10.0.12.1/30
  eigrp 1
  authentication key-string alpha
router R2
  interface ethg0 10.0.12.2/30
  eigrp 1
  authentication key-string beta
link R1 ethg0 R2 ethg0
)");
  Experiment e(t);
  e.simulation().run(SimTime::from_seconds(12));
  EXPECT_TRUE(e.router("R1").neighbors().empty());
  EXPECT_GT(e.router("R1").counters().auth_failures, 0u);
}

TEST(Router, KValueMismatchBlocksAdjacency) {
  auto t = topo::parse_topology(R"(
router R1
  interface ethg0 10.0.12.1/30
  eigrp 1
  metric weights 0 1 1 1 0 0
router R2
  interface ethg0 10.0.12.2/30
  eigrp 1
link R1 ethg0 R2 ethg0
)");
  Experiment e(t);
  e.simulation().run(SimTime::from_seconds(12));
  EXPECT_TRUE(e.router("R1").neighbors().empty());
  EXPECT_TRUE(e.router("R2").neighbors().empty());
}

TEST(Router, HoldTimerExpiresWhenHellosStop) {
  auto t = topo::parse_topology(R"(
router R1
  interface ethg0 10.0.12.1/30
  eigrp 1
router R2
  interface ethg0 10.0.12.2/30
  interface lan 2.0.0.1/24
  eigrp 1
link R1 ethg0 R2 ethg0
)");
  Experiment e(t);
  auto& sim = e.simulation();
  int r2 = *sim.find_node("R2");
  sim.set_drop_filter([&sim, r2](sim::PortRef from, sim::PortRef, std::span<const std::uint8_t>) {
    return from.node == r2 && sim.now() >= SimTime::from_seconds(20);
  });
  sim.run(SimTime::from_seconds(40));
  // Last Hello heard just after t=15, hold time 15 s.
  EXPECT_TRUE(e.router("R1").neighbors().empty());
  EXPECT_FALSE(best_route(e.router("R1"), "2.0.0.0/24"));
  bool hold_expired = std::any_of(sim.log_entries().begin(), sim.log_entries().end(), [](const auto& l) {
    return l.node == "R1" && l.message.find("is down") != std::string::npos && l.at >= SimTime::from_seconds(30) &&
           l.at <= SimTime::from_seconds(35);
  });
  EXPECT_TRUE(hold_expired);
}

TEST(Router, UnackedUpdateIsRetransmittedAsUnicastThenNeighborTornDown) {
  auto out = testsupport::run_ack_loss();
  ASSERT_TRUE(out.first_update);
  EXPECT_TRUE(out.first_update->multicast());
  EXPECT_EQ(out.unicast_retransmissions, 16);
  EXPECT_TRUE(out.all_retransmissions_unicast);
  ASSERT_TRUE(out.teardown_at);
  // 16 retransmissions one RTO apart, then one more RTO.
  auto elapsed = *out.teardown_at - out.first_update->timestamp;
  EXPECT_GE(elapsed, SimTime::from_seconds(17) - SimTime::from_ms(10));
  EXPECT_LE(elapsed, SimTime::from_seconds(17) + SimTime::from_ms(10));
}

TEST(Router, ScenarioOneMatchesDerivedRoutingTables) {
  auto res = testsupport::run_builtin("scenario1");
  ASSERT_EQ(res.begin_snapshots.size(), 1u);
  auto begin = tables::parse_snapshot(testsupport::fixture_text("scenario1/R1.begin.snapshot"));
  auto end = tables::parse_snapshot(testsupport::fixture_text("scenario1/R1.end.snapshot"));
  EXPECT_TRUE(tables::diff_tables(begin, res.begin_snapshots[0]).empty());
  EXPECT_TRUE(tables::diff_tables(end, res.end_snapshots[0]).empty());
}

TEST(Router, SimulationIsDeterministic) {
  auto a = testsupport::run_builtin("scenario2");
  auto b = testsupport::run_builtin("scenario2");
  ASSERT_EQ(a.captures.size(), b.captures.size());
  EXPECT_EQ(pcap::write(a.captures[0].records), pcap::write(b.captures[0].records));
}

TEST(Router, JitterChangesTimingButNotOutcome) {
  auto topology = topo::parse_topology(testsupport::fixture_text("scenario1/topology.cfg"));
  auto actions = sim::load_scenario(testsupport::fixture_text("scenario1/scenario.xml"));
  ExperimentOptions o;
  o.seed = 7;
  o.jitter = std::pair{SimTime::from_ms(1), SimTime::from_ms(5)};
  auto res = run_experiment(topology, actions, o);
  auto end = tables::parse_snapshot(testsupport::fixture_text("scenario1/R1.end.snapshot"));
  EXPECT_TRUE(tables::diff_tables(end, res.end_snapshots[0]).empty());
  auto plain = testsupport::run_builtin("scenario1");
  EXPECT_NE(pcap::write(res.captures[0].records), pcap::write(plain.captures[0].records));
}

TEST(Router, AttachedSubnetStaysConnectedWhenANeighborPathIsCheaper) {
  // R1's own interface toward R2 is slow; R1-R3-R2 reaches the same subnet for less.
  auto t = topo::parse_topology(R"(
router R1
  interface ethg0 10.0.12.1/30 delay 5000
  interface ethg1 10.0.13.1/30
  eigrp 1
router R2
  interface ethg0 10.0.12.2/30 delay 5000
  interface ethg1 10.0.23.1/30
  eigrp 1
router R3
  interface ethg0 10.0.13.2/30
  interface ethg1 10.0.23.2/30
  eigrp 1
link R1 ethg0 R2 ethg0
link R1 ethg1 R3 ethg0
link R2 ethg1 R3 ethg1
)");
  Experiment e(t);
  e.simulation().run(SimTime::from_seconds(30));
  int routes = 0;
  for (const auto& r : e.router("R1").routing_table().entries())
    if (r.destination == pfx("10.0.12.0/30")) {
      ++routes;
      EXPECT_EQ(r.source, tables::RouteSource::Connected);
    }
  EXPECT_EQ(routes, 1);
  // R3 still learns the subnet at the attached routers' own interface cost.
  auto via = best_route(e.router("R3"), "10.0.12.0/30");
  ASSERT_TRUE(via);
  EXPECT_EQ(via->metric, 256u * (1000 + 100 + 5000));
}
