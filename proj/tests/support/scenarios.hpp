#pragma once

// Canned experiments shared by the unit tests and the acceptance runner.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "eigrpvv/experiment.hpp"
#include "eigrpvv/frame.hpp"
#include "eigrpvv/trace.hpp"

namespace testsupport {

inline std::string fixture_text(const std::string& rel) {
  std::ifstream in(std::string(EIGRPVV_FIXTURE_DIR) + "/" + rel);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string fixture_path(const std::string& rel) { return std::string(EIGRPVV_FIXTURE_DIR) + "/" + rel; }

inline eigrpvv::ExperimentResult run_builtin(const std::string& name) {
  auto topology = eigrpvv::topo::parse_topology(fixture_text(name + "/topology.cfg"));
  auto actions = eigrpvv::sim::load_scenario(fixture_text(name + "/scenario.xml"));
  return eigrpvv::run_experiment(topology, actions);
}

inline std::vector<eigrpvv::vv::MessageSummary> messages(const eigrpvv::ExperimentResult& r, std::size_t capture = 0) {
  return eigrpvv::vv::ingest_pcap(r.captures.at(capture).records).messages;
}

// R1 and R2 are adjacent from boot. From t=20 every ack R2 sends is lost. At t=30 a
// new R1-R3 link comes up, so R1 sends R2 a reliable Update that is never acknowledged.
inline constexpr const char* kAckLossTopology = R"(
router R1
  interface ethg0 10.0.12.1/30
  interface ethg1 10.0.13.1/30
  interface lan 1.0.0.1/24
  eigrp 1
router R2
  interface ethg0 10.0.12.2/30
  interface lan 2.0.0.1/24
  eigrp 1
router R3
  interface ethg0 10.0.13.2/30
  eigrp 1
link R1 ethg0 R2 ethg0
link R1 ethg1 R3 ethg0 Eth10M down
capture R1 ethg0
window 30
)";

struct AckLossOutcome {
  eigrpvv::ExperimentResult result;
  std::vector<eigrpvv::vv::MessageSummary> trace;  // on R1.ethg0 from t=30
  std::optional<eigrpvv::vv::MessageSummary> first_update;
  int unicast_retransmissions = 0;  // same sequence, R1 -> R2
  bool all_retransmissions_unicast = true;
  std::optional<eigrpvv::SimTime> teardown_at;
};

inline AckLossOutcome run_ack_loss() {
  using namespace eigrpvv;
  auto topology = topo::parse_topology(kAckLossTopology);
  Experiment e(topology);
  auto& sim = e.simulation();
  int r2 = *sim.find_node("R2");
  sim.set_drop_filter([&sim, r2](sim::PortRef from, sim::PortRef, std::span<const std::uint8_t> frame) {
    if (from.node != r2 || sim.now() < SimTime::from_seconds(20)) return false;
    auto f = parse_eigrp_frame(frame);
    if (!f) return false;
    try {
      return codec::decode_packet(f->eigrp).is_ack();
    } catch (const codec::DecodeError&) {
      return false;
    }
  });
  sim::ScenarioAction connect;
  connect.at = SimTime::from_seconds(30);
  connect.kind = sim::ActionKind::Connect;
  connect.src_module = "R1";
  connect.src_gate = "ethg1";
  connect.dest_module = "R3";
  connect.dest_gate = "ethg0";
  connect.channel = "Eth10M";

  AckLossOutcome out;
  out.result = e.run({connect});
  out.trace = eigrpvv::vv::ingest_pcap(out.result.captures.at(0).records).messages;
  const auto r1_addr = *Ipv4Address::parse("10.0.12.1");
  for (const auto& m : out.trace) {
    if (m.src != r1_addr || m.opcode != codec::Opcode::Update) continue;
    if (!out.first_update) {
      out.first_update = m;
      continue;
    }
    if (m.sequence != out.first_update->sequence) continue;
    ++out.unicast_retransmissions;
    if (m.multicast()) out.all_retransmissions_unicast = false;
  }
  for (const auto& l : out.result.log)
    if (l.node == "R1" && l.message.find("10.0.12.2") != std::string::npos &&
        l.message.find("is down") != std::string::npos && l.at >= SimTime::from_seconds(30)) {
      out.teardown_at = l.at;
      break;
    }
  return out;
}

}  // namespace testsupport
