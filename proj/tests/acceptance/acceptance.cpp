// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "eigrpvv/align.hpp"
#include "eigrpvv/checksum.hpp"
#include "eigrpvv/cli.hpp"
#include "eigrpvv/experiment.hpp"
#include "random_topology.hpp"
#include "scenarios.hpp"

using namespace eigrpvv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = fs::temp_directory_path() / ("eigrpvv-accept-" + tag + "-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

Ipv4Prefix pfx(const char* s) { return *Ipv4Prefix::parse(s); }

bool one_sided(const vv::AlignmentRow& r) {
  return r.verdict == vv::Verdict::ReferenceOnly || r.verdict == vv::Verdict::SimulatedOnly;
}

Outcome scenario_one_sequence() {
  auto start = Clock::now();
  TempDir tmp("c1");
  auto fixtures = cli::default_fixture_dir();
  cli::RunOptions run;
  run.source = cli::builtin_scenario("scenario1", fixtures);
  run.out = tmp.path;
  cli::cmd_run(run);

  cli::CompareOptions cmp;
  cmp.reference_trace = fixtures / "scenario1" / "reference.trace";
  cmp.simulated_trace = tmp.path / "R1-ethg0.pcap";
  std::ostringstream out, err;
  int code = cli::cmd_compare(cmp, tmp.path / "report", vv::ReportFormat::Text, out, err);
  auto report = cli::compare_artifacts(cmp);
  double took = seconds_since(start);

  auto stray = std::count_if(report.rows.begin(), report.rows.end(), one_sided);
  Outcome o;
  o.pass = code == cli::kExitPass && stray == 0 && took < 5.0;
  o.detail = std::to_string(report.rows.size()) + " rows, " + std::to_string(stray) + " one-sided, exit " +
             std::to_string(code) + ", " + fmt_seconds(took);
  return o;
}

Outcome scenario_two_query() {
  auto res = testsupport::run_builtin("scenario2");
  auto trace = testsupport::messages(res);
  const auto r1 = Ipv4Address(10, 0, 13, 1);
  const std::set<Ipv4Prefix> expected{pfx("10.0.12.0/30"), pfx("2.0.0.0/24")};
  const vv::MessageSummary* first = nullptr;
  bool names_23 = false;
  for (const auto& m : trace) {
    if (m.opcode != codec::Opcode::Query || m.src != r1) continue;
    if (!first) first = &m;
    for (const auto& r : m.routes)
      if (r.destination == pfx("10.0.23.0/30")) names_23 = true;
  }
  Outcome o;
  if (!first) {
    o.detail = "R1 sent no Query";
    return o;
  }
  std::set<Ipv4Prefix> got;
  bool all_unreachable = true;
  for (const auto& r : first->routes) {
    got.insert(r.destination);
    all_unreachable = all_unreachable && !r.reachable;
  }
  o.pass = got == expected && first->routes.size() == 2 && all_unreachable && !names_23;
  o.detail = "first Query at " + first->timestamp.to_string() + " routes=" + first->key().substr(first->key().rfind('|') + 1);
  if (names_23) o.detail += ", 10.0.23.0/30 queried";
  return o;
}

Outcome scenario_two_convergence() {
  auto res = testsupport::run_builtin("scenario2");
  auto initial = tables::parse_snapshot(testsupport::fixture_text("scenario1/R1.begin.snapshot"));
  Outcome o;
  if (res.end_snapshots.empty()) {
    o.detail = "no end snapshot";
    return o;
  }
  auto diffs = tables::diff_tables(initial, res.end_snapshots[0]);
  o.pass = diffs.empty();
  o.detail = std::to_string(diffs.size()) + " differences against the initial R1 table";
  for (const auto& d : diffs) o.detail += "; " + tables::describe(d);
  return o;
}

Outcome metric_oracle() {
  auto start = Clock::now();
  int mismatches = 0, checked = 0;
  std::string first_problem;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto t = testsupport::random_topology(seed);
    Experiment e(topo::parse_topology(t.to_config()));
    e.simulation().run(SimTime::from_seconds(60));
    for (int r = 0; r < int(t.routers.size()); ++r) {
      auto oracle = testsupport::brute_force_metrics(t, r);
      std::map<std::string, std::uint64_t> best;
      for (const auto& entry : e.router(t.name(r)).routing_table().entries()) {
        if (entry.source != tables::RouteSource::Eigrp) continue;
        auto key = entry.destination.to_string();
        auto it = best.find(key);
        if (it == best.end() || entry.metric < it->second) best[key] = entry.metric;
      }
      ++checked;
      if (best != oracle) {
        ++mismatches;
        if (first_problem.empty()) first_problem = "seed " + std::to_string(seed) + " " + t.name(r);
      }
    }
  }
  double took = seconds_since(start);
  Outcome o;
  o.pass = mismatches == 0 && took < 30.0;
  o.detail = std::to_string(checked) + " routers over 25 topologies, " + std::to_string(mismatches) +
             " mismatches, " + fmt_seconds(took);
  if (!first_problem.empty()) o.detail += ", first at " + first_problem;
  return o;
}

codec::EigrpPacket random_packet(std::mt19937_64& rng) {
  auto u = [&](std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(0, hi)(rng); };
  codec::EigrpPacket p;
  constexpr codec::Opcode ops[] = {codec::Opcode::Update, codec::Opcode::Query, codec::Opcode::Reply,
                                   codec::Opcode::Hello};
  auto& h = p.header;
  h.opcode = ops[u(3)];
  h.flags = std::uint32_t(u(0xFFFFFFFF)) & ~codec::flags::kInit;
  if (h.opcode == codec::Opcode::Update && u(1)) h.flags |= codec::flags::kInit;
  h.sequence = h.opcode == codec::Opcode::Hello ? 0 : std::uint32_t(u(0xFFFFFFFF));
  h.acknowledgment = std::uint32_t(u(0xFFFFFFFF));
  h.virtual_router_id = std::uint16_t(u(0xFFFF));
  h.autonomous_system = std::uint16_t(u(0xFFFF));

  auto n = u(6);
  for (std::uint64_t i = 0; i < n; ++i) {
    switch (u(6)) {
      case 0: {
        codec::ParametersTlv t;
        for (auto& k : t.k) k = std::uint8_t(u(255));
        t.k6 = std::uint8_t(u(255));
        t.hold_time = std::uint16_t(u(0xFFFF));
        p.tlvs.push_back(t);
        break;
      }
      case 1: {
        std::string magic(std::size_t(u(16)), ' ');
        for (auto& c : magic) c = char('!' + u(90));
        p.tlvs.push_back(codec::AuthenticationTlv{magic});
        break;
      }
      case 2:
        p.tlvs.push_back(codec::SoftwareVersionTlv{std::uint8_t(u(255)), std::uint8_t(u(255)), std::uint8_t(u(255)),
                                                   std::uint8_t(u(255))});
        break;
      case 3:
        p.tlvs.push_back(codec::StubTlv{std::uint16_t(u(0xFFFF))});
        break;
      case 4: {
        codec::PeerTopologyIdListTlv t;
        t.topology_ids.resize(std::size_t(u(4)));
        for (auto& id : t.topology_ids) id = std::uint16_t(u(0xFFFF));
        p.tlvs.push_back(t);
        break;
      }
      case 5: {
        codec::InternalRouteTlv r;
        r.next_hop = Ipv4Address(std::uint32_t(u(0xFFFFFFFF)));
        r.scaled_delay = std::uint32_t(u(0xFFFFFFFF));
        r.scaled_bandwidth = std::uint32_t(u(0xFFFFFFFF));
        r.mtu = std::uint32_t(u(0xFFFFFF));
        r.hop_count = std::uint8_t(u(255));
        r.reliability = std::uint8_t(u(255));
        r.load = std::uint8_t(u(255));
        r.reserved = std::uint16_t(u(0xFFFF));
        r.destination = Ipv4Prefix(Ipv4Address(std::uint32_t(u(0xFFFFFFFF))), int(u(32)));
        p.tlvs.push_back(r);
        break;
      }
      default: {
        codec::OpaqueTlv t;
        t.type = std::uint16_t(0x0200 + u(0xFF));
        t.value.resize(std::size_t(u(12)));
        for (auto& b : t.value) b = std::uint8_t(u(255));
        p.tlvs.push_back(t);
        break;
      }
    }
  }
  return p;
}

Outcome codec_properties() {
  auto start = Clock::now();
  std::mt19937_64 rng(20240611);
  int round_trip_failures = 0, undetected_flips = 0, flips = 0;
  for (int i = 0; i < 10'000; ++i) {
    auto p = random_packet(rng);
    auto wire = codec::encode_packet(p);
    try {
      if (codec::decode_packet(wire) != codec::with_checksum(p)) ++round_trip_failures;
    } catch (const codec::DecodeError&) {
      ++round_trip_failures;
    }
    auto bit = std::uniform_int_distribution<std::size_t>(0, wire.size() * 8 - 1)(rng);
    wire[bit / 8] ^= std::uint8_t(1u << (bit % 8));
    ++flips;
    if (checksum_valid(wire)) ++undetected_flips;
  }
  double took = seconds_since(start);
  Outcome o;
  o.pass = round_trip_failures == 0 && undetected_flips == 0 && took < 10.0;
  o.detail = "10000 packets, " + std::to_string(round_trip_failures) + " round-trip failures, " +
             std::to_string(undetected_flips) + "/" + std::to_string(flips) + " flips undetected, " + fmt_seconds(took);
  return o;
}

std::map<std::string, std::string> hash_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    out[fs::relative(e.path(), root).generic_string()] = cli::sha256_hex(data);
  }
  return out;
}

Outcome determinism() {
  TempDir a("c6a"), b("c6b");
  std::ostringstream log;
  cli::ReproOptions o;
  o.fixtures = cli::default_fixture_dir();
  o.out = a.path;
  auto first = cli::cmd_repro(o, log);
  o.out = b.path;
  o.parallel = 2;
  auto second = cli::cmd_repro(o, log);
  auto ha = hash_tree(a.path), hb = hash_tree(b.path);
  int pcaps = 0, snapshots = 0, reports = 0;
  for (const auto& [name, _] : ha) {
    if (name.ends_with(".pcap")) ++pcaps;
    if (name.ends_with(".snapshot")) ++snapshots;
    if (name.find("report") != std::string::npos) ++reports;
  }
  Outcome out;
  out.pass = !ha.empty() && ha == hb && pcaps > 0 && snapshots > 0 && reports > 0 &&
             first.exit_code == second.exit_code;
  out.detail = std::to_string(ha.size()) + " files (" + std::to_string(pcaps) + " pcaps, " +
               std::to_string(snapshots) + " snapshots, " + std::to_string(reports) + " reports) " +
               (ha == hb ? "identical" : "differ") + ", repro.tar sha256 " +
               (ha.count("repro.tar") ? ha["repro.tar"].substr(0, 12) : "missing");
  return out;
}

Outcome rtp_behavior() {
  auto out = testsupport::run_ack_loss();
  Outcome o;
  if (!out.first_update) {
    o.detail = "no Update after the new link came up";
    return o;
  }
  std::optional<SimTime> first_resend;
  for (const auto& m : out.trace)
    if (m.src == out.first_update->src && m.opcode == codec::Opcode::Update &&
        m.sequence == out.first_update->sequence && m.index != out.first_update->index) {
      first_resend = m.timestamp;
      break;
    }
  bool after_rto = first_resend && *first_resend - out.first_update->timestamp >= SimTime::from_seconds(1) -
                                                                                     SimTime::from_ms(10);
  o.pass = out.first_update->multicast() && out.unicast_retransmissions == 16 && out.all_retransmissions_unicast &&
           after_rto && out.teardown_at.has_value();
  o.detail = std::to_string(out.unicast_retransmissions) + " retransmissions" +
             (out.all_retransmissions_unicast ? " all unicast" : " not all unicast") +
             (first_resend ? ", first after " + (*first_resend - out.first_update->timestamp).to_string() + "s" : "") +
             (out.teardown_at ? ", neighbor down at " + out.teardown_at->to_string() : ", neighbor never torn down");
  return o;
}

Outcome harness_self_consistency() {
  std::string problems;
  for (const char* name : {"scenario1", "scenario2"}) {
    auto res = testsupport::run_builtin(name);
    auto msgs = testsupport::messages(res);
    for (const auto& r : vv::align_traces(msgs, msgs))
      if (r.verdict != vv::Verdict::Match) problems += std::string(" ") + name + " self-alignment;";
    for (const auto& s : res.end_snapshots)
      if (!tables::diff_tables(s, s).empty()) problems += std::string(" ") + name + " self table diff;";
  }

  auto res = testsupport::run_builtin("scenario1");
  auto sim = testsupport::messages(res);
  auto ref = vv::parse_transcript(testsupport::fixture_text("scenario1/reference.trace"));
  auto rows = vv::align_traces(ref, sim);
  std::vector<std::size_t> covered;
  for (const auto& r : rows) covered.insert(covered.end(), r.simulated_indices.begin(), r.simulated_indices.end());
  std::sort(covered.begin(), covered.end());
  std::vector<std::size_t> expected(14);
  for (std::size_t i = 0; i < expected.size(); ++i) expected[i] = i + 1;
  if (sim.size() != 14) problems += " simulated trace has " + std::to_string(sim.size()) + " messages;";
  if (covered != expected) problems += " report does not cover simulated messages 1..14 exactly once;";

  Outcome o;
  o.pass = problems.empty();
  o.detail = problems.empty() ? "self-alignment all match, self table diffs empty, 14 simulated messages in " +
                                    std::to_string(rows.size()) + " rows"
                              : problems;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {"Scenario I sequence matches the hardware transcript", scenario_one_sequence},
      {"Scenario II Query lists exactly 10.0.12.0/30 and 2.0.0.0/24", scenario_two_query},
      {"Scenario II R1 table returns to its initial state", scenario_two_convergence},
      {"converged metrics equal brute-force minima", metric_oracle},
      {"codec round trip and bit-flip detection", codec_properties},
      {"repro output is byte-identical across runs", determinism},
      {"unacknowledged Update resent as unicast, neighbor down after 16", rtp_behavior},
      {"comparison harness is self-consistent", harness_self_consistency},
  };
  int failed = 0, n = 0;
  for (const auto& c : criteria) {
    ++n;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", n, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
