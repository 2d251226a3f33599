#include "eigrpvv/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "eigrpvv/experiment.hpp"
#include "eigrpvv/trace.hpp"

#ifndef EIGRPVV_FIXTURE_DIR
#define EIGRPVV_FIXTURE_DIR "fixtures"
#endif

namespace eigrpvv::cli {

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Bytes read_bytes(const fs::path& p) {
  auto s = read_text(p);
  return Bytes(s.begin(), s.end());
}

void write_bytes(const fs::path& p, std::span<const std::uint8_t> data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw UsageError("cannot write " + p.string());
}

void write_text(const fs::path& p, std::string_view text) {
  write_bytes(p, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace

fs::path default_fixture_dir() { return fs::path(EIGRPVV_FIXTURE_DIR); }

ScenarioSource builtin_scenario(std::string_view name, const fs::path& fixtures) {
  if (name != "scenario1" && name != "scenario2") throw UsageError("unknown built-in scenario '" + std::string(name) + "'");
  fs::path dir = fixtures / std::string(name);
  return {std::string(name), dir / "topology.cfg", dir / "scenario.xml"};
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["scenario"] = m.scenario;
  j["topology_file"] = m.topology_file;
  j["scenario_file"] = m.scenario_file;
  j["seed"] = m.seed;
  j["output_directory"] = m.output_directory;
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : m.artifacts) j["artifacts"].push_back({{"path", a.path}, {"kind", a.kind}, {"sha256", a.sha256}});
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(std::string_view json) {
  RunManifest m;
  try {
    auto j = nlohmann::json::parse(json);
    m.scenario = j.at("scenario").get<std::string>();
    m.topology_file = j.at("topology_file").get<std::string>();
    m.scenario_file = j.at("scenario_file").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.output_directory = j.at("output_directory").get<std::string>();
    for (const auto& a : j.at("artifacts"))
      m.artifacts.push_back({a.at("path").get<std::string>(), a.at("kind").get<std::string>(),
                             a.at("sha256").get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad manifest: ") + e.what());
  }
  return m;
}

bool verify_manifest(const fs::path& dir, const RunManifest& m) {
  for (const auto& a : m.artifacts) {
    std::error_code ec;
    if (!fs::is_regular_file(dir / a.path, ec)) return false;
    if (sha256_hex(read_bytes(dir / a.path)) != a.sha256) return false;
  }
  return true;
}

std::pair<SimTime, SimTime> parse_jitter(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw UsageError("--jitter expects MIN,MAX in seconds");
  try {
    auto lo = SimTime::from_seconds_double(std::stod(std::string(text.substr(0, comma))));
    auto hi = SimTime::from_seconds_double(std::stod(std::string(text.substr(comma + 1))));
    if (lo < SimTime{} || hi < lo) throw UsageError("--jitter needs 0 <= MIN <= MAX");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--jitter expects MIN,MAX in seconds");
  }
}

namespace {

struct RunOutput {
  RunManifest manifest;
  ExperimentResult result;
};

RunOutput run_scenario(const RunOptions& o) {
  topo::TopologySpec topology;
  std::vector<sim::ScenarioAction> actions;
  try {
    topology = topo::parse_topology(read_text(o.source.topology));
  } catch (const topo::TopologyParseError& e) {
    throw UsageError(o.source.topology.string() + ": " + e.what());
  }
  try {
    actions = sim::load_scenario(read_text(o.source.scenario));
  } catch (const sim::ScenarioParseError& e) {
    throw UsageError(o.source.scenario.string() + ": " + e.what());
  }
  for (const auto& c : o.extra_captures) {
    auto dot = c.find('.');
    if (dot == std::string::npos) throw UsageError("capture point '" + c + "' is not NODE.IFACE");
    topology.captures.push_back({c.substr(0, dot), c.substr(dot + 1)});
  }

  ExperimentOptions eo;
  eo.seed = o.seed;
  eo.jitter = o.jitter;
  RunOutput out;
  try {
    out.result = run_experiment(topology, actions, std::move(eo));
  } catch (const sim::SimError& e) {
    throw UsageError(e.what());
  }

  fs::create_directories(o.out);
  auto& m = out.manifest;
  m.scenario = o.source.name.empty() ? o.source.scenario.stem().string() : o.source.name;
  m.topology_file = o.source.topology.filename().string();
  m.scenario_file = o.source.scenario.filename().string();
  m.seed = o.seed;
  m.output_directory = ".";
  auto add = [&](const std::string& name, const std::string& kind, const Bytes& data) {
    write_bytes(o.out / name, data);
    m.artifacts.push_back({name, kind, sha256_hex(data)});
  };
  for (const auto& c : out.result.captures) {
    std::string stem = c.node + "-" + c.iface;
    add(stem + ".pcap", "pcap", pcap::write(c.records));
    if (!o.pcaps_only) add(stem + ".trace", "trace", to_bytes(vv::write_transcript(vv::ingest_pcap(c.records).messages)));
  }
  if (!o.pcaps_only) {
    for (const auto& s : out.result.begin_snapshots)
      add(s.node + ".begin.snapshot", "snapshot", to_bytes(tables::write_snapshot(s)));
    for (const auto& s : out.result.end_snapshots)
      add(s.node + ".end.snapshot", "snapshot", to_bytes(tables::write_snapshot(s)));
  }
  write_text(o.out / "manifest.json", manifest_json(m));
  return out;
}

std::vector<vv::MessageSummary> load_trace(const fs::path& p) {
  auto data = read_bytes(p);
  std::string_view head(reinterpret_cast<const char*>(data.data()), std::min<std::size_t>(data.size(), 64));
  try {
    if (head.starts_with("#")) return vv::parse_transcript({reinterpret_cast<const char*>(data.data()), data.size()});
    return vv::ingest_pcap(pcap::read(data)).messages;
  } catch (const vv::TranscriptParseError& e) {
    throw UsageError(p.string() + ": " + e.what());
  } catch (const pcap::Error& e) {
    throw UsageError(p.string() + ": " + e.what());
  }
}

tables::TableSnapshot load_snapshot(const fs::path& p) {
  try {
    return tables::parse_snapshot(read_text(p));
  } catch (const tables::SnapshotParseError& e) {
    throw UsageError(p.string() + ": line " + std::to_string(e.line) + ": " + e.what());
  }
}

}  // namespace

RunManifest cmd_run(const RunOptions& options) { return run_scenario(options).manifest; }

vv::DiffReport compare_artifacts(const CompareOptions& o) {
  if (o.reference_trace.has_value() != o.simulated_trace.has_value())
    throw UsageError("traces must be given in pairs (reference and simulated)");
  if (!o.reference_trace && o.tables.empty()) throw UsageError("nothing to compare");
  std::vector<fs::path> inputs;
  if (o.reference_trace) inputs.insert(inputs.end(), {*o.reference_trace, *o.simulated_trace});
  for (const auto& [ref, sim] : o.tables) inputs.insert(inputs.end(), {ref, sim});
  for (const auto& p : inputs)
    if (std::error_code ec; !fs::is_regular_file(p, ec)) throw UsageError("missing file " + p.string());
  vv::DiffReport report;
  report.title = o.title;
  if (o.reference_trace) {
    report.has_messages = true;
    report.rows = vv::align_traces(load_trace(*o.reference_trace), load_trace(*o.simulated_trace));
  }
  for (const auto& [ref, sim] : o.tables) {
    report.has_tables = true;
    auto diffs = tables::diff_tables(load_snapshot(ref), load_snapshot(sim));
    report.table_diffs.insert(report.table_diffs.end(), diffs.begin(), diffs.end());
  }
  return report;
}

namespace {

void write_reports(const vv::DiffReport& report, const fs::path& dir, const std::string& stem) {
  write_text(dir / (stem + ".txt"), vv::render_report(report, vv::ReportFormat::Text));
  write_text(dir / (stem + ".json"), vv::render_report(report, vv::ReportFormat::Json));
}

}  // namespace

int cmd_compare(const CompareOptions& options, const fs::path& out, vv::ReportFormat format, std::ostream& stdout_,
                std::ostream& stderr_) {
  try {
    auto report = compare_artifacts(options);
    if (!out.empty()) {
      fs::create_directories(out);
      write_reports(report, out, "report");
      stdout_ << "verdict: " << (report.pass() ? "PASS" : "FAIL") << " (" << (out / "report.txt").string() << ")\n";
    } else {
      stdout_ << vv::render_report(report, format);
    }
    return report.pass() ? kExitPass : kExitMismatch;
  } catch (const UsageError& e) {
    stderr_ << "error: " << e.what() << '\n';
  } catch (const tables::NodeMismatch& e) {
    stderr_ << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

Bytes make_tar(const std::vector<std::pair<std::string, Bytes>>& files) {
  Bytes out;
  auto octal = [](char* field, std::size_t width, std::uint64_t value) {
    std::snprintf(field, width, "%0*llo", static_cast<int>(width - 1), static_cast<unsigned long long>(value));
  };
  for (const auto& [name, data] : files) {
    if (name.size() > 99) throw UsageError("archive member name too long: " + name);
    char h[512] = {};
    std::copy(name.begin(), name.end(), h);
    octal(h + 100, 8, 0644);
    octal(h + 108, 8, 0);
    octal(h + 116, 8, 0);
    octal(h + 124, 12, data.size());
    octal(h + 136, 12, 0);
    std::fill(h + 148, h + 156, ' ');
    h[156] = '0';
    std::copy_n("ustar", 6, h + 257);
    h[263] = '0';
    h[264] = '0';
    unsigned sum = 0;
    for (unsigned char c : h) sum += c;
    std::snprintf(h + 148, 8, "%06o", sum);
    h[155] = ' ';
    out.insert(out.end(), h, h + 512);
    out.insert(out.end(), data.begin(), data.end());
    out.resize((out.size() + 511) / 512 * 512, 0);
  }
  out.resize(out.size() + 1024, 0);
  return out;
}

namespace {

struct ScenarioJob {
  std::string name;
  fs::path dir;
  RunManifest manifest;
  vv::DiffReport golden;
  vv::DiffReport reference;
};

ScenarioJob repro_scenario(const std::string& name, const ReproOptions& o, const fs::path& golden_root) {
  ScenarioJob job;
  job.name = name;
  job.dir = o.out / name;
  RunOptions ro;
  ro.source = builtin_scenario(name, o.fixtures);
  ro.out = job.dir;
  auto run = run_scenario(ro);
  job.manifest = run.manifest;

  const auto& cap = run.result.captures.at(0);
  std::string stem = cap.node + "-" + cap.iface;
  fs::path golden = golden_root / name;
  if (o.update_golden) {
    fs::create_directories(golden);
    fs::copy_file(job.dir / (stem + ".pcap"), golden / (stem + ".pcap"), fs::copy_options::overwrite_existing);
    for (const char* which : {".begin.snapshot", ".end.snapshot"})
      fs::copy_file(job.dir / (cap.node + which), golden / (cap.node + which), fs::copy_options::overwrite_existing);
  }

  CompareOptions g;
  g.title = name + ": simulation vs golden capture";
  g.reference_trace = golden / (stem + ".pcap");
  g.simulated_trace = job.dir / (stem + ".pcap");
  for (const char* which : {".begin.snapshot", ".end.snapshot"})
    g.tables.emplace_back(golden / (cap.node + which), job.dir / (cap.node + which));
  job.golden = compare_artifacts(g);
  job.golden.title = g.title;

  CompareOptions p;
  p.title = name + ": simulation vs hardware reference transcript";
  fs::path ref = o.fixtures / name;
  p.reference_trace = ref / "reference.trace";
  p.simulated_trace = job.dir / (stem + ".pcap");
  for (const char* which : {".begin.snapshot", ".end.snapshot"})
    p.tables.emplace_back(ref / (cap.node + which), job.dir / (cap.node + which));
  job.reference = compare_artifacts(p);
  job.reference.title = p.title;

  write_reports(job.golden, job.dir, "report");
  write_reports(job.reference, job.dir, "reference-report");
  return job;
}

}  // namespace

ReproOutcome cmd_repro(const ReproOptions& o, std::ostream& log) {
  fs::path golden_root = o.golden.empty() ? o.fixtures / "golden" : o.golden;
  fs::create_directories(o.out);
  const std::vector<std::string> names{"scenario1", "scenario2"};

  std::vector<ScenarioJob> jobs;
  if (o.parallel > 1) {
    std::vector<std::future<ScenarioJob>> futures;
    for (const auto& n : names)
      futures.push_back(std::async(std::launch::async, repro_scenario, n, std::cref(o), std::cref(golden_root)));
    for (auto& f : futures) jobs.push_back(f.get());
  } else {
    for (const auto& n : names) jobs.push_back(repro_scenario(n, o, golden_root));
  }

  ReproOutcome outcome;
  std::ostringstream summary;
  std::vector<std::pair<std::string, Bytes>> members;
  for (const auto& job : jobs) {
    ReproScenario s{job.name, job.golden.pass(), job.reference.pass()};
    outcome.scenarios.push_back(s);
    if (!s.golden_pass) outcome.exit_code = kExitMismatch;
    summary << job.name << " golden: " << (s.golden_pass ? "PASS" : "FAIL") << '\n';
    summary << job.name << " reference (informational): " << (s.reference_pass ? "PASS" : "FAIL") << '\n';
    for (const auto& row : job.golden.rows)
      if (row.verdict != vv::Verdict::Match) {
        std::string idx;
        for (auto i : row.reference_indices) idx += (idx.empty() ? "" : ",") + std::to_string(i);
        summary << "  golden row " << (idx.empty() ? "-" : idx) << ": " << vv::to_string(row.verdict) << ' '
                << row.description << '\n';
        for (const auto& n : row.notes) summary << "    " << n << '\n';
      }
    for (const auto& d : job.golden.table_diffs) summary << "  " << tables::describe(d) << '\n';

    std::vector<std::string> files;
    for (const auto& a : job.manifest.artifacts) files.push_back(a.path);
    files.push_back("manifest.json");
    for (const char* r : {"report.txt", "report.json", "reference-report.txt", "reference-report.json"})
      files.push_back(r);
    std::sort(files.begin(), files.end());
    for (const auto& f : files) members.emplace_back(job.name + "/" + f, read_bytes(job.dir / f));
  }
  write_text(o.out / "summary.txt", summary.str());
  members.insert(members.begin(), {"summary.txt", to_bytes(summary.str())});
  outcome.archive = o.out / "repro.tar";
  auto tar = make_tar(members);
  write_bytes(outcome.archive, tar);
  log << summary.str() << "archive: " << outcome.archive.string() << " sha256=" << sha256_hex(tar) << '\n';
  return outcome;
}

}  // namespace eigrpvv::cli
