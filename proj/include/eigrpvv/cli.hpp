#pragma once

// Subcommand implementations behind the eigrp-vv tool. The executable only parses
// arguments; everything here is callable from tests.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eigrpvv/align.hpp"
#include "eigrpvv/bytes.hpp"
#include "eigrpvv/sim_time.hpp"

namespace eigrpvv::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kExitPass = 0, kExitMismatch = 1, kExitUsage = 2 };

/// Bad arguments or unreadable inputs; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Directory holding the bundled scenarios, reference transcripts and golden captures.
fs::path default_fixture_dir();

struct ScenarioSource {
  std::string name;
  fs::path topology;
  fs::path scenario;
};

/// "scenario1" or "scenario2" under `fixtures`.
ScenarioSource builtin_scenario(std::string_view name, const fs::path& fixtures);

struct Artifact {
  std::string path;  // relative to the manifest's directory
  std::string kind;  // pcap, trace, snapshot, report
  std::string sha256;
};

struct RunManifest {
  std::string scenario;
  std::string topology_file;
  std::string scenario_file;
  std::uint64_t seed = 0;
  std::string output_directory;
  std::vector<Artifact> artifacts;
};

std::string manifest_json(const RunManifest& m);
RunManifest parse_manifest(std::string_view json);
/// Every listed artifact exists under `dir` and matches its hash.
bool verify_manifest(const fs::path& dir, const RunManifest& m);

struct RunOptions {
  ScenarioSource source;
  std::uint64_t seed = 0;
  std::optional<std::pair<SimTime, SimTime>> jitter;
  fs::path out;
  std::vector<std::string> extra_captures;  // NODE.IFACE
  bool pcaps_only = false;
};

/// Runs the scenario and writes captures, transcripts, snapshots and manifest.json to
/// `out`. The manifest records file names relative to `out` so runs are relocatable.
RunManifest cmd_run(const RunOptions& options);

struct CompareOptions {
  std::optional<fs::path> reference_trace;  // pcap or transcript
  std::optional<fs::path> simulated_trace;
  std::vector<std::pair<fs::path, fs::path>> tables;  // (reference, simulated) snapshots
  std::string title;
};

/// Throws UsageError for missing or unreadable inputs and tables::NodeMismatch.
vv::DiffReport compare_artifacts(const CompareOptions& options);

/// Writes report.txt and report.json into `out` when it is non-empty, otherwise prints
/// the text report. Returns the exit code.
int cmd_compare(const CompareOptions& options, const fs::path& out, vv::ReportFormat format, std::ostream& stdout_,
                std::ostream& stderr_);

struct ReproOptions {
  fs::path fixtures;
  fs::path golden;  // empty: fixtures/golden
  fs::path out;
  int parallel = 1;
  bool update_golden = false;
};

struct ReproScenario {
  std::string name;
  bool golden_pass = false;
  bool reference_pass = false;
};

struct ReproOutcome {
  int exit_code = kExitPass;
  std::vector<ReproScenario> scenarios;
  fs::path archive;
};

/// Runs both built-in scenarios with seed 0 and compares each against its golden
/// captures and snapshots (this decides the exit code) and against the hand-made
/// reference transcript and snapshots (reported, informational). Bundles everything
/// into out/repro.tar.
ReproOutcome cmd_repro(const ReproOptions& options, std::ostream& log);

std::string sha256_hex(std::span<const std::uint8_t> data);

/// POSIX ustar archive with fixed owner, mode and mtime so equal inputs give equal bytes.
Bytes make_tar(const std::vector<std::pair<std::string, Bytes>>& files);

/// "0.001,0.005" (seconds).
std::pair<SimTime, SimTime> parse_jitter(std::string_view text);

}  // namespace eigrpvv::cli
