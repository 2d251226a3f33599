// eigrp-vv: run the EIGRP scenarios, compare against baselines, build the reproduction bundle.

#include <iostream>

#include <CLI11.hpp>

#include "eigrpvv/cli.hpp"

namespace cli = eigrpvv::cli;

namespace {

struct ScenarioArgs {
  std::string builtin;
  std::string topology;
  std::string scenario;
};

void add_scenario_args(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("name", a.builtin, "built-in scenario (scenario1, scenario2)");
  cmd->add_option("--topology", a.topology, "topology file")->check(CLI::ExistingFile);
  cmd->add_option("--scenario", a.scenario, "scenario XML file")->check(CLI::ExistingFile);
}

cli::ScenarioSource resolve(const ScenarioArgs& a, const std::string& fixtures) {
  if (!a.builtin.empty()) {
    auto s = cli::builtin_scenario(a.builtin, fixtures);
    if (!a.topology.empty()) s.topology = a.topology;
    if (!a.scenario.empty()) s.scenario = a.scenario;
    return s;
  }
  if (a.topology.empty() || a.scenario.empty())
    throw cli::UsageError("give a built-in scenario name or both --topology and --scenario");
  return {"", a.topology, a.scenario};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EIGRP simulation model verification and validation"};
  app.require_subcommand(1);
  std::string fixtures = cli::default_fixture_dir().string();
  app.add_option("--fixtures", fixtures, "directory with bundled scenarios and references");

  ScenarioArgs run_args;
  std::uint64_t seed = 0;
  std::string out, jitter;
  std::vector<std::string> captures;
  auto* run = app.add_subcommand("run", "run a scenario and write captures, snapshots and a manifest");
  add_scenario_args(run, run_args);
  run->add_option("--seed", seed, "random seed");
  run->add_option("--out", out, "output directory")->required();
  run->add_option("--jitter", jitter, "uniform send jitter MIN,MAX in seconds");
  run->add_option("--capture", captures, "extra capture point NODE.IFACE");

  ScenarioArgs export_args;
  auto* exp = app.add_subcommand("export-pcap", "run a scenario and write only the captures");
  add_scenario_args(exp, export_args);
  exp->add_option("--seed", seed, "random seed");
  exp->add_option("--out", out, "output directory")->required();
  exp->add_option("--jitter", jitter, "uniform send jitter MIN,MAX in seconds");
  exp->add_option("--capture", captures, "extra capture point NODE.IFACE");

  std::string ref_trace, sim_trace, format = "text", title;
  std::vector<std::string> table_pairs;
  auto* cmp = app.add_subcommand("compare", "compare reference and simulated artifacts");
  cmp->add_option("--reference", ref_trace, "reference capture (pcap or transcript)");
  cmp->add_option("--simulated", sim_trace, "simulated capture (pcap or transcript)");
  cmp->add_option("--tables", table_pairs, "reference and simulated snapshot")->expected(2)->multi_option_policy(
      CLI::MultiOptionPolicy::TakeAll);
  std::string report_dir;
  cmp->add_option("--out", report_dir, "write report.txt and report.json here");
  cmp->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  cmp->add_option("--title", title, "report title");

  std::string golden;
  int parallel = 1;
  bool update_golden = false;
  auto* repro = app.add_subcommand("repro", "rerun both scenarios and build the reproduction bundle");
  std::string bundle_dir = "repro";
  repro->add_option("--out", bundle_dir, "bundle directory");
  repro->add_option("--golden", golden, "golden artifacts directory (default: FIXTURES/golden)");
  repro->add_option("--parallel", parallel, "scenarios to run concurrently")->check(CLI::PositiveNumber);
  repro->add_flag("--update-golden", update_golden, "overwrite the golden artifacts with this run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitUsage;
  }

  try {
    if (run->parsed() || exp->parsed()) {
      cli::RunOptions o;
      o.source = resolve(run->parsed() ? run_args : export_args, fixtures);
      o.seed = seed;
      if (!jitter.empty()) o.jitter = cli::parse_jitter(jitter);
      o.out = out;
      o.extra_captures = captures;
      o.pcaps_only = exp->parsed();
      auto m = cli::cmd_run(o);
      for (const auto& a : m.artifacts) std::cout << a.sha256 << "  " << (o.out / a.path).string() << '\n';
      return cli::kExitPass;
    }
    if (cmp->parsed()) {
      cli::CompareOptions o;
      if (!ref_trace.empty()) o.reference_trace = ref_trace;
      if (!sim_trace.empty()) o.simulated_trace = sim_trace;
      for (std::size_t i = 0; i + 1 < table_pairs.size(); i += 2) o.tables.emplace_back(table_pairs[i], table_pairs[i + 1]);
      o.title = title;
      return cli::cmd_compare(o, report_dir, format == "json" ? eigrpvv::vv::ReportFormat::Json : eigrpvv::vv::ReportFormat::Text,
                              std::cout, std::cerr);
    }
    cli::ReproOptions o;
    o.fixtures = fixtures;
    o.golden = golden;
    o.out = bundle_dir;
    o.parallel = parallel;
    o.update_golden = update_golden;
    return cli::cmd_repro(o, std::cout).exit_code;
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
}
