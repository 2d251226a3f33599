#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eigrpvv/sim_time.hpp"

namespace eigrpvv::sim {

enum class ActionKind { Connect, Disconnect };

/// Timed link mutation. Gates are normalized ("ethg[0]" becomes "ethg0").
struct ScenarioAction {
  SimTime at;
  ActionKind kind = ActionKind::Disconnect;
  std::string src_module;
  std::string src_gate;
  std::string dest_module;  // connect only
  std::string dest_gate;    // connect only
  std::string channel;      // connect only, short profile name such as "Eth10M"

  bool operator==(const ScenarioAction&) const = default;
};

struct ScenarioParseError : std::runtime_error {
  ScenarioParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct UnknownAttribute : ScenarioParseError {
  using ScenarioParseError::ScenarioParseError;
};

/// "ethg[0]" -> "ethg0"; other names pass through.
std::string normalize_gate(std::string_view gate);
/// "inet.node.ethernet.Eth10M" -> "Eth10M".
std::string short_channel_name(std::string_view channel_type);

/// Parses a `<scenario>` document of `<at t="...">` blocks holding `<connect/>` and
/// `<disconnect/>` elements. Result is stably sorted by time.
std::vector<ScenarioAction> load_scenario(std::string_view document);
std::string render_scenario(const std::vector<ScenarioAction>& actions);

}  // namespace eigrpvv::sim
