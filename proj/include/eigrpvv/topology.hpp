#pragma once

// Line-oriented topology description, loosely shaped after router configuration:
//
//   router R1
//     start 2
//     interface ethg0 10.0.12.1/30 bandwidth 10000 delay 100
//     eigrp 1
//     network 10.0.0.0/8
//   link R1 ethg0 R2 ethg0 Eth10M down
//   capture R1 ethg0
//   window 2
//
// '!' or '#' start a comment.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eigrpvv/ipv4.hpp"
#include "eigrpvv/router.hpp"

namespace eigrpvv::topo {

struct InterfaceSpec {
  std::string name;
  InterfaceAddress address;
  eigrp::InterfaceMetric metric;
};

struct RouterSpec {
  std::string name;
  SimTime start{};
  std::vector<InterfaceSpec> interfaces;
  eigrp::EigrpConfig eigrp;
};

struct LinkSpec {
  std::string a_node;
  std::string a_iface;
  std::string b_node;
  std::string b_iface;
  std::string channel = "Eth10M";
  bool up = true;
};

struct CaptureSpec {
  std::string node;
  std::string iface;
};

struct TopologySpec {
  std::vector<RouterSpec> routers;
  std::vector<LinkSpec> links;
  std::vector<CaptureSpec> captures;
  SimTime window = SimTime::from_seconds(2);
};

struct TopologyParseError : std::runtime_error {
  TopologyParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

TopologySpec parse_topology(std::string_view text);

}  // namespace eigrpvv::topo
