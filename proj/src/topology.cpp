#include "eigrpvv/topology.hpp"

#include <sstream>

#include "eigrpvv/scenario.hpp"
#include "eigrpvv/simulation.hpp"

namespace eigrpvv::topo {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::string body = line.substr(0, line.find_first_of("!#"));
  std::istringstream in(body);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

unsigned long number(const std::string& s, int line, unsigned long max) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(s, &used);
    if (used == s.size() && v <= max) return v;
  } catch (const std::logic_error&) {
  }
  throw TopologyParseError("expected a number up to " + std::to_string(max) + ", got '" + s + "'", line);
}

SimTime seconds(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size() && v >= 0) return SimTime::from_seconds_double(v);
  } catch (const std::logic_error&) {
  }
  throw TopologyParseError("expected non-negative seconds, got '" + s + "'", line);
}

void parse_router_line(RouterSpec& r, const std::vector<std::string>& t, int line) {
  auto need = [&](std::size_t n) {
    if (t.size() < n) throw TopologyParseError("'" + t[0] + "' needs more arguments", line);
  };
  const std::string& kw = t[0];
  if (kw == "start") {
    need(2);
    r.start = seconds(t[1], line);
  } else if (kw == "interface") {
    need(3);
    InterfaceSpec itf;
    itf.name = sim::normalize_gate(t[1]);
    auto addr = InterfaceAddress::parse(t[2]);
    if (!addr) throw TopologyParseError("bad interface address '" + t[2] + "'", line);
    itf.address = *addr;
    for (std::size_t i = 3; i < t.size(); i += 2) {
      if (i + 1 >= t.size()) throw TopologyParseError("interface option '" + t[i] + "' needs a value", line);
      if (t[i] == "bandwidth") {
        itf.metric.bandwidth_kbps = static_cast<std::uint32_t>(number(t[i + 1], line, 10'000'000));
        if (itf.metric.bandwidth_kbps == 0) throw TopologyParseError("bandwidth must be positive", line);
      } else if (t[i] == "delay") {
        itf.metric.delay_tens_us = static_cast<std::uint32_t>(number(t[i + 1], line, 0xFFFFFF));
      } else if (t[i] == "mtu") {
        itf.metric.mtu = static_cast<std::uint32_t>(number(t[i + 1], line, 0xFFFFFF));
      } else {
        throw TopologyParseError("unknown interface option '" + t[i] + "'", line);
      }
    }
    r.interfaces.push_back(itf);
  } else if (kw == "eigrp") {
    need(2);
    r.eigrp.as_number = static_cast<std::uint16_t>(number(t[1], line, 0xFFFF));
  } else if (kw == "metric") {
    if (t.size() != 8 || t[1] != "weights") throw TopologyParseError("expected 'metric weights TOS K1 K2 K3 K4 K5'", line);
    for (std::size_t i = 0; i < 5; ++i) r.eigrp.k.k[i] = static_cast<std::uint8_t>(number(t[3 + i], line, 255));
  } else if (kw == "hello-interval") {
    need(2);
    r.eigrp.hello_interval = seconds(t[1], line);
  } else if (kw == "hold-time") {
    need(2);
    r.eigrp.hold_time_s = static_cast<std::uint16_t>(number(t[1], line, 0xFFFF));
  } else if (kw == "network") {
    need(2);
    auto p = Ipv4Prefix::parse(t[1]);
    if (!p) throw TopologyParseError("bad network '" + t[1] + "'", line);
    r.eigrp.networks.push_back(*p);
  } else if (kw == "authentication") {
    if (t.size() != 3 || t[1] != "key-string") throw TopologyParseError("expected 'authentication key-string TAG'", line);
    if (t[2].size() > codec::kAuthMagicSize) throw TopologyParseError("key string longer than 16 bytes", line);
    r.eigrp.auth_magic = t[2];
  } else if (kw == "hello-tlvs") {
    need(2);
    if (t[1] == "stub") {
      r.eigrp.hello_style = eigrp::HelloStyle::Stub;
    } else if (t[1] == "peer-topology") {
      r.eigrp.hello_style = eigrp::HelloStyle::PeerTopology;
    } else {
      throw TopologyParseError("hello-tlvs is 'stub' or 'peer-topology'", line);
    }
  } else {
    throw TopologyParseError("unknown router statement '" + kw + "'", line);
  }
}

}  // namespace

TopologySpec parse_topology(std::string_view text) {
  TopologySpec spec;
  RouterSpec* current = nullptr;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    auto t = tokens(raw);
    if (t.empty()) continue;
    const std::string& kw = t[0];
    if (kw == "router") {
      if (t.size() != 2) throw TopologyParseError("expected 'router NAME'", lineno);
      for (const auto& r : spec.routers)
        if (r.name == t[1]) throw TopologyParseError("duplicate router " + t[1], lineno);
      spec.routers.push_back(RouterSpec{t[1], {}, {}, {}});
      current = &spec.routers.back();
    } else if (kw == "link") {
      if (t.size() < 5 || t.size() > 7) throw TopologyParseError("expected 'link A IF B IF [CHANNEL] [up|down]'", lineno);
      LinkSpec l{t[1], sim::normalize_gate(t[2]), t[3], sim::normalize_gate(t[4]), "Eth10M", true};
      for (std::size_t i = 5; i < t.size(); ++i) {
        if (t[i] == "up" || t[i] == "down") {
          l.up = t[i] == "up";
        } else if (sim::channel_profile(t[i])) {
          l.channel = sim::short_channel_name(t[i]);
        } else {
          throw TopologyParseError("unknown link option '" + t[i] + "'", lineno);
        }
      }
      spec.links.push_back(l);
      current = nullptr;
    } else if (kw == "capture") {
      if (t.size() != 3) throw TopologyParseError("expected 'capture NODE IF'", lineno);
      spec.captures.push_back({t[1], sim::normalize_gate(t[2])});
      current = nullptr;
    } else if (kw == "window") {
      if (t.size() != 2) throw TopologyParseError("expected 'window SECONDS'", lineno);
      spec.window = seconds(t[1], lineno);
      current = nullptr;
    } else if (current) {
      parse_router_line(*current, t, lineno);
    } else {
      throw TopologyParseError("statement '" + kw + "' outside a router block", lineno);
    }
  }
  if (spec.routers.empty()) throw TopologyParseError("no routers defined", lineno);
  return spec;
}

}  // namespace eigrpvv::topo
