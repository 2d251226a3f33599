#pragma once

// Seeded random router topologies and an independent brute-force metric oracle.
// The oracle enumerates every simple path and never touches the router code.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

struct RandIface {
  std::string name;
  std::string address;  // a.b.c.d/len
  std::string prefix;   // network/len
  std::uint32_t bandwidth_kbps = 10'000;
  std::uint32_t delay_tens_us = 100;
  int peer_router = -1;  // -1 for a stub LAN
  int peer_iface = -1;
};

struct RandTopology {
  std::vector<std::vector<RandIface>> routers;  // router i is named R<i+1>

  std::string name(int r) const { return "R" + std::to_string(r + 1); }

  std::string to_config() const {
    std::string out;
    for (std::size_t r = 0; r < routers.size(); ++r) {
      out += "router " + name(int(r)) + "\n  start 0\n";
      for (const auto& i : routers[r])
        out += "  interface " + i.name + " " + i.address + " bandwidth " + std::to_string(i.bandwidth_kbps) +
               " delay " + std::to_string(i.delay_tens_us) + "\n";
      out += "  eigrp 1\n\n";
    }
    for (std::size_t r = 0; r < routers.size(); ++r)
      for (const auto& i : routers[r])
        if (i.peer_router > int(r))
          out += "link " + name(int(r)) + " " + i.name + " " + name(i.peer_router) + " " +
                 routers[std::size_t(i.peer_router)][std::size_t(i.peer_iface)].name + " Eth10M\n";
    return out;
  }
};

/// Connected graph of 2..max_routers routers, each with one LAN, links 10 Mbps with
/// random per-interface delays.
inline RandTopology random_topology(std::uint64_t seed, int max_routers = 5) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int n = pick(2, max_routers);
  RandTopology t;
  t.routers.resize(std::size_t(n));
  for (int r = 0; r < n; ++r) {
    RandIface lan;
    lan.name = "lan";
    lan.address = std::to_string(r + 1) + ".0.0.1/24";
    lan.prefix = std::to_string(r + 1) + ".0.0.0/24";
    lan.delay_tens_us = std::uint32_t(pick(10, 1000));
    t.routers[std::size_t(r)].push_back(lan);
  }
  std::set<std::pair<int, int>> edges;
  for (int r = 1; r < n; ++r) edges.insert({pick(0, r - 1), r});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (pick(0, 99) < 40) edges.insert({a, b});
  int subnet = 0;
  for (auto [a, b] : edges) {
    std::string net = "10.0." + std::to_string(subnet++) + ".";
    auto& ra = t.routers[std::size_t(a)];
    auto& rb = t.routers[std::size_t(b)];
    RandIface ia, ib;
    ia.name = "ethg" + std::to_string(ra.size() - 1);
    ib.name = "ethg" + std::to_string(rb.size() - 1);
    ia.address = net + "1/30";
    ib.address = net + "2/30";
    ia.prefix = ib.prefix = net + "0/30";
    ia.delay_tens_us = std::uint32_t(pick(10, 2000));
    ib.delay_tens_us = std::uint32_t(pick(10, 2000));
    ia.peer_router = b;
    ia.peer_iface = int(rb.size());
    ib.peer_router = a;
    ib.peer_iface = int(ra.size());
    ra.push_back(ia);
    rb.push_back(ib);
  }
  return t;
}

/// Best classic metric from `from` to every prefix not connected to it, minimised over
/// all simple paths: 256 * (10^7 / min bandwidth + sum of outgoing interface delays,
/// ending with the destination router's attached interface). A router attached to the
/// prefix ends the path: it reaches the prefix through its own interface and never
/// advertises a transit path for it.
inline std::map<std::string, std::uint64_t> brute_force_metrics(const RandTopology& t, int from) {
  std::map<std::string, std::uint64_t> best;
  std::set<std::string> local;
  for (const auto& i : t.routers[std::size_t(from)]) local.insert(i.prefix);
  std::set<std::string> prefixes;
  for (const auto& r : t.routers)
    for (const auto& i : r)
      if (!local.count(i.prefix)) prefixes.insert(i.prefix);

  for (const auto& prefix : prefixes) {
    std::vector<bool> visited(t.routers.size(), false);
    auto dfs = [&](auto&& self, int r, std::uint32_t min_bw, std::uint64_t delay) -> void {
      visited[std::size_t(r)] = true;
      bool attached = false;
      for (const auto& i : t.routers[std::size_t(r)]) {
        if (i.prefix != prefix) continue;
        attached = true;
        std::uint64_t bw = std::min(min_bw, i.bandwidth_kbps);
        std::uint64_t m = 256 * (10'000'000 / bw + delay + i.delay_tens_us);
        auto it = best.find(prefix);
        if (it == best.end() || m < it->second) best[prefix] = m;
      }
      if (!attached)
        for (const auto& i : t.routers[std::size_t(r)]) {
          if (i.peer_router < 0 || visited[std::size_t(i.peer_router)]) continue;
          self(self, i.peer_router, std::min(min_bw, i.bandwidth_kbps), delay + i.delay_tens_us);
        }
      visited[std::size_t(r)] = false;
    };
    dfs(dfs, from, std::numeric_limits<std::uint32_t>::max(), 0);
  }
  return best;
}

}  // namespace testsupport
