#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "eigrpvv/packet.hpp"

namespace eigrpvv::eigrp {

using Metric = std::uint32_t;
inline constexpr Metric kInfiniteMetric = 0xFFFFFFFF;
inline constexpr std::uint32_t kUnreachableDelay = 0xFFFFFFFF;
/// Numerator of the classic bandwidth term, 10^7 / kbps.
inline constexpr std::uint64_t kBandwidthReference = 10'000'000;

struct KValues {
  std::array<std::uint8_t, 5> k{1, 0, 1, 0, 0};
  auto operator<=>(const KValues&) const = default;
};

/// Per-interface metric attributes, as configured.
struct InterfaceMetric {
  std::uint32_t bandwidth_kbps = 10'000;
  std::uint32_t delay_tens_us = 100;
  std::uint32_t mtu = 1500;
  std::uint8_t reliability = 255;
  std::uint8_t load = 1;
};

/// Vector metric of a path: bottleneck bandwidth plus accumulated delay and hops.
struct RouteComponents {
  std::uint32_t min_bandwidth_kbps = 0;
  std::uint32_t delay_tens_us = kUnreachableDelay;
  std::uint8_t hop_count = 0;
  std::uint8_t reliability = 255;
  std::uint8_t load = 1;
  std::uint32_t mtu = 1500;

  bool unreachable() const { return delay_tens_us == kUnreachableDelay; }
  static RouteComponents unreachable_route() { return {}; }
  static RouteComponents connected(const InterfaceMetric& iface);
  bool operator==(const RouteComponents&) const = default;
};

/// Classic composite metric:
///   256 * (K1*BW + K2*BW/(256-load) + K3*delay) [* K5/(reliability+K4) when K5 != 0]
/// with BW = 10^7 / min_bw_kbps (integer division). Unreachable delay gives kInfiniteMetric;
/// finite results saturate one below it.
Metric compute_metric(std::uint32_t min_bandwidth_kbps, std::uint32_t delay_tens_us, const KValues& k = {},
                      std::uint8_t reliability = 255, std::uint8_t load = 1);
Metric compute_metric(const RouteComponents& c, const KValues& k = {});

/// Feasibility condition: a neighbor's reported distance strictly below our FD.
constexpr bool feasibility_check(Metric reported, Metric feasible_distance) { return reported < feasible_distance; }

/// Path components seen by a router that receives `reported` over `incoming`.
RouteComponents compose(const RouteComponents& reported, const InterfaceMetric& incoming);

/// Wire form: delay and bandwidth both scaled by 256.
void to_wire(const RouteComponents& c, codec::InternalRouteTlv& tlv);
RouteComponents from_wire(const codec::InternalRouteTlv& tlv);

}  // namespace eigrpvv::eigrp
