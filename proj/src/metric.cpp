#include "eigrpvv/metric.hpp"

#include <algorithm>

namespace eigrpvv::eigrp {

namespace {

constexpr std::uint64_t kMaxFinite = kInfiniteMetric - 1;

std::uint32_t saturate32(std::uint64_t v, std::uint64_t cap) { return static_cast<std::uint32_t>(std::min(v, cap)); }

}  // namespace

RouteComponents RouteComponents::connected(const InterfaceMetric& iface) {
  return RouteComponents{iface.bandwidth_kbps, iface.delay_tens_us, 0, iface.reliability, iface.load, iface.mtu};
}

Metric compute_metric(std::uint32_t min_bandwidth_kbps, std::uint32_t delay_tens_us, const KValues& kv,
                      std::uint8_t reliability, std::uint8_t load) {
  if (delay_tens_us == kUnreachableDelay || min_bandwidth_kbps == 0) return kInfiniteMetric;
  const auto& k = kv.k;
  // Terms use 256-scaled bandwidth and delay so integer division truncates late.
  std::uint64_t bw = kBandwidthReference / min_bandwidth_kbps * 256;
  std::uint64_t delay = std::uint64_t{delay_tens_us} * 256;
  std::uint64_t scaled = std::uint64_t{k[0]} * bw + std::uint64_t{k[2]} * delay;
  if (k[1] != 0) scaled += std::uint64_t{k[1]} * bw / (256u - std::min<std::uint32_t>(load, 255));
  if (k[4] != 0) scaled = scaled * k[4] / (std::uint64_t{reliability} + k[3]);
  return saturate32(scaled, kMaxFinite);
}

Metric compute_metric(const RouteComponents& c, const KValues& k) {
  return compute_metric(c.min_bandwidth_kbps, c.delay_tens_us, k, c.reliability, c.load);
}

RouteComponents compose(const RouteComponents& reported, const InterfaceMetric& incoming) {
  if (reported.unreachable()) return RouteComponents::unreachable_route();
  RouteComponents out;
  out.min_bandwidth_kbps = std::min(reported.min_bandwidth_kbps, incoming.bandwidth_kbps);
  out.delay_tens_us = saturate32(std::uint64_t{reported.delay_tens_us} + incoming.delay_tens_us, kUnreachableDelay - 1);
  out.hop_count = static_cast<std::uint8_t>(std::min(255, reported.hop_count + 1));
  out.reliability = std::min(reported.reliability, incoming.reliability);
  out.load = std::max(reported.load, incoming.load);
  out.mtu = std::min(reported.mtu, incoming.mtu);
  return out;
}

void to_wire(const RouteComponents& c, codec::InternalRouteTlv& tlv) {
  tlv.hop_count = c.hop_count;
  tlv.reliability = c.reliability;
  tlv.load = c.load;
  tlv.mtu = std::min<std::uint32_t>(c.mtu, 0xFFFFFF);
  if (c.unreachable()) {
    tlv.scaled_delay = codec::kUnreachableDelay;
    tlv.scaled_bandwidth = c.min_bandwidth_kbps == 0
                               ? 0
                               : saturate32(256 * (kBandwidthReference / c.min_bandwidth_kbps), 0xFFFFFFFF);
    return;
  }
  tlv.scaled_delay = saturate32(std::uint64_t{c.delay_tens_us} * 256, codec::kUnreachableDelay - 1);
  tlv.scaled_bandwidth = saturate32(256 * (kBandwidthReference / std::max<std::uint32_t>(c.min_bandwidth_kbps, 1)),
                                    0xFFFFFFFF);
}

RouteComponents from_wire(const codec::InternalRouteTlv& tlv) {
  RouteComponents c;
  c.hop_count = tlv.hop_count;
  c.reliability = tlv.reliability;
  c.load = tlv.load;
  c.mtu = tlv.mtu;
  std::uint32_t bw_term = tlv.scaled_bandwidth / 256;
  c.min_bandwidth_kbps = bw_term == 0 ? 0xFFFFFFFF : static_cast<std::uint32_t>(kBandwidthReference / bw_term);
  c.delay_tens_us = tlv.unreachable() ? kUnreachableDelay : tlv.scaled_delay / 256;
  return c;
}

}  // namespace eigrpvv::eigrp
