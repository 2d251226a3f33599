#include "eigrpvv/frame.hpp"

#include <cstdio>

#include "eigrpvv/checksum.hpp"

namespace eigrpvv {

MacAddress MacAddress::for_multicast(Ipv4Address group) {
  std::uint32_t v = group.value();
  return MacAddress{{0x01, 0x00, 0x5E, static_cast<std::uint8_t>((v >> 16) & 0x7F),
                     static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)}};
}

std::string MacAddress::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x", octets[0], octets[1], octets[2], octets[3],
                octets[4], octets[5]);
  return buf;
}

Bytes build_eigrp_frame(const FrameHeaders& h, std::span<const std::uint8_t> eigrp) {
  Bytes out;
  out.reserve(kEthernetHeaderSize + kIpv4HeaderSize + eigrp.size());
  ByteWriter w{out};
  w.raw(h.dst_mac.octets);
  w.raw(h.src_mac.octets);
  w.u16(kEtherTypeIpv4);
  std::size_t ip_start = w.size();
  w.u8(0x45);
  w.u8(h.tos);
  w.u16(static_cast<std::uint16_t>(kIpv4HeaderSize + eigrp.size()));
  w.u16(h.ip_id);
  w.u16(0);  // flags + fragment offset
  w.u8(h.ttl);
  w.u8(kIpProtoEigrp);
  w.u16(0);
  w.u32(h.src.value());
  w.u32(h.dst.value());
  w.patch_u16(ip_start + 10, internet_checksum(std::span(out).subspan(ip_start, kIpv4HeaderSize)));
  w.raw(eigrp);
  return out;
}

std::optional<ParsedFrame> parse_eigrp_frame(std::span<const std::uint8_t> frame) {
  if (frame.size() < kEthernetHeaderSize + kIpv4HeaderSize) return std::nullopt;
  ByteReader r{frame};
  ParsedFrame p;
  auto dst = r.take(6);
  auto src = r.take(6);
  std::copy(dst.begin(), dst.end(), p.headers.dst_mac.octets.begin());
  std::copy(src.begin(), src.end(), p.headers.src_mac.octets.begin());
  if (r.u16() != kEtherTypeIpv4) return std::nullopt;
  std::uint8_t ver_ihl = r.u8();
  if ((ver_ihl >> 4) != 4) return std::nullopt;
  std::size_t ihl = std::size_t{ver_ihl & 0x0Fu} * 4;
  if (ihl < kIpv4HeaderSize) return std::nullopt;
  p.headers.tos = r.u8();
  std::uint16_t total = r.u16();
  p.headers.ip_id = r.u16();
  r.u16();
  p.headers.ttl = r.u8();
  if (r.u8() != kIpProtoEigrp) return std::nullopt;
  r.u16();
  p.headers.src = Ipv4Address{r.u32()};
  p.headers.dst = Ipv4Address{r.u32()};
  if (total < ihl || kEthernetHeaderSize + total > frame.size()) return std::nullopt;
  auto payload = frame.subspan(kEthernetHeaderSize + ihl, total - ihl);
  p.eigrp.assign(payload.begin(), payload.end());
  return p;
}

}  // namespace eigrpvv
