#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "eigrpvv/bytes.hpp"
#include "eigrpvv/ipv4.hpp"

namespace eigrpvv {

inline constexpr std::uint16_t kEtherTypeIpv4 = 0x0800;
inline constexpr std::uint8_t kIpProtoEigrp = 88;
inline constexpr std::size_t kEthernetHeaderSize = 14;
inline constexpr std::size_t kIpv4HeaderSize = 20;

struct MacAddress {
  std::array<std::uint8_t, 6> octets{};

  /// IPv4 multicast mapping: 01:00:5E + low 23 bits of the group.
  static MacAddress for_multicast(Ipv4Address group);
  std::string to_string() const;
  auto operator<=>(const MacAddress&) const = default;
};

struct FrameHeaders {
  MacAddress src_mac;
  MacAddress dst_mac;
  Ipv4Address src;
  Ipv4Address dst;
  std::uint8_t tos = 0xC0;
  std::uint8_t ttl = 2;
  std::uint16_t ip_id = 0;

  bool operator==(const FrameHeaders&) const = default;
};

/// Ethernet II + IPv4 (protocol 88) around an encoded EIGRP payload.
Bytes build_eigrp_frame(const FrameHeaders& headers, std::span<const std::uint8_t> eigrp);

struct ParsedFrame {
  FrameHeaders headers;
  Bytes eigrp;
};

/// Extracts the EIGRP payload; nullopt for frames that are not IPv4 protocol 88
/// (ARP, other protocols) or are too short to hold the headers they announce.
std::optional<ParsedFrame> parse_eigrp_frame(std::span<const std::uint8_t> frame);

}  // namespace eigrpvv
