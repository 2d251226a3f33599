#pragma once

// EIGRP packet model and its RFC 7868 classic wire encoding.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eigrpvv/bytes.hpp"
#include "eigrpvv/ipv4.hpp"

namespace eigrpvv::codec {

inline constexpr std::uint8_t kVersion = 2;
inline constexpr std::size_t kHeaderSize = 20;
inline constexpr std::size_t kTlvHeaderSize = 4;
inline constexpr std::size_t kAuthMagicSize = 16;
inline constexpr std::uint32_t kUnreachableDelay = 0xFFFFFFFF;

enum class Opcode : std::uint8_t {
  Update = 1,
  Query = 3,
  Reply = 4,
  Hello = 5,
};

std::string_view to_string(Opcode op);

namespace flags {
inline constexpr std::uint32_t kInit = 0x01;
inline constexpr std::uint32_t kConditionalReceive = 0x02;
inline constexpr std::uint32_t kEndOfTable = 0x08;
}  // namespace flags

/// Renders e.g. "INIT|EOT", or "-" when no flag is set. Unknown bits render as hex.
std::string flags_to_string(std::uint32_t flags);
/// Inverse of flags_to_string; throws std::invalid_argument.
std::uint32_t flags_from_string(std::string_view text);

enum class TlvType : std::uint16_t {
  Parameters = 0x0001,
  Authentication = 0x0002,
  SoftwareVersion = 0x0004,
  Stub = 0x0006,
  PeerTopologyIdList = 0x0008,
  InternalRoute = 0x0102,
};

struct EigrpHeader {
  std::uint8_t version = kVersion;
  Opcode opcode = Opcode::Hello;
  std::uint16_t checksum = 0;
  std::uint32_t flags = 0;
  std::uint32_t sequence = 0;
  std::uint32_t acknowledgment = 0;
  std::uint16_t virtual_router_id = 0;
  std::uint16_t autonomous_system = 0;

  bool operator==(const EigrpHeader&) const = default;
};

struct ParametersTlv {
  std::array<std::uint8_t, 5> k{1, 0, 1, 0, 0};
  std::uint8_t k6 = 0;
  std::uint16_t hold_time = 15;
  bool operator==(const ParametersTlv&) const = default;
};

/// Stand-in for authentication material: a fixed tag, zero padded to 16 bytes on the wire.
struct AuthenticationTlv {
  std::string magic;
  bool operator==(const AuthenticationTlv&) const = default;
};

struct SoftwareVersionTlv {
  std::uint8_t os_major = 12;
  std::uint8_t os_minor = 4;
  std::uint8_t eigrp_major = 2;
  std::uint8_t eigrp_minor = 0;
  bool operator==(const SoftwareVersionTlv&) const = default;
};

struct StubTlv {
  std::uint16_t stub_flags = 0;
  bool operator==(const StubTlv&) const = default;
};

struct PeerTopologyIdListTlv {
  std::vector<std::uint16_t> topology_ids{0};
  bool operator==(const PeerTopologyIdListTlv&) const = default;
};

/// Classic IPv4 internal route. Delay and bandwidth carry the 256-scaled wire values.
struct InternalRouteTlv {
  Ipv4Address next_hop;
  std::uint32_t scaled_delay = 0;
  std::uint32_t scaled_bandwidth = 0;
  std::uint32_t mtu = 1500;  // 24 bits on the wire
  std::uint8_t hop_count = 0;
  std::uint8_t reliability = 255;
  std::uint8_t load = 1;
  std::uint16_t reserved = 0;
  Ipv4Prefix destination;

  bool unreachable() const { return scaled_delay == kUnreachableDelay; }
  bool operator==(const InternalRouteTlv&) const = default;
};

/// Any TLV type the codec does not interpret, kept verbatim.
struct OpaqueTlv {
  std::uint16_t type = 0;
  Bytes value;
  bool operator==(const OpaqueTlv&) const = default;
};

using Tlv = std::variant<ParametersTlv, AuthenticationTlv, SoftwareVersionTlv, StubTlv, PeerTopologyIdListTlv,
                         InternalRouteTlv, OpaqueTlv>;

std::uint16_t tlv_type(const Tlv& tlv);
/// Encoded size of the TLV including its 4-byte type/length prefix.
std::size_t tlv_length(const Tlv& tlv);
/// "PARAMETERS", "INTERNAL_ROUTE", ... or "TLV_0x0103" for opaque types.
std::string tlv_name(std::uint16_t type);

struct EigrpPacket {
  EigrpHeader header;
  std::vector<Tlv> tlvs;

  /// Hello with a non-zero acknowledgment and no TLVs besides authentication.
  bool is_ack() const;
  bool is_reliable() const { return header.opcode != Opcode::Hello; }
  std::vector<InternalRouteTlv> routes() const;

  bool operator==(const EigrpPacket&) const = default;
};

struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

enum class DecodeErrorKind { Truncated, BadChecksum, UnknownOpcode, Malformed };

struct DecodeError : std::runtime_error {
  DecodeError(DecodeErrorKind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  DecodeErrorKind kind;
};

/// Throws InvariantViolation when the packet breaks a header or TLV invariant.
void validate(const EigrpPacket& pkt);

/// Wire bytes with the checksum computed over the whole EIGRP payload. The header's
/// checksum field is ignored on input.
Bytes encode_packet(const EigrpPacket& pkt);

struct DecodeOptions {
  bool verify_checksum = true;
};

/// Decoded packet; header.checksum holds the value found on the wire.
EigrpPacket decode_packet(std::span<const std::uint8_t> bytes, DecodeOptions options = {});

/// Packet with the checksum field set to what encode_packet would emit.
EigrpPacket with_checksum(EigrpPacket pkt);

}  // namespace eigrpvv::codec
