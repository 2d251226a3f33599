#include "eigrpvv/packet.hpp"

#include <cstdio>

#include "eigrpvv/checksum.hpp"

namespace eigrpvv::codec {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::size_t destination_bytes(int prefix_length) { return prefix_length == 0 ? 1 : (prefix_length + 7) / 8; }

std::size_t payload_size(const Tlv& tlv) {
  return std::visit(Overloaded{
                        [](const ParametersTlv&) -> std::size_t { return 8; },
                        [](const AuthenticationTlv&) -> std::size_t { return kAuthMagicSize; },
                        [](const SoftwareVersionTlv&) -> std::size_t { return 4; },
                        [](const StubTlv&) -> std::size_t { return 2; },
                        [](const PeerTopologyIdListTlv& t) -> std::size_t { return 2 * t.topology_ids.size(); },
                        [](const InternalRouteTlv& t) -> std::size_t {
                          return 21 + destination_bytes(t.destination.length());
                        },
                        [](const OpaqueTlv& t) -> std::size_t { return t.value.size(); },
                    },
                    tlv);
}

void encode_tlv(ByteWriter& w, const Tlv& tlv) {
  w.u16(tlv_type(tlv));
  w.u16(static_cast<std::uint16_t>(tlv_length(tlv)));
  std::visit(Overloaded{
                 [&](const ParametersTlv& t) {
                   for (auto k : t.k) w.u8(k);
                   w.u8(t.k6);
                   w.u16(t.hold_time);
                 },
                 [&](const AuthenticationTlv& t) {
                   w.raw({reinterpret_cast<const std::uint8_t*>(t.magic.data()), t.magic.size()});
                   w.zeros(kAuthMagicSize - t.magic.size());
                 },
                 [&](const SoftwareVersionTlv& t) {
                   w.u8(t.os_major);
                   w.u8(t.os_minor);
                   w.u8(t.eigrp_major);
                   w.u8(t.eigrp_minor);
                 },
                 [&](const StubTlv& t) { w.u16(t.stub_flags); },
                 [&](const PeerTopologyIdListTlv& t) {
                   for (auto id : t.topology_ids) w.u16(id);
                 },
                 [&](const InternalRouteTlv& t) {
                   w.u32(t.next_hop.value());
                   w.u32(t.scaled_delay);
                   w.u32(t.scaled_bandwidth);
                   w.u24(t.mtu);
                   w.u8(t.hop_count);
                   w.u8(t.reliability);
                   w.u8(t.load);
                   w.u16(t.reserved);
                   w.u8(static_cast<std::uint8_t>(t.destination.length()));
                   std::uint32_t net = t.destination.network().value();
                   std::size_t n = destination_bytes(t.destination.length());
                   for (std::size_t i = 0; i < n; ++i) w.u8(static_cast<std::uint8_t>(net >> (24 - 8 * i)));
                 },
                 [&](const OpaqueTlv& t) { w.raw(t.value); },
             },
             tlv);
}

[[noreturn]] void malformed(const std::string& what) { throw DecodeError(DecodeErrorKind::Malformed, what); }

Tlv decode_tlv(std::uint16_t type, std::span<const std::uint8_t> value) {
  ByteReader r{value};
  auto expect_size = [&](std::size_t n) {
    if (value.size() != n) malformed(tlv_name(type) + " has unexpected length");
  };
  switch (static_cast<TlvType>(type)) {
    case TlvType::Parameters: {
      expect_size(8);
      ParametersTlv t;
      for (auto& k : t.k) k = r.u8();
      t.k6 = r.u8();
      t.hold_time = r.u16();
      return t;
    }
    case TlvType::Authentication: {
      expect_size(kAuthMagicSize);
      std::string magic(value.begin(), value.end());
      magic.erase(magic.find_last_not_of('\0') + 1);
      return AuthenticationTlv{magic};
    }
    case TlvType::SoftwareVersion: {
      expect_size(4);
      return SoftwareVersionTlv{value[0], value[1], value[2], value[3]};
    }
    case TlvType::Stub:
      expect_size(2);
      return StubTlv{r.u16()};
    case TlvType::PeerTopologyIdList: {
      if (value.size() % 2 != 0) malformed("odd peer topology id list length");
      PeerTopologyIdListTlv t;
      t.topology_ids.clear();
      while (r.remaining() > 0) t.topology_ids.push_back(r.u16());
      return t;
    }
    case TlvType::InternalRoute: {
      if (value.size() < 22) malformed("internal route TLV too short");
      InternalRouteTlv t;
      t.next_hop = Ipv4Address{r.u32()};
      t.scaled_delay = r.u32();
      t.scaled_bandwidth = r.u32();
      t.mtu = r.u24();
      t.hop_count = r.u8();
      t.reliability = r.u8();
      t.load = r.u8();
      t.reserved = r.u16();
      int length = r.u8();
      if (length > 32) malformed("internal route prefix length > 32");
      if (r.remaining() != destination_bytes(length)) malformed("internal route destination size mismatch");
      std::uint32_t net = 0;
      for (int i = 0; r.remaining() > 0; ++i) net |= std::uint32_t{r.u8()} << (24 - 8 * i);
      Ipv4Prefix dest{Ipv4Address{net}, length};
      if (dest.network().value() != net) malformed("internal route destination has host bits set");
      t.destination = dest;
      return t;
    }
  }
  return OpaqueTlv{type, Bytes(value.begin(), value.end())};
}

}  // namespace

std::string_view to_string(Opcode op) {
  switch (op) {
    case Opcode::Update:
      return "UPDATE";
    case Opcode::Query:
      return "QUERY";
    case Opcode::Reply:
      return "REPLY";
    case Opcode::Hello:
      return "HELLO";
  }
  return "UNKNOWN";
}

std::string flags_to_string(std::uint32_t f) {
  std::string out;
  auto add = [&](std::string_view s) {
    if (!out.empty()) out += '|';
    out += s;
  };
  if (f & flags::kInit) add("INIT");
  if (f & flags::kConditionalReceive) add("CR");
  if (f & flags::kEndOfTable) add("EOT");
  std::uint32_t rest = f & ~(flags::kInit | flags::kConditionalReceive | flags::kEndOfTable);
  if (rest != 0) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%X", rest);
    add(buf);
  }
  return out.empty() ? "-" : out;
}

std::uint32_t flags_from_string(std::string_view text) {
  if (text == "-" || text.empty()) return 0;
  std::uint32_t f = 0;
  while (!text.empty()) {
    auto bar = text.find('|');
    auto tok = text.substr(0, bar);
    if (tok == "INIT") {
      f |= flags::kInit;
    } else if (tok == "CR") {
      f |= flags::kConditionalReceive;
    } else if (tok == "EOT") {
      f |= flags::kEndOfTable;
    } else if (tok.starts_with("0x")) {
      f |= static_cast<std::uint32_t>(std::stoul(std::string(tok.substr(2)), nullptr, 16));
    } else {
      throw std::invalid_argument("unknown flag '" + std::string(tok) + "'");
    }
    text = bar == std::string_view::npos ? std::string_view{} : text.substr(bar + 1);
  }
  return f;
}

std::uint16_t tlv_type(const Tlv& tlv) {
  return std::visit(Overloaded{
                        [](const ParametersTlv&) { return std::uint16_t(TlvType::Parameters); },
                        [](const AuthenticationTlv&) { return std::uint16_t(TlvType::Authentication); },
                        [](const SoftwareVersionTlv&) { return std::uint16_t(TlvType::SoftwareVersion); },
                        [](const StubTlv&) { return std::uint16_t(TlvType::Stub); },
                        [](const PeerTopologyIdListTlv&) { return std::uint16_t(TlvType::PeerTopologyIdList); },
                        [](const InternalRouteTlv&) { return std::uint16_t(TlvType::InternalRoute); },
                        [](const OpaqueTlv& t) { return t.type; },
                    },
                    tlv);
}

std::size_t tlv_length(const Tlv& tlv) { return kTlvHeaderSize + payload_size(tlv); }

std::string tlv_name(std::uint16_t type) {
  switch (static_cast<TlvType>(type)) {
    case TlvType::Parameters:
      return "PARAMETERS";
    case TlvType::Authentication:
      return "AUTHENTICATION";
    case TlvType::SoftwareVersion:
      return "SOFTWARE_VERSION";
    case TlvType::Stub:
      return "STUB";
    case TlvType::PeerTopologyIdList:
      return "PEER_TID_LIST";
    case TlvType::InternalRoute:
      return "INTERNAL_ROUTE";
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "TLV_0x%04X", type);
  return buf;
}

bool EigrpPacket::is_ack() const {
  if (header.opcode != Opcode::Hello || header.acknowledgment == 0) return false;
  for (const auto& t : tlvs)
    if (!std::holds_alternative<AuthenticationTlv>(t)) return false;
  return true;
}

std::vector<InternalRouteTlv> EigrpPacket::routes() const {
  std::vector<InternalRouteTlv> out;
  for (const auto& t : tlvs)
    if (auto* r = std::get_if<InternalRouteTlv>(&t)) out.push_back(*r);
  return out;
}

void validate(const EigrpPacket& pkt) {
  const auto& h = pkt.header;
  if (h.version != kVersion) throw InvariantViolation("EIGRP version must be 2");
  switch (h.opcode) {
    case Opcode::Update:
    case Opcode::Query:
    case Opcode::Reply:
    case Opcode::Hello:
      break;
    default:
      throw InvariantViolation("unsupported opcode");
  }
  if (h.opcode == Opcode::Hello && h.sequence != 0) throw InvariantViolation("Hello must carry sequence 0");
  if ((h.flags & flags::kInit) && h.opcode != Opcode::Update) throw InvariantViolation("INIT flag on non-Update");
  std::size_t total = kHeaderSize;
  for (const auto& tlv : pkt.tlvs) {
    if (auto* a = std::get_if<AuthenticationTlv>(&tlv); a && a->magic.size() > kAuthMagicSize)
      throw InvariantViolation("authentication magic longer than 16 bytes");
    if (auto* r = std::get_if<InternalRouteTlv>(&tlv); r && r->mtu > 0xFFFFFF)
      throw InvariantViolation("MTU exceeds 24 bits");
    if (auto* o = std::get_if<OpaqueTlv>(&tlv)) {
      for (std::uint16_t known : {0x0001, 0x0002, 0x0004, 0x0006, 0x0008, 0x0102})
        if (o->type == known) throw InvariantViolation("opaque TLV uses a decoded type code");
    }
    if (tlv_length(tlv) > 0xFFFF) throw InvariantViolation("TLV length exceeds 16 bits");
    total += tlv_length(tlv);
  }
  if (total > 0xFFFF) throw InvariantViolation("packet too large");
}

Bytes encode_packet(const EigrpPacket& pkt) {
  validate(pkt);
  Bytes out;
  ByteWriter w{out};
  const auto& h = pkt.header;
  w.u8(h.version);
  w.u8(static_cast<std::uint8_t>(h.opcode));
  w.u16(0);
  w.u32(h.flags);
  w.u32(h.sequence);
  w.u32(h.acknowledgment);
  w.u16(h.virtual_router_id);
  w.u16(h.autonomous_system);
  for (const auto& tlv : pkt.tlvs) {
    std::size_t before = w.size();
    encode_tlv(w, tlv);
    if (w.size() - before != tlv_length(tlv)) throw InvariantViolation("TLV length disagrees with payload");
  }
  w.patch_u16(2, internet_checksum(out));
  return out;
}

EigrpPacket decode_packet(std::span<const std::uint8_t> bytes, DecodeOptions options) {
  if (bytes.size() < kHeaderSize)
    throw DecodeError(DecodeErrorKind::Truncated,
                      "EIGRP packet of " + std::to_string(bytes.size()) + " bytes is shorter than the header");
  if (options.verify_checksum && !checksum_valid(bytes))
    throw DecodeError(DecodeErrorKind::BadChecksum, "EIGRP checksum does not verify");
  ByteReader r{bytes};
  EigrpPacket pkt;
  auto& h = pkt.header;
  h.version = r.u8();
  std::uint8_t op = r.u8();
  if (op != 1 && op != 3 && op != 4 && op != 5)
    throw DecodeError(DecodeErrorKind::UnknownOpcode, "unknown EIGRP opcode " + std::to_string(op));
  h.opcode = static_cast<Opcode>(op);
  h.checksum = r.u16();
  h.flags = r.u32();
  h.sequence = r.u32();
  h.acknowledgment = r.u32();
  h.virtual_router_id = r.u16();
  h.autonomous_system = r.u16();
  if (h.version != kVersion) malformed("unsupported EIGRP version " + std::to_string(h.version));
  while (r.remaining() > 0) {
    if (r.remaining() < kTlvHeaderSize) throw DecodeError(DecodeErrorKind::Truncated, "truncated TLV header");
    std::uint16_t type = r.u16();
    std::uint16_t length = r.u16();
    if (length < kTlvHeaderSize) malformed("TLV length below 4");
    if (r.remaining() < length - kTlvHeaderSize)
      throw DecodeError(DecodeErrorKind::Truncated, "TLV " + tlv_name(type) + " runs past the end of the packet");
    pkt.tlvs.push_back(decode_tlv(type, r.take(length - kTlvHeaderSize)));
  }
  return pkt;
}

EigrpPacket with_checksum(EigrpPacket pkt) {
  auto bytes = encode_packet(pkt);
  pkt.header.checksum = static_cast<std::uint16_t>((bytes[2] << 8) | bytes[3]);
  return pkt;
}

}  // namespace eigrpvv::codec
