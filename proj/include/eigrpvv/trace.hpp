#pragma once

// Protocol-level view of a capture: one summary per EIGRP message, plus a plain-text
// transcript form so hand-made reference traces and simulator output share a format.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eigrpvv/ipv4.hpp"
#include "eigrpvv/metric.hpp"
#include "eigrpvv/packet.hpp"
#include "eigrpvv/pcap.hpp"

namespace eigrpvv::vv {

struct RouteSummary {
  Ipv4Prefix destination;
  bool reachable = true;
  std::optional<eigrp::Metric> metric;  // absent when a transcript does not state it

  bool operator==(const RouteSummary&) const = default;
};

struct MessageSummary {
  std::size_t index = 0;  // 1-based position in its trace
  SimTime timestamp;
  Ipv4Address src;
  Ipv4Address dst;
  codec::Opcode opcode = codec::Opcode::Hello;
  std::uint32_t flags = 0;
  std::uint32_t sequence = 0;
  std::uint32_t acknowledgment = 0;
  std::optional<std::vector<std::uint16_t>> tlv_types;  // absent: not recorded
  std::vector<RouteSummary> routes;
  bool bad_checksum = false;

  bool is_ack() const;
  bool multicast() const { return dst.is_multicast(); }
  /// "HELLO", "ACK", "UPDATE", ...
  std::string kind() const;
  /// Matching key: kind, flags and the route set with reachability. "ACK" for acks.
  std::string key() const;
};

struct IngestResult {
  std::vector<MessageSummary> messages;
  std::size_t skipped_frames = 0;  // non-EIGRP frames or undecodable payloads
};

/// Checksum failures are kept and flagged; other decode failures are skipped.
IngestResult ingest_pcap(const std::vector<pcap::Record>& records);

MessageSummary summarize(const codec::EigrpPacket& pkt, Ipv4Address src, Ipv4Address dst, SimTime at);

/// Transcript text form:
///   # eigrp-trace v1
///   1 t=100.000000 src=10.0.12.1 dst=224.0.0.10 op=HELLO flags=- seq=0 ack=0 tlvs=PARAMETERS,SOFTWARE_VERSION
///   7 t=... op=UPDATE flags=EOT seq=3 ack=0 routes=1.0.0.0/24:281600,2.0.0.0/24:U
/// Route items are PREFIX (reachable, metric not stated), PREFIX:METRIC or PREFIX:U.
/// A '#' after the fields starts a comment.
std::string write_transcript(const std::vector<MessageSummary>& messages);

struct TranscriptParseError : std::runtime_error {
  TranscriptParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

std::vector<MessageSummary> parse_transcript(std::string_view text);

inline constexpr std::string_view kTranscriptHeader = "# eigrp-trace v1";

}  // namespace eigrpvv::vv
