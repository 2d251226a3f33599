#include "eigrpvv/trace.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "eigrpvv/checksum.hpp"
#include "eigrpvv/frame.hpp"

namespace eigrpvv::vv {

bool MessageSummary::is_ack() const {
  if (opcode != codec::Opcode::Hello || acknowledgment == 0) return false;
  if (!tlv_types) return true;
  return std::all_of(tlv_types->begin(), tlv_types->end(),
                     [](std::uint16_t t) { return t == std::uint16_t(codec::TlvType::Authentication); });
}

std::string MessageSummary::kind() const { return is_ack() ? "ACK" : std::string(codec::to_string(opcode)); }

std::string MessageSummary::key() const {
  if (is_ack()) return "ACK";
  std::vector<RouteSummary> sorted = routes;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.destination < b.destination; });
  std::string k = kind() + "|" + codec::flags_to_string(flags) + "|";
  for (std::size_t i = 0; i < sorted.size(); ++i)
    k += (i ? "," : "") + sorted[i].destination.to_string() + (sorted[i].reachable ? "" : ":U");
  return k;
}

MessageSummary summarize(const codec::EigrpPacket& pkt, Ipv4Address src, Ipv4Address dst, SimTime at) {
  MessageSummary m;
  m.timestamp = at;
  m.src = src;
  m.dst = dst;
  m.opcode = pkt.header.opcode;
  m.flags = pkt.header.flags;
  m.sequence = pkt.header.sequence;
  m.acknowledgment = pkt.header.acknowledgment;
  m.tlv_types.emplace();
  for (const auto& t : pkt.tlvs) m.tlv_types->push_back(codec::tlv_type(t));
  eigrp::KValues k;  // default K values; summaries only report classic metrics
  for (const auto& r : pkt.routes()) {
    RouteSummary s;
    s.destination = r.destination;
    s.reachable = !r.unreachable();
    if (s.reachable) s.metric = eigrp::compute_metric(eigrp::from_wire(r), k);
    m.routes.push_back(s);
  }
  return m;
}

IngestResult ingest_pcap(const std::vector<pcap::Record>& records) {
  IngestResult out;
  for (const auto& rec : records) {
    auto frame = parse_eigrp_frame(rec.frame);
    if (!frame) {
      ++out.skipped_frames;
      continue;
    }
    try {
      auto pkt = codec::decode_packet(frame->eigrp, codec::DecodeOptions{false});
      MessageSummary m = summarize(pkt, frame->headers.src, frame->headers.dst, rec.timestamp);
      m.bad_checksum = !checksum_valid(frame->eigrp);
      m.index = out.messages.size() + 1;
      out.messages.push_back(std::move(m));
    } catch (const codec::DecodeError&) {
      ++out.skipped_frames;
    }
  }
  return out;
}

namespace {

std::map<std::string, std::uint16_t> tlv_names() {
  std::map<std::string, std::uint16_t> names;
  for (auto t : {codec::TlvType::Parameters, codec::TlvType::Authentication, codec::TlvType::SoftwareVersion,
                 codec::TlvType::Stub, codec::TlvType::PeerTopologyIdList, codec::TlvType::InternalRoute})
    names[codec::tlv_name(std::uint16_t(t))] = std::uint16_t(t);
  return names;
}

std::optional<codec::Opcode> opcode_from(std::string_view s) {
  for (auto op : {codec::Opcode::Update, codec::Opcode::Query, codec::Opcode::Reply, codec::Opcode::Hello})
    if (codec::to_string(op) == s) return op;
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto p = s.find(sep, start);
    out.push_back(s.substr(start, p - start));
    if (p == std::string::npos) return out;
    start = p + 1;
  }
}

}  // namespace

std::string write_transcript(const std::vector<MessageSummary>& messages) {
  std::ostringstream out;
  out << kTranscriptHeader << '\n';
  for (const auto& m : messages) {
    out << m.index << " t=" << m.timestamp.to_string() << " src=" << m.src.to_string()
        << " dst=" << m.dst.to_string() << " op=" << codec::to_string(m.opcode)
        << " flags=" << codec::flags_to_string(m.flags) << " seq=" << m.sequence << " ack=" << m.acknowledgment;
    if (m.tlv_types) {
      out << " tlvs=";
      if (m.tlv_types->empty()) out << '-';
      for (std::size_t i = 0; i < m.tlv_types->size(); ++i)
        out << (i ? "," : "") << codec::tlv_name((*m.tlv_types)[i]);
    }
    if (!m.routes.empty()) {
      out << " routes=";
      for (std::size_t i = 0; i < m.routes.size(); ++i) {
        const auto& r = m.routes[i];
        out << (i ? "," : "") << r.destination.to_string();
        if (!r.reachable) {
          out << ":U";
        } else if (r.metric) {
          out << ':' << *r.metric;
        }
      }
    }
    if (m.bad_checksum) out << " checksum=bad";
    out << '\n';
  }
  return out.str();
}

std::vector<MessageSummary> parse_transcript(std::string_view text) {
  static const auto kTlvNames = tlv_names();
  std::vector<MessageSummary> out;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  bool header = false;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = raw.substr(0, raw.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      if (line == kTranscriptHeader) header = true;
      continue;
    }
    if (!header) throw TranscriptParseError("missing '" + std::string(kTranscriptHeader) + "' header", lineno);
    if (auto hash = line.find(" #"); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    MessageSummary m;
    std::string tok;
    fields >> tok;
    try {
      m.index = std::stoul(tok);
    } catch (const std::logic_error&) {
      throw TranscriptParseError("expected message index, got '" + tok + "'", lineno);
    }
    bool have_op = false;
    while (fields >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw TranscriptParseError("expected key=value, got '" + tok + "'", lineno);
      std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      try {
        if (key == "t") {
          m.timestamp = SimTime::from_seconds_double(std::stod(value));
        } else if (key == "src" || key == "dst") {
          auto a = Ipv4Address::parse(value);
          if (!a) throw TranscriptParseError("bad address '" + value + "'", lineno);
          (key == "src" ? m.src : m.dst) = *a;
        } else if (key == "op") {
          auto op = opcode_from(value);
          if (!op) throw TranscriptParseError("unknown opcode '" + value + "'", lineno);
          m.opcode = *op;
          have_op = true;
        } else if (key == "flags") {
          m.flags = codec::flags_from_string(value);
        } else if (key == "seq") {
          m.sequence = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "ack") {
          m.acknowledgment = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "tlvs") {
          m.tlv_types.emplace();
          if (value != "-") {
            for (const auto& name : split(value, ',')) {
              auto it = kTlvNames.find(name);
              if (it != kTlvNames.end()) {
                m.tlv_types->push_back(it->second);
              } else if (name.starts_with("TLV_0x")) {
                m.tlv_types->push_back(static_cast<std::uint16_t>(std::stoul(name.substr(6), nullptr, 16)));
              } else {
                throw TranscriptParseError("unknown TLV '" + name + "'", lineno);
              }
            }
          }
        } else if (key == "routes") {
          for (const auto& item : split(value, ',')) {
            auto colon = item.find(':');
            RouteSummary r;
            auto p = Ipv4Prefix::parse(item.substr(0, colon));
            if (!p) throw TranscriptParseError("bad route prefix '" + item + "'", lineno);
            r.destination = *p;
            if (colon != std::string::npos) {
              std::string v = item.substr(colon + 1);
              if (v == "U") {
                r.reachable = false;
              } else {
                r.metric = static_cast<eigrp::Metric>(std::stoul(v));
              }
            }
            m.routes.push_back(r);
          }
        } else if (key == "checksum") {
          m.bad_checksum = value == "bad";
        } else {
          throw TranscriptParseError("unknown field '" + key + "'", lineno);
        }
      } catch (const std::logic_error&) {
        throw TranscriptParseError("bad value for '" + key + "': '" + value + "'", lineno);
      }
    }
    if (!have_op) throw TranscriptParseError("message without op=", lineno);
    out.push_back(std::move(m));
  }
  if (!header) throw TranscriptParseError("missing '" + std::string(kTranscriptHeader) + "' header", 1);
  return out;
}

}  // namespace eigrpvv::vv
