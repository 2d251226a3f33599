#include "eigrpvv/pcap.hpp"

#include <fstream>
#include <iterator>

namespace eigrpvv::pcap {

namespace {

class LeReader {
 public:
  LeReader(std::span<const std::uint8_t> in, bool swapped) : in_(in), swapped_(swapped) {}

  std::uint32_t u32(std::size_t at) const {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      int shift = swapped_ ? 8 * (3 - i) : 8 * i;
      v |= std::uint32_t{in_[at + i]} << shift;
    }
    return v;
  }
  std::uint16_t u16(std::size_t at) const {
    return swapped_ ? static_cast<std::uint16_t>((in_[at] << 8) | in_[at + 1])
                    : static_cast<std::uint16_t>(in_[at] | (in_[at + 1] << 8));
  }

 private:
  std::span<const std::uint8_t> in_;
  bool swapped_;
};

}  // namespace

Bytes write(const std::vector<Record>& records) {
  Bytes out;
  put_le32(out, kMagicMicros);
  put_le16(out, 2);
  put_le16(out, 4);
  put_le32(out, 0);  // thiszone
  put_le32(out, 0);  // sigfigs
  put_le32(out, kSnapLen);
  put_le32(out, kLinktypeEthernet);
  for (const auto& rec : records) {
    put_le32(out, static_cast<std::uint32_t>(rec.timestamp.whole_seconds()));
    put_le32(out, static_cast<std::uint32_t>(rec.timestamp.micros_of_second()));
    put_le32(out, static_cast<std::uint32_t>(rec.frame.size()));
    put_le32(out, static_cast<std::uint32_t>(rec.frame.size()));
    out.insert(out.end(), rec.frame.begin(), rec.frame.end());
  }
  return out;
}

std::vector<Record> read(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kGlobalHeaderSize) throw Error(ErrorKind::NotPcap, "file shorter than a PCAP global header");
  LeReader native{bytes, false};
  bool swapped = false;
  bool nanos = false;
  switch (native.u32(0)) {
    case kMagicMicros:
      break;
    case kMagicNanos:
      nanos = true;
      break;
    case 0xD4C3B2A1:
      swapped = true;
      break;
    case 0x4D3CB2A1:
      swapped = nanos = true;
      break;
    default:
      throw Error(ErrorKind::NotPcap, "bad PCAP magic number");
  }
  LeReader r{bytes, swapped};
  std::uint32_t linktype = r.u32(20);
  if (linktype != kLinktypeEthernet)
    throw Error(ErrorKind::UnsupportedLinktype, "unsupported PCAP linktype " + std::to_string(linktype));
  std::vector<Record> out;
  std::size_t pos = kGlobalHeaderSize;
  while (pos < bytes.size()) {
    std::size_t index = out.size() + 1;
    if (bytes.size() - pos < kRecordHeaderSize)
      throw Error(ErrorKind::Truncated, "record " + std::to_string(index) + " has a truncated header");
    std::uint32_t sec = r.u32(pos);
    std::uint32_t frac = r.u32(pos + 4);
    std::uint32_t incl = r.u32(pos + 8);
    pos += kRecordHeaderSize;
    if (bytes.size() - pos < incl)
      throw Error(ErrorKind::Truncated, "record " + std::to_string(index) + " is truncated");
    SimTime ts = SimTime::from_seconds(sec) + (nanos ? SimTime::from_ps(std::int64_t{frac} * 1000)
                                                     : SimTime::from_us(frac));
    out.push_back(Record{ts, Bytes(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(pos + incl))});
    pos += incl;
  }
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::IoFailure, "write failed for " + path.string());
}

}  // namespace eigrpvv::pcap
