#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "eigrpvv/bytes.hpp"
#include "eigrpvv/sim_time.hpp"

namespace eigrpvv::pcap {

inline constexpr std::uint32_t kMagicMicros = 0xA1B2C3D4;
inline constexpr std::uint32_t kMagicNanos = 0xA1B23C4D;
inline constexpr std::uint32_t kLinktypeEthernet = 1;
inline constexpr std::uint32_t kSnapLen = 65535;
inline constexpr std::size_t kGlobalHeaderSize = 24;
inline constexpr std::size_t kRecordHeaderSize = 16;

struct Record {
  SimTime timestamp;
  Bytes frame;
};

enum class ErrorKind { NotPcap, UnsupportedLinktype, Truncated, IoFailure };

struct Error : std::runtime_error {
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  ErrorKind kind;
};

/// Classic little-endian microsecond PCAP, Ethernet linktype.
Bytes write(const std::vector<Record>& records);

/// Accepts either byte order and micro/nanosecond variants. Timestamps are truncated
/// to the file's resolution.
std::vector<Record> read(std::span<const std::uint8_t> bytes);

Bytes read_file(const std::filesystem::path& path);
/// Throws Error{IoFailure}.
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace eigrpvv::pcap
