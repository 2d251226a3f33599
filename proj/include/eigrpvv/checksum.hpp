#pragma once

#include <cstdint>
#include <span>

namespace eigrpvv {

/// Internet checksum: ones-complement of the ones-complement sum of big-endian 16-bit
/// words. An odd trailing byte is padded with zero.
std::uint16_t internet_checksum(std::span<const std::uint8_t> bytes);

/// True when `bytes` (checksum field included) sums to 0xFFFF, i.e. the checksum verifies.
inline bool checksum_valid(std::span<const std::uint8_t> bytes) { return internet_checksum(bytes) == 0; }

}  // namespace eigrpvv
