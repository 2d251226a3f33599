#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eigrpvv {

class Ipv4Address {
 public:
  constexpr Ipv4Address() = default;
  constexpr explicit Ipv4Address(std::uint32_t host_order) : value_(host_order) {}
  constexpr Ipv4Address(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
      : value_((std::uint32_t{a} << 24) | (std::uint32_t{b} << 16) | (std::uint32_t{c} << 8) | d) {}

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_multicast() const { return (value_ >> 28) == 0xE; }

  static std::optional<Ipv4Address> parse(std::string_view text);
  std::string to_string() const;

  constexpr auto operator<=>(const Ipv4Address&) const = default;

 private:
  std::uint32_t value_ = 0;
};

/// EIGRP routers multicast group.
inline constexpr Ipv4Address kAllEigrpRouters{224, 0, 0, 10};

class Ipv4Prefix {
 public:
  constexpr Ipv4Prefix() = default;
  /// Host bits of `address` are cleared.
  Ipv4Prefix(Ipv4Address address, int length);

  constexpr Ipv4Address network() const { return network_; }
  constexpr int length() const { return length_; }
  std::uint32_t mask() const { return length_ == 0 ? 0 : ~std::uint32_t{0} << (32 - length_); }
  bool contains(Ipv4Address a) const { return (a.value() & mask()) == network_.value(); }

  /// Accepts "a.b.c.d/len"; host bits must be zero unless `allow_host_bits`.
  static std::optional<Ipv4Prefix> parse(std::string_view text, bool allow_host_bits = false);
  std::string to_string() const;

  constexpr auto operator<=>(const Ipv4Prefix&) const = default;

 private:
  Ipv4Address network_{};
  int length_ = 0;
};

/// Interface address with its subnet length, e.g. 10.0.12.1/30.
struct InterfaceAddress {
  Ipv4Address address;
  int length = 0;

  Ipv4Prefix subnet() const { return Ipv4Prefix{address, length}; }
  static std::optional<InterfaceAddress> parse(std::string_view text);
  std::string to_string() const;
  auto operator<=>(const InterfaceAddress&) const = default;
};

}  // namespace eigrpvv
