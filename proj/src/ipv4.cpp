#include "eigrpvv/ipv4.hpp"

#include <charconv>

namespace eigrpvv {

namespace {

std::optional<int> parse_int(std::string_view s, int max) {
  if (s.empty() || s.size() > 3) return std::nullopt;
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 0 || v > max) return std::nullopt;
  return v;
}

std::optional<std::pair<Ipv4Address, int>> split_prefix(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto addr = Ipv4Address::parse(text.substr(0, slash));
  auto len = parse_int(text.substr(slash + 1), 32);
  if (!addr || !len) return std::nullopt;
  return std::pair{*addr, *len};
}

}  // namespace

std::optional<Ipv4Address> Ipv4Address::parse(std::string_view text) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    auto dot = text.find('.');
    if ((i < 3) != (dot != std::string_view::npos)) return std::nullopt;
    auto part = parse_int(text.substr(0, dot), 255);
    if (!part) return std::nullopt;
    value = (value << 8) | static_cast<std::uint32_t>(*part);
    text = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  }
  return Ipv4Address{value};
}

std::string Ipv4Address::to_string() const {
  return std::to_string(value_ >> 24) + '.' + std::to_string((value_ >> 16) & 0xFF) + '.' +
         std::to_string((value_ >> 8) & 0xFF) + '.' + std::to_string(value_ & 0xFF);
}

Ipv4Prefix::Ipv4Prefix(Ipv4Address address, int length) : length_(length) {
  if (length < 0 || length > 32) throw std::invalid_argument("prefix length out of range");
  network_ = Ipv4Address{address.value() & mask()};
}

std::optional<Ipv4Prefix> Ipv4Prefix::parse(std::string_view text, bool allow_host_bits) {
  auto parts = split_prefix(text);
  if (!parts) return std::nullopt;
  Ipv4Prefix p{parts->first, parts->second};
  if (!allow_host_bits && p.network() != parts->first) return std::nullopt;
  return p;
}

std::string Ipv4Prefix::to_string() const { return network_.to_string() + '/' + std::to_string(length_); }

std::optional<InterfaceAddress> InterfaceAddress::parse(std::string_view text) {
  auto parts = split_prefix(text);
  if (!parts) return std::nullopt;
  return InterfaceAddress{parts->first, parts->second};
}

std::string InterfaceAddress::to_string() const { return address.to_string() + '/' + std::to_string(length); }

}  // namespace eigrpvv
