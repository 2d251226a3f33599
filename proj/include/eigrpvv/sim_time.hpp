#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace eigrpvv {

/// Simulated time with picosecond resolution. Integral so that event ordering is exact.
class SimTime {
 public:
  static constexpr std::int64_t kPerSecond = 1'000'000'000'000;

  constexpr SimTime() = default;
  static constexpr SimTime from_ps(std::int64_t ps) { return SimTime{ps}; }
  static constexpr SimTime from_us(std::int64_t us) { return SimTime{us * 1'000'000}; }
  static constexpr SimTime from_ms(std::int64_t ms) { return SimTime{ms * 1'000'000'000}; }
  static constexpr SimTime from_seconds(std::int64_t s) { return SimTime{s * kPerSecond}; }
  /// Rounds to the nearest picosecond.
  static SimTime from_seconds_double(double s) {
    return SimTime{static_cast<std::int64_t>(s * static_cast<double>(kPerSecond) + (s >= 0 ? 0.5 : -0.5))};
  }

  constexpr std::int64_t ps() const { return ps_; }
  constexpr std::int64_t whole_seconds() const { return ps_ / kPerSecond; }
  constexpr std::int64_t micros_of_second() const { return (ps_ % kPerSecond) / 1'000'000; }
  constexpr double seconds() const { return static_cast<double>(ps_) / static_cast<double>(kPerSecond); }

  /// Fixed six-decimal rendering, e.g. "100.000064".
  std::string to_string() const {
    std::string frac = std::to_string(micros_of_second());
    return std::to_string(whole_seconds()) + '.' + std::string(6 - frac.size(), '0') + frac;
  }

  constexpr SimTime operator+(SimTime o) const { return SimTime{ps_ + o.ps_}; }
  constexpr SimTime operator-(SimTime o) const { return SimTime{ps_ - o.ps_}; }
  constexpr SimTime& operator+=(SimTime o) {
    ps_ += o.ps_;
    return *this;
  }
  constexpr auto operator<=>(const SimTime&) const = default;

 private:
  constexpr explicit SimTime(std::int64_t ps) : ps_(ps) {}
  std::int64_t ps_ = 0;
};

}  // namespace eigrpvv
