#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "eigrpvv/sim_time.hpp"

namespace eigrpvv::sim {

/// Lower values fire first among events at the same instant.
enum class Priority : int {
  Snapshot = 0,
  Scenario = 1,
  Normal = 2,
};

struct EventHandle {
  std::uint64_t id = 0;
  bool valid() const { return id != 0; }
};

struct PastTime : std::logic_error {
  using std::logic_error::logic_error;
};

/// Deterministic event queue ordered by (time, priority, insertion sequence).
class EventQueue {
 public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }

  /// Throws PastTime when `at` precedes the current time.
  EventHandle schedule(SimTime at, Action action, Priority priority = Priority::Normal);
  EventHandle schedule_in(SimTime delay, Action action, Priority priority = Priority::Normal) {
    return schedule(now_ + delay, std::move(action), priority);
  }
  /// No-op for handles that already fired or were cancelled.
  void cancel(EventHandle handle);

  /// Fires every event with time <= until, then leaves the clock at `until`.
  /// Returns the number of events fired.
  std::size_t run_until(SimTime until);
  bool empty() const { return heap_.size() == cancelled_.size(); }
  std::size_t pending() const { return heap_.size() - cancelled_.size(); }

 private:
  struct Entry {
    SimTime time;
    int priority;
    std::uint64_t seq;
    // mutable so the action can be moved out of the heap top before pop
    mutable Action action;

    bool operator>(const Entry& o) const {
      if (time != o.time) return time > o.time;
      if (priority != o.priority) return priority > o.priority;
      return seq > o.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::unordered_set<std::uint64_t> cancelled_;
  std::unordered_set<std::uint64_t> live_;
  SimTime now_{};
  std::uint64_t next_seq_ = 1;
};

}  // namespace eigrpvv::sim
