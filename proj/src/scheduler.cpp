#include "eigrpvv/scheduler.hpp"

namespace eigrpvv::sim {

EventHandle EventQueue::schedule(SimTime at, Action action, Priority priority) {
  if (at < now_)
    throw PastTime("event scheduled at " + at.to_string() + " before current time " + now_.to_string());
  std::uint64_t seq = next_seq_++;
  heap_.push(Entry{at, static_cast<int>(priority), seq, std::move(action)});
  live_.insert(seq);
  return EventHandle{seq};
}

void EventQueue::cancel(EventHandle handle) {
  if (live_.erase(handle.id) != 0) cancelled_.insert(handle.id);
}

std::size_t EventQueue::run_until(SimTime until) {
  std::size_t fired = 0;
  while (!heap_.empty() && heap_.top().time <= until) {
    const Entry& top = heap_.top();
    std::uint64_t seq = top.seq;
    now_ = top.time;
    Action action = std::move(top.action);
    heap_.pop();
    if (cancelled_.erase(seq) != 0) continue;
    live_.erase(seq);
    action();
    ++fired;
  }
  if (until > now_) now_ = until;
  return fired;
}

}  // namespace eigrpvv::sim
