#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bephap {

/// One state transition: "t=<ms> actor=<id> event=<name> outcome=<result>".
struct Event {
  std::uint64_t time_ms = 0;
  std::string actor;
  std::string event;
  std::string outcome;

  bool operator==(const Event&) const = default;
};

std::string format_event(const Event& e);

class EventLog {
 public:
  void record(std::uint64_t time_ms, std::string_view actor, std::string_view event,
              std::string_view outcome);

  const std::vector<Event>& events() const { return events_; }
  std::size_t count(std::string_view event, std::string_view outcome) const;
  std::size_t count_outcome(std::string_view outcome) const;
  std::string to_text() const;
  void clear() { events_.clear(); }

 private:
  std::vector<Event> events_;
};

}  // namespace bephap
