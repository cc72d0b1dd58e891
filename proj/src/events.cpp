#include "bephap/events.hpp"

namespace bephap {

std::string format_event(const Event& e) {
  return "t=" + std::to_string(e.time_ms) + " actor=" + e.actor + " event=" + e.event +
         " outcome=" + e.outcome;
}

void EventLog::record(std::uint64_t time_ms, std::string_view actor, std::string_view event,
                      std::string_view outcome) {
  events_.push_back(Event{time_ms, std::string(actor), std::string(event), std::string(outcome)});
}

std::size_t EventLog::count(std::string_view event, std::string_view outcome) const {
  std::size_t n = 0;
  for (const auto& e : events_) n += e.event == event && e.outcome == outcome;
  return n;
}

std::size_t EventLog::count_outcome(std::string_view outcome) const {
  std::size_t n = 0;
  for (const auto& e : events_) n += e.outcome == outcome;
  return n;
}

std::string EventLog::to_text() const {
  std::string out;
  for (const auto& e : events_) {
    out += format_event(e);
    out += '\n';
  }
  return out;
}

}  // namespace bephap
