#pragma once

#include <string>
#include <vector>

#include "qlin/history.hpp"

namespace qlin {

/// One atomic queue operation: enq(value) or deq(value), value possibly NULL for deq.
struct QueueEvent {
  Uid uid;
  Method method;
  Value value;

  friend bool operator==(const QueueEvent&, const QueueEvent&) = default;

  static QueueEvent enq(Uid uid, std::uint64_t v) { return {uid, Method::enq, Value{v}}; }
  static QueueEvent deq(Uid uid, Value v) { return {uid, Method::deq, v}; }
  static QueueEvent deq_null(Uid uid) { return {uid, Method::deq, Value::null()}; }
};

/// A duplicate-free (by uid) sequence of queue events.
class Behavior {
 public:
  Behavior() = default;
  explicit Behavior(std::vector<QueueEvent> events);  // throws HistoryError on duplicate uid

  const std::vector<QueueEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const QueueEvent& operator[](std::size_t i) const { return events_[i]; }

  /// Position of uid in the sequence, or npos.
  std::size_t position(Uid uid) const;

  /// The complete sequential history with adjacent inv/res pairs.
  History to_history() const;

  friend bool operator==(const Behavior&, const Behavior&) = default;

 private:
  std::vector<QueueEvent> events_;
};

/// Compact display form, e.g. "enq#1(5) deq#2(5) deq#3(null)".
std::string to_string(const Behavior& b);

/// Maps a complete sequential history to its behavior. Throws HistoryError otherwise.
Behavior behavior_of(const History& c);

}  // namespace qlin
