#include "qlin/behavior.hpp"

#include <algorithm>

namespace qlin {

Behavior::Behavior(std::vector<QueueEvent> events) : events_(std::move(events)) {
  std::vector<Uid> uids;
  uids.reserve(events_.size());
  for (const auto& e : events_) {
    if (e.method == Method::enq && e.value.is_null())
      throw HistoryError("behavior: null cannot be enqueued");
    uids.push_back(e.uid);
  }
  std::sort(uids.begin(), uids.end());
  if (std::adjacent_find(uids.begin(), uids.end()) != uids.end())
    throw HistoryError("behavior: duplicate uid");
}

std::size_t Behavior::position(Uid uid) const {
  for (std::size_t i = 0; i < events_.size(); ++i)
    if (events_[i].uid == uid) return i;
  return npos;
}

History Behavior::to_history() const {
  std::vector<Action> actions;
  actions.reserve(events_.size() * 2);
  for (const auto& e : events_) {
    if (e.method == Method::enq) {
      actions.push_back(Action::enq_inv(e.uid, e.value.get()));
      actions.push_back(Action::enq_res(e.uid));
    } else {
      actions.push_back(Action::deq_inv(e.uid));
      actions.push_back(Action::deq_res(e.uid, e.value));
    }
  }
  return History(std::move(actions));
}

std::string to_string(const Behavior& b) {
  std::string out;
  for (const auto& e : b.events()) {
    if (!out.empty()) out += ' ';
    out += to_string(e.method);
    out += '#';
    out += std::to_string(e.uid);
    out += '(';
    out += to_string(e.value);
    out += ')';
  }
  return out;
}

}  // namespace qlin
