#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlin {

using Uid = std::uint64_t;

/// A queue datum: a non-negative integer or the distinguished NULL result.
class Value {
 public:
  constexpr Value() = default;
  constexpr explicit Value(std::uint64_t v) : v_(v) {}

  static constexpr Value null() { return Value{}; }

  constexpr bool is_null() const { return !v_.has_value(); }
  /// Precondition: !is_null().
  constexpr std::uint64_t get() const { return *v_; }

  friend constexpr bool operator==(const Value&, const Value&) = default;
  // NULL orders before every integer.
  friend constexpr std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) return !a.is_null() <=> !b.is_null();
    return a.get() <=> b.get();
  }

 private:
  std::optional<std::uint64_t> v_;
};

std::string to_string(Value v);

enum class Method : std::uint8_t { enq, deq };
enum class ActionKind : std::uint8_t { invocation, response };

std::string_view to_string(Method m);

struct Action {
  ActionKind kind;
  Uid uid;
  Method method;
  // enq invocation: argument; deq response: result; otherwise empty.
  std::optional<Value> payload;

  friend bool operator==(const Action&, const Action&) = default;

  static Action enq_inv(Uid uid, std::uint64_t arg) {
    return {ActionKind::invocation, uid, Method::enq, Value{arg}};
  }
  static Action enq_res(Uid uid) { return {ActionKind::response, uid, Method::enq, std::nullopt}; }
  static Action deq_inv(Uid uid) { return {ActionKind::invocation, uid, Method::deq, std::nullopt}; }
  static Action deq_res(Uid uid, Value result) {
    return {ActionKind::response, uid, Method::deq, result};
  }
};

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Event {
  Uid uid;
  Method method;
  // enq argument, or deq result; empty for a pending deq.
  std::optional<Value> value;
  std::size_t inv_pos;
  std::size_t res_pos = npos;  // npos while pending

  bool completed() const { return res_pos != npos; }
  bool pending() const { return res_pos == npos; }
};

/// Thrown when an action sequence is not a well-formed history.
class HistoryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownUidError : public std::out_of_range {
 public:
  explicit UnknownUidError(Uid uid);
  Uid uid() const { return uid_; }

 private:
  Uid uid_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string reason);
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

/// A well-formed sequence of invocation and response actions.
///
/// Events are indexed in invocation order; `events()[i]` is the i-th invoked
/// event. Construction validates well-formedness and throws HistoryError.
class History {
 public:
  History() = default;
  explicit History(std::vector<Action> actions);

  const std::vector<Action>& actions() const { return actions_; }
  const std::vector<Event>& events() const { return events_; }

  bool empty() const { return actions_.empty(); }
  bool is_complete() const { return pending_ == 0; }
  std::size_t pending_count() const { return pending_; }

  std::optional<std::size_t> find(Uid uid) const;
  std::size_t index_of(Uid uid) const;  // throws UnknownUidError
  const Event& event(Uid uid) const { return events_[index_of(uid)]; }

  /// Response of events()[a] occurs strictly before invocation of events()[b].
  bool precedes_index(std::size_t a, std::size_t b) const {
    return events_[a].res_pos < events_[b].inv_pos;
  }

  friend bool operator==(const History& a, const History& b) { return a.actions_ == b.actions_; }

 private:
  std::vector<Action> actions_;
  std::vector<Event> events_;
  std::size_t pending_ = 0;
};

History parse_history(std::string_view text);
std::string serialize(const History& c);
std::string serialize(const Action& a);

bool precedes(const History& c, Uid a, Uid b);
std::set<Uid> before_set(const History& c, Uid a);
std::set<Uid> after_set(const History& c, Uid a);

History remove_pending(const History& c);

/// Enqueued values of c plus NULL: the result domain used to complete pending
/// dequeues.
std::vector<Value> completion_values(const History& c);

/// Calls `visit` on every completion of c; stops early when `visit` returns false.
/// Pending events are dropped or completed; pending dequeues take each of
/// `candidate_values`. The first completion visited drops every pending event.
void for_each_completion(const History& c, std::span<const Value> candidate_values,
                         const std::function<bool(const History&)>& visit);
std::vector<History> enumerate_completions(const History& c,
                                           std::span<const Value> candidate_values);

bool is_sequential(const History& c);

/// Enqueue arguments pairwise distinct.
bool is_differentiated(const History& c);

/// Restriction of c to the events whose indices are flagged in `keep`.
History restrict_to(const History& c, const std::vector<bool>& keep);

}  // namespace qlin
