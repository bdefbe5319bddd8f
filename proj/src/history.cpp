#include "qlin/history.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "qlin/behavior.hpp"

namespace qlin {

std::string to_string(Value v) { return v.is_null() ? "null" : std::to_string(v.get()); }

std::string_view to_string(Method m) { return m == Method::enq ? "enq" : "deq"; }

UnknownUidError::UnknownUidError(Uid uid)
    : std::out_of_range("unknown uid " + std::to_string(uid)), uid_(uid) {}

ParseError::ParseError(std::size_t line, std::string reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason),
      line_(line),
      reason_(std::move(reason)) {}

namespace {

struct Invalid {
  std::size_t action_index;
  std::string reason;
};

// Small histories dominate; a linear probe beats hashing there.
class UidIndex {
 public:
  std::optional<std::size_t> lookup(Uid uid) const {
    if (!map_.empty()) {
      auto it = map_.find(uid);
      if (it == map_.end()) return std::nullopt;
      return it->second;
    }
    for (const auto& [u, i] : small_)
      if (u == uid) return i;
    return std::nullopt;
  }

  void insert(Uid uid, std::size_t idx) {
    if (map_.empty() && small_.size() < 32) {
      small_.emplace_back(uid, idx);
      return;
    }
    if (map_.empty())
      for (const auto& [u, i] : small_) map_.emplace(u, i);
    map_.emplace(uid, idx);
  }

 private:
  std::vector<std::pair<Uid, std::size_t>> small_;
  std::unordered_map<Uid, std::size_t> map_;
};

std::optional<Invalid> build_events(const std::vector<Action>& actions, std::vector<Event>& events,
                                    std::size_t& pending) {
  UidIndex index;
  events.clear();
  pending = 0;
  for (std::size_t pos = 0; pos < actions.size(); ++pos) {
    const Action& a = actions[pos];
    auto found = index.lookup(a.uid);
    if (a.kind == ActionKind::invocation) {
      if (found) return Invalid{pos, "duplicate invocation of uid " + std::to_string(a.uid)};
      if (a.method == Method::enq && (!a.payload || a.payload->is_null()))
        return Invalid{pos, "enq invocation needs an integer argument"};
      if (a.method == Method::deq && a.payload)
        return Invalid{pos, "deq invocation takes no argument"};
      index.insert(a.uid, events.size());
      Event e{a.uid, a.method, std::nullopt, pos};
      if (a.method == Method::enq) e.value = a.payload;
      events.push_back(e);
      ++pending;
      continue;
    }
    if (!found) return Invalid{pos, "response before invocation of uid " + std::to_string(a.uid)};
    Event& e = events[*found];
    if (e.completed()) return Invalid{pos, "duplicate response of uid " + std::to_string(a.uid)};
    if (e.method != a.method)
      return Invalid{pos, "method mismatch for uid " + std::to_string(a.uid)};
    if (a.method == Method::enq && a.payload) return Invalid{pos, "enq response carries no value"};
    if (a.method == Method::deq) {
      if (!a.payload) return Invalid{pos, "deq response needs a result"};
      e.value = a.payload;
    }
    e.res_pos = pos;
    --pending;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty() || s.front() == '+' || s.front() == '-') return std::nullopt;
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

Action parse_line(std::string_view line, std::size_t lineno) {
  auto tok = split_ws(line);
  auto fail = [&](std::string reason) -> Action { throw ParseError(lineno, std::move(reason)); };
  if (tok.size() < 3) return fail("expected '<inv|res> <uid> <enq|deq> [value]'");
  ActionKind kind;
  if (tok[0] == "inv")
    kind = ActionKind::invocation;
  else if (tok[0] == "res")
    kind = ActionKind::response;
  else
    return fail("unknown action kind '" + std::string(tok[0]) + "'");
  auto uid = parse_uint(tok[1]);
  if (!uid) return fail("bad uid '" + std::string(tok[1]) + "'");
  Method method;
  if (tok[2] == "enq")
    method = Method::enq;
  else if (tok[2] == "deq")
    method = Method::deq;
  else
    return fail("unknown method '" + std::string(tok[2]) + "'");

  const bool wants_value = (kind == ActionKind::invocation) == (method == Method::enq);
  if (!wants_value) {
    if (tok.size() != 3) return fail("unexpected value on " + std::string(tok[0]) + " " +
                                     std::string(tok[2]));
    return {kind, *uid, method, std::nullopt};
  }
  if (tok.size() != 4) return fail("expected exactly one value");
  if (tok[3] == "null") {
    if (method == Method::enq) return fail("null cannot be enqueued");
    return {kind, *uid, method, Value::null()};
  }
  auto v = parse_uint(tok[3]);
  if (!v) return fail("bad value '" + std::string(tok[3]) + "'");
  return {kind, *uid, method, Value{*v}};
}

}  // namespace

History::History(std::vector<Action> actions) : actions_(std::move(actions)) {
  if (auto bad = build_events(actions_, events_, pending_))
    throw HistoryError("action " + std::to_string(bad->action_index) + ": " + bad->reason);
}

std::optional<std::size_t> History::find(Uid uid) const {
  for (std::size_t i = 0; i < events_.size(); ++i)
    if (events_[i].uid == uid) return i;
  return std::nullopt;
}

std::size_t History::index_of(Uid uid) const {
  if (auto i = find(uid)) return *i;
  throw UnknownUidError(uid);
}

History parse_history(std::string_view text) {
  std::vector<Action> actions;
  std::vector<std::size_t> lines;
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    actions.push_back(parse_line(line, lineno));
    lines.push_back(lineno);
  }
  std::vector<Event> events;
  std::size_t pending = 0;
  if (auto bad = build_events(actions, events, pending))
    throw ParseError(lines[bad->action_index], bad->reason);
  return History(std::move(actions));
}

std::string serialize(const Action& a) {
  std::string out = a.kind == ActionKind::invocation ? "inv " : "res ";
  out += std::to_string(a.uid);
  out += ' ';
  out += to_string(a.method);
  if (a.payload) {
    out += ' ';
    out += to_string(*a.payload);
  }
  return out;
}

std::string serialize(const History& c) {
  std::string out;
  for (const Action& a : c.actions()) {
    out += serialize(a);
    out += '\n';
  }
  return out;
}

bool precedes(const History& c, Uid a, Uid b) {
  return c.precedes_index(c.index_of(a), c.index_of(b));
}

std::set<Uid> before_set(const History& c, Uid a) {
  std::size_t ia = c.index_of(a);
  std::set<Uid> out;
  for (std::size_t i = 0; i < c.events().size(); ++i)
    if (c.precedes_index(i, ia)) out.insert(c.events()[i].uid);
  return out;
}

std::set<Uid> after_set(const History& c, Uid a) {
  std::size_t ia = c.index_of(a);
  std::set<Uid> out;
  for (std::size_t i = 0; i < c.events().size(); ++i)
    if (c.precedes_index(ia, i)) out.insert(c.events()[i].uid);
  return out;
}

namespace {

// owner[p] is the index of the event that action p belongs to.
std::vector<std::size_t> action_owners(const History& c) {
  std::vector<std::size_t> owner(c.actions().size());
  for (std::size_t i = 0; i < c.events().size(); ++i) {
    owner[c.events()[i].inv_pos] = i;
    if (c.events()[i].completed()) owner[c.events()[i].res_pos] = i;
  }
  return owner;
}

}  // namespace

History restrict_to(const History& c, const std::vector<bool>& keep) {
  auto owner = action_owners(c);
  std::vector<Action> out;
  out.reserve(c.actions().size());
  for (std::size_t p = 0; p < c.actions().size(); ++p)
    if (keep[owner[p]]) out.push_back(c.actions()[p]);
  return History(std::move(out));
}

History remove_pending(const History& c) {
  if (c.is_complete()) return c;
  std::vector<bool> keep(c.events().size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = c.events()[i].completed();
  return restrict_to(c, keep);
}

std::vector<Value> completion_values(const History& c) {
  std::vector<Value> out;
  for (const Event& e : c.events())
    if (e.method == Method::enq) out.push_back(*e.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.push_back(Value::null());
  return out;
}

void for_each_completion(const History& c, std::span<const Value> candidate_values,
                         const std::function<bool(const History&)>& visit) {
  if (c.is_complete()) {
    visit(c);
    return;
  }
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < c.events().size(); ++i)
    if (c.events()[i].pending()) pending.push_back(i);

  // choice[k]: 0 drops pending[k]; otherwise completes it, deq taking candidate_values[choice-1].
  std::vector<std::size_t> choice(pending.size(), 0);
  const auto owner = action_owners(c);
  auto arity = [&](std::size_t k) {
    return c.events()[pending[k]].method == Method::enq ? 2 : candidate_values.size() + 1;
  };
  while (true) {
    std::vector<bool> keep(c.events().size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = c.events()[i].completed();
    std::vector<Action> actions;
    actions.reserve(c.actions().size() + pending.size());
    for (std::size_t k = 0; k < pending.size(); ++k) keep[pending[k]] = choice[k] != 0;
    for (std::size_t p = 0; p < c.actions().size(); ++p)
      if (keep[owner[p]]) actions.push_back(c.actions()[p]);
    for (std::size_t k = 0; k < pending.size(); ++k) {
      if (choice[k] == 0) continue;
      const Event& e = c.events()[pending[k]];
      actions.push_back(e.method == Method::enq
                            ? Action::enq_res(e.uid)
                            : Action::deq_res(e.uid, candidate_values[choice[k] - 1]));
    }
    if (!visit(History(std::move(actions)))) return;

    std::size_t k = 0;
    for (; k < pending.size(); ++k) {
      if (++choice[k] < arity(k)) break;
      choice[k] = 0;
    }
    if (k == pending.size()) return;
  }
}

std::vector<History> enumerate_completions(const History& c,
                                           std::span<const Value> candidate_values) {
  std::vector<History> out;
  for_each_completion(c, candidate_values, [&](const History& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

bool is_sequential(const History& c) {
  const auto& a = c.actions();
  std::size_t i = 0;
  while (i < a.size()) {
    if (a[i].kind != ActionKind::invocation) return false;
    if (i + 1 == a.size()) return true;
    if (a[i + 1].kind != ActionKind::response || a[i + 1].uid != a[i].uid) return false;
    i += 2;
  }
  return true;
}

bool is_differentiated(const History& c) {
  std::vector<std::uint64_t> vals;
  for (const Event& e : c.events())
    if (e.method == Method::enq) vals.push_back(e.value->get());
  std::sort(vals.begin(), vals.end());
  return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

Behavior behavior_of(const History& c) {
  if (!c.is_complete()) throw HistoryError("behavior_of: history has pending events");
  if (!is_sequential(c)) throw HistoryError("behavior_of: history is not sequential");
  std::vector<QueueEvent> out;
  out.reserve(c.events().size());
  for (const Event& e : c.events()) out.push_back({e.uid, e.method, *e.value});
  return Behavior(std::move(out));
}

}  // namespace qlin
