#include <cstdint>
#include <unordered_set>

#include "checker_internal.hpp"

namespace qlin {

namespace {

struct StateKey {
  std::uint64_t placed;
  std::vector<std::uint64_t> queue;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateHash {
  std::size_t operator()(const StateKey& k) const {
    std::size_t h = std::hash<std::uint64_t>{}(k.placed);
    for (auto v : k.queue) h = h * 1000003u ^ std::hash<std::uint64_t>{}(v);
    return h;
  }
};

// Depth-first search over precedence-respecting orders, replaying the queue as
// events are placed. States already shown to be dead ends are memoised.
class Search {
 public:
  explicit Search(const History& c) : c_(c), n_(c.events().size()), preds_(n_, 0) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (c.precedes_index(j, i)) preds_[i] |= std::uint64_t{1} << j;
  }

  std::optional<Behavior> run() {
    std::vector<std::size_t> order;
    QueueState q;
    if (!dfs(0, q, order)) return std::nullopt;
    std::vector<QueueEvent> seq;
    for (std::size_t i : order) {
      const Event& e = c_.events()[i];
      seq.push_back({e.uid, e.method, *e.value});
    }
    return Behavior(std::move(seq));
  }

 private:
  bool dfs(std::uint64_t placed, const QueueState& q, std::vector<std::size_t>& order) {
    if (order.size() == n_) return true;
    StateKey key{placed, {q.items.begin(), q.items.end()}};
    if (dead_.contains(key)) return false;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((placed & bit) || (preds_[i] & ~placed)) continue;
      const Event& e = c_.events()[i];
      auto next = lts_step(q, {e.uid, e.method, *e.value});
      if (!next) continue;
      order.push_back(i);
      if (dfs(placed | bit, *next, order)) return true;
      order.pop_back();
    }
    dead_.insert(std::move(key));
    return false;
  }

  const History& c_;
  std::size_t n_;
  std::vector<std::uint64_t> preds_;
  std::unordered_set<StateKey, StateHash> dead_;
};

}  // namespace

OracleResult brute_force_check(const History& c, std::size_t max_events) {
  const std::size_t n = c.events().size();
  if (n > max_events || n > 64)
    throw BoundExceeded("history has " + std::to_string(n) + " events, bound is " +
                        std::to_string(std::min<std::size_t>(max_events, 64)));
  OracleResult out;
  const auto values = completion_values(c);
  for_each_completion(c, values, [&](const History& completed) {
    if (auto s = Search(completed).run()) {
      out.linearizable = true;
      out.witness = std::move(s);
      out.completion = completed;
      return false;
    }
    return true;
  });
  return out;
}

bool brute_force_linearizable(const History& c, std::size_t max_events) {
  return brute_force_check(c, max_events).linearizable;
}

bool is_linearization_of(const Behavior& s, const History& completion) {
  if (!completion.is_complete() || s.size() != completion.events().size()) return false;
  std::vector<std::size_t> idx(s.size());
  std::vector<char> used(s.size(), 0);
  for (std::size_t p = 0; p < s.size(); ++p) {
    auto i = completion.find(s[p].uid);
    if (!i || used[*i]) return false;
    const Event& e = completion.events()[*i];
    if (e.method != s[p].method || *e.value != s[p].value) return false;
    used[*i] = 1;
    idx[p] = *i;
  }
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = p + 1; q < s.size(); ++q)
      if (completion.precedes_index(idx[q], idx[p])) return false;
  return is_legal(s);
}

}  // namespace qlin
