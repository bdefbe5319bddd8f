#include "qlin/generate.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <utility>
#include <vector>

namespace qlin {

namespace {

// std::uniform_int_distribution differs between standard libraries.
std::size_t below(std::mt19937_64& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

template <typename T>
void shuffle(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

}  // namespace

History generate_history(std::uint64_t seed, std::size_t n_enq, std::size_t n_deq) {
  std::mt19937_64 rng(seed);
  const std::size_t n = n_enq + n_deq;

  std::vector<bool> is_enq(n, false);
  std::fill(is_enq.begin(), is_enq.begin() + static_cast<std::ptrdiff_t>(n_enq), true);
  shuffle(rng, is_enq);
  std::vector<std::uint64_t> values(n_enq);
  for (std::size_t i = 0; i < n_enq; ++i) values[i] = i + 1;
  shuffle(rng, values);

  // Events in the order of an atomic run; results filled in below.
  std::vector<Value> result(n);
  const bool from_run = rng() & 1;
  std::deque<std::uint64_t> q;
  for (std::size_t i = 0, next = 0; i < n; ++i) {
    if (is_enq[i]) {
      result[i] = Value{values[next]};
      q.push_back(values[next++]);
    } else if (from_run) {
      if (q.empty()) {
        result[i] = Value::null();
      } else {
        result[i] = Value{q.front()};
        q.pop_front();
      }
    } else {
      const std::size_t pick = below(rng, n_enq + 1);
      result[i] = pick == n_enq ? Value::null() : Value{pick + 1};
    }
  }
  if (from_run && n_deq > 0 && (rng() & 1)) {
    std::size_t d = below(rng, n_deq);
    for (std::size_t i = 0; i < n; ++i) {
      if (is_enq[i]) continue;
      if (d-- == 0) {
        const std::size_t pick = below(rng, n_enq + 1);
        result[i] = pick == n_enq ? Value::null() : Value{pick + 1};
        break;
      }
    }
  }

  // Event i is linearized at time 4i + 2 and spans a random interval around it,
  // so precedence between events never contradicts the run order.
  const std::size_t spread = 4 * (1 + below(rng, n + 1));
  struct Stamp {
    std::size_t time;
    std::size_t tie;
    Action action;
  };
  std::vector<Stamp> stamps;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t at = 4 * i + 2;
    const std::size_t inv = at - std::min(at, below(rng, spread + 1));
    const std::size_t res = at + 1 + below(rng, spread + 1);
    const Uid uid = i + 1;
    if (is_enq[i]) {
      stamps.push_back({inv, rng(), Action::enq_inv(uid, result[i].get())});
      stamps.push_back({res, rng(), Action::enq_res(uid)});
    } else {
      stamps.push_back({inv, rng(), Action::deq_inv(uid)});
      stamps.push_back({res, rng(), Action::deq_res(uid, result[i])});
    }
  }
  std::sort(stamps.begin(), stamps.end(), [](const Stamp& a, const Stamp& b) {
    return std::pair(a.time, a.tie) < std::pair(b.time, b.tie);
  });

  // Renumber so that uids follow invocation order.
  std::vector<Uid> renamed(n + 1, 0);
  Uid next = 0;
  std::vector<Action> actions;
  actions.reserve(stamps.size());
  for (auto& s : stamps) {
    Action a = s.action;
    if (a.kind == ActionKind::invocation) renamed[a.uid] = ++next;
    a.uid = renamed[a.uid];
    actions.push_back(a);
  }
  return History(std::move(actions));
}

}  // namespace qlin
