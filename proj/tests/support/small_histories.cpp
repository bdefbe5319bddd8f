#include "small_histories.hpp"

#include <algorithm>
#include <bit>

namespace qlin::testing {

namespace {

// Shapes: sequences over events numbered by invocation order, each event
// appearing as an invocation and later a response. Entries are +e for the
// invocation of event e and -e for its response (events counted from 1).
void for_each_shape(std::size_t k, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> seq;
  std::vector<bool> open(k + 1, false);
  std::size_t invoked = 0, answered = 0;
  bool stop = false;
  std::function<void()> rec = [&] {
    if (stop) return;
    if (answered == k) {
      stop = !visit(seq);
      return;
    }
    if (invoked < k) {
      ++invoked;
      open[invoked] = true;
      seq.push_back(static_cast<int>(invoked));
      rec();
      seq.pop_back();
      open[invoked] = false;
      --invoked;
    }
    for (std::size_t e = 1; e <= invoked; ++e) {
      if (!open[e]) continue;
      open[e] = false;
      ++answered;
      seq.push_back(-static_cast<int>(e));
      rec();
      seq.pop_back();
      --answered;
      open[e] = true;
    }
  };
  rec();
}

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

std::uint64_t power(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

void for_each_small_history(std::size_t max_enq, std::size_t max_deq, const std::vector<std::uint64_t>& values,
                            const std::function<bool(const History&)>& visit) {
  bool stop = false;
  for (std::size_t k = 0; k <= max_enq + max_deq && !stop; ++k) {
    for_each_shape(k, [&](const std::vector<int>& shape) {
      // Which events enqueue.
      for (std::uint32_t mask = 0; mask < (1u << k) && !stop; ++mask) {
        const auto n_enq = static_cast<std::size_t>(std::popcount(mask));
        if (n_enq > max_enq || k - n_enq > max_deq || n_enq > values.size()) continue;
        std::vector<std::size_t> enq_events, deq_events;
        for (std::size_t e = 0; e < k; ++e) (mask >> e & 1 ? enq_events : deq_events).push_back(e);

        // Injective value choices for the enqueues: ordered selections.
        std::vector<std::size_t> pick(n_enq, 0);
        std::function<void(std::size_t, std::vector<bool>&)> choose_values = [&](std::size_t i,
                                                                                 std::vector<bool>& used) {
          if (stop) return;
          if (i < n_enq) {
            for (std::size_t v = 0; v < values.size(); ++v) {
              if (used[v]) continue;
              used[v] = true;
              pick[i] = v;
              choose_values(i + 1, used);
              used[v] = false;
            }
            return;
          }
          // Dequeue results: index n_enq stands for NULL.
          std::vector<std::size_t> res(deq_events.size(), 0);
          while (!stop) {
            std::vector<std::uint64_t> arg(k, 0);
            std::vector<Value> result(k);
            for (std::size_t j = 0; j < n_enq; ++j) arg[enq_events[j]] = values[pick[j]];
            for (std::size_t j = 0; j < deq_events.size(); ++j)
              result[deq_events[j]] = res[j] == n_enq ? Value::null() : Value{values[pick[res[j]]]};
            std::vector<Action> actions;
            actions.reserve(shape.size());
            for (int a : shape) {
              const std::size_t e = static_cast<std::size_t>(a > 0 ? a : -a) - 1;
              const bool enq = mask >> e & 1;
              if (a > 0) actions.push_back(enq ? Action::enq_inv(e + 1, arg[e]) : Action::deq_inv(e + 1));
              else actions.push_back(enq ? Action::enq_res(e + 1) : Action::deq_res(e + 1, result[e]));
            }
            if (!visit(History(std::move(actions)))) stop = true;
            std::size_t j = 0;
            while (j < res.size() && ++res[j] > n_enq) res[j++] = 0;
            if (j == res.size()) break;
          }
        };
        std::vector<bool> used(values.size(), false);
        choose_values(0, used);
      }
      return !stop;
    });
  }
}

std::uint64_t count_small_histories(std::size_t max_enq, std::size_t max_deq, std::size_t n_values) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= max_enq + max_deq; ++k) {
    // One shape per way of pairing 2k positions into (invocation, response).
    const std::uint64_t shapes = factorial(2 * k) / (power(2, k) * factorial(k));
    for (std::size_t n = 0; n <= std::min(k, max_enq); ++n) {
      const std::size_t m = k - n;
      if (m > max_deq || n > n_values) continue;
      total += shapes * choose(k, n) * (factorial(n_values) / factorial(n_values - n)) * power(n + 1, m);
    }
  }
  return total;
}

void for_each_behavior(std::size_t max_len, const std::vector<std::uint64_t>& values,
                       const std::function<void(const Behavior&)>& visit) {
  // Alphabet: enq(x), deq(x) for each x, and deq(NULL).
  const std::size_t letters = 2 * values.size() + 1;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::size_t> word(len, 0);
    while (true) {
      std::vector<QueueEvent> events;
      for (std::size_t i = 0; i < len; ++i) {
        const std::size_t l = word[i];
        const Uid uid = i + 1;
        if (l < values.size()) events.push_back(QueueEvent::enq(uid, values[l]));
        else if (l < 2 * values.size()) events.push_back(QueueEvent::deq(uid, Value{values[l - values.size()]}));
        else events.push_back(QueueEvent::deq_null(uid));
      }
      visit(Behavior(std::move(events)));
      std::size_t j = 0;
      while (j < len && ++word[j] == letters) word[j++] = 0;
      if (j == len) break;
    }
  }
}

}  // namespace qlin::testing
