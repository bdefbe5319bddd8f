#include "qlin/queue_spec.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qlin {

std::optional<QueueState> lts_step(const QueueState& q, const QueueEvent& a) {
  if (a.method == Method::enq) {
    QueueState next = q;
    next.items.push_back(a.value.get());
    return next;
  }
  if (a.value.is_null()) {
    if (!q.items.empty()) return std::nullopt;
    return q;
  }
  if (q.items.empty() || q.items.front() != a.value.get()) return std::nullopt;
  QueueState next = q;
  next.items.pop_front();
  return next;
}

bool is_legal(const Behavior& b) {
  QueueState q;
  for (const auto& a : b.events()) {
    auto next = lts_step(q, a);
    if (!next) return false;
    q = std::move(*next);
  }
  return true;
}

namespace {

constexpr std::size_t kNone = npos;

// Witness as positions: target[p] for dequeue at position p is the position of
// its enqueue or kNone.
std::vector<std::size_t> positions_of(const Behavior& b, const SequentialWitness& mu) {
  std::vector<std::size_t> target(b.size(), kNone);
  for (std::size_t p = 0; p < b.size(); ++p) {
    if (b[p].method != Method::deq) continue;
    auto it = mu.find(b[p].uid);
    if (it == mu.end())
      throw std::invalid_argument("witness is not total: dequeue " + std::to_string(b[p].uid) +
                                  " is unmapped");
    if (!it->second) continue;
    std::size_t q = b.position(*it->second);
    // An image outside the enqueues of b cannot agree on values; report it as clause (i).
    target[p] = (q == npos || b[q].method != Method::enq) ? npos - 1 : q;
  }
  return target;
}

WitnessCheck check_positions(const Behavior& b, const std::vector<std::size_t>& target) {
  const std::size_t n = b.size();
  for (std::size_t p = 0; p < n; ++p) {
    if (b[p].method != Method::deq || target[p] == kNone) continue;
    if (target[p] == npos - 1 || b[target[p]].value != b[p].value) return {false, 1};
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (b[p].method != Method::deq) continue;
    if ((target[p] == kNone) != b[p].value.is_null()) return {false, 2};
  }
  std::vector<std::size_t> inverse(n, kNone);
  for (std::size_t p = 0; p < n; ++p) {
    if (b[p].method != Method::deq || target[p] == kNone) continue;
    if (inverse[target[p]] != kNone) return {false, 3};
    inverse[target[p]] = p;
  }
  for (std::size_t p = 0; p < n; ++p)
    if (b[p].method == Method::deq && target[p] != kNone && !(target[p] < p)) return {false, 4};
  for (std::size_t dp = 0; dp < n; ++dp) {
    if (b[dp].method != Method::deq || target[dp] == kNone) continue;
    for (std::size_t e = 0; e < target[dp]; ++e) {
      if (b[e].method != Method::enq) continue;
      if (inverse[e] == kNone || !(inverse[e] < dp)) return {false, 5};
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (b[p].method != Method::deq || target[p] != kNone) continue;
    std::size_t enqs = 0, matched = 0;
    for (std::size_t q = 0; q < p; ++q) {
      if (b[q].method == Method::enq)
        ++enqs;
      else if (target[q] != kNone)
        ++matched;
    }
    if (enqs != matched) return {false, 6};
  }
  return {};
}

SequentialWitness to_witness(const Behavior& b, const std::vector<std::size_t>& target) {
  SequentialWitness mu;
  for (std::size_t p = 0; p < b.size(); ++p) {
    if (b[p].method != Method::deq) continue;
    mu[b[p].uid] = target[p] == kNone ? std::nullopt : std::optional<Uid>(b[target[p]].uid);
  }
  return mu;
}

}  // namespace

WitnessCheck check_sequential_witness(const Behavior& b, const SequentialWitness& mu) {
  return check_positions(b, positions_of(b, mu));
}

WitnessSearch find_sequential_witness(const Behavior& b, std::size_t bound) {
  const std::size_t n = b.size();
  std::vector<std::size_t> deqs;
  for (std::size_t p = 0; p < n; ++p)
    if (b[p].method == Method::deq && !b[p].value.is_null()) deqs.push_back(p);

  // options[k]: enqueue positions carrying the value of dequeue deqs[k].
  std::vector<std::vector<std::size_t>> options(deqs.size());
  for (std::size_t k = 0; k < deqs.size(); ++k) {
    for (std::size_t p = 0; p < n; ++p)
      if (b[p].method == Method::enq && b[p].value == b[deqs[k]].value) options[k].push_back(p);
    if (options[k].empty()) return {SearchStatus::none, std::nullopt};
  }

  std::vector<std::size_t> target(n, kNone);
  std::vector<bool> used(n, false);
  std::size_t examined = 0;
  bool exhausted = false;
  std::optional<SequentialWitness> found;

  auto search = [&](auto&& self, std::size_t k) -> void {
    if (found || exhausted) return;
    if (k == deqs.size()) {
      if (++examined > bound) {
        exhausted = true;
        return;
      }
      if (check_positions(b, target).ok) found = to_witness(b, target);
      return;
    }
    for (std::size_t e : options[k]) {
      if (used[e]) continue;
      used[e] = true;
      target[deqs[k]] = e;
      self(self, k + 1);
      target[deqs[k]] = kNone;
      used[e] = false;
      if (found || exhausted) return;
    }
  };
  search(search, 0);

  if (found) return {SearchStatus::found, std::move(found)};
  if (exhausted) return {SearchStatus::indeterminate, std::nullopt};
  return {SearchStatus::none, std::nullopt};
}

bool is_canonical(const Behavior& b) {
  const auto& ev = b.events();
  std::size_t i = 0;
  while (i < ev.size()) {
    const QueueEvent& a = ev[i];
    if (a.method == Method::deq) {
      if (!a.value.is_null()) return false;
      ++i;
      continue;
    }
    if (i + 1 < ev.size() && ev[i + 1].method == Method::deq && ev[i + 1].value == a.value) {
      i += 2;
      continue;
    }
    break;
  }
  for (; i < ev.size(); ++i)
    if (ev[i].method != Method::enq) return false;
  return true;
}

bool obs_equiv(const Behavior& b1, const Behavior& b2) {
  auto project = [](const Behavior& b, Method m) {
    std::vector<Value> out;
    for (const auto& e : b.events())
      if (e.method == m) out.push_back(e.value);
    return out;
  };
  return project(b1, Method::enq) == project(b2, Method::enq) &&
         project(b1, Method::deq) == project(b2, Method::deq);
}

Behavior canonicalize(const Behavior& b, const SequentialWitness& mu) {
  auto target = positions_of(b, mu);
  if (auto check = check_positions(b, target); !check.ok)
    throw std::invalid_argument("canonicalize: not a sequential witness (clause " +
                                std::to_string(check.failed_clause) + ")");
  std::vector<bool> taken(b.size(), false);
  std::vector<QueueEvent> out;
  out.reserve(b.size());
  std::size_t next_deq = 0;
  while (true) {
    while (next_deq < b.size() && (taken[next_deq] || b[next_deq].method != Method::deq))
      ++next_deq;
    if (next_deq == b.size()) break;
    if (target[next_deq] != kNone) {
      out.push_back(b[target[next_deq]]);
      taken[target[next_deq]] = true;
    }
    out.push_back(b[next_deq]);
    taken[next_deq] = true;
  }
  for (std::size_t p = 0; p < b.size(); ++p)
    if (!taken[p]) out.push_back(b[p]);
  return Behavior(std::move(out));
}

}  // namespace qlin
