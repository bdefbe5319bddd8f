#include <algorithm>
#include <stdexcept>

#include "checker_internal.hpp"

namespace qlin {
namespace detail {

std::vector<std::size_t> bad_levels(const History& c, const IndexMatch& m, std::size_t d_null,
                                    const std::vector<char>* in) {
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  auto member = [&](std::size_t i) { return in == nullptr || (*in)[i]; };
  std::vector<std::size_t> level(n, none);

  for (std::size_t e = 0; e < n; ++e) {
    if (ev[e].method != Method::enq || !member(e)) continue;
    bool bad = c.precedes_index(d_null, e);
    if (!bad) {
      bad = true;
      for (std::size_t d = 0; d < n && bad; ++d)
        if (member(d) && ev[d].method == Method::deq && m.of_deq[d] == e)
          bad = c.precedes_index(d_null, d);
    }
    if (bad) level[e] = 0;
  }

  for (std::size_t round = 1;; ++round) {
    bool grew = false;
    for (std::size_t e = 0; e < n; ++e) {
      if (ev[e].method != Method::enq || !member(e) || level[e] != none) continue;
      std::size_t dq = none;
      for (std::size_t d = 0; d < n; ++d)
        if (member(d) && ev[d].method == Method::deq && m.of_deq[d] == e) dq = d;
      for (std::size_t b = 0; b < n; ++b) {
        if (level[b] == none || level[b] >= round) continue;
        if (c.precedes_index(b, e) || (dq != none && c.precedes_index(b, dq))) {
          level[e] = round;
          grew = true;
          break;
        }
      }
    }
    if (!grew) break;
  }
  return level;
}

bool null_dequeues_justified(const History& c, const IndexMatch& m) {
  const auto& ev = c.events();
  for (std::size_t d = 0; d < ev.size(); ++d) {
    if (ev[d].method != Method::deq || m.of_deq[d] != none) continue;
    auto level = bad_levels(c, m, d);
    for (std::size_t e = 0; e < ev.size(); ++e)
      if (level[e] != none && c.precedes_index(e, d)) return false;
  }
  return true;
}

bool is_witness_index(const History& c, const IndexMatch& m) {
  return safe_index(c, m).ok && ordered_index(c, m).ok && null_dequeues_justified(c, m);
}

}  // namespace detail

namespace {

std::size_t null_dequeue_index(const History& c, const detail::IndexMatch& m, Uid d_null) {
  std::size_t d = c.index_of(d_null);
  if (c.events()[d].method != Method::deq || m.of_deq[d] != detail::none)
    throw std::invalid_argument("uid " + std::to_string(d_null) + " is not a dequeue mapped to nothing");
  return d;
}

}  // namespace

BadSet compute_bad(const History& c, const MatchMapping& match, Uid d_null) {
  detail::require_complete(c, "compute_bad");
  auto m = detail::to_index(c, match);
  auto level = detail::bad_levels(c, m, null_dequeue_index(c, m, d_null));
  BadSet out;
  std::size_t rounds = 0;
  for (std::size_t l : level)
    if (l != detail::none) rounds = std::max(rounds, l + 1);
  out.levels.resize(std::max<std::size_t>(rounds, 1));
  for (std::size_t e = 0; e < level.size(); ++e) {
    if (level[e] == detail::none) continue;
    out.members.insert(c.events()[e].uid);
    for (std::size_t i = level[e]; i < out.levels.size(); ++i) out.levels[i].insert(c.events()[e].uid);
  }
  return out;
}

bool is_linearization_witness(const History& c, const MatchMapping& match) {
  detail::require_complete(c, "is_linearization_witness");
  return detail::is_witness_index(c, detail::to_index(c, match));
}

bool alt_witness_check(const History& c, const MatchMapping& match, Uid d_null) {
  detail::require_complete(c, "alt_witness_check");
  const auto m = detail::to_index(c, match);
  const std::size_t dn = null_dequeue_index(c, m, d_null);
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  const auto level = detail::bad_levels(c, m, dn);

  std::vector<char> enq_hat(n, 0), deq_prime(n, 0), deq_hat(n, 0);
  for (std::size_t e = 0; e < n; ++e)
    enq_hat[e] = ev[e].method == Method::enq && !c.precedes_index(dn, e) && level[e] == detail::none;
  for (std::size_t d = 0; d < n; ++d)
    deq_prime[d] = ev[d].method == Method::deq && m.of_deq[d] != detail::none && enq_hat[m.of_deq[d]];
  for (std::size_t d = 0; d < n; ++d) {
    deq_hat[d] = deq_prime[d];
    if (deq_hat[d] || ev[d].method != Method::deq || m.of_deq[d] != detail::none) continue;
    for (std::size_t a = 0; a < n && !deq_hat[d]; ++a)
      deq_hat[d] = (enq_hat[a] || deq_prime[a]) && c.precedes_index(d, a);
  }

  auto in_set = [&](std::size_t a) { return enq_hat[a] || deq_hat[a]; };
  for (std::size_t a = 0; a < n; ++a) {
    if (!in_set(a)) continue;
    if (c.precedes_index(dn, a)) return false;
    for (std::size_t b = 0; b < n; ++b)
      if (c.precedes_index(b, a) && !in_set(b)) return false;
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (ev[e].method != Method::enq) continue;
    if (c.precedes_index(e, dn) && !enq_hat[e]) return false;
    if (enq_hat[e]) {
      bool covered = false;
      for (std::size_t d = 0; d < n && !covered; ++d) covered = deq_hat[d] && m.of_deq[d] == e;
      if (!covered) return false;
    }
  }
  return true;
}

}  // namespace qlin
