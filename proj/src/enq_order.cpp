#include <algorithm>
#include <stdexcept>

#include "checker_internal.hpp"

namespace qlin {

EnqOrder::EnqOrder(std::vector<Uid> enqueues, std::vector<std::vector<bool>> closure)
    : enqueues_(std::move(enqueues)), closure_(std::move(closure)) {}

std::size_t EnqOrder::pos(Uid u) const {
  auto it = std::find(enqueues_.begin(), enqueues_.end(), u);
  if (it == enqueues_.end()) throw UnknownUidError(u);
  return static_cast<std::size_t>(it - enqueues_.begin());
}

bool EnqOrder::less(Uid a, Uid b) const { return closure_[pos(a)][pos(b)]; }

std::vector<Uid> EnqOrder::linear_extension() const {
  const std::size_t k = enqueues_.size();
  std::vector<bool> placed(k, false);
  std::vector<Uid> out;
  out.reserve(k);
  while (out.size() < k) {
    std::size_t pick = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (placed[j]) continue;
      bool ready = true;
      for (std::size_t i = 0; i < k && ready; ++i) ready = placed[i] || !closure_[i][j];
      if (ready && (pick == k || enqueues_[j] < enqueues_[pick])) pick = j;
    }
    if (pick == k) throw EnqOrderCycle("enq-order has a cycle");
    placed[pick] = true;
    out.push_back(enqueues_[pick]);
  }
  return out;
}

namespace detail {
namespace {

struct IndexOrder {
  std::vector<std::size_t> enqs;           // event indices of enqueues
  std::vector<std::vector<bool>> closure;  // over positions in enqs
};

bool overlapping(const History& c, std::size_t a, std::size_t b) {
  return !c.precedes_index(a, b) && !c.precedes_index(b, a);
}

IndexOrder order_index(const History& c, const IndexMatch& m) {
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  IndexOrder o;
  for (std::size_t i = 0; i < n; ++i)
    if (ev[i].method == Method::enq) o.enqs.push_back(i);

  std::vector<std::vector<std::size_t>> bad_by_null;
  for (std::size_t d = 0; d < n; ++d)
    if (ev[d].method == Method::deq && m.of_deq[d] == none && ev[d].value->is_null())
      bad_by_null.push_back(bad_levels(c, m, d));

  const std::size_t k = o.enqs.size();
  o.closure.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      const std::size_t e1 = o.enqs[a], e2 = o.enqs[b];
      const std::size_t d1 = m.of_enq[e1], d2 = m.of_enq[e2];
      bool rel = c.precedes_index(e1, e2);
      if (!rel && overlapping(c, e1, e2)) {
        if (d1 != none && d2 == none) {
          rel = true;
        } else if (d1 != none && d2 != none) {
          rel = c.precedes_index(d1, d2);
          for (std::size_t j = 0; j < bad_by_null.size() && !rel; ++j)
            rel = bad_by_null[j][e1] == none && bad_by_null[j][e2] != none;
        }
      }
      o.closure[a][b] = rel;
    }
  }
  for (std::size_t via = 0; via < k; ++via)
    for (std::size_t a = 0; a < k; ++a)
      if (o.closure[a][via])
        for (std::size_t b = 0; b < k; ++b)
          if (o.closure[via][b]) o.closure[a][b] = true;
  for (std::size_t a = 0; a < k; ++a)
    if (o.closure[a][a]) throw EnqOrderCycle("enq-order has a cycle");
  return o;
}

}  // namespace

Behavior linearize_index(const History& c, const IndexMatch& m) {
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  IndexOrder order = order_index(c, m);

  std::vector<Uid> enq_uids;
  for (std::size_t e : order.enqs) enq_uids.push_back(ev[e].uid);
  const auto total = EnqOrder(enq_uids, order.closure).linear_extension();
  std::vector<std::size_t> rank(n, none);
  for (std::size_t r = 0; r < total.size(); ++r) rank[c.index_of(total[r])] = r;

  std::vector<char> in(n, 1);
  std::vector<std::size_t> reversed;
  reversed.reserve(n);
  for (std::size_t left = n; left > 0; --left) {
    auto has_successor = [&](std::size_t a) {
      for (std::size_t b = 0; b < n; ++b)
        if (in[b] && c.precedes_index(a, b)) return true;
      return false;
    };
    std::size_t e_star = none;
    for (std::size_t e = 0; e < n; ++e)
      if (in[e] && ev[e].method == Method::enq && (e_star == none || rank[e] > rank[e_star])) e_star = e;

    std::size_t pick_null = none, pick_deq = none;
    for (std::size_t d = 0; d < n; ++d) {
      if (!in[d] || ev[d].method != Method::deq || has_successor(d)) continue;
      if (m.of_deq[d] == none) {
        if (pick_null != none && ev[pick_null].uid < ev[d].uid) continue;
        auto level = bad_levels(c, m, d, &in);
        if (std::all_of(level.begin(), level.end(), [](std::size_t l) { return l == none; }))
          pick_null = d;
        continue;
      }
      bool top = true;
      for (std::size_t d2 = 0; d2 < n && top; ++d2)
        top = !(in[d2] && ev[d2].method == Method::deq && m.of_deq[d2] != none &&
                rank[m.of_deq[d]] < rank[m.of_deq[d2]]);
      if (top && (pick_deq == none || ev[d].uid < ev[pick_deq].uid)) pick_deq = d;
    }

    // An unmatched enqueue goes last before a matched dequeue: taking the
    // dequeue first would leave its value unmatched, possibly ahead of a NULL
    // dequeue that it precedes.
    std::size_t pick = pick_null;
    if (pick == none && e_star != none && !has_successor(e_star)) {
      bool matched = false;
      for (std::size_t d = 0; d < n && !matched; ++d) matched = in[d] && m.of_deq[d] == e_star;
      if (!matched) pick = e_star;
    }
    if (pick == none) pick = pick_deq;
    if (pick == none) throw std::logic_error("linearization: no maximal event");
    in[pick] = 0;
    reversed.push_back(pick);
  }

  std::vector<QueueEvent> seq;
  seq.reserve(n);
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it)
    seq.push_back({ev[*it].uid, ev[*it].method, *ev[*it].value});
  Behavior s(std::move(seq));
  if (!is_linearization_of(s, c))
    throw std::logic_error("linearization: constructed behavior fails validation");
  return s;
}

}  // namespace detail

EnqOrder enq_order(const History& c, const MatchMapping& match) {
  detail::require_complete(c, "enq_order");
  const auto m = detail::to_index(c, match);
  auto o = detail::order_index(c, m);
  std::vector<Uid> uids;
  for (std::size_t e : o.enqs) uids.push_back(c.events()[e].uid);
  return EnqOrder(std::move(uids), std::move(o.closure));
}

Behavior construct_linearization(const History& c, const MatchMapping& match) {
  detail::require_complete(c, "construct_linearization");
  const auto m = detail::to_index(c, match);
  if (!detail::is_witness_index(c, m))
    throw std::invalid_argument("construct_linearization: mapping is not a linearization witness");
  return detail::linearize_index(c, m);
}

}  // namespace qlin
