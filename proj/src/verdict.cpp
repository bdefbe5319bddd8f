#include <stdexcept>

#include "checker_internal.hpp"

namespace qlin {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::linearizable: return "linearizable";
    case Outcome::violation: return "violation";
    case Outcome::indeterminate: return "indeterminate";
  }
  return "unknown";
}

namespace {

Verdict linearizable(const History& c, const detail::IndexMatch& m) {
  Verdict v;
  v.outcome = Outcome::linearizable;
  v.witness = detail::linearize_index(c, m);
  return v;
}

Verdict violation(std::vector<Violation> found) {
  Verdict v;
  v.outcome = Outcome::violation;
  v.violations = std::move(found);
  return v;
}

// Explains why the candidate mapping m fails, in terms of the four violation kinds.
Violation classify_failure(const History& c, const detail::IndexMatch& m) {
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  for (std::size_t d = 0; d < n; ++d)
    if (ev[d].method == Method::deq && m.of_deq[d] != detail::none && c.precedes_index(d, m.of_deq[d]))
      return VFresh{ev[d].uid, ev[m.of_deq[d]].uid};
  for (std::size_t dp = 0; dp < n; ++dp) {
    if (ev[dp].method != Method::deq || m.of_deq[dp] == detail::none) continue;
    const std::size_t ep = m.of_deq[dp];
    for (std::size_t e = 0; e < n; ++e) {
      if (ev[e].method != Method::enq || !c.precedes_index(e, ep)) continue;
      const std::size_t d = m.of_enq[e];
      if (d == detail::none) return VOrd{ev[e].uid, ev[ep].uid, ev[dp].uid, std::nullopt};
      if (c.precedes_index(dp, d)) return VOrd{ev[e].uid, ev[ep].uid, ev[dp].uid, ev[d].uid};
    }
  }
  const auto death = detail::match_death(c, m);
  for (std::size_t d = 0; d < n; ++d) {
    if (ev[d].method != Method::deq || m.of_deq[d] != detail::none) continue;
    if (auto w = detail::vwit_scan(c, d, death)) return *w;
  }
  throw std::logic_error("candidate mapping fails but no violation could be located");
}

Verdict check_duplicates(const History& c, const CheckOptions& options) {
  const auto& ev = c.events();
  auto derived = derive_match(c, options.candidate_bound);
  if (derived.status == MatchStatus::bound_exceeded) {
    Verdict v;
    v.outcome = Outcome::indeterminate;
    v.reason = "more than " + std::to_string(options.candidate_bound) + " candidate mappings";
    return v;
  }
  if (derived.status == MatchStatus::no_candidate) {
    if (auto f = detect_vfresh(c); f && !std::get<VFresh>(*f).enq) return violation({*f});
    // Some value is dequeued more often than it was enqueued.
    for (std::size_t a = 0; a < ev.size(); ++a) {
      if (ev[a].method != Method::deq || ev[a].value->is_null()) continue;
      std::size_t enqs = 0, deqs = 0;
      std::optional<Uid> second;
      for (std::size_t b = 0; b < ev.size(); ++b) {
        if (*ev[b].value != *ev[a].value) continue;
        if (ev[b].method == Method::enq) {
          ++enqs;
        } else {
          ++deqs;
          if (b > a && !second) second = ev[b].uid;
        }
      }
      if (deqs > enqs && second) return violation({VRepet{ev[a].uid, *second}});
    }
    throw std::logic_error("no candidate mapping but no surplus dequeue found");
  }
  std::optional<detail::IndexMatch> first;
  for (const auto& cand : derived.candidates) {
    auto m = detail::to_index(c, cand);
    if (detail::is_witness_index(c, m)) return linearizable(c, m);
    if (!first) first = std::move(m);
  }
  return violation({classify_failure(c, *first)});
}

Verdict check_complete(const History& c, const CheckOptions& options) {
  if (!is_differentiated(c)) return check_duplicates(c, options);
  if (options.all_violations) {
    auto found = detect_all(c);
    if (!found.empty()) return violation(std::move(found));
  } else {
    for (auto detect : {detect_vfresh, detect_vrepet, detect_vord, detect_vwit})
      if (auto v = detect(c)) return violation({std::move(*v)});
  }
  return linearizable(c, detail::value_match(c));
}

}  // namespace

Verdict check_linearizable(const History& c, const CheckOptions& options) {
  if (c.is_complete()) {
    Verdict v = check_complete(c, options);
    v.completion = c;
    return v;
  }
  const auto values = completion_values(c);
  std::optional<Verdict> result, first;
  bool undecided = false;
  for_each_completion(c, values, [&](const History& completed) {
    Verdict v = check_complete(completed, options);
    v.completion = completed;
    if (v.outcome == Outcome::linearizable) {
      result = std::move(v);
      return false;
    }
    if (v.outcome == Outcome::indeterminate) undecided = true;
    if (!first) first = std::move(v);
    return true;
  });
  if (result) return std::move(*result);
  if (undecided) {
    Verdict v;
    v.outcome = Outcome::indeterminate;
    v.reason = "no linearizable completion found and some completion was undecided";
    return v;
  }
  return std::move(*first);
}

}  // namespace qlin
