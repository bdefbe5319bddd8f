#include <algorithm>
#include <stdexcept>

#include "checker_internal.hpp"

namespace qlin {
namespace detail {

void require_complete(const History& c, const char* who) {
  if (!c.is_complete())
    throw std::invalid_argument(std::string(who) + ": history has pending events");
}

IndexMatch to_index(const History& c, const MatchMapping& m) {
  const auto& ev = c.events();
  IndexMatch im{std::vector<std::size_t>(ev.size(), none), std::vector<std::size_t>(ev.size(), none)};
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].method != Method::deq) continue;
    auto it = m.find(ev[i].uid);
    if (it == m.end())
      throw std::invalid_argument("match is not total: dequeue " + std::to_string(ev[i].uid) +
                                  " is unmapped");
    if (!it->second) continue;
    auto target = c.find(*it->second);
    if (!target || ev[*target].method != Method::enq)
      throw std::invalid_argument("match maps dequeue " + std::to_string(ev[i].uid) +
                                  " to a non-enqueue");
    im.of_deq[i] = *target;
    if (im.of_enq[*target] == none) im.of_enq[*target] = i;
  }
  return im;
}

MatchMapping to_mapping(const History& c, const IndexMatch& m) {
  MatchMapping out;
  const auto& ev = c.events();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].method != Method::deq) continue;
    out[ev[i].uid] = m.of_deq[i] == none ? std::nullopt : std::optional<Uid>(ev[m.of_deq[i]].uid);
  }
  return out;
}

IndexMatch value_match(const History& c) {
  const auto& ev = c.events();
  IndexMatch im{std::vector<std::size_t>(ev.size(), none), std::vector<std::size_t>(ev.size(), none)};
  for (std::size_t d = 0; d < ev.size(); ++d) {
    if (ev[d].method != Method::deq || !ev[d].value || ev[d].value->is_null()) continue;
    for (std::size_t e = 0; e < ev.size(); ++e) {
      if (ev[e].method == Method::enq && *ev[e].value == *ev[d].value) {
        im.of_deq[d] = e;
        if (im.of_enq[e] == none) im.of_enq[e] = d;
        break;
      }
    }
  }
  return im;
}

ClauseResult safe_index(const History& c, const IndexMatch& m) {
  const auto& ev = c.events();
  for (std::size_t d = 0; d < ev.size(); ++d)
    if (ev[d].method == Method::deq && m.of_deq[d] != none && *ev[m.of_deq[d]].value != *ev[d].value)
      return {false, 1};
  for (std::size_t d = 0; d < ev.size(); ++d)
    if (ev[d].method == Method::deq && (m.of_deq[d] == none) != ev[d].value->is_null())
      return {false, 2};
  for (std::size_t d = 0; d < ev.size(); ++d) {
    if (ev[d].method != Method::deq || m.of_deq[d] == none) continue;
    for (std::size_t d2 = d + 1; d2 < ev.size(); ++d2)
      if (ev[d2].method == Method::deq && m.of_deq[d2] == m.of_deq[d]) return {false, 3};
  }
  return {};
}

ClauseResult ordered_index(const History& c, const IndexMatch& m) {
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  for (std::size_t d = 0; d < n; ++d)
    if (ev[d].method == Method::deq && m.of_deq[d] != none && c.precedes_index(d, m.of_deq[d]))
      return {false, 1};
  for (std::size_t dp = 0; dp < n; ++dp) {
    if (ev[dp].method != Method::deq || m.of_deq[dp] == none) continue;
    const std::size_t ep = m.of_deq[dp];
    for (std::size_t e = 0; e < n; ++e) {
      if (ev[e].method != Method::enq || !c.precedes_index(e, ep)) continue;
      bool justified = false;
      for (std::size_t d = 0; d < n && !justified; ++d)
        justified = ev[d].method == Method::deq && m.of_deq[d] == e && !c.precedes_index(dp, d);
      if (!justified) return {false, 2};
    }
  }
  return {};
}

}  // namespace detail

MatchDerivation derive_match(const History& c, std::size_t bound) {
  detail::require_complete(c, "derive_match");
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  std::vector<std::size_t> deqs;
  std::vector<std::vector<std::size_t>> options;
  for (std::size_t d = 0; d < n; ++d) {
    if (ev[d].method != Method::deq || ev[d].value->is_null()) continue;
    deqs.push_back(d);
    auto& opts = options.emplace_back();
    for (std::size_t e = 0; e < n; ++e)
      if (ev[e].method == Method::enq && *ev[e].value == *ev[d].value) opts.push_back(e);
    if (opts.empty()) return {MatchStatus::no_candidate, {}};
  }

  MatchDerivation out;
  detail::IndexMatch im{std::vector<std::size_t>(n, detail::none),
                        std::vector<std::size_t>(n, detail::none)};
  bool exceeded = false;
  auto search = [&](auto&& self, std::size_t k) -> void {
    if (exceeded) return;
    if (k == deqs.size()) {
      if (out.candidates.size() == bound) {
        exceeded = true;
        return;
      }
      out.candidates.push_back(detail::to_mapping(c, im));
      return;
    }
    for (std::size_t e : options[k]) {
      if (im.of_enq[e] != detail::none) continue;
      im.of_enq[e] = deqs[k];
      im.of_deq[deqs[k]] = e;
      self(self, k + 1);
      im.of_enq[e] = detail::none;
      im.of_deq[deqs[k]] = detail::none;
    }
  };
  search(search, 0);

  if (exceeded) {
    out.status = MatchStatus::bound_exceeded;
  } else if (out.candidates.empty()) {
    out.status = MatchStatus::no_candidate;
  } else {
    out.status = is_differentiated(c) ? MatchStatus::unique : MatchStatus::candidates;
  }
  return out;
}

ClauseResult check_safe(const History& c, const MatchMapping& match) {
  detail::require_complete(c, "check_safe");
  return detail::safe_index(c, detail::to_index(c, match));
}

ClauseResult check_ordered(const History& c, const MatchMapping& match) {
  detail::require_complete(c, "check_ordered");
  return detail::ordered_index(c, detail::to_index(c, match));
}

}  // namespace qlin
