#include <algorithm>
#include <deque>
#include <stdexcept>

#include "checker_internal.hpp"

namespace qlin {

ViolationKind kind_of(const Violation& v) { return static_cast<ViolationKind>(v.index()); }

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::vfresh: return "vfresh";
    case ViolationKind::vrepet: return "vrepet";
    case ViolationKind::vord: return "vord";
    case ViolationKind::vwit: return "vwit";
  }
  return "unknown";
}

std::string to_line(const Violation& v) {
  std::string out = "VIOLATION ";
  out += to_string(kind_of(v));
  auto add = [&](Uid u) {
    out += ' ';
    out += std::to_string(u);
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VFresh>) {
          add(x.deq);
          if (x.enq) add(*x.enq);
        } else if constexpr (std::is_same_v<T, VRepet>) {
          add(x.first);
          add(x.second);
        } else if constexpr (std::is_same_v<T, VOrd>) {
          add(x.e1);
          add(x.e2);
          add(x.d2);
          if (x.d1) add(*x.d1);
        } else {
          add(x.deq);
          for (std::size_t i = 0; i < x.alive_per_split.size(); ++i)
            if (i == 0 || x.alive_per_split[i] != x.alive_per_split[i - 1]) add(x.alive_per_split[i]);
        }
      },
      v);
  return out;
}

namespace detail {

// death[e]: action position where the dequeue removing e's value is invoked
// (npos if never), using the earliest-invoked dequeue of that value.
std::vector<std::size_t> value_death(const History& c) {
  const auto& ev = c.events();
  std::vector<std::size_t> death(ev.size(), npos);
  for (std::size_t e = 0; e < ev.size(); ++e) {
    if (ev[e].method != Method::enq) continue;
    for (std::size_t d = 0; d < ev.size(); ++d)
      if (ev[d].method == Method::deq && ev[d].value && *ev[d].value == *ev[e].value) {
        death[e] = ev[d].inv_pos;
        break;
      }
  }
  return death;
}

std::vector<std::size_t> match_death(const History& c, const IndexMatch& m) {
  const auto& ev = c.events();
  std::vector<std::size_t> death(ev.size(), npos);
  for (std::size_t e = 0; e < ev.size(); ++e)
    if (ev[e].method == Method::enq && m.of_enq[e] != none) death[e] = ev[m.of_enq[e]].inv_pos;
  return death;
}

std::optional<VWit> vwit_scan(const History& c, std::size_t dn, const std::vector<std::size_t>& death) {
  const auto& ev = c.events();
  VWit w{ev[dn].uid, {}};
  std::size_t current = none;
  for (std::size_t p = ev[dn].inv_pos; p < ev[dn].res_pos; ++p) {
    auto alive = [&](std::size_t e) {
      return ev[e].method == Method::enq && ev[e].res_pos <= p && death[e] > p;
    };
    if (current == none || !alive(current)) {
      current = none;
      for (std::size_t e = 0; e < ev.size(); ++e)
        if (alive(e) && (current == none || death[e] > death[current])) current = e;
      if (current == none) return std::nullopt;
    }
    w.alive_per_split.push_back(ev[current].uid);
  }
  return w;
}

std::optional<std::vector<std::size_t>> covering_chain(const History& c, std::size_t dn,
                                                       const std::vector<std::size_t>& death) {
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  const std::size_t inv = ev[dn].inv_pos, res = ev[dn].res_pos;
  std::vector<std::size_t> parent(n, none);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t e = 0; e < n; ++e) {
    if (ev[e].method == Method::enq && ev[e].res_pos < inv && death[e] > inv) {
      seen[e] = 1;
      queue.push_back(e);
    }
  }
  while (!queue.empty()) {
    std::size_t e = queue.front();
    queue.pop_front();
    if (death[e] == npos || death[e] > res) {
      std::vector<std::size_t> chain;
      for (std::size_t x = e; x != none; x = parent[x]) chain.push_back(x);
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
    for (std::size_t f = 0; f < n; ++f) {
      if (seen[f] || ev[f].method != Method::enq) continue;
      if (ev[f].res_pos < death[e] && ev[f].inv_pos < res) {
        seen[f] = 1;
        parent[f] = e;
        queue.push_back(f);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

bool is_null_deq(const Event& e) { return e.method == Method::deq && e.value && e.value->is_null(); }

void collect_vfresh(const History& c, bool first_only, std::vector<Violation>& out) {
  const auto& ev = c.events();
  for (std::size_t d = 0; d < ev.size(); ++d) {
    if (ev[d].method != Method::deq || ev[d].value->is_null()) continue;
    bool any = false;
    std::optional<Uid> later;
    bool fresh = true;
    for (std::size_t e = 0; e < ev.size() && fresh; ++e) {
      if (ev[e].method != Method::enq || *ev[e].value != *ev[d].value) continue;
      any = true;
      if (c.precedes_index(d, e)) {
        if (!later) later = ev[e].uid;
      } else {
        fresh = false;
      }
    }
    if (!fresh) continue;
    out.push_back(VFresh{ev[d].uid, any ? later : std::nullopt});
    if (first_only) return;
  }
}

void collect_vrepet(const History& c, bool first_only, std::vector<Violation>& out) {
  const auto& ev = c.events();
  for (std::size_t a = 0; a < ev.size(); ++a) {
    if (ev[a].method != Method::deq || ev[a].value->is_null()) continue;
    for (std::size_t b = a + 1; b < ev.size(); ++b) {
      if (ev[b].method != Method::deq || *ev[b].value != *ev[a].value) continue;
      out.push_back(VRepet{ev[a].uid, ev[b].uid});
      if (first_only) return;
    }
  }
}

void collect_vord(const History& c, bool first_only, std::vector<Violation>& out) {
  const auto& ev = c.events();
  const std::size_t n = ev.size();
  for (std::size_t e1 = 0; e1 < n; ++e1) {
    if (ev[e1].method != Method::enq) continue;
    for (std::size_t e2 = 0; e2 < n; ++e2) {
      if (ev[e2].method != Method::enq || !c.precedes_index(e1, e2)) continue;
      if (*ev[e1].value == *ev[e2].value) continue;
      for (std::size_t d2 = 0; d2 < n; ++d2) {
        if (ev[d2].method != Method::deq || *ev[d2].value != *ev[e2].value) continue;
        bool removed = false;
        for (std::size_t d1 = 0; d1 < n; ++d1) {
          if (ev[d1].method != Method::deq || *ev[d1].value != *ev[e1].value) continue;
          removed = true;
          if (c.precedes_index(d2, d1)) {
            out.push_back(VOrd{ev[e1].uid, ev[e2].uid, ev[d2].uid, ev[d1].uid});
            if (first_only) return;
          }
        }
        if (!removed) {
          out.push_back(VOrd{ev[e1].uid, ev[e2].uid, ev[d2].uid, std::nullopt});
          if (first_only) return;
        }
      }
    }
  }
}

void collect_vwit(const History& c, bool first_only, std::vector<Violation>& out) {
  const auto& ev = c.events();
  const auto death = detail::value_death(c);
  for (std::size_t d = 0; d < ev.size(); ++d) {
    if (!is_null_deq(ev[d])) continue;
    if (auto w = detail::vwit_scan(c, d, death)) {
      out.push_back(std::move(*w));
      if (first_only) return;
    }
  }
}

using Collector = void (*)(const History&, bool, std::vector<Violation>&);

std::optional<Violation> first_of(const History& c, Collector f, const char* who) {
  detail::require_complete(c, who);
  std::vector<Violation> out;
  f(c, true, out);
  if (out.empty()) return std::nullopt;
  return out.front();
}

}  // namespace

std::optional<Violation> detect_vfresh(const History& c) { return first_of(c, collect_vfresh, "detect_vfresh"); }
std::optional<Violation> detect_vrepet(const History& c) { return first_of(c, collect_vrepet, "detect_vrepet"); }
std::optional<Violation> detect_vord(const History& c) { return first_of(c, collect_vord, "detect_vord"); }
std::optional<Violation> detect_vwit(const History& c) { return first_of(c, collect_vwit, "detect_vwit"); }

std::vector<Violation> detect_all(const History& c) {
  detail::require_complete(c, "detect_all");
  std::vector<Violation> out;
  collect_vfresh(c, false, out);
  collect_vrepet(c, false, out);
  collect_vord(c, false, out);
  collect_vwit(c, false, out);
  return out;
}

std::optional<Covering> detect_pwit_covering(const History& c, Uid d_null) {
  detail::require_complete(c, "detect_pwit_covering");
  const std::size_t dn = c.index_of(d_null);
  if (!is_null_deq(c.events()[dn]))
    throw std::invalid_argument("uid " + std::to_string(d_null) + " is not a NULL dequeue");
  auto chain = detail::covering_chain(c, dn, detail::value_death(c));
  if (!chain) return std::nullopt;
  Covering out;
  for (std::size_t e : *chain) out.chain.push_back(c.events()[e].uid);
  return out;
}

}  // namespace qlin
