#include "qlin/explorer.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

namespace qlin::explore {

using hw::Boundary;
using hw::HWState;
using hw::Op;
using hw::Pc;
using hw::StepStatus;

namespace {

Count sat_add(Count a, Count b) {
  const Count max = ~Count{0};
  return a > max - b ? max : a + b;
}

bool capped(const hw::ThreadFrame& f, std::uint32_t loop_bound) {
  return f.pc == Pc::d1 && f.iterations >= loop_bound;
}

Ending classify(const HWState& s, std::uint32_t loop_bound, hw::Mutant mutant) {
  if (s.all_done()) return Ending::complete;
  bool bound = false;
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    if (capped(s.frames[t], loop_bound)) {
      bound = true;
      continue;
    }
    auto st = hw::hw_step(s, t, mutant).status;
    if (st == StepStatus::ok || st == StepStatus::overflow) return Ending::open;
  }
  return bound ? Ending::bound_hit : Ending::blocked;
}

TraceStep make_step(const HWState& before, std::size_t t, const hw::StepResult& r) {
  return {t, std::string(r.label), r.boundary, before.frames[t].op.is_enq() ? Method::enq : Method::deq, r.value};
}

Schedule schedule_of(const std::vector<TraceStep>& steps, const HWState& s) {
  Schedule out;
  out.reserve(steps.size());
  for (const auto& st : steps) out.emplace_back(s.name(st.thread), st.label);
  return out;
}

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void put_signed(std::string& out, std::int64_t v) {
  put_varint(out, (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

// Appends an encoding of the history that keeps the events, their values and
// the precedence between them, and forgets only the order of responses that
// fall between the same two invocations. Relies on uids counting invocations.
void put_history_class(std::string& out, const std::vector<Action>& actions) {
  std::vector<std::string> ev;
  std::uint64_t invoked = 0;
  for (const auto& a : actions) {
    if (a.kind == ActionKind::invocation) {
      ++invoked;
      std::string e(1, a.method == Method::enq ? 'e' : 'd');
      if (a.payload) put_varint(e, a.payload->get() + 1);
      ev.push_back(std::move(e));
    } else {
      std::string& e = ev[a.uid - 1];
      e.push_back('r');
      put_varint(e, invoked);
      if (a.payload) put_varint(e, a.payload->is_null() ? 0 : a.payload->get() + 1);
    }
  }
  for (const auto& e : ev) {
    put_varint(out, e.size());
    out += e;
  }
}

// Model state with dead thread locals left out and threads listed in a
// canonical order, so that threads running the same operation are
// interchangeable. `owners` lists, in that order, the uid each thread's
// pending operation carries (0 when it has none).
struct Canonical {
  std::string key;
  std::string owners;
};

Canonical canonical(const HWState& s, const std::vector<Uid>& uids) {
  std::vector<std::pair<std::string, Uid>> parts(s.frames.size());
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    const auto& f = s.frames[t];
    std::string& p = parts[t].first;
    p.push_back(static_cast<char>(f.op.kind));
    put_varint(p, f.op.value);
    p.push_back(static_cast<char>(f.pc));
    switch (f.pc) {
      case Pc::e1_write: put_signed(p, f.x); break;
      case Pc::e2: put_signed(p, f.i); break;
      case Pc::d1: put_varint(p, f.iterations); break;
      case Pc::d2:
        put_signed(p, f.i);
        put_signed(p, f.range);
        put_varint(p, f.iterations);
        break;
      case Pc::deq_return: put_signed(p, f.x); break;
      default: break;
    }
    parts[t].second = f.pending() ? uids[t] : 0;
  }
  std::sort(parts.begin(), parts.end());
  Canonical c;
  put_signed(c.key, s.back);
  c.key.push_back(s.flag ? 1 : 0);
  for (auto cell : s.items) put_signed(c.key, cell);
  for (const auto& [p, uid] : parts) {
    put_varint(c.key, p.size());
    c.key += p;
    put_varint(c.owners, uid);
  }
  return c;
}

// Current schedule and the history it induces, maintained step by step.
class Walker {
 public:
  explicit Walker(const Config& cfg) : cfg_(cfg) {}

  const std::vector<TraceStep>& path() const { return path_; }
  const std::vector<Action>& actions() const { return actions_; }
  const std::vector<Uid>& uids() const { return uids_; }

 protected:
  void start(const ExecutionTrace& from) {
    path_.clear();
    actions_.clear();
    next_uid_ = 0;
    uids_.assign(from.final_state.frames.size(), 0);
    for (const auto& st : from.steps) push(st);
  }

  void push(TraceStep st) {
    if (st.boundary == Boundary::entry) {
      uids_[st.thread] = ++next_uid_;
      actions_.push_back(st.method == Method::enq ? Action::enq_inv(next_uid_, st.value.get())
                                                   : Action::deq_inv(next_uid_));
    } else if (st.boundary == Boundary::exit) {
      const Uid u = uids_[st.thread];
      actions_.push_back(st.method == Method::enq ? Action::enq_res(u) : Action::deq_res(u, st.value));
    }
    path_.push_back(std::move(st));
  }

  void pop() {
    const TraceStep& st = path_.back();
    if (st.boundary != Boundary::none) actions_.pop_back();
    if (st.boundary == Boundary::entry) {
      uids_[st.thread] = 0;
      --next_uid_;
    }
    path_.pop_back();
  }

  const Config& cfg_;

 private:
  std::vector<TraceStep> path_;
  std::vector<Action> actions_;
  std::vector<Uid> uids_;
  Uid next_uid_ = 0;
};

// Depth-first over schedules. When merging, a node is a canonical model state
// and the number of maximal schedules below it is memoised, so counts stay
// exact. Otherwise every schedule is walked.
class StateSearch : public Walker {
 public:
  struct Node {
    std::uint32_t id;
    TraceCounts counts;
  };

  StateSearch(const Config& cfg, bool merge, std::size_t max_states)
      : Walker(cfg), merge_(merge), max_states_(max_states) {}

  std::function<bool(const HWState&)> on_state;  // false aborts the search
  std::function<void(const HWState& before, const HWState& after, std::size_t t)> on_step;
  std::function<bool(Ending, const HWState&)> on_leaf;  // false aborts the search

  TraceCounts run(const ExecutionTrace& from) {
    start(from);
    return dfs(from.final_state);
  }

  const Node* find(const std::string& key) const {
    auto it = memo_.find(key);
    return it == memo_.end() ? nullptr : &it->second;
  }

  std::uint64_t states() const { return states_; }
  bool aborted() const { return aborted_; }
  bool partial() const { return partial_; }

 private:
  TraceCounts dfs(const HWState& s) {
    TraceCounts counts;
    if (aborted_) return counts;
    std::string key;
    if (merge_) {
      key = canonical(s, uids()).key;
      if (const Node* n = find(key)) return n->counts;
    }
    if (++states_ > max_states_) {
      partial_ = aborted_ = true;
      return counts;
    }
    if (on_state && !on_state(s)) {
      aborted_ = true;
      return counts;
    }

    bool moved = false, bound = false;
    for (std::size_t t = 0; t < s.frames.size() && !aborted_; ++t) {
      if (capped(s.frames[t], cfg_.loop_bound)) {
        bound = true;
        continue;
      }
      auto r = hw::hw_step(s, t, cfg_.mutant);
      if (r.status == StepStatus::blocked || r.status == StepStatus::done) continue;
      moved = true;
      if (r.status == StepStatus::overflow) {
        counts.overflow = sat_add(counts.overflow, 1);
        if (on_leaf && !on_leaf(Ending::overflow, s)) aborted_ = true;
        continue;
      }
      if (on_step) on_step(s, r.next, t);
      push(make_step(s, t, r));
      counts += dfs(r.next);
      pop();
    }
    if (!moved && !aborted_) {
      const Ending e = s.all_done() ? Ending::complete : bound ? Ending::bound_hit : Ending::blocked;
      (e == Ending::complete ? counts.complete : e == Ending::bound_hit ? counts.bound_hit : counts.blocked) = 1;
      if (on_leaf && !on_leaf(e, s)) aborted_ = true;
    }
    if (merge_ && !aborted_) memo_.emplace(std::move(key), Node{static_cast<std::uint32_t>(memo_.size()), counts});
    return counts;
  }

  bool merge_;
  std::size_t max_states_;
  absl::flat_hash_map<std::string, Node> memo_;
  std::uint64_t states_ = 0;
  bool aborted_ = false, partial_ = false;
};

// Second pass: walks the states of a finished StateSearch again, now telling
// apart the histories induced on the way, and reports each complete one.
class HistorySearch : public Walker {
 public:
  HistorySearch(const Config& cfg, const StateSearch& states) : Walker(cfg), states_(states) {}

  std::function<void(const HWState&)> on_complete;

  void run(const HWState& init) {
    start(ExecutionTrace{{}, init, Ending::open});
    dfs(init);
  }

  std::uint64_t nodes() const { return visited_.size(); }

 private:
  static std::uint32_t intern(absl::flat_hash_map<std::string, std::uint32_t>& table, std::string s) {
    return table.emplace(std::move(s), static_cast<std::uint32_t>(table.size())).first->second;
  }

  void dfs(const HWState& s) {
    Canonical c = canonical(s, uids());
    const StateSearch::Node* n = states_.find(c.key);
    if (!n) throw std::logic_error("history pass reached a state the first pass did not");
    if (n->counts.complete == 0) return;
    std::string prefix;
    put_history_class(prefix, actions());
    const std::uint64_t hi = (std::uint64_t{n->id} << 32) | intern(owners_, std::move(c.owners));
    if (!visited_.emplace(hi, intern(prefixes_, std::move(prefix))).second) return;
    if (s.all_done()) {
      on_complete(s);
      return;
    }
    for (std::size_t t = 0; t < s.frames.size(); ++t) {
      if (capped(s.frames[t], cfg_.loop_bound)) continue;
      auto r = hw::hw_step(s, t, cfg_.mutant);
      if (r.status != StepStatus::ok) continue;
      push(make_step(s, t, r));
      dfs(r.next);
      pop();
    }
  }

  const StateSearch& states_;
  absl::flat_hash_map<std::string, std::uint32_t> owners_, prefixes_;
  absl::flat_hash_set<std::pair<std::uint64_t, std::uint32_t>> visited_;
};

}  // namespace

std::string to_string(Count c) {
  if (c == 0) return "0";
  std::string out;
  for (; c > 0; c /= 10) out.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
  return {out.rbegin(), out.rend()};
}

Count TraceCounts::total() const { return sat_add(sat_add(complete, bound_hit), sat_add(blocked, overflow)); }

TraceCounts& TraceCounts::operator+=(const TraceCounts& o) {
  complete = sat_add(complete, o.complete);
  bound_hit = sat_add(bound_hit, o.bound_hit);
  blocked = sat_add(blocked, o.blocked);
  overflow = sat_add(overflow, o.overflow);
  return *this;
}


std::string_view to_string(Ending e) {
  switch (e) {
    case Ending::complete: return "complete";
    case Ending::bound_hit: return "bound_hit";
    case Ending::blocked: return "blocked";
    case Ending::overflow: return "overflow";
    case Ending::open: return "open";
  }
  return "unknown";
}

void validate(const Config& cfg) {
  if (cfg.loop_bound == 0) throw std::invalid_argument("loop bound must be positive");
  if (cfg.capacity == 0) throw std::invalid_argument("capacity must be positive");
  (void)hw::hw_init(cfg.threads, cfg.capacity);
}

Config make_config(std::size_t n_enq, std::size_t n_deq, std::vector<std::uint64_t> values) {
  if (values.empty())
    for (std::size_t i = 1; i <= n_enq; ++i) values.push_back(i);
  if (values.size() != n_enq)
    throw std::invalid_argument("expected " + std::to_string(n_enq) + " values, got " + std::to_string(values.size()));
  Config cfg;
  for (std::size_t i = 0; i < n_enq + n_deq; ++i)
    cfg.threads.push_back({"t" + std::to_string(i + 1), i < n_enq ? Op::enq(values[i]) : Op::deq()});
  return cfg;
}

std::string dump_schedule(const std::vector<TraceStep>& steps, const HWState& s) {
  std::string out;
  for (const auto& st : steps) out += s.name(st.thread) + ":" + st.label + "\n";
  return out;
}

History induce_history(const std::vector<TraceStep>& steps) {
  std::vector<Action> actions;
  std::unordered_map<std::size_t, Uid> uid_of;
  Uid next = 0;
  for (const auto& st : steps) {
    if (st.boundary == Boundary::entry) {
      uid_of[st.thread] = ++next;
      actions.push_back(st.method == Method::enq ? Action::enq_inv(next, st.value.get()) : Action::deq_inv(next));
    } else if (st.boundary == Boundary::exit) {
      const Uid u = uid_of.at(st.thread);
      actions.push_back(st.method == Method::enq ? Action::enq_res(u) : Action::deq_res(u, st.value));
    }
  }
  return History(std::move(actions));
}

ExecutionTrace replay(const Config& cfg, const Schedule& schedule) {
  validate(cfg);
  ExecutionTrace tr;
  tr.final_state = hw::hw_init(cfg.threads, cfg.capacity);
  HWState& s = tr.final_state;
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    const auto& [name, label] = schedule[n];
    auto it = std::find(s.names->begin(), s.names->end(), name);
    if (it == s.names->end()) throw std::invalid_argument("step " + std::to_string(n + 1) + ": no thread " + name);
    const auto t = static_cast<std::size_t>(it - s.names->begin());
    auto r = hw::hw_step(s, t, cfg.mutant);
    if (r.status != StepStatus::ok)
      throw std::invalid_argument("step " + std::to_string(n + 1) + ": " + name + " cannot move");
    if (r.label != label)
      throw std::invalid_argument("step " + std::to_string(n + 1) + ": " + name + " is at " + std::string(r.label) +
                                  ", not " + label);
    tr.steps.push_back(make_step(s, t, r));
    s = std::move(r.next);
  }
  tr.ending = classify(s, cfg.loop_bound, cfg.mutant);
  return tr;
}

Schedule to_schedule(const ExecutionTrace& tr) { return schedule_of(tr.steps, tr.final_state); }

EnumerateSummary enumerate_traces(const Config& cfg, const std::function<bool(const ExecutionTrace&)>& visit,
                                  const EnumerateOptions& options, const Schedule& prefix) {
  const ExecutionTrace start = replay(cfg, prefix);
  EnumerateSummary summary;
  StateSearch search(cfg, false, std::numeric_limits<std::size_t>::max());
  search.on_leaf = [&](Ending e, const HWState& s) {
    ExecutionTrace tr{search.path(), s, e};
    ++summary.traces;
    if (!visit(tr)) return false;
    return options.max_traces == 0 || summary.traces < options.max_traces;
  };
  search.run(start);
  summary.partial = search.aborted();
  return summary;
}

Report check_configuration(const Config& cfg, const ExploreOptions& options) {
  validate(cfg);
  Report report;
  const HWState init = hw::hw_init(cfg.threads, cfg.capacity);
  StateSearch search(cfg, options.dedup, options.max_states);
  absl::flat_hash_set<std::string> seen;
  std::set<std::string> purity_seen;

  if (options.check_invariants && cfg.mutant == hw::Mutant::none) {
    search.on_step = [&](const HWState& before, const HWState& after, std::size_t t) {
      if (report.invariant_failures.size() >= 16) return;
      if (auto why = hw::step_invariant_failure(before, after, t))
        report.invariant_failures.push_back(before.name(t) + ": " + *why);
    };
  }
  if (options.check_purity) {
    search.on_state = [&](const HWState& s) {
      for (std::size_t t = 0; t < s.frames.size(); ++t) {
        if (!s.frames[t].pending()) continue;
        ++report.purity_checks;
        if (hw::purely_blocking_check(s, t, cfg.loop_bound, cfg.mutant) != hw::Purity::violation) continue;
        if (purity_seen.insert(s.name(t)).second)
          report.purity_violations.push_back({schedule_of(search.path(), s), s.name(t)});
      }
      return true;
    };
  }

  auto complete = [&](const Walker& w, const HWState& s) {
    std::string cls;
    put_history_class(cls, w.actions());
    if (!seen.insert(std::move(cls)).second) return;
    ++report.histories;
    History h(w.actions());
    auto found = detect_all(h);
    std::optional<bool> lin;
    if (options.run_oracle) {
      lin = brute_force_linearizable(h);
      ++report.oracle_checked;
      if (*lin != found.empty()) ++report.oracle_disagreements;
    }
    if (!found.empty()) report.findings.push_back({schedule_of(w.path(), s), std::move(h), std::move(found), lin});
  };

  if (!options.dedup) {
    search.on_leaf = [&](Ending e, const HWState& s) {
      if (e == Ending::complete) complete(search, s);
      return true;
    };
  }
  report.traces = search.run(ExecutionTrace{{}, init, Ending::open});
  report.states = search.states();
  report.partial = search.partial();
  if (options.dedup && !report.partial) {
    HistorySearch histories(cfg, search);
    histories.on_complete = [&](const HWState& s) { complete(histories, s); };
    histories.run(init);
    report.history_states = histories.nodes();
  }
  return report;
}

std::string summary_line(const Report& r) {
  std::ostringstream out;
  out << "EXPLORE " << (r.clean() ? "clean" : "violations") << " traces=" << to_string(r.traces.total())
      << " complete=" << to_string(r.traces.complete) << " bound_hit=" << to_string(r.traces.bound_hit)
      << " blocked=" << to_string(r.traces.blocked) << " overflow=" << to_string(r.traces.overflow)
      << " states=" << r.states << " histories=" << r.histories << " violations=" << r.findings.size();
  if (r.oracle_checked) out << " oracle_checked=" << r.oracle_checked << " oracle_disagreements=" << r.oracle_disagreements;
  if (r.purity_checks) out << " purity_checks=" << r.purity_checks << " purity_violations=" << r.purity_violations.size();
  if (!r.invariant_failures.empty()) out << " invariant_failures=" << r.invariant_failures.size();
  if (r.partial) out << " partial";
  return out.str();
}

namespace {

// Values for choice threads that differ from every value in `avoid`.
std::vector<std::uint64_t> palette(std::initializer_list<std::uint64_t> avoid) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 8; out.size() < 2; ++x)
    if (std::find(avoid.begin(), avoid.end(), x) == avoid.end()) out.push_back(x);
  return out;
}

// Calls f with every multiset of size k drawn from menu, as a vector of ops.
void for_each_multiset(const std::vector<Op>& menu, std::size_t k, const std::function<bool(const std::vector<Op>&)>& f) {
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    std::vector<Op> ops;
    for (auto p : pick) ops.push_back(menu[p]);
    if (!f(ops)) return;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] + 1 == menu.size()) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[i - 1];
  }
}

struct Harness {
  std::vector<hw::ThreadSpec> fixed;
  std::vector<Op> menu;
  std::size_t k;
  // Number of target threads finished in s; the run fails once it reaches fail_at.
  std::function<std::uint64_t(const HWState&)> terminated;
  std::uint64_t fail_at;
  std::function<std::optional<bool>(const HWState&)> invariant;  // nullopt: not applicable
};

DivergenceReport run_harness(const Harness& h, const DivergenceOptions& options) {
  DivergenceReport report;
  for_each_multiset(h.menu, h.k, [&](const std::vector<Op>& chosen) {
    Config cfg;
    cfg.threads = h.fixed;
    for (std::size_t i = 0; i < chosen.size(); ++i) cfg.threads.push_back({"c" + std::to_string(i + 1), chosen[i]});
    const auto enqueuers = static_cast<std::size_t>(
        std::count_if(cfg.threads.begin(), cfg.threads.end(), [](const hw::ThreadSpec& t) { return t.op.is_enq(); }));
    cfg.capacity = options.capacity ? options.capacity : std::max<std::size_t>(enqueuers, 1);
    cfg.loop_bound = options.loop_bound;
    cfg.mutant = options.mutant;
    validate(cfg);
    ++report.programs;

    StateSearch search(cfg, true, options.max_states);
    search.on_state = [&](const HWState& s) {
      if (h.invariant) {
        if (auto ok = h.invariant(s)) {
          ++report.invariant_states;
          if (!*ok) ++report.invariant_failures;
        }
      }
      const std::uint64_t done = h.terminated(s);
      report.max_terminated = std::max(report.max_terminated, done);
      if (done < h.fail_at) return true;
      report.pass = false;
      report.counterexample = schedule_of(search.path(), s);
      report.counterexample_history = History(search.actions());
      report.counterexample_threads = cfg.threads;
      return false;
    };
    report.traces += search.run(ExecutionTrace{{}, hw::hw_init(cfg.threads, cfg.capacity), Ending::open});
    report.states += search.states();
    if (search.partial()) report.partial = true;
    return report.pass && !report.partial;
  });
  if (report.invariant_failures) report.pass = false;
  return report;
}

}  // namespace


DivergenceReport divergence_check_vrepet(std::uint64_t v, std::size_t m, std::size_t k,
                                         const DivergenceOptions& options) {
  if (m < 2) throw std::invalid_argument("vrepet needs at least two deq(v) threads");
  Harness h;
  h.fixed.push_back({"e", Op::enq(v)});
  for (std::size_t i = 0; i < m; ++i) h.fixed.push_back({"d" + std::to_string(i + 1), Op::deq(v)});
  for (auto x : palette({v})) {
    h.menu.push_back(Op::enq(x));
    h.menu.push_back(Op::deq(x));
  }
  h.k = k;
  h.terminated = [m](const HWState& s) {
    std::uint64_t n = 0;
    for (std::size_t t = 1; t <= m; ++t) n += s.frames[t].pc == Pc::done;
    return n;
  };
  h.fail_at = 2;
  return run_harness(h, options);
}

DivergenceReport divergence_check_vord(std::size_t k, const DivergenceOptions& options, std::uint64_t v1,
                                       std::uint64_t v2) {
  if (v1 == v2) throw std::invalid_argument("vord needs two distinct values");
  Harness h;
  h.fixed.push_back({"d", Op::deq(v2)});
  h.fixed.push_back({"e", {hw::OpKind::enq_then_flag, v1}});
  const auto other = palette({v1, v2});
  h.menu.push_back({hw::OpKind::enq_after_flag, v2});
  for (auto x : {v1, other[0], other[1]}) h.menu.push_back(Op::enq(x));
  for (auto x : {v2, other[0], other[1]}) h.menu.push_back(Op::deq(x));
  h.k = k;
  h.terminated = [](const HWState& s) -> std::uint64_t { return s.frames[0].pc == Pc::done; };
  h.fail_at = 1;
  h.invariant = [v1, v2](const HWState& s) -> std::optional<bool> {
    const Pc pc = s.frames[1].pc;
    if (pc != Pc::set_flag && pc != Pc::done) return std::nullopt;
    for (std::int64_t i = 0; i < s.back && i < static_cast<std::int64_t>(s.capacity()); ++i) {
      const auto cell = s.items[static_cast<std::size_t>(i)];
      if (cell == static_cast<std::int64_t>(v1)) return true;
      if (cell == static_cast<std::int64_t>(v2)) return false;
    }
    return false;
  };
  return run_harness(h, options);
}

std::string summary_line(std::string_view harness, const DivergenceReport& r) {
  std::ostringstream out;
  out << "DIVERGENCE " << harness << ' ' << (r.pass ? "pass" : "fail") << " programs=" << r.programs
      << " states=" << r.states << " traces=" << to_string(r.traces.total()) << " complete=" << to_string(r.traces.complete)
      << " bound_hit=" << to_string(r.traces.bound_hit) << " blocked=" << to_string(r.traces.blocked)
      << " overflow=" << to_string(r.traces.overflow)
      << " max_terminated=" << r.max_terminated;
  if (r.invariant_states) out << " invariant_states=" << r.invariant_states << " invariant_failures=" << r.invariant_failures;
  if (r.partial) out << " partial";
  return out.str();
}

}  // namespace qlin::explore
