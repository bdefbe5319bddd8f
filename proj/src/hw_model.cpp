#include "qlin/hw_model.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace qlin::hw {

namespace {

constexpr std::array<std::pair<Mutant, std::string_view>, 5> mutant_names{{
    {Mutant::none, "none"},
    {Mutant::no_swap_clear, "no_swap_clear"},
    {Mutant::skip_slot_zero, "skip_slot_zero"},
    {Mutant::nonatomic_enq, "nonatomic_enq"},
    {Mutant::tombstone_swap, "tombstone_swap"},
}};

Pc entry_pc(const Op& op) {
  switch (op.kind) {
    case OpKind::enq_after_flag: return Pc::assume_flag;
    case OpKind::deq:
    case OpKind::deq_prophecy: return Pc::d1;
    default: return Pc::e1;
  }
}

bool holds_nothing(std::int64_t cell) { return cell == empty_slot || cell == tombstone; }

}  // namespace

std::string_view to_string(Mutant m) {
  for (const auto& [k, name] : mutant_names)
    if (k == m) return name;
  return "unknown";
}

std::optional<Mutant> parse_mutant(std::string_view s) {
  for (const auto& [k, name] : mutant_names)
    if (name == s) return k;
  return std::nullopt;
}

const std::vector<Mutant>& all_mutants() {
  static const std::vector<Mutant> all = [] {
    std::vector<Mutant> v;
    for (const auto& entry : mutant_names) v.push_back(entry.first);
    return v;
  }();
  return all;
}

std::string to_string(const Op& op) {
  const std::string v = std::to_string(op.value);
  switch (op.kind) {
    case OpKind::enq: return "enq(" + v + ")";
    case OpKind::deq: return "deq()";
    case OpKind::deq_prophecy: return "deq(" + v + ")";
    case OpKind::enq_then_flag: return "enq(" + v + ");b<-true";
    case OpKind::enq_after_flag: return "assume(b);enq(" + v + ")";
  }
  return "?";
}

std::string_view to_string(Purity p) {
  switch (p) {
    case Purity::terminates: return "terminates";
    case Purity::pure: return "pure";
    case Purity::violation: return "violation";
  }
  return "unknown";
}

bool HWState::all_done() const {
  return std::all_of(frames.begin(), frames.end(), [](const ThreadFrame& f) { return f.pc == Pc::done; });
}

HWState hw_init(const std::vector<ThreadSpec>& threads, std::size_t capacity) {
  std::set<std::string> seen;
  std::size_t enqueuers = 0;
  auto names = std::make_shared<std::vector<std::string>>();
  HWState s;
  for (const auto& t : threads) {
    if (!seen.insert(t.name).second) throw std::invalid_argument("duplicate thread name '" + t.name + "'");
    if (t.op.is_enq()) ++enqueuers;
    names->push_back(t.name);
    s.frames.push_back(ThreadFrame{t.op, entry_pc(t.op)});
  }
  if (capacity < enqueuers)
    throw std::invalid_argument("capacity " + std::to_string(capacity) + " is below the " +
                                std::to_string(enqueuers) + " enqueuing threads");
  s.items.assign(capacity, empty_slot);
  s.names = std::move(names);
  return s;
}

StepResult hw_step(const HWState& s, std::size_t t, Mutant mutant) {
  if (t >= s.frames.size()) throw std::out_of_range("no thread " + std::to_string(t));
  const ThreadFrame& cur = s.frames[t];
  StepResult r{StepStatus::ok, {}, {}, Boundary::none, Value::null()};
  if (cur.pc == Pc::done) {
    r.status = StepStatus::done;
    return r;
  }

  // Steps that do not touch state can be decided before copying it.
  if (cur.pc == Pc::assume_flag && !s.flag) {
    r.status = StepStatus::blocked;
    r.label = "assume";
    return r;
  }
  const bool reserving = cur.pc == Pc::e1_write || (cur.pc == Pc::e1 && mutant != Mutant::nonatomic_enq);
  if (reserving) {
    const std::int64_t slot = cur.pc == Pc::e1 ? s.back : cur.x;
    if (slot >= static_cast<std::int64_t>(s.capacity())) {
      r.status = StepStatus::overflow;
      r.label = cur.pc == Pc::e1 ? "E1" : "E1w";
      return r;
    }
  }
  if (cur.pc == Pc::d2 && cur.op.kind == OpKind::deq_prophecy) {
    const std::int64_t cell = s.items[static_cast<std::size_t>(cur.i)];
    if (!holds_nothing(cell) && cell != static_cast<std::int64_t>(cur.op.value)) {
      r.status = StepStatus::blocked;
      r.label = "D2";
      return r;
    }
  }

  r.next = s;
  HWState& n = r.next;
  ThreadFrame& f = n.frames[t];
  if (!f.invoked && f.pc != Pc::assume_flag) {
    f.invoked = true;
    r.boundary = Boundary::entry;
    if (f.op.is_enq()) r.value = Value{f.op.value};
  }

  switch (f.pc) {
    case Pc::assume_flag:
      r.label = "assume";
      f.pc = Pc::e1;
      break;
    case Pc::e1:
      if (mutant == Mutant::nonatomic_enq) {
        r.label = "E1r";
        f.x = n.back;
        f.pc = Pc::e1_write;
      } else {
        r.label = "E1";
        f.i = n.back++;
        f.pc = Pc::e2;
      }
      break;
    case Pc::e1_write:
      r.label = "E1w";
      f.i = f.x;
      n.back = f.x + 1;
      f.pc = Pc::e2;
      break;
    case Pc::e2:
      r.label = "E2";
      n.items[static_cast<std::size_t>(f.i)] = static_cast<std::int64_t>(f.op.value);
      r.boundary = Boundary::exit;
      f.pc = f.op.kind == OpKind::enq_then_flag ? Pc::set_flag : Pc::done;
      break;
    case Pc::set_flag:
      r.label = "B";
      n.flag = true;
      f.pc = Pc::done;
      break;
    case Pc::d1:
      r.label = "D1";
      ++f.iterations;
      f.range = n.back - 1;
      f.i = mutant == Mutant::skip_slot_zero ? 1 : 0;
      f.pc = f.i <= f.range ? Pc::d2 : Pc::d1;
      break;
    case Pc::d2: {
      r.label = "D2";
      std::int64_t& cell = n.items[static_cast<std::size_t>(f.i)];
      if (holds_nothing(cell)) {
        cell = mutant == Mutant::tombstone_swap ? tombstone : empty_slot;
        ++f.i;
        f.pc = f.i <= f.range ? Pc::d2 : Pc::d1;
      } else {
        f.x = cell;
        if (mutant != Mutant::no_swap_clear) cell = empty_slot;
        f.pc = Pc::deq_return;
      }
      break;
    }
    case Pc::deq_return:
      r.label = "return";
      r.boundary = Boundary::exit;
      r.value = Value{static_cast<std::uint64_t>(f.x)};
      f.pc = Pc::done;
      break;
    case Pc::done: break;
  }
  return r;
}

StepResult hw_step_instrumented(const HWState& s, std::size_t t, std::uint64_t v, Mutant mutant) {
  if (t >= s.frames.size()) throw std::out_of_range("no thread " + std::to_string(t));
  const Op& op = s.frames[t].op;
  if (op.kind != OpKind::deq_prophecy || op.value != v)
    throw std::invalid_argument("thread " + s.name(t) + " runs " + to_string(op) + ", not deq(" +
                                std::to_string(v) + ")");
  return hw_step(s, t, mutant);
}

std::vector<std::size_t> enabled_threads(const HWState& s, Mutant mutant) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    auto st = hw_step(s, t, mutant).status;
    if (st == StepStatus::ok || st == StepStatus::overflow) out.push_back(t);
  }
  return out;
}

Purity purely_blocking_check(const HWState& s, std::size_t t, std::uint32_t loop_bound, Mutant mutant) {
  if (t >= s.frames.size() || !s.frames[t].pending())
    throw std::invalid_argument("thread " + std::to_string(t) + " has no pending operation");
  HWState cur = s;
  const std::uint32_t limit = s.frames[t].iterations + loop_bound;
  while (true) {
    const ThreadFrame& f = cur.frames[t];
    if (!f.pending()) return Purity::terminates;
    if (f.pc == Pc::d1 && f.iterations >= limit) break;
    auto r = hw_step(cur, t, mutant);
    if (r.status != StepStatus::ok) break;
    cur = std::move(r.next);
  }
  return cur.globals_equal(s) ? Purity::pure : Purity::violation;
}

std::optional<std::string> step_invariant_failure(const HWState& before, const HWState& after, std::size_t t) {
  if (after.back < before.back) return "back decreased";
  if (after.back > static_cast<std::int64_t>(after.capacity())) return "back exceeds capacity";
  for (std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(after.back, 0)); i < after.capacity(); ++i)
    if (after.items[i] != empty_slot) return "unreserved slot " + std::to_string(i) + " written";
  for (std::size_t i = 0; i < after.capacity(); ++i) {
    if (after.items[i] == before.items[i] || after.items[i] == empty_slot) continue;
    const ThreadFrame& f = before.frames[t];
    if (f.pc != Pc::e2 || f.i != static_cast<std::int64_t>(i))
      return "slot " + std::to_string(i) + " written by a thread that did not reserve it";
  }
  return std::nullopt;
}

}  // namespace qlin::hw
