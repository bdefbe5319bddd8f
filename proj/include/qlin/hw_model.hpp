#pragma once

// Small-step interpreter for the Herlihy-Wing array queue:
//
//   enq(x):  E1  i <- INC(back)          deq():  loop
//            E2  items[i] <- x                     D1  range <- back - 1
//                                                  for i in 0..range
//                                                    D2  x <- SWAP(items[i], NULL)
//                                                        if x != NULL: return x
//
// Each labelled statement is one atomic step; a dequeue that read a value
// takes one more step ("return") to leave. Threads are addressed by index.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlin/history.hpp"

namespace qlin::hw {

enum class Mutant : std::uint8_t {
  none,
  no_swap_clear,   // D2 reads the slot but leaves it in place
  skip_slot_zero,  // the scan starts at slot 1
  nonatomic_enq,   // E1 split into a read of back and a separate write
  tombstone_swap,  // D2 on an empty slot leaves a marker behind
};

std::string_view to_string(Mutant m);
std::optional<Mutant> parse_mutant(std::string_view s);
const std::vector<Mutant>& all_mutants();

enum class OpKind : std::uint8_t {
  enq,
  deq,
  deq_prophecy,      // deq(v): may only return `value`
  enq_then_flag,     // enq(value); b <- true
  enq_after_flag,    // assume(b); enq(value)
};

struct Op {
  OpKind kind;
  std::uint64_t value = 0;  // enqueued value or prophecy; unused for plain deq

  static Op enq(std::uint64_t v) { return {OpKind::enq, v}; }
  static Op deq() { return {OpKind::deq, 0}; }
  static Op deq(std::uint64_t v) { return {OpKind::deq_prophecy, v}; }

  bool is_enq() const { return kind == OpKind::enq || kind == OpKind::enq_then_flag || kind == OpKind::enq_after_flag; }
  bool is_deq() const { return !is_enq(); }
  friend bool operator==(const Op&, const Op&) = default;
};

std::string to_string(const Op& op);

struct ThreadSpec {
  std::string name;
  Op op;
};

enum class Pc : std::uint8_t { assume_flag, e1, e1_write, e2, set_flag, d1, d2, deq_return, done };

struct ThreadFrame {
  Op op;
  Pc pc;
  std::int64_t i = 0;
  std::int64_t range = 0;
  std::int64_t x = 0;            // value read by D2 (or back read by a split E1)
  std::uint32_t iterations = 0;  // executions of D1
  bool invoked = false;

  /// Inside its operation: entered and not yet left.
  bool pending() const { return invoked && pc != Pc::set_flag && pc != Pc::done; }

  friend bool operator==(const ThreadFrame&, const ThreadFrame&) = default;
};

/// Slot contents: a value, empty, or the tombstone left by tombstone_swap.
inline constexpr std::int64_t empty_slot = -1;
inline constexpr std::int64_t tombstone = -2;

struct HWState {
  std::int64_t back = 0;
  std::vector<std::int64_t> items;  // one cell per slot, size = capacity
  std::vector<ThreadFrame> frames;
  bool flag = false;
  std::shared_ptr<const std::vector<std::string>> names;

  std::size_t capacity() const { return items.size(); }
  const std::string& name(std::size_t t) const { return (*names)[t]; }
  bool all_done() const;
  bool globals_equal(const HWState& o) const { return back == o.back && items == o.items && flag == o.flag; }
};

/// Throws std::invalid_argument on duplicate names or when capacity is smaller
/// than the number of enqueuing threads.
HWState hw_init(const std::vector<ThreadSpec>& threads, std::size_t capacity);

enum class StepStatus : std::uint8_t { ok, blocked, done, overflow };

/// Whether a step enters or leaves the operation, for history induction.
enum class Boundary : std::uint8_t { none, entry, exit };

struct StepResult {
  StepStatus status;
  HWState next;           // valid when status == ok
  std::string_view label;
  Boundary boundary = Boundary::none;
  Value value;            // enq argument on entry, deq result on exit
};

/// Executes one atomic step of thread t. blocked: no branch of the step is
/// enabled; done: t has finished; overflow: E1 would reserve a slot past capacity.
StepResult hw_step(const HWState& s, std::size_t t, Mutant mutant = Mutant::none);

/// hw_step for a thread running deq(v). Throws std::invalid_argument if t does
/// not run a dequeue with prophecy v.
StepResult hw_step_instrumented(const HWState& s, std::size_t t, std::uint64_t v, Mutant mutant = Mutant::none);

std::vector<std::size_t> enabled_threads(const HWState& s, Mutant mutant = Mutant::none);

enum class Purity : std::uint8_t { terminates, pure, violation };
std::string_view to_string(Purity p);

/// Runs thread t alone for at most loop_bound further D1 executions. pure: it
/// never got out and left back, items and the flag untouched.
/// Throws std::invalid_argument if t is not inside an operation.
Purity purely_blocking_check(const HWState& s, std::size_t t, std::uint32_t loop_bound,
                             Mutant mutant = Mutant::none);

/// Structural invariants of the unmutated model for a step of thread t from
/// `before` to `after`; returns a description of the first broken one.
std::optional<std::string> step_invariant_failure(const HWState& before, const HWState& after, std::size_t t);

}  // namespace qlin::hw
