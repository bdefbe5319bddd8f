#pragma once

// Exhaustive schedule enumeration over the array-queue model, history
// induction from traces, and the bounded non-termination harnesses.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qlin/aspect_checker.hpp"
#include "qlin/history.hpp"
#include "qlin/hw_model.hpp"

namespace qlin::explore {

struct Config {
  std::vector<hw::ThreadSpec> threads;
  std::size_t capacity = 4;
  std::uint32_t loop_bound = 4;  // D1 executions allowed per dequeue thread
  hw::Mutant mutant = hw::Mutant::none;
};

/// Throws std::invalid_argument unless names are distinct, loop_bound > 0 and
/// the capacity covers the enqueuers.
void validate(const Config& cfg);

/// Threads named t1, t2, ... running enq(values[i]) for the first n_enq and
/// plain deq() for the remaining n_deq. values defaults to 1..n_enq.
Config make_config(std::size_t n_enq, std::size_t n_deq, std::vector<std::uint64_t> values = {});

struct TraceStep {
  std::size_t thread;
  std::string label;
  hw::Boundary boundary = hw::Boundary::none;
  Method method = Method::enq;  // of the thread's operation
  Value value;                  // enq argument on entry, deq result on exit

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// How a maximal trace ends. complete: every thread finished; bound_hit: only
/// dequeues out of loop iterations remain; blocked: nothing can move
/// (instrumented dequeue stuck, unmet assume); overflow: an enqueue ran out of
/// slots. open: some thread could still move.
enum class Ending : std::uint8_t { complete, bound_hit, blocked, overflow, open };
std::string_view to_string(Ending e);

struct ExecutionTrace {
  std::vector<TraceStep> steps;
  hw::HWState final_state;
  Ending ending = Ending::complete;
};

/// `<thread>:<label>` per line.
std::string dump_schedule(const std::vector<TraceStep>& steps, const hw::HWState& s);

/// Entry steps become invocations, exit steps responses; uids count entries from 1.
History induce_history(const std::vector<TraceStep>& steps);
inline History induce_history(const ExecutionTrace& tr) { return induce_history(tr.steps); }

/// Schedule entries are (thread name, label); labels are checked against the
/// step actually taken. Throws std::invalid_argument if the schedule cannot run.
using Schedule = std::vector<std::pair<std::string, std::string>>;
ExecutionTrace replay(const Config& cfg, const Schedule& schedule);
Schedule to_schedule(const ExecutionTrace& tr);

struct EnumerateOptions {
  std::size_t max_traces = 0;  // 0: unlimited
};

struct EnumerateSummary {
  std::uint64_t traces = 0;
  bool partial = false;  // stopped at max_traces or by the callback
};

/// Depth-first over every schedule extending `prefix`, without state merging.
/// The callback returns false to stop.
EnumerateSummary enumerate_traces(const Config& cfg, const std::function<bool(const ExecutionTrace&)>& visit,
                                  const EnumerateOptions& options = {}, const Schedule& prefix = {});

/// Schedule counts overflow 64 bits already at three enqueuers and three dequeuers.
using Count = unsigned __int128;
std::string to_string(Count c);

struct TraceCounts {
  Count complete = 0, bound_hit = 0, blocked = 0, overflow = 0;  // saturating

  Count total() const;
  TraceCounts& operator+=(const TraceCounts& o);
};

struct Finding {
  Schedule schedule;
  History history;
  std::vector<Violation> violations;
  std::optional<bool> oracle_linearizable;  // when the oracle was run
};

struct PurityFinding {
  Schedule schedule;
  std::string thread;
};

/// With dedup on, the search runs twice. The first pass merges schedules that
/// reach the same model state (up to swapping threads that run the same
/// operation); it counts traces and runs the per-state checks. The second pass
/// also keeps the history induced so far, up to the order of responses between
/// two invocations, and visits only states from which some schedule completes.
/// Verdicts do not depend on the forgotten response order.
struct ExploreOptions {
  bool dedup = true;
  bool run_oracle = false;     // also run the brute-force oracle on each complete history
  bool check_purity = false;   // isolation run of every pending thread in every state
  bool check_invariants = true;  // step invariants when the mutant is none
  std::size_t max_states = 50'000'000;
};

struct Report {
  TraceCounts traces;                  // maximal schedules, exact even when merged
  std::uint64_t states = 0;            // distinct model states (nodes when not merging)
  std::uint64_t history_states = 0;    // nodes of the history pass
  std::uint64_t histories = 0;         // distinct complete induced histories, as above
  std::uint64_t oracle_checked = 0;
  std::uint64_t oracle_disagreements = 0;
  std::uint64_t purity_checks = 0;
  std::vector<PurityFinding> purity_violations;
  std::vector<std::string> invariant_failures;
  std::vector<Finding> findings;       // one per distinct violating history
  bool partial = false;

  bool clean() const { return findings.empty() && purity_violations.empty() && invariant_failures.empty(); }
};

Report check_configuration(const Config& cfg, const ExploreOptions& options = {});

/// `EXPLORE clean|violations ...` summary line.
std::string summary_line(const Report& r);

struct DivergenceOptions {
  std::uint32_t loop_bound = 4;
  std::size_t capacity = 0;  // 0: one slot per enqueuing thread
  hw::Mutant mutant = hw::Mutant::none;
  std::size_t max_states = 50'000'000;
};

struct DivergenceReport {
  bool pass = true;
  std::uint64_t programs = 0;   // choice-thread assignments explored
  std::uint64_t states = 0;
  TraceCounts traces;
  std::uint64_t max_terminated = 0;      // most target dequeues finished on one path
  std::uint64_t invariant_states = 0;    // states where the slot-order invariant was checked
  std::uint64_t invariant_failures = 0;
  std::optional<Schedule> counterexample;
  std::optional<History> counterexample_history;
  std::vector<hw::ThreadSpec> counterexample_threads;
  bool partial = false;
};

/// One enq(v), m threads running deq(v), and k threads each running one of
/// enq(x) / deq(x) for x in {8, 9}. Fails when two deq(v) threads finish.
DivergenceReport divergence_check_vrepet(std::uint64_t v, std::size_t m, std::size_t k,
                                         const DivergenceOptions& options = {});

/// deq(v2) alongside (enq(v1); b <- true) and k threads each running one of
/// assume(b);enq(v2) / enq(x) for x in {v1, 8, 9} / deq(x) for x in {v2, 8, 9}.
/// Fails when the first deq(v2) finishes. Once enq(v1) has finished, every
/// state must hold v1 in some slot below back with no v2 in a lower slot.
DivergenceReport divergence_check_vord(std::size_t k, const DivergenceOptions& options = {},
                                       std::uint64_t v1 = 1, std::uint64_t v2 = 2);

std::string summary_line(std::string_view harness, const DivergenceReport& r);

}  // namespace qlin::explore
