#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "qlin/explorer.hpp"

namespace qlin {
namespace {

using namespace explore;
using hw::Mutant;
using hw::Op;

TEST(HwModel, EnqueueThenDequeue) {
  hw::HWState s = hw::hw_init({{"a", Op::enq(7)}, {"b", Op::deq()}}, 2);
  auto r = hw::hw_step(s, 0);
  EXPECT_EQ(r.label, "E1");
  EXPECT_EQ(r.boundary, hw::Boundary::entry);
  EXPECT_EQ(r.next.back, 1);
  r = hw::hw_step(r.next, 0);
  EXPECT_EQ(r.label, "E2");
  EXPECT_EQ(r.boundary, hw::Boundary::exit);
  EXPECT_EQ(r.next.items[0], 7);
  s = r.next;
  r = hw::hw_step(s, 1);
  EXPECT_EQ(r.label, "D1");
  r = hw::hw_step(r.next, 1);
  EXPECT_EQ(r.label, "D2");
  EXPECT_EQ(r.next.items[0], hw::empty_slot);
  r = hw::hw_step(r.next, 1);
  EXPECT_EQ(r.label, "return");
  EXPECT_EQ(r.value, Value{7});
  EXPECT_TRUE(r.next.all_done());
  EXPECT_EQ(hw::hw_step(r.next, 1).status, hw::StepStatus::done);
}

TEST(HwModel, InitValidation) {
  EXPECT_THROW(hw::hw_init({{"a", Op::enq(1)}, {"a", Op::deq()}}, 2), std::invalid_argument);
  EXPECT_THROW(hw::hw_init({{"a", Op::enq(1)}, {"b", Op::enq(2)}}, 1), std::invalid_argument);
}

TEST(HwModel, MutantNames) {
  for (Mutant m : hw::all_mutants()) EXPECT_EQ(hw::parse_mutant(hw::to_string(m)), m);
  EXPECT_FALSE(hw::parse_mutant("bogus"));
}

TEST(HwModel, NoSwapClearLeavesTheValue) {
  const hw::HWState s = replay({make_config(1, 1).threads, 4, 4, Mutant::no_swap_clear},
                               {{"t1", "E1"}, {"t1", "E2"}, {"t2", "D1"}, {"t2", "D2"}})
                            .final_state;
  EXPECT_EQ(s.items[0], 1);
}

TEST(HwModel, PurityOfAnEmptyScan) {
  // A dequeue alone on an empty queue spins without touching memory.
  hw::HWState s = hw::hw_init({{"d", Op::deq()}}, 2);
  s = hw::hw_step(s, 0).next;
  EXPECT_EQ(hw::purely_blocking_check(s, 0, 4), hw::Purity::pure);
  EXPECT_EQ(hw::purely_blocking_check(s, 0, 4, Mutant::tombstone_swap), hw::Purity::pure);

  // With a reserved slot the tombstone mutant writes.
  const Config cfg{{{"e", Op::enq(1)}, {"d", Op::deq()}}, 2, 4, Mutant::tombstone_swap};
  const auto tr = replay(cfg, {{"e", "E1"}, {"d", "D1"}});
  EXPECT_EQ(hw::purely_blocking_check(tr.final_state, 1, 4, Mutant::tombstone_swap), hw::Purity::violation);
  EXPECT_EQ(hw::purely_blocking_check(tr.final_state, 1, 4), hw::Purity::pure);
  EXPECT_EQ(hw::purely_blocking_check(tr.final_state, 0, 4), hw::Purity::terminates);
}

TEST(HwModel, InstrumentedDequeueOnlyReturnsItsValue) {
  const Config cfg{{{"a", Op::enq(1)}, {"b", Op::enq(2)}, {"d", Op::deq(2)}}, 2, 4, Mutant::none};
  const auto tr = replay(cfg, {{"a", "E1"}, {"a", "E2"}, {"b", "E1"}, {"b", "E2"}, {"d", "D1"}});
  EXPECT_EQ(hw::hw_step_instrumented(tr.final_state, 2, 2).status, hw::StepStatus::blocked);
  EXPECT_THROW(hw::hw_step_instrumented(tr.final_state, 0, 2), std::invalid_argument);
}

TEST(Explorer, TraceCountsForEnqueuersAlone) {
  // k enqueuers, two steps each: (2k)! / 2^k interleavings.
  EXPECT_EQ(enumerate_traces(make_config(1, 0), [](const ExecutionTrace&) { return true; }).traces, 1u);
  EXPECT_EQ(enumerate_traces(make_config(2, 0), [](const ExecutionTrace&) { return true; }).traces, 6u);
  EXPECT_EQ(enumerate_traces(make_config(3, 0), [](const ExecutionTrace&) { return true; }).traces, 90u);
  EXPECT_EQ(to_string(check_configuration(make_config(3, 0)).traces.total()), "90");
}

TEST(Explorer, ReplayRejectsWrongLabels) {
  const Config cfg = make_config(1, 1);
  EXPECT_THROW(replay(cfg, {{"t1", "E2"}}), std::invalid_argument);
  EXPECT_THROW(replay(cfg, {{"nobody", "E1"}}), std::invalid_argument);
  const auto tr = replay(cfg, {{"t1", "E1"}, {"t1", "E2"}, {"t2", "D1"}, {"t2", "D2"}, {"t2", "return"}});
  EXPECT_EQ(tr.ending, Ending::complete);
  EXPECT_EQ(to_schedule(tr).size(), 5u);
  EXPECT_EQ(serialize(induce_history(tr)), "inv 1 enq 1\nres 1 enq\ninv 2 deq\nres 2 deq 1\n");
}

// Serialized history with each run of adjacent responses sorted.
std::string response_class(const History& h) {
  std::string out;
  std::vector<std::string> run;
  auto flush = [&] {
    std::sort(run.begin(), run.end());
    for (const auto& l : run) out += l;
    run.clear();
  };
  for (const auto& a : h.actions()) {
    if (a.kind == ActionKind::response) {
      run.push_back(serialize(a) + "\n");
    } else {
      flush();
      out += serialize(a) + "\n";
    }
  }
  flush();
  return out;
}

// Merged and unmerged searches must see the same traces and the same histories.
TEST(Explorer, DedupMatchesPlainEnumeration) {
  for (auto [e, d] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    const Config cfg = make_config(e, d);
    std::set<std::string> histories;
    std::map<Ending, std::uint64_t> endings;
    enumerate_traces(cfg, [&](const ExecutionTrace& tr) {
      ++endings[tr.ending];
      if (tr.ending == Ending::complete) histories.insert(response_class(induce_history(tr)));
      return true;
    });
    ExploreOptions off;
    off.dedup = false;
    const Report plain = check_configuration(cfg, off);
    const Report merged = check_configuration(cfg);
    EXPECT_EQ(plain.traces.complete, endings[Ending::complete]);
    EXPECT_EQ(merged.traces.complete, plain.traces.complete);
    EXPECT_EQ(merged.traces.bound_hit, plain.traces.bound_hit);
    EXPECT_EQ(plain.histories, histories.size());
    EXPECT_TRUE(merged.clean());
    EXPECT_TRUE(plain.clean());
  }
}

TEST(Explorer, MutantFindingReplays) {
  Config cfg = make_config(1, 2);
  cfg.mutant = Mutant::no_swap_clear;
  ExploreOptions o;
  o.run_oracle = true;
  const Report r = check_configuration(cfg, o);
  ASSERT_FALSE(r.findings.empty());
  const Finding& f = r.findings.front();
  EXPECT_EQ(f.oracle_linearizable, std::optional<bool>{false});
  EXPECT_EQ(induce_history(replay(cfg, f.schedule)), f.history);
  EXPECT_NE(summary_line(r).find("violations"), std::string::npos);
}

// A plain dequeue's complete histories are exactly the union, over v, of the
// histories where it runs deq(v): the prophecy loses and adds nothing.
TEST(Explorer, ProphecyDequeueCoversPlainDequeue) {
  auto histories = [](const Config& cfg) {
    std::set<std::string> out;
    enumerate_traces(cfg, [&](const ExecutionTrace& tr) {
      if (tr.ending == Ending::complete) out.insert(serialize(induce_history(tr)));
      return true;
    });
    return out;
  };
  const std::vector<hw::ThreadSpec> base = {{"a", Op::enq(1)}, {"b", Op::enq(2)}};
  auto with = [&](Op op) {
    Config cfg{base, 2, 3, Mutant::none};
    cfg.threads.push_back({"d", op});
    return cfg;
  };
  const auto plain = histories(with(Op::deq()));
  std::set<std::string> joined;
  for (std::uint64_t v : {1, 2}) {
    const auto part = histories(with(Op::deq(v)));
    joined.insert(part.begin(), part.end());
  }
  EXPECT_FALSE(plain.empty());
  EXPECT_EQ(plain, joined);
}

TEST(Divergence, HarnessesPassAndMutantsFail) {
  EXPECT_TRUE(divergence_check_vrepet(7, 2, 1).pass);
  EXPECT_TRUE(divergence_check_vord(1).pass);
  DivergenceOptions o;
  o.mutant = Mutant::no_swap_clear;
  const auto r = divergence_check_vrepet(7, 2, 0, o);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.counterexample);
  EXPECT_NE(summary_line("vrepet", r).find("vrepet"), std::string::npos);
}

}  // namespace
}  // namespace qlin
