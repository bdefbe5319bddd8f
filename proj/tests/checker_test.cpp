#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "naive_oracle.hpp"
#include "qlin/aspect_checker.hpp"
#include "qlin/generate.hpp"
#include "small_histories.hpp"

namespace qlin {
namespace {

History load(const std::string& name) {
  std::ifstream in(std::string(QLIN_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_history(ss.str());
}

MatchMapping match_of(const History& c) {
  const auto d = derive_match(c);
  EXPECT_EQ(d.status, MatchStatus::unique);
  return d.candidates.at(0);
}

TEST(Checker, FixtureVerdicts) {
  struct Case {
    const char* file;
    Outcome outcome;
    std::optional<ViolationKind> kind;
  };
  const std::vector<Case> cases = {
      {"example_pending.hist", Outcome::linearizable, {}},    {"example_complete.hist", Outcome::linearizable, {}},
      {"empty.hist", Outcome::linearizable, {}},       {"vfresh.hist", Outcome::violation, ViolationKind::vfresh},
      {"deq_only.hist", Outcome::violation, ViolationKind::vfresh},
      {"vrepet.hist", Outcome::violation, ViolationKind::vrepet},
      {"vord.hist", Outcome::violation, ViolationKind::vord},
      {"vwit.hist", Outcome::violation, ViolationKind::vwit},
  };
  for (const auto& c : cases) {
    const History h = load(c.file);
    const Verdict v = check_linearizable(h);
    EXPECT_EQ(v.outcome, c.outcome) << c.file;
    EXPECT_EQ(brute_force_linearizable(h), c.outcome == Outcome::linearizable) << c.file;
    if (c.kind) {
      ASSERT_FALSE(v.violations.empty()) << c.file;
      EXPECT_EQ(kind_of(v.violations.front()), *c.kind) << c.file;
    } else {
      ASSERT_TRUE(v.witness) << c.file;
      EXPECT_TRUE(is_linearization_of(*v.witness, *v.completion)) << c.file;
    }
  }
}

TEST(Checker, AllViolationsListsEveryDetector) {
  const History h = load("several.hist");
  EXPECT_EQ(check_linearizable(h).violations.size(), 1u);
  const Verdict v = check_linearizable(h, {.all_violations = true});
  ASSERT_EQ(v.violations.size(), 2u);
  EXPECT_EQ(to_line(v.violations[0]), "VIOLATION vrepet 2 3");
  EXPECT_EQ(to_line(v.violations[1]), "VIOLATION vwit 5 4");
}

TEST(Checker, ExampleWitnessOrder) {
  const History h = load("example_complete.hist");
  const Behavior s = check_linearizable(h).witness.value();
  EXPECT_EQ(to_string(s), "enq#1(1) enq#2(2) deq#3(1) deq#5(2) deq#4(null)");
}

TEST(Checker, DetectorEvidence) {
  EXPECT_EQ(to_line(*detect_vord(load("vord.hist"))), "VIOLATION vord 1 2 3");
  EXPECT_EQ(to_line(*detect_vrepet(load("vrepet.hist"))), "VIOLATION vrepet 2 3");
  EXPECT_FALSE(detect_vord(load("vrepet.hist")));
  EXPECT_FALSE(detect_vwit(load("example_complete.hist")));
  EXPECT_THROW(detect_vord(parse_history("inv 1 deq\n")), std::invalid_argument);
}

TEST(Checker, PendingHistoriesGoThroughCompletions) {
  // A pending dequeue invoked too late to take the value, and a pending
  // enqueue that must be kept.
  const History a = parse_history("inv 1 enq 1\nres 1 enq\ninv 3 deq\nres 3 deq null\ninv 2 deq\n");
  EXPECT_EQ(check_linearizable(a).outcome, Outcome::violation);
  const History b = parse_history("inv 1 enq 1\ninv 2 deq\nres 2 deq 1\n");
  const Verdict v = check_linearizable(b);
  EXPECT_EQ(v.outcome, Outcome::linearizable);
  EXPECT_TRUE(v.completion->is_complete());
  EXPECT_TRUE(is_linearization_of(*v.witness, *v.completion));
}

TEST(Checker, MatchDerivation) {
  EXPECT_EQ(derive_match(load("vfresh.hist")).status, MatchStatus::no_candidate);
  const History rep = parse_history(
      "inv 1 enq 5\nres 1 enq\ninv 2 enq 5\nres 2 enq\ninv 3 deq\nres 3 deq 5\ninv 4 deq\nres 4 deq 5\n");
  const auto d = derive_match(rep);
  EXPECT_EQ(d.status, MatchStatus::candidates);
  EXPECT_EQ(d.candidates.size(), 2u);
}

TEST(Checker, SafeOrderedAndBad) {
  const History h = load("vwit.hist");
  const MatchMapping m = match_of(h);
  EXPECT_TRUE(check_safe(h, m));
  EXPECT_TRUE(check_ordered(h, m));
  const BadSet bad = compute_bad(h, m, 2);
  EXPECT_EQ(bad.members, (std::set<Uid>{1}));
  EXPECT_EQ(bad.levels.back(), bad.members);
  EXPECT_FALSE(is_linearization_witness(h, m));
  EXPECT_FALSE(alt_witness_check(h, m, 2));
  EXPECT_TRUE(detect_pwit_covering(h, 2).has_value());

  const History o = load("vord.hist");
  EXPECT_FALSE(check_ordered(o, match_of(o)));
}

TEST(Checker, EnqOrderAndConstruction) {
  EXPECT_FALSE(load("example_pending.hist").is_complete());
  const History c = parse_history(
      "inv 1 enq 1\ninv 2 enq 2\nres 1 enq\nres 2 enq\ninv 3 deq\nres 3 deq 2\ninv 4 deq\nres 4 deq 1\n");
  const MatchMapping m = match_of(c);
  ASSERT_TRUE(is_linearization_witness(c, m));
  const EnqOrder o = enq_order(c, m);
  EXPECT_TRUE(o.less(2, 1));
  EXPECT_EQ(o.linear_extension(), (std::vector<Uid>{2, 1}));
  const Behavior s = construct_linearization(c, m);
  EXPECT_TRUE(is_legal(s));
  EXPECT_TRUE(is_linearization_of(s, c));
  EXPECT_THROW(construct_linearization(load("vord.hist"), match_of(load("vord.hist"))), std::invalid_argument);
}

// Regressions for the order in which maximal events are peeled off.
TEST(Checker, ConstructionPeelsUnmatchedEnqueueBeforeDequeue) {
  for (const char* text : {
           "inv 1 enq 1\ninv 2 enq 2\ninv 3 deq\nres 1 enq\ninv 4 deq\nres 2 enq\nres 3 deq 1\nres 4 deq null\n",
           "inv 1 enq 1\ninv 2 enq 2\nres 1 enq\ninv 3 deq\nres 2 enq\nres 3 deq 2\n",
       }) {
    const History c = parse_history(text);
    const Verdict v = check_linearizable(c);
    EXPECT_EQ(v.outcome == Outcome::linearizable, brute_force_linearizable(c)) << text;
    if (v.witness) EXPECT_TRUE(is_linearization_of(*v.witness, c)) << text;
  }
}

TEST(Checker, OracleAgreesWithNaiveSearchOnSmallHistories) {
  std::size_t n = 0;
  testing::for_each_small_history(2, 2, {1, 2}, [&](const History& c) {
    ++n;
    EXPECT_EQ(brute_force_linearizable(c), testing::naive_linearizable(c)) << serialize(c);
    return true;
  });
  EXPECT_EQ(n, testing::count_small_histories(2, 2, 2));
}

TEST(Checker, OracleAgreesWithNaiveSearchOnPendingHistories) {
  // Drop the last response of each generated history to get pending events.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const History h = generate_history(seed, 2, 2);
    auto acts = h.actions();
    while (!acts.empty() && acts.back().kind == ActionKind::response) {
      acts.pop_back();
      if (seed % 2) break;
    }
    const History p(acts);
    EXPECT_EQ(brute_force_linearizable(p), testing::naive_linearizable(p)) << serialize(p);
    EXPECT_EQ(check_linearizable(p).outcome == Outcome::linearizable, testing::naive_linearizable(p))
        << serialize(p);
  }
}

TEST(Checker, OracleBound) {
  std::string text;
  for (int i = 1; i <= 13; ++i) text += "inv " + std::to_string(i) + " deq\nres " + std::to_string(i) + " deq null\n";
  EXPECT_THROW(brute_force_check(parse_history(text)), BoundExceeded);
  EXPECT_TRUE(brute_force_check(parse_history(text), 13).linearizable);
}

TEST(Checker, NonDifferentiatedHistoryIsIndeterminateOrDecided) {
  const History rep = parse_history(
      "inv 1 enq 5\nres 1 enq\ninv 2 enq 5\nres 2 enq\ninv 3 deq\nres 3 deq 5\ninv 4 deq\nres 4 deq 5\n");
  const Verdict v = check_linearizable(rep);
  EXPECT_NE(v.outcome, Outcome::violation);
}

TEST(Generate, DeterministicDifferentiatedAndComplete) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const History h = generate_history(seed, 3, 3);
    EXPECT_EQ(h, generate_history(seed, 3, 3));
    EXPECT_TRUE(h.is_complete());
    EXPECT_TRUE(is_differentiated(h));
    EXPECT_EQ(h.events().size(), 6u);
  }
  EXPECT_NE(generate_history(1, 3, 3), generate_history(2, 3, 3));
}

}  // namespace
}  // namespace qlin
