#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qlin/behavior.hpp"
#include "qlin/history.hpp"
#include "qlin/queue_spec.hpp"

namespace qlin {

/// Dequeue uid -> enqueue uid whose value it removed, or nullopt for a NULL dequeue.
using MatchMapping = std::map<Uid, std::optional<Uid>>;

enum class MatchStatus { unique, candidates, no_candidate, bound_exceeded };

struct MatchDerivation {
  MatchStatus status = MatchStatus::no_candidate;
  std::vector<MatchMapping> candidates;
};

/// Value-respecting injective mappings for a complete history. A differentiated
/// history has at most one; otherwise up to `bound` candidates are listed.
MatchDerivation derive_match(const History& c, std::size_t bound = default_candidate_bound);

struct ClauseResult {
  bool ok = true;
  int failed_clause = 0;
  explicit operator bool() const { return ok; }
};

// The mapping arguments below must be total on the dequeues of c and map only
// to enqueues of c; std::invalid_argument otherwise. c must be complete.
ClauseResult check_safe(const History& c, const MatchMapping& match);
ClauseResult check_ordered(const History& c, const MatchMapping& match);

struct BadSet {
  std::set<Uid> members;
  /// levels[i]: enqueues that entered the set within i rounds; levels.back() == members.
  std::vector<std::set<Uid>> levels;
};

/// Enqueues after whose completion d_null can no longer observe an empty queue.
BadSet compute_bad(const History& c, const MatchMapping& match, Uid d_null);

/// Safe, ordered, and Bad ∩ Before empty for every NULL dequeue.
bool is_linearization_witness(const History& c, const MatchMapping& match);

/// Decides Bad ∩ Before = ∅ for d_null via downward-closed event sets that
/// stay clear of everything after d_null.
bool alt_witness_check(const History& c, const MatchMapping& match, Uid d_null);

class EnqOrderCycle : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Transitive order over the enqueues induced by precedence and the mapping.
class EnqOrder {
 public:
  EnqOrder(std::vector<Uid> enqueues, std::vector<std::vector<bool>> closure);

  const std::vector<Uid>& enqueues() const { return enqueues_; }
  bool less(Uid a, Uid b) const;
  /// Total order extending the relation; ties go to the lower uid.
  std::vector<Uid> linear_extension() const;

 private:
  std::size_t pos(Uid u) const;
  std::vector<Uid> enqueues_;
  std::vector<std::vector<bool>> closure_;
};

/// Throws EnqOrderCycle if the generated relation is cyclic.
EnqOrder enq_order(const History& c, const MatchMapping& match);

/// A legal behavior that permutes c and respects its precedence, built by
/// peeling maximal events off the end. Throws std::invalid_argument unless
/// `match` is a linearization witness for complete c.
Behavior construct_linearization(const History& c, const MatchMapping& match);

struct VFresh {
  Uid deq;
  std::optional<Uid> enq;  // an enqueue of the same value that deq precedes, if any
  friend bool operator==(const VFresh&, const VFresh&) = default;
};
struct VRepet {
  Uid first;
  Uid second;
  friend bool operator==(const VRepet&, const VRepet&) = default;
};
/// e1 precedes e2, d2 removes e2's value, and d1 (e1's dequeue) is absent or after d2.
struct VOrd {
  Uid e1;
  Uid e2;
  Uid d2;
  std::optional<Uid> d1;
  friend bool operator==(const VOrd&, const VOrd&) = default;
};
/// For each action position inside d_null's interval, an enqueue that is
/// completed there and whose dequeue has not been invoked yet.
struct VWit {
  Uid deq;
  std::vector<Uid> alive_per_split;
  friend bool operator==(const VWit&, const VWit&) = default;
};

using Violation = std::variant<VFresh, VRepet, VOrd, VWit>;

enum class ViolationKind { vfresh, vrepet, vord, vwit };

ViolationKind kind_of(const Violation& v);
std::string_view to_string(ViolationKind k);
/// "VIOLATION <kind> <evidence uids>".
std::string to_line(const Violation& v);

// Value-based detectors over a complete history (std::invalid_argument otherwise).
std::optional<Violation> detect_vfresh(const History& c);
std::optional<Violation> detect_vrepet(const History& c);
std::optional<Violation> detect_vord(const History& c);
std::optional<Violation> detect_vwit(const History& c);
/// Every instance found by the four detectors, in detector order.
std::vector<Violation> detect_all(const History& c);

struct Covering {
  std::vector<Uid> chain;
};

/// A chain of enqueues that keeps the queue non-empty throughout d_null.
std::optional<Covering> detect_pwit_covering(const History& c, Uid d_null);

enum class Outcome { linearizable, violation, indeterminate };

std::string_view to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::indeterminate;
  std::optional<Behavior> witness;
  std::vector<Violation> violations;
  std::string reason;
  /// The completion the verdict refers to (c itself when complete).
  std::optional<History> completion;
};

struct CheckOptions {
  bool all_violations = false;
  std::size_t candidate_bound = default_candidate_bound;
};

Verdict check_linearizable(const History& c, const CheckOptions& options = {});

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_oracle_events = 12;

struct OracleResult {
  bool linearizable = false;
  std::optional<Behavior> witness;
  std::optional<History> completion;
};

/// Exhaustive search for a legal precedence-respecting ordering of some
/// completion. Throws BoundExceeded when c has more than max_events events.
OracleResult brute_force_check(const History& c, std::size_t max_events = default_oracle_events);
bool brute_force_linearizable(const History& c, std::size_t max_events = default_oracle_events);

/// True iff s orders some completion of c without breaking precedence and is legal.
bool is_linearization_of(const Behavior& s, const History& completion);

}  // namespace qlin
