#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>

#include "qlin/behavior.hpp"

namespace qlin {

/// State of the atomic queue: values from head to tail.
struct QueueState {
  std::deque<std::uint64_t> items;
  friend bool operator==(const QueueState&, const QueueState&) = default;
};

/// One transition of the atomic queue; nullopt when the event is rejected.
std::optional<QueueState> lts_step(const QueueState& q, const QueueEvent& a);

bool is_legal(const Behavior& b);

/// Dequeue uid -> enqueue uid, or nullopt for a dequeue mapped to nothing.
using SequentialWitness = std::map<Uid, std::optional<Uid>>;

struct WitnessCheck {
  bool ok = true;
  int failed_clause = 0;  // 1..6 when !ok
};

/// Checks the six witness clauses in order and reports the first that fails.
/// Throws std::invalid_argument when mu is not total on the dequeues of b.
WitnessCheck check_sequential_witness(const Behavior& b, const SequentialWitness& mu);

enum class SearchStatus { found, none, indeterminate };

struct WitnessSearch {
  SearchStatus status = SearchStatus::none;
  std::optional<SequentialWitness> witness;
};

inline constexpr std::size_t default_candidate_bound = 10000;

/// The candidate is forced when all enqueued values are distinct; otherwise
/// value-respecting injections are tried until `bound` candidates were examined.
WitnessSearch find_sequential_witness(const Behavior& b,
                                      std::size_t bound = default_candidate_bound);

bool is_canonical(const Behavior& b);

/// Equal enqueue value sequences and equal dequeue value sequences.
bool obs_equiv(const Behavior& b1, const Behavior& b2);

/// The canonical behavior obtained by pairing each dequeue with its witness
/// enqueue. Throws std::invalid_argument if mu is not a witness for b.
Behavior canonicalize(const Behavior& b, const SequentialWitness& mu);

}  // namespace qlin
