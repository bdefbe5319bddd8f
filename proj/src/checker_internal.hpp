#pragma once

// Index-based helpers shared by the checker sources. Events are addressed by
// their position in History::events(); `none` stands for an absent partner.

#include <vector>

#include "qlin/aspect_checker.hpp"

namespace qlin::detail {

inline constexpr std::size_t none = npos;

struct IndexMatch {
  std::vector<std::size_t> of_deq;  // deq index -> enq index or none
  std::vector<std::size_t> of_enq;  // enq index -> deq index or none (first one if several)
};

void require_complete(const History& c, const char* who);

IndexMatch to_index(const History& c, const MatchMapping& m);
MatchMapping to_mapping(const History& c, const IndexMatch& m);

/// Pairs each non-NULL dequeue with the enqueue of the same value. Meaningful
/// on differentiated histories; dequeues of never-enqueued values stay unmatched.
IndexMatch value_match(const History& c);

ClauseResult safe_index(const History& c, const IndexMatch& m);
ClauseResult ordered_index(const History& c, const IndexMatch& m);

/// Round in which each enqueue joins Bad(c_R, d_null), or none, where c_R keeps
/// only events flagged in `in` (all events when `in` is null).
std::vector<std::size_t> bad_levels(const History& c, const IndexMatch& m, std::size_t d_null,
                                    const std::vector<char>* in = nullptr);

/// Bad ∩ Before = ∅ for every NULL dequeue; assumes m is safe and ordered.
bool null_dequeues_justified(const History& c, const IndexMatch& m);

bool is_witness_index(const History& c, const IndexMatch& m);

Behavior linearize_index(const History& c, const IndexMatch& m);

/// death[e]: action position at which the dequeue removing e is invoked, or
/// npos. value_death uses the earliest dequeue returning e's value.
std::vector<std::size_t> value_death(const History& c);
std::vector<std::size_t> match_death(const History& c, const IndexMatch& m);

/// Alive enqueue at every split of the NULL dequeue dn's interval, if any.
std::optional<VWit> vwit_scan(const History& c, std::size_t dn, const std::vector<std::size_t>& death);

std::optional<std::vector<std::size_t>> covering_chain(const History& c, std::size_t dn,
                                                       const std::vector<std::size_t>& death);

}  // namespace qlin::detail
