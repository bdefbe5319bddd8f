#pragma once

#include <cstddef>
#include <cstdint>

#include "qlin/history.hpp"

namespace qlin {

/// A pseudo-random complete differentiated history with n_enq enqueues of the
/// values 1..n_enq and n_deq dequeues. Deterministic per seed on every platform.
///
/// Half of the seeds start from an atomic queue run and stretch each event
/// around its position in it, so the result is linearizable unless one
/// dequeue result is then rewritten. The rest draw dequeue results uniformly
/// from the enqueued values and NULL.
History generate_history(std::uint64_t seed, std::size_t n_enq, std::size_t n_deq);

}  // namespace qlin
