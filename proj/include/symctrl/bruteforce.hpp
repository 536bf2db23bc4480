#pragma once

// Exponential ground-truth routines. They share no code with the matching and
// Hall machinery in structural.hpp and exist to cross-check it.

#include <cstdint>
#include <optional>
#include <vector>

#include "symctrl/numeric.hpp"
#include "symctrl/pattern.hpp"

namespace symctrl::oracle {

struct HallBruteforce {
    bool satisfied = true;
    /// Smallest violator, first in (size, lexicographic) order.
    std::optional<std::vector<Index>> violating_set;
};

/// Enumerates every subset of the right side by ascending size, then
/// lexicographically by position. Throws InputError if |right| > 20.
HallBruteforce hall_bruteforce(const BipartiteView& view);

/// Maximum matching size by exhaustive search over all matchings
/// (each right vertex takes an unused neighbour or stays single).
/// Throws InputError if |right| > 16.
Index matching_bruteforce(const BipartiteView& view);

/// Term rank of A by exhaustive search over row-to-column assignments
/// (permanent-style). Throws InputError if n > 12.
Index term_rank_bruteforce(const StructuredPattern& pattern);

enum class RankBlock {
    /// rows T of A
    a,
    /// rows T of [A, B]
    ab,
};

/// Largest numeric rank of C_T * block over `trials` sampled realizations
/// (trial i uses mix_seed(seed, i)). A lower bound on the generic rank that
/// equals it with probability one.
Index generic_rank_mc(const StructuredPattern& pattern, RankBlock block, const TargetSet& rows, Index trials = 20,
                      std::uint64_t seed = 0, const Tolerances& tol = {});

} // namespace symctrl::oracle
