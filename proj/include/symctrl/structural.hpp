#pragma once

// Combinatorial machinery: input reachability, maximum bipartite matching,
// Hall certificates, term rank and cycle covers.

#include <optional>
#include <vector>

#include "symctrl/pattern.hpp"

namespace symctrl {

/// Multi-source BFS from all input vertices.
struct Reachability {
    /// reached[i] for every state.
    std::vector<bool> reached;
    /// BFS parent of every reached state (an input for depth-1 states).
    std::vector<std::optional<Vertex>> parent;

    std::vector<Index> reachable_states() const;
    std::vector<Index> unreachable_states() const;
    /// Input-to-state path ending at `state` (empty if unreachable).
    std::vector<Vertex> path_to(Index state) const;
};

Reachability input_reachability(const SystemDigraph& digraph);

/// Sorted set of input-reachable states.
std::vector<Index> input_reachable(const SystemDigraph& digraph);

struct MatchedPair {
    Vertex left;
    Index right = 0; // a state index

    auto operator<=>(const MatchedPair&) const = default;
};

struct Matching {
    /// Sorted by right vertex.
    std::vector<MatchedPair> pairs;
    /// Right vertices (state indices) that no pair covers, ascending.
    std::vector<Index> right_unmatched;

    Index size() const noexcept { return pairs.size(); }
};

/// Maximum-cardinality matching by Hopcroft-Karp layered augmentation,
/// O(sqrt(V) E). Deterministic: adjacency is scanned in ascending order.
Matching max_matching(const BipartiteView& view);

struct HallCertificate {
    bool satisfied = true;
    /// Present iff !satisfied: right vertices S with |N(S)| < |S|.
    std::optional<std::vector<Index>> violating_set;
    /// N(S) of the violating set, for reporting.
    std::vector<Vertex> violating_neighbors;
    /// Present iff satisfied: a matching that saturates the right side.
    std::optional<Matching> saturating_matching;
    /// Maximum matching found either way.
    Matching matching;
};

/// Hall's condition on the right side of `view`. When it fails, the violating
/// set is the Konig set of the smallest right-unmatched vertex: every right
/// vertex reachable from it by alternating paths. The set is re-verified
/// before return. Several violators may exist; this one is reproducible, not
/// canonical.
HallCertificate hall_check(const BipartiteView& view);

/// True iff |N(S)| < |S| in `view` for the given set of states.
bool verifies_violation(const BipartiteView& view, const std::vector<Index>& states);

enum class TermRankScope { a_only, a_and_b };

/// Largest number of stars on distinct rows and columns of A (or [A, B]).
Index term_rank(const StructuredPattern& pattern, TermRankScope scope = TermRankScope::a_only);

/// Rows covered by a maximum row/column matching of A: a term-rank witness S
/// with |S| = t-rank(A). For symmetric A the principal restriction A[S, S]
/// always has full term rank, so S can be covered by disjoint cycles.
std::vector<Index> term_rank_rows(const StructuredPattern& pattern);

/// Vertex-disjoint cycles of D(A) covering a state set.
///
/// Each cycle lists its vertices in order with the closing edge implicit:
/// {a} is the self-loop (a, a), {a, b} the 2-cycle (a, b, a), and
/// {v0, ..., vk} the cycle v0 -> v1 -> ... -> vk -> v0.
struct CycleCover {
    std::vector<std::vector<Index>> cycles;

    std::vector<Index> covered() const;
    Index odd_cycle_count() const; // length >= 3 only
};

/// Disjoint cycles covering S, built from a perfect matching of A[S, S] read
/// as a permutation. For symmetric patterns even cycles are split into
/// 2-cycles along the reverse edges; an odd cycle keeps one unpaired vertex,
/// and is split as well when some vertex on it carries a self-loop.
///
/// Throws NoCycleCoverError (with a Hall violator inside S) if A[S, S] has
/// no perfect matching; InputError for out-of-range or repeated indices.
CycleCover cycle_cover(const StructuredPattern& pattern, const std::vector<Index>& states,
                       bool split_into_two_cycles = true);

/// Checks disjointness, exact coverage of `states` and that every
/// consecutive pair (including the closing pair) is an edge of D(A).
bool is_valid_cycle_cover(const StructuredPattern& pattern, const std::vector<Index>& states,
                          const CycleCover& cover);

} // namespace symctrl
