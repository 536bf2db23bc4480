#pragma once

// Graph-theoretic decision procedures for structural (target) controllability,
// numerical cross-validation and an input-augmentation heuristic.
//
// For a symmetric pattern, (A, B) is structurally target controllable w.r.t. T
// iff (1) every target state is input-reachable and (2) |N(S)| >= |S| for
// every S within the targets. T = all states is plain structural
// controllability. For general (directed) patterns both conditions remain
// necessary but are not sufficient; verdicts say so.

#include <cstdint>
#include <optional>
#include <vector>

#include "symctrl/numeric.hpp"
#include "symctrl/pattern.hpp"
#include "symctrl/structural.hpp"

namespace symctrl {

enum class Question { controllability, target_controllability };

enum class Certainty {
    /// The decision is an exact characterisation.
    exact,
    /// Pattern is not symmetric and both conditions hold: nothing refutes
    /// controllability, but nothing proves it either.
    necessary_only,
};

enum class Failure { none, unreachable, hall_violation };

struct MonteCarloSummary {
    Index trials = 0;
    std::uint64_t seed = 0;
    /// Rows of C_T Q (= |T|).
    Index target_rows = 0;
    /// Numeric rank observed in each trial, in trial order.
    std::vector<Index> ranks;
    Index agree = 0;
    double agreement = 0.0;
    /// Trials that only agreed after the tightened-tolerance re-check.
    std::vector<Index> rechecked;
    /// Trials that disagree with the structural verdict even after re-checking.
    std::vector<Index> anomalies;
    /// States removed before sampling (unreachable and unconnected to T).
    std::vector<Index> pruned_states;
    bool structural_decision = false;
    bool normalized_krylov = false;
};

struct Verdict {
    Question question = Question::controllability;
    TargetSet targets;
    bool decision = false;
    Certainty certainty = Certainty::exact;
    /// First failing condition; reachability is reported before Hall.
    Failure failure = Failure::none;
    Reachability reachability;
    /// Target states with no input path.
    std::vector<Index> unreachable_targets;
    HallCertificate hall;
    std::optional<MonteCarloSummary> numeric_agreement;
};

/// Condition check over all states.
Verdict is_structurally_controllable(const StructuredPattern& pattern);

/// Condition check over the target states. Throws InputError for an empty
/// target set or one that does not fit the pattern.
Verdict is_structurally_target_controllable(const StructuredPattern& pattern, const TargetSet& targets);

struct MonteCarloOptions {
    Index trials = 20;
    std::uint64_t seed = 0;
    Tolerances tol{};
    SamplerConfig sampler{};
    /// 0 = std::thread::hardware_concurrency().
    unsigned threads = 1;
    /// Use the column-normalised Krylov matrix for rank decisions. Switched
    /// on automatically above 20 states.
    bool normalized_krylov = false;
};

/// Samples `trials` realizations (trial i uses seed mix_seed(seed, i)) and
/// compares full row rank of C_T Q with the structural verdict. A TRUE
/// verdict contradicted by a trial is re-checked once at rank_rel * 1e-2;
/// persistent disagreements are listed as anomalies. Results do not depend on
/// the thread count.
MonteCarloSummary monte_carlo_verify(const StructuredPattern& pattern, const std::optional<TargetSet>& targets,
                                     const MonteCarloOptions& options = {});

/// States kept for numeric cross-validation: input-reachable states plus any
/// state connected (in either direction) to a target. Sorted.
std::vector<Index> relevant_states(const StructuredPattern& pattern, const TargetSet& targets);

/// A new input u_{input+1} wired to state `state`.
struct Attachment {
    Index input = 0;
    Index state = 0;

    auto operator<=>(const Attachment&) const = default;
};

/// Greedy augmentation: while a target is unreachable, wire a new input to
/// the smallest unreachable target (preferring right-unmatched ones); then
/// wire a new input to every right-unmatched target of a maximum matching.
/// Input numbers continue after pattern.m(). The result is sufficient but
/// not necessarily minimum.
std::vector<Attachment> suggest_input_augmentation(const StructuredPattern& pattern, const TargetSet& targets);

/// pattern with the attachments added as new input columns.
StructuredPattern apply_augmentation(const StructuredPattern& pattern, const std::vector<Attachment>& attachments);

} // namespace symctrl
