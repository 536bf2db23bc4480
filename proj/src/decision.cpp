#include "symctrl/decision.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <string>
#include <thread>

#include "symctrl/errors.hpp"

namespace symctrl {

namespace {

Verdict decide(const StructuredPattern& pattern, const TargetSet& targets, Question question) {
    if (targets.empty()) {
        throw InputError("target set must not be empty");
    }
    if (targets.indices().back() >= pattern.n()) {
        throw InputError("target " + std::to_string(targets.indices().back() + 1) + " out of range for n = " +
                         std::to_string(pattern.n()));
    }
    const SystemDigraph digraph(pattern);
    Verdict v;
    v.question = question;
    v.targets = targets;
    v.reachability = input_reachability(digraph);
    for (Index t : targets.indices()) {
        if (!v.reachability.reached[t]) {
            v.unreachable_targets.push_back(t);
        }
    }
    v.hall = hall_check(bipartite_view(digraph, targets.indices()));
    v.decision = v.unreachable_targets.empty() && v.hall.satisfied;
    if (!v.unreachable_targets.empty()) {
        v.failure = Failure::unreachable;
    } else if (!v.hall.satisfied) {
        v.failure = Failure::hall_violation;
    }
    v.certainty = (v.decision && !pattern.is_symmetric()) ? Certainty::necessary_only : Certainty::exact;
    return v;
}

// Marks every state reachable from `seeds` along edges (forward) or against them.
void flood(const SystemDigraph& digraph, std::vector<char>& mark, const std::vector<Index>& seeds, bool forward) {
    std::deque<Index> queue;
    for (Index s : seeds) {
        queue.push_back(s);
    }
    std::vector<char> done(digraph.n(), 0);
    while (!queue.empty()) {
        const Index x = queue.front();
        queue.pop_front();
        if (done[x]) {
            continue;
        }
        done[x] = 1;
        mark[x] = 1;
        if (forward) {
            for (Index y : digraph.out_neighbors(Vertex::state(x))) {
                if (!done[y]) {
                    queue.push_back(y);
                }
            }
        } else {
            for (const auto& v : digraph.in_neighbors(x)) {
                if (v.is_state() && !done[v.index]) {
                    queue.push_back(v.index);
                }
            }
        }
    }
}

} // namespace

Verdict is_structurally_controllable(const StructuredPattern& pattern) {
    return decide(pattern, TargetSet::all(pattern.n()), Question::controllability);
}

Verdict is_structurally_target_controllable(const StructuredPattern& pattern, const TargetSet& targets) {
    return decide(pattern, targets, Question::target_controllability);
}

std::vector<Index> relevant_states(const StructuredPattern& pattern, const TargetSet& targets) {
    const SystemDigraph digraph(pattern);
    std::vector<char> keep(pattern.n(), 0);
    const auto reach = input_reachability(digraph);
    for (Index i = 0; i < pattern.n(); ++i) {
        keep[i] = reach.reached[i] ? 1 : 0;
    }
    flood(digraph, keep, targets.indices(), true);
    flood(digraph, keep, targets.indices(), false);
    std::vector<Index> out;
    for (Index i = 0; i < pattern.n(); ++i) {
        if (keep[i]) {
            out.push_back(i);
        }
    }
    return out;
}

MonteCarloSummary monte_carlo_verify(const StructuredPattern& pattern, const std::optional<TargetSet>& targets,
                                     const MonteCarloOptions& options) {
    if (options.trials == 0) {
        throw InputError("monte_carlo_verify: trials must be >= 1");
    }
    const TargetSet all_targets = targets ? *targets : TargetSet::all(pattern.n());
    const Verdict verdict = targets ? is_structurally_target_controllable(pattern, all_targets)
                                    : is_structurally_controllable(pattern);

    const auto kept = relevant_states(pattern, all_targets);
    std::vector<Index> position(pattern.n(), pattern.n());
    for (Index k = 0; k < kept.size(); ++k) {
        position[kept[k]] = k;
    }
    std::vector<Index> reduced_targets;
    for (Index t : all_targets.indices()) {
        reduced_targets.push_back(position[t]);
    }
    const StructuredPattern reduced = pattern.induced(kept);
    const Eigen::MatrixXd selector = target_selector(TargetSet(reduced_targets, kept.size()), kept.size());

    MonteCarloSummary summary;
    summary.trials = options.trials;
    summary.seed = options.seed;
    summary.target_rows = all_targets.size();
    summary.structural_decision = verdict.decision;
    summary.normalized_krylov = options.normalized_krylov || kept.size() > 20;
    for (Index i = 0; i < pattern.n(); ++i) {
        if (position[i] == pattern.n()) {
            summary.pruned_states.push_back(i);
        }
    }

    enum class Outcome { agree, rechecked, anomaly };
    std::vector<Index> ranks(options.trials, 0);
    std::vector<Outcome> outcomes(options.trials, Outcome::agree);
    Tolerances tight = options.tol;
    tight.rank_rel *= 1e-2;

    auto run_trial = [&](Index i) {
        const auto r = sample_realization(reduced, mix_seed(options.seed, i), options.sampler);
        const Eigen::MatrixXd cq = selector * (summary.normalized_krylov ? controllability_matrix_normalized(r.A, r.B)
                                                                        : controllability_matrix(r.A, r.B));
        ranks[i] = numeric_rank(cq, options.tol);
        const bool full = ranks[i] == summary.target_rows;
        if (full == verdict.decision) {
            outcomes[i] = Outcome::agree;
        } else if (verdict.decision && numeric_rank(cq, tight) == summary.target_rows) {
            outcomes[i] = Outcome::rechecked;
        } else {
            outcomes[i] = Outcome::anomaly;
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<Index>(threads, options.trials));
    if (threads <= 1) {
        for (Index i = 0; i < options.trials; ++i) {
            run_trial(i);
        }
    } else {
        std::atomic<Index> next{0};
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (Index i = next++; i < options.trials; i = next++) {
                        run_trial(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    summary.ranks = std::move(ranks);
    for (Index i = 0; i < options.trials; ++i) {
        switch (outcomes[i]) {
        case Outcome::agree:
            ++summary.agree;
            break;
        case Outcome::rechecked:
            ++summary.agree;
            summary.rechecked.push_back(i);
            break;
        case Outcome::anomaly:
            summary.anomalies.push_back(i);
            break;
        }
    }
    summary.agreement = static_cast<double>(summary.agree) / static_cast<double>(options.trials);
    return summary;
}

StructuredPattern apply_augmentation(const StructuredPattern& pattern, const std::vector<Attachment>& attachments) {
    Index m = pattern.m();
    std::vector<Entry> inputs = pattern.b_entries();
    for (const auto& a : attachments) {
        m = std::max(m, a.input + 1);
        inputs.push_back({a.state, a.input});
    }
    return pattern.with_inputs(m, inputs);
}

std::vector<Attachment> suggest_input_augmentation(const StructuredPattern& pattern, const TargetSet& targets) {
    std::vector<Attachment> out;
    if (targets.empty()) {
        return out;
    }
    if (targets.indices().back() >= pattern.n()) {
        throw InputError("target out of range");
    }
    StructuredPattern current = pattern;
    // Each step either reaches a new state or grows the matching, so 2|T| steps suffice.
    for (Index step = 0; step <= 2 * targets.size(); ++step) {
        const SystemDigraph digraph(current);
        const auto reach = input_reachability(digraph);
        const auto matching = max_matching(bipartite_view(digraph, targets.indices()));
        std::vector<Index> unreachable;
        for (Index t : targets.indices()) {
            if (!reach.reached[t]) {
                unreachable.push_back(t);
            }
        }
        std::optional<Index> pick;
        if (!unreachable.empty()) {
            for (Index t : unreachable) {
                if (std::binary_search(matching.right_unmatched.begin(), matching.right_unmatched.end(), t)) {
                    pick = t;
                    break;
                }
            }
            if (!pick) {
                pick = unreachable.front();
            }
        } else if (!matching.right_unmatched.empty()) {
            pick = matching.right_unmatched.front();
        } else {
            return out;
        }
        out.push_back({current.m(), *pick});
        current = apply_augmentation(current, {out.back()});
    }
    throw NumericError("suggest_input_augmentation: did not converge");
}

} // namespace symctrl
