#include "symctrl/bruteforce.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "symctrl/errors.hpp"

namespace symctrl::oracle {

namespace {

// Advances `comb` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<Index>& comb, Index n) {
    const Index k = comb.size();
    for (Index i = k; i-- > 0;) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (Index j = i + 1; j < k; ++j) {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

Index best_matching(const BipartiteView& view, Index r, std::vector<char>& used) {
    if (r == view.right_size()) {
        return 0;
    }
    Index best = best_matching(view, r + 1, used);
    for (Index l : view.neighbors(r)) {
        if (!used[l]) {
            used[l] = 1;
            best = std::max(best, 1 + best_matching(view, r + 1, used));
            used[l] = 0;
        }
    }
    return best;
}

} // namespace

HallBruteforce hall_bruteforce(const BipartiteView& view) {
    const Index n = view.right_size();
    if (n > 20) {
        throw InputError("hall_bruteforce: right side too large (" + std::to_string(n) + " > 20)");
    }
    std::vector<char> seen(view.left_size(), 0);
    for (Index k = 1; k <= n; ++k) {
        std::vector<Index> comb(k);
        std::iota(comb.begin(), comb.end(), Index{0});
        do {
            std::fill(seen.begin(), seen.end(), 0);
            Index neighbors = 0;
            for (Index r : comb) {
                for (Index l : view.neighbors(r)) {
                    if (!seen[l]) {
                        seen[l] = 1;
                        ++neighbors;
                    }
                }
            }
            if (neighbors < k) {
                std::vector<Index> states;
                for (Index r : comb) {
                    states.push_back(view.right()[r]);
                }
                return {false, states};
            }
        } while (next_combination(comb, n));
    }
    return {true, std::nullopt};
}

Index matching_bruteforce(const BipartiteView& view) {
    if (view.right_size() > 16) {
        throw InputError("matching_bruteforce: right side too large");
    }
    std::vector<char> used(view.left_size(), 0);
    return best_matching(view, 0, used);
}

Index term_rank_bruteforce(const StructuredPattern& pattern) {
    const Index n = pattern.n();
    if (n > 12) {
        throw InputError("term_rank_bruteforce: n too large");
    }
    // Every row either picks an unused star column or is left out; the
    // largest number of picked rows over all such selections.
    std::vector<char> used(n, 0);
    Index best = 0;
    auto search = [&](auto&& self, Index row, Index picked) -> void {
        if (picked + (n - row) <= best) {
            return;
        }
        if (row == n) {
            best = picked;
            return;
        }
        for (Index col = 0; col < n; ++col) {
            if (!used[col] && pattern.a_star(row, col)) {
                used[col] = 1;
                self(self, row + 1, picked + 1);
                used[col] = 0;
            }
        }
        self(self, row + 1, picked);
    };
    search(search, 0, 0);
    return best;
}

Index generic_rank_mc(const StructuredPattern& pattern, RankBlock block, const TargetSet& rows, Index trials,
                      std::uint64_t seed, const Tolerances& tol) {
    if (trials == 0) {
        throw InputError("generic_rank_mc: trials must be >= 1");
    }
    const Eigen::MatrixXd selector = target_selector(rows, pattern.n());
    Index best = 0;
    for (Index i = 0; i < trials; ++i) {
        const auto r = sample_realization(pattern, mix_seed(seed, i));
        Eigen::MatrixXd m;
        if (block == RankBlock::a) {
            m = selector * r.A;
        } else {
            Eigen::MatrixXd ab(r.A.rows(), r.A.cols() + r.B.cols());
            ab << r.A, r.B;
            m = selector * ab;
        }
        best = std::max(best, numeric_rank(m, tol));
        if (best == rows.size()) {
            break;
        }
    }
    return best;
}

} // namespace symctrl::oracle
