#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "symctrl/bruteforce.hpp"
#include "symctrl/errors.hpp"
#include "symctrl/structural.hpp"

using namespace symctrl;
using symctrl::testing::example_pattern;
using symctrl::testing::zero_based;

namespace {

// Plain recursive DFS from every input, independent of the BFS under test.
std::vector<bool> dfs_reach(const StructuredPattern& p) {
    std::vector<bool> seen(p.n(), false);
    auto visit = [&](auto&& self, Index x) -> void {
        if (seen[x]) {
            return;
        }
        seen[x] = true;
        for (Index y = 0; y < p.n(); ++y) {
            if (p.a_star(y, x)) {
                self(self, y);
            }
        }
    };
    for (const auto& e : p.b_entries()) {
        visit(visit, e.row);
    }
    return seen;
}

bool is_matching(const BipartiteView& view, const Matching& m) {
    std::set<Vertex> lefts;
    std::set<Index> rights;
    for (const auto& pair : m.pairs) {
        const auto pos = std::find(view.right().begin(), view.right().end(), pair.right) - view.right().begin();
        if (pos == static_cast<long>(view.right_size())) {
            return false;
        }
        const auto& nb = view.neighbors(pos);
        if (!std::binary_search(nb.begin(), nb.end(), view.left_id(pair.left))) {
            return false;
        }
        if (!lefts.insert(pair.left).second || !rights.insert(pair.right).second) {
            return false;
        }
    }
    return m.pairs.size() + m.right_unmatched.size() == view.right_size();
}

} // namespace

TEST(Reachability, ExampleIsFullyReachable) {
    const SystemDigraph d(example_pattern());
    const auto r = input_reachability(d);
    EXPECT_TRUE(r.unreachable_states().empty());
    EXPECT_EQ(r.path_to(7), (std::vector<Vertex>{Vertex::input(1), Vertex::state(4), Vertex::state(6),
                                                 Vertex::state(8), Vertex::state(7)}));
    EXPECT_EQ(r.path_to(1), (std::vector<Vertex>{Vertex::input(0), Vertex::state(1)}));
}

TEST(Reachability, IsolatedStateIsUnreachable) {
    const auto p = StructuredPattern::symmetric(3, 1, {{0, 1}}, {{0, 0}});
    const auto r = input_reachability(SystemDigraph(p));
    EXPECT_EQ(r.unreachable_states(), (std::vector<Index>{2}));
    EXPECT_TRUE(r.path_to(2).empty());
    EXPECT_EQ(input_reachable(SystemDigraph(p)), (std::vector<Index>{0, 1}));
}

TEST(Reachability, AgreesWithDfsAndPathsAreWalks) {
    symctrl::testing::Rng rng(3);
    for (int k = 0; k < 300; ++k) {
        const auto p = k % 2 ? symctrl::testing::random_general_pattern(rng, 1 + k % 9, k % 3, 0.25, 0.2)
                             : symctrl::testing::random_symmetric_pattern(rng, 1 + k % 9, k % 3, 0.25, 0.2);
        const SystemDigraph d(p);
        const auto r = input_reachability(d);
        const auto expected = dfs_reach(p);
        for (Index x = 0; x < p.n(); ++x) {
            ASSERT_EQ(r.reached[x], expected[x]);
            const auto path = r.path_to(x);
            if (!expected[x]) {
                continue;
            }
            ASSERT_FALSE(path.empty());
            EXPECT_FALSE(path.front().is_state());
            EXPECT_EQ(path.back(), Vertex::state(x));
            for (Index s = 1; s < path.size(); ++s) {
                EXPECT_TRUE(d.has_edge(path[s - 1], path[s].index));
            }
        }
    }
}

TEST(Hall, ExampleAllStatesViolated) {
    const SystemDigraph d(example_pattern());
    const auto view = bipartite_view(d, TargetSet::all(10).indices());
    const auto h = hall_check(view);
    EXPECT_FALSE(h.satisfied);
    ASSERT_TRUE(h.violating_set.has_value());
    EXPECT_EQ(*h.violating_set, zero_based({8, 10}));
    EXPECT_EQ(h.violating_neighbors, (std::vector<Vertex>{Vertex::state(8)}));
    EXPECT_EQ(h.matching.size(), 9u);
    EXPECT_FALSE(h.saturating_matching.has_value());
    EXPECT_TRUE(verifies_violation(view, *h.violating_set));
    EXPECT_TRUE(is_matching(view, h.matching));
}

TEST(Hall, ExampleTargetsSatisfied) {
    const SystemDigraph d(example_pattern());
    const auto view = bipartite_view(d, zero_based({2, 6, 8}));
    const auto h = hall_check(view);
    EXPECT_TRUE(h.satisfied);
    ASSERT_TRUE(h.saturating_matching.has_value());
    EXPECT_EQ(h.saturating_matching->size(), 3u);
    EXPECT_TRUE(h.saturating_matching->right_unmatched.empty());
    EXPECT_TRUE(is_matching(view, *h.saturating_matching));
}

TEST(Hall, EmptyRightSide) {
    const SystemDigraph d(example_pattern());
    EXPECT_TRUE(hall_check(bipartite_view(d, {})).satisfied);
}

TEST(Hall, CompleteK22) {
    const BipartiteView view(2, 0, {0, 1}, {{0, 1}, {0, 1}});
    EXPECT_TRUE(hall_check(view).satisfied);
    EXPECT_EQ(max_matching(view).size(), 2u);
}

TEST(Hall, CertificatesOnRandomViews) {
    symctrl::testing::Rng rng(5);
    for (int k = 0; k < 500; ++k) {
        const auto view = symctrl::testing::random_view(rng, 1 + k % 10, 1 + (k / 10) % 10, 0.25);
        const auto h = hall_check(view);
        ASSERT_TRUE(is_matching(view, h.matching));
        EXPECT_EQ(h.satisfied, h.matching.size() == view.right_size());
        EXPECT_EQ(h.satisfied, oracle::hall_bruteforce(view).satisfied);
        if (!h.satisfied) {
            EXPECT_TRUE(verifies_violation(view, *h.violating_set));
        }
    }
}

TEST(Matching, Deterministic) {
    symctrl::testing::Rng rng(8);
    const auto view = symctrl::testing::random_view(rng, 8, 8, 0.3);
    const auto a = max_matching(view);
    const auto b = max_matching(view);
    EXPECT_EQ(a.pairs, b.pairs);
}

TEST(TermRank, Example) {
    EXPECT_EQ(term_rank(example_pattern()), 9u);
    EXPECT_EQ(term_rank(example_pattern(), TermRankScope::a_and_b), 9u);
    EXPECT_EQ(term_rank_rows(example_pattern()).size(), 9u);
}

TEST(TermRank, Trivial) {
    EXPECT_EQ(term_rank(StructuredPattern::symmetric(3, 0, {}, {})), 0u);
    EXPECT_EQ(term_rank(StructuredPattern::symmetric(2, 0, {{0, 1}}, {})), 2u);
    // A star on row 0 only, but B fills the other row.
    EXPECT_EQ(term_rank(StructuredPattern::general(2, 1, {{0, 0}}, {{1, 0}}), TermRankScope::a_and_b), 2u);
}

TEST(TermRank, MatchesBruteforceAndRowsAreCoverable) {
    symctrl::testing::Rng rng(13);
    for (int k = 0; k < 300; ++k) {
        const Index n = 1 + k % 8;
        const auto p = k % 3 == 2 ? symctrl::testing::random_general_pattern(rng, n, 0, 0.3, 0.0)
                                  : symctrl::testing::random_symmetric_pattern(rng, n, 0, 0.3, 0.0);
        const Index tr = term_rank(p);
        ASSERT_EQ(tr, oracle::term_rank_bruteforce(p));
        if (p.is_symmetric()) {
            const auto rows = term_rank_rows(p);
            ASSERT_EQ(rows.size(), tr);
            const auto cover = cycle_cover(p, rows);
            EXPECT_TRUE(is_valid_cycle_cover(p, rows, cover));
        }
    }
}

TEST(CycleCover, EvenCycleSplitsIntoTwoCycles) {
    const auto p = StructuredPattern::symmetric(4, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {});
    const auto c = cycle_cover(p, {0, 1, 2, 3});
    EXPECT_TRUE(is_valid_cycle_cover(p, {0, 1, 2, 3}, c));
    for (const auto& cyc : c.cycles) {
        EXPECT_LE(cyc.size(), 2u);
    }
    EXPECT_EQ(c.odd_cycle_count(), 0u);
}

TEST(CycleCover, TriangleKeepsOddCycle) {
    const auto p = StructuredPattern::symmetric(3, 0, {{0, 1}, {1, 2}, {0, 2}}, {});
    const auto c = cycle_cover(p, {0, 1, 2});
    EXPECT_TRUE(is_valid_cycle_cover(p, {0, 1, 2}, c));
    ASSERT_EQ(c.cycles.size(), 1u);
    EXPECT_EQ(c.cycles[0].size(), 3u);
    EXPECT_EQ(c.odd_cycle_count(), 1u);
    EXPECT_EQ(c.covered(), (std::vector<Index>{0, 1, 2}));
}

TEST(CycleCover, SelfLoopBreaksOddCycle) {
    const auto p = StructuredPattern::symmetric(3, 0, {{0, 1}, {1, 2}, {0, 2}, {1, 1}}, {});
    const auto c = cycle_cover(p, {0, 1, 2});
    EXPECT_TRUE(is_valid_cycle_cover(p, {0, 1, 2}, c));
    EXPECT_EQ(c.odd_cycle_count(), 0u);
}

TEST(CycleCover, UnsplitKeepsPermutationCycles) {
    const auto p = StructuredPattern::symmetric(4, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {});
    const auto c = cycle_cover(p, {0, 1, 2, 3}, false);
    EXPECT_TRUE(is_valid_cycle_cover(p, {0, 1, 2, 3}, c));
}

TEST(CycleCover, ThrowsWithViolator) {
    const auto p = example_pattern();
    const std::vector<Index> all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    try {
        cycle_cover(p, all);
        FAIL() << "expected NoCycleCoverError";
    } catch (const NoCycleCoverError& e) {
        const auto s = e.violating_subset();
        ASSERT_FALSE(s.empty());
        std::set<Index> nb;
        for (Index x : s) {
            for (Index y : all) {
                if (p.a_star(x, y)) {
                    nb.insert(y);
                }
            }
        }
        EXPECT_LT(nb.size(), s.size());
    }
    EXPECT_THROW(cycle_cover(p, {0, 0}), InputError);
}

TEST(CycleCover, ValidatorRejectsBadCovers) {
    const auto p = StructuredPattern::symmetric(3, 0, {{0, 1}, {1, 2}}, {});
    EXPECT_FALSE(is_valid_cycle_cover(p, {0, 1}, CycleCover{{{0, 2}}}));
    EXPECT_FALSE(is_valid_cycle_cover(p, {0, 1}, CycleCover{{{0, 1}, {1}}}));
    EXPECT_FALSE(is_valid_cycle_cover(p, {0, 1, 2}, CycleCover{{{0, 1}}}));
    EXPECT_TRUE(is_valid_cycle_cover(p, {0, 1}, CycleCover{{{0, 1}}}));
}
