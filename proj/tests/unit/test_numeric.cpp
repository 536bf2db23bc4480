#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "generators.hpp"
#include "symctrl/errors.hpp"
#include "symctrl/numeric.hpp"

using namespace symctrl;
using symctrl::testing::example_pattern;

namespace {

Eigen::MatrixXd mat(Index r, Index c, std::initializer_list<double> v) {
    Eigen::MatrixXd m(r, c);
    auto it = v.begin();
    for (Index i = 0; i < r; ++i) {
        for (Index j = 0; j < c; ++j) {
            m(i, j) = *it++;
        }
    }
    return m;
}

// Classical cofactor adjugate, the oracle for the Faddeev-LeVerrier path.
Eigen::MatrixXd cofactor_adjugate(const Eigen::MatrixXd& m) {
    const Index n = m.rows();
    Eigen::MatrixXd adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1.0;
        return adj;
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            Eigen::MatrixXd minor(n - 1, n - 1);
            for (Index r = 0, rr = 0; r < n; ++r) {
                if (r == j) {
                    continue;
                }
                for (Index c = 0, cc = 0; c < n; ++c) {
                    if (c == i) {
                        continue;
                    }
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            adj(i, j) = ((i + j) % 2 ? -1.0 : 1.0) * minor.determinant();
        }
    }
    return adj;
}

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& a) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

} // namespace

TEST(Sampler, ExampleSupportAndDeterminism) {
    const auto p = example_pattern();
    const auto r = sample_realization(p, 42);
    EXPECT_EQ((r.A.array() != 0.0).count(), 21);
    EXPECT_EQ((r.B.array() != 0.0).count(), 3);
    EXPECT_EQ(r.A, r.A.transpose());
    EXPECT_EQ(r.params.size(), p.n_params_a() + p.n_params_b());
    for (double w : r.params) {
        EXPECT_GE(std::abs(w), 0.05);
        EXPECT_LE(std::abs(w), 1.0);
    }
    EXPECT_EQ(sample_realization(p, 42).params, r.params);
    EXPECT_NE(sample_realization(p, 43).params, r.params);
}

TEST(Sampler, ZeroPattern) {
    const auto r = sample_realization(StructuredPattern::symmetric(3, 1, {}, {}), 1);
    EXPECT_TRUE(r.A.isZero(0.0));
    EXPECT_TRUE(r.B.isZero(0.0));
}

TEST(Sampler, RealizeUsesGivenParams) {
    const auto p = StructuredPattern::symmetric(2, 1, {{0, 1}}, {{0, 0}});
    const auto r = realize(p, {2.0, 3.0});
    EXPECT_EQ(r.A, mat(2, 2, {0, 2, 2, 0}));
    EXPECT_EQ(r.B, mat(2, 1, {3, 0}));
    EXPECT_THROW(realize(p, {1.0}), InputError);
}

TEST(MixSeed, DistinctStreams) {
    EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
    EXPECT_NE(mix_seed(0, 1), mix_seed(1, 0));
    EXPECT_EQ(mix_seed(7, 3), mix_seed(7, 3));
}

TEST(Controllability, SmallCases) {
    const Eigen::MatrixXd b = mat(2, 1, {1, 0});
    EXPECT_EQ(controllability_matrix(mat(2, 2, {0, 1, 1, 0}), b), mat(2, 2, {1, 0, 0, 1}));
    EXPECT_EQ(controllability_matrix(Eigen::MatrixXd::Zero(3, 3), mat(3, 1, {1, 2, 3})),
              mat(3, 3, {1, 0, 0, 2, 0, 0, 3, 0, 0}));
    EXPECT_EQ(controllability_matrix(Eigen::MatrixXd::Identity(3, 3), mat(3, 1, {1, 2, 3})),
              mat(3, 3, {1, 1, 1, 2, 2, 2, 3, 3, 3}));
}

TEST(Controllability, NormalizedHasSameRank) {
    symctrl::testing::Rng rng(9);
    for (int k = 0; k < 20; ++k) {
        const auto p = symctrl::testing::random_symmetric_pattern(rng, 6, 2, 0.4);
        const auto r = sample_realization(p, k);
        EXPECT_EQ(numeric_rank(controllability_matrix(r)),
                  numeric_rank(controllability_matrix_normalized(r.A, r.B)));
    }
}

TEST(NumericRank, Basics) {
    EXPECT_EQ(numeric_rank(Eigen::MatrixXd::Zero(3, 4)), 0u);
    EXPECT_EQ(numeric_rank(Eigen::MatrixXd::Identity(5, 5)), 5u);
    EXPECT_EQ(numeric_rank(mat(2, 2, {1, 1, 1, 1})), 1u);
    EXPECT_EQ(numeric_rank(Eigen::MatrixXd(0, 3)), 0u);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(0, 1) = std::nan("");
    EXPECT_THROW(numeric_rank(bad), NumericError);
}

TEST(Pbh, RepeatedEigenvalueIsUncontrollable) {
    const auto rep = pbh_modes(Eigen::MatrixXd::Identity(2, 2), mat(2, 1, {1, 1}));
    ASSERT_EQ(rep.modes.size(), 2u);
    for (const auto& mode : rep.modes) {
        EXPECT_EQ(mode.multiplicity, 2u);
        EXPECT_FALSE(mode.controllable);
    }
    EXPECT_FALSE(rep.all_controllable());
    EXPECT_EQ(rep.uncontrollable_count(), 2u);
    EXPECT_EQ(rep.nonzero_simple_count, 0u);
}

TEST(Pbh, SwapMatrixIsControllable) {
    const auto rep = pbh_modes(mat(2, 2, {0, 1, 1, 0}), mat(2, 1, {1, 0}));
    ASSERT_EQ(rep.modes.size(), 2u);
    EXPECT_NEAR(rep.modes[0].eigenvalue, -1.0, 1e-12);
    EXPECT_NEAR(rep.modes[1].eigenvalue, 1.0, 1e-12);
    EXPECT_TRUE(rep.all_controllable());
    EXPECT_EQ(rep.nonzero_simple_count, 2u);
}

TEST(Pbh, IsolatedVertexGivesUncontrollableZero) {
    const auto rep = pbh_modes(mat(2, 2, {1, 0, 0, 0}), mat(2, 1, {1, 0}));
    ASSERT_EQ(rep.modes.size(), 2u);
    EXPECT_NEAR(rep.modes[0].eigenvalue, 0.0, 1e-12);
    EXPECT_FALSE(rep.modes[0].controllable);
    EXPECT_TRUE(rep.modes[1].controllable);
}

TEST(Pbh, AgreesWithKalmanRank) {
    symctrl::testing::Rng rng(21);
    for (int k = 0; k < 100; ++k) {
        const auto p = symctrl::testing::random_symmetric_pattern(rng, 1 + k % 6, 1 + k % 2, 0.35);
        const auto r = sample_realization(p, k);
        const bool kalman = numeric_rank(controllability_matrix(r)) == p.n();
        EXPECT_EQ(pbh_modes(r).all_controllable(), kalman) << "case " << k;
    }
}

TEST(CountNonzeroSimple, Basics) {
    EXPECT_EQ(count_nonzero_simple(Eigen::Vector3d(1, 2, 0).asDiagonal().toDenseMatrix()), 2u);
    EXPECT_EQ(count_nonzero_simple(Eigen::MatrixXd::Zero(3, 3)), 0u);
    EXPECT_EQ(count_nonzero_simple(Eigen::MatrixXd::Identity(3, 3)), 0u);
}

TEST(CharPoly, SmallCases) {
    EXPECT_EQ(char_poly(Eigen::Vector2d(2, 3).asDiagonal().toDenseMatrix()), (Polynomial{6.0, -5.0, 1.0}));
    EXPECT_EQ(char_poly(mat(2, 2, {0, 1, 1, 0})), (Polynomial{-1.0, 0.0, 1.0}));
}

TEST(CharPoly, MatchesEigenvalueProduct) {
    symctrl::testing::Rng rng(4);
    for (int k = 0; k < 50; ++k) {
        const auto p = symctrl::testing::random_symmetric_pattern(rng, 4, 0, 0.6);
        const auto r = sample_realization(p, k);
        const auto fl = char_poly(r.A);
        const Eigen::VectorXd ev = eigenvalues(r.A);
        const auto oracle = Polynomial::from_roots(std::vector<double>(ev.data(), ev.data() + ev.size()));
        ASSERT_EQ(fl.degree(), 4u);
        EXPECT_EQ(fl.leading(), 1.0);
        for (Index q = 0; q <= 4; ++q) {
            EXPECT_NEAR(fl[q], oracle[q], 1e-8 * std::max(1.0, oracle.norm()));
        }
    }
}

TEST(Adjugate, SmallCases) {
    const auto one = faddeev_leverrier(mat(1, 1, {2.5}));
    ASSERT_EQ(one.adjugate.size(), 1u);
    EXPECT_EQ(one.adjugate[0], mat(1, 1, {1}));
    // adj(sI - [[0,1],[1,0]]) = [[s,1],[1,s]].
    const auto two = faddeev_leverrier(mat(2, 2, {0, 1, 1, 0}));
    ASSERT_EQ(two.adjugate.size(), 2u);
    EXPECT_EQ(two.adjugate[0], mat(2, 2, {0, 1, 1, 0}));
    EXPECT_EQ(two.adjugate[1], mat(2, 2, {1, 0, 0, 1}));
}

TEST(Adjugate, MatchesCofactorsAtProbes) {
    symctrl::testing::Rng rng(6);
    for (int k = 0; k < 30; ++k) {
        const auto p = symctrl::testing::random_symmetric_pattern(rng, 3, 0, 0.7);
        const auto r = sample_realization(p, k);
        const auto data = faddeev_leverrier(r.A);
        for (double s : {2.5, -0.3, 1.1}) {
            const Eigen::MatrixXd m = s * Eigen::MatrixXd::Identity(3, 3) - r.A;
            const Eigen::MatrixXd expected = cofactor_adjugate(m);
            EXPECT_LE((data.adjugate_at(s) - expected).norm(), 1e-8 * std::max(1.0, expected.norm()));
        }
    }
}

TEST(Phi, Truncation) {
    const double a = 0.7;
    const auto ch = char_poly(mat(2, 2, {a, 0, 0, 0}));
    EXPECT_EQ(phi_poly(ch, 1), (Polynomial{-a, 1.0}));
    EXPECT_EQ(phi_poly(ch, 2), ch);
    EXPECT_THROW(phi_poly(ch, 3), PreconditionError);
}

TEST(Phi, VanishesAtNonzeroEigenvaluesOfExample) {
    const auto r = sample_realization(example_pattern(), 5);
    const auto suite = poly_suite(r, 9);
    ASSERT_EQ(suite.phi.degree(), 9u);
    const Eigen::VectorXd ev = eigenvalues(r.A);
    Index nonzero = 0;
    for (double l : ev) {
        if (std::abs(l) > 1e-8 * r.A.norm()) {
            ++nonzero;
            EXPECT_NEAR(suite.phi(l), 0.0, 1e-9 * suite.phi.norm() * std::pow(std::max(1.0, std::abs(l)), 9.0));
        }
    }
    EXPECT_EQ(nonzero, 9u);
}

TEST(Psi, SmallCases) {
    const auto psi = psi_poly(mat(1, 1, {0.4}), mat(1, 1, {3.0}));
    EXPECT_EQ(psi.trimmed().degree(), 0u);
    EXPECT_DOUBLE_EQ(psi[0], 9.0);
    const auto zero = psi_poly(mat(2, 2, {0, 1, 1, 0}), Eigen::MatrixXd::Zero(2, 1));
    EXPECT_EQ(zero.trimmed().degree(), 0u);
    EXPECT_EQ(zero[0], 0.0);
}

TEST(Psi, MatchesDirectEvaluation) {
    symctrl::testing::Rng rng(12);
    for (int k = 0; k < 30; ++k) {
        const auto p = symctrl::testing::random_symmetric_pattern(rng, 3, 2, 0.6, 0.5);
        const auto r = sample_realization(p, k);
        const auto psi = psi_poly(r.A, r.B);
        const Eigen::MatrixXd m = 1.7 * Eigen::MatrixXd::Identity(3, 3) - r.A;
        const double direct = (cofactor_adjugate(m) * r.B).squaredNorm();
        EXPECT_NEAR(psi(1.7), direct, 1e-8 * std::max(1.0, direct));
    }
}

TEST(HoffmanWielandt, Cases) {
    const auto zero = hoffman_wielandt(mat(2, 2, {1, 2, 2, 1}), Eigen::MatrixXd::Zero(2, 2));
    EXPECT_TRUE(zero.holds);
    EXPECT_NEAR(zero.slack, 0.0, 1e-12);
    const auto diag = hoffman_wielandt(Eigen::MatrixXd::Zero(3, 3), 3.0 * Eigen::MatrixXd::Identity(3, 3));
    EXPECT_TRUE(diag.holds);
    EXPECT_NEAR(diag.slack, 0.0, 1e-12);
    EXPECT_THROW(hoffman_wielandt(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(3, 3)), InputError);
    EXPECT_THROW(hoffman_wielandt(mat(2, 2, {0, 1, 0, 0}), Eigen::MatrixXd::Zero(2, 2)), InputError);
}

TEST(HoffmanWielandt, RandomPairs) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (int k = 0; k < 50; ++k) {
        Eigen::MatrixXd a(5, 5), e(5, 5);
        for (Index i = 0; i < 5; ++i) {
            for (Index j = 0; j < 5; ++j) {
                a(i, j) = g(rng);
                e(i, j) = 0.1 * g(rng);
            }
        }
        a = (a + a.transpose()).eval();
        e = (e + e.transpose()).eval();
        const auto hw = hoffman_wielandt(a, e);
        EXPECT_TRUE(hw.holds);
        EXPECT_GE(hw.slack, -1e-8);
    }
}

TEST(Constructive, TwoCycleAndSelfLoop) {
    const auto pair = StructuredPattern::symmetric(2, 0, {{0, 1}}, {});
    const auto c = constructive_realization(pair, CycleCover{{{0, 1}}}, 0.01);
    const Eigen::VectorXd ev = eigenvalues(c.realization.A);
    EXPECT_NEAR(ev(0), -1.0, 1e-12);
    EXPECT_NEAR(ev(1), 1.0, 1e-12);
    EXPECT_EQ(c.count_after, 2u);

    const auto loop = StructuredPattern::symmetric(2, 0, {{0, 0}, {0, 1}}, {});
    const auto d = constructive_realization(loop, CycleCover{{{0}}}, 0.01);
    EXPECT_EQ(count_nonzero_simple(d.realization.A), 1u);
}

TEST(Constructive, TriangleNeedsPerturbation) {
    const auto tri = StructuredPattern::symmetric(3, 0, {{0, 1}, {1, 2}, {0, 2}}, {});
    const auto cover = cycle_cover(tri, {0, 1, 2});
    const auto c = constructive_realization(tri, cover, 0.01, 3);
    EXPECT_LE(c.count_before, 2u);
    EXPECT_EQ(c.count_after, 3u);
    EXPECT_GE(c.attempts, 1u);
    EXPECT_EQ(c.realization.A, c.realization.A.transpose());
}

TEST(Constructive, RejectsInvalidCover) {
    const auto tri = StructuredPattern::symmetric(3, 0, {{0, 1}, {1, 2}}, {});
    EXPECT_THROW(constructive_realization(tri, CycleCover{{{0, 2}}}, 0.01), InputError);
}

TEST(Constructive, CoverSizeOnRandomPatterns) {
    symctrl::testing::Rng rng(30);
    for (int k = 0; k < 60; ++k) {
        const auto p = symctrl::testing::random_symmetric_pattern(rng, 2 + k % 6, 0, 0.4, 0.0);
        const auto rows = term_rank_rows(p);
        const auto cover = cycle_cover(p, rows);
        const auto c = constructive_realization(p, cover, 0.01, k);
        EXPECT_GE(c.count_before + cover.odd_cycle_count(), rows.size());
        EXPECT_EQ(c.count_after, rows.size());
    }
}
