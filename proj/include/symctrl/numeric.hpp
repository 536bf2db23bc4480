#pragma once

// Numerical oracle: random realizations of a structural pair, controllability
// and rank tests, PBH mode analysis, characteristic / adjugate polynomials and
// the spectral utilities used to probe generic properties on concrete samples.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "symctrl/pattern.hpp"
#include "symctrl/polynomial.hpp"
#include "symctrl/structural.hpp"

namespace symctrl {

/// Every numerical threshold in one place.
struct Tolerances {
    /// Singular values above rank_rel * sigma_max * max(rows, cols) count toward the rank.
    double rank_rel = 1e-9;
    /// Threshold used when sigma_max == 0.
    double rank_abs = 1e-12;
    /// |lambda| <= zero_rel * ||A||_F is a zero eigenvalue.
    double zero_rel = 1e-8;
    /// Eigenvalues closer than simple_rel * ||A||_F are one cluster.
    double simple_rel = 1e-7;
    /// ||e^T B|| <= pbh * ||e|| * ||B||_F marks an uncontrollable mode.
    double pbh = 1e-8;
};

/// Weights are drawn uniformly from [-w_max, -w_min] u [w_min, w_max].
struct SamplerConfig {
    double w_min = 0.05;
    double w_max = 1.0;
};

/// splitmix64 finaliser; used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

/// Concrete (A, B) for a pattern.
struct NumericRealization {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    /// One weight per parameter: A-parameters in pattern order, then B-parameters.
    std::vector<double> params;
    std::uint64_t seed = 0;
};

/// Writes `params` into A and B following the pattern's parameter order.
/// Symmetric parameters are written to both (i, j) and (j, i).
NumericRealization realize(const StructuredPattern& pattern, std::vector<double> params, std::uint64_t seed = 0);

/// Deterministic random realization. The generator is a hand-rolled
/// mt19937_64 -> double mapping so that results do not depend on the
/// standard library's distribution implementations.
NumericRealization sample_realization(const StructuredPattern& pattern, std::uint64_t seed,
                                      const SamplerConfig& config = {});

/// Q = [B, AB, ..., A^{n-1} B].
Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
inline Eigen::MatrixXd controllability_matrix(const NumericRealization& r) {
    return controllability_matrix(r.A, r.B);
}

/// Variant with every column of every block scaled to unit norm before the
/// next multiplication. Same column space, better conditioned; use only for
/// rank decisions on larger systems.
Eigen::MatrixXd controllability_matrix_normalized(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// SVD rank with the threshold documented on Tolerances. Throws NumericError
/// on non-finite entries.
Index numeric_rank(const Eigen::MatrixXd& M, const Tolerances& tol = {});

struct Mode {
    double eigenvalue = 0.0;
    /// Size of the eigenvalue cluster this eigenvalue belongs to.
    Index multiplicity = 1;
    bool controllable = true;
};

struct ModeReport {
    /// One entry per eigenvalue, ascending.
    std::vector<Mode> modes;
    Index nonzero_simple_count = 0;

    bool all_controllable() const;
    Index uncontrollable_count() const;
};

/// Real eigendecomposition of a symmetric A with PBH controllability per
/// eigenvalue cluster: a cluster is uncontrollable iff some unit vector e in
/// its eigenspace has ||e^T B|| <= pbh * ||B||_F, i.e. iff the smallest
/// singular value of V^T B is that small (V an orthonormal eigenspace basis).
ModeReport pbh_modes(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Tolerances& tol = {});
inline ModeReport pbh_modes(const NumericRealization& r, const Tolerances& tol = {}) {
    return pbh_modes(r.A, r.B, tol);
}

/// Eigenvalues with |lambda| > zero_rel ||A||_F whose nearest neighbour is
/// further than simple_rel ||A||_F.
Index count_nonzero_simple(const Eigen::MatrixXd& A, const Tolerances& tol = {});

/// det(sI - A) and adj(sI - A) from the Faddeev-LeVerrier recurrence.
struct CharacteristicData {
    /// Monic, degree n.
    Polynomial char_poly;
    /// adj(sI - A) = sum_k adjugate[k] s^k, k = 0..n-1.
    std::vector<Eigen::MatrixXd> adjugate;

    Eigen::MatrixXd adjugate_at(double s) const;
};

CharacteristicData faddeev_leverrier(const Eigen::MatrixXd& A);

inline Polynomial char_poly(const Eigen::MatrixXd& A) { return faddeev_leverrier(A).char_poly; }

/// Degree-k truncation s^k + a_{n-1} s^{k-1} + ... + a_{n-k} carrying the
/// nonzero eigenvalues when A has exactly k of them.
Polynomial phi_poly(const Polynomial& characteristic, Index k);

/// psi(s) = ||adj(sI - A) B||_F^2 as a polynomial of degree 2(n - 1).
Polynomial psi_poly(const CharacteristicData& data, const Eigen::MatrixXd& B);
Polynomial psi_poly(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Everything the generic-mode argument evaluates on one realization.
struct PolySuite {
    CharacteristicData characteristic;
    Index k = 0;
    Polynomial phi;
    Polynomial psi;
};

PolySuite poly_suite(const NumericRealization& r, Index k);

struct HoffmanWielandt {
    bool holds = true;
    /// ||E||_F^2 - sum_i (lambda_i(A + E) - lambda_i(A))^2 with both spectra ascending.
    double slack = 0.0;
};

/// Throws InputError on size mismatch or non-symmetric input. `holds` allows
/// `roundoff` of negative slack.
HoffmanWielandt hoffman_wielandt(const Eigen::MatrixXd& A, const Eigen::MatrixXd& E, double roundoff = 1e-8);

struct ConstructiveRealization {
    NumericRealization realization;
    /// nonzero_simple_count before the odd-cycle perturbation.
    Index count_before = 0;
    /// nonzero_simple_count of the returned realization.
    Index count_after = 0;
    /// Perturbation draws used (0 if the cover has no odd cycle of length >= 3).
    Index attempts = 0;
};

/// Realization built from a cycle cover: distinct nonzero weights on each
/// 2-cycle pair and self-loop, zero on every other star, then a symmetric
/// perturbation with magnitudes in [perturb/2, perturb] on the edges of each
/// odd cycle of length >= 3. Perturbations are redrawn (at most 16 times)
/// until every covered vertex contributes a nonzero simple eigenvalue.
/// B is left at zero.
///
/// Throws InputError if the cover is not valid for the pattern or the
/// pattern is not symmetric, NumericError if every retry fails.
ConstructiveRealization constructive_realization(const StructuredPattern& pattern, const CycleCover& cover,
                                                 double perturb, std::uint64_t seed = 0,
                                                 const Tolerances& tol = {});

} // namespace symctrl
