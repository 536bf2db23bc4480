#include "symctrl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "symctrl/errors.hpp"

namespace symctrl {

namespace {

// 53 random mantissa bits -> [0, 1).
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on [-hi, -lo] u [lo, hi].
double signed_weight(std::mt19937_64& rng, double lo, double hi) {
    const double magnitude = lo + (hi - lo) * unit_uniform(rng);
    return (rng() & 1U) ? magnitude : -magnitude;
}

Index a_param_index(const StructuredPattern& pattern, Index i, Index j) {
    const Entry key{std::min(i, j), std::max(i, j)};
    const auto& entries = pattern.a_entries();
    const auto it = std::lower_bound(entries.begin(), entries.end(), key);
    if (it == entries.end() || *it != key) {
        throw InputError("no A-parameter at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
    }
    return static_cast<Index>(it - entries.begin());
}

struct Clusters {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    // [begin, end) index ranges into the ascending spectrum.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;
    double norm = 0.0;
};

Clusters cluster_spectrum(const Eigen::MatrixXd& A, const Tolerances& tol, bool want_vectors) {
    if (A.rows() != A.cols()) {
        throw InputError("expected a square matrix");
    }
    if (!A.allFinite()) {
        throw NumericError("matrix has non-finite entries");
    }
    Clusters c;
    c.norm = A.norm();
    if (A.rows() == 0) {
        return c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, want_vectors ? Eigen::ComputeEigenvectors
                                                                      : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericError("symmetric eigensolver did not converge");
    }
    c.values = es.eigenvalues();
    if (want_vectors) {
        c.vectors = es.eigenvectors();
    }
    const double gap = tol.simple_rel * c.norm;
    Eigen::Index begin = 0;
    for (Eigen::Index k = 1; k <= c.values.size(); ++k) {
        if (k == c.values.size() || c.values(k) - c.values(k - 1) > gap) {
            c.ranges.emplace_back(begin, k);
            begin = k;
        }
    }
    return c;
}

} // namespace

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    auto splitmix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    return splitmix(master ^ splitmix(stream));
}

NumericRealization realize(const StructuredPattern& pattern, std::vector<double> params, std::uint64_t seed) {
    const Index na = pattern.n_params_a();
    if (params.size() != na + pattern.n_params_b()) {
        throw InputError("parameter vector has wrong length");
    }
    const auto n = static_cast<Eigen::Index>(pattern.n());
    const auto m = static_cast<Eigen::Index>(pattern.m());
    NumericRealization r;
    r.A = Eigen::MatrixXd::Zero(n, n);
    r.B = Eigen::MatrixXd::Zero(n, m);
    for (Index k = 0; k < na; ++k) {
        const auto& e = pattern.a_entries()[k];
        const auto i = static_cast<Eigen::Index>(e.row);
        const auto j = static_cast<Eigen::Index>(e.col);
        r.A(i, j) = params[k];
        if (pattern.is_symmetric()) {
            r.A(j, i) = params[k];
        }
    }
    for (Index k = 0; k < pattern.n_params_b(); ++k) {
        const auto& e = pattern.b_entries()[k];
        r.B(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = params[na + k];
    }
    r.params = std::move(params);
    r.seed = seed;
    return r;
}

NumericRealization sample_realization(const StructuredPattern& pattern, std::uint64_t seed,
                                      const SamplerConfig& config) {
    if (!(config.w_min > 0.0) || config.w_max < config.w_min) {
        throw InputError("sampler needs 0 < w_min <= w_max");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> params(pattern.n_params_a() + pattern.n_params_b());
    for (double& p : params) {
        p = signed_weight(rng, config.w_min, config.w_max);
    }
    return realize(pattern, std::move(params), seed);
}

Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    const Eigen::Index n = A.rows();
    const Eigen::Index m = B.cols();
    if (A.cols() != n || B.rows() != n) {
        throw InputError("controllability_matrix: dimension mismatch");
    }
    Eigen::MatrixXd Q(n, n * m);
    if (m == 0) {
        return Q;
    }
    Eigen::MatrixXd block = B;
    for (Eigen::Index j = 0; j < n; ++j) {
        Q.middleCols(j * m, m) = block;
        if (j + 1 < n) {
            block = A * block;
        }
    }
    return Q;
}

Eigen::MatrixXd controllability_matrix_normalized(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    const Eigen::Index n = A.rows();
    const Eigen::Index m = B.cols();
    if (A.cols() != n || B.rows() != n) {
        throw InputError("controllability_matrix_normalized: dimension mismatch");
    }
    Eigen::MatrixXd Q(n, n * m);
    if (m == 0) {
        return Q;
    }
    Eigen::MatrixXd block = B;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index c = 0; c < m; ++c) {
            const double norm = block.col(c).norm();
            if (norm > 0.0) {
                block.col(c) /= norm;
            }
        }
        Q.middleCols(j * m, m) = block;
        block = A * block;
    }
    return Q;
}

Index numeric_rank(const Eigen::MatrixXd& M, const Tolerances& tol) {
    if (M.size() == 0) {
        return 0;
    }
    if (!M.allFinite()) {
        throw NumericError("numeric_rank: matrix has non-finite entries");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double threshold = sigma_max > 0.0
                                 ? tol.rank_rel * sigma_max * static_cast<double>(std::max(M.rows(), M.cols()))
                                 : tol.rank_abs;
    Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > threshold) {
            ++rank;
        }
    }
    return rank;
}

bool ModeReport::all_controllable() const {
    return std::all_of(modes.begin(), modes.end(), [](const Mode& m) { return m.controllable; });
}

Index ModeReport::uncontrollable_count() const {
    return static_cast<Index>(
        std::count_if(modes.begin(), modes.end(), [](const Mode& m) { return !m.controllable; }));
}

ModeReport pbh_modes(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Tolerances& tol) {
    if (B.rows() != A.rows()) {
        throw InputError("pbh_modes: B must have as many rows as A");
    }
    if (!B.allFinite()) {
        throw NumericError("pbh_modes: B has non-finite entries");
    }
    const Clusters c = cluster_spectrum(A, tol, true);
    const double b_norm = B.norm();
    ModeReport report;
    for (const auto& [begin, end] : c.ranges) {
        const Eigen::Index size = end - begin;
        bool controllable = false;
        if (b_norm > 0.0 && size <= B.cols()) {
            const Eigen::MatrixXd W = c.vectors.middleCols(begin, size).transpose() * B;
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(W);
            controllable = svd.singularValues().minCoeff() > tol.pbh * b_norm;
        }
        for (Eigen::Index k = begin; k < end; ++k) {
            report.modes.push_back({c.values(k), static_cast<Index>(size), controllable});
            if (size == 1 && std::abs(c.values(k)) > tol.zero_rel * c.norm) {
                ++report.nonzero_simple_count;
            }
        }
    }
    return report;
}

Index count_nonzero_simple(const Eigen::MatrixXd& A, const Tolerances& tol) {
    const Clusters c = cluster_spectrum(A, tol, false);
    Index count = 0;
    for (const auto& [begin, end] : c.ranges) {
        if (end - begin == 1 && std::abs(c.values(begin)) > tol.zero_rel * c.norm) {
            ++count;
        }
    }
    return count;
}

Eigen::MatrixXd CharacteristicData::adjugate_at(double s) const {
    Eigen::MatrixXd acc = adjugate.back();
    for (auto k = static_cast<std::ptrdiff_t>(adjugate.size()) - 2; k >= 0; --k) {
        acc = acc * s + adjugate[static_cast<std::size_t>(k)];
    }
    return acc;
}

CharacteristicData faddeev_leverrier(const Eigen::MatrixXd& A) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || n == 0) {
        throw InputError("faddeev_leverrier: expected a non-empty square matrix");
    }
    if (!A.allFinite()) {
        throw NumericError("faddeev_leverrier: matrix has non-finite entries");
    }
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> c(un + 1, 0.0);
    c[un] = 1.0;
    CharacteristicData data;
    data.adjugate.assign(un, Eigen::MatrixXd());
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k,  M_1 = I.
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t k = 1; k <= un; ++k) {
        if (k > 1) {
            M = A * M;
            M.diagonal().array() += c[un - k + 1];
        }
        data.adjugate[un - k] = M;
        c[un - k] = -(A * M).trace() / static_cast<double>(k);
    }
    data.char_poly = Polynomial(std::move(c));
    return data;
}

Polynomial phi_poly(const Polynomial& characteristic, Index k) {
    const Index n = characteristic.degree();
    if (k > n) {
        throw PreconditionError("phi_poly: k exceeds the characteristic degree");
    }
    std::vector<double> c(k + 1);
    for (Index j = 0; j <= k; ++j) {
        c[j] = characteristic[n - k + j];
    }
    return Polynomial(std::move(c));
}

Polynomial psi_poly(const CharacteristicData& data, const Eigen::MatrixXd& B) {
    const std::size_t n = data.adjugate.size();
    std::vector<Eigen::MatrixXd> blocks;
    blocks.reserve(n);
    for (const auto& M : data.adjugate) {
        if (B.rows() != M.cols()) {
            throw InputError("psi_poly: B must have as many rows as A");
        }
        blocks.push_back(M * B);
    }
    std::vector<double> c(2 * n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c[i + j] += blocks[i].cwiseProduct(blocks[j]).sum();
        }
    }
    return Polynomial(std::move(c));
}

Polynomial psi_poly(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    return psi_poly(faddeev_leverrier(A), B);
}

PolySuite poly_suite(const NumericRealization& r, Index k) {
    PolySuite suite;
    suite.characteristic = faddeev_leverrier(r.A);
    suite.k = k;
    suite.phi = phi_poly(suite.characteristic.char_poly, k);
    suite.psi = psi_poly(suite.characteristic, r.B);
    return suite;
}

HoffmanWielandt hoffman_wielandt(const Eigen::MatrixXd& A, const Eigen::MatrixXd& E, double roundoff) {
    if (A.rows() != A.cols() || E.rows() != E.cols() || A.rows() != E.rows()) {
        throw InputError("hoffman_wielandt: A and E must be square and of equal size");
    }
    const double scale = 1.0 + A.norm() + E.norm();
    if ((A - A.transpose()).norm() > 1e-12 * scale || (E - E.transpose()).norm() > 1e-12 * scale) {
        throw InputError("hoffman_wielandt: A and E must be symmetric");
    }
    HoffmanWielandt out;
    if (A.rows() == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(A, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(A + E, Eigen::EigenvaluesOnly);
    if (ea.info() != Eigen::Success || ep.info() != Eigen::Success) {
        throw NumericError("hoffman_wielandt: eigensolver did not converge");
    }
    out.slack = E.squaredNorm() - (ep.eigenvalues() - ea.eigenvalues()).squaredNorm();
    out.holds = out.slack >= -roundoff;
    return out;
}

ConstructiveRealization constructive_realization(const StructuredPattern& pattern, const CycleCover& cover,
                                                 double perturb, std::uint64_t seed, const Tolerances& tol) {
    if (!pattern.is_symmetric()) {
        throw InputError("constructive_realization: pattern must be symmetric");
    }
    const auto covered = cover.covered();
    if (!is_valid_cycle_cover(pattern, covered, cover)) {
        throw InputError("constructive_realization: cover is not valid for the pattern");
    }
    if (perturb < 0.0) {
        throw InputError("constructive_realization: perturbation magnitude must be non-negative");
    }

    std::vector<double> base(pattern.n_params_a() + pattern.n_params_b(), 0.0);
    double pair_weight = 1.0;
    double loop_weight = 0.5;
    auto weight_pairs = [&](const std::vector<Index>& cyc, Index pairs) {
        for (Index t = 0; t < pairs; ++t) {
            base[a_param_index(pattern, cyc[2 * t], cyc[2 * t + 1])] = pair_weight;
            pair_weight += 1.0;
        }
    };
    for (const auto& cyc : cover.cycles) {
        if (cyc.size() == 1) {
            base[a_param_index(pattern, cyc[0], cyc[0])] = loop_weight;
            loop_weight += 1.0;
        } else {
            weight_pairs(cyc, cyc.size() / 2);
        }
    }

    ConstructiveRealization out;
    out.realization = realize(pattern, base, seed);
    out.count_before = count_nonzero_simple(out.realization.A, tol);
    out.count_after = out.count_before;
    if (cover.odd_cycle_count() == 0) {
        return out;
    }

    constexpr Index kMaxAttempts = 16;
    for (Index attempt = 1; attempt <= kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(mix_seed(seed, attempt));
        std::vector<double> params = base;
        for (const auto& cyc : cover.cycles) {
            if (cyc.size() < 3 || cyc.size() % 2 == 0) {
                continue;
            }
            for (Index t = 0; t < cyc.size(); ++t) {
                params[a_param_index(pattern, cyc[t], cyc[(t + 1) % cyc.size()])] +=
                    signed_weight(rng, 0.5 * perturb, perturb);
            }
        }
        auto candidate = realize(pattern, std::move(params), seed);
        const Index count = count_nonzero_simple(candidate.A, tol);
        if (count == covered.size()) {
            out.realization = std::move(candidate);
            out.count_after = count;
            out.attempts = attempt;
            return out;
        }
    }
    throw NumericError("constructive_realization: perturbation failed to separate the spectrum after 16 attempts");
}

} // namespace symctrl
