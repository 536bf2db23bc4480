#include "symctrl/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "symctrl/errors.hpp"

namespace symctrl {

Polynomial Polynomial::from_roots(const std::vector<double>& roots) {
    Polynomial p{1.0};
    for (double r : roots) {
        p = p * Polynomial{-r, 1.0};
    }
    return p;
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() == 1) {
        return Polynomial{0.0};
    }
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return Polynomial(std::move(d));
}

Polynomial Polynomial::trimmed(double tol) const {
    std::vector<double> c = coeffs_;
    while (c.size() > 1 && std::abs(c.back()) <= tol) {
        c.pop_back();
    }
    return Polynomial(std::move(c));
}

double Polynomial::norm() const {
    double s = 0.0;
    for (double c : coeffs_) {
        s += c * c;
    }
    return std::sqrt(s);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = a[k] + b[k];
    }
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b * -1.0;
}

Polynomial Polynomial::operator*(double c) const {
    std::vector<double> out = coeffs_;
    for (double& x : out) {
        x *= c;
    }
    return Polynomial(std::move(out));
}

Eigen::MatrixXd sylvester_matrix(const Polynomial& p, const Polynomial& q) {
    const auto n1 = static_cast<Eigen::Index>(p.degree());
    const auto n2 = static_cast<Eigen::Index>(q.degree());
    const Eigen::Index size = n1 + n2;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index row = 0; row < n2; ++row) {
        for (Eigen::Index k = 0; k <= n1; ++k) {
            s(row, row + k) = p[static_cast<std::size_t>(n1 - k)];
        }
    }
    for (Eigen::Index t = 0; t < n1; ++t) {
        const Eigen::Index row = size - 1 - t;
        for (Eigen::Index k = 0; k <= n2; ++k) {
            s(row, t + k) = q[static_cast<std::size_t>(n2 - k)];
        }
    }
    return s;
}

double sylvester_resultant(const Polynomial& p, const Polynomial& q) {
    if (p.degree() == 0 || q.degree() == 0) {
        throw PreconditionError("sylvester_resultant: both polynomials need degree >= 1");
    }
    if (p.leading() == 0.0 || q.leading() == 0.0) {
        throw PreconditionError("sylvester_resultant: leading coefficient must be nonzero");
    }
    const Eigen::MatrixXd s = sylvester_matrix(p, q);
    return s.fullPivLu().determinant();
}

double resultant_scale(const Polynomial& p, const Polynomial& q) {
    return std::pow(p.norm(), static_cast<double>(q.degree())) * std::pow(q.norm(), static_cast<double>(p.degree()));
}

} // namespace symctrl
