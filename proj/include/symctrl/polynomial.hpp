#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace symctrl {

/// Real polynomial with coefficients stored by ascending power:
/// coeffs()[k] multiplies s^k. The degree is the stored length minus one;
/// trailing zeros are kept unless trim() is called.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) { fix_empty(); }
    explicit Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) { fix_empty(); }

    /// Monic polynomial prod (s - r_i).
    static Polynomial from_roots(const std::vector<double>& roots);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    double leading() const noexcept { return coeffs_.back(); }

    double operator()(double s) const;
    Polynomial derivative() const;
    Polynomial trimmed(double tol = 0.0) const;
    double norm() const;

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    Polynomial operator*(double c) const;

    bool operator==(const Polynomial&) const = default;

private:
    void fix_empty() {
        if (coeffs_.empty()) {
            coeffs_.push_back(0.0);
        }
    }

    std::vector<double> coeffs_;
};

/// Sylvester matrix of p (degree n1) and q (degree n2), size n1 + n2.
///
/// The top n2 rows carry p's coefficients from the leading one down, each
/// row shifted one column right. The bottom n1 rows carry q's coefficients
/// in anti-diagonal order: the last row starts at column 0 and each row
/// above is shifted one column right.
Eigen::MatrixXd sylvester_matrix(const Polynomial& p, const Polynomial& q);

/// det(sylvester_matrix(p, q)). Zero iff p and q share a root.
/// Throws PreconditionError if either leading coefficient is zero or either
/// polynomial is constant.
double sylvester_resultant(const Polynomial& p, const Polynomial& q);

/// Hadamard bound ||p||^{deg q} ||q||^{deg p} on |R(p, q)|; the natural scale
/// for deciding whether a computed resultant is zero.
double resultant_scale(const Polynomial& p, const Polynomial& q);

} // namespace symctrl
