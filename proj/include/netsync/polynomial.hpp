#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "netsync/tolerances.hpp"

namespace netsync {

using Complex = std::complex<double>;

/// Real polynomial in the Laplace variable s, ascending coefficients
/// (coeffs()[k] multiplies s^k). Always normalized: trailing coefficients with
/// |c| <= tol * max|c| are stripped, and the zero polynomial is {0}.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> ascending) : Polynomial(std::vector<double>(ascending)) {}
    explicit Polynomial(std::vector<double> ascending, double strip_tol = kDefaultNumericTol);

    static Polynomial constant(double c) { return Polynomial({c}); }
    /// c * s^k
    static Polynomial monomial(double c, int k);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    double leading() const noexcept { return coeffs_.back(); }
    double max_abs_coeff() const noexcept;

    /// Value at s. For |s| > 1 the reversed polynomial is evaluated at 1/s and
    /// rescaled, which keeps wide frequency sweeps well conditioned.
    Complex operator()(Complex s) const;
    /// Sum of |c_k| |s|^k, the natural magnitude scale for residual tests.
    double magnitude_scale(Complex s) const;
    /// p_rev(u) = u^deg * p(1/u)
    Complex eval_reversed(Complex u) const;
    double magnitude_scale_reversed(Complex u) const;

    Polynomial scaled(double factor) const;
    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a) { return a.scaled(-1.0); }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<double> coeffs_;
};

enum class PolyOp { add, sub, mul };

/// Coefficient arithmetic followed by normalization.
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);

/// Monic polynomial with the given roots (complex-conjugate pairs expected;
/// imaginary residue of the expansion is dropped).
Polynomial poly_from_roots(const std::vector<Complex>& roots);

}  // namespace netsync
