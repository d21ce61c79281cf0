#include "netsync/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace netsync {

namespace {

std::vector<double> stripped(std::vector<double> c, double tol) {
    if (c.empty()) {
        return {0.0};
    }
    double max_abs = 0.0;
    for (double v : c) {
        max_abs = std::max(max_abs, std::abs(v));
    }
    const double cut = tol * max_abs;
    while (c.size() > 1 && std::abs(c.back()) <= cut) {
        c.pop_back();
    }
    if (c.size() == 1 && std::abs(c[0]) <= 0.0) {
        c[0] = 0.0;  // collapses -0.0
    }
    return c;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending, double strip_tol)
    : coeffs_(stripped(std::move(ascending), strip_tol)) {}

Polynomial Polynomial::monomial(double c, int k) {
    std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

double Polynomial::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double v : coeffs_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Complex Polynomial::eval_reversed(Complex u) const {
    // reversed coefficients: highest power first becomes constant term
    Complex acc = 0.0;
    for (double c : coeffs_) {
        acc = acc * u + c;
    }
    return acc;
}

double Polynomial::magnitude_scale_reversed(Complex u) const {
    const double a = std::abs(u);
    double acc = 0.0;
    for (double c : coeffs_) {
        acc = acc * a + std::abs(c);
    }
    return acc;
}

Complex Polynomial::operator()(Complex s) const {
    if (std::abs(s) <= 1.0) {
        Complex acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * s + *it;
        }
        return acc;
    }
    return std::pow(s, degree()) * eval_reversed(1.0 / s);
}

double Polynomial::magnitude_scale(Complex s) const {
    const double a = std::abs(s);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * a + std::abs(*it);
    }
    return acc;
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> v = coeffs_;
    for (double& c : v) {
        c *= factor;
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) {
        return Polynomial();
    }
    std::vector<double> v(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        v[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
    // exact cancellation of equal leading terms leaves rounding residue
    // relative to the inputs, not to the result
    const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
    while (v.size() > 1 && std::abs(v.back()) <= kDefaultNumericTol * scale) {
        v.pop_back();
    }
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return Polynomial();
    }
    std::vector<double> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(v));
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op) {
    switch (op) {
        case PolyOp::add: return a + b;
        case PolyOp::sub: return a - b;
        case PolyOp::mul: return a * b;
    }
    return Polynomial();
}

Polynomial poly_from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{1.0};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    std::vector<double> re(c.size());
    std::transform(c.begin(), c.end(), re.begin(), [](Complex z) { return z.real(); });
    return Polynomial(std::move(re));
}

}  // namespace netsync
