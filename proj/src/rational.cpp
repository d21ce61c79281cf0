#include "netsync/rational.hpp"

#include <cmath>

namespace netsync {

namespace {

bool same_coeffs(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) {
        return false;
    }
    const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        if (std::abs(a.coeffs()[k] - b.coeffs()[k]) > 1e-12 * scale) {
            return false;
        }
    }
    return true;
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) {
        throw DivisionByZeroFunction("denominator is the zero polynomial");
    }
    const double lead = den.leading();
    num_ = num.is_zero() ? Polynomial() : num.scaled(1.0 / lead);
    den_ = num.is_zero() ? Polynomial({1.0}) : den.scaled(1.0 / lead);
}

Complex RationalFunction::eval(Complex s, const Tolerances& tol) const {
    const bool large = std::abs(s) > 1.0;
    if (!large) {
        const Complex d = den_(s);
        if (std::abs(d) <= tol.numeric_tol * den_.magnitude_scale(s)) {
            throw EvalNearPole("denominator vanishes near s = (" + std::to_string(s.real()) + ", " +
                               std::to_string(s.imag()) + ")");
        }
        return num_(s) / d;
    }
    const Complex u = 1.0 / s;
    const Complex d = den_.eval_reversed(u);
    if (std::abs(d) <= tol.numeric_tol * den_.magnitude_scale_reversed(u)) {
        throw EvalNearPole("denominator vanishes near s = (" + std::to_string(s.real()) + ", " +
                           std::to_string(s.imag()) + ")");
    }
    return std::pow(s, num_.degree() - den_.degree()) * (num_.eval_reversed(u) / d);
}

RationalFunction RationalFunction::reciprocal() const {
    if (is_zero()) {
        throw DivisionByZeroFunction("reciprocal of the zero function");
    }
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::scaled(double factor) const {
    return RationalFunction(num_.scaled(factor), den_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (same_coeffs(a.den_, b.den_)) {
        return RationalFunction(a.num_ + b.num_, a.den_);
    }
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) {
        return RationalFunction();
    }
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) {
        throw DivisionByZeroFunction("division by the zero function");
    }
    return a * b.reciprocal();
}

RationalFunction parallel(const RationalFunction& a, const RationalFunction& b) {
    return (a * b) / (a + b);
}

RationalFunction rf_arith(const RationalFunction& a, const RationalFunction& b, RfOp op) {
    switch (op) {
        case RfOp::add: return a + b;
        case RfOp::mul: return a * b;
        case RfOp::div: return a / b;
        case RfOp::parallel: return parallel(a, b);
    }
    return RationalFunction();
}

}  // namespace netsync
