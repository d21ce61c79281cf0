#pragma once

#include "netsync/polynomial.hpp"

namespace netsync {

/// num(s)/den(s) with a monic denominator. Products and sums are never
/// simplified: removable pole/zero pairs may survive, correctness is defined
/// pointwise.
class RationalFunction {
public:
    RationalFunction() : num_(), den_({1.0}) {}
    RationalFunction(Polynomial num, Polynomial den);
    /// Implicit from a polynomial (denominator 1).
    RationalFunction(Polynomial num) : RationalFunction(std::move(num), Polynomial({1.0})) {}

    static RationalFunction constant(double c) { return RationalFunction(Polynomial::constant(c)); }
    /// The Laplace variable s.
    static RationalFunction s() { return RationalFunction(Polynomial({0.0, 1.0})); }

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.degree() == 0 && den_.degree() == 0; }
    bool is_proper() const noexcept { return is_zero() || num_.degree() <= den_.degree(); }
    bool is_strictly_proper() const noexcept { return is_zero() || num_.degree() < den_.degree(); }

    /// num(s)/den(s); throws EvalNearPole when |den(s)| <= numeric_tol * scale.
    Complex eval(Complex s, const Tolerances& tol = {}) const;
    Complex operator()(Complex s) const { return eval(s); }

    RationalFunction reciprocal() const;
    RationalFunction scaled(double factor) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a) { return a.scaled(-1.0); }
    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
    Polynomial num_;
    Polynomial den_;
};

/// a*b/(a+b): impedances in parallel.
RationalFunction parallel(const RationalFunction& a, const RationalFunction& b);

enum class RfOp { add, mul, div, parallel };
RationalFunction rf_arith(const RationalFunction& a, const RationalFunction& b, RfOp op);

inline Complex rf_eval(const RationalFunction& f, Complex s, const Tolerances& tol = {}) {
    return f.eval(s, tol);
}

}  // namespace netsync
