#pragma once

#include <vector>

#include "netsync/linalg.hpp"
#include "netsync/netlist.hpp"

namespace netsync {

/// Y_A(s) as a dim x dim grid of rational functions, row-major.
class SymbolicAdmittance {
public:
    SymbolicAdmittance() = default;
    explicit SymbolicAdmittance(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    std::size_t dim() const noexcept { return dim_; }
    const RationalFunction& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    RationalFunction& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

    /// Sum of row r as a function.
    RationalFunction row_sum(std::size_t r) const;

private:
    std::size_t dim_ = 0;
    std::vector<RationalFunction> entries_;
};

/// Off-diagonal (m,n) = -y_mn(s); diagonal m = y_m(s) + sum_k y_mk(s).
SymbolicAdmittance assemble_admittance(const Netlist& net);

/// Entrywise evaluation at s; EvalNearPole propagates.
ComplexMatrix eval_admittance(const SymbolicAdmittance& y, Complex s, const Tolerances& tol = {});

}  // namespace netsync
