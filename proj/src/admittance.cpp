#include "netsync/admittance.hpp"

namespace netsync {

RationalFunction SymbolicAdmittance::row_sum(std::size_t r) const {
    RationalFunction sum;
    for (std::size_t c = 0; c < dim_; ++c) {
        sum = sum + (*this)(r, c);
    }
    return sum;
}

SymbolicAdmittance assemble_admittance(const Netlist& net) {
    SymbolicAdmittance y(net.dim());
    for (const auto& b : net.branches) {
        const RationalFunction yb = b.rlc.admittance();
        y(b.from_index, b.to_index) = y(b.from_index, b.to_index) - yb;
        y(b.to_index, b.from_index) = y(b.to_index, b.from_index) - yb;
        y(b.from_index, b.from_index) = y(b.from_index, b.from_index) + yb;
        y(b.to_index, b.to_index) = y(b.to_index, b.to_index) + yb;
    }
    for (const auto& s : net.shunts) {
        y(s.index, s.index) = y(s.index, s.index) + s.rlc.admittance();
    }
    return y;
}

ComplexMatrix eval_admittance(const SymbolicAdmittance& y, Complex s, const Tolerances& tol) {
    const auto n = static_cast<Eigen::Index>(y.dim());
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto& f = y(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            m(r, c) = f.is_zero() ? Complex{0.0} : f.eval(s, tol);
        }
    }
    return m;
}

}  // namespace netsync
