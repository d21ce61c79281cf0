#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "netsync/admittance.hpp"
#include "netsync/linalg.hpp"

namespace netsync {

struct KronResult {
    ComplexMatrix y;                       // dim == kept.size()
    std::vector<std::size_t> kept;         // indices into the original matrix
    std::vector<std::size_t> eliminated;
};

/// Schur complement Y = Y_NN - Y_NI Y_II^{-1} Y_IN with the first n_boundary
/// indices kept. SingularInterior when Y_II is singular.
KronResult kron_reduce(const ComplexMatrix& y_a, std::size_t n_boundary, const Tolerances& tol = {});
/// Same, keeping an arbitrary index set (in the given order).
KronResult kron_reduce(const ComplexMatrix& y_a, std::span<const std::size_t> keep, const Tolerances& tol = {});

/// Kron reduction carried out on rational-function entries, one interior node
/// at a time. Exact pointwise, but degrees grow with every eliminated node.
SymbolicAdmittance kron_reduce_symbolic(const SymbolicAdmittance& y_a, std::size_t n_boundary);

struct UniformReduction {
    RationalFunction y_series;     // per-unit branch admittance
    RealMatrix original_laplacian; // L_A, weights 1/c_k
    RealMatrix laplacian;          // Kron-reduced L
};

/// True when every branch impedance is a real multiple of a common z_series(s).
bool has_uniform_lines(const Netlist& net, const Tolerances& tol = {});

/// Y(s) = y_series(s) * L for networks with uniform line characteristics and
/// no shunts. The per-unit impedance is scaled so the first nonzero of
/// (R, L, 1/C) is one: inductive lines give y_series = 1/s, resistive 1.
UniformReduction kron_reduce_uniform(const Netlist& net, const Tolerances& tol = {});

/// Ground adjoined as a last node: border -y_m (row sums of Y_A), corner sum y_m.
ComplexMatrix augment(const ComplexMatrix& y_a);

/// Max |row sum| and |column sum| relative to max|Y|.
double relative_row_sum_defect(const ComplexMatrix& y);
bool has_zero_row_sums(const ComplexMatrix& y, double tol);

/// Y^+ = (Y + (1/N) 1 1^T)^{-1} - (1/N) 1 1^T for a connected zero-row-sum Y.
/// RankDeficient when the shifted matrix is singular (disconnected network).
ComplexMatrix pseudo_inverse_zero_sum(const ComplexMatrix& y, const Tolerances& tol = {});

/// Y^+ for zero-row-sum Y, Y^{-1} otherwise.
ComplexMatrix generalized_inverse(const ComplexMatrix& y, const Tolerances& tol = {});

/// z_nm = (e_n - e_m)^T Y^+ (e_n - e_m)
Complex effective_impedance(const ComplexMatrix& y, std::size_t n, std::size_t m, const Tolerances& tol = {});

/// Symmetric, zero-diagonal matrix of pairwise effective impedances.
struct EffectiveImpedanceMatrix {
    ComplexMatrix z;

    Eigen::Index dim() const noexcept { return z.rows(); }
    Complex operator()(Eigen::Index n, Eigen::Index m) const { return z(n, m); }
};

/// All pairs. With grounded = true the matrix is built on augment(Y), so the
/// last row/column holds node-to-ground impedances.
EffectiveImpedanceMatrix effective_impedance_matrix(const ComplexMatrix& y, bool grounded, const Tolerances& tol = {});

/// Entry (n,m) of the inverse of Y with node `ref` grounded, assembled from Y^+.
Complex grounded_inverse_entry(const ComplexMatrix& y_dagger, std::size_t n, std::size_t m, std::size_t ref);

/// Y^+_nm = -1/2 (z_nm - (1/N) sum_k (z_nk + z_mk) + (1/N^2) sum_kl z_kl)
ComplexMatrix ydagger_from_z(const EffectiveImpedanceMatrix& z);

template <class T>
struct HomogeneousAdmittances {
    T y_series;
    std::optional<T> y_shunt;
};

namespace detail {

inline Complex constant_like(const Complex&, double v) { return Complex{v, 0.0}; }
inline RationalFunction constant_like(const RationalFunction&, double v) { return RationalFunction::constant(v); }

inline bool negligible(const Complex& v, double scale, const Tolerances& tol) {
    return std::abs(v) <= tol.numeric_tol * scale;
}
inline bool negligible(const RationalFunction& v, double, const Tolerances&) { return v.is_zero(); }

inline double magnitude(const Complex& v) { return std::abs(v); }
inline double magnitude(const RationalFunction&) { return 1.0; }

}  // namespace detail

/// Recovers the uniform reduced admittances of a homogeneous network from its
/// effective impedances by inverting
///   z_es  = 2 / (N y_series + y_shunt)
///   z_esh = (y_shunt + y_series) / (y_shunt (N y_series + y_shunt))
/// which gives
///   y_shunt  = 2 / (2N z_esh - (N-1) z_es)
///   y_series = 2 (2 z_esh - z_es) / (z_es (2N z_esh - (N-1) z_es)).
/// Without a shunt this collapses to y_series = 2 / (N z_es).
/// Works for complex samples and for rational functions alike.
template <class T>
HomogeneousAdmittances<T> homogeneous_params(const T& z_es, const std::optional<T>& z_esh, std::size_t n,
                                             const Tolerances& tol = {}) {
    if (n < 2) {
        throw GuardViolated("homogeneous parameters need N >= 2");
    }
    const double nd = static_cast<double>(n);
    const T two = detail::constant_like(z_es, 2.0);
    if (detail::negligible(z_es, 0.0, tol)) {
        throw GuardViolated("z_eff_series is zero");
    }
    if (!z_esh) {
        return {two / (z_es * detail::constant_like(z_es, nd)), std::nullopt};
    }
    if (detail::negligible(*z_esh, 0.0, tol)) {
        throw GuardViolated("z_eff_shunt is zero");
    }
    const T lhs = *z_esh * detail::constant_like(z_es, 2.0 * nd);
    const T rhs = z_es * detail::constant_like(z_es, nd - 1.0);
    const T guard = lhs - rhs;
    const double scale = detail::magnitude(lhs) + detail::magnitude(rhs);
    if (detail::negligible(guard, scale, tol)) {
        throw GuardViolated("z_eff_series / z_eff_shunt equals 2N/(N-1)");
    }
    const T y_shunt = two / guard;
    const T y_series = two * (*z_esh * two - z_es) / (z_es * guard);
    return {y_series, y_shunt};
}

}  // namespace netsync
