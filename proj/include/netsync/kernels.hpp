#pragma once

#include <functional>
#include <span>
#include <vector>

#include "netsync/linalg.hpp"
#include "netsync/rational.hpp"

namespace netsync::kernels {

using MatrixAt = std::function<ComplexMatrix(Complex)>;
using GridFn = std::function<double(double, double)>;

/// |h(j omega)| for every omega; +inf where h is evaluated on a pole.
std::vector<double> magnitude_sweep(const RationalFunction& h, std::span<const double> omegas,
                                    const Tolerances& tol = {});

/// Largest singular value of U^T (I + z Y)^{-1} z U per omega, with U an
/// orthonormal basis of the complement of the all-ones vector.
std::vector<double> matrix_gain_sweep(const MatrixAt& y_at, const RationalFunction& z, std::span<const double> omegas,
                                      const Tolerances& tol = {});

/// out(i, j) = fn(rows[i], cols[j])
RealMatrix grid_map(std::span<const double> rows, std::span<const double> cols, const GridFn& fn);

/// First index of the maximum; NaN never wins.
std::size_t argmax(std::span<const double> values);

namespace serial {

std::vector<double> magnitude_sweep(const RationalFunction& h, std::span<const double> omegas,
                                    const Tolerances& tol = {});
std::vector<double> matrix_gain_sweep(const MatrixAt& y_at, const RationalFunction& z, std::span<const double> omegas,
                                      const Tolerances& tol = {});
RealMatrix grid_map(std::span<const double> rows, std::span<const double> cols, const GridFn& fn);

}  // namespace serial

/// Orthonormal basis of {x : 1^T x = 0}, n x (n-1).
RealMatrix deflation_basis(Eigen::Index n);

/// sigma_max of the deflated closed loop at one frequency. NotNormal when
/// Y Y* != Y* Y beyond tolerance.
double deflated_gain(const ComplexMatrix& y, Complex z, const RealMatrix& basis, const Tolerances& tol = {});

}  // namespace netsync::kernels
