#include "netsync/kernels.hpp"

#include <cmath>
#include <exception>
#include <limits>

namespace netsync::kernels {

namespace {

double magnitude_at(const RationalFunction& h, double w, const Tolerances& tol) {
    try {
        return std::abs(h.eval(Complex{0.0, w}, tol));
    } catch (const EvalNearPole&) {
        return std::numeric_limits<double>::infinity();
    }
}

/// Collects the first exception raised inside a parallel region.
class ExceptionSlot {
public:
    void capture() {
#pragma omp critical(netsync_exception_slot)
        if (!ptr_) ptr_ = std::current_exception();
    }
    void rethrow() const {
        if (ptr_) std::rethrow_exception(ptr_);
    }

private:
    std::exception_ptr ptr_;
};

}  // namespace

RealMatrix deflation_basis(Eigen::Index n) {
    const SymEig e = sym_eig(projector(n));
    // eigenvalues of the projector are {0, 1, ..., 1}
    return e.vectors.rightCols(n - 1);
}

double deflated_gain(const ComplexMatrix& y, Complex z, const RealMatrix& basis, const Tolerances& tol) {
    const Eigen::Index n = y.rows();
    const ComplexMatrix yh = y.adjoint();
    const double scale = std::max(y.cwiseAbs().maxCoeff(), 1e-300);
    if ((y * yh - yh * y).cwiseAbs().maxCoeff() > tol.structural_tol * scale * scale) {
        throw NotNormal("Y(j omega) is not normal");
    }
    const ComplexMatrix loop = ComplexMatrix::Identity(n, n) + z * y;
    const ComplexMatrix closed = mat_solve(loop, ComplexMatrix::Identity(n, n) * z, tol);
    const ComplexMatrix u = basis.cast<Complex>();
    return svd_max(u.transpose() * closed * u);
}

std::size_t argmax(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] > values[best] || std::isnan(values[best])) best = k;
    }
    return best;
}

std::vector<double> magnitude_sweep(const RationalFunction& h, std::span<const double> omegas, const Tolerances& tol) {
    std::vector<double> out(omegas.size());
    const auto n = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        out[k] = magnitude_at(h, omegas[k], tol);
    }
    return out;
}

std::vector<double> matrix_gain_sweep(const MatrixAt& y_at, const RationalFunction& z, std::span<const double> omegas,
                                      const Tolerances& tol) {
    std::vector<double> out(omegas.size());
    if (omegas.empty()) return out;
    const RealMatrix basis = deflation_basis(y_at(Complex{0.0, omegas[0]}).rows());
    const auto n = static_cast<std::ptrdiff_t>(omegas.size());
    ExceptionSlot slot;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            const Complex s{0.0, omegas[k]};
            out[k] = deflated_gain(y_at(s), z.eval(s, tol), basis, tol);
        } catch (...) {
            slot.capture();
        }
    }
    slot.rethrow();
    return out;
}

RealMatrix grid_map(std::span<const double> rows, std::span<const double> cols, const GridFn& fn) {
    const auto nr = static_cast<std::ptrdiff_t>(rows.size());
    const auto nc = static_cast<std::ptrdiff_t>(cols.size());
    RealMatrix out(nr, nc);
    ExceptionSlot slot;
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < nr; ++i) {
        for (std::ptrdiff_t j = 0; j < nc; ++j) {
            try {
                out(i, j) = fn(rows[i], cols[j]);
            } catch (...) {
                slot.capture();
            }
        }
    }
    slot.rethrow();
    return out;
}

namespace serial {

std::vector<double> magnitude_sweep(const RationalFunction& h, std::span<const double> omegas, const Tolerances& tol) {
    std::vector<double> out;
    out.reserve(omegas.size());
    for (double w : omegas) out.push_back(magnitude_at(h, w, tol));
    return out;
}

std::vector<double> matrix_gain_sweep(const MatrixAt& y_at, const RationalFunction& z, std::span<const double> omegas,
                                      const Tolerances& tol) {
    std::vector<double> out;
    if (omegas.empty()) return out;
    const RealMatrix basis = deflation_basis(y_at(Complex{0.0, omegas[0]}).rows());
    out.reserve(omegas.size());
    for (double w : omegas) {
        const Complex s{0.0, w};
        out.push_back(deflated_gain(y_at(s), z.eval(s, tol), basis, tol));
    }
    return out;
}

RealMatrix grid_map(std::span<const double> rows, std::span<const double> cols, const GridFn& fn) {
    RealMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fn(rows[i], cols[j]);
        }
    }
    return out;
}

}  // namespace serial

}  // namespace netsync::kernels
