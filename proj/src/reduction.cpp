#include "netsync/reduction.hpp"

#include <algorithm>
#include <numeric>

namespace netsync {

KronResult kron_reduce(const ComplexMatrix& y_a, std::span<const std::size_t> keep, const Tolerances& tol) {
    const auto dim = static_cast<std::size_t>(y_a.rows());
    if (y_a.rows() != y_a.cols()) {
        throw DegenerateInput("kron_reduce: matrix is not square");
    }
    std::vector<bool> is_kept(dim, false);
    KronResult out;
    for (std::size_t k : keep) {
        if (k >= dim || is_kept[k]) {
            throw DegenerateInput("kron_reduce: invalid or repeated kept index");
        }
        is_kept[k] = true;
        out.kept.push_back(k);
    }
    for (std::size_t k = 0; k < dim; ++k) {
        if (!is_kept[k]) out.eliminated.push_back(k);
    }
    const auto nk = static_cast<Eigen::Index>(out.kept.size());
    const auto ne = static_cast<Eigen::Index>(out.eliminated.size());
    ComplexMatrix kk(nk, nk), ke(nk, ne), ek(ne, nk), ee(ne, ne);
    for (Eigen::Index i = 0; i < nk; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j) kk(i, j) = y_a(out.kept[i], out.kept[j]);
        for (Eigen::Index j = 0; j < ne; ++j) ke(i, j) = y_a(out.kept[i], out.eliminated[j]);
    }
    for (Eigen::Index i = 0; i < ne; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j) ek(i, j) = y_a(out.eliminated[i], out.kept[j]);
        for (Eigen::Index j = 0; j < ne; ++j) ee(i, j) = y_a(out.eliminated[i], out.eliminated[j]);
    }
    if (ne == 0) {
        out.y = kk;
        return out;
    }
    try {
        out.y = kk - ke * mat_solve(ee, ek, tol);
    } catch (const SingularMatrix& e) {
        throw SingularInterior(std::string("interior block Y_II is singular (") + e.what() + ")");
    }
    return out;
}

KronResult kron_reduce(const ComplexMatrix& y_a, std::size_t n_boundary, const Tolerances& tol) {
    if (n_boundary > static_cast<std::size_t>(y_a.rows())) {
        throw DegenerateInput("kron_reduce: more boundary nodes than matrix rows");
    }
    std::vector<std::size_t> keep(n_boundary);
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    return kron_reduce(y_a, keep, tol);
}

SymbolicAdmittance kron_reduce_symbolic(const SymbolicAdmittance& y_a, std::size_t n_boundary) {
    SymbolicAdmittance work = y_a;
    for (std::size_t k = y_a.dim(); k-- > n_boundary;) {
        const RationalFunction pivot = work(k, k);
        if (pivot.is_zero()) {
            throw SingularInterior("interior node " + std::to_string(k) + " has identically zero self-admittance");
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (work(i, k).is_zero()) continue;
            const RationalFunction factor = cancel_common_roots(work(i, k) / pivot);
            for (std::size_t j = i; j < k; ++j) {
                if (work(k, j).is_zero()) continue;
                work(i, j) = cancel_common_roots(work(i, j) - cancel_common_roots(factor * work(k, j)));
                work(j, i) = work(i, j);
            }
        }
    }
    SymbolicAdmittance out(n_boundary);
    for (std::size_t i = 0; i < n_boundary; ++i) {
        for (std::size_t j = 0; j < n_boundary; ++j) out(i, j) = work(i, j);
    }
    return out;
}

namespace {

struct LineScaling {
    std::size_t component = 0;          // first nonzero of (R, L, 1/C)
    std::array<double, 3> unit{};       // reference triple scaled to unit[component] == 1
};

std::optional<LineScaling> uniform_scaling(const Netlist& net, const Tolerances& tol) {
    if (net.branches.empty()) {
        return std::nullopt;
    }
    const auto ref = net.branches.front().rlc.coefficient_triple();
    LineScaling sc;
    while (sc.component < 3 && ref[sc.component] == 0.0) ++sc.component;
    for (std::size_t c = 0; c < 3; ++c) sc.unit[c] = ref[c] / ref[sc.component];
    for (const auto& b : net.branches) {
        const auto t = b.rlc.coefficient_triple();
        const double factor = t[sc.component];
        if (factor == 0.0) {
            return std::nullopt;
        }
        const double scale = std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
        for (std::size_t c = 0; c < 3; ++c) {
            if (std::abs(t[c] - factor * sc.unit[c]) > tol.structural_tol * scale) {
                return std::nullopt;
            }
        }
    }
    return sc;
}

}  // namespace

bool has_uniform_lines(const Netlist& net, const Tolerances& tol) {
    return uniform_scaling(net, tol).has_value();
}

UniformReduction kron_reduce_uniform(const Netlist& net, const Tolerances& tol) {
    if (net.has_shunts()) {
        throw NotUniform("network has shunt elements");
    }
    const auto sc = uniform_scaling(net, tol);
    if (!sc) {
        throw NotUniform("branch impedances are not proportional to a common z_series(s)");
    }
    const SeriesRlc unit_line{sc->unit[0], sc->unit[1],
                              sc->unit[2] != 0.0 ? std::optional<double>(1.0 / sc->unit[2]) : std::nullopt};
    UniformReduction out;
    out.y_series = unit_line.admittance();

    const auto n = static_cast<Eigen::Index>(net.dim());
    out.original_laplacian = RealMatrix::Zero(n, n);
    for (const auto& b : net.branches) {
        const double w = 1.0 / b.rlc.coefficient_triple()[sc->component];
        const auto i = static_cast<Eigen::Index>(b.from_index);
        const auto j = static_cast<Eigen::Index>(b.to_index);
        out.original_laplacian(i, i) += w;
        out.original_laplacian(j, j) += w;
        out.original_laplacian(i, j) -= w;
        out.original_laplacian(j, i) -= w;
    }
    const auto nb = static_cast<Eigen::Index>(net.n_boundary);
    const auto ni = n - nb;
    const RealMatrix& la = out.original_laplacian;
    if (ni == 0) {
        out.laplacian = la;
        return out;
    }
    Eigen::PartialPivLU<RealMatrix> lu(la.bottomRightCorner(ni, ni));
    if (!(lu.rcond() > 1e3 * std::numeric_limits<double>::epsilon())) {
        throw SingularInterior("interior Laplacian block is singular");
    }
    out.laplacian = la.topLeftCorner(nb, nb) - la.topRightCorner(nb, ni) * lu.solve(la.bottomLeftCorner(ni, nb));
    out.laplacian = 0.5 * (out.laplacian + out.laplacian.transpose()).eval();
    return out;
}

ComplexMatrix augment(const ComplexMatrix& y_a) {
    const Eigen::Index n = y_a.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n + 1, n + 1);
    out.topLeftCorner(n, n) = y_a;
    const ComplexVector shunts = y_a.rowwise().sum();
    out.topRightCorner(n, 1) = -shunts;
    out.bottomLeftCorner(1, n) = -shunts.transpose();
    out(n, n) = shunts.sum();
    return out;
}

double relative_row_sum_defect(const ComplexMatrix& y) {
    if (y.size() == 0) {
        return 0.0;
    }
    const double scale = std::max(y.cwiseAbs().maxCoeff(), 1e-300);
    const double rows = y.rowwise().sum().cwiseAbs().maxCoeff();
    const double cols = y.colwise().sum().cwiseAbs().maxCoeff();
    return std::max(rows, cols) / scale;
}

bool has_zero_row_sums(const ComplexMatrix& y, double tol) {
    return relative_row_sum_defect(y) <= tol;
}

ComplexMatrix pseudo_inverse_zero_sum(const ComplexMatrix& y, const Tolerances& tol) {
    const Eigen::Index n = y.rows();
    if (!is_symmetric(y, tol.structural_tol)) {
        throw NotSymmetric("pseudo_inverse_zero_sum needs a symmetric matrix");
    }
    if (!has_zero_row_sums(y, tol.structural_tol)) {
        throw DegenerateInput("pseudo_inverse_zero_sum needs zero row and column sums");
    }
    const ComplexMatrix shift = ComplexMatrix::Constant(n, n, Complex{1.0 / static_cast<double>(n), 0.0});
    try {
        return mat_inverse(y + shift, tol) - shift;
    } catch (const SingularMatrix&) {
        throw RankDeficient("more than one zero eigenvalue (disconnected network)");
    }
}

ComplexMatrix generalized_inverse(const ComplexMatrix& y, const Tolerances& tol) {
    if (has_zero_row_sums(y, tol.structural_tol)) {
        return pseudo_inverse_zero_sum(y, tol);
    }
    return mat_inverse(y, tol);
}

namespace {

Complex quad_form(const ComplexMatrix& inv, Eigen::Index n, Eigen::Index m) {
    return inv(n, n) + inv(m, m) - inv(n, m) - inv(m, n);
}

}  // namespace

Complex effective_impedance(const ComplexMatrix& y, std::size_t n, std::size_t m, const Tolerances& tol) {
    if (n >= static_cast<std::size_t>(y.rows()) || m >= static_cast<std::size_t>(y.rows())) {
        throw DegenerateInput("effective_impedance: index out of range");
    }
    if (n == m) {
        return 0.0;
    }
    return quad_form(generalized_inverse(y, tol), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
}

EffectiveImpedanceMatrix effective_impedance_matrix(const ComplexMatrix& y, bool grounded, const Tolerances& tol) {
    const ComplexMatrix base = grounded ? augment(y) : y;
    const ComplexMatrix inv = generalized_inverse(base, tol);
    const Eigen::Index n = base.rows();
    EffectiveImpedanceMatrix out{ComplexMatrix::Zero(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            out.z(i, j) = out.z(j, i) = quad_form(inv, i, j);
        }
    }
    return out;
}

Complex grounded_inverse_entry(const ComplexMatrix& y_dagger, std::size_t n, std::size_t m, std::size_t ref) {
    const auto i = static_cast<Eigen::Index>(n);
    const auto j = static_cast<Eigen::Index>(m);
    const auto r = static_cast<Eigen::Index>(ref);
    return y_dagger(i, j) - y_dagger(i, r) - y_dagger(j, r) + y_dagger(r, r);
}

ComplexMatrix ydagger_from_z(const EffectiveImpedanceMatrix& z) {
    const Eigen::Index n = z.dim();
    const double nd = static_cast<double>(n);
    const ComplexVector row = z.z.rowwise().sum();
    const Complex total = row.sum();
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = -0.5 * (z(i, j) - (row(i) + row(j)) / nd + total / (nd * nd));
        }
    }
    return out;
}

}  // namespace netsync
