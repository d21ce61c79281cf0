#include "netsync/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace netsync {

double asymmetry(const ComplexMatrix& a) {
    return (a - a.transpose()).cwiseAbs().maxCoeff();
}

double asymmetry(const RealMatrix& a) {
    return (a - a.transpose()).cwiseAbs().maxCoeff();
}

bool is_symmetric(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    if (a.size() == 0) {
        return true;
    }
    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    return asymmetry(a) <= tol * scale;
}

ComplexMatrix mat_solve(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& /*tol*/) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) {
        throw DegenerateInput("mat_solve: non-conformable operands");
    }
    if (a.rows() == 0) {
        return ComplexMatrix(0, b.cols());
    }
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    // rcond below ~1e3 eps means the pivots no longer carry information
    const double rcond = lu.rcond();
    if (!(rcond > 1e3 * std::numeric_limits<double>::epsilon())) {
        throw SingularMatrix("reciprocal condition estimate " + std::to_string(rcond));
    }
    return lu.solve(b);
}

ComplexMatrix mat_inverse(const ComplexMatrix& a, const Tolerances& tol) {
    return mat_solve(a, ComplexMatrix::Identity(a.rows(), a.cols()), tol);
}

SymEig sym_eig(const RealMatrix& m, const Tolerances& tol) {
    if (m.rows() != m.cols()) {
        throw NotSymmetric("matrix is not square");
    }
    const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    if (m.size() > 0 && asymmetry(m) > tol.structural_tol * std::max(scale, 1e-300)) {
        throw NotSymmetric("max asymmetry " + std::to_string(asymmetry(m)));
    }
    const RealMatrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
    return SymEig{solver.eigenvalues(), solver.eigenvectors()};
}

double svd_max(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

std::vector<Complex> poly_roots(const Polynomial& p) {
    if (p.is_zero()) {
        throw DegenerateInput("roots of the zero polynomial");
    }
    const int n = p.degree();
    if (n < 1) {
        throw DegenerateInput("polynomial has degree 0");
    }
    const auto& c = p.coeffs();
    RealMatrix companion = RealMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    }
    Eigen::EigenSolver<RealMatrix> solver(companion, false);
    std::vector<Complex> roots(solver.eigenvalues().begin(), solver.eigenvalues().end());

    const Polynomial dp = p.derivative();
    for (Complex& r : roots) {
        for (int it = 0; it < 3; ++it) {
            const Complex f = p(r);
            const Complex df = dp(r);
            if (std::abs(df) == 0.0) {
                break;
            }
            const Complex candidate = r - f / df;
            if (std::abs(p(candidate)) < std::abs(f)) {
                r = candidate;
            } else {
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

namespace {

// nearest-neighbour pairing of zeros with poles
std::vector<Complex> matched_zeros(const std::vector<Complex>& zeros, const std::vector<Complex>& poles, double tol,
                                   std::vector<bool>& pole_used) {
    pole_used.assign(poles.size(), false);
    std::vector<Complex> matched;
    for (const Complex& z : zeros) {
        std::size_t best = poles.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < poles.size(); ++k) {
            const double d = std::abs(z - poles[k]);
            if (!pole_used[k] && d < best_dist) {
                best_dist = d;
                best = k;
            }
        }
        if (best < poles.size() && best_dist <= tol * std::max(1.0, std::abs(z))) {
            pole_used[best] = true;
            matched.push_back(z);
        }
    }
    return matched;
}

// p = q g + r with g monic; nullopt when r is not negligible
std::optional<Polynomial> exact_quotient(const Polynomial& p, const Polynomial& g) {
    const auto& pc = p.coeffs();
    const auto& gc = g.coeffs();
    const int n = p.degree(), m = g.degree();
    if (m > n) return std::nullopt;
    std::vector<double> rem(pc), q(static_cast<std::size_t>(n - m + 1), 0.0);
    for (int k = n - m; k >= 0; --k) {
        const double c = rem[static_cast<std::size_t>(k + m)] / gc.back();
        q[static_cast<std::size_t>(k)] = c;
        for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= c * gc[static_cast<std::size_t>(j)];
    }
    double r = 0.0;
    for (int j = 0; j < m; ++j) r = std::max(r, std::abs(rem[static_cast<std::size_t>(j)]));
    if (r > 1e-12 * p.max_abs_coeff()) return std::nullopt;
    return Polynomial(std::move(q));
}

bool same_values(const RationalFunction& a, const RationalFunction& b, double rel) {
    for (const Complex s : {Complex{0.0, 0.13}, Complex{0.0, 1.7}, Complex{0.0, 23.0}, Complex{0.6, 0.9},
                            Complex{-0.35, 4.1}}) {
        Complex va, vb;
        try {
            va = a.eval(s);
            vb = b.eval(s);
        } catch (const EvalNearPole&) {
            continue;
        }
        if (std::abs(va - vb) > rel * std::max(std::abs(va), 1e-300)) return false;
    }
    return true;
}

}  // namespace

RationalFunction cancel_common_roots(const RationalFunction& f, double tol) {
    if (f.is_zero() || f.den().degree() == 0 || f.num().degree() == 0) {
        return f;
    }
    const std::vector<Complex> zeros = poly_roots(f.num());
    const std::vector<Complex> poles = poly_roots(f.den());
    std::vector<bool> pole_used;

    // repeated roots come back smeared by roughly eps^(1/k); pair them loosely,
    // then divide the shared factor out and keep the result only if it is exact
    const std::vector<Complex> loose = matched_zeros(zeros, poles, std::max(tol, 1e-3), pole_used);
    if (loose.empty()) {
        return f;
    }
    const Polynomial common = poly_from_roots(loose);
    const auto qn = exact_quotient(f.num(), common);
    const auto qd = exact_quotient(f.den(), common);
    if (qn && qd) {
        RationalFunction g(*qn, *qd);
        if (same_values(f, g, 1e-11)) return g;
    }

    const std::vector<Complex> strict = matched_zeros(zeros, poles, tol, pole_used);
    if (strict.empty()) {
        return f;
    }
    std::vector<Complex> kept_zeros, kept_poles;
    std::vector<Complex> left(strict);
    for (const Complex& z : zeros) {
        const auto it = std::find(left.begin(), left.end(), z);
        if (it != left.end()) {
            left.erase(it);
        } else {
            kept_zeros.push_back(z);
        }
    }
    for (std::size_t k = 0; k < poles.size(); ++k) {
        if (!pole_used[k]) kept_poles.push_back(poles[k]);
    }
    RationalFunction g(poly_from_roots(kept_zeros).scaled(f.num().leading()), poly_from_roots(kept_poles));
    return same_values(f, g, 1e-10) ? g : f;
}

RealMatrix projector(Eigen::Index n) {
    return RealMatrix::Identity(n, n) - RealMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
}

RealMatrix complete_laplacian(Eigen::Index n) {
    return static_cast<double>(n) * RealMatrix::Identity(n, n) - RealMatrix::Ones(n, n);
}

}  // namespace netsync
