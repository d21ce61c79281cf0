#pragma once

#include <vector>

#include <Eigen/Dense>

#include "netsync/polynomial.hpp"
#include "netsync/rational.hpp"

namespace netsync {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// max|A_nm - A_mn|
double asymmetry(const ComplexMatrix& a);
double asymmetry(const RealMatrix& a);
/// Symmetric within tol relative to max|A| (absolute when A == 0).
bool is_symmetric(const ComplexMatrix& a, double tol);

/// Solves A X = B by partial-pivoted LU. Throws SingularMatrix when the
/// reciprocal condition estimate collapses.
ComplexMatrix mat_solve(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});
ComplexMatrix mat_inverse(const ComplexMatrix& a, const Tolerances& tol = {});

struct SymEig {
    RealVector values;   // ascending
    RealMatrix vectors;  // orthonormal columns
};

/// Eigen-decomposition of a real symmetric matrix; NotSymmetric otherwise.
SymEig sym_eig(const RealMatrix& m, const Tolerances& tol = {});

/// Largest singular value.
double svd_max(const ComplexMatrix& m);

/// All roots of p via companion-matrix eigenvalues, polished by Newton steps
/// on p. DegenerateInput for the zero polynomial.
std::vector<Complex> poly_roots(const Polynomial& p);

/// Removes common numerator/denominator factors. Nearly coincident roots are
/// divided out when the quotient is exact; failing that, pairs closer than
/// tol*max(1,|r|) are dropped and the numerator keeps its leading coefficient.
RationalFunction cancel_common_roots(const RationalFunction& f, double tol = 1e-7);

/// Projector I - (1/N) 1 1^T.
RealMatrix projector(Eigen::Index n);
/// Complete-graph Laplacian N I - 1 1^T.
RealMatrix complete_laplacian(Eigen::Index n);

}  // namespace netsync
