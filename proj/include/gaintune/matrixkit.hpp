#pragma once

#include <Eigen/Dense>

#include "gaintune/errors.hpp"

namespace gaintune {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Symmetric eigendecomposition result. Eigenvalues sorted descending;
/// eigenvector columns are orthonormal with the first nonzero component
/// of each column positive, so identical inputs give identical outputs.
struct SymEig {
    Vec eigenvalues;
    Mat eigenvectors;
};

double inf_norm(const Mat& a);

/// Cyclic-Jacobi eigendecomposition of a symmetric matrix.
/// Throws InvalidMatrix if `a` is not square or not symmetric within
/// 1e-12 relative tolerance.
SymEig sym_eig(const Mat& a);

/// Solve a x = b for square, well-conditioned a (condition estimate < 1e12).
/// Throws SingularSystem otherwise.
Mat linsolve(const Mat& a, const Mat& b);

/// Solve the Lyapunov equation  a' p + p a + q = 0  for symmetric q.
Mat solve_lyapunov(const Mat& a, const Mat& q);

struct CareSolution {
    Mat p; // stabilizing solution
    Mat k; // gain R^-1 B' P
};

/// Stabilizing solution of A'P + PA - P B R^-1 B' P + Q = 0.
/// Stable invariant subspace of the Hamiltonian matrix, refined by a
/// Newton iteration built on Lyapunov solves. Throws RiccatiFailure when
/// no stabilizing solution exists (non-stabilizable pair, indefinite R).
CareSolution solve_care(const Mat& a, const Mat& b, const Mat& q, const Mat& r);

/// True when all eigenvalues of `a` have real part < -tol.
bool is_hurwitz(const Mat& a, double tol = 0.0);

} // namespace gaintune
