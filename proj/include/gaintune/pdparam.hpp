#pragma once

#include <string>

#include "gaintune/matrixkit.hpp"

namespace gaintune {

/// How a positive-definite penalty matrix is built from a decision vector.
///
/// Diagonal         : N positive diagonal entries.
/// EigenGEAGSP      : N eigenvalues + N(N-1)/2 generalized-Euler angles;
///                    eigenvector matrix from successive spherical unit
///                    vectors projected through a Gram-Schmidt null-space
///                    basis.
/// EigenCayley      : N eigenvalues + N(N-1)/2 skew entries; eigenvector
///                    matrix (I+X)(I-X)^-1.
/// EigenGivens      : N eigenvalues + N(N-1)/2 plane-rotation angles.
/// DirectSymmetric  : (N^2+N)/2 free symmetric entries, positive-
///                    definiteness checked after the fact.
enum class PenaltyKind { Diagonal, EigenGEAGSP, EigenCayley, EigenGivens, DirectSymmetric };

const char* kind_name(PenaltyKind k);
PenaltyKind kind_from_name(const std::string& name);

struct PenaltyParams {
    PenaltyKind kind = PenaltyKind::Diagonal;
    int dimension = 0;
    Vec values;
};

/// Number of decision variables for a given kind and dimension.
int param_count(PenaltyKind kind, int n);

/// Orthogonal matrix from generalized Euler angles + Gram-Schmidt
/// completion. Angle count N(N-1)/2 fixes N. The final column sign is
/// chosen so det(Q) = +1, which reproduces the plane-rotation form at N=2.
Mat ortho_geagsp(const Vec& angles);

/// Cayley transform of the skew-symmetric matrix built from the parameter
/// vector (lower triangle, rows top to bottom). Always special orthogonal.
Mat ortho_cayley(const Vec& skew_params);

/// Product of transposed plane rotations, planes ordered (2,1),(3,1),(3,2),...
Mat ortho_givens(const Vec& angles);

/// Assemble the penalty matrix for a parameter set. Eigen* kinds are
/// positive-definite by construction; DirectSymmetric is verified through
/// sym_eig and rejected (NotPositiveDefinite) when any eigenvalue <= 0.
Mat assemble(const PenaltyParams& params);

struct Bounds {
    Vec lower;
    Vec upper;
};

/// Box bounds for the decision vector of a given kind: eigenvalue and
/// diagonal slots in [eig_lo, eig_hi], angles in [0, 2pi], Cayley skew
/// entries in [-10, 10].
Bounds bounds_for(PenaltyKind kind, int n, double eig_lo, double eig_hi);

} // namespace gaintune
