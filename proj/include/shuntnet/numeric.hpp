#pragma once

#include <Eigen/Dense>

namespace shuntnet {

// Small shared numeric helpers for symmetric matrices. All of them assume
// the input is square; symmetry is the caller's claim and is only measured,
// never silently enforced.

/// Max absolute asymmetry |A - A^T| relative to max |A| (0 for empty A).
double asymmetry(const Eigen::MatrixXd& a);

/// True when asymmetry(a) <= rel_tol.
bool nearly_symmetric(const Eigen::MatrixXd& a, double rel_tol);

/// Smallest eigenvalue of the symmetrized part of `a`.
double sym_min_eigenvalue(const Eigen::MatrixXd& a);

/// Spectral norm (largest absolute eigenvalue) of the symmetrized part.
double sym_spectral_norm(const Eigen::MatrixXd& a);

/// True when all eigenvalues of sym(a) are >= -rel_tol * ||a||_2.
bool sym_positive_semidefinite(const Eigen::MatrixXd& a, double rel_tol);

/// Replace `a` by its symmetric part (A + A^T) / 2.
void symmetrize(Eigen::MatrixXd& a);

/// Principal square root of an SPD matrix via symmetric eigendecomposition.
/// Throws NumericsError when an eigenvalue is not strictly positive.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a);

/// Inverse principal square root of an SPD matrix, same method and error
/// behavior as spd_sqrt.
Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a);

/// 2-norm condition number from singular values.
double condition_number(const Eigen::MatrixXd& a);

} // namespace shuntnet
