#pragma once

#include <Eigen/Dense>

namespace mtspec {

enum class EigenOrder { ascending, descending };

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // one eigenvector per column
};

/// Full eigendecomposition of a dense symmetric matrix.
///
/// Columns are ordered by `order`, each normalized with its first component
/// of magnitude > 1e-8 positive. Throws NumericalError if the solver does not
/// converge or any residual ||M v - λ v|| exceeds `residual_tol` (scaled by
/// max(1, ||M||)).
EigenPairs symmetric_eigen(const Eigen::MatrixXd& m, EigenOrder order,
                           double residual_tol = 1e-10);

/// Same contract for a symmetric tridiagonal matrix given by its diagonal and
/// sub-diagonal.
EigenPairs tridiagonal_eigen(const Eigen::VectorXd& diag,
                             const Eigen::VectorXd& subdiag, EigenOrder order,
                             double residual_tol = 1e-10);

/// The first `count` eigenpairs in `order` of a symmetric tridiagonal matrix:
/// all eigenvalues by implicit QR, eigenvectors by inverse iteration. Meant
/// for well separated eigenvalues; same residual contract as above.
EigenPairs tridiagonal_eigen_partial(const Eigen::VectorXd& diag,
                                     const Eigen::VectorXd& subdiag,
                                     EigenOrder order, Eigen::Index count,
                                     double residual_tol = 1e-10);

/// Flip v so its first component of magnitude > 1e-8 is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v);

}  // namespace mtspec
