#include "mtspec/eigensolve.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "mtspec/error.hpp"

namespace mtspec {
namespace {

EigenPairs finish(Eigen::VectorXd values, Eigen::MatrixXd vectors, EigenOrder order) {
  if (order == EigenOrder::descending) {
    values.reverseInPlace();
    vectors = vectors.rowwise().reverse().eval();
  }
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) fix_sign(vectors.col(k));
  return {std::move(values), std::move(vectors)};
}

template <typename Apply>
void check_residuals(const EigenPairs& pairs, double scale, double tol, Apply apply) {
  for (Eigen::Index k = 0; k < pairs.vectors.cols(); ++k) {
    const Eigen::VectorXd v = pairs.vectors.col(k);
    const double r = (apply(v) - pairs.values(k) * v).norm();
    if (!(r <= tol * std::max(1.0, scale))) {
      throw NumericalError("eigensolver: residual " + std::to_string(r) + " for eigenpair " +
                           std::to_string(k) + " exceeds tolerance " + std::to_string(tol));
    }
  }
}

Eigen::VectorXd tridiagonal_apply(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, const Eigen::VectorXd& v) {
  const Eigen::Index n = diag.size();
  Eigen::VectorXd out = diag.cwiseProduct(v);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    out(i) += sub(i) * v(i + 1);
    out(i + 1) += sub(i) * v(i);
  }
  return out;
}

double tridiagonal_scale(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub) {
  return diag.cwiseAbs().maxCoeff() + 2.0 * (sub.size() > 0 ? sub.cwiseAbs().maxCoeff() : 0.0);
}

// Solves (T - shift I) x = b by Gaussian elimination with partial pivoting
// (the LAPACK gtsv scheme). Exactly zero pivots are replaced by `tiny`, which
// is what inverse iteration at a computed eigenvalue needs.
void shifted_tridiagonal_solve(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, double shift, double tiny,
                               Eigen::VectorXd& b) {
  const Eigen::Index n = diag.size();
  Eigen::VectorXd d = diag.array() - shift;
  Eigen::VectorXd dl = sub;
  Eigen::VectorXd du = sub;
  auto pivot = [&](Eigen::Index i) {
    if (std::abs(d(i)) < tiny) d(i) = d(i) < 0 ? -tiny : tiny;
  };
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(d(i)) >= std::abs(dl(i))) {
      pivot(i);
      const double fact = dl(i) / d(i);
      d(i + 1) -= fact * du(i);
      b(i + 1) -= fact * b(i);
      dl(i) = 0.0;
    } else {
      const double fact = d(i) / dl(i);
      d(i) = dl(i);
      const double temp = d(i + 1);
      d(i + 1) = du(i) - fact * temp;
      if (i + 2 < n) {
        dl(i) = du(i + 1);
        du(i + 1) = -fact * dl(i);
      } else {
        dl(i) = 0.0;
      }
      du(i) = temp;
      const double bt = b(i);
      b(i) = b(i + 1);
      b(i + 1) = bt - fact * b(i + 1);
    }
  }
  pivot(n - 1);
  b(n - 1) /= d(n - 1);
  if (n > 1) b(n - 2) = (b(n - 2) - du(n - 2) * b(n - 1)) / d(n - 2);
  for (Eigen::Index i = n - 3; i >= 0; --i) b(i) = (b(i) - du(i) * b(i + 1) - dl(i) * b(i + 2)) / d(i);
}

}  // namespace

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

EigenPairs symmetric_eigen(const Eigen::MatrixXd& m, EigenOrder order, double residual_tol) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ArgumentError("symmetric_eigen: matrix must be square and nonempty");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric_eigen: solver did not converge for order " + std::to_string(m.rows()));
  }
  auto pairs = finish(solver.eigenvalues(), solver.eigenvectors(), order);
  const double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
  check_residuals(pairs, scale, residual_tol, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(m * v); });
  return pairs;
}

EigenPairs tridiagonal_eigen(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag,
                             EigenOrder order, double residual_tol) {
  const Eigen::Index n = diag.size();
  if (n == 0 || subdiag.size() != std::max<Eigen::Index>(n - 1, 0)) {
    throw ArgumentError("tridiagonal_eigen: inconsistent diagonal sizes");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("tridiagonal_eigen: solver did not converge for order " + std::to_string(n));
  }
  auto pairs = finish(solver.eigenvalues(), solver.eigenvectors(), order);
  check_residuals(pairs, tridiagonal_scale(diag, subdiag), residual_tol,
                  [&](const Eigen::VectorXd& v) { return tridiagonal_apply(diag, subdiag, v); });
  return pairs;
}

EigenPairs tridiagonal_eigen_partial(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag, EigenOrder order,
                                     Eigen::Index count, double residual_tol) {
  const Eigen::Index n = diag.size();
  if (n == 0 || subdiag.size() != std::max<Eigen::Index>(n - 1, 0)) {
    throw ArgumentError("tridiagonal_eigen: inconsistent diagonal sizes");
  }
  if (count < 1 || count > n) throw ArgumentError("tridiagonal_eigen_partial: count must lie in [1, n]");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("tridiagonal_eigen: solver did not converge for order " + std::to_string(n));
  }
  Eigen::VectorXd all = solver.eigenvalues();
  if (order == EigenOrder::descending) all.reverseInPlace();

  const double scale = tridiagonal_scale(diag, subdiag);
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
  Eigen::VectorXd values = all.head(count);
  Eigen::MatrixXd vectors(n, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    // Fixed start with no symmetry, so neither even nor odd vectors are missed.
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(1.0 + 0.7 * static_cast<double>(i * i + k));
    v.normalize();
    for (int it = 0; it < 4; ++it) {
      shifted_tridiagonal_solve(diag, subdiag, values(k), tiny, v);
      for (Eigen::Index j = 0; j < k; ++j) v -= vectors.col(j).dot(v) * vectors.col(j);
      v.normalize();
    }
    fix_sign(v);
    vectors.col(k) = v;
  }
  EigenPairs pairs{std::move(values), std::move(vectors)};
  check_residuals(pairs, scale, residual_tol,
                  [&](const Eigen::VectorXd& v) { return tridiagonal_apply(diag, subdiag, v); });
  return pairs;
}

}  // namespace mtspec
