#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "eqhodge/error.hpp"

namespace eqhodge {

struct JacobiOptions {
  double relative_tolerance = 1e-12;  // stop when off(A) <= tol·‖A‖_F
  int max_sweeps = 100;
};

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) ↔ values(i)
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
///
/// Rotations sweep the strict upper triangle in row order; each rotation
/// zeroes one off-diagonal pair using the numerically stable tangent
/// formula. Deterministic for a fixed input.
inline EigenDecomposition jacobi_eigen(const Eigen::MatrixXd& input, const JacobiOptions& opt = {}) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw Error("hodge", "spectrum", "matrix is not square");
  const double scale = input.cwiseAbs().maxCoeff();
  if (n > 0 && (input - input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
    throw Error("hodge", "spectrum", "matrix is not symmetric");

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double frob = a.norm();
  const double target = opt.relative_tolerance * frob;

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index j = 1; j < n; ++j)
      for (Eigen::Index i = 0; i < j; ++i) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep == opt.max_sweeps) throw Error("hodge", "spectrum", "Jacobi did not converge within the sweep budget");
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- Jᵀ A J with J the rotation in the (p,q) plane.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  out.sweeps = sweep;
  return out;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace eqhodge
