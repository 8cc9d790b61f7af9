#pragma once

// Dense Hermitian kernels backed by CBLAS/LAPACKE; only the lower triangle of
// Hermitian arguments is referenced or written.

#include <Eigen/Dense>

namespace tdesign::linalg {

/// a += v v† on the lower triangle.
void hermitian_rank_update(Eigen::MatrixXcd& a, const Eigen::Ref<const Eigen::MatrixXcd>& v);

struct HermitianEigen {
  Eigen::VectorXd values;
  /// Empty unless vectors were requested.
  Eigen::MatrixXcd vectors;
};

/// Eigen-decomposition of the Hermitian matrix whose lower triangle is `a`.
HermitianEigen hermitian_eigen(Eigen::MatrixXcd a, bool with_vectors);

}  // namespace tdesign::linalg
