#include "linalg.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace tdesign::linalg {

void hermitian_rank_update(Eigen::MatrixXcd& a, const Eigen::Ref<const Eigen::MatrixXcd>& v) {
  if (v.cols() == 0) return;
  cblas_zherk(CblasColMajor, CblasLower, CblasNoTrans, static_cast<int>(a.rows()), static_cast<int>(v.cols()),
              1.0, v.data(), static_cast<int>(v.outerStride()), 1.0, a.data(), static_cast<int>(a.rows()));
}

HermitianEigen hermitian_eigen(Eigen::MatrixXcd a, bool with_vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  HermitianEigen out;
  out.values.resize(a.rows());
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', n,
                     reinterpret_cast<lapack_complex_double*>(a.data()), n, out.values.data());
  if (info != 0) throw std::runtime_error("zheevd failed with info " + std::to_string(info));
  if (with_vectors) out.vectors = std::move(a);
  return out;
}

}  // namespace tdesign::linalg
