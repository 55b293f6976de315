#include "grasscurve/curve.hpp"

#include <Eigen/Dense>

namespace grasscurve {

Matrix<FloatComplex> origin_unitary(const std::vector<FloatComplex>& p0, const std::vector<FloatComplex>& q0) {
  const Eigen::Index N = static_cast<Eigen::Index>(p0.size());
  Eigen::MatrixXcd M(N, 2);
  for (Eigen::Index i = 0; i < N; ++i) {
    M(i, 0) = p0[static_cast<std::size_t>(i)];
    M(i, 1) = q0[static_cast<std::size_t>(i)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& s = svd.singularValues();
  if (s(1) <= 1e-12 * std::max(1.0, s(0))) throw CurveError("dependent frame at origin");
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
  const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(N, N);
  // Row vector x maps to x * conj(Q): coordinate j becomes <x, q_j>.
  Matrix<FloatComplex> W(p0.size(), p0.size());
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) W(i, j) = std::conj(Q(i, j));
  }
  return W;
}

}  // namespace grasscurve
