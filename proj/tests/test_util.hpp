#pragma once

// Random operators and channels for property tests.

#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "zenoforge/superop.hpp"

namespace zf_test {

using zenoforge::cplx;
using zenoforge::Mat;

inline Mat gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

inline Mat random_hermitian(int d, std::mt19937_64& rng) {
  const Mat g = gaussian(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

/// Haar-distributed unitary (QR with phase fix).
inline Mat random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Mat> qr(gaussian(d, d, rng));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (int i = 0; i < d; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

inline Mat random_density(int d, std::mt19937_64& rng) {
  const Mat g = gaussian(d, d, rng);
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

/// Random CPTP map from `kraus` Gaussian Kraus operators, normalized by
/// (sum K^† K)^{-1/2}.
inline zenoforge::Superoperator random_channel(const zenoforge::HilbertSpace& space, std::mt19937_64& rng, int kraus = 0) {
  const int d = space.dim();
  if (kraus <= 0) kraus = d;
  std::vector<Mat> ks;
  Mat s = Mat::Zero(d, d);
  for (int k = 0; k < kraus; ++k) {
    ks.push_back(gaussian(d, d, rng));
    s += ks.back().adjoint() * ks.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  const Mat inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  Mat e = Mat::Zero(d * d, d * d);
  for (const auto& k : ks) {
    const Mat kk = k * inv_sqrt;
    e += zenoforge::sandwich(kk, kk.adjoint());
  }
  return {space, e};
}

}  // namespace zf_test
