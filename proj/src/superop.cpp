#include "zenoforge/superop.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace zenoforge {

Superoperator::Superoperator(HilbertSpace space, Mat matrix) : space_(std::move(space)), m_(std::move(matrix)) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(space_.dim()) * space_.dim();
  if (m_.rows() != d2 || m_.cols() != d2) {
    throw DimensionError("Superoperator: matrix is not d^2 x d^2 for space " + space_.to_string());
  }
}

Superoperator Superoperator::identity(const HilbertSpace& space) {
  const int n = space.dim() * space.dim();
  return {space, Mat::Identity(n, n)};
}

Superoperator Superoperator::zero(const HilbertSpace& space) {
  const int n = space.dim() * space.dim();
  return {space, Mat::Zero(n, n)};
}

Operator Superoperator::apply(const Operator& rho) const {
  if (rho.space() != space_) throw DimensionError("Superoperator::apply: space mismatch");
  return {space_, unvectorize(m_ * vectorize(rho.matrix()), dim())};
}

Superoperator Superoperator::operator*(const Superoperator& other) const {
  if (other.space_ != space_) throw DimensionError("Superoperator composition: space mismatch");
  return {space_, m_ * other.m_};
}

Superoperator Superoperator::operator+(const Superoperator& other) const {
  if (other.space_ != space_) throw DimensionError("Superoperator sum: space mismatch");
  return {space_, m_ + other.m_};
}

Superoperator Superoperator::operator-(const Superoperator& other) const {
  if (other.space_ != space_) throw DimensionError("Superoperator difference: space mismatch");
  return {space_, m_ - other.m_};
}

double Superoperator::trace_preservation_defect() const {
  // Tr{E(X)} = sum_i E(X)_{ii}; the trace functional in vec form is vec(1).
  const int d = dim();
  const Vec tr = vectorize(Mat::Identity(d, d));
  const Eigen::RowVectorXcd row = tr.transpose() * m_ - tr.transpose();
  return row.cwiseAbs().maxCoeff();
}

Vec vectorize(const Mat& rho) {
  const Eigen::Index d = rho.rows();
  Vec v(d * rho.cols());
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
  return v;
}

Mat unvectorize(const Vec& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw DimensionError("unvectorize: length mismatch");
  Mat rho(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  return rho;
}

Mat sandwich(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b.transpose()).eval(); }

Superoperator hamiltonian_superop(const Operator& h) {
  const int d = h.dim();
  const Mat id = Mat::Identity(d, d);
  return {h.space(), -kI * (sandwich(h.matrix(), id) - sandwich(id, h.matrix()))};
}

Superoperator unitary_channel(const Operator& u) {
  return {u.space(), Eigen::kroneckerProduct(u.matrix(), u.matrix().conjugate()).eval()};
}

Mat middle_swap(int d1, int d2) {
  const int n = d1 * d1 * d2 * d2;
  Mat s = Mat::Zero(n, n);
  for (int a = 0; a < d1; ++a)
    for (int ap = 0; ap < d1; ++ap)
      for (int b = 0; b < d2; ++b)
        for (int bp = 0; bp < d2; ++bp) {
          const int from = ((a * d1 + ap) * d2 + b) * d2 + bp;
          const int to = ((a * d2 + b) * d1 + ap) * d2 + bp;
          s(to, from) = 1.0;
        }
  return s;
}

Superoperator superop_tensor(const Superoperator& e1, const Superoperator& e2) {
  const int d1 = e1.dim();
  const int d2 = e2.dim();
  const Mat s = middle_swap(d1, d2);
  Mat k = Eigen::kroneckerProduct(e1.matrix(), e2.matrix()).eval();
  return {e1.space() * e2.space(), s * k * s.transpose()};
}

Mat reshuffle(const Mat& x, int d) {
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  if (x.rows() != n || x.cols() != n) throw DimensionError("reshuffle: shape mismatch");
  Mat out(n, n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(a * d + i, b * d + j) = x(a * d + b, i * d + j);
  return out;
}

}  // namespace zenoforge
