#include "zenoforge/ops.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace zenoforge {

HilbertSpace::HilbertSpace(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw DimensionError("HilbertSpace: factor list is empty");
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw DimensionError("HilbertSpace: factor dimension must be positive");
    total_ *= d;
  }
}

HilbertSpace HilbertSpace::qubits(int n) {
  if (n < 1) throw DimensionError("HilbertSpace::qubits: need at least one qubit");
  return HilbertSpace(std::vector<int>(static_cast<std::size_t>(n), 2));
}

HilbertSpace HilbertSpace::operator*(const HilbertSpace& other) const {
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return HilbertSpace(std::move(dims));
}

std::string HilbertSpace::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ']';
  return os.str();
}

Operator::Operator(HilbertSpace space, Mat matrix) : space_(std::move(space)), m_(std::move(matrix)) {
  if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
    throw DimensionError("Operator: matrix side " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()) + " does not match space dimension " +
                         std::to_string(space_.dim()));
  }
}

Operator Operator::zero(const HilbertSpace& space) {
  return {space, Mat::Zero(space.dim(), space.dim())};
}

Operator Operator::identity(const HilbertSpace& space) {
  return {space, Mat::Identity(space.dim(), space.dim())};
}

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  return (m_.adjoint() * m_ - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

namespace {
void require_same_space(const Operator& a, const Operator& b, const char* what) {
  if (a.space() != b.space()) {
    throw DimensionError(std::string(what) + ": operands live on different spaces " +
                         a.space().to_string() + " and " + b.space().to_string());
  }
}
}  // namespace

Operator Operator::operator+(const Operator& o) const {
  require_same_space(*this, o, "operator+");
  return {space_, m_ + o.m_};
}

Operator Operator::operator-(const Operator& o) const {
  require_same_space(*this, o, "operator-");
  return {space_, m_ - o.m_};
}

Operator Operator::operator*(const Operator& o) const {
  require_same_space(*this, o, "operator*");
  return {space_, m_ * o.m_};
}

Operator& Operator::operator+=(const Operator& o) {
  require_same_space(*this, o, "operator+=");
  m_ += o.m_;
  return *this;
}

DensityMatrix::DensityMatrix(Operator rho) : rho_(std::move(rho)) {
  constexpr double tol = 1e-10;
  if (std::abs(rho_.trace() - cplx(1.0)) > tol) throw NumericalError("DensityMatrix: trace is not 1");
  if (!rho_.is_hermitian(tol)) throw NumericalError("DensityMatrix: not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho_.matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw NumericalError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
  const int d = space.dim();
  return DensityMatrix(Operator(space, Mat::Identity(d, d) / static_cast<double>(d)));
}

DensityMatrix DensityMatrix::pure(const HilbertSpace& space, const Vec& psi) {
  const Vec n = psi / psi.norm();
  return DensityMatrix(Operator(space, n * n.adjoint()));
}

Mat pauli(Axis axis) {
  Mat s(2, 2);
  switch (axis) {
    case Axis::X:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case Axis::Y:
      // With |0> <-> -1 the index order is (down, up), so sigma_y picks up a sign.
      s << 0.0, kI, -kI, 0.0;
      break;
    case Axis::Z:
      s << -1.0, 0.0, 0.0, 1.0;
      break;
  }
  return s;
}

Operator local_on(const HilbertSpace& space, int site, const Mat& local) {
  const auto& dims = space.factor_dims();
  if (site < 0 || site >= space.num_factors()) {
    throw DimensionError("local_on: site " + std::to_string(site) + " out of range");
  }
  if (local.rows() != dims[static_cast<std::size_t>(site)] || local.cols() != local.rows()) {
    throw DimensionError("local_on: local operator does not match factor dimension");
  }
  int left = 1;
  for (int i = 0; i < site; ++i) left *= dims[static_cast<std::size_t>(i)];
  const int right = space.dim() / (left * static_cast<int>(local.rows()));
  Mat out = Eigen::kroneckerProduct(Mat::Identity(left, left), local).eval();
  out = Eigen::kroneckerProduct(out, Mat::Identity(right, right)).eval();
  return {space, std::move(out)};
}

Operator pauli_on(const HilbertSpace& space, int site, Axis axis) {
  if (site < 0 || site >= space.num_factors()) {
    throw DimensionError("pauli_on: site " + std::to_string(site) + " out of range");
  }
  if (space.factor_dims()[static_cast<std::size_t>(site)] != 2) {
    throw DimensionError("pauli_on: factor at site " + std::to_string(site) + " is not a qubit");
  }
  return local_on(space, site, pauli(axis));
}

Operator tensor(const Operator& a, const Operator& b) {
  return {a.space() * b.space(), Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval()};
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_space(a, b, "commutator");
  return {a.space(), a.matrix() * b.matrix() - b.matrix() * a.matrix()};
}

cplx hs_inner(const Operator& a, const Operator& b) {
  require_same_space(a, b, "hs_inner");
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
}

double hs_norm(const Operator& a) { return a.matrix().norm(); }

Mat expm(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm: matrix is not square");
  if (!a.allFinite()) throw NumericalError("expm: non-finite entries");
  return a.exp();
}

Operator expm(const Operator& a) { return {a.space(), expm(a.matrix())}; }

std::pair<Mat, Mat> expm_frechet(const Mat& a, const Mat& e) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || e.rows() != n || e.cols() != n) {
    throw DimensionError("expm_frechet: shape mismatch");
  }
  Mat block = Mat::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a;
  block.topRightCorner(n, n) = e;
  block.bottomRightCorner(n, n) = a;
  const Mat x = expm(block);
  return {x.topLeftCorner(n, n), x.topRightCorner(n, n)};
}

Mat null_space(const Mat& a, double tol) {
  if (a.cols() == 0) return Mat(0, 0);
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double cut = tol * std::max(1.0, smax);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace zenoforge
