#pragma once

// Dense complex operators on labeled tensor-product Hilbert spaces.
//
// Basis convention: |0> is the sigma_z eigenvector with eigenvalue -1 and |1>
// the one with eigenvalue +1. Composite indices are row-major: the leftmost
// factor varies slowest.

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace zenoforge {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

/// Raised for dimension or space mismatches between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical precondition (Hermiticity, finiteness, attractivity,
/// ...) does not hold.
class NumericalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<int> factor_dims);

  static HilbertSpace qubits(int n);
  static HilbertSpace single(int d) { return HilbertSpace({d}); }

  const std::vector<int>& factor_dims() const { return dims_; }
  int num_factors() const { return static_cast<int>(dims_.size()); }
  int dim() const { return total_; }

  /// Concatenated space (this ⊗ other).
  HilbertSpace operator*(const HilbertSpace& other) const;

  bool operator==(const HilbertSpace& other) const { return dims_ == other.dims_; }
  bool operator!=(const HilbertSpace& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

class Operator {
 public:
  Operator(HilbertSpace space, Mat matrix);

  static Operator zero(const HilbertSpace& space);
  static Operator identity(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Mat& matrix() const { return m_; }
  int dim() const { return space_.dim(); }

  Operator adjoint() const { return {space_, m_.adjoint()}; }
  cplx trace() const { return m_.trace(); }

  bool is_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator-() const { return {space_, -m_}; }
  Operator operator*(cplx s) const { return {space_, s * m_}; }
  friend Operator operator*(cplx s, const Operator& a) { return a * s; }
  Operator& operator+=(const Operator& o);

 private:
  HilbertSpace space_;
  Mat m_;
};

/// Unit-trace, Hermitian, positive semidefinite operator (validated on
/// construction).
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator rho);

  static DensityMatrix maximally_mixed(const HilbertSpace& space);
  static DensityMatrix pure(const HilbertSpace& space, const Vec& psi);

  const Operator& op() const { return rho_; }
  const Mat& matrix() const { return rho_.matrix(); }
  const HilbertSpace& space() const { return rho_.space(); }

 private:
  Operator rho_;
};

enum class Axis { X, Y, Z };

/// 2x2 Pauli matrix in the basis convention above.
Mat pauli(Axis axis);

Operator pauli_on(const HilbertSpace& space, int site, Axis axis);

/// Embeds a local matrix acting on `site`.
Operator local_on(const HilbertSpace& space, int site, const Mat& local);

Operator tensor(const Operator& a, const Operator& b);

Operator commutator(const Operator& a, const Operator& b);

/// Tr{A^dagger B}.
cplx hs_inner(const Operator& a, const Operator& b);
double hs_norm(const Operator& a);

/// Matrix exponential (scaling and squaring with a Pade approximant).
Mat expm(const Mat& a);
Operator expm(const Operator& a);

/// Returns (e^A, L(A, E)) where L is the Frechet derivative of the exponential
/// at A in direction E, read off the exponential of [[A, E], [0, A]].
std::pair<Mat, Mat> expm_frechet(const Mat& a, const Mat& e);

/// Orthonormal basis (columns) of the right null space of `a`; singular values
/// below tol * max(1, sigma_max) count as zero.
Mat null_space(const Mat& a, double tol);

double max_abs_diff(const Mat& a, const Mat& b);

}  // namespace zenoforge
