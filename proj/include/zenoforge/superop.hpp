#pragma once

// Superoperators act on row-vectorized density matrices:
//   vec(rho)[i*d + j] = rho(i, j),   vec(A rho B) = (A ⊗ B^T) vec(rho).

#include "zenoforge/ops.hpp"

namespace zenoforge {

class Superoperator {
 public:
  Superoperator(HilbertSpace space, Mat matrix);

  static Superoperator identity(const HilbertSpace& space);
  static Superoperator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Mat& matrix() const { return m_; }
  int dim() const { return space_.dim(); }

  Operator apply(const Operator& rho) const;

  /// this ∘ other
  Superoperator operator*(const Superoperator& other) const;
  Superoperator operator+(const Superoperator& other) const;
  Superoperator operator-(const Superoperator& other) const;
  Superoperator operator*(cplx s) const { return {space_, s * m_}; }

  /// Max deviation of Tr{E(X)} from Tr{X} over matrix units.
  double trace_preservation_defect() const;

 private:
  HilbertSpace space_;
  Mat m_;
};

Vec vectorize(const Mat& rho);
Mat unvectorize(const Vec& v, int d);

/// Matrix of rho -> A rho B.
Mat sandwich(const Mat& a, const Mat& b);

/// Matrix of rho -> -i[H, rho].
Superoperator hamiltonian_superop(const Operator& h);

/// Unitary conjugation rho -> U rho U^dagger.
Superoperator unitary_channel(const Operator& u);

/// Permutation taking basis order (a, a', b, b') to (a, b, a', b') with
/// a, a' of dimension d1 and b, b' of dimension d2.
Mat middle_swap(int d1, int d2);

/// Superoperator of E1 ⊗ E2 on the composite space.
Superoperator superop_tensor(const Superoperator& e1, const Superoperator& e2);

/// Permutes entries ((a,b),(i,j)) <-> ((a,i),(b,j)); an involution.
Mat reshuffle(const Mat& x, int d);

}  // namespace zenoforge
