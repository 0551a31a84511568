#pragma once

// Lindbladians in the convention
//   D(rho) = -i[H, rho] - sum_j g_j (L_j^† L_j rho + rho L_j^† L_j - 2 L_j rho L_j^†),
// i.e. the jump term carries an effective rate 2 g_j.

#include <string>
#include <vector>

#include "zenoforge/ops.hpp"
#include "zenoforge/superop.hpp"

namespace zenoforge {

struct LindbladTerm {
  double rate;
  Operator op;
};

class LindbladSpec {
 public:
  LindbladSpec(Operator hamiltonian, std::vector<LindbladTerm> terms);

  /// Purely dissipative spec (zero Hamiltonian).
  static LindbladSpec dissipative(const HilbertSpace& space, std::vector<LindbladTerm> terms);

  const HilbertSpace& space() const { return h_.space(); }
  const Operator& hamiltonian() const { return h_; }
  const std::vector<LindbladTerm>& terms() const { return terms_; }

  LindbladSpec with_hamiltonian(Operator h) const { return {std::move(h), terms_}; }
  LindbladSpec without_hamiltonian() const { return dissipative(space(), terms_); }
  LindbladSpec scaled_rates(double c) const;

  /// G = sum_j g_j L_j^† L_j.
  Operator g_operator() const;

 private:
  Operator h_;
  std::vector<LindbladTerm> terms_;
};

struct DFSBlock {
  Mat basis;                     // d x d_i, orthonormal columns
  std::vector<cplx> lambdas;     // one eigenvalue per Lindblad term
  double b = 0.0;                // sum_j g_j |lambda_j|^2
  int dim() const { return static_cast<int>(basis.cols()); }
  Mat projector() const { return basis * basis.adjoint(); }
};

struct DFSDecomposition {
  HilbertSpace space;
  std::vector<DFSBlock> blocks;
};

struct ZenoBoundReport {
  double tau_r;                    // +inf when some nonzero eigenvalue has Re = 0
  std::vector<cplx> nonzero_eigenvalues;
  bool attractive;
};

Superoperator dissipator_matrix(const LindbladSpec& spec);

/// e^{t D}.
Superoperator propagate(const LindbladSpec& spec, double t);

/// Spectral projection onto ker D along the complementary invariant subspace,
/// i.e. lim_{t->inf} e^{t D}.
Superoperator steady_superprojector(const LindbladSpec& spec);

/// Maximal joint-eigenvector subspaces of the Lindblad operators that are also
/// eigenspaces of G with eigenvalue b = sum_j g_j |lambda_j|^2. The Hamiltonian
/// is ignored.
DFSDecomposition detect_dfs(const LindbladSpec& spec);

ZenoBoundReport relaxation_report(const LindbladSpec& spec);

/// Matrix of D* with Tr{A D(rho)} = Tr{D*(A) rho}.
Superoperator dual_generator(const LindbladSpec& spec);

/// D(1) = 0 within tol.
bool is_unital(const LindbladSpec& spec, double tol = 1e-10);

/// True when H = 0 and every L_j is Hermitian; D is then self-adjoint and
/// negative semidefinite on the Hilbert-Schmidt space.
bool is_self_adjoint_dissipator(const LindbladSpec& spec, double tol = 1e-12);

/// Attractivity without forming the full spectrum when the generator is
/// self-adjoint (always attractive); otherwise falls back to relaxation_report.
bool is_attractive(const LindbladSpec& spec);

/// D applied to an operator without forming the d^2 x d^2 matrix.
Mat apply_dissipator(const LindbladSpec& spec, const Mat& rho);

// JSON: {"dims":[...], "hamiltonian":[[re,im],...], "terms":[{"rate":g,"op":[[re,im],...]}]}
// Matrices are flattened row-major.
std::string spec_to_json(const LindbladSpec& spec);
LindbladSpec spec_from_json(const std::string& text);

}  // namespace zenoforge
