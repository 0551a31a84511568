#pragma once

// Projected Hamiltonians and the strong-damping (Zeno) limit.

#include <optional>
#include <vector>

#include "zenoforge/lindblad.hpp"

namespace zenoforge {

/// Block-restricted and (for unital dissipators) superprojected controls.
struct ProjectedControlSystem {
  int block;
  std::vector<Mat> restricted;                  // B^† H B on the block basis
  std::optional<std::vector<Operator>> superprojected;  // P(H) on the full space
};

/// P_i H P_i expressed in the block basis (d_i x d_i).
Mat project_hamiltonian(const Operator& h, const DFSDecomposition& dfs, int block);

/// P(H) for a unital superprojector (P(1) = 1 is checked).
Operator superproject_hamiltonian(const Operator& h, const Superoperator& p);

/// P(H) for a unital dissipator without forming the d^2 x d^2 superprojector.
/// For unital D the steady-state projection is the Hilbert-Schmidt orthogonal
/// projection onto the commutant of {L_j, L_j^†}. That commutant is the kernel
/// of the positive map
///   W(X) = sum_j g_j ([L_j^†,[L_j,X]] + [L_j,[L_j^†,X]]),
/// so P(H) = H - Y where Y solves W(Y) = W(H) by conjugate gradients from 0.
/// The Hamiltonian part of the LindbladSpec is ignored.
Operator superproject_unital(const Operator& h, const LindbladSpec& spec);

ProjectedControlSystem project_controls(const std::vector<Operator>& controls, const LindbladSpec& spec,
                                        const DFSDecomposition& dfs, int block);

/// (P e^{K t/n} P)^n.
Superoperator zeno_product(const Superoperator& p, const Superoperator& k, double t, int n);

/// e^{P K P t} P, the n -> infinity limit of zeno_product.
Superoperator zeno_limit(const Superoperator& p, const Superoperator& k, double t);

/// Spectral norm of (e^{t(gK + D)} - e^{g t P K P}) P with K = -i[H, .] from the
/// spec's Hamiltonian and D, P from its dissipative part.
double strong_damping_error(const LindbladSpec& spec_with_h, double g, double t);

double spectral_norm(const Mat& m);

}  // namespace zenoforge
