#pragma once

// Choi matrices and channel distances.
//
// J(E) = (E ⊗ id)(|Ω><Ω|) with |Ω> = d^{-1/2} sum_i |i>|i>, so the channel acts on
// the first slot. In terms of the row-vectorized matrix, J = reshuffle(E) / d.

#include <string>

#include "zenoforge/ops.hpp"
#include "zenoforge/superop.hpp"

namespace zenoforge {

struct ChoiMatrix {
  HilbertSpace space;  // the channel's space; matrix is d^2 x d^2 on (out, ref)
  Mat matrix;

  bool is_hermitian(double tol = 1e-10) const;
  bool is_completely_positive(double tol = 1e-9) const;
  /// J^2 = J (unitary channel).
  bool is_pure(double tol = 1e-9) const;
  double purity() const;  // Re Tr J^2
};

ChoiMatrix choi(const Superoperator& e);
Superoperator superop_from_choi(const ChoiMatrix& j);

/// ||E_T - E_G||_HS^2 on the d^2 x d^2 matrices.
double epsilon1(const Superoperator& et, const Superoperator& eg);

/// Number of leading factors of `space` whose dimensions multiply to d1
/// (system 1). Throws DimensionError when no proper split exists.
int leading_factors(const HilbertSpace& space, int d1);

/// S (J(U_G) ⊗ 1) S^† on the Choi space of the composite system.
Mat goal_weight(const Operator& ug, int d2);

/// Re Tr{J^2(E_T) (1 - S (J(U_G) ⊗ 1) S^†)}.
double epsilon2(const Superoperator& et, const Operator& ug);

/// 1 - Re Tr{J(U_T) S (J(U_G) ⊗ 1) S^†} for a unitary U_T on the composite system.
double epsilon2_unitary(const Operator& ut, const Operator& ug);

/// ||J(E_T) - S (J(U_G) ⊗ J(E~)) S^†||_HS^2, which equals epsilon1 against the
/// factorized goal U_G ⊗ E~ divided by d^2.
double factorized_choi_distance(const Superoperator& et, const Operator& ug, const Superoperator& etilde);

/// E^(1)(rho1) = Tr_2 E(rho1 ⊗ rho2), as a d1^2 x d1^2 superoperator on the
/// leading factors.
Superoperator reduced_channel(const Superoperator& et, const DensityMatrix& rho2);

/// Partial trace over the trailing d2-dimensional factor.
Mat partial_trace_second(const Mat& rho, int d1, int d2);

/// d ||E_T - E_G||_HS.
double diamond_upper(const Superoperator& et, const Superoperator& eg);

struct GateErrorReport {
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double diamond_upper = 0.0;          // d sqrt(epsilon1) on the full space
  double reduced_error = 0.0;          // ||E^(1) - U_G||_HS^2
  double reduced_diamond_upper = 0.0;  // d1 sqrt(reduced_error)
  bool purity_exceeds_one = false;     // Tr J^2 > 1 + 1e-9: E_T is not a channel
};

/// Report for E_T against U_G on system 1, E~ on system 2, and initial rho2.
GateErrorReport gate_error_report(const Superoperator& et, const Operator& ug, const Superoperator& etilde,
                                  const DensityMatrix& rho2);
std::string report_to_json(const GateErrorReport& r);

}  // namespace zenoforge
