#include "zenoforge/channels.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "json.hpp"

namespace zenoforge {

bool ChoiMatrix::is_hermitian(double tol) const { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol; }

bool ChoiMatrix::is_completely_positive(double tol) const {
  if (!is_hermitian(1e-8)) return false;
  const Mat h = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool ChoiMatrix::is_pure(double tol) const { return max_abs_diff(matrix * matrix, matrix) <= tol; }

double ChoiMatrix::purity() const { return (matrix * matrix).trace().real(); }

ChoiMatrix choi(const Superoperator& e) {
  const int d = e.dim();
  return {e.space(), reshuffle(e.matrix(), d) / static_cast<double>(d)};
}

Superoperator superop_from_choi(const ChoiMatrix& j) {
  const int d = j.space.dim();
  return {j.space, reshuffle(j.matrix, d) * static_cast<double>(d)};
}

double epsilon1(const Superoperator& et, const Superoperator& eg) {
  if (et.space() != eg.space()) throw DimensionError("epsilon1: channels act on different spaces");
  return (et.matrix() - eg.matrix()).squaredNorm();
}

int leading_factors(const HilbertSpace& space, int d1) {
  int prod = 1;
  for (int k = 0; k < space.num_factors(); ++k) {
    if (prod == d1 && k > 0) return k;
    prod *= space.factor_dims()[static_cast<std::size_t>(k)];
  }
  throw DimensionError("space " + space.to_string() + " does not split as a d1 = " + std::to_string(d1) +
                       " system times a nontrivial second system");
}

Mat goal_weight(const Operator& ug, int d2) {
  const int d1 = ug.dim();
  const Mat jg = choi(unitary_channel(ug)).matrix;
  const Mat s = middle_swap(d1, d2);
  const Mat id2 = Mat::Identity(d2 * d2, d2 * d2);
  return s * Eigen::kroneckerProduct(jg, id2).eval() * s.transpose();
}

namespace {

void check_goal(const HilbertSpace& space, const Operator& ug) {
  if (!ug.is_unitary(1e-9)) throw NumericalError("goal operator is not unitary");
  leading_factors(space, ug.dim());
}

}  // namespace

double epsilon2(const Superoperator& et, const Operator& ug) {
  check_goal(et.space(), ug);
  const Mat j = choi(et).matrix;
  const Mat w = goal_weight(ug, et.dim() / ug.dim());
  const Mat j2 = j * j;
  return (j2.trace() - (j2 * w).trace()).real();
}

double epsilon2_unitary(const Operator& ut, const Operator& ug) {
  check_goal(ut.space(), ug);
  if (!ut.is_unitary(1e-9)) throw NumericalError("epsilon2_unitary: U_T is not unitary");
  const Mat j = choi(unitary_channel(ut)).matrix;
  const Mat w = goal_weight(ug, ut.dim() / ug.dim());
  return 1.0 - (j * w).trace().real();
}

double factorized_choi_distance(const Superoperator& et, const Operator& ug, const Superoperator& etilde) {
  check_goal(et.space(), ug);
  if (etilde.dim() * ug.dim() != et.dim()) throw DimensionError("factorized_choi_distance: E~ has the wrong dimension");
  const Mat jt = choi(et).matrix;
  const Mat s = middle_swap(ug.dim(), etilde.dim());
  const Mat jg = Eigen::kroneckerProduct(choi(unitary_channel(ug)).matrix, choi(etilde).matrix).eval();
  return (jt - s * jg * s.transpose()).squaredNorm();
}

Mat partial_trace_second(const Mat& rho, int d1, int d2) {
  if (rho.rows() != d1 * d2 || rho.cols() != d1 * d2) throw DimensionError("partial_trace_second: shape mismatch");
  Mat out = Mat::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j)
      for (int b = 0; b < d2; ++b) out(i, j) += rho(i * d2 + b, j * d2 + b);
  return out;
}

Superoperator reduced_channel(const Superoperator& et, const DensityMatrix& rho2) {
  const int d = et.dim();
  const int d2 = rho2.space().dim();
  if (d2 < 1 || d % d2 != 0) throw DimensionError("reduced_channel: rho2 does not match system 2");
  const int d1 = d / d2;
  const int k = leading_factors(et.space(), d1);
  const auto& dims = et.space().factor_dims();
  const HilbertSpace s1(std::vector<int>(dims.begin(), dims.begin() + k));

  // Column (k,l) of the reduced matrix is vec Tr_2 E(|k><l| ⊗ rho2).
  Mat m(d1 * d1, d1 * d1);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d1; ++b) {
      Mat unit = Mat::Zero(d1, d1);
      unit(a, b) = 1.0;
      const Mat in = Eigen::kroneckerProduct(unit, rho2.matrix()).eval();
      const Mat out = unvectorize(et.matrix() * vectorize(in), d);
      m.col(a * d1 + b) = vectorize(partial_trace_second(out, d1, d2));
    }
  return {s1, std::move(m)};
}

double diamond_upper(const Superoperator& et, const Superoperator& eg) {
  return static_cast<double>(et.dim()) * std::sqrt(epsilon1(et, eg));
}

GateErrorReport gate_error_report(const Superoperator& et, const Operator& ug, const Superoperator& etilde,
                                  const DensityMatrix& rho2) {
  GateErrorReport r;
  const Superoperator goal = superop_tensor(unitary_channel(ug), etilde);
  if (goal.space() != et.space()) throw DimensionError("gate_error_report: U_G ⊗ E~ does not match E_T");
  r.epsilon1 = epsilon1(et, goal);
  r.epsilon2 = epsilon2(et, ug);
  r.diamond_upper = diamond_upper(et, goal);
  const Superoperator reduced = reduced_channel(et, rho2);
  r.reduced_error = (reduced.matrix() - unitary_channel(Operator(reduced.space(), ug.matrix())).matrix()).squaredNorm();
  r.reduced_diamond_upper = static_cast<double>(ug.dim()) * std::sqrt(r.reduced_error);
  r.purity_exceeds_one = choi(et).purity() > 1.0 + 1e-9;
  return r;
}

std::string report_to_json(const GateErrorReport& r) {
  nlohmann::json j;
  j["epsilon1"] = r.epsilon1;
  j["epsilon2"] = r.epsilon2;
  j["diamond_upper"] = r.diamond_upper;
  j["reduced_error"] = r.reduced_error;
  j["reduced_diamond_upper"] = r.reduced_diamond_upper;
  j["purity_exceeds_one"] = r.purity_exceeds_one;
  return j.dump();
}

}  // namespace zenoforge
