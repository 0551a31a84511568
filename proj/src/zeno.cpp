#include "zenoforge/zeno.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace zenoforge {

Mat project_hamiltonian(const Operator& h, const DFSDecomposition& dfs, int block) {
  if (block < 0 || block >= static_cast<int>(dfs.blocks.size())) {
    throw std::out_of_range("project_hamiltonian: block " + std::to_string(block) + " out of range");
  }
  if (h.space() != dfs.space) throw DimensionError("project_hamiltonian: space mismatch");
  if (!h.is_hermitian()) throw NumericalError("project_hamiltonian: H is not Hermitian");
  const Mat& b = dfs.blocks[static_cast<std::size_t>(block)].basis;
  return b.adjoint() * h.matrix() * b;
}

Operator superproject_hamiltonian(const Operator& h, const Superoperator& p) {
  if (h.space() != p.space()) throw DimensionError("superproject_hamiltonian: space mismatch");
  const Operator id = Operator::identity(h.space());
  if (max_abs_diff(p.apply(id).matrix(), id.matrix()) > 1e-8) {
    throw NumericalError("superproject_hamiltonian: superprojector is not unital");
  }
  return p.apply(h);
}

namespace {

Mat commutant_residual_map(const LindbladSpec& spec, const Mat& x) {
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const auto& t : spec.terms()) {
    if (t.rate == 0.0) continue;
    const Mat& l = t.op.matrix();
    const Mat ld = l.adjoint();
    const Mat c1 = l * x - x * l;
    const Mat c2 = ld * x - x * ld;
    out += t.rate * ((ld * c1 - c1 * ld) + (l * c2 - c2 * l));
  }
  return out;
}

cplx inner(const Mat& a, const Mat& b) { return a.conjugate().cwiseProduct(b).sum(); }

}  // namespace

Operator superproject_unital(const Operator& h, const LindbladSpec& spec) {
  if (h.space() != spec.space()) throw DimensionError("superproject_unital: space mismatch");
  const LindbladSpec diss = spec.without_hamiltonian();
  const double scale = std::max(1.0, diss.g_operator().matrix().cwiseAbs().maxCoeff());
  if (!is_unital(diss, 1e-10 * scale)) throw NumericalError("superproject_unital: dissipator is not unital");

  const Mat& hm = h.matrix();
  const Mat rhs = commutant_residual_map(diss, hm);
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return h;

  // CG on W(Y) = W(H), starting from Y = 0 so the iterates stay in range(W).
  Mat y = Mat::Zero(hm.rows(), hm.cols());
  Mat r = rhs;
  Mat p = r;
  double rr = inner(r, r).real();
  const int max_iter = static_cast<int>(hm.size()) + 10;
  for (int it = 0; it < max_iter && std::sqrt(rr) > 1e-15 * rhs_norm; ++it) {
    const Mat wp = commutant_residual_map(diss, p);
    const double pwp = inner(p, wp).real();
    if (pwp <= 0.0) break;
    const double alpha = rr / pwp;
    y += alpha * p;
    r -= alpha * wp;
    const double rr_new = inner(r, r).real();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  Mat projected = hm - y;
  if (commutant_residual_map(diss, projected).norm() > 1e-9 * std::max(1.0, rhs_norm)) {
    throw NumericalError("superproject_unital: conjugate gradients did not converge");
  }
  return {h.space(), std::move(projected)};
}

ProjectedControlSystem project_controls(const std::vector<Operator>& controls, const LindbladSpec& spec,
                                        const DFSDecomposition& dfs, int block) {
  ProjectedControlSystem out{block, {}, std::nullopt};
  for (const auto& c : controls) out.restricted.push_back(project_hamiltonian(c, dfs, block));
  if (is_unital(spec.without_hamiltonian())) {
    std::vector<Operator> sp;
    for (const auto& c : controls) sp.push_back(superproject_unital(c, spec));
    out.superprojected = std::move(sp);
  }
  return out;
}

Superoperator zeno_product(const Superoperator& p, const Superoperator& k, double t, int n) {
  if (n < 1) throw std::invalid_argument("zeno_product: n must be >= 1");
  if (!(t >= 0.0)) throw std::invalid_argument("zeno_product: t must be non-negative");
  if (p.space() != k.space()) throw DimensionError("zeno_product: space mismatch");
  const Mat step = p.matrix() * expm(k.matrix() * (t / n)) * p.matrix();
  Mat result = Mat::Identity(step.rows(), step.cols());
  Mat base = step;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return {p.space(), std::move(result)};
}

Superoperator zeno_limit(const Superoperator& p, const Superoperator& k, double t) {
  if (p.space() != k.space()) throw DimensionError("zeno_limit: space mismatch");
  const Mat pkp = p.matrix() * k.matrix() * p.matrix();
  return {p.space(), expm(pkp * t) * p.matrix()};
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double strong_damping_error(const LindbladSpec& spec_with_h, double g, double t) {
  const LindbladSpec diss = spec_with_h.without_hamiltonian();
  const Superoperator p = steady_superprojector(diss);
  const Mat k = hamiltonian_superop(spec_with_h.hamiltonian()).matrix();
  const Mat d = dissipator_matrix(diss).matrix();
  const Mat full = expm(t * (g * k + d));
  const Mat effective = expm((g * t) * (p.matrix() * k * p.matrix()));
  return spectral_norm((full - effective) * p.matrix());
}

}  // namespace zenoforge
