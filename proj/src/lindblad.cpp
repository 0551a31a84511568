#include "zenoforge/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace zenoforge {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kDfsTol = 1e-8;

double scale_of(const Mat& m) { return std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0); }

double zero_eigen_tol(const Mat& generator) { return 1e-7 * scale_of(generator); }

Mat transpose_permutation(int d) {
  const int n = d * d;
  Mat t = Mat::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t(j * d + i, i * d + j) = 1.0;
  return t;
}

}  // namespace

LindbladSpec::LindbladSpec(Operator hamiltonian, std::vector<LindbladTerm> terms)
    : h_(std::move(hamiltonian)), terms_(std::move(terms)) {
  if (!h_.is_hermitian(kHermitianTol)) throw NumericalError("LindbladSpec: Hamiltonian is not Hermitian");
  for (const auto& t : terms_) {
    if (!(t.rate >= 0.0) || !std::isfinite(t.rate)) throw NumericalError("LindbladSpec: rates must be finite and non-negative");
    if (t.op.space() != h_.space()) throw DimensionError("LindbladSpec: Lindblad operator on a different space");
  }
}

LindbladSpec LindbladSpec::dissipative(const HilbertSpace& space, std::vector<LindbladTerm> terms) {
  return {Operator::zero(space), std::move(terms)};
}

LindbladSpec LindbladSpec::scaled_rates(double c) const {
  std::vector<LindbladTerm> terms = terms_;
  for (auto& t : terms) t.rate *= c;
  return {h_, std::move(terms)};
}

Operator LindbladSpec::g_operator() const {
  Mat g = Mat::Zero(space().dim(), space().dim());
  for (const auto& t : terms_) g += t.rate * t.op.matrix().adjoint() * t.op.matrix();
  return {space(), std::move(g)};
}

Superoperator dissipator_matrix(const LindbladSpec& spec) {
  const int d = spec.space().dim();
  const Mat id = Mat::Identity(d, d);
  Mat m = hamiltonian_superop(spec.hamiltonian()).matrix();
  for (const auto& t : spec.terms()) {
    if (t.rate == 0.0) continue;
    const Mat& l = t.op.matrix();
    const Mat ldl = l.adjoint() * l;
    m += t.rate * (2.0 * sandwich(l, l.adjoint()) - sandwich(ldl, id) - sandwich(id, ldl));
  }
  return {spec.space(), std::move(m)};
}

Mat apply_dissipator(const LindbladSpec& spec, const Mat& rho) {
  const Mat& h = spec.hamiltonian().matrix();
  Mat out = -kI * (h * rho - rho * h);
  for (const auto& t : spec.terms()) {
    if (t.rate == 0.0) continue;
    const Mat& l = t.op.matrix();
    const Mat ldl = l.adjoint() * l;
    out -= t.rate * (ldl * rho + rho * ldl - 2.0 * l * rho * l.adjoint());
  }
  return out;
}

Superoperator propagate(const LindbladSpec& spec, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagate: time must be non-negative");
  return {spec.space(), expm(t * dissipator_matrix(spec).matrix())};
}

ZenoBoundReport relaxation_report(const LindbladSpec& spec) {
  const Mat m = dissipator_matrix(spec).matrix();
  Eigen::ComplexEigenSolver<Mat> es(m, false);
  const double ztol = zero_eigen_tol(m);
  ZenoBoundReport report{std::numeric_limits<double>::infinity(), {}, true};
  double min_re = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const cplx lam = es.eigenvalues()(i);
    if (std::abs(lam) <= ztol) continue;
    report.nonzero_eigenvalues.push_back(lam);
    min_re = std::min(min_re, std::abs(lam.real()));
    if (lam.real() >= -ztol) report.attractive = false;
  }
  if (report.nonzero_eigenvalues.empty()) throw NumericalError("relaxation_report: generator has no relaxation (all eigenvalues vanish)");
  std::sort(report.nonzero_eigenvalues.begin(), report.nonzero_eigenvalues.end(),
            [](cplx a, cplx b) { return std::make_pair(a.real(), a.imag()) > std::make_pair(b.real(), b.imag()); });
  if (min_re > ztol) report.tau_r = 1.0 / min_re;
  return report;
}

Superoperator steady_superprojector(const LindbladSpec& spec) {
  const Mat m = dissipator_matrix(spec).matrix();
  const HilbertSpace& space = spec.space();
  constexpr double kernel_tol = 1e-9;

  const Mat right = null_space(m, kernel_tol);
  if (right.cols() == 0) throw NumericalError("steady_superprojector: generator has trivial kernel");
  const Mat left = null_space(m.adjoint(), kernel_tol);
  const Mat m2 = m * m;
  if (null_space(m2, kernel_tol).cols() != right.cols() || left.cols() != right.cols()) {
    throw NumericalError("steady_superprojector: zero eigenvalue is not semisimple");
  }

  // Any nonzero eigenvalue on or right of the imaginary axis breaks convergence.
  if (right.cols() < m.rows()) {
    Eigen::ComplexEigenSolver<Mat> es(m, false);
    const double ztol = zero_eigen_tol(m);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const cplx lam = es.eigenvalues()(i);
      if (std::abs(lam) > ztol && lam.real() >= -ztol) {
        throw NumericalError("steady_superprojector: generator is not attractive");
      }
    }
  }

  const Mat pairing = left.adjoint() * right;
  Eigen::JacobiSVD<Mat> svd(pairing);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-8 * sv(0)) throw NumericalError("steady_superprojector: zero eigenvalue is not semisimple");
  Mat p = right * pairing.partialPivLu().solve(left.adjoint());
  return {space, std::move(p)};
}

DFSDecomposition detect_dfs(const LindbladSpec& spec) {
  const int d = spec.space().dim();
  struct Candidate {
    Mat basis;
    std::vector<cplx> lambdas;
  };
  std::vector<Candidate> current{{Mat::Identity(d, d), {}}};

  for (const auto& term : spec.terms()) {
    const Mat& l = term.op.matrix();
    const double scale = scale_of(l);
    std::vector<Candidate> next;
    for (const auto& cand : current) {
      const Mat& v = cand.basis;
      const Mat compressed = v.adjoint() * l * v;
      Eigen::ComplexEigenSolver<Mat> es(compressed, false);
      std::vector<cplx> accepted;
      for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
        cplx mu = es.eigenvalues()(e);
        // Rayleigh refinement: eigenvalues of defective compressions are only
        // accurate to ~sqrt(eps).
        for (int it = 0; it < 4; ++it) {
          const Mat shifted = (l - mu * Mat::Identity(d, d)) * v;
          Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullV);
          const Vec psi = v * svd.matrixV().col(svd.matrixV().cols() - 1);
          mu = psi.dot(l * psi) / psi.squaredNorm();
        }
        const bool seen = std::any_of(accepted.begin(), accepted.end(),
                                      [&](cplx a) { return std::abs(a - mu) < 1e-6 * scale; });
        if (seen) continue;
        const Mat kernel = null_space((l - mu * Mat::Identity(d, d)) * v, kDfsTol / scale);
        if (kernel.cols() == 0) continue;
        accepted.push_back(mu);
        Candidate c{v * kernel, cand.lambdas};
        c.lambdas.push_back(mu);
        next.push_back(std::move(c));
      }
    }
    current = std::move(next);
  }

  const Mat g = spec.g_operator().matrix();
  DFSDecomposition out{spec.space(), {}};
  for (auto& cand : current) {
    double b = 0.0;
    for (std::size_t j = 0; j < cand.lambdas.size(); ++j) b += spec.terms()[j].rate * std::norm(cand.lambdas[j]);
    const Mat kernel = null_space((g - b * Mat::Identity(d, d)) * cand.basis, kDfsTol / scale_of(g));
    if (kernel.cols() == 0) continue;
    out.blocks.push_back({cand.basis * kernel, std::move(cand.lambdas), b});
  }

  auto key = [](const DFSBlock& blk) {
    std::vector<double> k;
    for (cplx lam : blk.lambdas) {
      k.push_back(std::round(lam.real() * 1e6));
      k.push_back(std::round(lam.imag() * 1e6));
    }
    k.push_back(std::round(blk.b * 1e6));
    return k;
  };
  std::sort(out.blocks.begin(), out.blocks.end(), [&](const DFSBlock& a, const DFSBlock& b) { return key(a) < key(b); });
  return out;
}

Superoperator dual_generator(const LindbladSpec& spec) {
  const int d = spec.space().dim();
  const Mat t = transpose_permutation(d);
  return {spec.space(), t * dissipator_matrix(spec).matrix().transpose() * t};
}

bool is_unital(const LindbladSpec& spec, double tol) {
  const int d = spec.space().dim();
  return apply_dissipator(spec, Mat::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

bool is_self_adjoint_dissipator(const LindbladSpec& spec, double tol) {
  if (spec.hamiltonian().matrix().cwiseAbs().maxCoeff() > tol) return false;
  return std::all_of(spec.terms().begin(), spec.terms().end(),
                     [&](const LindbladTerm& t) { return t.rate == 0.0 || t.op.is_hermitian(tol); });
}

bool is_attractive(const LindbladSpec& spec) {
  if (is_self_adjoint_dissipator(spec)) return true;
  try {
    return relaxation_report(spec).attractive;
  } catch (const NumericalError&) {
    return true;  // D = 0: e^{tD} is constant
  }
}

}  // namespace zenoforge
