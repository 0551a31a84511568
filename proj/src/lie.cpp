#include "zenoforge/lie.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "zenoforge/zeno.hpp"

namespace zenoforge {

namespace {

// Anti-Hermitian d x d matrices as real vectors of length 2 d^2; the Euclidean
// dot product of these vectors is Re Tr{A^† B}.
Eigen::Map<const Eigen::VectorXd> as_real(const Mat& m) {
  return {reinterpret_cast<const double*>(m.data()), 2 * m.size()};
}

class SpanBuilder {
 public:
  SpanBuilder(int d, int cap) : d_(d), cap_(cap), basis_(2 * static_cast<Eigen::Index>(d) * d, 16) {}

  int size() const { return k_; }

  Mat element(int i) const {
    Mat m(d_, d_);
    Eigen::Map<Eigen::VectorXd>(reinterpret_cast<double*>(m.data()), 2 * m.size()) = basis_.col(i);
    return m;
  }

  Eigen::VectorXd residual(const Mat& x) const {
    Eigen::VectorXd v = as_real(x);
    project_out(v);
    return v;
  }

  /// Appends the normalized residual of x when it exceeds thresh.
  bool add(const Mat& x, double thresh) {
    Eigen::VectorXd v = residual(x);
    const double r = v.norm();
    if (!(r > thresh)) return false;
    if (k_ >= cap_) throw NumericalError("lie_closure: dimension cap of " + std::to_string(cap_) + " exceeded");
    if (k_ == basis_.cols()) basis_.conservativeResize(Eigen::NoChange, 2 * basis_.cols());
    basis_.col(k_) = v / r;
    ++k_;
    return true;
  }

  bool full() const { return k_ >= d_ * d_; }

 private:
  // Two classical Gram-Schmidt passes against the current basis.
  void project_out(Eigen::VectorXd& v) const {
    if (k_ == 0) return;
    const auto b = basis_.leftCols(k_);
    for (int pass = 0; pass < 2; ++pass) v.noalias() -= b * (b.transpose() * v);
  }

  int d_;
  int cap_;
  Eigen::MatrixXd basis_;
  int k_ = 0;
};

}  // namespace

LieBasis lie_closure(const std::vector<Mat>& gens, const LieClosureOptions& opts) {
  if (gens.empty()) throw std::invalid_argument("lie_closure: no generators");
  const Eigen::Index d = gens.front().rows();
  double scale = 0.0;
  for (const auto& g : gens) {
    if (g.rows() != d || g.cols() != d) throw DimensionError("lie_closure: generators of different sizes");
    if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
      throw NumericalError("lie_closure: generator is not Hermitian");
    }
    scale = std::max(scale, g.norm());
  }
  if (scale == 0.0) throw std::invalid_argument("lie_closure: all generators vanish");

  const int di = static_cast<int>(d);
  const int cap = opts.max_dim > 0 ? opts.max_dim : 4 * di * di;
  SpanBuilder span(di, cap);
  std::vector<Mat> seeds;
  for (const auto& g : gens) {
    const Mat ig = kI * g;
    if (span.add(ig, opts.tol * std::max(1.0, scale))) seeds.push_back(span.element(span.size() - 1));
  }

  // Elements are unit norm from here on, so the threshold is absolute.
  for (int i = 0; i < span.size() && !span.full(); ++i) {
    const Mat a = span.element(i);
    if (opts.strategy == ClosureStrategy::AllPairs) {
      for (int j = 0; j < i && !span.full(); ++j) {
        const Mat b = span.element(j);
        span.add(a * b - b * a, opts.tol);
      }
    } else {
      for (const auto& g : seeds) {
        if (span.full()) break;
        span.add(g * a - a * g, opts.tol);
      }
    }
  }

  LieBasis out;
  out.d = di;
  out.elements.reserve(static_cast<std::size_t>(span.size()));
  for (int i = 0; i < span.size(); ++i) out.elements.push_back(span.element(i));
  return out;
}

LieBasis lie_closure(const std::vector<Operator>& gens, const LieClosureOptions& opts) {
  std::vector<Mat> m;
  m.reserve(gens.size());
  for (const auto& g : gens) {
    if (!m.empty() && g.space() != gens.front().space()) throw DimensionError("lie_closure: generators on different spaces");
    m.push_back(g.matrix());
  }
  return lie_closure(m, opts);
}

double span_residual(const LieBasis& basis, const Mat& x) {
  if (x.rows() != basis.d || x.cols() != basis.d) throw DimensionError("span_residual: size mismatch");
  Eigen::VectorXd v = as_real(x);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis.elements) v -= as_real(e).dot(v) * as_real(e);
  return v.norm();
}

Verdict controllability_verdict(const LieBasis& basis) {
  Verdict v;
  v.dim = basis.dim();
  const int d = basis.d;
  if (d <= 0) return v;
  if (v.dim < d * d - 1) return v;

  // i times the generalized Gell-Mann matrices, each of unit HS norm.
  constexpr double tol = 1e-7;
  const double r2 = 1.0 / std::sqrt(2.0);
  bool su = true;
  for (int j = 0; j < d && su; ++j) {
    for (int k = j + 1; k < d && su; ++k) {
      Mat s = Mat::Zero(d, d);
      s(j, k) = s(k, j) = kI * r2;
      Mat a = Mat::Zero(d, d);
      a(j, k) = r2;
      a(k, j) = -r2;
      su = span_residual(basis, s) < tol && span_residual(basis, a) < tol;
    }
  }
  for (int l = 1; l < d && su; ++l) {
    Mat g = Mat::Zero(d, d);
    const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) g(m, m) = kI * c;
    g(l, l) = -kI * (c * l);
    su = span_residual(basis, g) < tol;
  }
  v.contains_su = su;
  if (su && v.dim == d * d) {
    const Mat id = (kI / std::sqrt(static_cast<double>(d))) * Mat::Identity(d, d);
    v.equals_u = span_residual(basis, id) < tol;
  }
  return v;
}

std::string verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  j["dim"] = v.dim;
  j["contains_su"] = v.contains_su;
  j["equals_u"] = v.equals_u;
  j["block_dims"] = v.block_dims;
  return j.dump();
}

DfsLieReport dfs_lie_dimension(const LindbladSpec& spec, const std::vector<Operator>& controls,
                               const LieClosureOptions& opts) {
  if (!is_attractive(spec.without_hamiltonian())) throw NumericalError("dfs_lie_dimension: dissipator is not attractive");
  const DFSDecomposition dfs = detect_dfs(spec);
  DfsLieReport report;
  const bool unital = is_unital(spec.without_hamiltonian());

  auto closure_dim = [&](const std::vector<Mat>& gens) {
    const bool any = std::any_of(gens.begin(), gens.end(), [](const Mat& g) { return g.norm() > 1e-12; });
    return any ? lie_closure(gens, opts).dim() : 0;
  };

  for (int b = 0; b < static_cast<int>(dfs.blocks.size()); ++b) {
    std::vector<Mat> restricted;
    for (const auto& c : controls) restricted.push_back(project_hamiltonian(c, dfs, b));
    report.block_dims.push_back(closure_dim(restricted));
  }
  if (unital) {
    std::vector<Mat> projected;
    for (const auto& c : controls) projected.push_back(superproject_unital(c, spec).matrix());
    report.unital_dim = closure_dim(projected);
  }
  return report;
}

}  // namespace zenoforge
