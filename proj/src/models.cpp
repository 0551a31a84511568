#include "zenoforge/models.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "zenoforge/chain.hpp"

namespace zenoforge {

namespace {

std::vector<double> rates(const ModelParams& p, std::size_t count, const std::string& name) {
  if (p.gammas.empty()) return std::vector<double>(count, 1.0);
  if (p.gammas.size() == 1) return std::vector<double>(count, p.gammas.front());
  if (p.gammas.size() != count) {
    throw std::invalid_argument(name + ": expected 1 or " + std::to_string(count) + " rates, got " +
                                std::to_string(p.gammas.size()));
  }
  for (double g : p.gammas)
    if (!(g >= 0.0)) throw std::invalid_argument(name + ": rates must be non-negative");
  return p.gammas;
}

std::pair<Operator, Operator> two_qubit_hamiltonians() {
  const Mat sx = pauli(Axis::X), sy = pauli(Axis::Y), sz = pauli(Axis::Z);
  const HilbertSpace s = HilbertSpace::qubits(2);
  const Operator h0(s, Eigen::kroneckerProduct(sx, Mat(sx + sz)).eval());
  const Operator h1(s, Eigen::kroneckerProduct(sy, Mat(sx - sz)).eval());
  return {h0, h1};
}

Operator lowering_on_second() {
  Mat sm = Mat::Zero(2, 2);
  sm(0, 1) = 1.0;  // |0><1|
  return local_on(HilbertSpace::qubits(2), 1, sm);
}

ModelDescriptor two_qubit(const std::string& name, const ModelParams& p) {
  if (p.n != 0 && p.n != 2) throw std::invalid_argument(name + ": the model has exactly 2 qubits");
  const double g = rates(p, 1, name).front();
  auto [h0, h1] = two_qubit_hamiltonians();
  const HilbertSpace s = HilbertSpace::qubits(2);
  const bool amp = name == "two-qubit-amp";
  const Operator l = amp ? lowering_on_second() : pauli_on(s, 1, Axis::Z);
  ModelDescriptor m{name, p, LindbladSpec::dissipative(s, {{g, l}}), {h0, h1}, {}};
  m.expected.push_back({"dim_nonoise", 2, "reference"});
  if (amp) {
    m.expected.push_back({"dfs_count", 1, "reference"});
    m.expected.push_back({"dfs_dim[0]", 2, "reference"});
    m.expected.push_back({"block_lie_dim[0]", 3, "reference"});
  } else {
    m.expected.push_back({"dfs_count", 2, "reference"});
    m.expected.push_back({"dfs_dim[0]", 2, "reference"});
    m.expected.push_back({"dfs_dim[1]", 2, "reference"});
    m.expected.push_back({"block_lie_dim[0]", 3, "reference"});
    m.expected.push_back({"block_lie_dim[1]", 3, "reference"});
    m.expected.push_back({"unital_lie_dim", 3, "reference"});
  }
  return m;
}

ModelDescriptor atom(const ModelParams& p) {
  const int n = p.n == 0 ? 3 : p.n;
  if (n < 2) throw std::invalid_argument("n-level-atom: N must be >= 2 (got " + std::to_string(n) + ")");
  const std::vector<double> g = rates(p, static_cast<std::size_t>(n), "n-level-atom");
  const int d = n + 1;
  const int e = n;  // |e> is the last basis vector, |j> is index j-1
  const HilbertSpace s = HilbertSpace::single(d);
  Mat h0 = Mat::Zero(d, d), h1 = Mat::Zero(d, d);
  h0(e, 1) = h0(1, e) = 1.0;
  for (int j = 0; j + 1 < n; ++j) h0(j, j + 1) = h0(j + 1, j) = 1.0;
  h1(e, e) = h1(0, 0) = 1.0;
  h1(e, 0) = h1(0, e) = -1.0;
  std::vector<LindbladTerm> terms;
  for (int j = 0; j < n; ++j) {
    Mat l = Mat::Zero(d, d);
    l(j, e) = 1.0;
    terms.push_back({g[static_cast<std::size_t>(j)], Operator(s, l)});
  }
  ModelParams stored = p;
  stored.n = n;
  ModelDescriptor m{"n-level-atom", stored, LindbladSpec::dissipative(s, std::move(terms)), {Operator(s, h0), Operator(s, h1)}, {}};
  m.expected.push_back({"dim_nonoise", 2, "reference"});
  m.expected.push_back({"dfs_count", 1, "reference"});
  m.expected.push_back({"dfs_dim[0]", n, "reference"});
  m.expected.push_back({"block_lie_dim[0]", static_cast<long>(n) * n, "reference"});
  return m;
}

ModelDescriptor ising(const ModelParams& p) {
  const int n = p.n == 0 ? 3 : p.n;
  if (n < 3) throw std::invalid_argument("ising-chain: N must be >= 3 (got " + std::to_string(n) + ")");
  const std::vector<double> g = rates(p, 3, "ising-chain");
  ChainModel c = build_chain(n, g[0], g[1], g[2]);
  ModelParams stored = p;
  stored.n = n;
  ModelDescriptor m{"ising-chain", stored, c.spec, {c.h0, c.h1}, {}};
  m.expected.push_back({"dim_nonoise", 2, "reference"});
  // Only the total-spin singlets are joint eigenvectors of S_x, S_y, S_z.
  const bool isotropic = g[0] > 0 && g[1] > 0 && g[2] > 0;
  if (isotropic) {
    m.expected.push_back({"dfs_count", n % 2 == 0 ? 1 : 0, "computed"});
    if (n % 2 == 0) m.expected.push_back({"dfs_dim[0]", static_cast<long>(dfs_dimension(0, n)), "computed"});
    static const long table[] = {4, 12, 40, 129};
    if (n <= 6) m.expected.push_back({"unital_lie_dim", table[n - 3], "reference"});
  }
  return m;
}

}  // namespace

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"two-qubit-amp", "two-qubit-dephasing", "n-level-atom", "ising-chain"};
  return names;
}

ModelDescriptor build_model(const std::string& name, const ModelParams& params) {
  if (name == "two-qubit-amp" || name == "two-qubit-dephasing") return two_qubit(name, params);
  if (name == "n-level-atom") return atom(params);
  if (name == "ising-chain") return ising(params);
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::vector<ValidationEntry> validate_model(const ModelDescriptor& m, const LieClosureOptions& opts) {
  std::vector<std::pair<std::string, long>> actual;
  actual.push_back({"dim_nonoise", lie_closure(m.controls, opts).dim()});
  const DFSDecomposition dfs = detect_dfs(m.spec);
  actual.push_back({"dfs_count", static_cast<long>(dfs.blocks.size())});
  for (std::size_t b = 0; b < dfs.blocks.size(); ++b) actual.push_back({"dfs_dim[" + std::to_string(b) + "]", dfs.blocks[b].dim()});
  const DfsLieReport lie = dfs_lie_dimension(m.spec, m.controls, opts);
  for (std::size_t b = 0; b < lie.block_dims.size(); ++b)
    actual.push_back({"block_lie_dim[" + std::to_string(b) + "]", lie.block_dims[b]});
  if (lie.unital_dim) actual.push_back({"unital_lie_dim", *lie.unital_dim});

  std::vector<ValidationEntry> out;
  for (const auto& e : m.expected) {
    auto it = std::find_if(actual.begin(), actual.end(), [&](const auto& a) { return a.first == e.key; });
    out.push_back({e.key, e.value, it == actual.end() ? -1 : it->second});
  }
  return out;
}

ControlSystem two_qubit_control_system(const std::string& name, double gamma, double total_time) {
  if (name != "two-qubit-amp" && name != "two-qubit-dephasing") {
    throw std::invalid_argument("pulse optimization supports two-qubit-amp and two-qubit-dephasing, not '" + name + "'");
  }
  ModelDescriptor m = build_model(name, {2, {gamma}});
  return {m.spec, m.controls, total_time};
}

Superoperator reset_to_ground() {
  Mat p0 = Mat::Zero(2, 2);
  p0(0, 0) = 1.0;
  Mat l = Mat::Zero(2, 2);
  l(0, 1) = 1.0;
  return {HilbertSpace::qubits(1), Mat(sandwich(p0, p0) + sandwich(l, l.adjoint()))};
}

Operator hadamard() {
  Mat h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return {HilbertSpace::qubits(1), h / std::sqrt(2.0)};
}

}  // namespace zenoforge
