#include "zenoforge/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "zenoforge/zeno.hpp"

namespace zenoforge {

namespace {

constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};

Mat site_pauli(int n, int site1, int a) {
  return pauli_on(HilbertSpace::qubits(n), site1 - 1, kAxes[a]).matrix();
}

void check_site(int s, int n) {
  if (s < 1 || s > n) throw std::out_of_range("SymOp: site " + std::to_string(s) + " outside 1.." + std::to_string(n));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::string fmt_coef(double c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

}  // namespace

Operator collective_spin(int n, Axis axis) {
  const HilbertSpace space = HilbertSpace::qubits(n);
  Operator s = Operator::zero(space);
  for (int k = 0; k < n; ++k) s += pauli_on(space, k, axis);
  return s * cplx(0.5);
}

ChainModel build_chain(int n, double gx, double gy, double gz) {
  if (n < 3) throw std::invalid_argument("build_chain: N must be >= 3 (got " + std::to_string(n) + ")");
  const HilbertSpace space = HilbertSpace::qubits(n);
  Operator h0 = Operator::zero(space);
  for (int k = 0; k + 1 < n; ++k) h0 += pauli_on(space, k, Axis::Z) * pauli_on(space, k + 1, Axis::Z);
  Operator h1 = pauli_on(space, 0, Axis::Z) * pauli_on(space, 1, Axis::Z);
  std::vector<LindbladTerm> terms{{gx, collective_spin(n, Axis::X)},
                                  {gy, collective_spin(n, Axis::Y)},
                                  {gz, collective_spin(n, Axis::Z)}};
  return {n, LindbladSpec::dissipative(space, std::move(terms)), std::move(h0), std::move(h1)};
}

std::uint64_t dfs_dimension(int twice_j, int n) {
  if (n < 1) throw std::invalid_argument("dfs_dimension: N must be >= 1");
  if (twice_j < 0 || twice_j > n || (n - twice_j) % 2 != 0) {
    throw std::invalid_argument("dfs_dimension: J = " + std::to_string(twice_j) + "/2 is not a total spin of " +
                                std::to_string(n) + " qubits");
  }
  if (n > 60) throw std::invalid_argument("dfs_dimension: N too large for 64-bit arithmetic");
  // d = (2J+1)/(N+1) * C(N+1, K), K = N/2 - J.
  const int k = (n - twice_j) / 2;
  return static_cast<std::uint64_t>(twice_j + 1) * binomial(n + 1, k) / static_cast<std::uint64_t>(n + 1);
}

std::uint64_t sum_dim_u(int n) {
  std::uint64_t s = 0;
  for (int tj = n; tj >= 0; tj -= 2) {
    const std::uint64_t d = dfs_dimension(tj, n);
    s += d * d;
  }
  return s;
}

std::uint64_t sum_dim_su(int n) {
  std::uint64_t s = 0;
  for (int tj = n; tj >= 0; tj -= 2) {
    const std::uint64_t d = dfs_dimension(tj, n);
    s += d * d - 1;
  }
  return s;
}

double asymptotic_dim(int n) {
  if (n < 1) throw std::invalid_argument("asymptotic_dim: N must be >= 1");
  return std::pow(4.0, n) / (std::sqrt(std::numbers::pi) * std::pow(static_cast<double>(n), 1.5));
}

Eigen::Matrix3d dual_action_matrix(double gx, double gy, double gz) {
  if (gx < 0 || gy < 0 || gz < 0) throw std::invalid_argument("dual_action_matrix: rates must be non-negative");
  Eigen::Matrix3d m;
  m << gy + gz, -gz, -gy,
       -gz, gz + gx, -gx,
       -gy, -gx, gx + gy;
  return -2.0 * m;
}

double characteristic_rate(double gx, double gy, double gz) {
  const Eigen::Matrix3d m = dual_action_matrix(gx, gy, gz);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  const double tol = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double a = std::abs(es.eigenvalues()(i));
    if (a > tol) best = std::min(best, a);
  }
  if (!std::isfinite(best)) throw NumericalError("characteristic_rate: no decoherence (all rates vanish)");
  return best;
}

// ---------------------------------------------------------------------------

SymOp SymOp::two(int m, int n) {
  if (!(m < n)) throw std::invalid_argument("SymOp::two: need m < n");
  SymOp s;
  s.kind_ = Kind::TwoBody;
  s.sites_ = {m, n};
  return s;
}

SymOp SymOp::three(int i, int j, int k) {
  if (!(i < j && j < k)) throw std::invalid_argument("SymOp::three: need i < j < k");
  SymOp s;
  s.kind_ = Kind::ThreeBody;
  s.sites_ = {i, j, k};
  return s;
}

SymOp SymOp::product(SymOp a, SymOp b) {
  SymOp s;
  s.kind_ = Kind::Product;
  s.terms_ = {{1.0, std::move(a)}, {1.0, std::move(b)}};
  return s;
}

SymOp SymOp::sum(std::vector<std::pair<double, SymOp>> terms) {
  SymOp s;
  s.kind_ = Kind::Sum;
  s.terms_ = std::move(terms);
  return s;
}

SymOp SymOp::comm(SymOp a, SymOp b) {
  SymOp s;
  s.kind_ = Kind::Commutator;
  s.terms_ = {{1.0, std::move(a)}, {1.0, std::move(b)}};
  return s;
}

SymOp SymOp::named(std::string name, std::vector<std::pair<double, SymOp>> terms) {
  SymOp s = sum(std::move(terms));
  s.name_ = std::move(name);
  return s;
}

std::string SymOp::to_string() const {
  if (!name_.empty()) return name_;
  switch (kind_) {
    case Kind::TwoBody:
      return "H" + std::to_string(sites_[0]) + "," + std::to_string(sites_[1]);
    case Kind::ThreeBody:
      return "H" + std::to_string(sites_[0]) + "," + std::to_string(sites_[1]) + "," + std::to_string(sites_[2]);
    case Kind::Product:
      return terms_[0].second.to_string() + " " + terms_[1].second.to_string();
    case Kind::Commutator:
      return "i[" + terms_[0].second.to_string() + ", " + terms_[1].second.to_string() + "]";
    case Kind::Sum: {
      if (terms_.empty()) return "0";
      std::string out;
      for (std::size_t t = 0; t < terms_.size(); ++t) {
        double c = terms_[t].first;
        if (t > 0) {
          out += c < 0 ? " - " : " + ";
          c = std::abs(c);
        } else if (c < 0) {
          out += "-";
          c = -c;
        }
        if (c != 1.0) out += fmt_coef(c) + "*";
        const bool paren = terms_[t].second.kind_ == Kind::Sum && terms_[t].second.name_.empty();
        out += paren ? "(" + terms_[t].second.to_string() + ")" : terms_[t].second.to_string();
      }
      return out;
    }
  }
  return {};
}

Mat SymOp::realize(int n) const {
  const int d = 1 << n;
  switch (kind_) {
    case Kind::TwoBody: {
      for (int s : sites_) check_site(s, n);
      Mat m = Mat::Zero(d, d);
      for (int a = 0; a < 3; ++a) m += site_pauli(n, sites_[0], a) * site_pauli(n, sites_[1], a);
      return m;
    }
    case Kind::ThreeBody: {
      for (int s : sites_) check_site(s, n);
      Mat m = Mat::Zero(d, d);
      // Levi-Civita: even permutations of (x,y,z) with sign +1.
      static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
      for (int p = 0; p < 6; ++p) {
        const double sign = p < 3 ? 1.0 : -1.0;
        m += sign * site_pauli(n, sites_[0], perms[p][0]) * site_pauli(n, sites_[1], perms[p][1]) *
             site_pauli(n, sites_[2], perms[p][2]);
      }
      return m;
    }
    case Kind::Product:
      return terms_[0].second.realize(n) * terms_[1].second.realize(n);
    case Kind::Commutator: {
      const Mat a = terms_[0].second.realize(n);
      const Mat b = terms_[1].second.realize(n);
      return kI * (a * b - b * a);
    }
    case Kind::Sum: {
      Mat m = Mat::Zero(d, d);
      for (const auto& [c, op] : terms_) m += c * op.realize(n);
      return m;
    }
  }
  return {};
}

double AppendixSchedule::max_residual() const {
  double r = 0.0;
  for (const auto& id : identities) r = std::max(r, id.residual);
  return r;
}

namespace {

using Terms = std::vector<std::pair<double, SymOp>>;

SymIdentity verified(std::string step, SymOp lhs, SymOp rhs, int n) {
  SymIdentity id{std::move(step), std::move(lhs), std::move(rhs), 0.0};
  id.residual = max_abs_diff(id.lhs.realize(n), id.rhs.realize(n));
  return id;
}

}  // namespace

AppendixSchedule generate_appendix_a(int n) {
  if (n < 3) throw std::invalid_argument("generate_appendix_a: N must be >= 3");
  using S = SymOp;
  AppendixSchedule out{n, {}, {}};
  std::set<std::string> have;
  auto acquire = [&](const SymOp& op) {
    if (have.insert(op.to_string()).second) out.inventory.push_back(op.to_string());
  };

  Terms bonds;
  for (int k = 1; k < n; ++k) bonds.push_back({1.0, S::two(k, k + 1)});
  const SymOp h0t = S::named("H~0", bonds);
  const SymOp h1t = S::two(1, 2);

  acquire(h1t);
  out.identities.push_back(verified("base", S::comm(h0t, h1t), S::sum({{-2.0, S::three(1, 2, 3)}}), n));
  acquire(S::three(1, 2, 3));
  const SymOp c12 = S::comm(S::two(1, 2), S::three(1, 2, 3));
  out.identities.push_back(verified("base", c12, S::sum({{4.0, S::two(1, 3)}, {-4.0, S::two(2, 3)}}), n));
  out.identities.push_back(verified("base", S::comm(c12, S::three(1, 2, 3)),
                                    S::sum({{16.0, S::two(1, 3)}, {16.0, S::two(2, 3)}, {-32.0, S::two(1, 2)}}), n));
  acquire(S::two(1, 3));
  acquire(S::two(2, 3));

  for (int q = 3; q < n; ++q) {
    // Extend from the first q qubits to qubit q+1.
    const std::string tag = "n=" + std::to_string(q) + " step ";
    out.identities.push_back(verified(tag + "1", S::comm(S::two(q - 1, q), h0t),
                                      S::sum({{-2.0, S::three(q - 2, q - 1, q)}, {2.0, S::three(q - 1, q, q + 1)}}), n));
    acquire(S::three(q - 1, q, q + 1));

    const SymOp c = S::comm(S::two(q - 1, q), S::three(q - 1, q, q + 1));
    out.identities.push_back(verified(tag + "2a", c, S::sum({{4.0, S::two(q - 1, q + 1)}, {-4.0, S::two(q, q + 1)}}), n));
    out.identities.push_back(verified(tag + "2b", S::comm(c, S::three(q - 1, q, q + 1)),
                                      S::sum({{16.0, S::two(q - 1, q + 1)}, {16.0, S::two(q, q + 1)},
                                              {-32.0, S::two(q - 1, q)}}), n));
    acquire(S::two(q - 1, q + 1));
    acquire(S::two(q, q + 1));

    for (int m = q - 2; m >= 1; --m) {
      out.identities.push_back(verified(tag + "3a", S::comm(S::two(m, m + 1), S::two(m + 1, q + 1)),
                                        S::sum({{2.0, S::three(m, m + 1, q + 1)}}), n));
      acquire(S::three(m, m + 1, q + 1));
      out.identities.push_back(verified(tag + "3b", S::comm(S::two(m, m + 1), S::three(m, m + 1, q + 1)),
                                        S::sum({{4.0, S::two(m, q + 1)}, {-4.0, S::two(m + 1, q + 1)}}), n));
      acquire(S::two(m, q + 1));
    }

    for (int m2 = 2; m2 <= q; ++m2) {
      for (int m1 = 1; m1 < m2; ++m1) {
        out.identities.push_back(verified(tag + "4", S::comm(S::two(m1, m2), S::two(m2, q + 1)),
                                          S::sum({{2.0, S::three(m1, m2, q + 1)}}), n));
        acquire(S::three(m1, m2, q + 1));
      }
    }
  }
  return out;
}

std::vector<SymIdentity> four_body_identities(int n) {
  if (n < 4) throw std::invalid_argument("four_body_identities: N must be >= 4");
  using S = SymOp;
  const int i = 1, j = 2, k = 3, l = 4;
  std::vector<SymIdentity> out;
  out.push_back(verified("four-body 1", S::comm(S::two(i, j), S::three(j, k, l)),
                         S::sum({{2.0, S::product(S::two(i, k), S::two(j, l))},
                                 {-2.0, S::product(S::two(i, l), S::two(j, k))}}), n));
  out.push_back(verified("four-body 2", S::comm(S::three(i, j, k), S::product(S::two(i, j), S::two(k, l))),
                         S::sum({{4.0, S::two(j, l)}, {-4.0, S::two(i, l)},
                                 {2.0, S::product(S::two(i, l), S::two(j, k))},
                                 {-2.0, S::product(S::two(i, k), S::two(j, l))}}), n));
  return out;
}

// ---------------------------------------------------------------------------

int chain_dfs_lie_dim(int n, const LieClosureOptions& opts) {
  if (n < 2) throw std::invalid_argument("chain_dfs_lie_dim: N must be >= 2");
  const HilbertSpace space = HilbertSpace::qubits(n);
  std::vector<LindbladTerm> terms{{1.0, collective_spin(n, Axis::X)},
                                  {1.0, collective_spin(n, Axis::Y)},
                                  {1.0, collective_spin(n, Axis::Z)}};
  const LindbladSpec spec = LindbladSpec::dissipative(space, std::move(terms));
  Operator h0 = Operator::zero(space);
  for (int k = 0; k + 1 < n; ++k) h0 += pauli_on(space, k, Axis::Z) * pauli_on(space, k + 1, Axis::Z);
  const Operator h1 = pauli_on(space, 0, Axis::Z) * pauli_on(space, 1, Axis::Z);
  const std::vector<Operator> projected{superproject_unital(h0, spec), superproject_unital(h1, spec)};
  return lie_closure(projected, opts).dim();
}

std::vector<TableOneColumn> table_one(int nmax, const LieClosureOptions& opts) {
  if (nmax < 1) throw std::invalid_argument("table_one: nmax must be >= 1");
  std::vector<TableOneColumn> cols;
  for (int n = 1; n <= nmax; ++n) {
    TableOneColumn c{n, {}, 0, sum_dim_su(n), sum_dim_u(n), "computed"};
    for (int tj = n; tj >= 0; tj -= 2) c.dims.push_back({tj, dfs_dimension(tj, n)});
    if (n == 1) {
      c.origin = "reference";
    } else {
      c.dim_dfs = chain_dfs_lie_dim(n, opts);
    }
    cols.push_back(std::move(c));
  }
  return cols;
}

std::string table_one_csv(const std::vector<TableOneColumn>& cols) {
  int max_tj = 0;
  for (const auto& c : cols) max_tj = std::max(max_tj, c.n);
  std::ostringstream os;
  os << "quantity";
  for (const auto& c : cols) os << ",N=" << c.n;
  os << "\n";
  for (int tj = 0; tj <= max_tj; ++tj) {
    os << "d_J=" << (tj % 2 == 0 ? std::to_string(tj / 2) : std::to_string(tj) + "/2");
    for (const auto& c : cols) {
      os << ",";
      for (const auto& [t, d] : c.dims)
        if (t == tj) os << d;
    }
    os << "\n";
  }
  os << "dim_L_DFS";
  for (const auto& c : cols) os << "," << c.dim_dfs;
  os << "\nsum_dim_su";
  for (const auto& c : cols) os << "," << c.sum_su;
  os << "\nsum_dim_u";
  for (const auto& c : cols) os << "," << c.sum_u;
  os << "\n";
  return os.str();
}

}  // namespace zenoforge
