#pragma once

// N-qubit Ising chain under collective decoherence.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zenoforge/lie.hpp"
#include "zenoforge/lindblad.hpp"

namespace zenoforge {

struct ChainModel {
  int n;
  LindbladSpec spec;   // terms (g_x, S_x), (g_y, S_y), (g_z, S_z), zero Hamiltonian
  Operator h0;         // sum_n sz^(n) sz^(n+1)
  Operator h1;         // sz^(1) sz^(2)
};

ChainModel build_chain(int n, double gx, double gy, double gz);

/// Collective spin S_a = (1/2) sum_n sigma_a^(n).
Operator collective_spin(int n, Axis axis);

/// d_{J,N} with J = twice_j / 2.
std::uint64_t dfs_dimension(int twice_j, int n);

/// sum_J d_{J,N}^2 and sum_J (d_{J,N}^2 - 1).
std::uint64_t sum_dim_u(int n);
std::uint64_t sum_dim_su(int n);

/// 4^N / (sqrt(pi) N^{3/2}).
double asymptotic_dim(int n);

/// Action of D* on (sx sx, sy sy, sz sz) of one bond.
Eigen::Matrix3d dual_action_matrix(double gx, double gy, double gz);

/// Smallest nonzero |eigenvalue| of dual_action_matrix.
double characteristic_rate(double gx, double gy, double gz);

// ---------------------------------------------------------------------------
// Rotationally symmetric operators, 1-based site labels.

class SymOp {
 public:
  enum class Kind { TwoBody, ThreeBody, Product, Sum, Commutator };

  static SymOp two(int m, int n);
  static SymOp three(int i, int j, int k);
  static SymOp product(SymOp a, SymOp b);
  /// sum_k c_k X_k
  static SymOp sum(std::vector<std::pair<double, SymOp>> terms);
  /// i[A, B]
  static SymOp comm(SymOp a, SymOp b);
  /// A named formal sum of two-body terms, e.g. H~0.
  static SymOp named(std::string name, std::vector<std::pair<double, SymOp>> terms);

  Kind kind() const { return kind_; }
  const std::vector<int>& sites() const { return sites_; }
  std::string to_string() const;
  /// Dense matrix on n qubits.
  Mat realize(int n) const;

 private:
  Kind kind_ = Kind::Sum;
  std::vector<int> sites_;
  std::vector<std::pair<double, SymOp>> terms_;  // Sum, or the two operands of Product / Commutator
  std::string name_;
};

struct SymIdentity {
  std::string step;
  SymOp lhs;
  SymOp rhs;
  double residual = 0.0;  // max |lhs - rhs| entry after dense realization
};

struct AppendixSchedule {
  int n;
  std::vector<SymIdentity> identities;
  std::vector<std::string> inventory;  // two- and three-body operators in order of acquisition
  double max_residual() const;
};

/// Inductive generation of every two- and three-body rotationally symmetric
/// operator from H~0 = sum_n H_{n,n+1} and H~1 = H_12 (3 P(H_0) and 3 P(H_1)).
AppendixSchedule generate_appendix_a(int n);

/// The two four-body commutator identities for (i,j,k,l) = (1,2,3,4) on n qubits.
std::vector<SymIdentity> four_body_identities(int n);

// ---------------------------------------------------------------------------

struct TableOneColumn {
  int n;
  std::vector<std::pair<int, std::uint64_t>> dims;  // (2J, d_{J,N}), J descending
  int dim_dfs;
  std::uint64_t sum_su;
  std::uint64_t sum_u;
  std::string origin;  // "computed" or "reference"
};

/// Columns N = 1..nmax. dim L_DFS is computed by closure for N >= 2; the N = 1
/// column has no coupling and carries the reference value 0.
std::vector<TableOneColumn> table_one(int nmax, const LieClosureOptions& opts = {});
std::string table_one_csv(const std::vector<TableOneColumn>& cols);

/// dim Lie(i P(H_0), i P(H_1)) for the chain; n >= 2 (n = 2 uses the single bond).
int chain_dfs_lie_dim(int n, const LieClosureOptions& opts = {});

}  // namespace zenoforge
