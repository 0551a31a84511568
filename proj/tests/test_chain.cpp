#include "doctest.h"
#include "test_util.hpp"
#include "zenoforge/chain.hpp"
#include "zenoforge/lie.hpp"

#include <cmath>
#include <set>

using namespace zenoforge;

namespace {

// Catalan numbers: sum_J d_{J,N}^2 counts the commutant of the collective
// action, an independent closed form for the Table I u-row.
std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("d_{J,N} table entries") {
  CHECK(dfs_dimension(1, 1) == 1);
  CHECK(dfs_dimension(0, 2) == 1);
  CHECK(dfs_dimension(2, 2) == 1);
  CHECK(dfs_dimension(1, 3) == 2);
  CHECK(dfs_dimension(3, 3) == 1);
  CHECK(dfs_dimension(0, 4) == 2);
  CHECK(dfs_dimension(2, 4) == 3);
  CHECK(dfs_dimension(1, 5) == 5);
  CHECK(dfs_dimension(3, 5) == 4);
  CHECK(dfs_dimension(0, 6) == 5);
  CHECK(dfs_dimension(2, 6) == 9);
  CHECK(dfs_dimension(4, 6) == 5);
  CHECK(dfs_dimension(6, 6) == 1);
  CHECK_THROWS_AS(dfs_dimension(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(dfs_dimension(6, 4), std::invalid_argument);
}

TEST_CASE("multiplicity sum rule: sum_J (2J+1) d_{J,N} = 2^N") {
  for (int n = 1; n <= 30; ++n) {
    std::uint64_t total = 0;
    for (int tj = n; tj >= 0; tj -= 2) total += static_cast<std::uint64_t>(tj + 1) * dfs_dimension(tj, n);
    CHECK(total == (std::uint64_t{1} << n));
  }
}

TEST_CASE("sum_dim_u is Catalan, sum_dim_su subtracts the block count") {
  for (int n = 1; n <= 30; ++n) {
    CHECK(sum_dim_u(n) == catalan(n));
    CHECK(sum_dim_u(n) - sum_dim_su(n) == static_cast<std::uint64_t>(n / 2 + 1));
  }
}

TEST_CASE("asymptotic estimate approaches the exact sum") {
  const double r20 = static_cast<double>(sum_dim_u(20)) / asymptotic_dim(20);
  const double r30 = static_cast<double>(sum_dim_u(30)) / asymptotic_dim(30);
  CHECK(std::abs(r30 - 1.0) < std::abs(r20 - 1.0));
  CHECK(asymptotic_dim(4) == doctest::Approx(256.0 / (std::sqrt(M_PI) * 8.0)));
}

TEST_CASE("dual action matrix matches the dense dual generator") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 4; ++trial) {
    const double gx = u(rng), gy = u(rng), gz = u(rng);
    const int n = 3;
    const ChainModel c = build_chain(n, gx, gy, gz);
    const Superoperator dual = dual_generator(c.spec);
    const HilbertSpace s = c.spec.space();
    const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
    std::vector<Mat> bond;
    for (Axis a : axes) bond.push_back((pauli_on(s, 0, a) * pauli_on(s, 1, a)).matrix());
    const Eigen::Matrix3d m = dual_action_matrix(gx, gy, gz);
    for (int a = 0; a < 3; ++a) {
      const Mat image = unvectorize(dual.matrix() * vectorize(bond[static_cast<std::size_t>(a)]), s.dim());
      Mat expect = Mat::Zero(s.dim(), s.dim());
      for (int b = 0; b < 3; ++b) expect += m(a, b) * bond[static_cast<std::size_t>(b)];
      CHECK(max_abs_diff(image, expect) < 1e-9);
    }
  }
}

TEST_CASE("characteristic rate") {
  CHECK(characteristic_rate(1.0, 1.0, 1.0) == doctest::Approx(6.0));
  CHECK(characteristic_rate(2.0, 2.0, 2.0) == doctest::Approx(12.0));
  CHECK_THROWS_AS(characteristic_rate(0.0, 0.0, 0.0), NumericalError);
}

TEST_CASE("SymOp rendering and symmetry") {
  CHECK(SymOp::two(1, 2).to_string() == "H1,2");
  CHECK(SymOp::three(1, 2, 3).to_string() == "H1,2,3");
  CHECK(SymOp::comm(SymOp::two(1, 2), SymOp::three(1, 2, 3)).to_string() == "i[H1,2, H1,2,3]");
  CHECK(SymOp::sum({{2.0, SymOp::two(1, 3)}, {-4.0, SymOp::two(2, 3)}}).to_string() == "2*H1,3 - 4*H2,3");
  CHECK_THROWS_AS(SymOp::two(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(SymOp::three(1, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(SymOp::two(1, 5).realize(3), std::out_of_range);

  // Rotational symmetry: every realized operator commutes with S_x, S_y, S_z.
  const int n = 4;
  const std::vector<SymOp> ops{SymOp::two(1, 3), SymOp::three(1, 2, 4),
                               SymOp::product(SymOp::two(1, 2), SymOp::two(3, 4))};
  for (const SymOp& op : ops) {
    const Mat x = op.realize(n);
    CHECK(max_abs_diff(x, Mat(x.adjoint())) < 1e-12);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      const Mat s = collective_spin(n, a).matrix();
      CHECK((s * x - x * s).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("generated schedule: identities hold and the inventory is complete") {
  for (int n : {3, 4, 5}) {
    const AppendixSchedule s = generate_appendix_a(n);
    CHECK(s.n == n);
    CHECK(s.max_residual() < 1e-9);
    const std::set<std::string> unique(s.inventory.begin(), s.inventory.end());
    CHECK(unique.size() == s.inventory.size());
    CHECK(s.inventory.size() == binom(n, 2) + binom(n, 3));
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) CHECK(unique.count(SymOp::two(a, b).to_string()) == 1);
  }
  CHECK_THROWS_AS(generate_appendix_a(2), std::invalid_argument);
}

TEST_CASE("schedule generators span the projected chain algebra") {
  // Every inventory operator lies in Lie(i H~0, i H~1).
  const int n = 4;
  const AppendixSchedule s = generate_appendix_a(n);
  Mat h0 = Mat::Zero(16, 16);
  for (int k = 1; k < n; ++k) h0 += SymOp::two(k, k + 1).realize(n);
  const LieBasis b = lie_closure(std::vector<Mat>{h0, SymOp::two(1, 2).realize(n)});
  CHECK(b.dim() == 12);
  for (int a = 1; a <= n; ++a)
    for (int c = a + 1; c <= n; ++c) CHECK(span_residual(b, Mat(kI * SymOp::two(a, c).realize(n))) < 1e-8);
}

TEST_CASE("four-body identities") {
  for (int n : {4, 5}) {
    for (const SymIdentity& id : four_body_identities(n)) CHECK(id.residual < 1e-9);
  }
  CHECK_THROWS_AS(four_body_identities(3), std::invalid_argument);
}

TEST_CASE("chain Lie dimensions") {
  CHECK(chain_dfs_lie_dim(2) == 1);
  CHECK(chain_dfs_lie_dim(3) == 4);
  CHECK(chain_dfs_lie_dim(4) == 12);
  CHECK_THROWS_AS(chain_dfs_lie_dim(1), std::invalid_argument);
}

TEST_CASE("table_one and its CSV") {
  const std::vector<TableOneColumn> cols = table_one(4);
  REQUIRE(cols.size() == 4);
  CHECK(cols[0].origin == "reference");
  CHECK(cols[0].dim_dfs == 0);
  CHECK(cols[3].dim_dfs == 12);
  CHECK(cols[3].sum_su == 11);
  CHECK(cols[3].sum_u == 14);
  const std::string csv = table_one_csv(cols);
  CHECK(csv.rfind("quantity,N=1,N=2,N=3,N=4\n", 0) == 0);
  CHECK(csv.find("d_J=0,,1,,2\n") != std::string::npos);
  CHECK(csv.find("d_J=1/2,1,,2,\n") != std::string::npos);
  CHECK(csv.find("dim_L_DFS,0,1,4,12\n") != std::string::npos);
  CHECK(csv.find("sum_dim_su,0,0,3,11\n") != std::string::npos);
  CHECK(csv.find("sum_dim_u,1,2,5,14\n") != std::string::npos);
}

}  // TEST_SUITE
