#include "doctest.h"
#include "test_util.hpp"
#include "zenoforge/lie.hpp"
#include "zenoforge/models.hpp"
#include "zenoforge/zeno.hpp"

#include <algorithm>

using namespace zenoforge;

namespace {

std::vector<Mat> conjugated(const std::vector<Mat>& gens, const Mat& u) {
  std::vector<Mat> out;
  for (const Mat& g : gens) out.push_back(u * g * u.adjoint());
  return out;
}

}  // namespace

TEST_SUITE("lie") {

TEST_CASE("Pauli generators") {
  const LieBasis su2 = lie_closure(std::vector<Mat>{pauli(Axis::X), pauli(Axis::Y)});
  CHECK(su2.dim() == 3);
  const Verdict v = controllability_verdict(su2);
  CHECK(v.contains_su);
  CHECK_FALSE(v.equals_u);

  const LieBasis u2 = lie_closure(std::vector<Mat>{pauli(Axis::X), Mat(pauli(Axis::Y) + Mat::Identity(2, 2))});
  CHECK(u2.dim() == 4);
  CHECK(controllability_verdict(u2).equals_u);

  const LieBasis one = lie_closure(std::vector<Mat>{pauli(Axis::Z), Mat(2.0 * pauli(Axis::Z))});
  CHECK(one.dim() == 1);
  CHECK_FALSE(controllability_verdict(one).contains_su);
}

TEST_CASE("basis is HS-orthonormal and anti-Hermitian") {
  std::mt19937_64 rng(31);
  const LieBasis b = lie_closure(std::vector<Mat>{zf_test::random_hermitian(3, rng), zf_test::random_hermitian(3, rng)});
  CHECK(b.dim() == 9);
  for (int i = 0; i < b.dim(); ++i) {
    const Mat& x = b.elements[static_cast<std::size_t>(i)];
    CHECK(max_abs_diff(x.adjoint(), Mat(-x)) < 1e-12);
    for (int j = 0; j < b.dim(); ++j) {
      const double ip = (x.adjoint() * b.elements[static_cast<std::size_t>(j)]).trace().real();
      CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
  CHECK(span_residual(b, Mat(kI * Mat::Identity(3, 3))) < 1e-9);
  CHECK_THROWS_AS(span_residual(b, Mat(Mat::Identity(2, 2))), DimensionError);
}

TEST_CASE("two-qubit models") {
  const ModelDescriptor amp = build_model("two-qubit-amp");
  CHECK(lie_closure(amp.controls).dim() == 2);
  CHECK_FALSE(controllability_verdict(lie_closure(amp.controls)).contains_su);

  const DFSDecomposition dfs = detect_dfs(amp.spec);
  const ProjectedControlSystem pc = project_controls(amp.controls, amp.spec, dfs, 0);
  const LieBasis block = lie_closure(pc.restricted);
  CHECK(block.dim() == 3);
  CHECK(controllability_verdict(block).contains_su);

  const ModelDescriptor deph = build_model("two-qubit-dephasing");
  const DfsLieReport r = dfs_lie_dimension(deph.spec, deph.controls);
  REQUIRE(r.unital_dim.has_value());
  CHECK(*r.unital_dim == 3);
  CHECK(r.block_dims == std::vector<int>{3, 3});
  // The unital closure is spanned by {sx⊗sz, sy⊗sz, sz⊗1}.
  std::vector<Operator> proj;
  for (const Operator& h : deph.controls) proj.push_back(superproject_unital(h, deph.spec));
  const LieBasis ub = lie_closure(proj);
  const HilbertSpace s = HilbertSpace::qubits(2);
  CHECK(span_residual(ub, Mat(kI * pauli_on(s, 0, Axis::Z).matrix())) < 1e-9);
  CHECK(span_residual(ub, Mat(kI * (pauli_on(s, 0, Axis::X) * pauli_on(s, 1, Axis::Z)).matrix())) < 1e-9);
  CHECK(span_residual(ub, Mat(kI * pauli_on(s, 1, Axis::Z).matrix())) > 0.5);
}

TEST_CASE("atom: u(N) over the DFS") {
  for (int n = 2; n <= 5; ++n) {
    const ModelDescriptor m = build_model("n-level-atom", {n, {}});
    CHECK(lie_closure(m.controls).dim() == 2);
    const ProjectedControlSystem pc = project_controls(m.controls, m.spec, detect_dfs(m.spec), 0);
    const Verdict v = controllability_verdict(lie_closure(pc.restricted));
    CHECK(v.dim == n * n);
    CHECK(v.equals_u);
  }
}

TEST_CASE("closure dimension is invariant under reordering and unitary conjugation") {
  std::mt19937_64 rng(32);
  const ModelDescriptor m = build_model("n-level-atom", {3, {}});
  std::vector<Mat> gens;
  for (const Operator& h : m.controls) gens.push_back(h.matrix());
  const int base = lie_closure(gens).dim();
  std::vector<Mat> rev(gens.rbegin(), gens.rend());
  CHECK(lie_closure(rev).dim() == base);
  const Mat u = zf_test::random_unitary(4, rng);
  CHECK(lie_closure(conjugated(gens, u)).dim() == base);

  const ModelDescriptor deph = build_model("two-qubit-dephasing");
  std::vector<Mat> pg;
  for (const Operator& h : deph.controls) pg.push_back(superproject_unital(h, deph.spec).matrix());
  const Mat v = zf_test::random_unitary(4, rng);
  CHECK(lie_closure(conjugated(pg, v)).dim() == 3);
}

TEST_CASE("strategies agree") {
  std::mt19937_64 rng(33);
  LieClosureOptions adj;
  adj.strategy = ClosureStrategy::GeneratorAdjoint;
  for (int trial = 0; trial < 4; ++trial) {
    // Block-diagonal generators give a proper subalgebra u(2) ⊕ u(2).
    Mat a = Mat::Zero(4, 4), b = Mat::Zero(4, 4);
    a.topLeftCorner(2, 2) = zf_test::random_hermitian(2, rng);
    a.bottomRightCorner(2, 2) = zf_test::random_hermitian(2, rng);
    b.topLeftCorner(2, 2) = zf_test::random_hermitian(2, rng);
    b.bottomRightCorner(2, 2) = zf_test::random_hermitian(2, rng);
    const int d_all = lie_closure(std::vector<Mat>{a, b}).dim();
    CHECK(d_all == lie_closure(std::vector<Mat>{a, b}, adj).dim());
    CHECK(d_all <= 8);
  }
  const ModelDescriptor m = build_model("n-level-atom", {4, {}});
  const ProjectedControlSystem pc = project_controls(m.controls, m.spec, detect_dfs(m.spec), 0);
  CHECK(lie_closure(pc.restricted, adj).dim() == 16);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(lie_closure(std::vector<Mat>{}), std::invalid_argument);
  CHECK_THROWS_AS(lie_closure(std::vector<Mat>{Mat(Mat::Zero(2, 2))}), std::invalid_argument);
  Mat nh = Mat::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(lie_closure(std::vector<Mat>{nh}), NumericalError);
  CHECK_THROWS_AS(lie_closure(std::vector<Mat>{pauli(Axis::X), Mat(Mat::Identity(3, 3))}), DimensionError);
  LieClosureOptions capped;
  capped.max_dim = 2;
  CHECK_THROWS_AS(lie_closure(std::vector<Mat>{pauli(Axis::X), pauli(Axis::Y)}, capped), NumericalError);
}

TEST_CASE("verdict JSON") {
  const std::string j = verdict_to_json(controllability_verdict(lie_closure(std::vector<Mat>{pauli(Axis::X), pauli(Axis::Y)})));
  CHECK(j.find("\"dim\":3") != std::string::npos);
  CHECK(j.find("\"contains_su\":true") != std::string::npos);
}

}  // TEST_SUITE
