#include "doctest.h"
#include "test_util.hpp"
#include "zenoforge/chain.hpp"
#include "zenoforge/models.hpp"
#include "zenoforge/zeno.hpp"

#include <unsupported/Eigen/KroneckerProduct>

using namespace zenoforge;

namespace {

Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Mat proj0() {
  Mat p = Mat::Zero(2, 2);
  p(0, 0) = 1.0;
  return p;
}

// Block projection lifted back to the full space: B (B^† H B) B^†.
Mat lifted(const Operator& h, const DFSDecomposition& dfs, int block) {
  const Mat& b = dfs.blocks[static_cast<std::size_t>(block)].basis;
  return b * project_hamiltonian(h, dfs, block) * b.adjoint();
}

// sigma^(m) . sigma^(n) built directly from Pauli strings, 0-based sites.
Mat heisenberg_bond(int n, int a, int b) {
  const HilbertSpace s = HilbertSpace::qubits(n);
  Mat out = Mat::Zero(s.dim(), s.dim());
  for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) out += (pauli_on(s, a, ax) * pauli_on(s, b, ax)).matrix();
  return out;
}

}  // namespace

TEST_SUITE("zeno") {

TEST_CASE("amplitude damping: P H0 P = -sx ⊗ |0><0|, P H1 P = sy ⊗ |0><0|") {
  const ModelDescriptor m = build_model("two-qubit-amp");
  const DFSDecomposition dfs = detect_dfs(m.spec);
  CHECK(max_abs_diff(lifted(m.controls[0], dfs, 0), kron(-pauli(Axis::X), proj0())) < 1e-10);
  CHECK(max_abs_diff(lifted(m.controls[1], dfs, 0), kron(pauli(Axis::Y), proj0())) < 1e-10);
  CHECK_THROWS_AS(project_hamiltonian(m.controls[0], dfs, 1), std::out_of_range);
}

TEST_CASE("atom: P H0 P is the hopping chain, P H1 P = |1><1|") {
  for (int n = 2; n <= 5; ++n) {
    const ModelDescriptor m = build_model("n-level-atom", {n, {}});
    const DFSDecomposition dfs = detect_dfs(m.spec);
    Mat hop = Mat::Zero(n + 1, n + 1), one = Mat::Zero(n + 1, n + 1);
    for (int j = 0; j + 1 < n; ++j) hop(j, j + 1) = hop(j + 1, j) = 1.0;
    one(0, 0) = 1.0;
    CHECK(max_abs_diff(lifted(m.controls[0], dfs, 0), hop) < 1e-10);
    CHECK(max_abs_diff(lifted(m.controls[1], dfs, 0), one) < 1e-10);
  }
}

TEST_CASE("dephasing superprojection of the controls") {
  const ModelDescriptor m = build_model("two-qubit-dephasing", {2, {0.7}});
  const Mat sx = pauli(Axis::X), sy = pauli(Axis::Y), sz = pauli(Axis::Z);
  const Operator p0 = superproject_unital(m.controls[0], m.spec);
  const Operator p1 = superproject_unital(m.controls[1], m.spec);
  CHECK(max_abs_diff(p0.matrix(), kron(sx, sz)) < 1e-8);
  CHECK(max_abs_diff(p1.matrix(), kron(Mat(-sy), sz)) < 1e-8);
  // Dense route through the superprojector agrees.
  const Superoperator sp = steady_superprojector(m.spec);
  CHECK(max_abs_diff(superproject_hamiltonian(m.controls[0], sp).matrix(), p0.matrix()) < 1e-8);
  CHECK_THROWS_AS(superproject_unital(m.controls[0], build_model("two-qubit-amp").spec), NumericalError);
  CHECK_THROWS_AS(superproject_hamiltonian(m.controls[0], steady_superprojector(build_model("two-qubit-amp").spec)), NumericalError);
}

TEST_CASE("collective decoherence projects the Ising chain onto the Heisenberg chain") {
  for (int n : {3, 4}) {
    const ChainModel c = build_chain(n, 1.0, 1.0, 1.0);
    Mat heis = Mat::Zero(c.h0.dim(), c.h0.dim());
    for (int k = 0; k + 1 < n; ++k) heis += heisenberg_bond(n, k, k + 1);
    CHECK(max_abs_diff(superproject_unital(c.h0, c.spec).matrix(), Mat(heis / 3.0)) < 1e-8);
    CHECK(max_abs_diff(superproject_unital(c.h1, c.spec).matrix(), Mat(heisenberg_bond(n, 0, 1) / 3.0)) < 1e-8);
  }
}

TEST_CASE("CG superprojection agrees with the dense superprojector on random unital dissipators") {
  std::mt19937_64 rng(21);
  const HilbertSpace s = HilbertSpace::qubits(2);
  for (int trial = 0; trial < 3; ++trial) {
    const Operator l1(s, zf_test::random_hermitian(4, rng));
    const Operator h(s, zf_test::random_hermitian(4, rng));
    // A single Hermitian jump keeps a nontrivial commutant.
    const LindbladSpec spec = LindbladSpec::dissipative(s, {{0.9, l1}});
    const Operator dense = superproject_hamiltonian(h, steady_superprojector(spec));
    CHECK(max_abs_diff(superproject_unital(h, spec).matrix(), dense.matrix()) < 1e-8);
  }
}

TEST_CASE("project_controls") {
  const ModelDescriptor deph = build_model("two-qubit-dephasing");
  const ProjectedControlSystem pc = project_controls(deph.controls, deph.spec, detect_dfs(deph.spec), 0);
  CHECK(pc.restricted.size() == 2);
  REQUIRE(pc.superprojected.has_value());
  CHECK(pc.superprojected->size() == 2);
  const ModelDescriptor amp = build_model("two-qubit-amp");
  CHECK_FALSE(project_controls(amp.controls, amp.spec, detect_dfs(amp.spec), 0).superprojected.has_value());
}

TEST_CASE("Zeno product converges to the projected evolution at the first-order rate") {
  for (const std::string& name : {std::string("two-qubit-amp"), std::string("two-qubit-dephasing")}) {
    const ModelDescriptor m = build_model(name);
    const Superoperator p = steady_superprojector(m.spec);
    for (const Operator& h : {m.controls[0], m.controls[1], Operator(m.controls[0] + m.controls[1])}) {
      const Superoperator k = hamiltonian_superop(h);
      const Superoperator lim = zeno_limit(p, k, 1.0);
      double prev = 1e300;
      for (int n = 1; n <= 256; n *= 2) {
        const double err = spectral_norm(zeno_product(p, k, 1.0, n).matrix() - lim.matrix());
        CHECK(err < prev);
        // Beyond the transient the error halves with each doubling of n (C/n).
        if (n >= 16) CHECK(err / prev == doctest::Approx(0.5).epsilon(0.1));
        prev = err;
      }
    }
  }
  const ModelDescriptor m = build_model("two-qubit-amp");
  const Superoperator p = steady_superprojector(m.spec);
  CHECK_THROWS_AS(zeno_product(p, p, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(zeno_product(p, p, -1.0, 2), std::invalid_argument);
}

TEST_CASE("Zeno product with K = 0 is the superprojector") {
  const ModelDescriptor m = build_model("two-qubit-amp");
  const Superoperator p = steady_superprojector(m.spec);
  CHECK(max_abs_diff(zeno_product(p, Superoperator::zero(p.space()), 1.0, 7).matrix(), p.matrix()) < 1e-12);
}

TEST_CASE("PKP on a DFS block is the commutator with the projected Hamiltonian") {
  const ModelDescriptor m = build_model("two-qubit-amp");
  const Superoperator p = steady_superprojector(m.spec);
  const DFSDecomposition dfs = detect_dfs(m.spec);
  const Mat b = dfs.blocks[0].basis;
  const Operator& h = m.controls[0];
  const Mat pkp = (p * hamiltonian_superop(h) * p).matrix();
  const Mat hb = b * project_hamiltonian(h, dfs, 0) * b.adjoint();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Mat rho = b.col(i) * b.col(j).adjoint();
      CHECK(max_abs_diff(unvectorize(pkp * vectorize(rho), 4), Mat(-kI * (hb * rho - rho * hb))) < 1e-8);
    }
}

TEST_CASE("Abelian interaction algebra: P(H) = sum_i P_i H P_i") {
  const ModelDescriptor m = build_model("two-qubit-dephasing");
  const DFSDecomposition dfs = detect_dfs(m.spec);
  for (const Operator& h : m.controls) {
    Mat sum = Mat::Zero(4, 4);
    for (const auto& blk : dfs.blocks) sum += blk.projector() * h.matrix() * blk.projector();
    CHECK(max_abs_diff(superproject_unital(h, m.spec).matrix(), sum) < 1e-8);
  }
}

TEST_CASE("zeno_limit keeps block populations and is unitary inside the DFS") {
  const ModelDescriptor m = build_model("two-qubit-amp");
  const Superoperator p = steady_superprojector(m.spec);
  const Superoperator lim = zeno_limit(p, hamiltonian_superop(m.controls[0]), 0.8);
  // Inside the DFS the limit is conjugation by exp(-i P H P t).
  const DFSDecomposition dfs = detect_dfs(m.spec);
  const Mat b = dfs.blocks[0].basis;
  const Mat u = expm(Mat(-kI * 0.8 * project_hamiltonian(m.controls[0], dfs, 0)));
  std::mt19937_64 rng(22);
  const Mat r = zf_test::random_density(2, rng);
  const Mat rho = b * r * b.adjoint();
  const Mat expect = b * u * r * u.adjoint() * b.adjoint();
  CHECK(max_abs_diff(unvectorize(lim.matrix() * vectorize(rho), 4), expect) < 1e-10);
}

TEST_CASE("strong-damping error is linear in the relaxation time") {
  const ModelDescriptor m = build_model("two-qubit-amp");
  for (const Operator& h : {m.controls[0], Operator(m.controls[0] + m.controls[1])}) {
    const LindbladSpec base = m.spec.with_hamiltonian(h);
    double prev = 1e300;
    for (double gamma : {10.0, 20.0, 40.0, 80.0}) {
      const double err = strong_damping_error(base.scaled_rates(gamma), 1.0, 1.0);
      CHECK(err < prev);
      if (gamma > 10.0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.25));
      prev = err;
    }
  }
  CHECK(strong_damping_error(m.spec.with_hamiltonian(m.controls[0]).scaled_rates(5.0), 0.0, 1.0) < 1e-12);
}

TEST_CASE("spectral_norm") {
  Mat d = Mat::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = cplx(0.0, -5.0);
  CHECK(spectral_norm(d) == doctest::Approx(5.0));
  std::mt19937_64 rng(23);
  const Mat u = zf_test::random_unitary(4, rng);
  CHECK(spectral_norm(u) == doctest::Approx(1.0));
}

}  // TEST_SUITE
