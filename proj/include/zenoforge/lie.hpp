#pragma once

// Real Lie-algebra closure of i*{H_0, ..., H_m}.

#include <optional>
#include <string>
#include <vector>

#include "zenoforge/lindblad.hpp"

namespace zenoforge {

/// HS-orthonormal anti-Hermitian basis of a real Lie algebra of d x d matrices.
struct LieBasis {
  int d = 0;
  std::vector<Mat> elements;
  int dim() const { return static_cast<int>(elements.size()); }
};

enum class ClosureStrategy {
  AllPairs,        // commute every new element with every element found so far
  GeneratorAdjoint // commute every element only with the generators (nested brackets suffice)
};

struct LieClosureOptions {
  // Residual norm below which a candidate is in the span. For the N = 6 chain,
  // genuine new directions have residuals >= 1.8e-4 while roundoff reaches 1.5e-8.
  double tol = 1e-6;
  int max_dim = 0;     // 0: 4 d^2
  ClosureStrategy strategy = ClosureStrategy::AllPairs;
};

/// Closure of the real span of i*H_k under commutators. Generators must be
/// Hermitian and of equal size, and at least one must be nonzero.
LieBasis lie_closure(const std::vector<Mat>& hermitian_generators, const LieClosureOptions& opts = {});
LieBasis lie_closure(const std::vector<Operator>& hermitian_generators, const LieClosureOptions& opts = {});

/// Norm of the part of the anti-Hermitian matrix x orthogonal to the span.
double span_residual(const LieBasis& basis, const Mat& x);

struct Verdict {
  int dim = 0;
  bool contains_su = false;
  bool equals_u = false;
  std::vector<int> block_dims;
};

Verdict controllability_verdict(const LieBasis& basis);
std::string verdict_to_json(const Verdict& v);

struct DfsLieReport {
  std::vector<int> block_dims;       // closure of the block-restricted controls, per DFS block
  std::optional<int> unital_dim;     // closure of {P(H_l)} on the full space when D is unital
};

DfsLieReport dfs_lie_dimension(const LindbladSpec& spec, const std::vector<Operator>& controls,
                               const LieClosureOptions& opts = {});

}  // namespace zenoforge
