#pragma once

// BFGS minimization, backed by GSL's vector_bfgs2.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zenoforge {

/// Returns f(x) and writes the gradient into g (already sized).
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& g)>;

struct BfgsOptions {
  int max_iter = 500;
  double grad_tol = 1e-8;    // stop when max |g_i| falls below
  double f_tol = 1e-12;      // stop when f falls below
  double stall_tol = 1e-15;  // stop after 5 consecutive steps with relative decrease below
  double step_size = 0.01;   // first trial step
  double line_tol = 0.9;     // curvature condition of the GSL line search
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string reason;
  std::vector<double> trace;  // f after each accepted step, starting with f(x0)
};

BfgsResult bfgs_minimize(const Objective& fn, Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace zenoforge
