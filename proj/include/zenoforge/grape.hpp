#pragma once

// Piecewise-constant pulse optimization of epsilon1 / epsilon2 under a
// dissipative bilinear control system.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zenoforge/bfgs.hpp"
#include "zenoforge/channels.hpp"
#include "zenoforge/lindblad.hpp"

namespace zenoforge {

/// Generator on slice k: -i[H_drift + sum_l f_lk H_l, .] + D, where H_drift and
/// D come from `spec`.
struct ControlSystem {
  LindbladSpec spec;
  std::vector<Operator> controls;
  double total_time = 1.0;

  const HilbertSpace& space() const { return spec.space(); }
  void validate() const;
};

/// amplitudes(l, k): control l on slice k; slices have equal width T / n_slices.
struct PulseSchedule {
  Eigen::MatrixXd amplitudes;
  int n_controls() const { return static_cast<int>(amplitudes.rows()); }
  int n_slices() const { return static_cast<int>(amplitudes.cols()); }
};

struct Target {
  enum class Kind { Epsilon1, Epsilon2 };
  Kind kind;
  Operator goal_unitary;                 // on system 1
  std::optional<Superoperator> goal_map; // full goal U_G ⊗ E~, epsilon1 only

  static Target epsilon1(const Operator& ug, const Superoperator& etilde);
  static Target epsilon2(const Operator& ug);
};

Superoperator propagate_schedule(const ControlSystem& sys, const PulseSchedule& sched);

/// Objective value of the final map alone.
double objective_value(const Superoperator& et, const Target& target);

struct ObjectiveGradient {
  double value;
  Eigen::MatrixXd gradient;  // same shape as amplitudes
};

/// Exact gradient: each slice derivative is the Frechet derivative of the
/// exponential, read off a 2x2 block-triangular exponential.
ObjectiveGradient objective_and_gradient(const ControlSystem& sys, const PulseSchedule& sched, const Target& target);

struct RestartTrace {
  double value;
  int iterations;
  int evaluations;
  bool converged;
  std::string reason;
  std::vector<double> trace;
};

struct OptimizeOptions {
  int restarts = 10;
  std::uint64_t seed = 0;
  int n_slices = 20;
  int threads = 0;  // 0: hardware concurrency, further capped by ZENOFORGE_THREADS
  BfgsOptions bfgs;
};

struct OptimizationResult {
  PulseSchedule best;
  double best_value;
  int best_restart;
  int evaluations;
  bool converged;  // the best restart converged
  std::vector<RestartTrace> restarts;
};

/// Amplitudes i.i.d. uniform in [-1, 1] / T; restart r draws from seed_seq{seed, r}.
PulseSchedule random_schedule(int n_controls, int n_slices, double total_time, std::uint64_t seed, int restart);

/// Best of independent BFGS runs; deterministic for a given seed regardless of
/// thread count.
OptimizationResult optimize(const ControlSystem& sys, const Target& target, const OptimizeOptions& opts = {});

/// Worker count after applying the ZENOFORGE_THREADS cap.
int worker_count(int requested, int jobs);

struct SweepRow {
  double gamma;
  double best_eps;
  double reduced_error;  // ||E_T^(1) - U_G||_HS^2 with system 2 maximally mixed
  int restarts;
  int iterations;        // iterations of the best restart
};

std::vector<SweepRow> gamma_sweep(const std::function<ControlSystem(double)>& builder,
                                  const std::vector<double>& gammas, const Target& target,
                                  const OptimizeOptions& opts = {});

/// Reduced error of E_T against U_G with system 2 maximally mixed.
double reduced_gate_error(const Superoperator& et, const Operator& ug);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace zenoforge
