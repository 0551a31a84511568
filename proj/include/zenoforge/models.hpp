#pragma once

// Registry of the example systems.

#include <string>
#include <vector>

#include "zenoforge/grape.hpp"
#include "zenoforge/lie.hpp"
#include "zenoforge/lindblad.hpp"

namespace zenoforge {

struct ModelParams {
  int n = 0;                   // 0: model default (atom 3, chain 3)
  std::vector<double> gammas;  // empty: all rates 1
};

struct ExpectedValue {
  std::string key;     // dim_nonoise, dfs_count, dfs_dim[i], block_lie_dim[i], unital_lie_dim
  long value;
  std::string origin;  // "reference": published value; "computed": derived here
};

struct ModelDescriptor {
  std::string name;
  ModelParams params;
  LindbladSpec spec;              // zero Hamiltonian
  std::vector<Operator> controls; // {H_0, H_1}
  std::vector<ExpectedValue> expected;
};

const std::vector<std::string>& model_names();

/// Throws std::invalid_argument for unknown names or invalid parameters.
ModelDescriptor build_model(const std::string& name, const ModelParams& params = {});

struct ValidationEntry {
  std::string key;
  long expected;
  long actual;
  bool ok() const { return expected == actual; }
};

/// Re-derives every expected value of the descriptor.
std::vector<ValidationEntry> validate_model(const ModelDescriptor& m, const LieClosureOptions& opts = {});

/// Two-qubit model with rate gamma as a control system whose controls are
/// {H_0, H_1} (the drift is driven like a control).
ControlSystem two_qubit_control_system(const std::string& name, double gamma, double total_time = 1.0);

/// rho -> Tr(rho) |0><0| on one qubit: the strong-damping limit of amplitude damping.
Superoperator reset_to_ground();

Operator hadamard();

}  // namespace zenoforge
