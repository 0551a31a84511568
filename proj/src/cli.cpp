#include "zenoforge/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zenoforge/chain.hpp"
#include "zenoforge/models.hpp"
#include "zenoforge/zeno.hpp"

namespace zenoforge {

namespace {

using ojson = nlohmann::ordered_json;

struct Common {
  std::string model = "two-qubit-amp";
  int n = 0;
  std::vector<double> gammas;
};

void add_model_options(CLI::App* sub, Common& c) {
  sub->add_option("--model", c.model, "Model name")
      ->check(CLI::IsMember({"two-qubit-amp", "two-qubit-dephasing", "n-level-atom", "ising-chain"}));
  sub->add_option("--n", c.n, "System size (atom levels or chain length)");
  sub->add_option("--gammas", c.gammas, "Decay rates, comma separated")->delimiter(',');
}

Operator goal_by_name(const std::string& name) {
  const HilbertSpace q = HilbertSpace::qubits(1);
  if (name == "hadamard") return hadamard();
  if (name == "identity") return Operator::identity(q);
  if (name == "x") return {q, pauli(Axis::X)};
  if (name == "y") return {q, pauli(Axis::Y)};
  if (name == "z") return {q, pauli(Axis::Z)};
  throw std::invalid_argument("unknown goal '" + name + "'");
}

Superoperator environment_by_name(const std::string& name) {
  if (name == "reset0") return reset_to_ground();
  if (name == "identity") return Superoperator::identity(HilbertSpace::qubits(1));
  if (name == "dephase") {
    Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    return {HilbertSpace::qubits(1), Mat(sandwich(p0, p0) + sandwich(p1, p1))};
  }
  throw std::invalid_argument("unknown environment map '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_table(const std::string& text, const std::string& csv_path, std::ostream& out) {
  if (csv_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(csv_path);
  if (!f) throw std::runtime_error("cannot write " + csv_path);
  f << text;
  out << ojson{{"csv", csv_path}}.dump() << "\n";
}

ojson number_or_null(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

// Appends "--key value" for config entries whose option was not given on the
// command line. Flat keys apply to every subcommand that has the option; an
// object under the subcommand's name overrides them.
std::vector<std::string> apply_config(std::vector<std::string> args, CLI::App& app) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw CLI::ValidationError("--config", std::string("invalid JSON: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw CLI::ValidationError("--config", e.what());
  }
  if (!cfg.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");

  const std::string sub = rest.empty() ? "" : rest.front();
  CLI::App* sub_app = nullptr;
  try {
    sub_app = app.get_subcommand(sub);
  } catch (const CLI::OptionNotFound&) {
    return rest;  // the parser reports the missing or unknown subcommand
  }
  nlohmann::json merged = nlohmann::json::object();
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    if (!it.value().is_object() && sub_app->get_option_no_throw("--" + it.key()) != nullptr) merged[it.key()] = it.value();
  if (cfg.contains(sub) && cfg[sub].is_object())
    for (auto it = cfg[sub].begin(); it != cfg[sub].end(); ++it) merged[it.key()] = it.value();

  auto given = [&](const std::string& flag) {
    for (const auto& a : rest)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  auto scalar = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream os;
    os << std::setprecision(17);
    if (v.is_number_integer()) os << v.get<long long>();
    else if (v.is_number()) os << v.get<double>();
    else throw CLI::ValidationError("--config", "unsupported value " + v.dump());
    return os.str();
  };
  for (auto it = merged.begin(); it != merged.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (given(flag)) continue;
    const auto& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) rest.push_back(flag);
    } else if (v.is_array()) {
      std::string joined;
      for (std::size_t k = 0; k < v.size(); ++k) joined += (k ? "," : "") + scalar(v[k]);
      rest.push_back(flag);
      rest.push_back(joined);
    } else {
      rest.push_back(flag);
      rest.push_back(scalar(v));
    }
  }
  return rest;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noise-induced control toolkit: DFS detection, Lie closures, Zeno limits, pulse optimization"};
  app.require_subcommand(1);
  app.add_option("--config", "JSON file with option defaults (flags take precedence)");

  Common lie_c;
  auto* lie = app.add_subcommand("lie-dim", "Lie algebra dimension without noise and over the DFS's");
  add_model_options(lie, lie_c);

  Common dfs_c;
  auto* dfs = app.add_subcommand("dfs", "Decoherence-free subspaces and relaxation data of a model");
  add_model_options(dfs, dfs_c);

  Common zeno_c;
  double zeno_t = 1.0;
  std::vector<int> zeno_ns{1, 2, 4, 8, 16, 32, 64, 128, 256};
  std::vector<double> zeno_strengths{10, 20, 40, 80};
  std::string zeno_h = "h0";
  auto* zeno = app.add_subcommand("zeno-check", "Zeno product convergence and strong-damping error");
  add_model_options(zeno, zeno_c);
  zeno->add_option("--t", zeno_t, "Evolution time");
  zeno->add_option("--ns", zeno_ns, "Zeno step counts")->delimiter(',');
  zeno->add_option("--damping", zeno_strengths, "Rates for the strong-damping error (g = 1)")->delimiter(',');
  zeno->add_option("--hamiltonian", zeno_h, "Coherent part: h0, h1, or their sum")->check(CLI::IsMember({"h0", "h1", "sum"}));

  int table_nmax = 6;
  std::string table_csv;
  auto* table = app.add_subcommand("reproduce-table1", "DFS dimensions and Lie dimensions of the collective-decoherence chain");
  table->add_option("--nmax", table_nmax, "Largest chain length")->check(CLI::Range(1, 7));
  table->add_option("--csv", table_csv, "Write the table to this path instead of stdout");

  Common sweep_c;
  std::string sweep_target = "hadamard", sweep_objective = "eps2", sweep_csv_path;
  OptimizeOptions sweep_opts;
  double sweep_time = 1.0;
  auto* sweep = app.add_subcommand("sweep", "Gate error against damping rate");
  add_model_options(sweep, sweep_c);
  sweep->add_option("--target", sweep_target, "Goal unitary on qubit 1")->check(CLI::IsMember({"hadamard", "identity", "x", "y", "z"}));
  sweep->add_option("--objective", sweep_objective, "Objective minimized")->check(CLI::IsMember({"eps1", "eps2"}));
  sweep->add_option("--restarts", sweep_opts.restarts, "Random initial pulses per rate")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_opts.seed, "Random seed");
  sweep->add_option("--slices", sweep_opts.n_slices, "Piecewise-constant slices")->check(CLI::PositiveNumber);
  sweep->add_option("--time", sweep_time, "Gate time T")->check(CLI::PositiveNumber);
  sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0: all cores)");
  sweep->add_option("--csv", sweep_csv_path, "Write the sweep to this path instead of stdout");

  std::string fid_spec, fid_goal = "hadamard", fid_env = "reset0";
  double fid_time = 1.0;
  auto* fid = app.add_subcommand("fidelity", "epsilon1 / epsilon2 of e^{T L} for a JSON Lindblad spec on two factors");
  fid->add_option("--spec", fid_spec, "Lindblad spec JSON file")->required();
  fid->add_option("--time", fid_time, "Evolution time")->check(CLI::NonNegativeNumber);
  fid->add_option("--goal", fid_goal, "Goal unitary on system 1")->check(CLI::IsMember({"hadamard", "identity", "x", "y", "z"}));
  fid->add_option("--env", fid_env, "Goal map on system 2 for epsilon1")->check(CLI::IsMember({"reset0", "identity", "dephase"}));

  std::vector<std::string> args;
  try {
    args = apply_config(raw_args, app);
    std::vector<const char*> argv{"zenoforge"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 2;
  }

  try {
    if (lie->parsed()) {
      const ModelDescriptor m = build_model(lie_c.model, {lie_c.n, lie_c.gammas});
      const int nonoise = lie_closure(m.controls).dim();
      const DfsLieReport r = dfs_lie_dimension(m.spec, m.controls);
      int dim_dfs = 0;
      if (r.unital_dim) {
        dim_dfs = *r.unital_dim;
      } else {
        for (int b : r.block_dims) dim_dfs += b;
      }
      out << ojson{{"dim_nonoise", nonoise}, {"dim_dfs", dim_dfs}}.dump() << "\n";
    } else if (dfs->parsed()) {
      const ModelDescriptor m = build_model(dfs_c.model, {dfs_c.n, dfs_c.gammas});
      const DFSDecomposition d = detect_dfs(m.spec);
      ojson j;
      j["model"] = m.name;
      j["dim"] = m.spec.space().dim();
      j["unital"] = is_unital(m.spec);
      j["attractive"] = is_attractive(m.spec);
      j["blocks"] = ojson::array();
      for (const auto& b : d.blocks) {
        ojson lam = ojson::array();
        for (cplx l : b.lambdas) lam.push_back({l.real(), l.imag()});
        j["blocks"].push_back({{"dim", b.dim()}, {"b", b.b}, {"lambdas", lam}});
      }
      if (m.spec.space().dim() <= 16) j["tau_r"] = number_or_null(relaxation_report(m.spec).tau_r);
      out << j.dump() << "\n";
    } else if (zeno->parsed()) {
      const ModelDescriptor m = build_model(zeno_c.model, {zeno_c.n, zeno_c.gammas});
      const Operator h = zeno_h == "h0" ? m.controls[0] : zeno_h == "h1" ? m.controls[1] : m.controls[0] + m.controls[1];
      const Superoperator p = steady_superprojector(m.spec);
      const Superoperator k = hamiltonian_superop(h);
      const Superoperator limit = zeno_limit(p, k, zeno_t);
      ojson j;
      j["model"] = m.name;
      j["t"] = zeno_t;
      j["hamiltonian"] = zeno_h;
      j["zeno"] = ojson::array();
      for (int n : zeno_ns) {
        const double e = spectral_norm(zeno_product(p, k, zeno_t, n).matrix() - limit.matrix());
        j["zeno"].push_back({{"n", n}, {"error", e}});
      }
      j["strong_damping"] = ojson::array();
      for (double g : zeno_strengths) {
        const LindbladSpec scaled = m.spec.scaled_rates(g).with_hamiltonian(h);
        j["strong_damping"].push_back({{"rate_scale", g}, {"error", strong_damping_error(scaled, 1.0, zeno_t)}});
      }
      out << j.dump() << "\n";
    } else if (table->parsed()) {
      emit_table(table_one_csv(table_one(table_nmax)), table_csv, out);
    } else if (sweep->parsed()) {
      if (sweep_c.gammas.empty()) sweep_c.gammas = {0.1, 1, 10, 100};
      const Operator ug = goal_by_name(sweep_target);
      const std::string model = sweep_c.model;
      Target target = sweep_objective == "eps1"
                          ? Target::epsilon1(ug, environment_by_name(model == "two-qubit-amp" ? "reset0" : "dephase"))
                          : Target::epsilon2(ug);
      const auto builder = [&](double g) { return two_qubit_control_system(model, g, sweep_time); };
      const auto rows = gamma_sweep(builder, sweep_c.gammas, target, sweep_opts);
      emit_table(sweep_csv(rows), sweep_csv_path, out);
    } else if (fid->parsed()) {
      const LindbladSpec spec = spec_from_json(read_file(fid_spec));
      const Operator ug = goal_by_name(fid_goal);
      const Superoperator etilde = environment_by_name(fid_env);
      if (spec.space().dim() != ug.dim() * etilde.dim()) {
        throw DimensionError("fidelity: spec must act on a qubit times a qubit (dims [2,2])");
      }
      const Superoperator et = propagate(spec, fid_time);
      const auto& dims = spec.space().factor_dims();
      const HilbertSpace s2(std::vector<int>(dims.begin() + leading_factors(spec.space(), ug.dim()), dims.end()));
      const GateErrorReport r = gate_error_report(et, ug, etilde, DensityMatrix::maximally_mixed(s2));
      out << report_to_json(r) << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace zenoforge
