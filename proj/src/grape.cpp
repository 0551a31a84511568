#include "zenoforge/grape.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

namespace zenoforge {

void ControlSystem::validate() const {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw std::invalid_argument("ControlSystem: T must be positive");
  if (controls.empty()) throw std::invalid_argument("ControlSystem: no controls");
  for (const auto& c : controls) {
    if (c.space() != space()) throw DimensionError("ControlSystem: control on a different space");
    if (!c.is_hermitian()) throw NumericalError("ControlSystem: control is not Hermitian");
  }
}

Target Target::epsilon1(const Operator& ug, const Superoperator& etilde) {
  return {Kind::Epsilon1, ug, superop_tensor(unitary_channel(ug), etilde)};
}

Target Target::epsilon2(const Operator& ug) { return {Kind::Epsilon2, ug, std::nullopt}; }

namespace {

void check_schedule(const ControlSystem& sys, const PulseSchedule& sched) {
  if (sched.n_controls() != static_cast<int>(sys.controls.size())) {
    throw DimensionError("schedule has " + std::to_string(sched.n_controls()) + " control rows, system has " +
                         std::to_string(sys.controls.size()));
  }
  if (sched.n_slices() < 1) throw std::invalid_argument("schedule has no slices");
  if (!sched.amplitudes.allFinite()) throw NumericalError("schedule has non-finite amplitudes");
}

struct Generators {
  Mat base;                // K(drift) + D
  std::vector<Mat> ks;     // -i[H_l, .]
};

Generators generators(const ControlSystem& sys) {
  Generators g{dissipator_matrix(sys.spec).matrix(), {}};
  for (const auto& c : sys.controls) g.ks.push_back(hamiltonian_superop(c).matrix());
  return g;
}

Mat slice_generator(const Generators& g, const PulseSchedule& sched, int k, double dt) {
  Mat l = g.base;
  for (std::size_t c = 0; c < g.ks.size(); ++c) l += sched.amplitudes(static_cast<Eigen::Index>(c), k) * g.ks[c];
  return dt * l;
}

void check_target(const ControlSystem& sys, const Target& t) {
  if (t.kind == Target::Kind::Epsilon1) {
    if (!t.goal_map || t.goal_map->space() != sys.space()) throw DimensionError("epsilon1 target needs a goal map on the system space");
  }
}

// Value and dε = Re <G, dE> gradient matrix of the objective at E_T.
std::pair<double, Mat> value_and_weight(const Mat& et, const Target& target, int d) {
  if (target.kind == Target::Kind::Epsilon1) {
    const Mat diff = et - target.goal_map->matrix();
    return {diff.squaredNorm(), 2.0 * diff};
  }
  const Mat w = goal_weight(target.goal_unitary, d / target.goal_unitary.dim());
  const Mat j = reshuffle(et, d) / static_cast<double>(d);
  const Mat one_minus_w = Mat::Identity(w.rows(), w.cols()) - w;
  const double value = (j * j * one_minus_w).trace().real();
  const Mat a = j * one_minus_w + one_minus_w * j;
  return {value, reshuffle(a.adjoint(), d) / static_cast<double>(d)};
}

}  // namespace

Superoperator propagate_schedule(const ControlSystem& sys, const PulseSchedule& sched) {
  sys.validate();
  check_schedule(sys, sched);
  const Generators g = generators(sys);
  const double dt = sys.total_time / sched.n_slices();
  const int d2 = sys.space().dim() * sys.space().dim();
  Mat e = Mat::Identity(d2, d2);
  for (int k = 0; k < sched.n_slices(); ++k) e = expm(slice_generator(g, sched, k, dt)) * e;
  return {sys.space(), std::move(e)};
}

double objective_value(const Superoperator& et, const Target& target) {
  if (target.kind == Target::Kind::Epsilon1) {
    if (!target.goal_map) throw std::invalid_argument("epsilon1 target without goal map");
    return epsilon1(et, *target.goal_map);
  }
  return epsilon2(et, target.goal_unitary);
}

ObjectiveGradient objective_and_gradient(const ControlSystem& sys, const PulseSchedule& sched, const Target& target) {
  sys.validate();
  check_schedule(sys, sched);
  check_target(sys, target);
  const Generators g = generators(sys);
  const int n = sched.n_slices();
  const int m = sched.n_controls();
  const int d = sys.space().dim();
  const double dt = sys.total_time / n;

  // slices[k] = E_{k+1}; deriv[k][l] = dE_{k+1} / df_{l,k}.
  std::vector<Mat> slices(static_cast<std::size_t>(n));
  std::vector<std::vector<Mat>> deriv(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Mat a = slice_generator(g, sched, k, dt);
    for (int c = 0; c < m; ++c) {
      auto [e, de] = expm_frechet(a, dt * g.ks[static_cast<std::size_t>(c)]);
      if (c == 0) slices[static_cast<std::size_t>(k)] = std::move(e);
      deriv[static_cast<std::size_t>(k)].push_back(std::move(de));
    }
  }

  // forward[k] = E_k ... E_1 (forward[0] = 1).
  std::vector<Mat> forward(static_cast<std::size_t>(n) + 1);
  forward[0] = Mat::Identity(d * d, d * d);
  for (int k = 0; k < n; ++k) forward[static_cast<std::size_t>(k) + 1] = slices[static_cast<std::size_t>(k)] * forward[static_cast<std::size_t>(k)];

  auto [value, weight] = value_and_weight(forward.back(), target, d);

  ObjectiveGradient out{value, Eigen::MatrixXd(m, n)};
  Mat back = weight;  // (E_n ... E_{k+2})^† G
  for (int k = n - 1; k >= 0; --k) {
    const Mat lambda = back * forward[static_cast<std::size_t>(k)].adjoint();
    for (int c = 0; c < m; ++c) {
      out.gradient(c, k) = lambda.conjugate().cwiseProduct(deriv[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]).sum().real();
    }
    back = slices[static_cast<std::size_t>(k)].adjoint() * back;
  }
  return out;
}

PulseSchedule random_schedule(int n_controls, int n_slices, double total_time, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PulseSchedule s{Eigen::MatrixXd(n_controls, n_slices)};
  for (int k = 0; k < n_slices; ++k)
    for (int c = 0; c < n_controls; ++c) s.amplitudes(c, k) = u(rng) / total_time;
  return s;
}

int worker_count(int requested, int jobs) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ZENOFORGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, std::min(n, jobs));
}

OptimizationResult optimize(const ControlSystem& sys, const Target& target, const OptimizeOptions& opts) {
  if (opts.restarts < 1) throw std::invalid_argument("optimize: restarts must be >= 1");
  if (opts.n_slices < 1) throw std::invalid_argument("optimize: n_slices must be >= 1");
  sys.validate();
  check_target(sys, target);
  const int m = static_cast<int>(sys.controls.size());
  const int n = opts.n_slices;

  std::vector<RestartTrace> traces(static_cast<std::size_t>(opts.restarts));
  std::vector<PulseSchedule> finals(static_cast<std::size_t>(opts.restarts));

  auto run = [&](int r) {
    const PulseSchedule init = random_schedule(m, n, sys.total_time, opts.seed, r);
    const Objective fn = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
      PulseSchedule s{Eigen::Map<const Eigen::MatrixXd>(x.data(), m, n)};
      if (!s.amplitudes.allFinite()) {
        grad.setZero();
        return std::numeric_limits<double>::infinity();
      }
      const ObjectiveGradient og = objective_and_gradient(sys, s, target);
      grad = Eigen::Map<const Eigen::VectorXd>(og.gradient.data(), og.gradient.size());
      return og.value;
    };
    const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(init.amplitudes.data(), init.amplitudes.size());
    BfgsResult res = bfgs_minimize(fn, x0, opts.bfgs);
    finals[static_cast<std::size_t>(r)] = PulseSchedule{Eigen::Map<const Eigen::MatrixXd>(res.x.data(), m, n)};
    traces[static_cast<std::size_t>(r)] = {res.f, res.iterations, res.evaluations, res.converged, res.reason, std::move(res.trace)};
  };

  const int workers = worker_count(opts.threads, opts.restarts);
  if (workers == 1) {
    for (int r = 0; r < opts.restarts; ++r) run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = next++; r < opts.restarts; r = next++) run(r);
      });
    }
    for (auto& t : pool) t.join();
  }

  OptimizationResult out{{}, std::numeric_limits<double>::infinity(), 0, 0, false, std::move(traces)};
  for (int r = 0; r < opts.restarts; ++r) {
    const auto& t = out.restarts[static_cast<std::size_t>(r)];
    out.evaluations += t.evaluations;
    if (t.value < out.best_value) {
      out.best_value = t.value;
      out.best_restart = r;
    }
  }
  out.best = finals[static_cast<std::size_t>(out.best_restart)];
  out.converged = out.restarts[static_cast<std::size_t>(out.best_restart)].converged;
  return out;
}

double reduced_gate_error(const Superoperator& et, const Operator& ug) {
  const int d2 = et.dim() / ug.dim();
  const int k = leading_factors(et.space(), ug.dim());
  const auto& dims = et.space().factor_dims();
  const HilbertSpace s2(std::vector<int>(dims.begin() + k, dims.end()));
  if (s2.dim() != d2) throw DimensionError("reduced_gate_error: dimension mismatch");
  const Superoperator reduced = reduced_channel(et, DensityMatrix::maximally_mixed(s2));
  return (reduced.matrix() - unitary_channel(Operator(reduced.space(), ug.matrix())).matrix()).squaredNorm();
}

std::vector<SweepRow> gamma_sweep(const std::function<ControlSystem(double)>& builder, const std::vector<double>& gammas,
                                  const Target& target, const OptimizeOptions& opts) {
  if (gammas.empty()) throw std::invalid_argument("gamma_sweep: empty gamma list");
  std::vector<SweepRow> rows;
  for (double gamma : gammas) {
    const ControlSystem sys = builder(gamma);
    const OptimizationResult res = optimize(sys, target, opts);
    const Superoperator et = propagate_schedule(sys, res.best);
    rows.push_back({gamma, res.best_value, reduced_gate_error(et, target.goal_unitary), opts.restarts,
                    res.restarts[static_cast<std::size_t>(res.best_restart)].iterations});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "gamma,best_eps,reduced_error,restarts,iterations\n";
  for (const auto& r : rows) os << r.gamma << "," << r.best_eps << "," << r.reduced_error << "," << r.restarts << "," << r.iterations << "\n";
  return os.str();
}

}  // namespace zenoforge
