#include "zenoforge/bfgs.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <memory>
#include <mutex>

namespace zenoforge {

namespace {

struct Context {
  const Objective* fn;
  Eigen::VectorXd g;
  Eigen::VectorXd last_x;  // point of the cached f and g
  double last_f = 0.0;
  int evaluations = 0;
};

Eigen::Map<const Eigen::VectorXd> view(const gsl_vector* v) {
  return {gsl_vector_const_ptr(v, 0), static_cast<Eigen::Index>(v->size)};
}

void eval_fdf(const gsl_vector* x, void* p, double* f, gsl_vector* df) {
  auto& c = *static_cast<Context*>(p);
  // GSL often asks for f and then df at the same point.
  if (c.evaluations == 0 || c.last_x != view(x)) {
    c.last_x = view(x);
    c.last_f = (*c.fn)(c.last_x, c.g);
    ++c.evaluations;
  }
  if (f) *f = c.last_f;
  if (df) Eigen::Map<Eigen::VectorXd>(gsl_vector_ptr(df, 0), static_cast<Eigen::Index>(df->size)) = c.g;
}

double eval_f(const gsl_vector* x, void* p) {
  double f = 0.0;
  eval_fdf(x, p, &f, nullptr);
  return f;
}

void eval_df(const gsl_vector* x, void* p, gsl_vector* df) { eval_fdf(x, p, nullptr, df); }

struct MinimizerFree {
  void operator()(gsl_multimin_fdfminimizer* m) const { gsl_multimin_fdfminimizer_free(m); }
};
struct VectorFree {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

}  // namespace

BfgsResult bfgs_minimize(const Objective& fn, Eigen::VectorXd x0, const BfgsOptions& opts) {
  // GSL aborts on errors by default; status codes are checked below instead.
  static std::once_flag quiet;
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });

  const auto n = static_cast<std::size_t>(x0.size());
  BfgsResult r;
  Context ctx{&fn, Eigen::VectorXd::Zero(x0.size()), {}};
  r.x = x0;
  r.f = fn(r.x, ctx.g);
  ctx.last_x = r.x;
  ctx.last_f = r.f;
  ctx.evaluations = 1;
  r.trace.push_back(r.f);
  auto finish = [&](bool converged, const char* reason) {
    r.converged = converged;
    r.reason = reason;
    r.evaluations = ctx.evaluations;
    return r;
  };
  if (!std::isfinite(r.f)) return finish(false, "non-finite objective at start");
  if (r.f < opts.f_tol) return finish(true, "objective below tolerance");
  if (ctx.g.lpNorm<Eigen::Infinity>() < opts.grad_tol) return finish(true, "gradient below tolerance");

  gsl_multimin_function_fdf func{eval_f, eval_df, eval_fdf, n, &ctx};
  std::unique_ptr<gsl_vector, VectorFree> start(gsl_vector_alloc(n));
  Eigen::Map<Eigen::VectorXd>(gsl_vector_ptr(start.get(), 0), x0.size()) = x0;
  std::unique_ptr<gsl_multimin_fdfminimizer, MinimizerFree> m(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n));
  gsl_multimin_fdfminimizer_set(m.get(), &func, start.get(), opts.step_size, opts.line_tol);

  int stalls = 0;
  while (r.iterations < opts.max_iter) {
    const double f_old = r.f;
    const int status = gsl_multimin_fdfminimizer_iterate(m.get());
    ++r.iterations;
    const double f_new = gsl_multimin_fdfminimizer_minimum(m.get());
    if (std::isfinite(f_new) && f_new <= f_old) {
      r.f = f_new;
      r.x = view(gsl_multimin_fdfminimizer_x(m.get()));
      r.trace.push_back(r.f);
    }
    if (status == GSL_ENOPROG) return finish(true, "no further progress");
    if (status != GSL_SUCCESS) return finish(false, gsl_strerror(status));
    if (r.f < opts.f_tol) return finish(true, "objective below tolerance");
    if (view(gsl_multimin_fdfminimizer_gradient(m.get())).lpNorm<Eigen::Infinity>() < opts.grad_tol)
      return finish(true, "gradient below tolerance");
    if (f_old - r.f <= opts.stall_tol * std::max(1.0, std::abs(f_old))) {
      if (++stalls >= 5) return finish(true, "objective stalled");
    } else {
      stalls = 0;
    }
  }
  return finish(false, "iteration limit");
}

}  // namespace zenoforge
