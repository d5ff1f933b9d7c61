// Command-line front end: matrix fractional powers, actions on vectors,
// truncation-interval inspection, and the CSV experiment runners.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "powquad/action.hpp"
#include "powquad/bench.hpp"
#include "powquad/convergence.hpp"
#include "powquad/de.hpp"
#include "powquad/errors.hpp"
#include "powquad/matrix_market.hpp"
#include "powquad/synth.hpp"

namespace {

using namespace powquad;

struct MatrixOpts {
  std::string path;
  std::string family;
  int n = 100;
  double kappa = 100.0;
  uint64_t seed = 1;
};

void add_matrix_options(CLI::App* cmd, MatrixOpts& opts) {
  auto* file = cmd->add_option("--matrix", opts.path, "Matrix Market coordinate file");
  auto* synth = cmd->add_option("--synth", opts.family,
                                "synthetic matrix family: spd | nonsymmetric | laplacian");
  file->excludes(synth);
  cmd->add_option("--n", opts.n, "synthetic matrix dimension")->default_val(100);
  cmd->add_option("--kappa", opts.kappa, "synthetic target condition number")
      ->default_val(100.0);
  cmd->add_option("--seed", opts.seed, "synthetic generator seed")->default_val(1);
}

DenseMatrix load_dense(const MatrixOpts& opts) {
  if (!opts.path.empty()) return read_matrix_market_dense(opts.path);
  if (opts.family.empty())
    throw ParameterOutOfRange("either --matrix or --synth must be given");
  SynthSpec spec;
  spec.family = opts.family;
  spec.n = opts.n;
  spec.kappa = opts.kappa;
  spec.seed = opts.seed;
  return make_synthetic(spec);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterOutOfRange("cannot open output file '" + path + "'");
  return out;
}

// Writes either to --out or to stdout when no path was given.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
  } else {
    auto out = open_out(path);
    fn(out);
  }
}

int cmd_powm(const MatrixOpts& mopts, double alpha, double eps, bool relative,
             const std::string& method, int m, int m0, double norm_tol, long budget,
             bool no_scale, const std::string& out_path) {
  const DenseMatrix a = load_dense(mopts);

  DenseMatrix value(a.dim());
  if (alpha > 0.0 && alpha < 1.0) {
    ComputeOptions copts;
    copts.method = parse_method(method);
    copts.alpha = alpha;
    copts.eps = eps;
    copts.relative = relative;
    copts.norm_rel_tol = norm_tol;
    copts.m = m;
    copts.m0 = m0;
    copts.max_evals = budget;
    copts.scale = !no_scale;
    ComputeResult result = compute_power(a, copts);
    value = result.value;
    std::fprintf(stderr, "powm: method=%s m=%d evals=%lld est_error=%.3e\n", method.c_str(),
                 result.report.m, static_cast<long long>(result.report.evals),
                 result.report.est_error.value_or(0.0));
  } else {
    // General real exponents run through the adaptive engine after the
    // integer part is split off; scaling still applies underneath.
    const NormEstimates norms = estimate_norms(a, norm_tol);
    const double c = no_scale ? 1.0 : std::sqrt(norms.norm_ainv / norms.norm_a);
    DenseMatrix scaled = a;
    scaled *= c;
    NormEstimates snorms = norms;
    snorms.norm_a *= c;
    snorms.norm_ainv /= c;
    snorms.spectral_radius_lb *= c;
    const ToleranceSpec tol = relative
                                  ? ToleranceSpec::relative(eps, norm_tol,
                                                            snorms.spectral_radius_lb, alpha)
                                  : ToleranceSpec::absolute(eps, norm_tol);
    value = real_power(scaled, alpha, tol, snorms, m0, budget);
    value *= std::pow(c, -alpha);
  }

  with_output(out_path, [&](std::ostream& out) { write_matrix_market_array(out, value); });
  return 0;
}

int cmd_action(const MatrixOpts& mopts, const std::string& rhs_path, uint64_t rhs_seed,
               double alpha, double eps, bool relative, const std::string& method, int m0,
               double norm_tol, long budget, const std::string& solver,
               const std::string& out_path) {
  const DenseMatrix a = load_dense(mopts);
  const NormEstimates norms = estimate_norms(a, norm_tol);

  Vector b;
  if (!rhs_path.empty()) {
    b = read_matrix_market_vector(rhs_path);
    if (static_cast<int>(b.size()) != a.dim())
      throw ParameterOutOfRange("right-hand side length does not match the matrix");
  } else {
    RandomStream rng(rhs_seed);
    b.resize(a.dim());
    for (double& v : b) v = rng.next_symmetric();
    scale_inplace(b, 1.0 / norm2(b));
  }

  std::unique_ptr<ShiftedLinearOperator> op;
  if (solver == "cg") {
    if (!mopts.path.empty()) {
      op = std::make_unique<SparseCgOperator>(read_matrix_market_csr(mopts.path));
    } else if (mopts.family == "laplacian") {
      op = std::make_unique<SparseCgOperator>(gen_laplacian_1d(mopts.n));
    } else {
      throw ParameterOutOfRange("--solver cg needs a file matrix or the laplacian family");
    }
  } else if (solver == "lu") {
    op = std::make_unique<DenseLuOperator>(a);
  } else {
    throw ParameterOutOfRange("unknown solver '" + solver + "' (expected lu or cg)");
  }

  const ToleranceSpec tol =
      relative ? ToleranceSpec::relative(eps, norm_tol, norms.spectral_radius_lb, alpha)
               : ToleranceSpec::absolute(eps, norm_tol);

  ActionReport rep;
  const Method parsed = parse_method(method);
  if (parsed == Method::de_adaptive || parsed == Method::de) {
    rep = de_action_adaptive(*op, b, alpha, tol, norms, m0, 40, budget);
  } else if (parsed == Method::gj1 || parsed == Method::gj2) {
    rep = gj_action_doubling(*op, b, alpha, tol,
                             parsed == Method::gj1 ? GjKind::one : GjKind::two, m0, 16,
                             budget);
  } else {
    throw ParameterOutOfRange("action supports methods de-adaptive, gj1, gj2");
  }

  std::fprintf(stderr, "action: method=%s m=%d evals=%lld est_error=%.3e\n", method.c_str(),
               rep.m, static_cast<long long>(rep.evals), rep.est_error.value_or(0.0));
  with_output(out_path, [&](std::ostream& out) { write_matrix_market_vector(out, rep.value); });
  return 0;
}

int cmd_interval(const MatrixOpts& mopts, double alpha, double eps, double norm_a,
                 double norm_ainv, double norm_tol) {
  NormEstimates norms;
  if (norm_a > 0.0 && norm_ainv > 0.0) {
    norms.norm_a = norm_a;
    norms.norm_ainv = norm_ainv;
    norms.rel_tol = norm_tol;
    norms.spectral_radius_lb = 1.0 / norm_ainv;
  } else {
    norms = estimate_norms(load_dense(mopts), norm_tol);
  }
  const TruncationInterval iv = get_interval(norms, alpha, eps);
  const auto branch = [](EndpointBranch b) {
    return b == EndpointBranch::tolerance ? "tolerance" : "norm";
  };
  std::printf("l = %.16e\n", iv.l);
  std::printf("r = %.16e\n", iv.r);
  std::printf("a = %.16e\n", iv.a);
  std::printf("b = %.16e\n", iv.b);
  std::printf("a_branch = %s\n", branch(iv.a_branch));
  std::printf("b_branch = %s\n", branch(iv.b_branch));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix fractional powers by double-exponential and Gauss-Jacobi quadrature"};
  app.require_subcommand(1);

  // ---- powm ----------------------------------------------------------------
  MatrixOpts powm_matrix;
  double powm_alpha = 0.5, powm_eps = 1e-10, powm_norm_tol = 1e-3;
  bool powm_rel = false, powm_no_scale = false;
  std::string powm_method = "de-adaptive", powm_out;
  int powm_m = 64, powm_m0 = 8;
  long powm_budget = 1000;
  auto* powm = app.add_subcommand("powm", "compute A^alpha and write it in array format");
  add_matrix_options(powm, powm_matrix);
  powm->add_option("--alpha", powm_alpha, "exponent")->required();
  powm->add_option("--eps", powm_eps, "tolerance")->default_val(1e-10);
  powm->add_flag("--rel", powm_rel, "interpret --eps as a relative tolerance");
  powm->add_option("--method", powm_method, "de | de-adaptive | gj1 | gj2 | gj2pre")
      ->default_val("de-adaptive");
  powm->add_option("--m", powm_m, "node count for fixed-order methods")->default_val(64);
  powm->add_option("--m0", powm_m0, "adaptive seed mesh size")->default_val(8);
  powm->add_option("--norm-tol", powm_norm_tol, "norm-estimate relative tolerance")
      ->default_val(1e-3);
  powm->add_option("--budget", powm_budget, "adaptive evaluation budget")->default_val(1000);
  powm->add_flag("--no-scale", powm_no_scale, "skip singular-value balancing");
  powm->add_option("--out", powm_out, "output path (stdout when omitted)");

  // ---- action --------------------------------------------------------------
  MatrixOpts action_matrix;
  std::string action_rhs, action_method = "de-adaptive", action_solver = "lu", action_out;
  uint64_t action_rhs_seed = 7;
  double action_alpha = 0.5, action_eps = 1e-6, action_norm_tol = 1e-3;
  bool action_rel = false;
  int action_m0 = 8;
  long action_budget = 1000000;
  auto* action = app.add_subcommand("action", "compute A^alpha * b and write the vector");
  add_matrix_options(action, action_matrix);
  action->add_option("--rhs", action_rhs, "right-hand-side vector file (array format)");
  action->add_option("--rhs-seed", action_rhs_seed, "seed for a random unit right-hand side")
      ->default_val(7);
  action->add_option("--alpha", action_alpha, "exponent")->required();
  action->add_option("--eps", action_eps, "tolerance")->default_val(1e-6);
  action->add_flag("--rel", action_rel, "interpret --eps as a relative tolerance");
  action->add_option("--method", action_method, "de-adaptive | gj1 | gj2")
      ->default_val("de-adaptive");
  action->add_option("--m0", action_m0, "starting node count")->default_val(8);
  action->add_option("--norm-tol", action_norm_tol, "norm-estimate relative tolerance")
      ->default_val(1e-3);
  action->add_option("--budget", action_budget, "solve budget")->default_val(1000000);
  action->add_option("--solver", action_solver, "shifted-system solver: lu | cg")
      ->default_val("lu");
  action->add_option("--out", action_out, "output path (stdout when omitted)");

  // ---- interval ------------------------------------------------------------
  MatrixOpts interval_matrix;
  double interval_alpha = 0.5, interval_eps = 1e-10, interval_norm_tol = 1e-3;
  double interval_norm_a = 0.0, interval_norm_ainv = 0.0;
  auto* interval =
      app.add_subcommand("interval", "print the truncated integration interval");
  add_matrix_options(interval, interval_matrix);
  interval->add_option("--alpha", interval_alpha, "exponent")->required();
  interval->add_option("--eps", interval_eps, "tolerance")->default_val(1e-10);
  interval->add_option("--norm-a", interval_norm_a, "explicit ||A|| estimate");
  interval->add_option("--norm-ainv", interval_norm_ainv, "explicit ||A^-1|| estimate");
  interval->add_option("--norm-tol", interval_norm_tol, "norm-estimate relative tolerance")
      ->default_val(1e-3);

  // ---- convergence ---------------------------------------------------------
  MatrixOpts conv_matrix;
  std::vector<double> conv_alphas;
  std::vector<int> conv_m_grid;
  std::vector<std::string> conv_methods;
  double conv_eps = 1e-12, conv_norm_tol = 1e-3;
  std::string conv_out;
  auto* conv = app.add_subcommand("convergence", "error-vs-m table against the oracle");
  add_matrix_options(conv, conv_matrix);
  conv->add_option("--alpha", conv_alphas, "exponents (repeatable)");
  conv->add_option("--m", conv_m_grid, "node counts (repeatable, ascending)");
  conv->add_option("--method", conv_methods, "methods (repeatable): de, gj1, gj2, gj2pre");
  conv->add_option("--eps", conv_eps, "interval-selection tolerance for DE rows")
      ->default_val(1e-12);
  conv->add_option("--norm-tol", conv_norm_tol, "norm-estimate relative tolerance")
      ->default_val(1e-3);
  conv->add_option("--out", conv_out, "output CSV path (stdout when omitted)");

  // ---- speed ---------------------------------------------------------------
  std::vector<double> speed_alphas, speed_kappas;
  std::string speed_out;
  auto* speed = app.add_subcommand("speed", "convergence-rate table over a kappa grid");
  speed->add_option("--alpha", speed_alphas, "exponents (repeatable)");
  speed->add_option("--kappa", speed_kappas, "condition numbers (repeatable)");
  speed->add_option("--out", speed_out, "output CSV path (stdout when omitted)");

  // ---- bench ---------------------------------------------------------------
  MatrixOpts bench_matrix;
  std::vector<double> bench_alphas;
  double bench_eps = 1e-6, bench_norm_tol = 1e-3;
  int bench_m0 = 8;
  long bench_budget = 1000;
  uint64_t bench_rhs_seed = 7;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "action benchmark with eval counts and timing");
  add_matrix_options(bench, bench_matrix);
  bench->add_option("--alpha", bench_alphas, "exponents (repeatable)");
  bench->add_option("--eps", bench_eps, "tolerance")->default_val(1e-6);
  bench->add_option("--m0", bench_m0, "starting node count")->default_val(8);
  bench->add_option("--budget", bench_budget, "solve budget per run")->default_val(1000);
  bench->add_option("--norm-tol", bench_norm_tol, "norm-estimate relative tolerance")
      ->default_val(1e-3);
  bench->add_option("--rhs-seed", bench_rhs_seed, "right-hand-side seed")->default_val(7);
  bench->add_option("--out", bench_out, "output CSV path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (powm->parsed())
      return cmd_powm(powm_matrix, powm_alpha, powm_eps, powm_rel, powm_method, powm_m,
                      powm_m0, powm_norm_tol, powm_budget, powm_no_scale, powm_out);
    if (action->parsed())
      return cmd_action(action_matrix, action_rhs, action_rhs_seed, action_alpha, action_eps,
                        action_rel, action_method, action_m0, action_norm_tol, action_budget,
                        action_solver, action_out);
    if (interval->parsed())
      return cmd_interval(interval_matrix, interval_alpha, interval_eps, interval_norm_a,
                          interval_norm_ainv, interval_norm_tol);
    if (conv->parsed()) {
      ConvergenceConfig config;
      config.matrix_path = conv_matrix.path;
      config.matrix.family = conv_matrix.family.empty() ? "spd" : conv_matrix.family;
      config.matrix.n = conv_matrix.n;
      config.matrix.kappa = conv_matrix.kappa;
      config.matrix.seed = conv_matrix.seed;
      if (!conv_alphas.empty()) config.alphas = conv_alphas;
      if (!conv_m_grid.empty()) config.m_grid = conv_m_grid;
      if (!conv_methods.empty()) {
        config.methods.clear();
        for (const auto& name : conv_methods) config.methods.push_back(parse_method(name));
      }
      config.eps = conv_eps;
      config.norm_rel_tol = conv_norm_tol;
      with_output(conv_out, [&](std::ostream& out) { run_convergence(config, out); });
      return 0;
    }
    if (speed->parsed()) {
      SpeedConfig config;
      if (!speed_alphas.empty()) config.alphas = speed_alphas;
      if (!speed_kappas.empty()) config.kappas = speed_kappas;
      with_output(speed_out, [&](std::ostream& out) { run_speed_table(config, out); });
      return 0;
    }
    if (bench->parsed()) {
      ActionBenchConfig config;
      config.matrix_path = bench_matrix.path;
      config.matrix.family = bench_matrix.family.empty() ? "spd" : bench_matrix.family;
      config.matrix.n = bench_matrix.n;
      config.matrix.kappa = bench_matrix.kappa;
      config.matrix.seed = bench_matrix.seed;
      if (!bench_alphas.empty()) config.alphas = bench_alphas;
      config.eps = bench_eps;
      config.m0 = bench_m0;
      config.max_evals = bench_budget;
      config.norm_rel_tol = bench_norm_tol;
      config.rhs_seed = bench_rhs_seed;
      with_output(bench_out, [&](std::ostream& out) { run_action_bench(config, out); });
      return 0;
    }
  } catch (const powquad::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
