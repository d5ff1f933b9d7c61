#include "powquad/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <utility>

#include "powquad/action.hpp"
#include "powquad/errors.hpp"
#include "powquad/gauss_jacobi.hpp"
#include "powquad/matrix_market.hpp"
#include "powquad/oracles.hpp"
#include "powquad/synth.hpp"

namespace powquad {

namespace {

bool needs_quoting(const std::string& cell) {
  return cell.find_first_of(",\"\r\n") != std::string::npos;
}

bool nearly_symmetric(const DenseMatrix& a) {
  const int n = a.dim();
  double off = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = a(i, j) - a(j, i);
      off += d * d;
    }
  const double fro = a.frobenius_norm();
  return std::sqrt(off) <= 1e-12 * (fro > 0.0 ? fro : 1.0);
}

// Norm estimates of c*A derived from those of A without re-estimating.
NormEstimates scaled_norms(const NormEstimates& norms, double c) {
  NormEstimates out = norms;
  out.norm_a = c * norms.norm_a;
  out.norm_ainv = norms.norm_ainv / c;
  out.spectral_radius_lb = c * norms.spectral_radius_lb;
  return out;
}

std::string synth_label(const SynthSpec& spec) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s_n%d_kappa%.3g_seed%llu", spec.family.c_str(), spec.n,
                spec.kappa, static_cast<unsigned long long>(spec.seed));
  return buf;
}

std::string path_label(const std::string& path) {
  const size_t slash = path.find_last_of("/\\");
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

Vector random_unit_vector(int n, uint64_t seed) {
  RandomStream rng(seed);
  Vector b(n);
  for (double& v : b) v = rng.next_symmetric();
  const double nb = norm2(b);
  scale_inplace(b, 1.0 / nb);
  return b;
}

void validate_error_cell(double err, double ceiling, const std::string& context) {
  if (!std::isfinite(err) || !(err > 0.0) || err > ceiling) {
    std::ostringstream os;
    os << "error column failed validation in " << context << ": value " << err
       << " outside (0, " << ceiling << "]";
    throw ConvergenceFailure(os.str());
  }
}

}  // namespace

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    if (needs_quoting(cells[i])) {
      row += '"';
      for (char ch : cells[i]) {
        row += ch;
        if (ch == '"') row += '"';
      }
      row += '"';
    } else {
      row += cells[i];
    }
  }
  row += "\r\n";
  return row;
}

std::string csv_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

ComputeResult compute_power(const DenseMatrix& a, const ComputeOptions& opts) {
  if (!(opts.alpha > 0.0) || !(opts.alpha < 1.0)) throw AlphaOutOfRange(opts.alpha);

  ComputeResult result;
  result.norms = estimate_norms(a, opts.norm_rel_tol);

  DenseMatrix working = a;
  if (opts.scale) {
    result.scale_factor = std::sqrt(result.norms.norm_ainv / result.norms.norm_a);
    working *= result.scale_factor;
  }
  const NormEstimates wnorms = scaled_norms(result.norms, result.scale_factor);

  const ToleranceSpec tol =
      opts.relative
          ? ToleranceSpec::relative(opts.eps, opts.norm_rel_tol, wnorms.spectral_radius_lb,
                                    opts.alpha)
          : ToleranceSpec::absolute(opts.eps, opts.norm_rel_tol);

  switch (opts.method) {
    case Method::de: {
      const TruncationInterval iv = get_interval(wnorms, opts.alpha, tol.eps_effective);
      result.report = de_fixed(working, opts.alpha, iv, opts.m);
      break;
    }
    case Method::de_adaptive:
      result.report = de_adaptive(working, opts.alpha, tol, wnorms, opts.m0, opts.max_evals);
      break;
    case Method::gj1:
      result.report = gj1(working, opts.alpha, opts.m);
      break;
    case Method::gj2:
      result.report = gj2(working, opts.alpha, opts.m);
      break;
    case Method::gj2pre:
      result.report = gj2_preconditioned(working, opts.alpha, opts.m, wnorms).report;
      break;
  }

  result.value = result.report.value;
  if (opts.scale) result.value *= std::pow(result.scale_factor, -opts.alpha);
  return result;
}

DenseMatrix make_synthetic(const SynthSpec& spec) {
  if (spec.family == "spd") return gen_spd(spec.n, spec.kappa, spec.seed);
  if (spec.family == "nonsymmetric") return gen_nonsymmetric(spec.n, spec.kappa, spec.seed);
  if (spec.family == "laplacian") return gen_laplacian_1d(spec.n).to_dense();
  throw ParameterOutOfRange("unknown synthetic family '" + spec.family + "'");
}

void run_convergence(const ConvergenceConfig& config, std::ostream& out) {
  const bool from_file = !config.matrix_path.empty();
  const DenseMatrix a = from_file ? read_matrix_market_dense(config.matrix_path)
                                  : make_synthetic(config.matrix);
  const NormEstimates norms = estimate_norms(a, config.norm_rel_tol);
  const bool symmetric = nearly_symmetric(a);
  const std::string label =
      from_file ? path_label(config.matrix_path) : synth_label(config.matrix);

  std::string body;
  for (double alpha : config.alphas) {
    const DenseMatrix oracle =
        symmetric ? hpd_power(a, alpha) : reference_power(a, alpha, 1e-12);
    const double oracle_norm = two_norm_estimate(oracle);
    const TruncationInterval iv = get_interval(norms, alpha, config.eps);

    for (Method method : config.methods) {
      for (int m : config.m_grid) {
        QuadratureReport rep;
        switch (method) {
          case Method::de:
            rep = de_fixed(a, alpha, iv, m);
            break;
          case Method::gj1:
            rep = gj1(a, alpha, m);
            break;
          case Method::gj2:
            rep = gj2(a, alpha, m);
            break;
          case Method::gj2pre:
            rep = gj2_preconditioned(a, alpha, m, norms).report;
            break;
          case Method::de_adaptive:
            throw ParameterOutOfRange(
                "convergence histories use fixed-order methods only");
        }
        const double err = two_norm_estimate(rep.value - oracle) / oracle_norm;
        validate_error_cell(err, 1e6, "run_convergence");
        body += csv_row({label, method_name(method), csv_number(alpha), std::to_string(m),
                         csv_number(err), std::to_string(rep.evals)});
      }
    }
  }
  out << csv_row({"matrix", "method", "alpha", "m", "rel_error", "evals"});
  out << body;
}

void run_speed_table(const SpeedConfig& config, std::ostream& out) {
  out << csv_row({"kappa", "alpha", "phi_de", "phi_gj1", "phi_gj2", "recommended"});
  for (double alpha : config.alphas) {
    double crossover = 0.0;
    for (double kappa : config.kappas) {
      const SpeedRow row = recommend_method(kappa, alpha);
      std::string gj1_cell;
      if (row.phi_gj1) gj1_cell = csv_number(*row.phi_gj1);
      out << csv_row({csv_number(kappa), csv_number(alpha), csv_number(row.phi_de), gj1_cell,
                      csv_number(row.phi_gj2), method_name(row.recommended)});
      if (crossover == 0.0 && row.phi_de > row.phi_gj2) crossover = kappa;
    }
    out << csv_row({crossover > 0.0 ? csv_number(crossover) : "none", csv_number(alpha), "",
                    "", "", "crossover"});
  }
}

void run_action_bench(const ActionBenchConfig& config, std::ostream& out) {
  const bool from_file = !config.matrix_path.empty();
  const bool sparse = !from_file && config.matrix.family == "laplacian";
  const std::string label =
      from_file ? path_label(config.matrix_path) : synth_label(config.matrix);

  // Dense form for the oracle and norms; the sparse path solves through CG.
  const DenseMatrix dense = from_file ? read_matrix_market_dense(config.matrix_path)
                                      : make_synthetic(config.matrix);
  const NormEstimates norms = estimate_norms(dense, config.norm_rel_tol);
  const bool symmetric = nearly_symmetric(dense);
  const Vector b = random_unit_vector(dense.dim(), config.rhs_seed);

  auto make_operator = [&]() -> std::unique_ptr<ShiftedLinearOperator> {
    if (sparse)
      return std::make_unique<SparseCgOperator>(gen_laplacian_1d(config.matrix.n), 1e-12);
    return std::make_unique<DenseLuOperator>(dense);
  };

  out << csv_row(
      {"matrix", "alpha", "method", "evals", "est_or_error", "budget_flag", "wall_time_s"});
  for (double alpha : config.alphas) {
    const ToleranceSpec tol = ToleranceSpec::absolute(config.eps, config.norm_rel_tol);
    Vector x_ref;
    if (!sparse) {
      const DenseMatrix oracle =
          symmetric ? hpd_power(dense, alpha) : reference_power(dense, alpha, 1e-12);
      x_ref = oracle * b;
    }

    struct Run {
      Method method;
      bool enabled;
    };
    const bool unit_fraction = std::abs(1.0 / alpha - std::round(1.0 / alpha)) <= 1e-9;
    const Run runs[] = {{Method::de_adaptive, true},
                        {Method::gj1, unit_fraction},
                        {Method::gj2, true}};

    for (const Run& run : runs) {
      if (!run.enabled) continue;
      auto op = make_operator();
      ActionReport rep;
      const auto start = std::chrono::steady_clock::now();
      try {
        if (run.method == Method::de_adaptive) {
          rep = de_action_adaptive(*op, b, alpha, tol, norms, config.m0, 40,
                                   config.max_evals);
        } else {
          rep = gj_action_doubling(*op, b, alpha, tol,
                                   run.method == Method::gj1 ? GjKind::one : GjKind::two,
                                   config.m0, 16, config.max_evals);
        }
      } catch (const EvalBudgetExceeded& e) {
        rep = *e.action_report;
      }
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

      // Dense rows report the true error against the reference oracle; sparse
      // rows report the driver's own stopping estimate.
      double err;
      if (sparse) {
        err = rep.est_error.value_or(0.0);
      } else {
        Vector diff = rep.value;
        axpy(-1.0, x_ref, diff);
        err = norm2(diff);
      }
      std::string flag;
      if (rep.budget_exhausted) {
        flag = "exceeds " + std::to_string(config.max_evals);
      } else {
        validate_error_cell(err, 10.0 * config.eps, "run_action_bench");
      }
      char tbuf[32];
      std::snprintf(tbuf, sizeof tbuf, "%.3e", elapsed.count());
      out << csv_row({label, csv_number(alpha), method_name(run.method),
                      std::to_string(rep.evals), csv_number(err), flag, tbuf});
    }
  }
}

}  // namespace powquad
