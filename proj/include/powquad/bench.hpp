#ifndef POWQUAD_BENCH_HPP
#define POWQUAD_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "powquad/convergence.hpp"
#include "powquad/de.hpp"
#include "powquad/linalg.hpp"
#include "powquad/matrix.hpp"

namespace powquad {

// Experiment runners behind the CLI: they produce RFC-4180 CSV (CRLF line
// endings, numeric cells printed with %.16e) and validate every error column
// before emitting a byte. Identical configuration and seed reproduce
// identical bytes, except for wall-time columns.

/// Formats one CSV record (quoting any cell that needs it) with the CRLF
/// terminator the RFC prescribes.
std::string csv_row(const std::vector<std::string>& cells);

/// %.16e rendering used for every numeric CSV cell.
std::string csv_number(double v);

/// End-to-end A^alpha driver shared by the CLI paths: optionally rescales the
/// matrix so its extreme singular values multiply to 1, maps the user
/// tolerance, runs the chosen method, and undoes the scaling on the result.
struct ComputeOptions {
  Method method = Method::de_adaptive;
  double alpha = 0.5;
  double eps = 1e-10;
  bool relative = false;
  double norm_rel_tol = 1e-3;
  int m = 64;             // fixed-order methods
  int m0 = 8;             // adaptive seed mesh
  long max_evals = 1000;  // adaptive evaluation budget
  bool scale = true;      // balance singular values before quadrature
};

struct ComputeResult {
  DenseMatrix value;
  QuadratureReport report;   // report.value holds the scaled-system result
  NormEstimates norms;       // estimates of the input matrix
  double scale_factor = 1.0; // c with A_scaled = c*A
};
ComputeResult compute_power(const DenseMatrix& a, const ComputeOptions& opts);

/// Synthetic matrix request: spd | nonsymmetric | laplacian.
struct SynthSpec {
  std::string family = "spd";
  int n = 100;
  double kappa = 100.0;
  uint64_t seed = 1;
};
DenseMatrix make_synthetic(const SynthSpec& spec);

/// Convergence-history experiment: fixed-order error-vs-m curves against the
/// reference oracle. Columns: matrix,method,alpha,m,rel_error,evals.
struct ConvergenceConfig {
  SynthSpec matrix;
  std::string matrix_path;  // when nonempty, load this file instead of synthesizing
  std::vector<double> alphas = {0.5};
  std::vector<int> m_grid = {8, 16, 32, 64, 96, 128};
  std::vector<Method> methods = {Method::de, Method::gj1, Method::gj2, Method::gj2pre};
  double norm_rel_tol = 1e-3;
  double eps = 1e-12;  // interval-selection tolerance for the DE rows
};
void run_convergence(const ConvergenceConfig& config, std::ostream& out);

/// Rate table over a (kappa, alpha) grid with the recommended method per
/// row and a per-alpha crossover summary appended as comment-free rows.
/// Columns: kappa,alpha,phi_de,phi_gj1,phi_gj2,recommended.
struct SpeedConfig {
  std::vector<double> kappas = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10};
  std::vector<double> alphas = {0.5};
};
void run_speed_table(const SpeedConfig& config, std::ostream& out);

/// A^alpha*b benchmark comparing the adaptive and doubling action drivers.
/// Columns: matrix,alpha,method,evals,est_or_error,budget_flag,wall_time_s.
struct ActionBenchConfig {
  SynthSpec matrix;
  std::string matrix_path;  // when nonempty, load this file instead of synthesizing
  std::vector<double> alphas = {0.2, 0.8};
  double eps = 1e-6;
  int m0 = 8;
  long max_evals = 1000;
  double norm_rel_tol = 1e-3;
  uint64_t rhs_seed = 7;
};
void run_action_bench(const ActionBenchConfig& config, std::ostream& out);

}  // namespace powquad

#endif  // POWQUAD_BENCH_HPP
