#pragma once

#include <utility>

#include "volcp/contrast.hpp"

namespace volcp {

// Window configuration for the two-stage pipeline. Either explicit edge
// windows (a_n, with b_n defaulting to a_n), the derivation rule
// a_n = b_n = 1/(n vartheta^delta), or a known change-point interval
// [t0, t1] for the first stage.
struct EstimationConfig {
  enum class WindowMode { kEdgeWindow, kFixedInterval };
  WindowMode mode = WindowMode::kEdgeWindow;

  double a_n = 0.0;  // explicit first-stage edge window (time units)
  double b_n = 0.0;  // explicit second-stage offset; 0 means "same as a_n"
  double rule_vartheta = 0.0;  // when a_n == 0: a_n = b_n = 1/(n vartheta^delta)
  double rule_delta = 3.0;

  double t0 = 0.0, t1 = 0.0;  // fixed-interval mode bounds

  double contrast_tol = 1e-8;
  double theta_tol = 1e-6;
  int max_iter = 200;
  int multistart = 5;  // Nelder-Mead starts for d0 > 1
  int coarse_grid = 17;

  void validate() const;
};

struct FitDiagnostics {
  int evals = 0;
  bool converged = false;
  double min_value = 0.0;
};

// First-stage estimates, change point, refined estimates, refined change
// point, plus the windows and optimizer diagnostics that produced them.
struct TwoStageFit {
  VectorXd theta_hat0, theta_hat1;
  int k_hat = 0;
  double t_hat = 0.0;
  VectorXd theta_check0, theta_check1;
  int k_check = 0;
  double t_check = 0.0;
  double a_n = 0.0, b_n = 0.0;
  double phi_first_min = 0.0;   // contrast at (t_hat; theta_hat)
  double phi_second_min = 0.0;  // contrast at (t_check; theta_check)
  // Second-stage window collapsed onto the boundary; the first-stage window
  // (and hence estimate) was reused on that side.
  bool fallback_left = false, fallback_right = false;
  int fit_evals[4] = {0, 0, 0, 0};
  bool fit_converged[4] = {true, true, true, true};
};

// Smallest grid index attaining the minimum of the profile, and its time.
std::pair<int, double> changepoint_argmin(const ContrastProfile& profile);

// Minimizes the segment contrast over the parameter box: golden section for
// scalar parameters, box-constrained Nelder-Mead with multistart otherwise.
// Requires at least max(10, 2 d0) increments.
VectorXd fit_theta_segment(const VolatilityModel& model, const ObservedSeries& series, int i_from,
                           int i_to, const EstimationConfig& config,
                           FitDiagnostics* diag = nullptr);

// Full pipeline: edge-window (or fixed-interval) first-stage fits, first
// change-point argmin, refined fits on [0, t_hat - b_n] and [t_hat + b_n, T],
// refined change-point argmin. Degenerate refined windows fall back to the
// first-stage window on that side and are flagged.
TwoStageFit two_stage_estimate(const VolatilityModel& model, const ObservedSeries& series,
                               const EstimationConfig& config);

// (a_n, b_n) actually used for a series of n intervals over [0, T].
std::pair<double, double> resolve_windows(const EstimationConfig& config, int n, double T);

}  // namespace volcp
