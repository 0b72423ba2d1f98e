#include "volcp/estimate.hpp"

#include <cmath>

#include "volcp/optimize.hpp"

namespace volcp {

void EstimationConfig::validate() const {
  if (mode == WindowMode::kFixedInterval) {
    if (!(t0 > 0.0) || !(t1 > t0)) throw ValidationError("fixed-interval mode needs 0 < t0 < t1");
    if (!(b_n > 0.0)) throw ValidationError("fixed-interval mode needs an explicit b_n");
  } else if (a_n <= 0.0 && rule_vartheta <= 0.0) {
    throw ValidationError("edge-window mode needs a_n or the (vartheta, delta) rule");
  }
  if (!(contrast_tol > 0.0) || !(theta_tol > 0.0)) throw ValidationError("tolerances must be positive");
}

std::pair<double, double> resolve_windows(const EstimationConfig& config, int n, double T) {
  double a = config.a_n;
  double b = config.b_n;
  if (a <= 0.0 && config.rule_vartheta > 0.0)
    a = 1.0 / (static_cast<double>(n) * std::pow(config.rule_vartheta, config.rule_delta));
  if (b <= 0.0) b = a;
  if (config.mode == EstimationConfig::WindowMode::kEdgeWindow) {
    if (!(a > 0.0 && a < T / 2.0)) throw ValidationError("a_n must satisfy 0 < a_n < T/2");
  }
  if (!(b > 0.0 && b < T / 2.0)) throw ValidationError("b_n must satisfy 0 < b_n < T/2");
  return {a, b};
}

std::pair<int, double> changepoint_argmin(const ContrastProfile& profile) {
  if (profile.values.size() != profile.n + 1 || profile.n < 1)
    throw ValidationError("invalid contrast profile");
  int k = 0;
  double best = profile.values(0);
  for (int i = 1; i <= profile.n; ++i) {
    if (profile.values(i) < best) {
      best = profile.values(i);
      k = i;
    }
  }
  return {k, static_cast<double>(k) * profile.T / profile.n};
}

VectorXd fit_theta_segment(const VolatilityModel& model, const ObservedSeries& series, int i_from,
                           int i_to, const EstimationConfig& config, FitDiagnostics* diag) {
  if (i_from > i_to) throw EmptySegmentError("empty increment range");
  const int len = i_to - i_from + 1;
  const int min_len = std::max(10, 2 * model.d0);
  if (len < min_len)
    throw SegmentTooShortError("segment has " + std::to_string(len) + " increments, needs " +
                               std::to_string(min_len));

  FitDiagnostics local;
  FitDiagnostics& d = diag ? *diag : local;
  VectorXd result(model.d0);
  if (model.d0 == 1) {
    auto f = [&](double th) {
      VectorXd v(1);
      v(0) = th;
      return segment_contrast(model, series, v, i_from, i_to);
    };
    const ScalarMinResult r = golden_section_minimize(
        f, model.theta_box.lo(0), model.theta_box.hi(0), config.theta_tol, config.max_iter,
        config.coarse_grid);
    d.evals = r.evals;
    d.converged = r.converged;
    d.min_value = r.fx;
    if (!r.converged) throw OptimizerFailedError("golden section did not converge");
    result(0) = r.x;
  } else {
    auto f = [&](const VectorXd& th) { return segment_contrast(model, series, th, i_from, i_to); };
    const VectorMinResult r =
        nelder_mead_multistart(f, model.theta_box, config.multistart, config.contrast_tol,
                               config.theta_tol, config.max_iter * 4 * model.d0);
    d.evals = r.evals;
    d.converged = r.converged;
    d.min_value = r.fx;
    if (!r.converged) throw OptimizerFailedError("Nelder-Mead did not converge");
    result = r.x;
  }
  return result;
}

TwoStageFit two_stage_estimate(const VolatilityModel& model, const ObservedSeries& series,
                               const EstimationConfig& config) {
  config.validate();
  series.validate();
  const int n = series.n;
  const double T = series.T;
  const auto [a, b] = resolve_windows(config, n, T);
  const int min_len = std::max(10, 2 * model.d0);

  TwoStageFit fit;
  fit.a_n = a;
  fit.b_n = b;

  // First stage: edge windows [0, a_n] and [T - a_n, T], or the known
  // interval bounds in fixed-interval mode.
  int left_hi, right_lo;
  if (config.mode == EstimationConfig::WindowMode::kFixedInterval) {
    left_hi = grid_floor(config.t0, n, T);
    right_lo = grid_floor(config.t1, n, T) + 1;
  } else {
    left_hi = grid_floor(a, n, T);
    right_lo = grid_floor(T - a, n, T) + 1;
  }
  FitDiagnostics d0, d1;
  fit.theta_hat0 = fit_theta_segment(model, series, 1, left_hi, config, &d0);
  fit.theta_hat1 = fit_theta_segment(model, series, right_lo, n, config, &d1);
  fit.fit_evals[0] = d0.evals;
  fit.fit_evals[1] = d1.evals;
  fit.fit_converged[0] = d0.converged;
  fit.fit_converged[1] = d1.converged;

  const ContrastProfile first = contrast_profile(model, series, fit.theta_hat0, fit.theta_hat1);
  std::tie(fit.k_hat, fit.t_hat) = changepoint_argmin(first);
  fit.phi_first_min = first.values(fit.k_hat);

  // Second stage: refit on [0, t_hat - b_n] and [t_hat + b_n, T].
  const int left2_hi = grid_floor(fit.t_hat - b, n, T);
  const int right2_lo = grid_floor(fit.t_hat + b, n, T) + 1;
  FitDiagnostics d2, d3;
  if (fit.t_hat - b <= 0.0 || left2_hi < min_len) {
    fit.theta_check0 = fit.theta_hat0;
    fit.fallback_left = true;
    d2 = d0;
  } else {
    fit.theta_check0 = fit_theta_segment(model, series, 1, left2_hi, config, &d2);
  }
  if (fit.t_hat + b >= T || n - right2_lo + 1 < min_len) {
    fit.theta_check1 = fit.theta_hat1;
    fit.fallback_right = true;
    d3 = d1;
  } else {
    fit.theta_check1 = fit_theta_segment(model, series, right2_lo, n, config, &d3);
  }
  fit.fit_evals[2] = d2.evals;
  fit.fit_evals[3] = d3.evals;
  fit.fit_converged[2] = d2.converged;
  fit.fit_converged[3] = d3.converged;

  const ContrastProfile second = contrast_profile(model, series, fit.theta_check0, fit.theta_check1);
  std::tie(fit.k_check, fit.t_check) = changepoint_argmin(second);
  fit.phi_second_min = second.values(fit.k_check);
  return fit;
}

}  // namespace volcp
