#pragma once

#include <cstdint>
#include <string>

#include "volcp/model.hpp"

namespace volcp {

// Equally spaced samples (t_i, Y_i, X_i), i = 0..n, over [0, T], with
// t_i = i T / n. x equals y whenever the covariate is the state itself.
struct ObservedSeries {
  double T = 1.0;
  int n = 0;
  VectorXd times;  // n+1
  MatrixXd y;      // (n+1) x d
  MatrixXd x;      // (n+1) x d1

  double h() const { return T / static_cast<double>(n); }
  void validate() const;
};

// Two-regime simulation setup: the diffusion parameter switches from
// theta0_star to theta1_star at t_star.
struct Scenario {
  std::string model = "model1";
  VectorXd theta0_star;
  VectorXd theta1_star;
  double t_star = 0.6;
  double T = 1.0;
  int n = 1000;
  int substeps = 10;  // Euler refinement factor per sampling interval
  std::uint64_t seed = 0;
  VectorXd x0;
  VectorXd box_lo, box_hi;  // optional overrides of the model's default box

  double vartheta() const { return (theta1_star - theta0_star).norm(); }
  void validate() const;
};

// Built-in model named by the scenario, with box overrides applied.
VolatilityModel scenario_model(const Scenario& scenario);

// Euler-Maruyama on the fine grid of n*substeps steps; a fine step starting
// at time s uses theta0_star when s < t_star and theta1_star otherwise.
// Every substeps-th point is returned. Identical (scenario, stream) give
// bit-identical output. The covariate is the state itself.
ObservedSeries simulate_path(const VolatilityModel& model, const Scenario& scenario,
                             std::uint64_t stream = 0);
ObservedSeries simulate_path(const Scenario& scenario, std::uint64_t stream = 0);

// Same scheme driven by caller-supplied Brownian increments, one row per
// fine step (n*substeps rows, r columns). Used for refinement studies.
ObservedSeries simulate_path_with_noise(const VolatilityModel& model, const Scenario& scenario,
                                        const MatrixXd& dw);

}  // namespace volcp
