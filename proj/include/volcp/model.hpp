#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "volcp/errors.hpp"

namespace volcp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Closed axis-aligned parameter box. The theory works on an open bounded
// domain; optimizers need a compact box, and keeping the true parameter in
// the interior is the caller's responsibility.
struct ThetaBox {
  VectorXd lo;
  VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const VectorXd& theta, double tol = 0.0) const;
  VectorXd clamp(const VectorXd& theta) const;
  void validate() const;  // nonempty, strictly positive widths
};

// Diffusion-coefficient specification sigma(x,theta) with dimensions and
// parameter box. S(x,theta) = sigma sigma^T must stay uniformly elliptic on
// the model's state set; evaluation rejects points where it does not.
struct VolatilityModel {
  std::string name;
  int d = 1;   // state dimension of Y
  int r = 1;   // driving-noise dimension
  int d0 = 1;  // parameter dimension
  int d1 = 1;  // covariate dimension
  ThetaBox theta_box;

  std::function<MatrixXd(const VectorXd& x, const VectorXd& theta)> sigma;
  // Optional analytic derivative family (d0 matrices of size d x r).
  // When absent, derivatives fall back to central finite differences.
  std::function<std::vector<MatrixXd>(const VectorXd& x, const VectorXd& theta)> dsigma_dtheta;
  // Optional drift b(t, y); the estimator treats it as an unknown nuisance
  // and it defaults to zero.
  std::function<VectorXd(double t, const VectorXd& y)> drift;
  // Fast path for fully scalar models (d = r = d0 = d1 = 1).
  std::function<double(double x, double theta)> sigma_scalar;

  // Paths are reflected at this floor during simulation (square-root
  // diffusions). NaN disables reflection.
  double reflect_floor = std::numeric_limits<double>::quiet_NaN();

  bool scalar() const {
    return d == 1 && r == 1 && d0 == 1 && d1 == 1 && static_cast<bool>(sigma_scalar);
  }
  void validate() const;
};

namespace tol {
// Relative positive-definiteness floor: smallest eigenvalue of S must exceed
// kEpsPdRel * max diagonal entry, so a near-singular S fails loudly instead
// of feeding huge log-det terms downstream.
inline constexpr double kEpsPdRel = 1e-12;
// Central finite-difference step is kFdStep * max(1, |theta_i|).
inline constexpr double kFdStep = 1e-5;
inline constexpr double kPsdTol = 1e-9;
}  // namespace tol

// S(x,theta) = sigma(x,theta) sigma(x,theta)^T, returned symmetric and
// checked positive definite. Throws OutOfBoxError / NonPositiveDefiniteError.
MatrixXd local_covariance(const VolatilityModel& model, const VectorXd& x, const VectorXd& theta);

// Kullback-type divergence
//   Q(x, a, b) = Tr(S(x,a)^{-1} S(x,b) - I_d) - log det(S(x,a)^{-1} S(x,b)),
// nonnegative, zero exactly when the two covariances coincide.
double covariance_divergence(const VolatilityModel& model, const VectorXd& x,
                             const VectorXd& theta_a, const VectorXd& theta_b);

// d0 x d0 Fisher-type information
//   Xi_{ij}(x,theta) = Tr(d_i S S^{-1} d_j S S^{-1}),
// the Hessian of theta -> Q(x, theta0, theta) at theta0 = theta. Symmetric
// positive semidefinite up to numerical tolerance.
MatrixXd information_matrix(const VolatilityModel& model, const VectorXd& x, const VectorXd& theta);

// Derivatives of S in theta; analytic route when the model provides
// dsigma_dtheta and use_analytic is true, otherwise central differences.
std::vector<MatrixXd> covariance_derivatives(const VolatilityModel& model, const VectorXd& x,
                                             const VectorXd& theta, bool use_analytic);

// log det of an SPD matrix via Cholesky.
double log_det_spd(const MatrixXd& s);

// Built-in experimental models. model1: sigma(x,theta) = (1+x^2)^theta on
// the whole line; cir: sigma(x,theta) = sqrt(theta x) on x > 0.
VolatilityModel make_model1(double box_lo = 0.01, double box_hi = 1.0);
VolatilityModel make_cir(double box_lo = 0.01, double box_hi = 1.5);
VolatilityModel make_builtin(const std::string& name);

}  // namespace volcp
