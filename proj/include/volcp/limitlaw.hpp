#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "volcp/estimate.hpp"

namespace volcp {

// Scaled complementary error function exp(y^2) erfc(y) for y >= 0; keeps
// e^{|x|} times a vanishing normal tail finite in the limit-law formulas.
double erfcx(double y);

// Density of the argmax of W(v) - |v|/2 over a two-sided Wiener process:
//   f(x) = (3/2) e^{|x|}(1 - Phi((3/2) sqrt|x|)) - (1/2)(1 - Phi((1/2) sqrt|x|)).
// Symmetric, f(0) = 1/2 exactly.
double limit_density(double x);

// Matching distribution function, F(x) = g(x) for x > 0 and 1 - g(-x)
// otherwise, with
//   g(x) = 1 + sqrt(x/2pi) e^{-x/8} - (x+5)/2 Phi(-sqrt(x)/2)
//        + (3/2) e^x Phi(-(3/2) sqrt(x)).
double limit_cdf(double x);

struct LimitSample {
  std::vector<double> values;  // draws of the argmin location of the limit field
  double gamma = 0.0;
  double grid_step = 0.0;
  double truncation = 0.0;
  int boundary_hits = 0;
};

// Shrinking-separation (case B) limit: draws of
//   argmax_{v in [-L, L]} ( sqrt(gamma) W(v) - gamma |v| / 2 )
// over a two-sided Gaussian random walk on a grid. By Brownian scaling,
// gamma * draw follows limit_cdf. Non-positive grid_step/truncation select
// the defaults 0.005/gamma and 50/gamma. Throws TruncationTooSmallError when
// more than 0.1% of draws sit on the boundary.
LimitSample sample_case_b(double gamma, double grid_step, double truncation, int count,
                          std::uint64_t seed);

// Per-step quantities of the fixed-separation (case A) limit field at x*:
// quad_pos[z^{x2}] - drift_pos per step rightwards, quad_neg[z^{x2}] +
// drift_pos per step leftwards (the mirrored branch swaps the regimes).
struct CaseAStepTerms {
  MatrixXd quad_pos;  // sigma1^T (S0^{-1} - S1^{-1}) sigma1, r x r
  MatrixXd quad_neg;  // sigma0^T (S1^{-1} - S0^{-1}) sigma0
  double log_det_ratio = 0.0;  // log det(S0^{-1} S1)
};
CaseAStepTerms case_a_step_terms(const VolatilityModel& model, const VectorXd& x_star,
                                 const VectorXd& theta0, const VectorXd& theta1);

// Fixed-separation limit: integer argmin of the two-sided random walk built
// from iid r-dimensional standard normals, v in [-l0, l0]. Smallest-index
// tie-break. Throws DegenerateChangeError when S(x*,theta0) = S(x*,theta1).
LimitSample sample_case_a(const VolatilityModel& model, const VectorXd& x_star,
                          const VectorXd& theta0, const VectorXd& theta1, int l0, int count,
                          std::uint64_t seed);

// Normalizer choice for the studentized statistic. The two differ by a
// model-dependent constant (exactly 2 for model1 at T = 1); both are kept
// and compared empirically rather than silently picking one.
enum class GammaConvention {
  kPaper,    // (log(1 + X_{t*}^2))^2, scalar covariate only
  kTheorem,  // (2T)^{-1} Xi(X_{t*}, theta_check0)[eta^{x2}]
};

// Z = n vartheta^2 (t_check - t_star) * Gamma(X_{t*}); requires the true
// change point and separation, i.e. a simulation context.
double studentize(const TwoStageFit& fit, const ObservedSeries& series,
                  const VolatilityModel& model, double t_star_true, double vartheta,
                  GammaConvention convention);

// One-sample Kolmogorov-Smirnov distance between the values and a CDF.
double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf);

}  // namespace volcp
