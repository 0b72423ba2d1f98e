#include "volcp/limitlaw.hpp"

#include <algorithm>
#include <cmath>

#include "volcp/rng.hpp"

namespace volcp {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt1_2 = 0.70710678118654752440;
}  // namespace

double erfcx(double y) {
  if (y < 0.0) throw ValidationError("erfcx expects y >= 0");
  if (y < 15.0) return std::exp(y * y) * std::erfc(y);
  // Asymptotic series 1/(y sqrt(pi)) sum_k (-1)^k (2k-1)!! / (2y^2)^k;
  // at y >= 15 ten terms reach machine precision.
  const double inv2y2 = 1.0 / (2.0 * y * y);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 10; ++k) {
    term *= -static_cast<double>(2 * k - 1) * inv2y2;
    sum += term;
  }
  return sum / (y * std::sqrt(kPi));
}

double limit_density(double x) {
  const double u = std::abs(x);
  const double s = std::sqrt(u);
  // 1 - Phi(c sqrt(u)) = (1/2) e^{-c^2 u / 2} erfcx(c sqrt(u) / sqrt(2)), so
  // both terms share the e^{-u/8} envelope.
  const double a = 0.75 * erfcx(1.5 * s * kSqrt1_2);
  const double b = 0.25 * erfcx(0.5 * s * kSqrt1_2);
  return std::exp(-u / 8.0) * (a - b);
}

namespace {

double cdf_g(double x) {
  // g(x) = 1 + e^{-x/8} [ sqrt(x/2pi) - (x+5)/4 erfcx(sqrt(x)/(2 sqrt 2))
  //                       + 3/4 erfcx(3 sqrt(x)/(2 sqrt 2)) ]
  const double s = std::sqrt(x);
  const double bracket = std::sqrt(x / (2.0 * kPi)) - 0.25 * (x + 5.0) * erfcx(0.5 * s * kSqrt1_2) +
                         0.75 * erfcx(1.5 * s * kSqrt1_2);
  return 1.0 + std::exp(-x / 8.0) * bracket;
}

}  // namespace

double limit_cdf(double x) {
  if (x > 0.0) return cdf_g(x);
  return 1.0 - cdf_g(-x);
}

LimitSample sample_case_b(double gamma, double grid_step, double truncation, int count,
                          std::uint64_t seed) {
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  if (count < 1) throw ValidationError("count must be positive");
  if (grid_step <= 0.0) grid_step = 0.005 / gamma;
  if (truncation <= 0.0) truncation = 50.0 / gamma;
  const long steps = std::lround(truncation / grid_step);
  if (steps < 10) throw ValidationError("truncation/grid_step leaves too few grid points");

  LimitSample out;
  out.gamma = gamma;
  out.grid_step = grid_step;
  out.truncation = truncation;
  out.values.resize(count);

  const double drift = 0.5 * gamma * grid_step;
  const double noise = std::sqrt(gamma * grid_step);
  for (int j = 0; j < count; ++j) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(j));
    double best_val = 0.0;
    double best_v = 0.0;
    // Positive branch first, then an independent negative branch; ties keep
    // the candidate closer to zero (measure-zero events either way).
    for (int side = 0; side < 2; ++side) {
      double w = 0.0;
      for (long k = 1; k <= steps; ++k) {
        w += noise * rng.normal() - drift;
        if (w > best_val) {
          best_val = w;
          best_v = (side == 0 ? 1.0 : -1.0) * static_cast<double>(k) * grid_step;
        }
      }
    }
    out.values[j] = best_v;
    if (std::abs(std::abs(best_v) - truncation) < 0.5 * grid_step) ++out.boundary_hits;
  }
  if (out.boundary_hits > 0.001 * count)
    throw TruncationTooSmallError("argmax hit the truncation boundary in " +
                                  std::to_string(out.boundary_hits) + "/" + std::to_string(count) +
                                  " draws");
  return out;
}

CaseAStepTerms case_a_step_terms(const VolatilityModel& model, const VectorXd& x_star,
                                 const VectorXd& theta0, const VectorXd& theta1) {
  const MatrixXd s0 = local_covariance(model, x_star, theta0);
  const MatrixXd s1 = local_covariance(model, x_star, theta1);
  const double scale = std::max(1.0, std::max(s0.norm(), s1.norm()));
  if ((s0 - s1).norm() <= 1e-12 * scale)
    throw DegenerateChangeError("S(x*,theta0) equals S(x*,theta1)");

  const MatrixXd sig0 = model.sigma(x_star, theta0);
  const MatrixXd sig1 = model.sigma(x_star, theta1);
  const MatrixXd inv0 = s0.llt().solve(MatrixXd::Identity(model.d, model.d));
  const MatrixXd inv1 = s1.llt().solve(MatrixXd::Identity(model.d, model.d));

  CaseAStepTerms t;
  t.quad_pos = sig1.transpose() * (inv0 - inv1) * sig1;
  t.quad_neg = sig0.transpose() * (inv1 - inv0) * sig0;
  t.log_det_ratio = log_det_spd(s1) - log_det_spd(s0);
  return t;
}

LimitSample sample_case_a(const VolatilityModel& model, const VectorXd& x_star,
                          const VectorXd& theta0, const VectorXd& theta1, int l0, int count,
                          std::uint64_t seed) {
  if (l0 < 1) throw ValidationError("l0 must be positive");
  if (count < 1) throw ValidationError("count must be positive");
  const CaseAStepTerms t = case_a_step_terms(model, x_star, theta0, theta1);
  const int r = model.r;

  LimitSample out;
  out.truncation = l0;
  out.values.resize(count);
  VectorXd z(r);
  for (int j = 0; j < count; ++j) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(j));
    // Walk values at v = -l0..l0; the positive branch consumes its normals
    // first, then the negative branch.
    double best_val = 0.0;
    int best_v = 0;
    double w = 0.0;
    for (int v = 1; v <= l0; ++v) {
      for (int c = 0; c < r; ++c) z(c) = rng.normal();
      w += (z.transpose() * t.quad_pos * z).value() - t.log_det_ratio;
      if (w < best_val) {
        best_val = w;
        best_v = v;
      }
    }
    w = 0.0;
    for (int v = 1; v <= l0; ++v) {
      for (int c = 0; c < r; ++c) z(c) = rng.normal();
      w += (z.transpose() * t.quad_neg * z).value() + t.log_det_ratio;
      // Smallest-index tie-break: a negative v displaces an equal value at
      // -v' only when strictly smaller, and displaces 0/positive on equality.
      if (w < best_val || (w == best_val && -v < best_v)) {
        best_val = w;
        best_v = -v;
      }
    }
    out.values[j] = static_cast<double>(best_v);
  }
  return out;
}

double studentize(const TwoStageFit& fit, const ObservedSeries& series,
                  const VolatilityModel& model, double t_star_true, double vartheta,
                  GammaConvention convention) {
  if (!std::isfinite(t_star_true) || !(t_star_true > 0.0) || !(t_star_true < series.T) ||
      !std::isfinite(vartheta) || !(vartheta > 0.0))
    throw UnknownTruthError("studentization needs the true change point and separation");
  const int k_star = grid_floor(t_star_true, series.n, series.T);
  const VectorXd x = series.x.row(k_star).transpose();

  double gamma;
  if (convention == GammaConvention::kPaper) {
    if (model.d1 != 1)
      throw ValidationError("the (log(1+x^2))^2 normalizer needs a scalar covariate");
    const double l = std::log(1.0 + x(0) * x(0));
    gamma = l * l;
  } else {
    VectorXd eta = fit.theta_check1 - fit.theta_check0;
    const double norm = eta.norm();
    if (norm > 0.0) {
      eta /= norm;
    } else if (model.d0 == 1) {
      eta(0) = 1.0;  // eta^{x2} is 1 for any unit scalar
    } else {
      throw DegenerateChangeError("estimated parameters coincide; eta direction undefined");
    }
    const MatrixXd xi = information_matrix(model, x, fit.theta_check0);
    gamma = (eta.transpose() * xi * eta).value() / (2.0 * series.T);
  }
  return static_cast<double>(series.n) * vartheta * vartheta * (fit.t_check - t_star_true) * gamma;
}

double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw ValidationError("KS distance of an empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace volcp
