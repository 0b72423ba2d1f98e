#pragma once

#include "volcp/model.hpp"
#include "volcp/simulate.hpp"

namespace volcp {

// Compensated (Kahan) accumulator; keeps long mixed-magnitude sums stable
// and independent of threading decisions elsewhere.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Quasi-likelihood contrast evaluated at every grid split k = 0..n:
//   values[k] = sum_{i<=k} G_i(theta0) + sum_{i>k} G_i(theta1),
// where change index k assigns increments i <= k to the first regime.
// values[k] = prefix0[k] + (prefix1[n] - prefix1[k]) holds exactly.
struct ContrastProfile {
  int n = 0;
  double T = 1.0;
  VectorXd theta0, theta1;
  VectorXd values;   // n+1
  VectorXd prefix0;  // n+1, prefix0[k] = sum_{i<=k} G_i(theta0)
  VectorXd prefix1;
};

// Quasi-log-likelihood increment
//   G(theta) = log det S(x_prev, theta) + h^{-1} S(x_prev, theta)^{-1}[(dy)^{x2}].
double qml_increment(const VolatilityModel& model, const VectorXd& x_prev, const VectorXd& dy,
                     double h, const VectorXd& theta);

// O(n) profile construction from the two prefix-sum arrays.
ContrastProfile contrast_profile(const VolatilityModel& model, const ObservedSeries& series,
                                 const VectorXd& theta0, const VectorXd& theta1);

// sum_{i=i_from}^{i_to} G_i(theta); increment indices are 1-based.
double segment_contrast(const VolatilityModel& model, const ObservedSeries& series,
                        const VectorXd& theta, int i_from, int i_to);

// Grid index [n t / T], clamped to [0, n]. A small absolute guard keeps
// products like 0.3 * 1000 from landing one ulp below an integer.
int grid_floor(double t, int n, double T);

}  // namespace volcp
