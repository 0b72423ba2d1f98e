#include "volcp/contrast.hpp"

#include <cmath>

namespace volcp {

int grid_floor(double t, int n, double T) {
  const double v = t * static_cast<double>(n) / T;
  const int k = static_cast<int>(std::floor(v + 1e-9));
  return std::min(std::max(k, 0), n);
}

namespace {

inline double scalar_increment(const VolatilityModel& model, double x_prev, double dy, double h,
                               double theta) {
  const double sig = model.sigma_scalar(x_prev, theta);
  const double s = sig * sig;
  if (!(s > 0.0) || !std::isfinite(s))
    throw NonPositiveDefiniteError("S(x,theta) is not positive definite");
  return std::log(s) + dy * dy / (h * s);
}

}  // namespace

double qml_increment(const VolatilityModel& model, const VectorXd& x_prev, const VectorXd& dy,
                     double h, const VectorXd& theta) {
  if (!(h > 0)) throw ValidationError("step h must be positive");
  if (!model.theta_box.contains(theta, 1e-12)) throw OutOfBoxError("theta outside the parameter box");
  if (model.scalar()) return scalar_increment(model, x_prev(0), dy(0), h, theta(0));
  const MatrixXd s = local_covariance(model, x_prev, theta);
  Eigen::LLT<MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) throw NonPositiveDefiniteError("Cholesky factorization failed");
  const MatrixXd l = llt.matrixL();
  double ld = 0.0;
  for (int i = 0; i < l.rows(); ++i) ld += std::log(l(i, i));
  // S^{-1}[(dy)^{x2}] = |L^{-1} dy|^2
  const VectorXd w = l.triangularView<Eigen::Lower>().solve(dy);
  return 2.0 * ld + w.squaredNorm() / h;
}

ContrastProfile contrast_profile(const VolatilityModel& model, const ObservedSeries& series,
                                 const VectorXd& theta0, const VectorXd& theta1) {
  series.validate();
  if (!model.theta_box.contains(theta0, 1e-12) || !model.theta_box.contains(theta1, 1e-12))
    throw OutOfBoxError("theta outside the parameter box");

  const int n = series.n;
  const double h = series.h();
  ContrastProfile p;
  p.n = n;
  p.T = series.T;
  p.theta0 = theta0;
  p.theta1 = theta1;
  p.prefix0.resize(n + 1);
  p.prefix1.resize(n + 1);
  p.values.resize(n + 1);
  p.prefix0(0) = 0.0;
  p.prefix1(0) = 0.0;

  KahanSum acc0, acc1;
  if (model.scalar()) {
    const double th0 = theta0(0), th1 = theta1(0);
    for (int i = 1; i <= n; ++i) {
      const double xp = series.x(i - 1, 0);
      const double dy = series.y(i, 0) - series.y(i - 1, 0);
      acc0.add(scalar_increment(model, xp, dy, h, th0));
      acc1.add(scalar_increment(model, xp, dy, h, th1));
      p.prefix0(i) = acc0.value();
      p.prefix1(i) = acc1.value();
    }
  } else {
    for (int i = 1; i <= n; ++i) {
      const VectorXd xp = series.x.row(i - 1).transpose();
      const VectorXd dy = (series.y.row(i) - series.y.row(i - 1)).transpose();
      acc0.add(qml_increment(model, xp, dy, h, theta0));
      acc1.add(qml_increment(model, xp, dy, h, theta1));
      p.prefix0(i) = acc0.value();
      p.prefix1(i) = acc1.value();
    }
  }
  const double total1 = p.prefix1(n);
  for (int k = 0; k <= n; ++k) p.values(k) = p.prefix0(k) + (total1 - p.prefix1(k));
  if (!p.values.allFinite()) throw NonFiniteError("contrast profile has non-finite values");
  return p;
}

double segment_contrast(const VolatilityModel& model, const ObservedSeries& series,
                        const VectorXd& theta, int i_from, int i_to) {
  if (i_from > i_to) throw EmptySegmentError("empty increment range");
  if (i_from < 1 || i_to > series.n) throw ValidationError("segment indices out of range");
  if (!model.theta_box.contains(theta, 1e-12)) throw OutOfBoxError("theta outside the parameter box");
  const double h = series.h();
  KahanSum acc;
  if (model.scalar()) {
    const double th = theta(0);
    for (int i = i_from; i <= i_to; ++i) {
      const double xp = series.x(i - 1, 0);
      const double dy = series.y(i, 0) - series.y(i - 1, 0);
      acc.add(scalar_increment(model, xp, dy, h, th));
    }
  } else {
    for (int i = i_from; i <= i_to; ++i) {
      const VectorXd xp = series.x.row(i - 1).transpose();
      const VectorXd dy = (series.y.row(i) - series.y.row(i - 1)).transpose();
      acc.add(qml_increment(model, xp, dy, h, theta));
    }
  }
  return acc.value();
}

}  // namespace volcp
