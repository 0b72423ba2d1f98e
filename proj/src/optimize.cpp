#include "volcp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace volcp {

ScalarMinResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                        double hi, double xtol, int max_iter, int coarse_points) {
  if (!(hi > lo)) throw ValidationError("golden section needs lo < hi");
  ScalarMinResult res;
  coarse_points = std::max(coarse_points, 3);

  // Coarse scan to pick the basin.
  int best = 0;
  double best_f = 0.0;
  std::vector<double> xs(coarse_points);
  for (int i = 0; i < coarse_points; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (coarse_points - 1);
    const double fi = f(xs[i]);
    ++res.evals;
    if (i == 0 || fi < best_f) {
      best = i;
      best_f = fi;
    }
  }
  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, coarse_points - 1)];

  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  res.evals += 2;
  int it = 0;
  for (; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    ++res.evals;
  }
  res.converged = (b - a) <= xtol;
  if (f1 < f2) {
    res.x = x1;
    res.fx = f1;
  } else {
    res.x = x2;
    res.fx = f2;
  }
  if (best_f < res.fx) {
    res.x = xs[best];
    res.fx = best_f;
  }
  return res;
}

namespace {

struct SimplexPoint {
  VectorXd x;
  double f;
};

}  // namespace

VectorMinResult nelder_mead_box(const std::function<double(const VectorXd&)>& f,
                                const ThetaBox& box, const VectorXd& start, double ftol,
                                double xtol, int max_iter) {
  const int dim = box.dim();
  VectorMinResult res;
  auto eval = [&](const VectorXd& x) {
    ++res.evals;
    return f(box.clamp(x));
  };

  std::vector<SimplexPoint> s(dim + 1);
  s[0].x = box.clamp(start);
  s[0].f = eval(s[0].x);
  for (int i = 0; i < dim; ++i) {
    VectorXd x = s[0].x;
    const double step = 0.05 * (box.hi(i) - box.lo(i));
    x(i) = (x(i) + step <= box.hi(i)) ? x(i) + step : x(i) - step;
    s[i + 1].x = x;
    s[i + 1].f = eval(x);
  }
  auto order = [&]() {
    std::sort(s.begin(), s.end(), [](const SimplexPoint& a, const SimplexPoint& b) { return a.f < b.f; });
  };
  order();

  for (int it = 0; it < max_iter; ++it) {
    double spread = 0.0;
    for (int i = 0; i < dim; ++i)
      spread = std::max(spread, (s[dim].x - s[0].x).cwiseAbs().maxCoeff());
    if (std::abs(s[dim].f - s[0].f) <= ftol * (1.0 + std::abs(s[0].f)) && spread <= xtol) {
      res.converged = true;
      break;
    }
    VectorXd centroid = VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += s[i].x;
    centroid /= static_cast<double>(dim);

    const VectorXd xr = box.clamp(centroid + (centroid - s[dim].x));
    const double fr = eval(xr);
    if (fr < s[0].f) {
      const VectorXd xe = box.clamp(centroid + 2.0 * (centroid - s[dim].x));
      const double fe = eval(xe);
      if (fe < fr) {
        s[dim] = {xe, fe};
      } else {
        s[dim] = {xr, fr};
      }
    } else if (fr < s[dim - 1].f) {
      s[dim] = {xr, fr};
    } else {
      const VectorXd xc = box.clamp(centroid + 0.5 * (s[dim].x - centroid));
      const double fc = eval(xc);
      if (fc < s[dim].f) {
        s[dim] = {xc, fc};
      } else {
        for (int i = 1; i <= dim; ++i) {
          s[i].x = box.clamp(s[0].x + 0.5 * (s[i].x - s[0].x));
          s[i].f = eval(s[i].x);
        }
      }
    }
    order();
  }
  res.x = s[0].x;
  res.fx = s[0].f;
  return res;
}

VectorMinResult nelder_mead_multistart(const std::function<double(const VectorXd&)>& f,
                                       const ThetaBox& box, int starts, double ftol, double xtol,
                                       int max_iter) {
  const int dim = box.dim();
  starts = std::max(starts, 1);
  VectorMinResult best;
  bool have_best = false;
  int total_evals = 0;
  for (int k = 0; k < starts; ++k) {
    VectorXd start(dim);
    for (int i = 0; i < dim; ++i) {
      // Center first, then staggered quarter points.
      double frac = 0.5;
      if (k > 0) frac = (((k - 1) >> (i % 8)) & 1) ? 0.75 : 0.25;
      start(i) = box.lo(i) + frac * (box.hi(i) - box.lo(i));
    }
    VectorMinResult r = nelder_mead_box(f, box, start, ftol, xtol, max_iter);
    total_evals += r.evals;
    if (!have_best || r.fx < best.fx) {
      best = r;
      have_best = true;
    }
  }
  best.evals = total_evals;
  return best;
}

}  // namespace volcp
