#pragma once

#include <functional>

#include "volcp/model.hpp"

namespace volcp {

struct ScalarMinResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Coarse bracketing grid over [lo, hi] followed by golden-section refinement
// of the bracketing interval. Intended for unimodal objectives; the grid
// guards against landing in the wrong basin.
ScalarMinResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                        double hi, double xtol, int max_iter,
                                        int coarse_points = 17);

struct VectorMinResult {
  VectorXd x;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Nelder-Mead with proposals clamped to the box.
VectorMinResult nelder_mead_box(const std::function<double(const VectorXd&)>& f,
                                const ThetaBox& box, const VectorXd& start, double ftol,
                                double xtol, int max_iter);

// Multistart wrapper: deterministic staggered start points inside the box.
VectorMinResult nelder_mead_multistart(const std::function<double(const VectorXd&)>& f,
                                       const ThetaBox& box, int starts, double ftol, double xtol,
                                       int max_iter);

}  // namespace volcp
