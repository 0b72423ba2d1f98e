#include "volcp/simulate.hpp"

#include <cmath>

#include "volcp/rng.hpp"

namespace volcp {

void ObservedSeries::validate() const {
  if (n < 1) throw ValidationError("series needs at least one interval");
  if (times.size() != n + 1 || y.rows() != n + 1 || x.rows() != n + 1)
    throw ValidationError("series arrays must have n+1 rows");
  if (!(T > 0)) throw ValidationError("series horizon must be positive");
  if (!times.allFinite() || !y.allFinite() || !x.allFinite())
    throw NonFiniteError("series contains non-finite entries");
  const double step = T / static_cast<double>(n);
  const double tolr = 1e-9 * std::max(1.0, T);
  for (int i = 0; i <= n; ++i) {
    if (std::abs(times(i) - step * i) > tolr)
      throw ValidationError("sampling times are not equally spaced");
  }
}

void Scenario::validate() const {
  if (n < 1) throw ValidationError("n must be positive");
  if (substeps < 1) throw ValidationError("substeps must be >= 1");
  if (!(T > 0)) throw ValidationError("T must be positive");
  if (!(t_star > 0 && t_star < T)) throw ValidationError("t_star must lie strictly inside (0,T)");
  if (theta0_star.size() == 0 || theta0_star.size() != theta1_star.size())
    throw ValidationError("theta0_star/theta1_star missing or mismatched");
  if (x0.size() == 0 || !x0.allFinite()) throw ValidationError("x0 missing or non-finite");
  if (box_lo.size() != box_hi.size()) throw ValidationError("box override bounds mismatched");
}

VolatilityModel scenario_model(const Scenario& scenario) {
  VolatilityModel m = make_builtin(scenario.model);
  if (scenario.box_lo.size() > 0) {
    m.theta_box.lo = scenario.box_lo;
    m.theta_box.hi = scenario.box_hi;
    m.theta_box.validate();
  }
  if (!m.theta_box.contains(scenario.theta0_star) || !m.theta_box.contains(scenario.theta1_star))
    throw ValidationError("true parameters lie outside the theta box");
  return m;
}

namespace {

ObservedSeries run_euler(const VolatilityModel& model, const Scenario& sc, const MatrixXd* noise,
                         Rng* rng) {
  sc.validate();
  model.validate();
  if (sc.theta0_star.size() != model.d0) throw ValidationError("theta dimension mismatch");
  if (sc.x0.size() != model.d) throw ValidationError("x0 dimension mismatch");
  if (model.d1 != model.d)
    throw ValidationError("simulation supports covariate-equals-state models only");

  const int n = sc.n;
  const int sub = sc.substeps;
  const long fine_steps = static_cast<long>(n) * sub;
  const double hf = sc.T / static_cast<double>(fine_steps);
  const double sqrt_hf = std::sqrt(hf);
  // Fine step j starts at s_j = j*hf; regime is theta0 iff s_j < t_star.
  const double change_index = sc.t_star * static_cast<double>(fine_steps) / sc.T;
  const bool reflect = std::isfinite(model.reflect_floor);
  const double floor = model.reflect_floor;

  if (noise && (noise->rows() != fine_steps || noise->cols() != model.r))
    throw ValidationError("noise matrix must be (n*substeps) x r");

  ObservedSeries out;
  out.T = sc.T;
  out.n = n;
  out.times = VectorXd::LinSpaced(n + 1, 0.0, sc.T);
  for (int i = 0; i <= n; ++i) out.times(i) = sc.T * static_cast<double>(i) / n;
  out.y.resize(n + 1, model.d);

  if (model.scalar()) {
    const double th0 = sc.theta0_star(0), th1 = sc.theta1_star(0);
    double y = sc.x0(0);
    out.y(0, 0) = y;
    long j = 0;
    for (int i = 1; i <= n; ++i) {
      for (int s = 0; s < sub; ++s, ++j) {
        const double theta = (static_cast<double>(j) < change_index) ? th0 : th1;
        const double sig = model.sigma_scalar(y, theta);
        if (!std::isfinite(sig)) throw StateExitedDomainError("sigma became non-finite along the path");
        const double dw = noise ? (*noise)(j, 0) : sqrt_hf * rng->normal();
        double dy = sig * dw;
        if (model.drift) {
          VectorXd state(1);
          state(0) = y;
          dy += model.drift(hf * static_cast<double>(j), state)(0) * hf;
        }
        y += dy;
        if (reflect && y < floor) y = 2.0 * floor - y;
        if (!std::isfinite(y)) throw NonFiniteError("state became non-finite");
      }
      out.y(i, 0) = y;
    }
  } else {
    VectorXd y = sc.x0;
    out.y.row(0) = y.transpose();
    VectorXd dw(model.r);
    long j = 0;
    for (int i = 1; i <= n; ++i) {
      for (int s = 0; s < sub; ++s, ++j) {
        const VectorXd& theta =
            (static_cast<double>(j) < change_index) ? sc.theta0_star : sc.theta1_star;
        const MatrixXd sig = model.sigma(y, theta);
        if (!sig.allFinite()) throw StateExitedDomainError("sigma became non-finite along the path");
        if (noise) {
          dw = noise->row(j).transpose();
        } else {
          for (int c = 0; c < model.r; ++c) dw(c) = sqrt_hf * rng->normal();
        }
        VectorXd dy = sig * dw;
        if (model.drift) dy += model.drift(hf * static_cast<double>(j), y) * hf;
        y += dy;
        if (reflect) {
          for (int c = 0; c < model.d; ++c)
            if (y(c) < floor) y(c) = 2.0 * floor - y(c);
        }
        if (!y.allFinite()) throw NonFiniteError("state became non-finite");
      }
      out.y.row(i) = y.transpose();
    }
  }
  out.x = out.y;  // covariate is the state
  return out;
}

}  // namespace

ObservedSeries simulate_path(const VolatilityModel& model, const Scenario& scenario,
                             std::uint64_t stream) {
  Rng rng = Rng::stream(scenario.seed, stream);
  return run_euler(model, scenario, nullptr, &rng);
}

ObservedSeries simulate_path(const Scenario& scenario, std::uint64_t stream) {
  return simulate_path(scenario_model(scenario), scenario, stream);
}

ObservedSeries simulate_path_with_noise(const VolatilityModel& model, const Scenario& scenario,
                                        const MatrixXd& dw) {
  return run_euler(model, scenario, &dw, nullptr);
}

}  // namespace volcp
