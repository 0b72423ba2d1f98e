#include "volcp/model.hpp"

#include <cmath>

namespace volcp {

bool ThetaBox::contains(const VectorXd& theta, double tol) const {
  if (theta.size() != lo.size()) return false;
  for (int i = 0; i < lo.size(); ++i) {
    const double slack = tol * std::max(1.0, hi(i) - lo(i));
    if (theta(i) < lo(i) - slack || theta(i) > hi(i) + slack) return false;
  }
  return true;
}

VectorXd ThetaBox::clamp(const VectorXd& theta) const {
  VectorXd out = theta;
  for (int i = 0; i < lo.size(); ++i) out(i) = std::min(std::max(out(i), lo(i)), hi(i));
  return out;
}

void ThetaBox::validate() const {
  if (lo.size() == 0 || lo.size() != hi.size())
    throw ValidationError("theta box is empty or has mismatched bounds");
  for (int i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo(i)) || !std::isfinite(hi(i)) || !(hi(i) - lo(i) > 0.0))
      throw ValidationError("theta box must have finite bounds with positive widths");
  }
}

void VolatilityModel::validate() const {
  if (d < 1 || r < 1 || d0 < 1 || d1 < 1) throw ValidationError("model dimensions must be positive");
  theta_box.validate();
  if (theta_box.dim() != d0) throw ValidationError("theta box dimension does not match d0");
  if (!sigma && !sigma_scalar) throw ValidationError("model must define sigma");
}

namespace {

MatrixXd sigma_matrix(const VolatilityModel& model, const VectorXd& x, const VectorXd& theta) {
  if (model.sigma) return model.sigma(x, theta);
  MatrixXd s(1, 1);
  s(0, 0) = model.sigma_scalar(x(0), theta(0));
  return s;
}

// sigma sigma^T with finiteness and ellipticity checks, no box check.
MatrixXd covariance_unboxed(const VolatilityModel& model, const VectorXd& x, const VectorXd& theta) {
  MatrixXd sig = sigma_matrix(model, x, theta);
  if (sig.rows() != model.d || sig.cols() != model.r)
    throw ValidationError("sigma returned a matrix of unexpected shape");
  if (!sig.allFinite()) throw NonFiniteError("sigma(x,theta) has non-finite entries");
  MatrixXd s = sig * sig.transpose();
  s = 0.5 * (s + s.transpose()).eval();
  const double eps = tol::kEpsPdRel * s.diagonal().maxCoeff();
  if (model.d == 1) {
    if (!(s(0, 0) > eps) || !std::isfinite(s(0, 0)))
      throw NonPositiveDefiniteError("S(x,theta) is not positive definite");
    return s;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success || !(es.eigenvalues()(0) > eps))
    throw NonPositiveDefiniteError("S(x,theta) is not positive definite");
  return s;
}

}  // namespace

MatrixXd local_covariance(const VolatilityModel& model, const VectorXd& x, const VectorXd& theta) {
  if (!model.theta_box.contains(theta, 1e-12))
    throw OutOfBoxError("theta outside the parameter box");
  return covariance_unboxed(model, x, theta);
}

double log_det_spd(const MatrixXd& s) {
  Eigen::LLT<MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) throw NonPositiveDefiniteError("Cholesky factorization failed");
  const MatrixXd l = llt.matrixL();
  double ld = 0.0;
  for (int i = 0; i < l.rows(); ++i) ld += std::log(l(i, i));
  return 2.0 * ld;
}

double covariance_divergence(const VolatilityModel& model, const VectorXd& x,
                             const VectorXd& theta_a, const VectorXd& theta_b) {
  const MatrixXd sa = local_covariance(model, x, theta_a);
  const MatrixXd sb = local_covariance(model, x, theta_b);
  if (model.d == 1) {
    const double u = sb(0, 0) / sa(0, 0);
    return u - 1.0 - std::log(u);
  }
  Eigen::LLT<MatrixXd> llt(sa);
  if (llt.info() != Eigen::Success) throw NonPositiveDefiniteError("Cholesky factorization failed");
  const MatrixXd w = llt.solve(sb);  // S_a^{-1} S_b
  const double tr = w.trace();
  const double ld = log_det_spd(sb) - log_det_spd(sa);
  return tr - static_cast<double>(model.d) - ld;
}

std::vector<MatrixXd> covariance_derivatives(const VolatilityModel& model, const VectorXd& x,
                                             const VectorXd& theta, bool use_analytic) {
  std::vector<MatrixXd> ds(model.d0);
  if (use_analytic) {
    if (!model.dsigma_dtheta) throw ValidationError("model has no analytic dsigma_dtheta");
    const MatrixXd sig = sigma_matrix(model, x, theta);
    const std::vector<MatrixXd> dsig = model.dsigma_dtheta(x, theta);
    if (static_cast<int>(dsig.size()) != model.d0)
      throw ValidationError("dsigma_dtheta returned wrong family size");
    for (int i = 0; i < model.d0; ++i)
      ds[i] = dsig[i] * sig.transpose() + sig * dsig[i].transpose();
    return ds;
  }
  for (int i = 0; i < model.d0; ++i) {
    const double h = tol::kFdStep * std::max(1.0, std::abs(theta(i)));
    VectorXd up = theta, dn = theta;
    up(i) += h;
    dn(i) -= h;
    ds[i] = (covariance_unboxed(model, x, up) - covariance_unboxed(model, x, dn)) / (2.0 * h);
  }
  return ds;
}

MatrixXd information_matrix(const VolatilityModel& model, const VectorXd& x, const VectorXd& theta) {
  const MatrixXd s = local_covariance(model, x, theta);
  Eigen::LLT<MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) throw NonPositiveDefiniteError("Cholesky factorization failed");
  const std::vector<MatrixXd> ds =
      covariance_derivatives(model, x, theta, static_cast<bool>(model.dsigma_dtheta));
  std::vector<MatrixXd> v(model.d0);
  for (int i = 0; i < model.d0; ++i) v[i] = llt.solve(ds[i]);  // S^{-1} d_i S
  MatrixXd xi(model.d0, model.d0);
  for (int i = 0; i < model.d0; ++i) {
    for (int j = i; j < model.d0; ++j) {
      const double t = (v[i] * v[j]).trace();
      xi(i, j) = t;
      xi(j, i) = t;
    }
  }
  return xi;
}

VolatilityModel make_model1(double box_lo, double box_hi) {
  VolatilityModel m;
  m.name = "model1";
  m.theta_box.lo = VectorXd::Constant(1, box_lo);
  m.theta_box.hi = VectorXd::Constant(1, box_hi);
  m.sigma_scalar = [](double x, double theta) { return std::pow(1.0 + x * x, theta); };
  m.sigma = [](const VectorXd& x, const VectorXd& theta) {
    MatrixXd s(1, 1);
    s(0, 0) = std::pow(1.0 + x(0) * x(0), theta(0));
    return s;
  };
  m.dsigma_dtheta = [](const VectorXd& x, const VectorXd& theta) {
    const double base = 1.0 + x(0) * x(0);
    MatrixXd d(1, 1);
    d(0, 0) = std::log(base) * std::pow(base, theta(0));
    return std::vector<MatrixXd>{d};
  };
  m.validate();
  return m;
}

VolatilityModel make_cir(double box_lo, double box_hi) {
  VolatilityModel m;
  m.name = "cir";
  m.theta_box.lo = VectorXd::Constant(1, box_lo);
  m.theta_box.hi = VectorXd::Constant(1, box_hi);
  m.sigma_scalar = [](double x, double theta) { return std::sqrt(theta * x); };
  m.sigma = [](const VectorXd& x, const VectorXd& theta) {
    MatrixXd s(1, 1);
    s(0, 0) = std::sqrt(theta(0) * x(0));
    return s;
  };
  m.dsigma_dtheta = [](const VectorXd& x, const VectorXd& theta) {
    MatrixXd d(1, 1);
    d(0, 0) = 0.5 * std::sqrt(x(0) / theta(0));
    return std::vector<MatrixXd>{d};
  };
  m.reflect_floor = 1e-8;
  m.validate();
  return m;
}

VolatilityModel make_builtin(const std::string& name) {
  if (name == "model1") return make_model1();
  if (name == "cir") return make_cir();
  throw ValidationError("unknown model name: " + name);
}

}  // namespace volcp
