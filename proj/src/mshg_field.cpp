#include "sgq/mshg_field.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace sgq {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0, 1);
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

cplx cpow(cplx z, double a) { return z == 0.0 ? cplx(0) : std::exp(a * std::log(z)); }

// sqrt(p) - zeta^alpha on the branch that follows zeta^alpha at infinity
cplx wmap_integrand(cplx zeta, double alpha, double s2a) {
  const cplx za = cpow(zeta, alpha);
  cplx sq = std::sqrt(za * za + s2a);
  if ((sq * std::conj(za)).real() < 0) sq = -sq;
  return s2a / (sq + za);
}
}  // namespace

WChart::WChart(const ModelParams& p) : alpha(p.alpha), s(p.s), rhat(p.rhat) {}

double WChart::w0() const { return -2 * rhat / std::sin(pi / alpha); }

cplx WChart::turning(int sign) const { return cplx(-rhat * std::tan(pi / (2 * alpha)), sign * rhat); }

cplx WChart::shift(cplx w) const { return w + rhat * std::tan(pi / (2 * alpha)) - I * rhat; }

cplx w_of_z(cplx z, const WChart& c) {
  const double a = c.alpha;
  if (!(a > 1)) throw ParamError("w map needs alpha > 1");
  if (std::abs(std::arg(z)) > pi / (2 * a) + 1e-12 && std::abs(z) > 0)
    throw ParamError("z outside the rotated chart |arg z| <= pi/(2 alpha)");
  const double s2a = std::pow(c.s, 2 * a);
  // the path z + t must stay off the zeros of p
  for (int sg : {-1, 1}) {
    const cplx tp = c.s * std::exp(cplx(0, sg * pi / (2 * a)));
    const double dist = tp.real() >= z.real() ? std::abs(tp.imag() - z.imag()) : std::abs(tp - z);
    if (dist < 1e-9 * std::max(1.0, c.s)) throw ParamError("integration path passes through a turning point");
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double inf = std::numeric_limits<double>::infinity();
  auto re = [&](double t) { return wmap_integrand(z + t, a, s2a).real(); };
  auto im = [&](double t) { return wmap_integrand(z + t, a, s2a).imag(); };
  const double b = std::max(1.0, std::abs(z));
  const double ir = GK::integrate(re, 0.0, b, 15, 1e-14) + GK::integrate(re, b, inf, 15, 1e-14);
  const double ii = GK::integrate(im, 0.0, b, 15, 1e-14) + GK::integrate(im, b, inf, 15, 1e-14);
  return cpow(z, a + 1) / (a + 1) - cplx(ir, ii);
}

TregTable make_treg_table(const TFunctions& t, double half_width, double h, double tilt) {
  const double a = t.params().alpha;
  if (std::abs(tilt) >= pi * (a + 1) / (2 * a)) throw ParamError("contour tilt reaches the zeros of Q");
  TregTable tab;
  tab.h = h;
  tab.tilt = tilt;
  const int n = int(std::lround(half_width / h));
  for (int i = -n; i <= n; ++i) {
    const double x = i * h;
    tab.x.push_back(x);
    tab.value.push_back(t.treg_at(cplx(x, tilt + pi * (a + 1) / (2 * a))));
  }
  return tab;
}

cvec glm_kernel(cplx w, const TregTable& t, const WChart& chart, rvec& theta_out) {
  const cplx ws = chart.shift(w), wsb = std::conj(ws);
  const cplx ph = std::exp(I * t.tilt);
  const std::size_t n = t.x.size();
  cvec D(n);
  double dmax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = t.x[i];
    const cplx e = -2.0 * ws * ph * std::exp(x) - 2.0 * wsb / ph * std::exp(-x);
    D[i] = e.real() < -745 ? cplx(0) : t.value[i] * std::exp(e);
    dmax = std::max(dmax, std::abs(D[i]));
  }
  theta_out.clear();
  cvec out;
  if (dmax == 0) return out;
  if (std::abs(D.front()) > 1e-14 * dmax || std::abs(D.back()) > 1e-14 * dmax)
    throw ParamError("w outside the reconstruction domain: kernel does not decay on the contour");
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(D[i]) > 1e-17 * dmax) {
      theta_out.push_back(t.x[i]);
      out.push_back(D[i]);
    }
  return out;
}

GlmState glm_solve(cplx w, const TregTable& t, const WChart& chart) {
  GlmState st;
  st.w = w;
  st.h_ = t.h;
  st.tilt_ = t.tilt;
  st.D = glm_kernel(w, t, chart, st.theta);
  const int n = int(st.D.size());
  st.X_plus.assign(n, 1.0);
  st.X_minus.assign(n, 1.0);
  st.d_plus = st.d_minus = 0;
  if (n > 0) {
    const double c = t.h / (4 * pi);
    CMat K(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) K(i, j) = c * std::tanh((st.theta[i] - st.theta[j]) / 2) * st.D[j];
    const CMat Id = CMat::Identity(n, n);
    const CVec one = CVec::Ones(n);
    const CVec xp = (Id - K).partialPivLu().solve(one);
    const CVec xm = (Id + K).partialPivLu().solve(one);
    cplx dp = 0, dm = 0;
    for (int i = 0; i < n; ++i) {
      st.X_plus[i] = xp(i);
      st.X_minus[i] = xm(i);
      dp += c * st.D[i] * xp(i);
      dm += c * st.D[i] * xm(i);
    }
    st.d_plus = dp;
    st.d_minus = dm;
  }
  st.d = 1.0 - st.d_plus * st.d_minus;
  if (std::abs(st.d) < 1e-10) throw ParamError("singular GLM system: w outside the reconstruction domain");
  const cplx ratio = (1.0 - st.d_minus * st.d_minus) / (1.0 - st.d_plus * st.d_plus);
  st.kappa_plus = std::pow(st.d, -0.5) * std::pow(ratio, 0.25);
  st.kappa_minus = std::pow(st.d, -0.5) * std::pow(ratio, -0.25);
  st.omega_plus = std::log(1.0 + (st.d_plus - st.d_minus) / st.d);
  st.omega_minus = std::log(1.0 - (st.d_plus - st.d_minus) / st.d);
  st.eta_hat = (std::atanh(st.d_plus) + std::atanh(st.d_minus)).real();
  return st;
}

cplx GlmState::x_at(cplx theta, int sign) const {
  const double c = h_ / (4 * pi);
  const cvec& X = sign > 0 ? X_plus : X_minus;
  cplx acc = 0;
  for (std::size_t j = 0; j < D.size(); ++j) acc += std::tanh((theta - this->theta[j]) / 2.0) * D[j] * X[j];
  return 1.0 + double(sign) * c * acc;
}

cplx GlmState::d_identity(double theta) const {
  const cplx u = theta + I * (pi / 2), v = theta - I * (pi / 2);
  return 0.5 * (x_at(u, 1) * x_at(v, -1) + x_at(v, 1) * x_at(u, -1));
}

LogdetResult eta_logdet(cplx w, const TregTable& t, const WChart& chart, int n_max) {
  LogdetResult res;
  rvec th;
  const cvec D = glm_kernel(w, t, chart, th);
  const int n = int(D.size());
  if (n == 0) {
    res.partial.assign(n_max, 0.0);
    return res;
  }
  const double c = t.h / (4 * pi);
  CVec sq(n);
  for (int i = 0; i < n; ++i) sq(i) = std::sqrt(D[i]);
  CMat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = c * sq(i) * sq(j) / std::cosh((th[i] - th[j]) / 2);
  Eigen::ComplexEigenSolver<CMat> es(M, false);
  const CVec lam = es.eigenvalues();
  res.spectral_radius = lam.cwiseAbs().maxCoeff();
  if (res.spectral_radius >= 1) throw ParamError("spectral radius >= 1: w outside the convergence domain");
  cplx acc = 0;
  for (int m = 1; m <= n_max; ++m) {
    cplx tr = 0;
    for (int i = 0; i < n; ++i) tr += std::pow(lam(i), 2 * m - 1);
    acc += 2.0 * tr / double(2 * m - 1);
    res.partial.push_back(acc.real());
  }
  res.eta_series = acc.real();
  const CMat Id = CMat::Identity(n, n);
  const cplx ld = std::log((Id + M).partialPivLu().determinant()) - std::log((Id - M).partialPivLu().determinant());
  res.eta_logdet = ld.real();
  res.imag_part = ld.imag();
  return res;
}

cplx eta_linear(cplx w, const TregTable& t, const WChart& chart) {
  rvec th;
  const cvec D = glm_kernel(w, t, chart, th);
  cplx acc = 0;
  for (const cplx& d : D) acc += d;
  return acc * t.h / (2 * pi);
}

double pde_residual(const std::function<double(cplx)>& f, cplx w, double h) {
  const double f0 = f(w);
  const double fxx = (f(w + h) - 2 * f0 + f(w - h)) / (h * h);
  const double fyy = (f(w + I * h) - 2 * f0 + f(w - I * h)) / (h * h);
  return std::abs(0.25 * (fxx + fyy) - std::exp(2 * f0) + std::exp(-2 * f0));
}

double eta_asymptotic(double rho, double phi, const TFunctions& t) {
  const ModelParams& p = t.params();
  const double a = p.alpha, s = p.s;
  if (!(a > 1)) throw ParamError("asymptotic formula assumes alpha > 1");
  const double tau = 4 * std::pow(rho, a + 1) / (a + 1);
  const double lead =
      0.25 * std::log(std::pow(s, 4 * a) - 2 * std::pow(s * rho, 2 * a) * std::cos(2 * a * phi) + std::pow(rho, 4 * a));
  const cplx T = t.t(0.5, cplx(0, (a + 1) * phi));
  return lead + T.real() * std::exp(-tau) / std::sqrt(2 * pi * tau);
}

double mshg_eta(cplx z, const TregTable& t, const WChart& chart) {
  const cplx w = w_of_z(z, chart);
  const GlmState st = glm_solve(w, t, chart);
  const cplx p = cpow(z, 2 * chart.alpha) + std::pow(chart.s, 2 * chart.alpha);
  return st.eta_hat + 0.5 * std::log(std::abs(p));
}

}  // namespace sgq
