#include "sgq/shg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sgq/kernels.hpp"

namespace sgq {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0, 1);

// log(1 + e^{-e}) without overflow
cplx log1p_exp_neg(cplx e) {
  if (e.real() < -30) return -e + std::log(1.0 + std::exp(e));
  return std::log(1.0 + std::exp(-e));
}

double abs_a(double nu) {
  const double q = 1 / nu;
  return pi / 2 - pi * std::min(q, 1 - q);
}
}  // namespace

RapidityGrid shg_grid(double rhat, int npts) {
  if (!(rhat > 0)) throw ParamError("rhat must be > 0");
  return RapidityGrid(std::max(12.0, std::log(20 / rhat) + 2), npts);
}

ShgVacuum solve_tba(const ShgParams& p, const RapidityGrid& g, const TbaOptions& o) {
  if (!(p.nu > 1)) throw ParamError("TBA needs nu > 1");
  if (!(p.rhat > 0)) throw ParamError("TBA needs rhat > 0");
  ShgVacuum v;
  v.params = p;
  v.grid = g;
  v.C0 = 2 * p.rhat / std::sin(pi / p.nu);
  const int n = g.n;
  const double nu = p.nu;
  const ConvKernel K(g, [nu](double x) { return cplx(phi_kernel(x, nu) / (2 * pi), 0); });
  rvec drv(n);
  for (int i = 0; i < n; ++i) drv[i] = 8 * p.rhat * std::cosh(g.node(i));
  rvec eps = drv;
  cvec L(n);
  rvec hist;
  double d = 0;
  int it = 0;
  for (; it < o.max_iter; ++it) {
    for (int i = 0; i < n; ++i) L[i] = std::log1p(std::exp(-eps[i]));
    const cvec c = K.apply(L);
    d = 0;
    for (int i = 0; i < n; ++i) {
      const double e = drv[i] - c[i].real();
      d = std::max(d, std::abs(e - eps[i]) / (1 + std::abs(eps[i])));
      eps[i] = e;
    }
    hist.push_back(d);
    if (d < o.tol) break;
  }
  if (!(d < o.tol)) {
    std::ostringstream os;
    os << "TBA did not converge after " << o.max_iter << " iterations; last residuals:";
    for (std::size_t i = hist.size() > 5 ? hist.size() - 5 : 0; i < hist.size(); ++i) os << ' ' << hist[i];
    throw SolveError(os.str());
  }
  v.eps = eps;
  v.L.resize(n);
  for (int i = 0; i < n; ++i) v.L[i] = std::log1p(std::exp(-eps[i]));
  v.residual = d;
  v.iterations = it + 1;
  return v;
}

cplx ShgVacuum::log_q(cplx z) const {
  if (std::abs(z.imag()) >= pi / 2) throw ParamError("log Q: |Im theta| must be < pi/2");
  const double h = grid.spacing();
  cplx acc = 0;
  for (int j = 0; j < grid.n; ++j)
    if (L[j] > 1e-300) acc += L[j] * sech(z - grid.node(j));
  return -4 * params.rhat * std::cosh(z) / std::sin(pi / params.nu) + acc * h / (2 * pi);
}

double ShgVacuum::eps_strip() const { return pi / 2 - abs_a(params.nu); }

cplx ShgVacuum::eps_c(cplx z) const {
  if (std::abs(z.imag()) >= eps_strip()) throw ParamError("eps continuation outside its strip");
  const double h = grid.spacing();
  cplx acc = 0;
  for (int j = 0; j < grid.n; ++j)
    if (L[j] > 1e-300) acc += L[j] * phi_kernel(z - grid.node(j), params.nu);
  return 8 * params.rhat * std::cosh(z) - acc * h / (2 * pi);
}

std::pair<cplx, cplx> ShgVacuum::t_log_terms(int sign, cplx z) const {
  const double nu = params.nu;
  const double y = sign > 0 ? pi / nu : pi * (nu - 1) / nu;
  const double margin = 0.02;
  const cplx L0 = log_q(z);
  if (std::abs(z.imag()) + y < pi / 2 - margin)
    return {log_q(z + I * y) - L0, log_q(z - I * y) - L0};
  // Q(z + iy) = (1 + e^{-eps(z + i(y - pi/2))}) / Q(z - i(pi - y))
  const double c = y - pi / 2, b = pi - y;
  const cplx ta = log1p_exp_neg(eps_c(z + I * c)) - log_q(z - I * b) - L0;
  const cplx tb = log1p_exp_neg(eps_c(z - I * c)) - log_q(z + I * b) - L0;
  return {ta, tb};
}

double ShgVacuum::t_pm(int sign, double theta) const {
  const auto [a, b] = t_log_terms(sign, theta);
  return (std::exp(a) + std::exp(b)).real();
}

ShgVacuum ShgVacuum::dual() const {
  ShgVacuum d = *this;
  d.params = dual_map(params);
  d.C0 = 2 * d.params.rhat / std::sin(pi / d.params.nu);
  return d;
}

double shg_wronskian_defect(const ShgVacuum& v, double theta) {
  const double a = pi * (v.params.nu - 2) / (2 * v.params.nu);
  const int i = int(std::lround((theta + v.grid.half_width) / v.grid.spacing()));
  const double t = v.grid.node(i);
  const cplx qq = std::exp(v.log_q(cplx(t, a)) + v.log_q(cplx(t, -a)));
  return std::abs(1.0 + std::exp(-v.eps[i]) - qq - 1.0);
}

std::pair<double, double> im_quantum(const ShgVacuum& v, int n) {
  if (n < 1) throw ParamError("IM index must be >= 1");
  const int w = 2 * n - 1;
  rvec yp(v.grid.n), ym(v.grid.n);
  for (int i = 0; i < v.grid.n; ++i) {
    const double t = v.grid.node(i);
    yp[i] = std::exp(w * t) * v.L[i];
    ym[i] = std::exp(-w * t) * v.L[i];
  }
  const double sg = (n % 2) ? -1.0 : 1.0;
  const double c0 = n == 1 ? v.C0 : 0.0;
  const double h = v.grid.spacing();
  return {c0 + sg * trapezoid(yp, h) / pi, c0 + sg * trapezoid(ym, h) / pi};
}

double gd_polynomial(int n, const std::array<double, 5>& j) {
  const double u = j[0], u1 = j[1], u2 = j[2], u4 = j[4];
  switch (n) {
    case 0:
      return 1;
    case 1:
      return u / 2;
    case 2:
      return 3 * u * u / 8 - u2 / 8;
    case 3:
      return 5 * u * u * u / 16 - 5 * u1 * u1 / 32 - 5 * u * u2 / 16 + u4 / 32;
    default:
      throw ParamError("Gel'fand-Dikii polynomials are provided for n <= 3");
  }
}

ShgField::ShgField(const ShgVacuum& v, double ht, double t_max) : ht_(ht) {
  double nu = v.params.nu;
  if (std::abs(nu - 2) < 1e-9) throw ParamError("field reconstruction is not available at the self-dual point nu = 2");
  if (nu < 2) {
    flip_ = true;
    v_ = std::make_shared<ShgVacuum>(v.dual());
    nu = v_->params.nu;
  } else {
    v_ = std::make_shared<ShgVacuum>(v);
  }
  const double dmax = std::min(pi / 2 - pi / nu, 2 * pi / nu - pi / 2) - 0.05;
  delta0_ = std::min(pi / 8, dmax);
  if (delta0_ < 0.05) throw ParamError("field reconstruction needs 4/3 < nu < 4");
  const int m = int(std::lround(t_max / ht));
  for (int i = -m; i <= m; ++i) {
    const double t = i * ht;
    t_.push_back(t);
    theta_.push_back(std::asinh(t));
    wt_.push_back(ht / std::sqrt(1 + t * t));
  }
  for (int side = 0; side < 2; ++side)
    for (int c = 0; c < 2; ++c) {
      const double y = c == 0 ? -delta0_ : delta0_;
      for (int term = 0; term < 2; ++term) terms_[side][c][term].resize(theta_.size());
      for (std::size_t i = 0; i < theta_.size(); ++i) {
        const auto [a, b] = v_->t_log_terms(side == 0 ? 1 : -1, cplx(theta_[i], y));
        terms_[side][c][0][i] = a;
        terms_[side][c][1][i] = b;
      }
    }
}

double ShgField::eta_hat(cplx w) const {
  if (flip_) w = -w;
  return eval(w, w.real() >= 0 ? 0 : 1);
}

double ShgField::eval(cplx w, int side) const {
  const ShgParams& p = v_->params;
  const double tq = std::tan(pi / (2 * p.nu));
  const cplx ws = side == 0 ? p.rhat * tq + w : p.rhat / tq - w;
  const cplx wsb = std::conj(ws);
  const std::size_t n = theta_.size();
  std::array<cplx, 2> dz = {cplx(0, -delta0_), cplx(0, delta0_)};
  auto ex = [&](int c, std::size_t i) {
    const cplx z = theta_[i] + dz[c];
    return -2.0 * ws * std::exp(z) - 2.0 * wsb * std::exp(-z);
  };
  // each term goes on the contour where it decays
  double best = 1e300;
  int ia = 0;
  for (int cand = 0; cand < 2; ++cand) {
    double mx = -1e300;
    for (std::size_t i : {std::size_t(0), n - 1}) {
      mx = std::max(mx, (terms_[side][0][cand][i] + ex(0, i)).real());
      mx = std::max(mx, (terms_[side][1][1 - cand][i] + ex(1, i)).real());
    }
    if (mx < best) best = mx, ia = cand;
  }
  std::vector<cplx> Z, DW;
  rvec logs(2 * n);
  double top = -1e300;
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      const int term = c == 0 ? ia : 1 - ia;
      const double l = (terms_[side][c][term][i] + ex(c, i)).real() + std::log(wt_[i]);
      logs[c * n + i] = l;
      top = std::max(top, l);
    }
  if (best > top - 36) throw ParamError("w outside the reconstruction domain of the sinh-Gordon field");
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < n; ++i)
      if (logs[c * n + i] > top - 40 && logs[c * n + i] > -700) {
        const int term = c == 0 ? ia : 1 - ia;
        Z.push_back(theta_[i] + dz[c]);
        DW.push_back(std::exp(terms_[side][c][term][i] + ex(c, i)) * wt_[i]);
      }
  const int m = int(Z.size());
  if (m == 0) return 0.0;
  Eigen::MatrixXcd M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M(i, j) = sech((Z[i] - Z[j]) / 2.0) * DW[j] / (4 * pi);
  const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(m, m);
  const cplx lp = std::log((Id + M).partialPivLu().determinant());
  const cplx lm = std::log((Id - M).partialPivLu().determinant());
  return (lp - lm).real();
}

ClassicalIm im_classical_field(const ShgVacuum& v, double hx, double x_max) {
  const ShgField F(v);
  ClassicalIm out;
  const int m = int(std::lround(x_max / hx));
  const int pad = 4;
  rvec eta;
  for (int i = -m - pad; i <= m + pad; ++i) eta.push_back(F.eta_hat(cplx(i * hx, 0)));
  static const double d1[9] = {1. / 280, -4. / 105, 1. / 5, -4. / 5, 0, 4. / 5, -1. / 5, 4. / 105, -1. / 280};
  static const double d2[9] = {-1. / 560, 8. / 315, -1. / 5, 8. / 5, -205. / 72, 8. / 5, -1. / 5, 8. / 315, -1. / 560};
  double acc = 0;
  for (int i = pad; i < int(eta.size()) - pad; ++i) {
    double e1 = 0, e2 = 0;
    for (int k = 0; k < 9; ++k) {
      e1 += d1[k] * eta[i - pad + k];
      e2 += d2[k] * eta[i - pad + k];
    }
    e1 /= hx;
    e2 /= hx * hx;
    const double e = eta[i];
    // on the real line eta_yy follows from the field equation
    const double dw2 = 0.5 * e2 - 2 * std::sinh(2 * e);
    const double u = 0.25 * e1 * e1 - dw2;
    const double P2 = gd_polynomial(1, {u, 0, 0, 0, 0});
    const double R0 = std::exp(-2 * e) * gd_polynomial(0, {u, 0, 0, 0, 0}) - 1;
    acc += (P2 + R0) * hx;
    out.x.push_back((i - pad - m) * hx);
    out.eta.push_back(e);
  }
  out.integral = acc;
  out.c1i1 = v.C0 - acc;
  out.eta_left = eta.front();
  out.eta_right = eta.back();
  return out;
}

namespace {
// Gauss series, |x| < 1
cplx f21_series(double a, double b, double c, cplx x) {
  cplx term = 1, sum = 1;
  for (int n = 0; n < 20000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// 2F1(-1/2, b; b+1; x) with x = -(z/s)^{-2nu}, lx = log(-x)
cplx f21_w(double nu, cplx x, cplx lx) {
  const double a = -0.5, b = -1 / (2 * nu), c = 1 + b;
  if (std::abs(x) <= 0.9) return f21_series(a, b, c, x);
  if (std::abs(1.0 - x) <= 0.9) {
    const double g1 = std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
    const double g2 = std::tgamma(c) * std::tgamma(a + b - c) / (std::tgamma(a) * std::tgamma(b));
    return g1 * f21_series(a, b, a + b - c + 1, 1.0 - x) +
           std::pow(1.0 - x, c - a - b) * g2 * f21_series(c - a, c - b, c - a - b + 1, 1.0 - x);
  }
  if (std::abs(x) >= 1.1) {
    const double g1 = std::tgamma(c) * std::tgamma(b - a) / (std::tgamma(b) * std::tgamma(c - a));
    const double g2 = std::tgamma(c) * std::tgamma(a - b) / (std::tgamma(a) * std::tgamma(c - b));
    // the second series is identically 1 since b - c + 1 = 0
    return g1 * std::exp(-a * lx) * f21_series(a, a - c + 1, a - b + 1, 1.0 / x) + g2 * std::exp(-b * lx);
  }
  return std::nan("");
}

cplx shg_sqrt_p(cplx z, const ShgParams& p) {
  const cplx x = -std::exp(-2 * p.nu * std::log(z / p.s));
  return std::pow(p.s, -p.nu) * std::sqrt(1.0 - x);
}
}  // namespace

cplx shg_w_quadrature(cplx z1, cplx z2, const ShgParams& p) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const cplx d = z2 - z1;
  auto re = [&](double t) { return (shg_sqrt_p(z1 + t * d, p) * d).real(); };
  auto im = [&](double t) { return (shg_sqrt_p(z1 + t * d, p) * d).imag(); };
  return {GK::integrate(re, 0.0, 1.0, 20, 1e-14), GK::integrate(im, 0.0, 1.0, 20, 1e-14)};
}

cplx shg_w_of_z(cplx z, const ShgParams& p) {
  const double nu = p.nu;
  if (z == 0.0) throw ParamError("w(z) is singular at the apex");
  if (std::abs(std::arg(z)) > pi / (2 * nu) + 1e-12) throw ParamError("z outside the chart |arg z| <= pi/(2 nu)");
  const double base = -p.rhat / std::tan(pi / (2 * nu));
  const cplx lx = -2 * nu * std::log(z / p.s);
  const cplx x = -std::exp(lx);
  const cplx f = f21_w(nu, x, lx);
  if (!std::isnan(f.real())) return base + z * std::pow(p.s, -nu) * f;
  // ring around |x| = 1 away from x = 1: step radially to a regular point
  const double lam = std::pow(std::abs(x) / 0.8, 1 / (2 * nu));
  const cplx z1 = z * lam;
  const cplx lx1 = -2 * nu * std::log(z1 / p.s);
  const cplx w1 = base + z1 * std::pow(p.s, -nu) * f21_w(nu, -std::exp(lx1), lx1);
  return w1 + shg_w_quadrature(z1, z, p);
}

}  // namespace sgq
