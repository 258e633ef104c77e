#include "sgq/ddv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sgq/simd.hpp"

namespace sgq {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0, 1);
}  // namespace

double boundary_log_term(double eps_value, double delta) {
  const double q = 1 - delta;
  return std::atan2(-q * std::sin(eps_value), 1 + q * std::cos(eps_value));
}

CountingFunction solve_ddv(const ModelParams& p, const RapidityGrid& g, const DdvOptions& opt) {
  if (!(p.alpha >= 1)) throw ParamError("DDV requires alpha >= 1");
  if (!(p.r > 0)) throw ParamError("DDV requires r > 0");
  if (!(opt.damping > 0 && opt.damping <= 1)) throw ParamError("damping must lie in (0, 1]");
  const double gmax = std::min(pi / 2, pi / p.alpha);
  const double gam = opt.gamma > 0 ? opt.gamma : gmax / 4;
  if (gam >= gmax / 2) throw ParamError("contour shift too large");

  CountingFunction cf;
  cf.params = p;
  cf.grid = g;
  cf.gamma = gam;
  const int n = g.n;
  const double r = p.r, k = p.k;
  const rvec th = g.nodes();

  const double numax_probe = 40.0 / (pi / p.alpha - 2 * gam);
  GKernel G(p.alpha, 2 * gam, nu_points(numax_probe, 2 * g.half_width));
  const ConvKernel K0(g, G.samples(g, 0.0));
  const ConvKernel K2(g, G.samples(g, cplx(0, -2 * gam)));
  const ConvKernel Kp(g, G.samples(g, cplx(0, gam)));

  cvec drv(n), f(n), l(n), lc(n);
  for (int i = 0; i < n; ++i) drv[i] = r * std::sinh(cplx(th[i], -gam)) - 2 * pi * k;
  f = drv;
  auto ell = [&](const cvec& x, cvec& out) {
    for (int i = 0; i < n; ++i) out[i] = std::log(1.0 + std::exp(-I * x[i]));
  };

  double d = 0;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    ell(f, l);
    for (int i = 0; i < n; ++i) lc[i] = std::conj(l[i]);
    const cvec a = K0.apply(l), b = K2.apply(lc);
    d = 0;
    for (int i = 0; i < n; ++i) {
      const cplx fn = drv[i] + I * a[i] - I * b[i];
      d = std::max(d, std::abs(fn - f[i]) / (1 + std::abs(drv[i])));
      f[i] = opt.damping * fn + (1 - opt.damping) * f[i];
    }
    cf.history.push_back(d);
    if (d < opt.tol) break;
  }
  if (!(d < opt.tol)) {
    std::ostringstream os;
    os << "DDV did not converge after " << opt.max_iter << " iterations; last residuals:";
    for (std::size_t i = cf.history.size() > 5 ? cf.history.size() - 5 : 0; i < cf.history.size(); ++i)
      os << ' ' << cf.history[i];
    throw SolveError(os.str());
  }
  cf.residual = d;
  cf.iterations = it + 1;
  ell(f, l);
  for (int i = 1; i < n; ++i)
    if (std::abs(l[i].imag() - l[i - 1].imag()) > pi / 2)
      throw SolveError("phase jump on the shifted contour; reduce the contour shift");

  const cvec e = Kp.apply(l);
  cf.eps.resize(n);
  cf.conv.resize(n);
  for (int i = 0; i < n; ++i) {
    cf.conv[i] = -2 * e[i].imag();
    cf.eps[i] = r * std::sinh(th[i]) - 2 * pi * k + cf.conv[i];
  }
  cf.f = f;
  cf.ell = l;
  cf.build_continuation();
  return cf;
}

double CountingFunction::strip() const { return ylim_; }

void CountingFunction::build_continuation() {
  const double a = params.alpha;
  const double w = pi / a;
  ylim_ = std::min(pi / 2, w - gamma) - 0.1 * w;
  numax_ = 40.0 / (w - gamma - ylim_);
  const int nnu = nu_points(numax_, 2 * grid.half_width);
  dnu_ = 2 * numax_ / nnu;
  ccoef_.assign(nnu + 1, 0.0);
  if (a == 1.0) return;
  const int n = grid.n;
  const double h = grid.spacing();
  cvec cl(n), ccl(n);
  for (int i = 0; i < n; ++i) {
    cl[i] = h * ell[i];
    ccl[i] = h * std::conj(ell[i]);
  }
  const double t0 = grid.node(0);
  for (int j = 0; j <= nnu; ++j) {
    const double nu = -numax_ + j * dnu_;
    const double wt = (j == 0 || j == nnu) ? 0.5 * dnu_ : dnu_;
    const double gh = wt * g_hat(nu, a) / (2 * pi);
    if (gh == 0) continue;
    const cplx L = simd::cexp_sum(cl.data(), n, t0, h, -nu);
    const cplx Lc = simd::cexp_sum(ccl.data(), n, t0, h, -nu);
    ccoef_[j] = I * gh * (std::exp(-nu * gamma) * L - std::exp(nu * gamma) * Lc);
  }
}

cplx CountingFunction::continue_eps(cplx z) const {
  if (std::abs(z.imag()) > ylim_) throw ParamError("continue_eps: |Im theta| outside the analyticity strip");
  const cplx drv = params.r * std::sinh(z) - 2 * pi * params.k;
  if (params.alpha == 1.0) return drv;
  return drv + simd::cexp_sum(ccoef_.data(), ccoef_.size(), -numax_, dnu_, z);
}

double CountingFunction::c_plus() const {
  const double t = grid.half_width - 1;
  const int i = int(std::lround((t + grid.half_width) / grid.spacing()));
  return conv[i] * std::exp(grid.node(i));
}

double CountingFunction::c_minus() const {
  const double t = -grid.half_width + 1;
  const int i = int(std::lround((t + grid.half_width) / grid.spacing()));
  return conv[i] * std::exp(-grid.node(i));
}

double CountingFunction::eps_at(double theta) const {
  const double drv = params.r * std::sinh(theta) - 2 * pi * params.k;
  const double W = grid.half_width;
  double c;
  if (theta > W)
    c = c_plus() * std::exp(-theta);
  else if (theta < -W)
    c = c_minus() * std::exp(theta);
  else
    c = lagrange(conv, -W, grid.spacing(), theta);
  return drv + c;
}

double CountingFunction::deps_at(double theta) const {
  const double h = 1e-4;
  return (eps_at(theta - 2 * h) - 8 * eps_at(theta - h) + 8 * eps_at(theta + h) - eps_at(theta + 2 * h)) / (12 * h);
}

cplx CountingFunction::tail_integral(double a) const {
  const int n = grid.n;
  cvec y(n);
  for (int i = 0; i < n; ++i) y[i] = std::exp(a * cplx(grid.node(i), -gamma)) * ell[i];
  return trapezoid(y, grid.spacing());
}

bool CountingFunction::monotone() const {
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (!(eps[i] > eps[i - 1])) return false;
  return true;
}

}  // namespace sgq
