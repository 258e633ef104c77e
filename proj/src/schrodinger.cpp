#include "sgq/schrodinger.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace sgq {

namespace {
using State = std::array<double, 2>;
namespace ode = boost::numeric::odeint;

void check(double alpha, double l) {
  if (!(alpha >= 1)) throw ParamError("oscillator needs alpha >= 1");
  if (!(l > -1.5)) throw ParamError("oscillator needs l > -3/2");
}

// phi = psi / x^{l+1}: phi'' + 2(l+1)/x phi' = (x^{2 alpha} - E) phi
struct Reduced {
  double alpha, l, E;
  void operator()(const State& y, State& dy, double x) const {
    dy[0] = y[1];
    dy[1] = (std::pow(x, 2 * alpha) - E) * y[0] - 2 * (l + 1) / x * y[1];
  }
};

struct Full {
  double alpha, l, E;
  void operator()(const State& y, State& dy, double x) const {
    dy[0] = y[1];
    dy[1] = (l * (l + 1) / (x * x) + std::pow(x, 2 * alpha) - E) * y[0];
  }
};

// series phi = sum c_ij x^{2i + (2 alpha + 2) j}
State series(double alpha, double l, double E, double x) {
  constexpr int N = 12;
  double c[N + 1][N + 1] = {};
  c[0][0] = 1;
  double f = 0, df = 0;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) {
      const double p = 2 * i + (2 * alpha + 2) * j;
      if (i + j > 0) {
        double num = 0;
        if (i > 0) num -= E * c[i - 1][j];
        if (j > 0) num += c[i][j - 1];
        c[i][j] = num / (p * (p + 2 * l + 1));
      }
      f += c[i][j] * std::pow(x, p);
      if (p > 0) df += c[i][j] * p * std::pow(x, p - 1);
    }
  return {f, df};
}

struct Setup {
  double x0, xm, xr;
};

Setup setup(double alpha, double E, const ShootingOptions& o) {
  const double Ep = std::max(E, 1.0);
  Setup s;
  s.x0 = 0.02 / std::sqrt(Ep);
  // right end where the WKB action past the turning point reaches o.tail
  const double xt = std::pow(Ep, 1 / (2 * alpha));
  double x = xt, act = 0;
  const double dx = 0.01 * xt;
  while (act < o.tail || std::pow(x, 2 * alpha) < Ep + o.tail) {
    act += dx * std::sqrt(std::pow(x + 0.5 * dx, 2 * alpha) - Ep);
    x += dx;
  }
  s.xr = x;
  s.xm = std::clamp(o.match_scale * std::pow(Ep, 1 / (2 * alpha)), 2 * s.x0, 0.9 * s.xr);
  return s;
}

auto stepper(const ShootingOptions& o) {
  return ode::make_controlled(o.ode_tol, o.ode_tol, ode::runge_kutta_dopri5<State>());
}

// (psi, psi') of the regular solution at xm, scaled to unit norm
State left(double alpha, double l, double E, const Setup& s, const ShootingOptions& o, int* nodes = nullptr,
           double x_end = 0) {
  State y = series(alpha, l, E, s.x0);
  const double xe = x_end > 0 ? x_end : s.xm;
  int cnt = 0;
  double prev = y[0];
  auto obs = [&](const State& st, double) {
    if (st[0] * prev < 0) ++cnt;
    if (st[0] != 0) prev = st[0];
  };
  ode::integrate_adaptive(stepper(o), Reduced{alpha, l, E}, y, s.x0, xe, 1e-3 * (xe - s.x0), obs);
  if (nodes) *nodes = cnt;
  const double x = xe;
  const double psi = y[0], dpsi = (l + 1) / x * y[0] + y[1];
  const double n = std::hypot(psi, dpsi);
  return {psi / n, dpsi / n};
}

State right(double alpha, double l, double E, const Setup& s, const ShootingOptions& o) {
  const double x = s.xr;
  const double V = l * (l + 1) / (x * x) + std::pow(x, 2 * alpha) - E;
  const double dV = -2 * l * (l + 1) / (x * x * x) + 2 * alpha * std::pow(x, 2 * alpha - 1);
  State y = {1.0, -std::sqrt(V) - dV / (4 * V)};
  ode::integrate_adaptive(stepper(o), Full{alpha, l, E}, y, s.xr, s.xm, -1e-3 * (s.xr - s.xm));
  const double n = std::hypot(y[0], y[1]);
  return {y[0] / n, y[1] / n};
}
}  // namespace

double matching_wronskian(double alpha, double l, double E, const ShootingOptions& o) {
  check(alpha, l);
  const Setup s = setup(alpha, E, o);
  const State a = left(alpha, l, E, s, o), b = right(alpha, l, E, s, o);
  return a[0] * b[1] - a[1] * b[0];
}

int node_count(double alpha, double l, double E, const ShootingOptions& o) {
  check(alpha, l);
  const Setup s = setup(alpha, E, o);
  int n = 0;
  left(alpha, l, E, s, o, &n, s.xr);
  return n;
}

OscillatorSpectrum eigenvalues_shooting(double alpha, double l, int n_max, const ShootingOptions& o) {
  check(alpha, l);
  if (n_max < 0) throw ParamError("n_max must be >= 0");
  OscillatorSpectrum sp;
  sp.alpha = alpha;
  sp.l = l;
  double lo = 0;
  for (int n = 0; n <= n_max; ++n) {
    // bracket by node count
    double hi = std::max(2 * lo, lo + 4.0);
    while (node_count(alpha, l, hi, o) <= n) {
      lo = hi;
      hi *= 2;
    }
    double a = lo, b = hi;
    while (b - a > 1e-3 * b) {
      const double c = 0.5 * (a + b);
      (node_count(alpha, l, c, o) <= n ? a : b) = c;
    }
    // Wronskian sign bisection inside the bracket
    double wa = matching_wronskian(alpha, l, a, o);
    const double wb = matching_wronskian(alpha, l, b, o);
    if (wa * wb > 0) throw SolveError("eigenvalue bracket lost for n=" + std::to_string(n));
    for (int it = 0; it < 200 && b - a > o.rel_acc * b; ++it) {
      const double c = 0.5 * (a + b);
      const double wc = matching_wronskian(alpha, l, c, o);
      if (wc * wa > 0)
        a = c, wa = wc;
      else
        b = c;
    }
    const double E = 0.5 * (a + b);
    sp.E.push_back(E);
    const Setup s = setup(alpha, E, o);
    int nodes = 0;
    left(alpha, l, E, s, o, &nodes, s.xm);
    sp.nodes.push_back(nodes);
    lo = E * (1 + 1e-6);
  }
  return sp;
}

CftMatch match_cft_zeros(const ZeroSet& z, const ModelParams& p, const OscillatorSpectrum& sp) {
  if (std::abs(sp.l - p.l()) > 1e-12 || std::abs(sp.alpha - p.alpha) > 1e-12)
    throw ParamError("oscillator spectrum does not match the model parameters");
  CftMatch m;
  for (std::size_t n = 0; n < sp.E.size(); ++n) {
    auto it = z.E_plus.find(int(n));
    if (it == z.E_plus.end()) break;
    m.E_zero.push_back(it->second);
    m.E_osc.push_back(sp.E[n]);
    m.deviation.push_back(std::abs(it->second / sp.E[n] - 1));
  }
  return m;
}

CftMatch extrapolate_cft(const CftMatch& a, double sa, const CftMatch& b, double sb, double power) {
  const double xa = std::pow(sa, power), xb = std::pow(sb, power);
  if (!(xa != xb)) throw ParamError("extrapolation needs two distinct s values");
  CftMatch m;
  const std::size_t n = std::min(a.E_zero.size(), b.E_zero.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double e = (b.E_zero[i] * xa - a.E_zero[i] * xb) / (xa - xb);
    m.E_zero.push_back(e);
    m.E_osc.push_back(a.E_osc[i]);
    m.deviation.push_back(std::abs(e / a.E_osc[i] - 1));
  }
  return m;
}

}  // namespace sgq
