#include "sgq/qt.hpp"

#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_psi.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sgq {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0, 1);
constexpr int kTailTerms = 200000;
constexpr int kPowers = 59;

// zeta(e, a) with underflow mapped to 0
double hzeta(double e, double a) {
  static const bool off = (gsl_set_error_handler_off(), true);
  (void)off;
  gsl_sf_result res;
  const int st = gsl_sf_hzeta_e(e, a, &res);
  if (st == GSL_EUNDRFLW) return 0.0;
  if (st) throw SolveError("Hurwitz zeta failed");
  return res.val;
}
}  // namespace

ZeroSet find_zeros(const CountingFunction& cf, int n_lo, int n_hi) {
  if (n_hi < n_lo) throw ParamError("empty zero range");
  const double W = cf.grid.half_width;
  const double lo = cf.eps_at(-W), hi = cf.eps_at(W);
  ZeroSet z;
  z.n_min = n_lo;
  z.n_max = n_hi;
  const double r = cf.params.r, k = cf.params.k;
  const double p = 2 * cf.params.alpha / (cf.params.alpha + 1);
  const double s2a = std::pow(cf.params.s, 2 * cf.params.alpha);
  auto f = [&](double t) { return cf.eps_at(t); };
  for (int n = n_lo; n <= n_hi; ++n) {
    const double tgt = pi * (2 * n + 1);
    if (!(tgt > lo && tgt < hi))
      throw ParamError("zero n=" + std::to_string(n) + " lies outside the grid; increase the grid half-width");
    const double g = std::asinh((tgt + 2 * pi * k) / r);
    double a = std::max(-W, g - 3), b = std::min(W, g + 3);
    if (!(f(a) < tgt && f(b) > tgt)) a = -W, b = W;
    const double th = root_solve(f, tgt, a, b, 1e-15, 1e-14).x;
    z.theta.push_back(th);
    if (n >= 0)
      z.E_plus[n] = s2a * std::exp(p * th);
    else
      z.E_minus[-n - 1] = s2a * std::exp(-p * th);
  }
  return z;
}

ZeroSet find_zeros(const CountingFunction& cf, double margin) {
  const double T = cf.grid.half_width - margin;
  const int nmax = int(std::floor((cf.eps_at(T) / pi - 1) / 2));
  const int nmin = int(std::ceil((cf.eps_at(-T) / pi - 1) / 2));
  return find_zeros(cf, nmin, nmax);
}

double reflection_log_s(const CountingFunction& cf) {
  rvec y(cf.ell.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = cf.ell[i].imag();
  return cf.params.alpha / pi * trapezoid(y, cf.grid.spacing());
}

double eta0_from_s(double log_s, double k) {
  if (!(k > 0 && k < 0.5)) return std::nan("");
  return log_s - std::lgamma(2 * k) + std::lgamma(1 - 2 * k) - (4 * k - 1) * std::log(2.0);
}

cvec q_central_integral(const CountingFunction& cf) {
  const RapidityGrid& g = cf.grid;
  const double a = cf.params.alpha, gam = cf.gamma;
  const double strip = pi * (a + 1) / (2 * a);
  FKernel F(a, gam, nu_points(40.0 / (strip - gam), 2 * g.half_width));
  cvec s1 = F.samples(g, cplx(0, -gam)), s2 = F.samples(g, cplx(0, gam));
  std::reverse(s1.begin(), s1.end());
  std::reverse(s2.begin(), s2.end());
  const ConvKernel K1(g, s1), K2(g, s2);
  cvec lc(cf.ell.size());
  for (std::size_t i = 0; i < lc.size(); ++i) lc[i] = std::conj(cf.ell[i]);
  const cvec A = K1.apply(cf.ell), B = K2.apply(lc);
  cvec J(A.size());
  for (std::size_t i = 0; i < J.size(); ++i) J[i] = A[i] - B[i];
  return J;
}

cvec q_central(const CountingFunction& cf) {
  const cvec J = q_central_integral(cf);
  const double a = cf.params.alpha;
  const double c = std::cos(pi / (2 * a));
  if (std::abs(c) < 1e-12) throw ParamError("central-line driving term is singular at alpha = 1");
  const double hls = 0.5 * reflection_log_s(cf);
  cvec out(J.size());
  for (std::size_t i = 0; i < J.size(); ++i)
    out[i] = cf.params.r * std::cosh(cf.grid.node(int(i))) / (2 * c) + I * pi * cf.params.k + hls + J[i];
  return out;
}

QFunction QFunction::build(const ModelParams& p, const RapidityGrid& g, const DdvOptions& o) {
  bool flip = false;
  ModelParams pr = p;
  pr.k = reduce_k(p.k, flip);
  QFunction q(solve_ddv(pr, g, o));
  q.k_orig_ = p.k;
  q.flip_ = flip;
  return q;
}

QFunction::QFunction(const CountingFunction& cf) : cf_(std::make_shared<CountingFunction>(cf)) {
  const ModelParams& P = cf.params;
  if (!(P.alpha > 1)) throw ParamError("product representation requires alpha > 1");
  if (!(P.k >= 0 && P.k <= 0.5)) throw ParamError("product representation is built at k in [0, 1/2]");
  k_orig_ = P.k;
  const double a = P.alpha, k = P.k, r = P.r;
  p_ = 2 * a / (a + 1);
  s2a_ = std::pow(P.s, 2 * a);
  zeros_ = find_zeros(cf);

  // explicit zeros, then the edge tail model
  const double cp = cf.c_plus(), cm = cf.c_minus();
  Ep_.resize(kTailTerms);
  Em_.resize(kTailTerms);
  for (int n = 0; n < kTailTerms; ++n) {
    auto ip = zeros_.E_plus.find(n);
    if (ip != zeros_.E_plus.end()) {
      Ep_[n] = ip->second;
    } else {
      const double Y = pi * (2 * n + 1) + 2 * pi * k;
      const double X = (Y + std::sqrt(Y * Y + 2 * r * (r / 2 - cp))) / r;
      Ep_[n] = s2a_ * std::pow(X, p_);
    }
    auto im = zeros_.E_minus.find(n);
    if (im != zeros_.E_minus.end()) {
      Em_[n] = im->second;
    } else {
      const double Y = pi * (2 * n + 1) - 2 * pi * k;
      const double X = (Y + std::sqrt(Y * Y + 2 * r * (r / 2 + cm))) / r;
      Em_[n] = s2a_ * std::pow(X, p_);
    }
  }

  // normalization prefactor and reflection factor from the products
  const double c = 2 * pi / P.B;
  double lc = 0, ls = 0, lq = 0;
  for (int n = 0; n < kTailTerms; ++n) {
    lq = 0.5 * (std::log(Ep_[n]) + std::log(Em_[n])) - p_ * std::log(c * (2 * n + 1));
    lc += lq;
    ls += std::log(Em_[n]) - std::log(Ep_[n]) + 2 * p_ * k / (n + 1);
  }
  const double M = kTailTerms - 1;
  log_c_ = 0.5 * p_ * std::log(2.0) + lc + lq * M * M / (M + 0.5);
  const double Mt = kTailTerms;
  const double tail = (k > 0 ? p_ * gsl_sf_lnpoch(Mt + 0.5 - k, 2 * k) : 0.0) - 2 * p_ * k * gsl_sf_psi(Mt + 1);
  log_s_prod_ = -2 * p_ * k * std::log(r * std::exp(0.57721566490153286061) / (4 * pi)) + ls + tail;

  // tail power sums S_j(N) = sum_{n >= N} E_n^{-j} at checkpoints
  for (int cpt = 16; cpt < kTailTerms / 2; cpt *= 2) checkpoints_.push_back(cpt);
  Sp_.assign(checkpoints_.size(), rvec(kPowers, 0.0));
  Sm_.assign(checkpoints_.size(), rvec(kPowers, 0.0));
  rvec accp(kPowers), accm(kPowers);
  for (int j = 1; j <= kPowers; ++j) {
    const double e = p_ * j;
    const double sc = std::pow(2 * c, -e);
    accp[j - 1] = sc * hzeta(e, Mt + k + 0.5);
    accm[j - 1] = sc * hzeta(e, Mt - k + 0.5);
  }
  int ci = int(checkpoints_.size()) - 1;
  for (int n = kTailTerms - 1; n >= 0 && ci >= 0; --n) {
    const double ip = 1 / Ep_[n], im = 1 / Em_[n];
    double xp = ip, xm = im;
    for (int j = 0; j < kPowers; ++j) {
      accp[j] += xp;
      accm[j] += xm;
      xp *= ip;
      xm *= im;
    }
    if (n == checkpoints_[ci]) {
      Sp_[ci] = accp;
      Sm_[ci] = accm;
      --ci;
    }
  }
}

double QFunction::log_s() const {
  const double v = reflection_log_s(*cf_);
  return flip_ ? -v : v;
}

double QFunction::log_s_product() const { return flip_ ? -log_s_prod_ : log_s_prod_; }

int QFunction::explicit_factors(cplx theta) const {
  const cplx x = p_ * theta;
  const double au = s2a_ * std::exp(x.real()), av = s2a_ * std::exp(-x.real());
  for (std::size_t c = 0; c < checkpoints_.size(); ++c) {
    const int N = checkpoints_[c];
    if (au <= 0.5 * Ep_[N] && av <= 0.5 * Em_[N]) return int(c);
  }
  throw ParamError("Q evaluated too far from the origin for the product tail");
}

cplx QFunction::log_q_reduced(cplx theta) const {
  const int c = explicit_factors(theta);
  const int N = checkpoints_[c];
  const cplx x = p_ * theta;
  const cplx u = s2a_ * std::exp(x), v = s2a_ * std::exp(-x);
  cplx L = log_c_ + cf_->params.k * x;
  for (int n = 0; n < N; ++n) L += std::log(1.0 - u / Ep_[n]) + std::log(1.0 - v / Em_[n]);
  cplx uj = 1, vj = 1;
  for (int j = 1; j <= kPowers; ++j) {
    uj *= u;
    vj *= v;
    L -= (uj * Sp_[c][j - 1] + vj * Sm_[c][j - 1]) / double(j);
  }
  return L;
}

cplx QFunction::log_q(cplx theta) const { return flip_ ? log_q_reduced(-theta) : log_q_reduced(theta); }

cplx wronskian(const QFunction& q, cplx theta) {
  const cplx d(0, pi / (2 * q.params().alpha));
  return std::exp(q.log_q(theta + d) + q.log_q(-(theta - d))) - std::exp(q.log_q(theta - d) + q.log_q(-(theta + d)));
}

TFunctions::TFunctions(const ModelParams& p, const RapidityGrid& g, const DdvOptions& o) : params_(p) {
  q_.push_back(std::make_shared<QFunction>(QFunction::build(p, g, o)));
  const double kr = q_[0]->k_reduced();
  const double h = 1e-4;
  if (kr < 1e-7 || 0.5 - kr < 1e-7) {
    degenerate_ = true;
    const double base = kr < 0.25 ? 0.0 : 0.5, sg = kr < 0.25 ? 1.0 : -1.0;
    for (int m = 1; m <= 2; ++m) {
      ModelParams pm = p;
      pm.k = base + sg * m * h;
      q_.push_back(std::make_shared<QFunction>(QFunction::build(pm, g, o)));
    }
  }
}

cplx TFunctions::t_single(const QFunction& q, double j, cplx theta) const {
  const cplx d(0, pi * (2 * j + 1) / (2 * params_.alpha));
  const double sk = std::sin(2 * pi * q.k());
  const cplx a = std::exp(q.log_q(theta - d) + q.log_q(-(theta + d)));
  const cplx b = std::exp(q.log_q(theta + d) + q.log_q(-(theta - d)));
  return I / (2 * sk) * (a - b);
}

cplx TFunctions::t(double j, cplx theta) const {
  if (j == 0) return 1.0;
  if (j == -0.5) return 0.0;
  if (!degenerate_) return t_single(*q_[0], j, theta);
  return (4.0 * t_single(*q_[1], j, theta) - t_single(*q_[2], j, theta)) / 3.0;
}

cplx TFunctions::t_half_tq(cplx theta) const {
  const QFunction& q = *q_[0];
  const cplx d(0, pi / params_.alpha);
  const cplx L0 = q.log_q(theta);
  return std::exp(q.log_q(theta + d) - L0) + std::exp(q.log_q(theta - d) - L0);
}

cplx TFunctions::treg(double theta) const {
  return t(0.5, theta) * std::exp(-params_.r * std::tan(pi / (2 * params_.alpha)) * std::cosh(theta));
}

cplx TFunctions::treg_line(double x) const {
  const double a = params_.alpha;
  return treg_at(cplx(x, pi * (a + 1) / (2 * a)));
}

cplx TFunctions::treg_at(cplx z) const {
  const QFunction& q = *q_[0];
  const double a = params_.alpha;
  const cplx d(0, pi / a);
  const cplx reg = -params_.r * std::tan(pi / (2 * a)) * std::cosh(z);
  const cplx L0 = q.log_q(z);
  return std::exp(q.log_q(z + d) - L0 + reg) + std::exp(q.log_q(z - d) - L0 + reg);
}

int truncation_index(double alpha) {
  if (std::abs(alpha - std::round(alpha)) < 1e-12) return int(std::lround(alpha + 1));
  if (std::abs(2 * alpha - std::round(2 * alpha)) < 1e-12) return int(std::lround(2 * (alpha + 1)));
  return 0;
}

double FunctionalReport::worst() const { return std::max({tq, fusion, truncation, ysystem, wronskian}); }

FunctionalReport functional_checks(const TFunctions& T, const rvec& thetas, double j_max) {
  FunctionalReport rep;
  const ModelParams& P = T.params();
  const double a = P.alpha, k = P.k;
  const QFunction& q = T.q();
  const cplx ia(0, pi / a);
  auto rel = [](cplx x, double scale) { return std::abs(x) / std::max(scale, 1e-300); };
  auto upd = [&](const std::string& key, double v) {
    auto& d = rep.detail[key];
    d = std::max(d, v);
  };

  for (double th : thetas) {
    // Baxter equation; points next to a zero of Q are masked
    const cplx Q0 = q.q(th), Qp = q.q(th + ia), Qm = q.q(th - ia);
    const double sc = std::abs(Qp) + std::abs(Qm);
    if (std::abs(Q0) > 1e-8 * sc) rep.tq = std::max(rep.tq, rel(T.t(0.5, th) * Q0 - Qp - Qm, sc));

    for (double j = 0.5; j <= j_max + 1e-9; j += 0.5) {
      const cplx lhs = T.t(0.5, th) * T.t(j, th + cplx(0, pi * (2 * j + 1) / (2 * a)));
      const cplx r1 = T.t(j - 0.5, th + cplx(0, pi * (2 * j + 2) / (2 * a)));
      const cplx r2 = T.t(j + 0.5, th + cplx(0, 2 * j * pi / (2 * a)));
      const double v = rel(lhs - r1 - r2, std::abs(lhs) + std::abs(r1) + std::abs(r2));
      rep.fusion = std::max(rep.fusion, v);
      upd("fusion_j" + std::to_string(int(2 * j)) + "/2", v);
    }

    if (!T.degenerate()) {
      const double w = 2 * std::sin(2 * pi * k);
      rep.wronskian = std::max(rep.wronskian, rel(wronskian(q, th) - cplx(0, w), std::abs(w)));
    }
  }

  const int N = truncation_index(a);
  rep.N = N;
  if (N >= 3) {
    const cplx e2(std::cos(2 * pi * k), std::sin(2 * pi * k));
    const cplx dl(0, pi / (2 * a));
    auto Tj = [&](double j, cplx th) { return T.t(j, th); };
    auto Y = [&](double j, cplx th) { return j <= 0 ? cplx(0) : Tj(j - 0.5, th) * Tj(j + 0.5, th); };
    auto Yb = [&](cplx th) { return Tj(N / 2.0 - 1, th); };
    for (double th : thetas) {
      const cplx tN = Tj(N / 2.0, th), tN1 = Tj(N / 2.0 - 1, th);
      rep.truncation = std::max(rep.truncation, rel(tN - 2 * std::cos(2 * pi * k) - tN1, std::abs(tN) + 2));
      for (double j = 0.5; j <= (N - 3) / 2.0 + 1e-9; j += 0.5) {
        const cplx lhs = Y(j, th + dl) * Y(j, th - dl);
        const cplx rhs = (1.0 + Y(j - 0.5, th)) * (1.0 + Y(j + 0.5, th));
        rep.ysystem = std::max(rep.ysystem, rel(lhs - rhs, std::abs(lhs) + std::abs(rhs)));
      }
      const double jt = N / 2.0 - 1;
      const cplx lhs = Y(jt, th + dl) * Y(jt, th - dl);
      const cplx yb = Yb(th);
      const cplx rhs = (1.0 + Y(jt - 0.5, th)) * (1.0 + e2 * yb) * (1.0 + std::conj(e2) * yb);
      rep.ysystem = std::max(rep.ysystem, rel(lhs - rhs, std::abs(lhs) + std::abs(rhs)));
      const cplx lb = Yb(th + dl) * Yb(th - dl), rb = 1.0 + Y(jt, th);
      rep.ysystem = std::max(rep.ysystem, rel(lb - rb, std::abs(lb) + std::abs(rb)));
    }
  }
  rep.detail["tq"] = rep.tq;
  rep.detail["truncation"] = rep.truncation;
  rep.detail["ysystem"] = rep.ysystem;
  rep.detail["wronskian"] = rep.wronskian;
  return rep;
}

rvec treg_central(const ModelParams& p, const RapidityGrid& g, const DdvOptions& o) {
  ModelParams pm = p;
  pm.k = -p.k;
  const cvec a = q_central_integral(solve_ddv(p, g, o));
  const cvec b = q_central_integral(solve_ddv(pm, g, o));
  rvec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::exp(a[i] + b[i]).real();
  return out;
}

}  // namespace sgq
