#include "sgq/params.hpp"

#include <cmath>
#include <numbers>

namespace sgq {

using std::numbers::pi;

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha))
    throw ParamError("alpha must be >= 1 (got " + std::to_string(alpha) + ")");
}

void check_pos(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ParamError(std::string(name) + " must be positive");
}

void fill(ModelParams& p) {
  const double a = p.alpha;
  p.beta2 = 1.0 / (a + 1.0);
  p.B = b_const(a);
  p.M = p.r / p.R;
  p.m = 2.0 * p.M * std::sin(pi / (2 * a));
  p.rhat = p.m * p.R / 8.0;
  // invert soliton_mass for mu
  const double b2 = p.beta2;
  const double g = 2.0 * std::tgamma(b2 / (2 - 2 * b2)) / (std::sqrt(pi) * std::tgamma(1 / (2 - 2 * b2)));
  const double x = std::pow(p.M / g, 2 - 2 * b2);
  p.mu = x * std::tgamma(b2) / (pi * std::tgamma(1 - b2));
}

}  // namespace

double ModelParams::l() const { return 2 * std::abs(k) - 0.5; }

double b_const(double alpha) {
  const double t = 1.0 / (2 * alpha);
  return 2 * std::sqrt(pi) * std::exp(std::lgamma(1 + t) - std::lgamma(1.5 + t));
}

double soliton_mass(double alpha, double mu) {
  const double b2 = 1.0 / (alpha + 1.0);
  const double g = 2.0 * std::tgamma(b2 / (2 - 2 * b2)) / (std::sqrt(pi) * std::tgamma(1 / (2 - 2 * b2)));
  return g * std::pow(pi * mu * std::tgamma(1 - b2) / std::tgamma(b2), 1 / (2 - 2 * b2));
}

ModelParams derive_from_s(double alpha, double s, double k, double R) {
  check_alpha(alpha);
  check_pos(s, "s");
  check_pos(R, "R");
  ModelParams p;
  p.alpha = alpha;
  p.k = k;
  p.s = s;
  p.R = R;
  p.r = b_const(alpha) * std::pow(s, 1 + alpha);
  fill(p);
  return p;
}

ModelParams derive_from_r(double alpha, double r, double k, double R) {
  check_alpha(alpha);
  check_pos(r, "r");
  check_pos(R, "R");
  ModelParams p;
  p.alpha = alpha;
  p.k = k;
  p.r = r;
  p.R = R;
  p.s = std::pow(r / b_const(alpha), 1 / (1 + alpha));
  fill(p);
  return p;
}

ModelParams derive_from_mu(double alpha, double mu, double R, double k) {
  check_alpha(alpha);
  check_pos(mu, "mu");
  check_pos(R, "R");
  const double b2 = 1.0 / (alpha + 1.0);
  const double s = std::pow(R / (pi * b2), b2) *
                   std::pow(mu * pi * std::tgamma(1 - b2) / std::tgamma(b2), b2 / (2 - 2 * b2));
  ModelParams p = derive_from_s(alpha, s, k, R);
  p.mu = mu;
  return p;
}

double shg_rhat(double nu, double s) {
  return std::pow(pi, 1.5) * nu * std::pow(s, 1 - nu) /
         ((nu - 1) * std::tgamma(1 / (2 * nu)) * std::tgamma((nu - 1) / (2 * nu)));
}

ShgParams shg_from_s(double nu, double s) {
  if (!(nu > 1.0)) throw ParamError("nu must be > 1");
  check_pos(s, "s");
  ShgParams p;
  p.nu = nu;
  p.b2 = 1 / (nu - 1);
  p.s = s;
  p.rhat = shg_rhat(nu, s);
  return p;
}

ShgParams shg_from_rhat(double nu, double rhat) {
  if (!(nu > 1.0)) throw ParamError("nu must be > 1");
  check_pos(rhat, "rhat");
  ShgParams p;
  p.nu = nu;
  p.b2 = 1 / (nu - 1);
  p.rhat = rhat;
  p.s = std::pow(rhat / shg_rhat(nu, 1.0), 1 / (1 - nu));
  return p;
}

ShgParams dual_map(const ShgParams& p) {
  if (!(p.nu > 1.0)) throw ParamError("nu must be > 1");
  const double nt = p.nu / (p.nu - 1);
  return shg_from_rhat(nt, p.rhat);
}

double reduce_k(double k, bool& flip) {
  double x = k - std::floor(k);  // [0,1)
  flip = false;
  if (x > 0.5) {
    x = 1 - x;
    flip = true;
  }
  return x;
}

}  // namespace sgq
