#include "sgq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sgq/params.hpp"
#include "sgq/simd.hpp"

namespace sgq {

namespace {
constexpr double pi = std::numbers::pi;
}

double g_hat(double nu, double alpha) {
  if (std::abs(nu) < 1e-8) return 0.5 * (1 - alpha);
  const double a = pi * nu;
  return std::sinh(a * (1 - alpha) / (2 * alpha)) / (2 * std::cosh(a / 2) * std::sinh(a / (2 * alpha)));
}

double f_hat(double nu, double alpha) {
  const double a = pi * nu;
  return 1.0 / (4 * std::cosh(a / 2) * std::sinh(a / (2 * alpha)));
}

cplx FourierKernel::operator()(cplx z) const {
  if (std::abs(z.imag()) > max_im_ + 1e-12) throw ParamError("kernel evaluated outside its strip");
  return constant_ + linear_ * z + simd::cexp_sum(coef_.data(), coef_.size(), -numax_, dnu_, z);
}

cvec FourierKernel::samples(const RapidityGrid& g, cplx shift) const {
  const int n = g.n;
  const double h = g.spacing();
  cvec s(2 * n - 1);
  if (zero_) return s;
  for (int m = -(n - 1); m <= n - 1; ++m) s[m + n - 1] = (*this)(m * h + shift);
  return s;
}

GKernel::GKernel(double alpha, double max_im, int n_nu) {
  const double strip = pi / alpha;
  if (max_im >= strip) throw ParamError("G kernel requested outside |Im| < pi/alpha");
  max_im_ = max_im;
  numax_ = 40.0 / (strip - max_im);
  dnu_ = 2 * numax_ / n_nu;
  coef_.resize(n_nu + 1);
  for (int j = 0; j <= n_nu; ++j) {
    const double nu = -numax_ + j * dnu_;
    const double w = (j == 0 || j == n_nu) ? 0.5 * dnu_ : dnu_;
    coef_[j] = w * g_hat(nu, alpha) / (2 * pi);
  }
  zero_ = alpha == 1.0;
}

FKernel::FKernel(double alpha, double max_im, int n_nu) {
  const double strip = pi * (alpha + 1) / (2 * alpha);
  if (max_im >= strip) throw ParamError("F kernel requested outside its strip");
  if (n_nu % 2) ++n_nu;
  max_im_ = max_im;
  numax_ = 40.0 / (strip - max_im);
  dnu_ = 2 * numax_ / n_nu;
  coef_.resize(n_nu + 1);
  for (int j = 0; j <= n_nu; ++j) {
    const double nu = -numax_ + j * dnu_;
    const double w = (j == 0 || j == n_nu) ? 0.5 * dnu_ : dnu_;
    coef_[j] = (j == n_nu / 2) ? 0.0 : w * f_hat(nu, alpha) / (2 * pi);
  }
  // principal value at nu = 0 plus the half residue
  constant_ = cplx(0, alpha / (4 * pi));
  linear_ = cplx(0, dnu_ * alpha / (4 * pi * pi));
}

int nu_points(double numax, double xspan) {
  const double need = 2 * numax * (xspan + 40) / (2 * pi);
  int n = 8192;
  while (n < need) n *= 2;
  return n;
}

double g_kernel(double theta, double alpha) {
  GKernel g(alpha, 0.0);
  return g(theta).real();
}

cplx f_kernel(double x, double alpha) {
  FKernel f(alpha, 0.0);
  return f(x);
}

namespace {
// 1/nu folded onto [0, 1/2]; the kernel only depends on the folded value
double fold_q(double nu) {
  if (!(nu > 1)) throw ParamError("phi kernel needs nu > 1");
  const double q = 1 / nu;
  return std::min(q, 1 - q);
}
}  // namespace

double phi_kernel(double theta, double nu) {
  const double q = fold_q(nu);
  const double c = std::cosh(theta);
  return 4 * std::sin(pi * q) * c / (std::cosh(2 * theta) - std::cos(2 * pi * q));
}

cplx sech(cplx z) {
  // stable for large |Re z|
  const double x = z.real();
  if (std::abs(x) > 20) {
    const cplx e = std::exp(-(x > 0 ? z : -z));
    return 2.0 * e / (1.0 + e * e);
  }
  return 1.0 / std::cosh(z);
}

cplx phi_kernel(cplx z, double nu) {
  const cplx ia(0, pi / 2 - pi * fold_q(nu));
  return sech(z + ia) + sech(z - ia);
}

}  // namespace sgq
