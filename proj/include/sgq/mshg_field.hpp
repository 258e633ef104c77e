#pragma once
#include <functional>

#include "sgq/qt.hpp"

namespace sgq {

// Rotated chart, p(z) = z^{2 alpha} + s^{2 alpha}.
struct WChart {
  double alpha = 2, s = 1, rhat = 0;
  WChart() = default;
  explicit WChart(const ModelParams& p);
  double w0() const;       // image of the apex
  cplx turning(int sign) const;  // image of s e^{+-i pi/2alpha}
  cplx shift(cplx w) const;      // w_s = w + rhat tan(pi/2alpha) - i rhat
};

// w(z) = z^{alpha+1}/(alpha+1) - int_z^inf [sqrt(p) - zeta^alpha] dzeta along z + t, t >= 0.
cplx w_of_z(cplx z, const WChart& chart);

// T_reg sampled on theta = x + i tilt + i pi(alpha+1)/(2 alpha), x uniform.
struct TregTable {
  double h = 0.05, tilt = 0;
  rvec x;
  cvec value;
};
TregTable make_treg_table(const TFunctions& t, double half_width = 8, double h = 0.05, double tilt = 0);

struct GlmState {
  cplx w;
  rvec theta;  // active nodes
  cvec D, X_plus, X_minus;
  cplx d_plus, d_minus, d;
  cplx kappa_plus, kappa_minus;
  cplx omega_plus, omega_minus;
  double eta_hat = 0;
  // X_+-(theta) off the nodes from the integral equation
  cplx x_at(cplx theta, int sign) const;
  // (1/2)[X+(t+i pi/2)X-(t-i pi/2) + X+(t-i pi/2)X-(t+i pi/2)]
  cplx d_identity(double theta) const;

 private:
  friend GlmState glm_solve(cplx, const TregTable&, const WChart&);
  double h_ = 0, tilt_ = 0;
};

// Kernel D on the active nodes; throws ParamError when the ends have not decayed.
cvec glm_kernel(cplx w, const TregTable& t, const WChart& chart, rvec& theta_out);

GlmState glm_solve(cplx w, const TregTable& t, const WChart& chart);

struct LogdetResult {
  double eta_series = 0;  // sum of 2 tr(M^{2n-1})/(2n-1)
  double eta_logdet = 0;  // log det(1+M) - log det(1-M)
  double imag_part = 0;
  double spectral_radius = 0;
  rvec partial;  // partial sums
};
LogdetResult eta_logdet(cplx w, const TregTable& t, const WChart& chart, int n_max = 40);

// Linearized solution int dtheta/2pi D(theta)
cplx eta_linear(cplx w, const TregTable& t, const WChart& chart);

// |d_w d_wbar f - e^{2f} + e^{-2f}| at w, three-point differences with step h
double pde_residual(const std::function<double(cplx)>& f, cplx w, double h);

// Large-rho asymptotics in the original polar coordinates.
double eta_asymptotic(double rho, double phi, const TFunctions& t);

// eta(z) = eta_hat(w(z)) + (1/4) log|p(z)|^2 in the rotated chart
double mshg_eta(cplx z, const TregTable& t, const WChart& chart);

}  // namespace sgq
