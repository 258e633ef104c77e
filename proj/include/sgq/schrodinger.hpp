#pragma once
#include "sgq/qt.hpp"

namespace sgq {

// -psi'' + l(l+1)/x^2 psi + x^{2 alpha} psi = E psi on (0, inf)
struct OscillatorSpectrum {
  double alpha = 1, l = 0;
  rvec E;      // E[n], n = 0..n_max
  rvec nodes;  // node count of the eigenfunction at E[n]
};

struct ShootingOptions {
  double ode_tol = 1e-13;
  double rel_acc = 1e-12;
  double match_scale = 1;  // matching point = match_scale * turning point
  double tail = 40;        // WKB action between the turning point and the right end
};

// Normalized Wronskian of the regular left and decaying right solutions at the matching point.
double matching_wronskian(double alpha, double l, double E, const ShootingOptions& o = {});
// Zeros of the regular solution on (0, x_R).
int node_count(double alpha, double l, double E, const ShootingOptions& o = {});

OscillatorSpectrum eigenvalues_shooting(double alpha, double l, int n_max, const ShootingOptions& o = {});

struct CftMatch {
  rvec E_zero;     // s^{2 alpha} e^{2 alpha theta_n/(alpha+1)}
  rvec E_osc;      // oscillator eigenvalue
  rvec deviation;  // |E_zero/E_osc - 1|
};
CftMatch match_cft_zeros(const ZeroSet& z, const ModelParams& p, const OscillatorSpectrum& sp);
// Two-point Richardson in s^{power}: E(s) = E(0) + c s^{power}.
CftMatch extrapolate_cft(const CftMatch& a, double sa, const CftMatch& b, double sb, double power);

}  // namespace sgq
