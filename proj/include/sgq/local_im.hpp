#pragma once
#include <utility>
#include <vector>

#include "sgq/ddv.hpp"

namespace sgq {

struct ImTable {
  std::vector<int> n;
  rvec frakI, frakIbar;  // local, both chiralities
  rvec frakG, frakGbar;  // nonlocal
  rvec C;                // sine-Gordon normalization
  rvec I, Ibar;          // frakI / C
};

// Local IM from the shifted-contour integrals; both chiralities.
std::pair<double, double> quantum_local_im(const CountingFunction& cf, int n);
// Nonlocal IM, weight e^{+-2 alpha n theta}.
std::pair<double, double> nonlocal_im(const CountingFunction& cf, int n);
// C_n with m = 2 M sin(pi/2alpha).
double normalize_to_sg(double alpha, double m, int n);

ImTable im_table(const CountingFunction& cf, int n_max);

// Least-squares fit of the central-line log Q tails on [Theta/2, 3Theta/4].
struct ImFit {
  double I1 = 0, G1 = 0, I3 = 0;        // theta -> +inf
  double Ibar1 = 0, Gbar1 = 0, Ibar3 = 0;  // theta -> -inf
  double residual = 0;                  // max fit residual, both sides
};
ImFit fit_local_im(const CountingFunction& cf);

}  // namespace sgq
