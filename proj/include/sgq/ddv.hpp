#pragma once
#include <memory>

#include "sgq/grid.hpp"
#include "sgq/kernels.hpp"
#include "sgq/params.hpp"

namespace sgq {

// Im log(1 + e^{-i(eps - i0)}), principal branch.
double boundary_log_term(double eps_value, double delta = 1e-12);

struct DdvOptions {
  double damping = 0.5;
  double tol = 1e-12;
  int max_iter = 2000;
  double gamma = 0;  // contour shift; 0 selects min(pi/2, pi/alpha)/4
};

class CountingFunction {
 public:
  ModelParams params;
  RapidityGrid grid;
  double gamma = 0;
  rvec eps;       // eps on the real grid
  rvec conv;      // eps - r sinh + 2 pi k
  cvec f;         // eps(theta - i gamma)
  cvec ell;       // log(1 + e^{-i f})
  double residual = 0;
  int iterations = 0;
  rvec history;

  // Largest |Im theta| accepted by continue_eps.
  double strip() const;
  cplx continue_eps(cplx theta) const;
  // Real theta; order-8 interpolation inside the grid, driving term outside.
  double eps_at(double theta) const;
  double deps_at(double theta) const;
  // int dt e^{a(t - i gamma)} log(1 + e^{-i eps(t - i gamma)})
  cplx tail_integral(double a) const;
  // Fitted edge coefficients of eps - r sinh + 2 pi k ~ c_plus e^{-theta}, c_minus e^{theta}
  double c_plus() const;
  double c_minus() const;
  bool monotone() const;

 private:
  friend CountingFunction solve_ddv(const ModelParams&, const RapidityGrid&, const DdvOptions&);
  void build_continuation();
  double numax_ = 0, dnu_ = 0, ylim_ = 0;
  cvec ccoef_;
};

CountingFunction solve_ddv(const ModelParams& p, const RapidityGrid& g, const DdvOptions& opt = {});

}  // namespace sgq
