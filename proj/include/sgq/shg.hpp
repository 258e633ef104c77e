#pragma once
#include <array>
#include <memory>
#include <utility>

#include "sgq/grid.hpp"
#include "sgq/params.hpp"

namespace sgq {

struct TbaOptions {
  double tol = 1e-14;
  int max_iter = 500;
};

// Sinh-Gordon vacuum from the TBA.
class ShgVacuum {
 public:
  ShgParams params;
  RapidityGrid grid;
  rvec eps;  // real axis
  rvec L;    // log(1 + e^{-eps})
  double C0 = 0;
  double residual = 0;
  int iterations = 0;

  // |Im z| < pi/2
  cplx log_q(cplx z) const;
  cplx q(cplx z) const { return std::exp(log_q(z)); }
  // eps continued off the axis, |Im z| < pi/2 - |a|
  cplx eps_c(cplx z) const;
  double eps_strip() const;
  // log of the two terms of T_+- (z): T = e^{a} + e^{b}
  std::pair<cplx, cplx> t_log_terms(int sign, cplx z) const;
  double t_pm(int sign, double theta) const;
  // the same vacuum relabelled with the dual coupling
  ShgVacuum dual() const;
};

ShgVacuum solve_tba(const ShgParams& p, const RapidityGrid& g, const TbaOptions& o = {});
// Default grid for the TBA at given rhat.
RapidityGrid shg_grid(double rhat, int npts = 4096);

// |(1+e^{-eps}) - Q(t+ia)Q(t-ia) - 1|, a = pi(nu-2)/(2nu)
double shg_wronskian_defect(const ShgVacuum& v, double theta);

// C_n I_{2n-1}, C_n Ibar_{2n-1}
std::pair<double, double> im_quantum(const ShgVacuum& v, int n);

// Gel'fand-Dikii polynomials U_0..U_3 on a jet (u, u', u'', u''', u'''').
double gd_polynomial(int n, const std::array<double, 5>& jet);

// eta_hat in the w-plane from the split-contour Fredholm determinant.
class ShgField {
 public:
  explicit ShgField(const ShgVacuum& v, double ht = 0.3, double t_max = 100);
  double eta_hat(cplx w) const;
  double delta0() const { return delta0_; }

 private:
  double eval(cplx w, int side) const;
  std::shared_ptr<const ShgVacuum> v_;
  bool flip_ = false;  // evaluated through the dual chart
  double ht_, delta0_ = 0;
  rvec t_, theta_, wt_;
  // log terms of T_+- [side][contour][term], contour 0 at -i delta0, 1 at +i delta0
  std::array<std::array<std::array<cvec, 2>, 2>, 2> terms_;
};

struct ClassicalIm {
  double c1i1 = 0;      // C_0 - int(...)
  double integral = 0;  // int dx [P_2 + R_0]
  double eta_left = 0, eta_right = 0;
  rvec x, eta;
};
ClassicalIm im_classical_field(const ShgVacuum& v, double hx = 0.05, double x_max = 6);

// w(z) for the rotated chart, hypergeometric closed form.
cplx shg_w_of_z(cplx z, const ShgParams& p);
// int_{z1}^{z2} sqrt(z^{-2nu} + s^{-2nu}) dz along the straight segment
cplx shg_w_quadrature(cplx z1, cplx z2, const ShgParams& p);

}  // namespace sgq
