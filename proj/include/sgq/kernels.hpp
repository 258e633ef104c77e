#pragma once
#include "sgq/grid.hpp"

namespace sgq {

// Fourier transforms of the DDV and Q-reconstruction kernels.
double g_hat(double nu, double alpha);
double f_hat(double nu, double alpha);  // odd, simple pole at 0

// Kernel given by a trapezoid Fourier sum over a symmetric nu-grid,
// K(z) = sum_j c_j exp(i nu_j z), usable for |Im z| < max_im.
class FourierKernel {
 public:
  cplx operator()(cplx z) const;
  // K(m h + shift) for m = -(n-1)..(n-1)
  cvec samples(const RapidityGrid& g, cplx shift) const;
  double nu_max() const { return numax_; }
  double max_im() const { return max_im_; }

 protected:
  FourierKernel() = default;
  double numax_ = 0, dnu_ = 0, max_im_ = 0;
  cvec coef_;
  cplx linear_ = 0, constant_ = 0;
  bool zero_ = false;
};

// Trapezoid size for a nu-range so that periodic images stay beyond xspan.
int nu_points(double numax, double xspan);

// G(z) = int dnu/2pi e^{i nu z} Ghat(nu); strip |Im z| < pi/alpha.
class GKernel : public FourierKernel {
 public:
  GKernel(double alpha, double max_im, int n_nu = 8192);
};

// F(z) with the -i0 prescription; strip |Im z| < pi(alpha+1)/(2 alpha).
class FKernel : public FourierKernel {
 public:
  FKernel(double alpha, double max_im, int n_nu = 8192);
};

double g_kernel(double theta, double alpha);
cplx f_kernel(double x, double alpha);

// Sinh-Gordon TBA kernel, closed form.
double phi_kernel(double theta, double nu);
// Same kernel at complex argument: 1/cosh(z+ia) + 1/cosh(z-ia), a = pi(nu-2)/(2nu)
cplx phi_kernel(cplx z, double nu);

cplx sech(cplx z);

}  // namespace sgq
