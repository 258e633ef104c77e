#pragma once
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace sgq {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

struct RapidityGrid {
  double half_width = 12;
  int n = 4096;

  RapidityGrid() = default;
  RapidityGrid(double theta_max, int npts);

  double spacing() const { return 2 * half_width / (n - 1); }
  double node(int i) const { return -half_width + i * spacing(); }
  rvec nodes() const;

  // Default grid for a given size parameter r.
  static RapidityGrid for_r(double r, int npts = 4096);
};

// Kernel sampled at offsets m*h, m = -(n-1)..(n-1), kept in Fourier space.
class ConvKernel {
 public:
  ConvKernel(const RapidityGrid& g, const std::function<cplx(double)>& k);
  ConvKernel(const RapidityGrid& g, const cvec& samples);  // 2n-1 samples

  // (K * f)_i = h sum_j K(theta_i - theta_j) f_j
  cvec apply(const cvec& f) const;
  const RapidityGrid& grid() const { return grid_; }

 private:
  void init(const cvec& samples);
  RapidityGrid grid_;
  int nfft_ = 0;
  cvec khat_;
};

// Zero-padded FFT of length >= 2n (power of two).
int fft_size(int n);
void fft(cvec& a, bool inverse);

// Centered Lagrange interpolation on a uniform grid (8 points).
template <class T>
T lagrange(const std::vector<T>& y, double x0, double h, double x);

double trapezoid(const rvec& y, double h);
cplx trapezoid(const cvec& y, double h);

struct RootResult {
  double x;
  double fx;
  int iters;
};

// Monotone root of f(x) = target inside [lo, hi]; secant with bisection
// safeguard.
RootResult root_solve(const std::function<double(double)>& f, double target, double lo, double hi,
                      double tol_x = 1e-12, double tol_f = 1e-12, int max_iter = 200);

}  // namespace sgq
