#include "sgq/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "sgq/params.hpp"

namespace sgq {

RapidityGrid::RapidityGrid(double theta_max, int npts) : half_width(theta_max), n(npts) {
  if (npts < 256 || (npts & (npts - 1)) != 0) throw ParamError("grid size must be a power of two >= 256");
  if (!(theta_max > 0)) throw ParamError("grid half-width must be positive");
}

rvec RapidityGrid::nodes() const {
  rvec t(n);
  for (int i = 0; i < n; ++i) t[i] = node(i);
  return t;
}

RapidityGrid RapidityGrid::for_r(double r, int npts) {
  return RapidityGrid(std::max(12.0, std::log(50.0 / r) + 10.0), npts);
}

int fft_size(int n) {
  int N = 1;
  while (N < 2 * n) N *= 2;
  return N;
}

namespace {

struct Plans {
  fftw_plan fwd, bwd;
  cvec buf;
};

Plans& plans_for(int N) {
  static std::map<int, Plans> cache;
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  Plans p;
  p.buf.assign(N, 0.0);
  auto* b = reinterpret_cast<fftw_complex*>(p.buf.data());
  p.fwd = fftw_plan_dft_1d(N, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_1d(N, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(N, std::move(p)).first->second;
}

}  // namespace

void fft(cvec& a, bool inverse) {
  Plans& p = plans_for(int(a.size()));
  std::copy(a.begin(), a.end(), p.buf.begin());
  fftw_execute(inverse ? p.bwd : p.fwd);
  std::copy(p.buf.begin(), p.buf.end(), a.begin());
}

ConvKernel::ConvKernel(const RapidityGrid& g, const std::function<cplx(double)>& k) : grid_(g) {
  const int n = g.n;
  const double h = g.spacing();
  cvec s(2 * n - 1);
  for (int m = -(n - 1); m <= n - 1; ++m) s[m + n - 1] = k(m * h);
  init(s);
}

ConvKernel::ConvKernel(const RapidityGrid& g, const cvec& samples) : grid_(g) {
  if (int(samples.size()) != 2 * g.n - 1) throw std::invalid_argument("kernel sample count mismatch");
  init(samples);
}

void ConvKernel::init(const cvec& s) {
  const int n = grid_.n;
  nfft_ = fft_size(n);
  khat_.assign(nfft_, 0.0);
  for (int m = 0; m <= n - 1; ++m) khat_[m] = s[m + n - 1];
  for (int m = 1; m <= n - 1; ++m) khat_[nfft_ - m] = s[n - 1 - m];
  fft(khat_, false);
}

cvec ConvKernel::apply(const cvec& f) const {
  const int n = grid_.n;
  if (int(f.size()) != n) throw std::invalid_argument("convolve: grid mismatch");
  cvec a(nfft_, 0.0);
  std::copy(f.begin(), f.end(), a.begin());
  fft(a, false);
  for (int i = 0; i < nfft_; ++i) a[i] *= khat_[i];
  fft(a, true);
  const double sc = grid_.spacing() / nfft_;
  cvec out(n);
  for (int i = 0; i < n; ++i) out[i] = a[i] * sc;
  return out;
}

template <class T>
T lagrange(const std::vector<T>& y, double x0, double h, double x) {
  constexpr int P = 8;
  const int n = int(y.size());
  const double u = (x - x0) / h;
  int i0 = int(std::floor(u)) - P / 2 + 1;
  i0 = std::clamp(i0, 0, n - P);
  const double t = u - i0;
  // exact node hit
  for (int j = 0; j < P; ++j)
    if (t == double(j)) return y[i0 + j];
  // barycentric weights for equispaced nodes: w_j = (-1)^j C(P-1, j)
  static const double w[P] = {1, -7, 21, -35, 35, -21, 7, -1};
  T num{};
  double den = 0;
  for (int j = 0; j < P; ++j) {
    const double c = w[j] / (t - j);
    num += c * y[i0 + j];
    den += c;
  }
  return num / den;
}

template double lagrange<double>(const rvec&, double, double, double);
template cplx lagrange<cplx>(const cvec&, double, double, double);

double trapezoid(const rvec& y, double h) {
  if (y.empty()) return 0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

cplx trapezoid(const cvec& y, double h) {
  if (y.empty()) return 0;
  cplx s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

RootResult root_solve(const std::function<double(double)>& f, double target, double lo, double hi,
                      double tol_x, double tol_f, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a) - target, fb = f(b) - target;
  if (fa == 0) return {a, fa + target, 0};
  if (fb == 0) return {b, fb + target, 0};
  if ((fa > 0) == (fb > 0))
    throw SolveError("root_solve: invalid bracket f(lo)-t=" + std::to_string(fa) + " f(hi)-t=" + std::to_string(fb));
  double x = a, fx = fa;
  for (int it = 1; it <= max_iter; ++it) {
    // secant step, fall back to bisection outside the bracket
    double xs = b - fb * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    if (!(xs > std::min(a, b) && xs < std::max(a, b))) xs = mid;
    x = xs;
    fx = f(x) - target;
    if ((fx > 0) == (fa > 0)) {
      // keep the side that shrinks fastest (Illinois)
      a = x;
      fa = fx;
      fb *= 0.5;
    } else {
      b = x;
      fb = fx;
      fa *= 0.5;
    }
    if (std::abs(fx) < tol_f * std::max(1.0, std::abs(target)) || std::abs(b - a) < tol_x * std::max(1.0, std::abs(x)))
      return {x, fx + target, it};
  }
  return {x, fx + target, max_iter};
}

}  // namespace sgq
