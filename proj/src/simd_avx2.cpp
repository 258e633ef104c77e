#include "sgq/simd.hpp"

#include <cmath>

#if defined(SGQ_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace sgq::simd::avx2 {

#if defined(SGQ_HAVE_AVX2)

bool available() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, _mm256_add_pd(s0, s1));
  double s = (t[0] + t[1]) + (t[2] + t[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Accumulate a*b into (acc_r, acc_t); combine with addsub at the end.
inline void cmac(__m256d a, __m256d b, __m256d& acc_r, __m256d& acc_t) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  acc_r = _mm256_fmadd_pd(ar, b, acc_r);
  acc_t = _mm256_fmadd_pd(ai, bs, acc_t);
}

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

inline cplx hsum(__m256d acc_r, __m256d acc_t) {
  alignas(32) double t[4];
  _mm256_store_pd(t, _mm256_addsub_pd(acc_r, acc_t));
  return {t[0] + t[2], t[1] + t[3]};
}

}  // namespace

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d r0 = _mm256_setzero_pd(), t0 = _mm256_setzero_pd();
  __m256d r1 = _mm256_setzero_pd(), t1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    cmac(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i), r0, t0);
    cmac(_mm256_loadu_pd(pa + 2 * i + 4), _mm256_loadu_pd(pb + 2 * i + 4), r1, t1);
  }
  cplx s = hsum(_mm256_add_pd(r0, r1), _mm256_add_pd(t0, t1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

cplx cexp_sum(const cplx* c, std::size_t n, double x0, double dx, cplx z) {
  const cplx I(0, 1);
  const cplx rot1 = std::exp(I * dx * z);
  const cplx rot2 = rot1 * rot1, rot3 = rot2 * rot1;
  const cplx rot4 = rot2 * rot2;
  const __m256d vrot = _mm256_setr_pd(rot4.real(), rot4.imag(), rot4.real(), rot4.imag());
  const double* pc = reinterpret_cast<const double*>(c);
  __m256d r0 = _mm256_setzero_pd(), t0 = _mm256_setzero_pd();
  __m256d r1 = _mm256_setzero_pd(), t1 = _mm256_setzero_pd();
  std::size_t j = 0;
  const std::size_t nb = n & ~std::size_t(3);
  while (j < nb) {
    cplx e[4];
    e[0] = std::exp(I * (x0 + double(j) * dx) * z);
    e[1] = e[0] * rot1;
    e[2] = e[0] * rot2;
    e[3] = e[0] * rot3;
    __m256d e0 = _mm256_setr_pd(e[0].real(), e[0].imag(), e[1].real(), e[1].imag());
    __m256d e1 = _mm256_setr_pd(e[2].real(), e[2].imag(), e[3].real(), e[3].imag());
    const std::size_t jend = std::min(nb, j + 64);
    for (; j < jend; j += 4) {
      cmac(_mm256_loadu_pd(pc + 2 * j), e0, r0, t0);
      cmac(_mm256_loadu_pd(pc + 2 * j + 4), e1, r1, t1);
      e0 = cmul(e0, vrot);
      e1 = cmul(e1, vrot);
    }
  }
  cplx s = hsum(_mm256_add_pd(r0, r1), _mm256_add_pd(t0, t1));
  for (; j < n; ++j) s += c[j] * std::exp(I * (x0 + double(j) * dx) * z);
  return s;
}

#else

bool available() { return false; }
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
cplx cdot(const cplx* a, const cplx* b, std::size_t n) { return scalar::cdot(a, b, n); }
cplx cexp_sum(const cplx* c, std::size_t n, double x0, double dx, cplx z) {
  return scalar::cexp_sum(c, n, x0, dx, z);
}

#endif

}  // namespace sgq::simd::avx2
