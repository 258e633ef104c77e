#include "sgq/simd.hpp"

#include <cmath>

namespace sgq::simd {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0, s1 = 0;
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
  }
  if (i < n) s0 += a[i] * b[i];
  return s0 + s1;
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

// Rotation recurrence, re-anchored every 64 terms.
cplx cexp_sum(const cplx* c, std::size_t n, double x0, double dx, cplx z) {
  const cplx I(0, 1);
  const cplx rot = std::exp(I * dx * z);
  double re = 0, im = 0;
  for (std::size_t j0 = 0; j0 < n; j0 += 64) {
    cplx e = std::exp(I * (x0 + double(j0) * dx) * z);
    const std::size_t j1 = std::min(n, j0 + 64);
    for (std::size_t j = j0; j < j1; ++j) {
      re += c[j].real() * e.real() - c[j].imag() * e.imag();
      im += c[j].real() * e.imag() + c[j].imag() * e.real();
      e = {e.real() * rot.real() - e.imag() * rot.imag(), e.real() * rot.imag() + e.imag() * rot.real()};
    }
  }
  return {re, im};
}

}  // namespace scalar

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  cplx (*cdot)(const cplx*, const cplx*, std::size_t);
  cplx (*cexp_sum)(const cplx*, std::size_t, double, double, cplx);
  Isa isa;
};

Table make(Isa isa) {
  if (isa == Isa::avx2) return {avx2::dot, avx2::cdot, avx2::cexp_sum, Isa::avx2};
  return {scalar::dot, scalar::cdot, scalar::cexp_sum, Isa::scalar};
}

Table& table() {
  static Table t = make(avx2::available() ? Isa::avx2 : Isa::scalar);
  return t;
}

}  // namespace

Isa active() { return table().isa; }

bool force(Isa isa) {
  if (isa == Isa::avx2 && !avx2::available()) return false;
  table() = make(isa);
  return true;
}

const char* name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
cplx cdot(const cplx* a, const cplx* b, std::size_t n) { return table().cdot(a, b, n); }
cplx cexp_sum(const cplx* c, std::size_t n, double x0, double dx, cplx z) {
  return table().cexp_sum(c, n, x0, dx, z);
}

}  // namespace sgq::simd
