#pragma once
#include <complex>
#include <cstddef>

namespace sgq::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

Isa active();
// Force a path (tests); returns false if unavailable on this CPU.
bool force(Isa isa);
const char* name(Isa isa);

double dot(const double* a, const double* b, std::size_t n);
// sum a_i b_i (no conjugation)
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
// sum_j c_j exp(i (x0 + j dx) z) for complex z
cplx cexp_sum(const cplx* c, std::size_t n, double x0, double dx, cplx z);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
cplx cexp_sum(const cplx* c, std::size_t n, double x0, double dx, cplx z);
}  // namespace scalar

namespace avx2 {
bool available();
double dot(const double* a, const double* b, std::size_t n);
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
cplx cexp_sum(const cplx* c, std::size_t n, double x0, double dx, cplx z);
}  // namespace avx2

}  // namespace sgq::simd
