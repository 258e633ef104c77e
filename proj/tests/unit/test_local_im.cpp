#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sgq/local_im.hpp"

using namespace sgq;
using std::numbers::pi;

namespace {
CountingFunction solve(double a, double s, double k) {
  const ModelParams p = derive_from_s(a, s, k);
  return solve_ddv(p, RapidityGrid::for_r(p.r));
}
}  // namespace

TEST_CASE("parity at k=0") {
  const CountingFunction cf = solve(2, 0.5, 0);
  for (int n : {1, 2}) {
    const auto [I, Ib] = quantum_local_im(cf, n);
    CHECK(std::abs(I - Ib) < 1e-9 * std::abs(I));
  }
}

TEST_CASE("nonlocal symmetry") {
  const auto [G, Gb] = nonlocal_im(solve(2, 0.5, 0.15), 1);
  const auto [Gm, Gbm] = nonlocal_im(solve(2, 0.5, -0.15), 1);
  CHECK(std::abs(G - Gbm) < 1e-9 * std::abs(G));
  CHECK(std::abs(Gb - Gm) < 1e-9 * std::abs(G));
}

TEST_CASE("alpha=1 oracle") {
  // contour quadrature of the closed-form eps on Im theta = -0.3
  const CountingFunction cf = solve(1, 1, 0.2);
  const auto [G, Gb] = nonlocal_im(cf, 1);
  CHECK(G == doctest::Approx(-0.096457148008970611551 / pi).epsilon(1e-10));
  CHECK(Gb == doctest::Approx(0.096457148008970611551 / pi).epsilon(1e-10));
  const auto [I3, Ib3] = quantum_local_im(cf, 2);
  CHECK(I3 == doctest::Approx(0.062574103892247451485 / pi).epsilon(1e-10));
  CHECK(std::isfinite(Ib3));
  CHECK_THROWS_AS(quantum_local_im(cf, 1), ParamError);
}

TEST_CASE("nonlocal scaling") {
  double prev = 0;
  for (double s : {0.2, 0.1}) {
    const CountingFunction cf = solve(2, s, 0.15);
    const double g = nonlocal_im(cf, 1).first * std::pow(cf.params.r, 4);
    if (prev != 0) CHECK(std::abs(g / prev - 1) < 1e-4);
    prev = g;
  }
}

TEST_CASE("normalization") {
  CHECK(normalize_to_sg(3, 1, 1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(normalize_to_sg(3, 1, 2) == doctest::Approx(-4.1580339831157794108).epsilon(1e-13));
  for (double a : {2.0, 2.5, 3.0}) CHECK(normalize_to_sg(a, 1, 2) / normalize_to_sg(a, 1, 1) < 0);
  CHECK(normalize_to_sg(2.5, 3, 1) == doctest::Approx(normalize_to_sg(2.5, 1, 1) / 3).epsilon(1e-14));
  CHECK(normalize_to_sg(2.5, 2, 2) == doctest::Approx(normalize_to_sg(2.5, 1, 2) / 8).epsilon(1e-14));
  CHECK_THROWS_AS(normalize_to_sg(1.5, 1, 2), ParamError);
  CHECK_THROWS_AS(normalize_to_sg(2, 0, 1), ParamError);
}

TEST_CASE("poles") {
  CHECK_THROWS_AS(quantum_local_im(solve(1.5, 0.5, 0.1), 2), ParamError);
  CHECK_THROWS_AS(nonlocal_im(solve(1.5, 0.5, 0.1), 1), ParamError);
  CHECK_THROWS_AS(quantum_local_im(solve(2, 0.5, 0.1), 0), ParamError);
}

TEST_CASE("fit vs contour") {
  const CountingFunction cf = solve(3, 0.5, 0.1);
  const ImFit f = fit_local_im(cf);
  const auto [I, Ib] = quantum_local_im(cf, 1);
  CHECK(std::abs(f.I1 / I - 1) < 1e-4);
  CHECK(std::abs(f.Ibar1 / Ib - 1) < 1e-4);
  const ImTable t = im_table(cf, 2);
  REQUIRE(t.n.size() == 2);
  CHECK(t.I[0] == doctest::Approx(I / t.C[0]).epsilon(1e-14));
  CHECK(std::isfinite(t.frakG[0]));
}
