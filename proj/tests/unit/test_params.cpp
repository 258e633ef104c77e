#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sgq/params.hpp"

using namespace sgq;
using std::numbers::pi;

TEST_CASE("alpha=1 scale conversions") {
  const ModelParams p = derive_from_s(1, 1);
  CHECK(p.r == doctest::Approx(pi).epsilon(1e-15));
  const ModelParams q = derive_from_r(1, pi);
  CHECK(q.s == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("alpha=3 size from the Gamma ratio") {
  // mpmath, 40 digits
  const double ref = 0.22768599823946077611;
  CHECK(std::abs(derive_from_s(3, 0.5).r / ref - 1) < 1e-14);
}

TEST_CASE("round trip s -> r -> s") {
  for (double a : {1.0, 1.5, 2.0, 3.0, 7.25})
    for (double s : {1e-3, 0.1, 0.5, 1.0, 4.0}) {
      const ModelParams p = derive_from_s(a, s, 0.1);
      const ModelParams q = derive_from_r(a, p.r, 0.1);
      CHECK(std::abs(q.s / s - 1) < 1e-14);
    }
}

TEST_CASE("derived fields") {
  const ModelParams p = derive_from_s(2.5, 0.7, -0.3, 2.0);
  CHECK(p.beta2 == doctest::Approx(1 / 3.5));
  CHECK(p.M == doctest::Approx(p.r / 2.0));
  CHECK(p.m == doctest::Approx(2 * p.M * std::sin(pi / 5)));
  CHECK(p.rhat == doctest::Approx(p.m * p.R / 8));
  CHECK(p.l() == doctest::Approx(0.1));
  CHECK(p.B > 0);
  const ModelParams q = derive_from_mu(2.5, p.mu, 2.0, -0.3);
  CHECK(q.s == doctest::Approx(p.s).epsilon(1e-10));
}

TEST_CASE("r increases with s") {
  for (double a : {1.0, 2.0, 4.0}) {
    double prev = 0;
    for (double s = 0.05; s < 3; s *= 1.3) {
      const double r = derive_from_s(a, s).r;
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(derive_from_s(0.5, 1), ParamError);
  CHECK_THROWS_AS(derive_from_s(2, 0), ParamError);
  CHECK_THROWS_AS(derive_from_s(2, -1), ParamError);
  CHECK_THROWS_AS(derive_from_r(2, 0), ParamError);
  CHECK_THROWS_AS(derive_from_s(std::nan(""), 1), ParamError);
  CHECK_THROWS_AS(shg_from_rhat(1.0, 0.5), ParamError);
  CHECK_THROWS_AS(shg_from_rhat(3, -0.5), ParamError);
}

TEST_CASE("dual map") {
  CHECK(dual_map(shg_from_rhat(2, 0.5)).nu == doctest::Approx(2.0));
  CHECK(dual_map(shg_from_rhat(3, 0.5)).nu == doctest::Approx(1.5));
  const ShgParams d = dual_map(shg_from_rhat(5, 0.7));
  CHECK(d.nu == doctest::Approx(1.25));
  CHECK(d.rhat == 0.7);
  for (double nu : {1.2, 2.0, 3.0, 6.5}) {
    const ShgParams p = shg_from_rhat(nu, 0.4);
    const ShgParams dd = dual_map(dual_map(p));
    CHECK(dd.nu == doctest::Approx(nu).epsilon(1e-15));
    CHECK(dd.rhat == p.rhat);
    CHECK(std::abs(dd.s / p.s - 1) < 1e-12);
  }
}

TEST_CASE("sinh-Gordon scale round trip") {
  const ShgParams p = shg_from_s(3, 1.3);
  CHECK(p.b2 == doctest::Approx(0.5));
  CHECK(shg_from_rhat(3, p.rhat).s == doctest::Approx(1.3).epsilon(1e-13));
}

TEST_CASE("k reduction") {
  bool flip = false;
  CHECK(reduce_k(0.3, flip) == doctest::Approx(0.3));
  CHECK_FALSE(flip);
  CHECK(reduce_k(0.7, flip) == doctest::Approx(0.3));
  CHECK(flip);
  CHECK(reduce_k(-0.2, flip) == doctest::Approx(0.2));
  CHECK(flip);
  CHECK(reduce_k(2.1, flip) == doctest::Approx(0.1));
  CHECK_FALSE(flip);
}
