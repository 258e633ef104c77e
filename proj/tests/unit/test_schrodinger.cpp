#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgq/schrodinger.hpp"

using namespace sgq;

TEST_CASE("harmonic oscillator") {
  for (double l : {0.0, 0.3, -0.2, -1.2}) {
    const OscillatorSpectrum sp = eigenvalues_shooting(1, l, 3);
    REQUIRE(sp.E.size() == 4);
    for (int n = 0; n < 4; ++n) {
      CHECK(sp.E[n] == doctest::Approx(4 * n + 2 * l + 3).epsilon(1e-10));
      CHECK(sp.nodes[n] == n);
    }
  }
}

TEST_CASE("quartic") {
  const OscillatorSpectrum sp = eigenvalues_shooting(2, -0.2, 3);
  const double ref[] = {3.19956880187328, 10.7929652269246, 20.2331932098562, 30.9767174251793};
  for (int n = 0; n < 4; ++n) CHECK(sp.E[n] == doctest::Approx(ref[n]).epsilon(1e-10));

  ShootingOptions o;
  o.match_scale = 0.5;
  const OscillatorSpectrum sq = eigenvalues_shooting(2, -0.2, 3, o);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(sq.E[n] / sp.E[n] - 1) < 1e-9);

  const OscillatorSpectrum up = eigenvalues_shooting(2, -0.1, 1);
  for (int n = 0; n < 2; ++n) CHECK(up.E[n] > sp.E[n]);
  CHECK(std::abs(matching_wronskian(2, -0.2, sp.E[1])) < 1e-8);
  CHECK(node_count(2, -0.2, 0.5 * (sp.E[1] + sp.E[2])) == 2);
}

TEST_CASE("zeros in the CFT limit") {
  const double a = 2, k = 0.15;
  const ModelParams p = derive_from_s(a, 0.01, k);
  const OscillatorSpectrum sp = eigenvalues_shooting(a, p.l(), 3);
  const CountingFunction cf = solve_ddv(p, RapidityGrid::for_r(p.r, 8192));
  const CftMatch m = match_cft_zeros(find_zeros(cf, 0, 3), p, sp);
  REQUIRE(m.deviation.size() == 4);
  for (double d : m.deviation) CHECK(d < 1e-9);
  const CftMatch e = extrapolate_cft(m, 0.01, m, 0.02, 4);
  for (double d : e.deviation) CHECK(d < 1e-9);
  CHECK_THROWS_AS(extrapolate_cft(m, 0.01, m, 0.01, 4), ParamError);
  CHECK_THROWS_AS(match_cft_zeros(ZeroSet{}, derive_from_s(3, 0.01, k), sp), ParamError);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(eigenvalues_shooting(2, -1.5, 1), ParamError);
  CHECK_THROWS_AS(eigenvalues_shooting(0.8, 0, 1), ParamError);
  CHECK_THROWS_AS(eigenvalues_shooting(2, 0, -1), ParamError);
}
