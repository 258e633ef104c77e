#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sgq/qt.hpp"

using namespace sgq;
using std::numbers::pi;

namespace {
CountingFunction solve(double a, double s, double k) {
  const ModelParams p = derive_from_s(a, s, k);
  return solve_ddv(p, RapidityGrid::for_r(p.r));
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("alpha=1 zeros") {
  const CountingFunction cf = solve(1, 1, 0);
  const ZeroSet z = find_zeros(cf, -1, 2);
  CHECK(z.at(0) == doctest::Approx(0.88137358701954302523).epsilon(1e-13));
  CHECK(z.E_plus.at(0) == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-13));
  CHECK(std::abs(z.at(-1) + z.at(0)) < 1e-12);
  for (int n = -1; n < 2; ++n) CHECK(z.at(n + 1) > z.at(n));

  // eps = pi s^2 sinh - 2 pi k
  const double s = 0.5, k = 0.2;
  const ZeroSet z2 = find_zeros(solve(1, s, k), 0, 0);
  const double sh = (1 + 2 * k) / (s * s);
  CHECK(z2.E_plus.at(0) == doctest::Approx(s * s * (sh + std::sqrt(1 + sh * sh))).epsilon(1e-12));
}

TEST_CASE("zero ranges") {
  const CountingFunction cf = solve(2, 0.5, 0.1);
  CHECK_THROWS_AS(find_zeros(cf, 0, 100000), ParamError);
  const ZeroSet z = find_zeros(cf, 38, 41);
  const double B = b_const(2);
  for (int n = 38; n <= 41; ++n) {
    CHECK(z.E_plus.at(n) > 0);
    CHECK(std::abs(z.E_plus.at(n) / std::pow(2 * pi / B * (2 * n + 1.2), 4.0 / 3) - 1) < 1e-3);
  }
  const ZeroSet all = find_zeros(cf);
  CHECK(all.size() > 100);
  for (int i = 1; i < all.size(); ++i) CHECK(all.theta[i] > all.theta[i - 1]);
}

TEST_CASE("energy relations") {
  const double s = 0.5;
  const ZeroSet z0 = find_zeros(solve(2, s, 0.1), 0, 4);
  const ZeroSet z1 = find_zeros(solve(2, s, 1.1), 0, 3);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(z1.E_plus.at(n) / z0.E_plus.at(n + 1) - 1) < 1e-9);
  const ZeroSet zm = find_zeros(solve(2, s, -1.1), 0, 0);
  CHECK(std::abs(zm.E_plus.at(0) * z0.E_plus.at(0) / std::pow(s, 8) - 1) < 1e-8);
}

TEST_CASE("reflection factor") {
  CHECK(std::abs(reflection_log_s(solve(2, 0.5, 0))) < 1e-12);
  const double a = reflection_log_s(solve(2, 0.5, 0.1));
  const double b = reflection_log_s(solve(2, 0.5, -0.1));
  CHECK(std::abs(a + b) < 1e-8);

  const QFunction q = QFunction::build(derive_from_s(2, 0.3, 0.15), RapidityGrid::for_r(derive_from_s(2, 0.3, 0.15).r));
  CHECK(std::abs(q.log_s() / q.log_s_product() - 1) < 1e-5);
  CHECK(std::isfinite(eta0_from_s(q.log_s(), 0.15)));
  CHECK(std::isnan(eta0_from_s(0.1, 0.7)));
}

TEST_CASE("central line vs product") {
  const CountingFunction cf = solve(3, 0.5, 0.1);
  const cvec lq = q_central(cf);
  const QFunction q(cf);
  const double y = pi * 4 / 6;
  const int mid = cf.grid.n / 2;
  CHECK(std::abs(lq[mid].real() - q_central_integral(cf)[mid].real() - 0.5 * reflection_log_s(cf) -
                 cf.params.r * std::cosh(cf.grid.node(mid)) / (2 * std::cos(pi / 6))) < 1e-12);
  double err = 0;
  for (double t : {-2.0, -0.5, 0.0, 0.7, 1.9}) {
    const cplx c = lagrange(lq, -cf.grid.half_width, cf.grid.spacing(), t);
    err = std::max(err, rel(std::exp(c), q.q(cplx(t, y))));
  }
  CHECK(err < 1e-6);
  CHECK_THROWS_AS(q_central(solve(1, 1, 0.1)), ParamError);
}

TEST_CASE("product form") {
  const double k = 0.1;
  const CountingFunction cf = solve(2, 0.5, k);
  const QFunction q(cf);
  for (double t : {-0.7, 0.0, 0.9}) {
    const cplx w = wronskian(q, t);
    CHECK(std::abs(w - cplx(0, 2 * std::sin(2 * pi * k))) < 1e-6 * 2 * std::sin(2 * pi * k));
  }
  for (int n : {0, 2, -3}) CHECK(std::abs(q.q(q.zeros().at(n))) == 0);
  const cplx z(0.3, 0.2);
  CHECK(rel(q.q(z + cplx(0, pi * 1.5)) / q.q(z), std::exp(cplx(0, 2 * pi * k))) < 1e-12);
  CHECK(std::abs(std::conj(q.q(std::conj(z))) - q.q(z)) < 1e-12 * std::abs(q.q(z)));
  CHECK(std::abs(q.q(0.4).imag()) < 1e-12 * std::abs(q.q(0.4)));
  CHECK(rel(q.q_minus(z), std::exp(q.log_q(-z))) < 1e-14);
}

TEST_CASE("T functions") {
  const ModelParams p = derive_from_s(2, 0.5, 0.1);
  const RapidityGrid g = RapidityGrid::for_r(p.r);
  const TFunctions T(p, g);
  const TFunctions Tm(derive_from_s(2, 0.5, -0.1), g);
  for (double t : {-1.0, 0.0, 0.6}) {
    CHECK(std::abs(T.t(0, t) - 1.0) < 1e-9);
    CHECK(std::abs(T.t(-0.5, t)) < 1e-9);
    const cplx a = T.t(0.5, t);
    CHECK(std::abs(a.imag()) < 1e-9 * std::abs(a));
    CHECK(rel(T.t(0.5, -t), a) < 1e-9);
    CHECK(rel(Tm.t(0.5, t), a) < 1e-9);
    CHECK(rel(T.t_half_tq(t), a) < 1e-8);
  }
  const FunctionalReport rep = functional_checks(T, {-1, -0.3, 0, 0.4, 1.2});
  CHECK(rep.N == 3);
  CHECK(rep.worst() < 1e-6);

  const ModelParams q = derive_from_s(2, 0.5, 0.25);
  const FunctionalReport r2 = functional_checks(TFunctions(q, RapidityGrid::for_r(q.r)), {-1, 0, 0.8});
  CHECK(r2.worst() < 1e-6);
  CHECK(truncation_index(2.5) == 7);
  CHECK(truncation_index(2.3) == 0);
  CHECK(truncation_index(1.5) == 5);
}

TEST_CASE("alpha=1 T_reg") {
  // exp int dt/(2 pi cosh(theta-t)) log|1 + e^{-pi s^2 cosh t + 2 pi i k}|^2
  struct Row {
    double s, k, theta, v;
  };
  const Row rows[] = {
      {1, 0.1, 0, 1.0135554108185678},      {1, 0.1, 0.5, 1.0124728182517349},
      {1, 0.1, -1.2, 1.0086433765540457},   {0.5, 0.25, 0, 1.048891419230187},
      {0.5, 0.25, 0.5, 1.0457205900772655}, {0.5, 0.25, -1.2, 1.0336455741144521},
      {0.5, 0.1, 0, 1.2286802175835896},    {0.5, 0.1, 0.5, 1.2166495790518408},
      {0.5, 0.1, -1.2, 1.1682534322732074},
  };
  for (const Row& row : rows) {
    const ModelParams p = derive_from_s(1, row.s, row.k);
    const RapidityGrid g = RapidityGrid::for_r(p.r);
    const rvec t = treg_central(p, g);
    CHECK(lagrange(t, -g.half_width, g.spacing(), row.theta) == doctest::Approx(row.v).epsilon(1e-7));
  }
}
