#include "sgq/local_im.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "sgq/qt.hpp"

namespace sgq {

namespace {
constexpr double pi = std::numbers::pi;

double sign_pow(int n) { return (n % 2) ? -1.0 : 1.0; }

// a = c0 b0 + c1 b1 + c2 b2 in the least-squares sense
Eigen::Vector3d lsq(const rvec& y, const std::vector<Eigen::Vector3d>& rows, double& res) {
  Eigen::MatrixXd A(rows.size(), 3);
  Eigen::VectorXd b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // column scaling keeps the conditioning sane
    A.row(i) = rows[i].transpose();
    b(i) = y[i];
  }
  Eigen::Vector3d sc = A.colwise().norm().transpose();
  for (int j = 0; j < 3; ++j) A.col(j) /= sc(j);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 3) throw ParamError("degenerate fit basis: 2 alpha coincides with a local exponent");
  Eigen::Vector3d c = qr.solve(b);
  res = (A * c - b).cwiseAbs().maxCoeff();
  return c.cwiseQuotient(sc);
}
}  // namespace

std::pair<double, double> quantum_local_im(const CountingFunction& cf, int n) {
  if (n < 1) throw ParamError("local IM index must be >= 1");
  const double a = cf.params.alpha;
  const int w = 2 * n - 1;
  const double sn = std::sin(pi * w / (2 * a));
  if (std::abs(sn) < 1e-12)
    throw ParamError("sin(pi(2n-1)/(2alpha)) = 0: normalization pole at alpha = " + std::to_string(a));
  double drive = 0;
  if (n == 1) {
    const double c = std::cos(pi / (2 * a));
    if (std::abs(c) < 1e-12) throw ParamError("cos(pi/2alpha) = 0: driving term pole");
    drive = -cf.params.r / (4 * c);
  }
  const double pre = sign_pow(n + 1) / sn / pi;
  const double ip = cf.tail_integral(w).imag(), im = cf.tail_integral(-w).imag();
  return {drive + pre * ip, drive - pre * im};
}

std::pair<double, double> nonlocal_im(const CountingFunction& cf, int n) {
  if (n < 1) throw ParamError("nonlocal IM index must be >= 1");
  const double a = cf.params.alpha;
  const double c = std::cos(pi * a * n);
  if (std::abs(c) < 1e-12) throw ParamError("cos(pi alpha n) = 0: nonlocal IM pole");
  const double pre = a * sign_pow(n) / c / pi;
  const double e = 2 * a * n;
  return {pre * cf.tail_integral(e).imag(), -pre * cf.tail_integral(-e).imag()};
}

double normalize_to_sg(double alpha, double m, int n) {
  if (n < 1) throw ParamError("C_n index must be >= 1");
  if (!(m > 0)) throw ParamError("C_n needs m > 0");
  auto gam = [&](double x) {
    if (x <= 0 && std::abs(x - std::round(x)) < 1e-12)
      throw ParamError("Gamma pole in C_n at alpha = " + std::to_string(alpha));
    return std::tgamma(x);
  };
  const int w = 2 * n - 1;
  const double head = gam(-w / (2 * alpha)) * gam(w * (alpha + 1) / (2 * alpha)) /
                      (2 * std::sqrt(pi) * std::tgamma(n + 1.0));
  const double alt = std::pow(-alpha * alpha / (alpha + 1), n - 1);
  const double base = m / (8 * std::sqrt(pi)) * gam((alpha + 1) / (2 * alpha)) * gam(-1 / (2 * alpha));
  return head * alt * std::pow(base, 1 - 2 * n);
}

ImTable im_table(const CountingFunction& cf, int n_max) {
  ImTable t;
  const double a = cf.params.alpha;
  for (int n = 1; n <= n_max; ++n) {
    const auto [I, Ib] = quantum_local_im(cf, n);
    double G = std::nan(""), Gb = std::nan("");
    if (std::abs(std::cos(pi * a * n)) > 1e-12) std::tie(G, Gb) = nonlocal_im(cf, n);
    const double C = normalize_to_sg(a, cf.params.m, n);
    t.n.push_back(n);
    t.frakI.push_back(I);
    t.frakIbar.push_back(Ib);
    t.frakG.push_back(G);
    t.frakGbar.push_back(Gb);
    t.C.push_back(C);
    t.I.push_back(I / C);
    t.Ibar.push_back(Ib / C);
  }
  return t;
}

ImFit fit_local_im(const CountingFunction& cf) {
  const cvec J = q_central_integral(cf);
  const double a = cf.params.alpha, r = cf.params.r;
  const double c = std::cos(pi / (2 * a));
  const double ls = reflection_log_s(cf);
  const RapidityGrid& g = cf.grid;
  const double W = g.half_width;
  rvec yp, ym;
  std::vector<Eigen::Vector3d> bp, bm;
  for (int i = 0; i < g.n; ++i) {
    const double t = g.node(i), at = std::abs(t);
    if (at < W / 2 || at > 3 * W / 4) continue;
    if (t > 0) {
      yp.push_back(J[i].real() + r * std::exp(-t) / (4 * c));
      bp.emplace_back(-std::exp(-t), std::exp(-2 * a * t), -std::exp(-3 * t));
    } else {
      ym.push_back(J[i].real() + ls + r * std::exp(t) / (4 * c));
      bm.emplace_back(-std::exp(t), std::exp(2 * a * t), -std::exp(3 * t));
    }
  }
  ImFit f;
  double rp = 0, rm = 0;
  const Eigen::Vector3d cp = lsq(yp, bp, rp), cm = lsq(ym, bm, rm);
  f.I1 = cp(0);
  f.G1 = cp(1);
  f.I3 = cp(2);
  f.Ibar1 = cm(0);
  f.Gbar1 = cm(1);
  f.Ibar3 = cm(2);
  f.residual = std::max(rp, rm);
  return f;
}

}  // namespace sgq
