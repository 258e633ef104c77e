#pragma once
#include <map>
#include <memory>
#include <string>

#include "sgq/ddv.hpp"

namespace sgq {

struct ZeroSet {
  int n_min = 0, n_max = -1;
  rvec theta;                    // theta[n - n_min]
  std::map<int, double> E_plus;   // E_n(k) from zeros n >= 0
  std::map<int, double> E_minus;  // E_n(-k) from zeros -n-1 < 0
  double at(int n) const { return theta.at(n - n_min); }
  int size() const { return n_max - n_min + 1; }
};

// Zeros with eps(theta_n) = pi(2n+1) for n_lo <= n <= n_hi.
ZeroSet find_zeros(const CountingFunction& cf, int n_lo, int n_hi);
// All zeros at least `margin` inside the grid.
ZeroSet find_zeros(const CountingFunction& cf, double margin = 1.0);

// log S = alpha int dtheta/pi Im log(1 + e^{-i eps(theta - i0)})
double reflection_log_s(const CountingFunction& cf);
// eta0 from S = Gamma(2k)/Gamma(1-2k) 2^{4k-1} e^{eta0}, 0 < k < 1/2
double eta0_from_s(double log_s, double k);

// log Q(theta_i + i pi(alpha+1)/(2 alpha)) on the DDV grid.
cvec q_central(const CountingFunction& cf);
// Only the integral part J(theta_i) of the central-line formula.
cvec q_central_integral(const CountingFunction& cf);

// Product representation over zeros; built at reduced k in [0, 1/2].
class QFunction {
 public:
  explicit QFunction(const CountingFunction& cf);
  static QFunction build(const ModelParams& p, const RapidityGrid& g, const DdvOptions& o = {});

  // log Q(theta, k) for the original k (reflection applied when needed)
  cplx log_q(cplx theta) const;
  cplx q(cplx theta) const { return std::exp(log_q(theta)); }
  // Q(theta, -k) = Q(-theta, k)
  cplx q_minus(cplx theta) const { return q(-theta); }

  double k() const { return k_orig_; }
  double k_reduced() const { return cf_->params.k; }
  bool flipped() const { return flip_; }
  const CountingFunction& counting() const { return *cf_; }
  const ModelParams& params() const { return cf_->params; }
  const ZeroSet& zeros() const { return zeros_; }
  double log_c() const { return log_c_; }
  // log S at the original k: integral and zero-product routes
  double log_s() const;
  double log_s_product() const;
  int explicit_factors(cplx theta) const;

 private:
  cplx log_q_reduced(cplx theta) const;
  std::shared_ptr<const CountingFunction> cf_;
  ZeroSet zeros_;
  double k_orig_ = 0;
  bool flip_ = false;
  double p_ = 1, s2a_ = 1;
  rvec Ep_, Em_;  // full lists including asymptotic zeros
  double log_c_ = 0, log_s_prod_ = 0;
  std::vector<int> checkpoints_;
  std::vector<rvec> Sp_, Sm_;  // tail power sums per checkpoint, j = 1..J
};

// Quantum Wronskian Q(t+d,k)Q(t-d,-k) - Q(t-d,k)Q(t+d,-k), d = i pi/(2 alpha)
cplx wronskian(const QFunction& q, cplx theta);

class TFunctions {
 public:
  TFunctions(const ModelParams& p, const RapidityGrid& g, const DdvOptions& o = {});
  // T_j from the Q bilinear; Richardson in k at degenerate k.
  cplx t(double j, cplx theta) const;
  // T_{1/2} from the Baxter equation
  cplx t_half_tq(cplx theta) const;
  // T_{1/2}(theta) exp(-r tan(pi/2alpha) cosh theta), real theta
  cplx treg(double theta) const;
  // T_reg at theta = x + i pi(alpha+1)/(2 alpha), in log space
  cplx treg_line(double x) const;
  // T_{1/2}(z) exp(-r tan(pi/2alpha) cosh z) from the Baxter equation
  cplx treg_at(cplx z) const;
  bool degenerate() const { return degenerate_; }
  const QFunction& q() const { return *q_.front(); }
  const ModelParams& params() const { return params_; }

 private:
  cplx t_single(const QFunction& q, double j, cplx theta) const;
  ModelParams params_;
  bool degenerate_ = false;
  std::vector<std::shared_ptr<QFunction>> q_;  // [0] at k; [1],[2] Richardson points
};

struct FunctionalReport {
  int N = 0;  // truncation index, 0 when 2 alpha is not an integer
  double tq = 0, fusion = 0, truncation = 0, ysystem = 0, wronskian = 0;
  std::map<std::string, double> detail;
  double worst() const;
};

// Sup-norm residuals over the sample points (relative to the size of the terms).
FunctionalReport functional_checks(const TFunctions& t, const rvec& thetas, double j_max = 2);

int truncation_index(double alpha);

// exp(J(theta_i, k) + J(theta_i, -k)) on the DDV grid; equals T_reg at alpha = 1.
rvec treg_central(const ModelParams& p, const RapidityGrid& g, const DdvOptions& o = {});

}  // namespace sgq
