#pragma once
#include <stdexcept>
#include <string>

namespace sgq {

// Invalid user parameters (CLI exit code 3).
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Solver failure (CLI exit code 2).
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelParams {
  double alpha = 1;
  double beta2 = 0.5;
  double k = 0;
  double s = 1;
  double r = 0;
  double M = 0;
  double m = 0;
  double rhat = 0;
  double R = 1;
  double mu = 0;
  double B = 0;

  double l() const;
};

struct ShgParams {
  double nu = 3;
  double b2 = 0.5;
  double s = 1;
  double rhat = 0.5;
};

// B = 2 sqrt(pi) Gamma(1+1/2a) / Gamma(3/2+1/2a)
double b_const(double alpha);

// M as a function of mu at fixed coupling.
double soliton_mass(double alpha, double mu);

ModelParams derive_from_s(double alpha, double s, double k = 0, double R = 1);
ModelParams derive_from_r(double alpha, double r, double k = 0, double R = 1);
ModelParams derive_from_mu(double alpha, double mu, double R, double k = 0);

double shg_rhat(double nu, double s);
ShgParams shg_from_s(double nu, double s);
ShgParams shg_from_rhat(double nu, double rhat);
ShgParams dual_map(const ShgParams& p);

// Reduce k to [0, 1/2]. Returns the reduced value; flip is set when the
// reduction used Q(theta,-k) = Q(-theta,k).
double reduce_k(double k, bool& flip);

}  // namespace sgq
