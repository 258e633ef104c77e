#include <fmt/core.h>
#include <fmt/os.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "sgq/local_im.hpp"
#include "sgq/mshg_field.hpp"
#include "sgq/schrodinger.hpp"
#include "sgq/shg.hpp"
#include "sgq/simd.hpp"

using namespace sgq;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string command;
  std::optional<double> alpha, nu, k, s, r, rhat, half_width, tol, damping, contour_shift;
  std::optional<int> points, max_iter;
  std::optional<std::string> n_range;
  double j_max = 2;
  std::string output = "csv";
  std::string out;
};

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<json>> rows;
};

struct Result {
  Table table;
  json grid = json::object(), residuals = json::object(), extra = json::object();
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw ParamError(std::string("missing --") + flag);
  return *v;
}

template <class T>
void from_file(const json& j, const char* key, std::optional<T>& v) {
  if (!v && j.contains(key)) v = j.at(key).get<T>();
}

void load_config(const std::string& path, Config& c) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParamError(std::string("bad config file: ") + e.what());
  }
  from_file(j, "alpha", c.alpha);
  from_file(j, "nu", c.nu);
  from_file(j, "k", c.k);
  from_file(j, "s", c.s);
  from_file(j, "r", c.r);
  from_file(j, "rhat", c.rhat);
  from_file(j, "grid-halfwidth", c.half_width);
  from_file(j, "grid-points", c.points);
  from_file(j, "tol", c.tol);
  from_file(j, "max-iter", c.max_iter);
  from_file(j, "damping", c.damping);
  from_file(j, "contour-shift", c.contour_shift);
  from_file(j, "n-range", c.n_range);
}

json echo(const Config& c) {
  json j;
  j["command"] = c.command;
  auto put = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  put("alpha", c.alpha);
  put("nu", c.nu);
  put("k", c.k);
  put("s", c.s);
  put("r", c.r);
  put("rhat", c.rhat);
  put("grid-halfwidth", c.half_width);
  put("grid-points", c.points);
  put("tol", c.tol);
  put("max-iter", c.max_iter);
  put("damping", c.damping);
  put("contour-shift", c.contour_shift);
  put("n-range", c.n_range);
  j["j-max"] = c.j_max;
  j["output"] = c.output;
  return j;
}

std::pair<int, int> n_range(const Config& c, int lo, int hi) {
  if (!c.n_range) return {lo, hi};
  const std::string& s = *c.n_range;
  const auto p = s.find("..");
  try {
    if (p == std::string::npos) throw ParamError("");
    const int a = std::stoi(s.substr(0, p));
    const int b = std::stoi(s.substr(p + 2));
    if (a > b) throw ParamError("");
    return {a, b};
  } catch (const std::exception&) {
    throw ParamError("--n-range must look like LO..HI, got '" + s + "'");
  }
}

ModelParams model(const Config& c) {
  const double a = need(c.alpha, "alpha");
  const double k = c.k.value_or(0);
  if (c.s && c.r) throw ParamError("give only one of --s and --r");
  if (c.s) return derive_from_s(a, *c.s, k);
  if (c.r) return derive_from_r(a, *c.r, k);
  throw ParamError("missing --s or --r");
}

ShgParams shg_model(const Config& c) {
  const double nu = need(c.nu, "nu");
  if (c.s && c.rhat) throw ParamError("give only one of --s and --rhat");
  if (c.s) return shg_from_s(nu, *c.s);
  if (c.rhat) return shg_from_rhat(nu, *c.rhat);
  throw ParamError("missing --s or --rhat");
}

RapidityGrid grid(const Config& c, double r) {
  const int n = c.points.value_or(4096);
  if (n < 16) throw ParamError("--grid-points must be >= 16");
  if (c.half_width) {
    if (!(*c.half_width > 0)) throw ParamError("--grid-halfwidth must be > 0");
    return RapidityGrid(*c.half_width, n);
  }
  return RapidityGrid::for_r(r, n);
}

DdvOptions ddv_options(const Config& c) {
  DdvOptions o;
  if (c.tol) o.tol = *c.tol;
  if (c.max_iter) o.max_iter = *c.max_iter;
  if (c.damping) o.damping = *c.damping;
  if (c.contour_shift) o.gamma = *c.contour_shift;
  if (!(o.tol > 0)) throw ParamError("--tol must be > 0");
  if (o.max_iter < 1) throw ParamError("--max-iter must be >= 1");
  if (!(o.damping > 0 && o.damping <= 1)) throw ParamError("--damping must be in (0, 1]");
  if (o.gamma < 0) throw ParamError("--contour-shift must be >= 0");
  return o;
}

json grid_meta(const RapidityGrid& g) { return {{"half_width", g.half_width}, {"points", g.n}, {"spacing", g.spacing()}}; }

json params_json(const ModelParams& p) {
  return {{"alpha", p.alpha}, {"beta2", p.beta2}, {"k", p.k}, {"l", p.l()}, {"s", p.s},  {"r", p.r},
          {"M", p.M},         {"m", p.m},         {"rhat", p.rhat}, {"R", p.R},   {"mu", p.mu}, {"B", p.B}};
}

Table one_row(const json& j) {
  Table t;
  std::vector<json> row;
  for (const auto& [key, v] : j.items()) {
    t.cols.push_back(key);
    row.push_back(v);
  }
  t.rows.push_back(row);
  return t;
}

CountingFunction ddv_for(const Config& c, const ModelParams& p, Result& res) {
  const RapidityGrid g = grid(c, p.r);
  CountingFunction cf = solve_ddv(p, g, ddv_options(c));
  res.grid = grid_meta(g);
  res.grid["contour_shift"] = cf.gamma;
  res.residuals["ddv"] = cf.residual;
  res.residuals["ddv_iterations"] = cf.iterations;
  return cf;
}

Result run_params(const Config& c) {
  Result res;
  if (c.nu) {
    const ShgParams p = shg_model(c);
    res.table = one_row({{"nu", p.nu}, {"b2", p.b2}, {"s", p.s}, {"rhat", p.rhat}});
  } else {
    res.table = one_row(params_json(model(c)));
  }
  return res;
}

Result run_ddv(const Config& c) {
  Result res;
  const ModelParams p = model(c);
  const CountingFunction cf = ddv_for(c, p, res);
  res.extra["params"] = params_json(p);
  res.extra["monotone"] = cf.monotone();
  res.table.cols = {"theta", "eps"};
  for (int i = 0; i < cf.grid.n; ++i) res.table.rows.push_back({cf.grid.node(i), cf.eps[i]});
  return res;
}

Result run_zeros(const Config& c) {
  Result res;
  const ModelParams p = model(c);
  const CountingFunction cf = ddv_for(c, p, res);
  const auto [lo, hi] = n_range(c, 0, 9);
  const ZeroSet z = find_zeros(cf, lo, hi);
  double worst = 0;
  res.table.cols = {"n", "theta", "E", "E_of"};
  for (int n = lo; n <= hi; ++n) {
    const double th = z.at(n);
    worst = std::max(worst, std::abs(cf.eps_at(th) - std::numbers::pi * (2 * n + 1)));
    if (n >= 0)
      res.table.rows.push_back({n, th, z.E_plus.at(n), "k"});
    else
      res.table.rows.push_back({n, th, z.E_minus.at(-n - 1), "-k"});
  }
  res.residuals["zero_equation"] = worst;
  return res;
}

Result run_qfn(const Config& c) {
  Result res;
  const ModelParams p = model(c);
  const CountingFunction cf = ddv_for(c, p, res);
  const cvec lq = q_central(cf);
  const double ls = reflection_log_s(cf);
  res.extra["log_S"] = ls;
  res.extra["eta0"] = eta0_from_s(ls, p.k);
  res.extra["central_line_im"] = std::numbers::pi * (p.alpha + 1) / (2 * p.alpha);
  res.table.cols = {"theta", "re_logQ", "im_logQ"};
  for (int i = 0; i < cf.grid.n; ++i) res.table.rows.push_back({cf.grid.node(i), lq[i].real(), lq[i].imag()});
  return res;
}

rvec sample(double a, double b, double h) {
  rvec x;
  const long i0 = std::lround(a / h), i1 = std::lround(b / h);
  for (long i = i0; i <= i1; ++i) x.push_back(double(i) * h);
  return x;
}

rvec j_list(const Config& c) {
  if (!(c.j_max >= 0) || std::abs(2 * c.j_max - std::round(2 * c.j_max)) > 1e-12)
    throw ParamError("--j-max must be a non-negative half-integer");
  return sample(0, c.j_max, 0.5);
}

Result run_tfn(const Config& c) {
  Result res;
  const ModelParams p = model(c);
  const RapidityGrid g = grid(c, p.r);
  const TFunctions T(p, g, ddv_options(c));
  res.grid = grid_meta(g);
  res.residuals["ddv"] = T.q().counting().residual;
  res.extra["degenerate_k"] = T.degenerate();
  const rvec js = j_list(c);
  res.table.cols = {"theta"};
  for (double j : js) res.table.cols.push_back(fmt::format("T_{}", j));
  res.table.cols.push_back("T_reg");
  double imag = 0;
  for (double th : sample(-3, 3, 0.25)) {
    std::vector<json> row = {th};
    for (double j : js) {
      const cplx v = T.t(j, th);
      imag = std::max(imag, std::abs(v.imag()) / std::max(1.0, std::abs(v)));
      row.push_back(v.real());
    }
    row.push_back(T.treg(th).real());
    res.table.rows.push_back(row);
  }
  res.residuals["max_relative_imag"] = imag;
  return res;
}

Result run_im(const Config& c) {
  Result res;
  const ModelParams p = model(c);
  const CountingFunction cf = ddv_for(c, p, res);
  const auto [lo, hi] = n_range(c, 1, 2);
  if (lo < 1) throw ParamError("IM index range must start at 1 or above");
  const ImTable t = im_table(cf, hi);
  res.table.cols = {"n", "frakI", "frakIbar", "frakG", "frakGbar", "C", "I", "Ibar"};
  for (std::size_t i = 0; i < t.n.size(); ++i) {
    if (t.n[i] < lo) continue;
    res.table.rows.push_back({t.n[i], t.frakI[i], t.frakIbar[i], t.frakG[i], t.frakGbar[i], t.C[i], t.I[i], t.Ibar[i]});
  }
  if (p.alpha > 1) {
    const ImFit f = fit_local_im(cf);
    res.extra["fit"] = {{"I1", f.I1}, {"Ibar1", f.Ibar1}, {"G1", f.G1}, {"Gbar1", f.Gbar1}, {"I3", f.I3}, {"Ibar3", f.Ibar3}};
    res.residuals["fit"] = f.residual;
  }
  return res;
}

Result run_ycheck(const Config& c) {
  Result res;
  const ModelParams p = model(c);
  const RapidityGrid g = grid(c, p.r);
  const TFunctions T(p, g, ddv_options(c));
  res.grid = grid_meta(g);
  res.residuals["ddv"] = T.q().counting().residual;
  const FunctionalReport rep = functional_checks(T, {-1.0, -0.5, 0.0, 0.5, 1.0}, c.j_max);
  res.extra["N"] = rep.N;
  res.residuals["worst"] = rep.worst();
  res.table.cols = {"check", "residual"};
  for (const auto& [key, v] : rep.detail) res.table.rows.push_back({key, v});
  return res;
}

Result run_shg(const Config& c) {
  Result res;
  const ShgParams p = shg_model(c);
  RapidityGrid g = shg_grid(p.rhat, c.points.value_or(4096));
  if (c.half_width) g = RapidityGrid(*c.half_width, g.n);
  TbaOptions o;
  if (c.tol) o.tol = *c.tol;
  if (c.max_iter) o.max_iter = *c.max_iter;
  const ShgVacuum v = solve_tba(p, g, o);
  res.grid = grid_meta(g);
  res.residuals["tba"] = v.residual;
  res.residuals["tba_iterations"] = v.iterations;
  res.residuals["wronskian"] = std::max(shg_wronskian_defect(v, 0.0), shg_wronskian_defect(v, 1.0));
  const auto [I1, Ib1] = im_quantum(v, 1);
  const auto [I3, Ib3] = im_quantum(v, 2);
  res.extra = {{"nu", p.nu}, {"b2", p.b2}, {"s", p.s}, {"rhat", p.rhat}, {"C0", v.C0},
               {"C1I1", I1}, {"C1Ibar1", Ib1}, {"C2I3", I3}, {"C2Ibar3", Ib3}};
  res.table.cols = {"theta", "eps", "log_Q"};
  for (int i = 0; i < g.n; ++i) res.table.rows.push_back({g.node(i), v.eps[i], v.log_q(g.node(i)).real()});
  return res;
}

Result run_field(const Config& c) {
  Result res;
  if (c.nu) {
    const ShgParams p = shg_model(c);
    const ShgVacuum v = solve_tba(p, shg_grid(p.rhat, c.points.value_or(4096)));
    const ShgField F(v);
    res.residuals["tba"] = v.residual;
    res.extra = {{"nu", p.nu}, {"rhat", p.rhat}, {"delta0", F.delta0()}};
    res.table.cols = {"x", "eta_hat"};
    for (double x : sample(-2, 2, 0.1)) res.table.rows.push_back({x, F.eta_hat(x)});
    return res;
  }
  const ModelParams p = model(c);
  const RapidityGrid g = grid(c, p.r);
  const TFunctions T(p, g, ddv_options(c));
  const TregTable tab = make_treg_table(T);
  const WChart chart(p);
  res.grid = grid_meta(g);
  res.residuals["ddv"] = T.q().counting().residual;
  res.extra = {{"w0", chart.w0()}, {"rhat", p.rhat}};
  res.table.cols = {"w", "eta_hat_glm", "eta_hat_logdet", "spectral_radius"};
  double worst = 0;
  for (double x : sample(0, 1, 0.05)) {
    const GlmState st = glm_solve(x, tab, chart);
    const LogdetResult ld = eta_logdet(x, tab, chart);
    worst = std::max(worst, std::abs(st.eta_hat - ld.eta_logdet));
    res.table.rows.push_back({x, st.eta_hat, ld.eta_logdet, ld.spectral_radius});
  }
  res.residuals["glm_vs_logdet"] = worst;
  return res;
}

Result run_oracle(const Config& c) {
  Result res;
  const ModelParams p = model(c);
  const CountingFunction cf = ddv_for(c, p, res);
  const auto [lo, hi] = n_range(c, 0, 3);
  if (lo != 0) throw ParamError("oracle range must start at 0");
  const OscillatorSpectrum sp = eigenvalues_shooting(p.alpha, p.l(), hi);
  const CftMatch m = match_cft_zeros(find_zeros(cf, 0, hi), p, sp);
  res.extra["l"] = p.l();
  res.table.cols = {"n", "E_oscillator", "E_zeros", "deviation", "nodes"};
  for (std::size_t n = 0; n < m.E_zero.size(); ++n)
    res.table.rows.push_back({int(n), m.E_osc[n], m.E_zero[n], m.deviation[n], int(sp.nodes[n])});
  return res;
}

Result run_selftest(const Config&, bool& ok) {
  Result res;
  res.table.cols = {"check", "value", "tolerance", "status"};
  ok = true;
  auto add = [&](const std::string& name, double v, double tol) {
    const bool pass = std::isfinite(v) && v < tol;
    ok = ok && pass;
    res.table.rows.push_back({name, v, tol, pass ? "PASS" : "FAIL"});
  };
  constexpr double pi = std::numbers::pi;
  {
    const ModelParams p = derive_from_s(1, 1, 0.2);
    const CountingFunction cf = solve_ddv(p, RapidityGrid::for_r(p.r));
    double e = 0;
    for (int i = 0; i < cf.grid.n; ++i) e = std::max(e, std::abs(cf.eps[i] - (pi * std::sinh(cf.grid.node(i)) - 0.4 * pi)));
    add("alpha=1 eps closed form", e, 1e-12);
  }
  {
    const ModelParams p = derive_from_s(1, 1, 0);
    const ZeroSet z = find_zeros(solve_ddv(p, RapidityGrid::for_r(p.r)), 0, 0);
    add("alpha=1 E_0 = 1+sqrt2", std::abs(z.E_plus.at(0) / (1 + std::sqrt(2.0)) - 1), 1e-12);
  }
  {
    const ModelParams p = derive_from_s(1, 1, 0.1);
    const RapidityGrid g = RapidityGrid::for_r(p.r);
    const rvec t = treg_central(p, g);
    add("alpha=1 T_reg closed form", std::abs(lagrange(t, -g.half_width, g.spacing(), 0.0) - 1.0135554108185678), 1e-7);
  }
  {
    const ModelParams p = derive_from_s(2, 0.5, 0.1);
    const TFunctions T(p, RapidityGrid::for_r(p.r));
    const FunctionalReport rep = functional_checks(T, {-1.0, -0.3, 0.0, 0.4, 1.2});
    add("quantum Wronskian", rep.wronskian, 1e-6);
    add("T-Q relation", rep.tq, 1e-6);
    add("fusion", rep.fusion, 1e-6);
    add("truncation", rep.truncation, 1e-6);
    add("Y-system", rep.ysystem, 1e-6);
  }
  {
    const ShgVacuum v = solve_tba(shg_from_rhat(3, 0.5), shg_grid(0.5));
    add("sinh-Gordon Wronskian", shg_wronskian_defect(v, 0.3), 1e-12);
  }
  res.extra["simd"] = simd::name(simd::active());
  return res;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt::format("{:.17g}", v.get<double>());
  return "nan";
}

std::string render(const Config& c, const Result& r, double seconds) {
  std::ostringstream os;
  if (c.output == "csv") {
    for (std::size_t i = 0; i < r.table.cols.size(); ++i) os << (i ? "," : "") << r.table.cols[i];
    os << '\n';
    for (const auto& row : r.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
      os << '\n';
    }
    return os.str();
  }
  json j;
  j["config"] = echo(c);
  j["grid"] = r.grid;
  j["residuals"] = r.residuals;
  j["result"] = r.extra;
  json cols = json::object();
  for (std::size_t i = 0; i < r.table.cols.size(); ++i) {
    json col = json::array();
    for (const auto& row : r.table.rows) col.push_back(row[i]);
    cols[r.table.cols[i]] = col;
  }
  j["table"] = cols;
  j["wall_clock_s"] = seconds;
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sine-Gordon / sinh-Gordon ODE-IM toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  std::string config_file;
  app.add_option("--config", config_file, "JSON file with the same keys as the flags");
  app.add_option("--alpha", c.alpha);
  app.add_option("--nu", c.nu);
  app.add_option("--k", c.k);
  app.add_option("--s", c.s);
  app.add_option("--r", c.r);
  app.add_option("--rhat", c.rhat);
  app.add_option("--grid-halfwidth", c.half_width);
  app.add_option("--grid-points", c.points);
  app.add_option("--tol", c.tol);
  app.add_option("--max-iter", c.max_iter);
  app.add_option("--damping", c.damping);
  app.add_option("--contour-shift", c.contour_shift);
  app.add_option("--n-range,--n", c.n_range, "LO..HI");
  app.add_option("--j-max", c.j_max);
  app.add_option("--output", c.output)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "output path (stdout if absent)");
  const char* cmds[][2] = {
      {"params", "derived parameters"},         {"ddv", "solve the DDV equation"},
      {"zeros", "zeros of Q and energies"},     {"qfn", "log Q on the central line"},
      {"tfn", "T functions on the real axis"},  {"im", "local and nonlocal IM"},
      {"ycheck", "functional relations"},       {"shg", "sinh-Gordon TBA vacuum"},
      {"field", "classical field eta_hat"},     {"oracle", "Schrodinger spectrum vs zeros"},
      {"selftest", "identity suite"},
  };
  for (auto& cmd : cmds) app.add_subcommand(cmd[0], cmd[1]);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }
  c.command = app.get_subcommands().front()->get_name();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!config_file.empty()) load_config(config_file, c);
    Result r;
    bool ok = true;
    const std::string& cmd = c.command;
    if (cmd == "params") r = run_params(c);
    else if (cmd == "ddv") r = run_ddv(c);
    else if (cmd == "zeros") r = run_zeros(c);
    else if (cmd == "qfn") r = run_qfn(c);
    else if (cmd == "tfn") r = run_tfn(c);
    else if (cmd == "im") r = run_im(c);
    else if (cmd == "ycheck") r = run_ycheck(c);
    else if (cmd == "shg") r = run_shg(c);
    else if (cmd == "field") r = run_field(c);
    else if (cmd == "oracle") r = run_oracle(c);
    else r = run_selftest(c, ok);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string text = render(c, r, sec);
    if (c.out.empty()) {
      fmt::print("{}", text);
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw ParamError("cannot write " + c.out);
      f << text;
    }
    return ok ? 0 : 2;
  } catch (const ParamError& e) {
    fmt::print(stderr, "invalid parameters: {}\n", e.what());
    return 3;
  } catch (const SolveError& e) {
    fmt::print(stderr, "solver failed: {}\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    fmt::print(stderr, "invalid parameters: {}\n", e.what());
    return 3;
  }
}
