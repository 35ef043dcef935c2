/*
   Copyright 2026 The toephank authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Experiment configs, the dispatcher behind the `toephank` CLI, and report
// emission (JSON / CSV / plot data). Reports are deterministic given the
// config seed: re-running a config produces byte-identical JSON apart from
// the wall-time field.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "serialize.hpp"

namespace toephank {

inline constexpr const char* kVersion = "0.1.0";

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"decompose", "norm_sweep", "sandwich",
                                              "sharpness",  "hartman",    "cesaro",
                                              "flipnorm",   "hardy_consistency"};
  return names;
}

struct ExperimentConfig {
  std::string name = "run";
  std::string experiment;
  std::vector<double> p_values{2.0};
  std::vector<long> sizes;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;
  Json symbols = Json::object();
  Json params = Json::object();

  double tol(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
  double param(const std::string& key, double fallback) const {
    return params.contains(key) ? params.at(key).get<double>() : fallback;
  }
  long lparam(const std::string& key, long fallback) const {
    return params.contains(key) ? params.at(key).get<long>() : fallback;
  }
};

inline Json to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  j["experiment"] = c.experiment;
  j["p"] = c.p_values;
  j["sizes"] = c.sizes;
  j["seed"] = c.seed;
  j["tolerances"] = c.tolerances;
  j["symbols"] = c.symbols;
  j["params"] = c.params;
  return j;
}

inline ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig c;
  if (j.contains("name")) c.name = j.at("name").get<std::string>();
  c.experiment = j.at("experiment").get<std::string>();
  bool known = false;
  for (const std::string& n : experiment_names()) known = known || n == c.experiment;
  if (!known) throw std::invalid_argument("unknown experiment: " + c.experiment);
  if (j.contains("p")) c.p_values = j.at("p").get<std::vector<double>>();
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<long>>();
  for (long n : c.sizes)
    if (n < 1 || n > kSectionCap)
      throw std::invalid_argument("config size outside [1, 8192]: " + std::to_string(n));
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tolerances"))
    c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  if (j.contains("symbols")) c.symbols = j.at("symbols");
  if (j.contains("params")) c.params = j.at("params");
  return c;
}

// ---------------------------------------------------------------------------
// Report types
// ---------------------------------------------------------------------------

struct Assertion {
  std::string name;      // names the inequality / property checked
  std::string relation;  // e.g. "residual <= tol"
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunResult {
  std::string name;
  bool pass = true;
  std::string error;  // set when the run aborted
  std::vector<Assertion> assertions;
  // flattened numerics for CSV; each row is an ordered list of (column, value)
  std::vector<std::vector<std::pair<std::string, double>>> csv_rows;
  std::string series_name;  // e.g. "size_vs_norm"
  std::vector<std::pair<double, double>> series;
  Json detail = Json::object();  // full module output (reports, decompositions)
};

struct Report {
  Json config_echo;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::vector<RunResult> runs;
  bool passed = true;
  double walltime_seconds = 0.0;
};

namespace detail {

inline Json json_num(double v) {
  if (v == kInf) return Json("inf");
  if (v == -kInf) return Json("-inf");
  return Json(v);
}

inline std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace detail

inline Json to_json(const Report& r) {
  Json j;
  j["config"] = r.config_echo;
  Json env;
  env["version"] = r.version;
  env["seed"] = r.seed;
  j["environment"] = std::move(env);
  Json runs = Json::array();
  for (const RunResult& run : r.runs) {
    Json rj;
    rj["name"] = run.name;
    rj["pass"] = run.pass;
    if (!run.error.empty()) rj["error"] = run.error;
    Json as = Json::array();
    for (const Assertion& a : run.assertions) {
      Json aj;
      aj["name"] = a.name;
      aj["relation"] = a.relation;
      aj["lhs"] = detail::json_num(a.lhs);
      aj["rhs"] = detail::json_num(a.rhs);
      aj["tolerance"] = a.tolerance;
      aj["pass"] = a.pass;
      as.push_back(std::move(aj));
    }
    rj["assertions"] = std::move(as);
    if (!run.detail.empty()) rj["detail"] = run.detail;
    if (!run.series.empty()) {
      Json s = Json::array();
      for (auto [x, y] : run.series) s.push_back(Json::array({x, y}));
      rj[run.series_name.empty() ? "series" : run.series_name] = std::move(s);
    }
    runs.push_back(std::move(rj));
  }
  j["runs"] = std::move(runs);
  j["passed"] = r.passed;
  j["walltime_seconds"] = r.walltime_seconds;
  return j;
}

// ---------------------------------------------------------------------------
// Config resolvers: named symbols, sequences and operators
// ---------------------------------------------------------------------------

namespace detail {

inline SymbolSpec builtin_symbol(const Json& j) {
  const std::string b = j.at("builtin").get<std::string>();
  if (b == "z_plus_zinv") {
    return SymbolSpec::fourier_poly(FourierSequence(
        IndexRange{-1, 1}, {Complex(1, 0), Complex(0, 0), Complex(1, 0)}));
  }
  if (b == "one")
    return SymbolSpec::fourier_poly(FourierSequence(IndexRange{0, 0}, {Complex(1, 0)}));
  if (b == "monomial") {
    const long k = j.at("k").get<long>();
    return SymbolSpec::fourier_poly(
        FourierSequence(IndexRange{k, k}, {Complex(1, 0)}));
  }
  if (b == "sharpness") return SymbolSpec::sharpness(j.at("p").get<double>());
  throw std::invalid_argument("unknown builtin symbol: " + b);
}

inline SymbolSpec resolve_symbol(const ExperimentConfig& cfg, const std::string& key,
                                 const std::optional<Json>& fallback = std::nullopt) {
  Json j;
  if (cfg.symbols.contains(key)) j = cfg.symbols.at(key);
  else if (fallback) j = *fallback;
  else throw std::invalid_argument("config does not resolve symbol '" + key + "'");
  if (j.contains("builtin")) return builtin_symbol(j);
  return symbol_spec_from_json(j);
}

inline FourierSequence generated_sequence(const Json& j, std::uint64_t run_seed) {
  const std::string kind = j.at("kind").get<std::string>();
  auto window = [&j]() {
    return IndexRange{j.at("lo").get<long>(), j.at("hi").get<long>()};
  };
  auto decay = [&j](DecayClass dflt) {
    if (!j.contains("decay")) return dflt;
    const std::string d = j.at("decay").get<std::string>();
    if (d == "finite_support") return DecayClass::finite_support;
    if (d == "summable") return DecayClass::summable;
    if (d == "c0") return DecayClass::c0;
    if (d == "bounded") return DecayClass::bounded;
    return DecayClass::unknown;
  };
  if (kind == "values") return fourier_sequence_from_json(j);
  if (kind == "zeros") return FourierSequence::zero(window(), decay(DecayClass::finite_support));
  if (kind == "one_over_j") {
    IndexRange w = window();
    if (w.lo < 1) throw std::invalid_argument("one_over_j: lo must be >= 1");
    std::vector<Complex> v;
    for (long i = w.lo; i <= w.hi; ++i) v.emplace_back(1.0 / static_cast<double>(i), 0.0);
    return FourierSequence(w, std::move(v), decay(DecayClass::c0));
  }
  if (kind == "one_over_j_squared") {
    IndexRange w = window();
    if (w.lo < 1) throw std::invalid_argument("one_over_j_squared: lo must be >= 1");
    std::vector<Complex> v;
    for (long i = w.lo; i <= w.hi; ++i)
      v.emplace_back(1.0 / static_cast<double>(i * i), 0.0);
    return FourierSequence(w, std::move(v), decay(DecayClass::summable));
  }
  if (kind == "unit") {
    IndexRange w = window();
    const long idx = j.at("index").get<long>();
    FourierSequence s = FourierSequence::zero(w, decay(DecayClass::finite_support));
    if (!w.contains(idx)) throw std::invalid_argument("unit sequence: index outside window");
    s.values()[static_cast<std::size_t>(idx - w.lo)] = Complex(1, 0);
    return s;
  }
  const std::uint64_t seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : run_seed;
  Rng rng(seed);
  if (kind == "random_uniform") {
    IndexRange w = window();
    std::vector<Complex> v;
    for (long i = w.lo; i <= w.hi; ++i) v.push_back(rng.uniform_complex(-1.0, 1.0));
    return FourierSequence(w, std::move(v), decay(DecayClass::finite_support));
  }
  if (kind == "random_over_j") {
    IndexRange w = window();
    if (w.lo < 1) throw std::invalid_argument("random_over_j: lo must be >= 1");
    std::vector<Complex> v;
    for (long i = w.lo; i <= w.hi; ++i)
      v.push_back(rng.uniform_complex(-1.0, 1.0) / static_cast<double>(i));
    return FourierSequence(w, std::move(v), decay(DecayClass::c0));
  }
  throw std::invalid_argument("unknown sequence kind: " + kind);
}

inline FourierSequence resolve_sequence(const ExperimentConfig& cfg, const std::string& key,
                                        std::uint64_t run_seed,
                                        const std::optional<Json>& fallback = std::nullopt) {
  Json j;
  if (cfg.symbols.contains(key)) j = cfg.symbols.at(key);
  else if (fallback) j = *fallback;
  else throw std::invalid_argument("config does not resolve sequence '" + key + "'");
  if (j.contains("kind")) return generated_sequence(j, run_seed);
  return fourier_sequence_from_json(j);
}

inline std::optional<OperatorSpec> resolve_operator(const ExperimentConfig& cfg,
                                                    const std::string& key) {
  if (!cfg.symbols.contains(key) || cfg.symbols.at(key).is_null()) return std::nullopt;
  return operator_spec_from_json(cfg.symbols.at(key));
}

inline Assertion make_assertion(std::string name, std::string relation, double lhs, double rhs,
                                double tolerance, bool pass) {
  return Assertion{std::move(name), std::move(relation), lhs, rhs, tolerance, pass};
}

inline void check_le(RunResult& r, const std::string& name, double lhs, double rhs, double tol) {
  r.assertions.push_back(
      make_assertion(name, "lhs <= rhs + tol", lhs, rhs, tol, lhs <= rhs + tol));
}

inline void check_ge(RunResult& r, const std::string& name, double lhs, double rhs, double tol) {
  r.assertions.push_back(
      make_assertion(name, "lhs >= rhs - tol", lhs, rhs, tol, lhs >= rhs - tol));
}

inline void check_true(RunResult& r, const std::string& name, bool flag) {
  r.assertions.push_back(make_assertion(name, "flag == true", flag ? 1.0 : 0.0, 1.0, 0.0, flag));
}

// ---------------------------------------------------------------------------
// Individual experiments (one RunResult per (p, n) combination as apt)
// ---------------------------------------------------------------------------

inline RunResult run_decompose(const ExperimentConfig& cfg, long n, std::uint64_t run_seed) {
  RunResult r;
  r.name = "decompose n=" + std::to_string(n);
  Json phi_fallback{{"kind", "random_uniform"}, {"lo", -(n - 1)}, {"hi", n - 1}};
  Json psi_fallback{{"kind", "random_over_j"}, {"lo", 1}, {"hi", 2 * n - 1}};
  FourierSequence phi = resolve_sequence(cfg, "phi", run_seed, Json(phi_fallback));
  FourierSequence psi = resolve_sequence(cfg, "psi", run_seed + 1, Json(psi_fallback));

  FiniteSection a = section(
      OperatorSpec::sum({OperatorSpec::toeplitz(phi), OperatorSpec::hankel(psi)}),
      IndexRange{0, n - 1}, IndexRange{0, n - 1});
  const double disp_tol = cfg.tol("displacement", 1e-8);
  const double disp = displacement_transform(a).max_abs();
  check_le(r, "displacement relation vanishes", disp, 0.0, disp_tol);

  Decomposition d = extract(a, disp_tol);
  const double res_tol = cfg.tol("residual", 1e-12);
  check_le(r, "reconstruction residual", d.residual, 0.0, res_tol);

  r.csv_rows.push_back({{"n", static_cast<double>(n)},
                        {"displacement", disp},
                        {"residual", d.residual},
                        {"canonical", d.canonical ? 1.0 : 0.0}});
  r.detail = to_json(d);
  return r;
}

inline RunResult run_norm_sweep(const ExperimentConfig& cfg, double p, std::uint64_t run_seed) {
  RunResult r;
  r.name = "norm_sweep p=" + compact(p);
  r.series_name = "size_vs_norm";
  SymbolSpec a = resolve_symbol(cfg, "a", Json{{"builtin", "z_plus_zinv"}});
  std::vector<long> sizes = cfg.sizes.empty() ? std::vector<long>{4, 16, 64} : cfg.sizes;

  double prev = -kInf;
  double min_increment = kInf;
  for (long n : sizes) {
    const IndexRange lags{-(n - 1), n - 1};
    const long grid = next_power_of_two(std::max(4 * lags.length(), 1024L));
    FourierSequence ahat = fourier_coefficients(a, lags, grid);
    PNormRequest req;
    req.p = p;
    req.seed = run_seed;
    NormEstimate est = matrix_pnorm(
        section(OperatorSpec::toeplitz(ahat), IndexRange{0, n - 1}, IndexRange{0, n - 1}), req);
    r.series.emplace_back(static_cast<double>(n), est.lower);
    r.csv_rows.push_back({{"p", p},
                          {"n", static_cast<double>(n)},
                          {"lower", est.lower},
                          {"upper", est.upper}});
    if (prev != -kInf) min_increment = std::min(min_increment, est.lower - prev);
    prev = est.lower;
  }
  if (p == 2.0 && sizes.size() > 1)
    check_ge(r, "section 2-norms nondecreasing in n", min_increment, 0.0,
             cfg.tol("monotone", 1e-10));
  return r;
}

inline RunResult run_sandwich(const ExperimentConfig& cfg, double p, long n,
                              std::uint64_t run_seed) {
  RunResult r;
  r.name = "sandwich p=" + compact(p) + " n=" + std::to_string(n);
  SymbolSpec a = resolve_symbol(cfg, "a", Json{{"builtin", "z_plus_zinv"}});
  Json psi_fallback{{"kind", "one_over_j"}, {"lo", 1}, {"hi", 2 * n - 1}};
  FourierSequence psi = resolve_sequence(cfg, "psi", run_seed, Json(psi_fallback));
  std::optional<OperatorSpec> k = resolve_operator(cfg, "K");

  const double tol = cfg.tol("check", 1e-6);
  SandwichReport rep = sandwich_check_sequence(a, psi, k, p, n, tol, run_seed);
  check_true(r, "lower sandwich bound holds", rep.lower_bound_ok);
  check_true(r, "upper sandwich bound holds", rep.upper_bound_ok);
  if (cfg.params.contains("norm_bracket")) {
    const double lo = cfg.params.at("norm_bracket").at(0).get<double>();
    const double hi = cfg.params.at("norm_bracket").at(1).get<double>();
    check_ge(r, "|A| within bracket (lower end)", rep.total_norm.lower, lo, 0.0);
    check_le(r, "|A| within bracket (upper end)", rep.total_norm.upper, hi, 0.0);
  }
  r.csv_rows.push_back(
      {{"p", p},
       {"n", static_cast<double>(n)},
       {"lower", std::max(rep.symbol_norm.lower, 0.5 * rep.hankel_norm.lower)},
       {"value", rep.total_norm.lower},
       {"upper", rep.symbol_norm.upper + rep.hankel_norm.upper},
       {"ok", rep.lower_bound_ok && rep.upper_bound_ok ? 1.0 : 0.0}});
  r.detail = to_json(rep);
  return r;
}

inline RunResult run_sharpness(const ExperimentConfig& cfg, double p, std::uint64_t run_seed) {
  RunResult r;
  r.name = "sharpness p=" + compact(p);
  SymbolSpec a = SymbolSpec::sharpness(p);
  HpOpNormBudget budget;
  budget.starts = static_cast<int>(cfg.lparam("starts", 16));
  budget.max_iter = cfg.lparam("iters", 100);
  budget.seed = run_seed;
  const long deg = cfg.lparam("deg", 32);

  NormEstimate opt = hp_opnorm_lower(a, nullptr, p, deg, budget);
  const double sup = sup_norm(a, 1024);
  const double cp = cp_constant(p);
  const double bracket = cfg.tol("bracket", 0.05);
  check_ge(r, "optimizer lower above |a|_inf bracket", opt.lower, sup, bracket);
  check_le(r, "optimizer lower below c_p |a|_inf bracket", opt.lower, cp * sup, bracket);

  // certified interval: symbol lower bound joined with the optimizer output
  const double lower = std::max(opt.lower, sup);
  const double upper = cp * sup;
  check_le(r, "certified interval is nonempty", lower, upper, cfg.tol("check", 1e-9));
  r.csv_rows.push_back({{"p", p},
                        {"deg", static_cast<double>(deg)},
                        {"optimizer_lower", opt.lower},
                        {"lower", lower},
                        {"upper", upper}});
  r.detail = to_json(opt);
  r.detail["certified_lower"] = lower;
  r.detail["certified_upper"] = upper;
  return r;
}

inline RunResult run_hartman(const ExperimentConfig& cfg, std::uint64_t run_seed) {
  RunResult r;
  r.name = "hartman";
  std::vector<long> sizes = cfg.sizes.empty() ? std::vector<long>{64, 128, 256} : cfg.sizes;
  Json psi_fallback{{"kind", "one_over_j_squared"}, {"lo", 1}, {"hi", 2 * sizes.back() - 1}};
  FourierSequence psi = resolve_sequence(cfg, "psi", run_seed, Json(psi_fallback));
  const double threshold = cfg.param("threshold", 0.1);

  std::vector<long> counts = hartman_probe(psi, sizes, threshold);
  std::vector<double> norms;
  for (long n : sizes) {
    PNormRequest req;
    req.seed = run_seed;
    norms.push_back(matrix_pnorm(section(OperatorSpec::hankel(psi), IndexRange{0, n - 1},
                                         IndexRange{0, n - 1}),
                                 req)
                        .lower);
  }

  const std::string expect =
      cfg.params.contains("expect") ? cfg.params.at("expect").get<std::string>() : "";
  if (expect == "constant") {
    long lo = counts.front(), hi = counts.front();
    for (long c : counts) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    check_le(r, "singular value counts constant across sizes", static_cast<double>(hi - lo), 0.0,
             0.0);
  } else if (expect == "increasing") {
    bool inc = true;
    for (std::size_t i = 1; i < counts.size(); ++i) inc = inc && counts[i] > counts[i - 1];
    check_true(r, "singular value counts strictly increase", inc);
  }
  if (cfg.params.contains("norm_bracket")) {
    const double lo = cfg.params.at("norm_bracket").at(0).get<double>();
    const double hi = cfg.params.at("norm_bracket").at(1).get<double>();
    check_ge(r, "|H_n| within bracket (lower end)", norms.back(), lo, 0.0);
    check_le(r, "|H_n| within bracket (upper end)", norms.back(), hi, 0.0);
  }
  if (cfg.params.contains("norm_monotone") && cfg.params.at("norm_monotone").get<bool>()) {
    bool inc = true;
    for (std::size_t i = 1; i < norms.size(); ++i) inc = inc && norms[i] >= norms[i - 1] - 1e-12;
    check_true(r, "|H_n| nondecreasing toward the operator norm", inc);
  }

  r.series_name = "size_vs_count";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    r.series.emplace_back(static_cast<double>(sizes[i]), static_cast<double>(counts[i]));
    r.csv_rows.push_back({{"n", static_cast<double>(sizes[i])},
                          {"count", static_cast<double>(counts[i])},
                          {"norm2", norms[i]},
                          {"threshold", threshold}});
  }
  return r;
}

inline RunResult run_cesaro(const ExperimentConfig& cfg, std::uint64_t run_seed) {
  RunResult r;
  r.name = "cesaro";
  const long n = cfg.lparam("n_average", 200);
  const long w = cfg.lparam("window", 2 * n + 20);
  Json base_fallback{{"kind", "values"},
                     {"lo", -1},
                     {"values", Json::array({Json::array({1.0, 0.0}), Json::array({0.0, 0.0}),
                                             Json::array({1.0, 0.0})})}};
  FourierSequence base = resolve_sequence(cfg, "phi", run_seed, Json(base_fallback));
  Complex cb_even(1, 0), cb_odd(-1, 0);
  if (cfg.params.contains("checkerboard")) {
    const Json& cb = cfg.params.at("checkerboard");
    cb_even = Complex(cb.at(0).at(0).get<double>(), cb.at(0).at(1).get<double>());
    cb_odd = Complex(cb.at(1).at(0).get<double>(), cb.at(1).at(1).get<double>());
  }

  // phi = base + checkerboard lags on a window wide enough for the average
  std::vector<Complex> vals;
  const IndexRange win{-w, w};
  for (long m = -w; m <= w; ++m) {
    Complex v = win.contains(m) && base.covered(m) ? base.at(m) : Complex(0, 0);
    vals.push_back(v + (mod(m, 2) == 0 ? cb_even : cb_odd));
  }
  FourierSequence phi(win, std::move(vals), DecayClass::bounded);

  auto [remainder, pair] = cesaro_checkerboard_split(phi, n);
  const double rate = 3.0 / static_cast<double>(2 * n + 1);
  check_le(r, "recovered even checkerboard value", std::abs(pair.first - cb_even), 0.0, rate);
  check_le(r, "recovered odd checkerboard value", std::abs(pair.second - cb_odd), 0.0, rate);

  double rem_err = 0.0;
  for (long m = remainder.lo(); m <= remainder.hi(); ++m) {
    Complex expected = base.covered(m) ? base.at(m) : Complex(0, 0);
    rem_err = std::max(rem_err, std::abs(remainder.at(m) - expected));
  }
  check_le(r, "remainder matches the base sequence", rem_err, 0.0, rate);

  r.csv_rows.push_back({{"n", static_cast<double>(n)},
                        {"alpha_even_err", std::abs(pair.first - cb_even)},
                        {"alpha_odd_err", std::abs(pair.second - cb_odd)},
                        {"remainder_err", rem_err},
                        {"rate", rate}});
  return r;
}

inline RunResult run_flipnorm(const ExperimentConfig& cfg, double p, long n,
                              std::uint64_t run_seed) {
  RunResult r;
  r.name = "flipnorm p=" + compact(p) + " n=" + std::to_string(n);
  Json a_fallback{{"type", "fourier_poly"},
                  {"coeffs", Json{{"lo", 0}, {"values", Json::array({Json::array({1.0, 0.0}),
                                                                     Json::array({0.5, 0.0})})}}}};
  Json c_fallback{{"type", "fourier_poly"},
                  {"coeffs", Json{{"lo", 2}, {"values", Json::array({Json::array({1.0 / 3.0, 0.0})})}}}};
  SymbolSpec a = resolve_symbol(cfg, "a", Json(a_fallback));
  SymbolSpec c = resolve_symbol(cfg, "c", Json(c_fallback));
  const long grid = cfg.lparam("grid", 2048);

  const double flip = flip_multiplier_norm(a, c, p, grid);

  // cross-check against the section of L(a_hat) + L(c_hat) J on a flip-closed
  // window [-n/2, n/2 - 1]
  const long m = n / 2;
  const IndexRange win{-m, m - 1};
  const long lagspan = 2 * n;
  const long cgrid = next_power_of_two(std::max(4 * (2 * lagspan + 1), 1024L));
  FourierSequence ahat = fourier_coefficients(a, IndexRange{-lagspan, lagspan}, cgrid);
  FourierSequence chat = fourier_coefficients(c, IndexRange{-lagspan, lagspan}, cgrid);
  OperatorSpec op = OperatorSpec::sum(
      {OperatorSpec::laurent(ahat),
       OperatorSpec::compose({OperatorSpec::laurent(chat), OperatorSpec::flip()})});
  PNormRequest req;
  req.p = p;
  req.seed = run_seed;
  NormEstimate sec = matrix_pnorm(section(op, win, win), req);

  if (p == 2.0) {
    const double rel = std::abs(flip - sec.lower) / std::max(flip, 1e-300);
    check_le(r, "flip-multiplier norm matches section 2-norm", rel, 0.0,
             cfg.tol("relative", 0.02));
  } else {
    check_le(r, "section lower bound below block esssup", sec.lower, flip,
             cfg.tol("check", 0.05));
  }
  r.csv_rows.push_back({{"p", p},
                        {"n", static_cast<double>(n)},
                        {"flip", flip},
                        {"section_lower", sec.lower},
                        {"section_upper", sec.upper}});
  return r;
}

inline RunResult run_hardy_consistency(const ExperimentConfig& cfg, std::uint64_t run_seed) {
  RunResult r;
  r.name = "hardy_consistency";
  SymbolSpec a = resolve_symbol(cfg, "a", Json{{"builtin", "sharpness"}, {"p", 4.0}});
  const long m = cfg.lparam("m", 6);
  const long grid = cfg.lparam("grid", 65536);
  const double tol = cfg.tol("table", 1e-10);

  FormTable t = form_table(a, FormKind::toeplitz, m, grid);
  FormTable h = form_table(a, FormKind::hankel, m, grid);
  FourierSequence ahat = fourier_coefficients(a, IndexRange{-2 * m, 2 * m}, grid);

  double terr = 0.0, herr = 0.0;
  for (long j = 0; j < m; ++j)
    for (long k = 0; k < m; ++k) {
      terr = std::max(terr, std::abs(t.entries(j, k) - ahat.at(j - k)));
      herr = std::max(herr, std::abs(h.entries(j, k) - ahat.at(j + k + 1)));
    }
  check_le(r, "Toeplitz form table equals Fourier coefficients", terr, 0.0, tol);
  check_le(r, "Hankel form table equals Fourier coefficients", herr, 0.0, tol);

  // <T(a) chi_k, chi_j> reproduced through riesz_project of the shifted symbol
  double perr = 0.0;
  for (long k = 0; k < m; ++k) {
    std::vector<Complex> shifted;
    for (long i = -m; i <= 2 * m; ++i) shifted.push_back(ahat.at(i - k));
    CoeffPolynomial pk = riesz_project(
        FourierSequence(IndexRange{-m, 2 * m}, std::move(shifted), DecayClass::c0));
    for (long j = 0; j < m; ++j)
      perr = std::max(perr,
                      std::abs(pk.coeffs[static_cast<std::size_t>(j)] - t.entries(j, k)));
  }
  check_le(r, "riesz_project + pairing reproduce <T(a)chi_k, chi_j>", perr, 0.0, tol);

  // Parseval at p=2 on a pseudo-random polynomial
  Rng rng(run_seed);
  std::vector<Complex> coeffs;
  for (int i = 0; i < 13; ++i) coeffs.push_back(rng.uniform_complex(-1.0, 1.0));
  CoeffPolynomial f(coeffs);
  double l2 = 0.0;
  for (const Complex& v : coeffs) l2 += std::norm(v);
  l2 = std::sqrt(l2);
  const double hp2 = hp_norm(f, 2.0, 256);
  check_le(r, "hp_norm at p=2 satisfies Parseval", std::abs(hp2 - l2), 0.0,
           cfg.tol("parseval", 1e-12));

  r.csv_rows.push_back({{"m", static_cast<double>(m)},
                        {"grid", static_cast<double>(grid)},
                        {"toeplitz_err", terr},
                        {"hankel_err", herr},
                        {"pairing_err", perr}});
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

inline long worker_count(long runs) {
  long n = static_cast<long>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TOEPHANK_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = v;
  }
  if (n < 1) n = 1;
  return std::min(n, runs);
}

inline Report run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.config_echo = to_json(cfg);
  rep.seed = cfg.seed;

  // Build the list of independent runs; each owns a derived seed.
  std::vector<std::function<RunResult()>> jobs;
  const std::vector<long> sizes = cfg.sizes;
  std::uint64_t idx = 0;
  auto run_seed = [&cfg](std::uint64_t i) { return cfg.seed + 1000003ULL * i; };

  if (cfg.experiment == "decompose") {
    std::vector<long> ns = sizes.empty() ? std::vector<long>{64} : sizes;
    for (long n : ns) {
      std::uint64_t s = run_seed(idx++);
      jobs.push_back([&cfg, n, s] { return detail::run_decompose(cfg, n, s); });
    }
  } else if (cfg.experiment == "norm_sweep") {
    for (double p : cfg.p_values) {
      std::uint64_t s = run_seed(idx++);
      jobs.push_back([&cfg, p, s] { return detail::run_norm_sweep(cfg, p, s); });
    }
  } else if (cfg.experiment == "sandwich") {
    std::vector<long> ns = sizes.empty() ? std::vector<long>{512} : sizes;
    for (double p : cfg.p_values)
      for (long n : ns) {
        std::uint64_t s = run_seed(idx++);
        jobs.push_back([&cfg, p, n, s] { return detail::run_sandwich(cfg, p, n, s); });
      }
  } else if (cfg.experiment == "sharpness") {
    for (double p : cfg.p_values) {
      std::uint64_t s = run_seed(idx++);
      jobs.push_back([&cfg, p, s] { return detail::run_sharpness(cfg, p, s); });
    }
  } else if (cfg.experiment == "hartman") {
    std::uint64_t s = run_seed(idx++);
    jobs.push_back([&cfg, s] { return detail::run_hartman(cfg, s); });
  } else if (cfg.experiment == "cesaro") {
    std::uint64_t s = run_seed(idx++);
    jobs.push_back([&cfg, s] { return detail::run_cesaro(cfg, s); });
  } else if (cfg.experiment == "flipnorm") {
    std::vector<long> ns = sizes.empty() ? std::vector<long>{512} : sizes;
    for (double p : cfg.p_values)
      for (long n : ns) {
        std::uint64_t s = run_seed(idx++);
        jobs.push_back([&cfg, p, n, s] { return detail::run_flipnorm(cfg, p, n, s); });
      }
  } else if (cfg.experiment == "hardy_consistency") {
    std::uint64_t s = run_seed(idx++);
    jobs.push_back([&cfg, s] { return detail::run_hardy_consistency(cfg, s); });
  } else {
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
  }

  rep.runs.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&jobs, &next, &rep]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      RunResult out;
      try {
        out = jobs[i]();
      } catch (const std::exception& e) {
        out.name = "run " + std::to_string(i);
        out.error = e.what();
      }
      // a run fails when it errored or any assertion failed
      out.pass = out.error.empty();
      for (const Assertion& a : out.assertions) out.pass = out.pass && a.pass;
      rep.runs[i] = std::move(out);
    }
  };
  const long workers = worker_count(static_cast<long>(jobs.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (long i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  rep.passed = true;
  for (const RunResult& r : rep.runs) rep.passed = rep.passed && r.pass;
  rep.walltime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

enum class ReportFormat { json, csv, plotdata };

inline void emit(const Report& rep, ReportFormat format, const std::filesystem::path& outdir) {
  std::filesystem::create_directories(outdir);
  if (format == ReportFormat::json) {
    std::ofstream out(outdir / "report.json");
    if (!out) throw std::runtime_error("emit: cannot write report.json");
    out << to_json(rep).dump(2) << '\n';
    return;
  }
  if (format == ReportFormat::csv) {
    std::ofstream out(outdir / "report.csv");
    if (!out) throw std::runtime_error("emit: cannot write report.csv");
    out.precision(17);
    // column order: "run", then columns in order of first appearance
    std::vector<std::string> cols{"run"};
    for (const RunResult& r : rep.runs)
      for (const auto& row : r.csv_rows)
        for (const auto& [key, value] : row)
          if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    for (std::size_t i = 0; i < cols.size(); ++i) out << cols[i] << (i + 1 < cols.size() ? "," : "");
    out << '\n';
    for (const RunResult& r : rep.runs)
      for (const auto& row : r.csv_rows) {
        out << '"' << r.name << '"';
        for (std::size_t i = 1; i < cols.size(); ++i) {
          out << ',';
          for (const auto& [key, value] : row)
            if (key == cols[i]) out << value;
        }
        out << '\n';
      }
    return;
  }
  // plotdata: one (x, y) file per run with a series; a headers-only file for
  // an empty report
  bool any = false;
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    const RunResult& r = rep.runs[i];
    if (r.series.empty()) continue;
    any = true;
    std::ofstream out(outdir / ("plot_" + std::to_string(i) + ".dat"));
    if (!out) throw std::runtime_error("emit: cannot write plot data");
    out.precision(17);
    out << "# " << r.name << (r.series_name.empty() ? "" : ": " + r.series_name) << "\n# x y\n";
    for (auto [x, y] : r.series) out << x << ' ' << y << '\n';
  }
  if (!any) {
    std::ofstream out(outdir / "plot_0.dat");
    out << "# empty report\n# x y\n";
  }
}

inline void emit_all(const Report& rep, const std::filesystem::path& outdir) {
  emit(rep, ReportFormat::json, outdir);
  emit(rep, ReportFormat::csv, outdir);
  emit(rep, ReportFormat::plotdata, outdir);
}

inline void print_report(const Report& rep, std::ostream& out) {
  for (const RunResult& r : rep.runs) {
    if (!r.error.empty()) {
      out << "[FAIL] " << r.name << " — error: " << r.error << '\n';
      continue;
    }
    for (const Assertion& a : r.assertions)
      out << (a.pass ? "[PASS] " : "[FAIL] ") << r.name << " — " << a.name << " (" << a.relation
          << "; lhs=" << a.lhs << ", rhs=" << a.rhs << ", tol=" << a.tolerance << ")\n";
    if (r.assertions.empty()) out << "[PASS] " << r.name << " — completed\n";
  }
  out << (rep.passed ? "PASSED" : "FAILED") << " (" << rep.runs.size() << " runs, "
      << rep.walltime_seconds << " s)\n";
}

}  // namespace toephank
