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

// Wire formats.
//
//   FourierSequence   {"lo": int, "values": [[re, im], ...]}
//   SymbolSpec        {"type": "fourier_poly" | "piecewise" | "sampled", ...}
//   OperatorSpec      {"op": "toeplitz" | "hankel" | "laurent" | "flip" |
//                      "shift" | "checkerboard" | "finite_rank" | "sum" |
//                      "compose", ...}
//   FiniteSection     CSV (row,col,re,im) and a binary dump: i64 rows.lo,
//                     i64 cols.lo, i64 rows.len, i64 cols.len, then row-major
//                     f64 (re, im) pairs, all little-endian.

#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "displacement.hpp"
#include "hardy.hpp"
#include "pnorm.hpp"
#include "sections.hpp"
#include "symbols.hpp"

namespace toephank {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// FourierSequence
// ---------------------------------------------------------------------------

inline Json to_json(const FourierSequence& seq) {
  Json vals = Json::array();
  for (const Complex& v : seq.values()) vals.push_back(Json::array({v.real(), v.imag()}));
  Json j;
  j["lo"] = seq.lo();
  j["values"] = std::move(vals);
  return j;
}

inline FourierSequence fourier_sequence_from_json(const Json& j) {
  const long lo = j.at("lo").get<long>();
  std::vector<Complex> vals;
  for (const Json& v : j.at("values")) vals.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  DecayClass decay = DecayClass::finite_support;
  if (j.contains("decay_class")) {
    const std::string d = j.at("decay_class").get<std::string>();
    if (d == "finite_support") decay = DecayClass::finite_support;
    else if (d == "summable") decay = DecayClass::summable;
    else if (d == "c0") decay = DecayClass::c0;
    else if (d == "bounded") decay = DecayClass::bounded;
    else if (d == "unknown") decay = DecayClass::unknown;
    else throw std::invalid_argument("unknown decay_class: " + d);
  }
  const IndexRange window{lo, lo + static_cast<long>(vals.size()) - 1};
  return FourierSequence(window, std::move(vals), decay);
}

// ---------------------------------------------------------------------------
// SymbolSpec
// ---------------------------------------------------------------------------

inline Json to_json(const SymbolSpec& spec) {
  Json j;
  if (spec.is_fourier_poly()) {
    j["type"] = "fourier_poly";
    j["coeffs"] = to_json(spec.as_fourier_poly().coeffs);
    return j;
  }
  if (spec.is_piecewise()) {
    j["type"] = "piecewise";
    Json arcs = Json::array();
    for (const Arc& a : spec.as_piecewise().arcs) {
      Json arc;
      arc["theta_start"] = a.theta_start;
      arc["theta_end"] = a.theta_end;
      arc["form"] = to_string(a.form.kind);
      Json params;
      params["c0"] = Json::array({a.form.c0.real(), a.form.c0.imag()});
      if (a.form.kind == ArcFormKind::affine)
        params["c1"] = Json::array({a.form.c1.real(), a.form.c1.imag()});
      if (a.form.kind == ArcFormKind::exp_i_ktheta || a.form.kind == ArcFormKind::sine ||
          a.form.kind == ArcFormKind::cosine)
        params["k"] = a.form.k;
      arc["params"] = std::move(params);
      arcs.push_back(std::move(arc));
    }
    j["arcs"] = std::move(arcs);
    return j;
  }
  j["type"] = "sampled";
  Json vals = Json::array();
  for (const Complex& v : spec.as_sampled().values)
    vals.push_back(Json::array({v.real(), v.imag()}));
  j["values"] = std::move(vals);
  return j;
}

inline SymbolSpec symbol_spec_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "fourier_poly")
    return SymbolSpec::fourier_poly(fourier_sequence_from_json(j.at("coeffs")));
  if (type == "sampled") {
    std::vector<Complex> vals;
    for (const Json& v : j.at("values"))
      vals.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return SymbolSpec::sampled(std::move(vals));
  }
  if (type != "piecewise") throw std::invalid_argument("unknown SymbolSpec type: " + type);
  std::vector<Arc> arcs;
  for (const Json& aj : j.at("arcs")) {
    Arc arc;
    arc.theta_start = aj.at("theta_start").get<double>();
    arc.theta_end = aj.at("theta_end").get<double>();
    const std::string form = aj.at("form").get<std::string>();
    const Json& params = aj.at("params");
    auto cplx = [](const Json& v) { return Complex(v.at(0).get<double>(), v.at(1).get<double>()); };
    if (form == "constant") arc.form.kind = ArcFormKind::constant;
    else if (form == "exp_i_ktheta") arc.form.kind = ArcFormKind::exp_i_ktheta;
    else if (form == "sin") arc.form.kind = ArcFormKind::sine;
    else if (form == "cos") arc.form.kind = ArcFormKind::cosine;
    else if (form == "affine") arc.form.kind = ArcFormKind::affine;
    else throw std::invalid_argument("unknown arc form: " + form);
    arc.form.c0 = cplx(params.at("c0"));
    if (params.contains("c1")) arc.form.c1 = cplx(params.at("c1"));
    if (params.contains("k")) arc.form.k = params.at("k").get<long>();
    arcs.push_back(arc);
  }
  return SymbolSpec::piecewise(std::move(arcs));
}

// ---------------------------------------------------------------------------
// OperatorSpec
// ---------------------------------------------------------------------------

inline Json to_json(const OperatorSpec& spec) {
  Json j;
  if (const auto* t = std::get_if<ToeplitzOp>(&spec.node())) {
    j["op"] = "toeplitz";
    j["seq"] = to_json(t->symbol);
  } else if (const auto* h = std::get_if<HankelOp>(&spec.node())) {
    j["op"] = "hankel";
    j["seq"] = to_json(h->symbol);
  } else if (const auto* l = std::get_if<LaurentOp>(&spec.node())) {
    j["op"] = "laurent";
    j["seq"] = to_json(l->symbol);
  } else if (std::holds_alternative<FlipOp>(spec.node())) {
    j["op"] = "flip";
  } else if (const auto* s = std::get_if<ShiftOp>(&spec.node())) {
    j["op"] = "shift";
    j["k"] = s->k;
  } else if (const auto* c = std::get_if<CheckerboardOp>(&spec.node())) {
    j["op"] = "checkerboard";
    j["even"] = Json::array({c->even.real(), c->even.imag()});
    j["odd"] = Json::array({c->odd.real(), c->odd.imag()});
  } else if (const auto* f = std::get_if<FiniteRankOp>(&spec.node())) {
    j["op"] = "finite_rank";
    Json entries = Json::array();
    for (const auto& [r, cc, v] : f->entries)
      entries.push_back(Json::array({r, cc, v.real(), v.imag()}));
    j["entries"] = std::move(entries);
  } else if (const auto* su = std::get_if<SumOp>(&spec.node())) {
    j["op"] = "sum";
    Json terms = Json::array();
    for (const OperatorSpec& t2 : su->terms) terms.push_back(to_json(t2));
    j["terms"] = std::move(terms);
  } else if (const auto* co = std::get_if<ComposeOp>(&spec.node())) {
    j["op"] = "compose";
    Json factors = Json::array();
    for (const OperatorSpec& f2 : co->factors) factors.push_back(to_json(f2));
    j["factors"] = std::move(factors);
  }
  return j;
}

inline OperatorSpec operator_spec_from_json(const Json& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "toeplitz") return OperatorSpec::toeplitz(fourier_sequence_from_json(j.at("seq")));
  if (op == "hankel") return OperatorSpec::hankel(fourier_sequence_from_json(j.at("seq")));
  if (op == "laurent") return OperatorSpec::laurent(fourier_sequence_from_json(j.at("seq")));
  if (op == "flip") return OperatorSpec::flip();
  if (op == "shift") return OperatorSpec::shift(j.at("k").get<long>());
  if (op == "checkerboard") {
    auto cplx = [](const Json& v) { return Complex(v.at(0).get<double>(), v.at(1).get<double>()); };
    return OperatorSpec::checkerboard(cplx(j.at("even")), cplx(j.at("odd")));
  }
  if (op == "finite_rank") {
    std::vector<std::tuple<long, long, Complex>> entries;
    for (const Json& e : j.at("entries"))
      entries.emplace_back(e.at(0).get<long>(), e.at(1).get<long>(),
                           Complex(e.at(2).get<double>(), e.at(3).get<double>()));
    return OperatorSpec::finite_rank(std::move(entries));
  }
  if (op == "sum") {
    std::vector<OperatorSpec> terms;
    for (const Json& t : j.at("terms")) terms.push_back(operator_spec_from_json(t));
    return OperatorSpec::sum(std::move(terms));
  }
  if (op == "compose") {
    std::vector<OperatorSpec> factors;
    for (const Json& f : j.at("factors")) factors.push_back(operator_spec_from_json(f));
    return OperatorSpec::compose(std::move(factors));
  }
  throw std::invalid_argument("unknown OperatorSpec op: " + op);
}

// ---------------------------------------------------------------------------
// FiniteSection: CSV and binary dump
// ---------------------------------------------------------------------------

inline void write_csv(const FiniteSection& s, std::ostream& out) {
  out << "row,col,re,im\n";
  out.precision(17);
  for (long j = s.rows.lo; j <= s.rows.hi; ++j)
    for (long k = s.cols.lo; k <= s.cols.hi; ++k) {
      const Complex v = s.at(j, k);
      out << j << ',' << k << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

namespace detail {

inline void put_i64(std::ostream& out, std::int64_t v) {
  unsigned char b[8];
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

inline std::int64_t get_i64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return static_cast<std::int64_t>(u);
}

inline void put_f64(std::ostream& out, double v) {
  std::uint64_t u;
  static_assert(sizeof(u) == sizeof(v));
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

inline double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace detail

inline void write_binary(const FiniteSection& s, std::ostream& out) {
  detail::put_i64(out, s.rows.lo);
  detail::put_i64(out, s.cols.lo);
  detail::put_i64(out, s.row_count());
  detail::put_i64(out, s.col_count());
  for (long j = s.rows.lo; j <= s.rows.hi; ++j)
    for (long k = s.cols.lo; k <= s.cols.hi; ++k) {
      const Complex v = s.at(j, k);
      detail::put_f64(out, v.real());
      detail::put_f64(out, v.imag());
    }
}

inline FiniteSection read_binary(std::istream& in) {
  const long rlo = static_cast<long>(detail::get_i64(in));
  const long clo = static_cast<long>(detail::get_i64(in));
  const long rlen = static_cast<long>(detail::get_i64(in));
  const long clen = static_cast<long>(detail::get_i64(in));
  if (!in || rlen < 0 || clen < 0 || rlen > kSectionCap || clen > kSectionCap)
    throw std::invalid_argument("read_binary: corrupt header");
  FiniteSection s{IndexRange{rlo, rlo + rlen - 1}, IndexRange{clo, clo + clen - 1},
                  Eigen::MatrixXcd(rlen, clen)};
  for (long j = 0; j < rlen; ++j)
    for (long k = 0; k < clen; ++k) {
      const double re = detail::get_f64(in);
      const double im = detail::get_f64(in);
      s.entries(j, k) = Complex(re, im);
    }
  if (!in) throw std::invalid_argument("read_binary: truncated payload");
  return s;
}

inline void write_binary(const FormTable& t, std::ostream& out) {
  const long m = static_cast<long>(t.entries.rows());
  FiniteSection s{IndexRange{0, m - 1}, IndexRange{0, m - 1}, t.entries};
  write_binary(s, out);
}

// ---------------------------------------------------------------------------
// Result types
// ---------------------------------------------------------------------------

inline Json to_json(const NormEstimate& e) {
  Json j;
  if (e.p == kInf) j["p"] = "inf";
  else j["p"] = e.p;
  j["lower"] = e.lower;
  if (e.upper == kInf) j["upper"] = "inf";
  else j["upper"] = e.upper;
  j["method"] = to_string(e.method);
  j["iterations"] = e.iterations;
  j["seed"] = e.seed;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

inline Json to_json(const Decomposition& d) {
  Json j;
  j["toeplitz_part"] = to_json(d.toeplitz_part);
  j["hankel_part"] = to_json(d.hankel_part);
  j["checkerboard"] = Json::array({Json::array({d.checkerboard_even.real(), d.checkerboard_even.imag()}),
                                   Json::array({d.checkerboard_odd.real(), d.checkerboard_odd.imag()})});
  j["canonical"] = d.canonical;
  j["residual"] = d.residual;
  return j;
}

inline Json to_json(const SandwichReport& r) {
  Json j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["symbol_norm"] = to_json(r.symbol_norm);
  j["hankel_norm"] = to_json(r.hankel_norm);
  j["total_norm"] = to_json(r.total_norm);
  j["lower_bound_ok"] = r.lower_bound_ok;
  j["upper_bound_ok"] = r.upper_bound_ok;
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  j["inequality"] = r.inequality;
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

}  // namespace toephank
