#pragma once

// JSON encodings: rationals as strings "a/b", partitions as integer arrays,
// polynomials as lists of {exponent, coefficient} over a named variable list.

#include <json.hpp>

#include <string>
#include <vector>

#include "dpcob/chern.hpp"
#include "dpcob/cobordism.hpp"
#include "dpcob/series.hpp"

namespace dpcob::json {

using Json = nlohmann::ordered_json;

inline Json encode(const Rational& r) { return to_string(r); }

inline Rational decode_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}

inline Json encode(const Partition& p) { return Json(std::vector<int>(p.begin(), p.end())); }

inline Partition decode_partition(const Json& j) { return j.get<std::vector<int>>(); }

inline Json encode(const MultiSeries& f) {
  Json vars = Json::array();
  for (const auto& v : f.table()->variables()) vars.push_back({{"name", v.name}, {"weight", v.weight}, {"truncating", v.truncating}});
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exponent", e}, {"coefficient", encode(c)}});
  Json out = {{"variables", vars}};
  if (f.trunc() != kNoTruncation) out["truncation"] = f.trunc();
  out["terms"] = terms;
  return out;
}

inline MultiSeries decode_series(const Json& j) {
  std::vector<VariableTable::Variable> vars;
  for (const auto& v : j.at("variables")) vars.push_back({v.at("name").get<std::string>(), v.at("weight").get<int>(), v.at("truncating").get<bool>()});
  MultiSeries f(make_table(std::move(vars)), j.contains("truncation") ? j.at("truncation").get<int>() : kNoTruncation);
  for (const auto& t : j.at("terms")) f.add_term(t.at("exponent").get<Exponent>(), decode_rational(t.at("coefficient")));
  return f;
}

inline Json encode(const chern::ChernNumbers& cn) {
  Json arr = Json::array();
  for (const auto& [p, v] : cn) arr.push_back({{"partition", encode(p)}, {"value", encode(v)}});
  return arr;
}

inline chern::ChernNumbers decode_chern_numbers(const Json& j) {
  chern::ChernNumbers out;
  for (const auto& e : j) out[decode_partition(e.at("partition"))] = decode_rational(e.at("value"));
  return out;
}

inline Json encode(const cobordism::CobordismClass& c) {
  Json terms = Json::array();
  for (const auto& lambda : cobordism::basis(c.dim())) {
    const Rational k = c.coefficient(lambda);
    if (k != 0) terms.push_back({{"partition", encode(lambda)}, {"coefficient", encode(k)}});
  }
  return {{"dimension", c.dim()}, {"terms", terms}};
}

inline cobordism::CobordismClass decode_class(const Json& j) {
  cobordism::CobordismClass c(j.at("dimension").get<int>());
  for (const auto& t : j.at("terms")) c.add(decode_partition(t.at("partition")), decode_rational(t.at("coefficient")));
  return c;
}

/// Coefficient list [c0, c1, ..., cN] of a univariate series.
inline Json encode_coefficients(const std::vector<Rational>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(encode(c));
  return arr;
}

inline std::vector<Rational> decode_coefficients(const Json& j) {
  std::vector<Rational> out;
  for (const auto& c : j) out.push_back(decode_rational(c));
  return out;
}

}  // namespace dpcob::json
