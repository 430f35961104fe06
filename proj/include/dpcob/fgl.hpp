#pragma once

// Formal group laws F(u,v) over Q[parameters].
//
// The universal law is built from the logarithm
//   l(t) = t + sum_{i>=1} p_i t^{i+1} / (i+1)
// as F(u,v) = e(l(u) + l(v)), e the compositional inverse of l. The variables
// u, v carry grading weight -1 and p_i weight i, so every coefficient a_ij is
// homogeneous of degree i+j-1 and F itself has weighted degree -1.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpcob/series.hpp"

namespace dpcob::fgl {

inline std::string param_name(int i) { return "p" + std::to_string(i); }

struct FormalGroupLaw {
  MultiSeries F;  // over a table containing truncating u, v
  int degree_bound = 0;

  const TablePtr& table() const { return F.table(); }

  /// Coefficient a_ij as a polynomial in the parameter variables.
  MultiSeries coefficient(int i, int j) const { return coefficient_of(F, {{"u", i}, {"v", j}}); }
};

struct Logarithm {
  MultiSeries l;  // univariate in t
  int degree_bound = 0;
};

/// Table {u, v, extra..., p1..p_{n}} with u, v (and extras) of weight -1.
inline TablePtr law_table(int params, const std::vector<std::string>& series_vars = {"u", "v"}) {
  std::vector<VariableTable::Variable> vars;
  for (const auto& s : series_vars) vars.push_back({s, -1, true});
  for (int i = 1; i <= params; ++i) vars.push_back({param_name(i), i, false});
  return make_table(std::move(vars));
}

/// Number of p-parameters needed for a law truncated at total (u,v)-degree D.
inline int param_count(int degree_bound) { return degree_bound > 1 ? degree_bound - 1 : 0; }

inline Logarithm logarithm(int degree_bound) {
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  const int n = param_count(degree_bound);
  auto table = law_table(n, {"t"});
  MultiSeries l = MultiSeries::variable(table, "t", degree_bound);
  for (int i = 1; i <= n; ++i) {
    Exponent e(table->size(), 0);
    e[0] = i + 1;
    e[table->index(param_name(i))] = 1;
    l.add_term(e, frac(1, i + 1));
  }
  return {l, degree_bound};
}

inline FormalGroupLaw universal_fgl(int degree_bound) {
  const Logarithm log = logarithm(degree_bound);
  auto table = law_table(param_count(degree_bound));
  const MultiSeries lu = rebase(log.l, table, {{"t", "u"}});
  const MultiSeries lv = rebase(log.l, table, {{"t", "v"}});
  const MultiSeries exp_u = reversion(lu, "u");
  return {substitute(exp_u, {{"u", lu + lv}}), degree_bound};
}

inline FormalGroupLaw additive_fgl(int degree_bound) {
  auto table = law_table(0);
  return {MultiSeries::variable(table, "u", degree_bound) + MultiSeries::variable(table, "v", degree_bound), degree_bound};
}

/// u + v - beta*u*v with beta a formal parameter of weight 1.
inline FormalGroupLaw multiplicative_fgl(int degree_bound) {
  auto table = make_table({{"u", -1, true}, {"v", -1, true}, {"beta", 1, false}});
  MultiSeries F = MultiSeries::variable(table, "u", degree_bound) + MultiSeries::variable(table, "v", degree_bound);
  F.add_term({1, 1, 1}, -1);
  return {F, degree_bound};
}

/// Law on a table extended by extra series variables (all of weight -1).
inline TablePtr extended_table(const TablePtr& base, const std::vector<std::string>& series_vars) {
  std::vector<VariableTable::Variable> vars;
  for (const auto& s : series_vars) vars.push_back({s, -1, true});
  for (const auto& v : base->variables())
    if (!v.truncating) vars.push_back(v);
  return make_table(std::move(vars));
}

struct AxiomReport {
  bool identity = false;
  bool commutativity = false;
  bool associativity = false;
  bool all() const { return identity && commutativity && associativity; }
};

inline AxiomReport check_axioms(const FormalGroupLaw& law) {
  const auto& F = law.F;
  const int D = law.degree_bound;
  const auto& table = law.table();
  const MultiSeries u = MultiSeries::variable(table, "u", D);
  const MultiSeries v = MultiSeries::variable(table, "v", D);
  const MultiSeries zero(table, D);

  AxiomReport r;
  r.identity = substitute(F, {{"v", zero}}) == u && substitute(F, {{"u", zero}}) == v;
  r.commutativity = substitute(F, {{"u", v}, {"v", u}}) == F;

  auto t3 = extended_table(table, {"u", "v", "w"});
  const MultiSeries F3 = rebase(F, t3);
  const MultiSeries w = MultiSeries::variable(t3, "w", D);
  const MultiSeries v3 = MultiSeries::variable(t3, "v", D);
  const MultiSeries left = substitute(F3, {{"u", F3}, {"v", w}});
  const MultiSeries Fvw = substitute(F3, {{"u", v3}, {"v", w}});
  const MultiSeries right = substitute(F3, {{"v", Fvw}});
  r.associativity = left == right;
  return r;
}

/// True when every term has weighted degree -1 (each a_ij of degree i+j-1).
inline bool is_homogeneous(const FormalGroupLaw& law) {
  for (const auto& [e, c] : law.F.terms())
    if (law.table()->weighted_degree(e) != -1) return false;
  return true;
}

/// The unique G with F = u + v + u*v*G.
inline MultiSeries f11(const FormalGroupLaw& law) {
  const auto& table = law.table();
  const std::size_t iu = table->index("u");
  const std::size_t iv = table->index("v");
  const int D = law.degree_bound;
  MultiSeries residual = law.F - MultiSeries::variable(table, "u", D) - MultiSeries::variable(table, "v", D);
  MultiSeries g(table, D >= 2 ? D - 2 : 0);
  for (const auto& [e, c] : residual.terms()) {
    if (e[iu] < 1 || e[iv] < 1) throw std::domain_error("F - u - v is not divisible by u*v");
    Exponent e2 = e;
    --e2[iu];
    --e2[iv];
    g.add_term(e2, c);
  }
  return g;
}

/// The inverse series chi(u) with F(u, chi(u)) = 0, chi(u) = -u + O(u^2).
inline MultiSeries chi(const FormalGroupLaw& law) {
  const auto& table = law.table();
  const int D = law.degree_bound;
  MultiSeries x = -MultiSeries::variable(table, "u", D);
  const std::size_t iu = table->index("u");
  for (int k = 2; k <= D; ++k) {
    // d/dv F(u, v) = 1 + O(u), so the u^k residual is cancelled by subtracting it from chi.
    const MultiSeries r = substitute(law.F.truncated(k), {{"v", x.truncated(k)}});
    const MultiSeries rk = coefficient_of(r, {{"u", k}, {"v", 0}});
    for (const auto& [e, c] : rk.terms()) {
      Exponent e2 = e;
      e2[iu] = k;
      x.add_term(e2, -c);
    }
  }
  return x;
}

/// F^-(u, v) = F(u, chi(v)).
inline MultiSeries difference(const FormalGroupLaw& law) {
  const MultiSeries chi_v = rebase(chi(law), law.table(), {{"u", "v"}});
  return substitute(law.F, {{"v", chi_v}});
}

struct DifferenceReport {
  bool inverse = false;       // F(u, chi(u)) = 0
  bool diagonal = false;      // F^-(u, u) = 0
  bool translation = false;   // F^-(F(u,w), F(v,w)) = F^-(u,v)
  bool distributive = false;  // F(F^-(u1,v1), F^-(u2,v2)) = F^-(F(u1,u2), F(v1,v2))
  bool all() const { return inverse && diagonal && translation && distributive; }
};

inline DifferenceReport check_difference_identities(const FormalGroupLaw& law) {
  const auto& table = law.table();
  const int D = law.degree_bound;
  const MultiSeries x = chi(law);
  const MultiSeries Fm = difference(law);
  const MultiSeries u = MultiSeries::variable(table, "u", D);

  DifferenceReport r;
  r.inverse = substitute(law.F, {{"v", x}}).is_zero();
  r.diagonal = substitute(Fm, {{"v", u}}).is_zero();

  auto t3 = extended_table(table, {"u", "v", "w"});
  const MultiSeries F3 = rebase(law.F, t3);
  const MultiSeries Fm3 = rebase(Fm, t3);
  const MultiSeries w = MultiSeries::variable(t3, "w", D);
  const MultiSeries v3 = MultiSeries::variable(t3, "v", D);
  const MultiSeries Fuw = substitute(F3, {{"v", w}});
  const MultiSeries Fvw = substitute(F3, {{"u", v3}, {"v", w}});
  r.translation = substitute(Fm3, {{"u", Fuw}, {"v", Fvw}}) == Fm3;

  auto t4 = extended_table(table, {"u1", "v1", "u2", "v2"});
  auto on = [&](const MultiSeries& s, const char* a, const char* b) { return rebase(s, t4, {{"u", a}, {"v", b}}); };
  const MultiSeries lhs = substitute(on(law.F, "u1", "v1"), {{"u1", on(Fm, "u1", "v1")}, {"v1", on(Fm, "u2", "v2")}});
  const MultiSeries rhs = substitute(on(Fm, "u1", "v1"), {{"u1", on(law.F, "u1", "u2")}, {"v1", on(law.F, "v1", "v2")}});
  r.distributive = lhs == rhs;
  return r;
}

/// Coefficient table {(i,j) -> polynomial in parameters} of a bivariate series in u, v.
inline std::map<std::pair<int, int>, MultiSeries> coefficient_table(const MultiSeries& s, int degree_bound) {
  std::map<std::pair<int, int>, MultiSeries> out;
  for (int d = 0; d <= degree_bound; ++d)
    for (int i = 0; i <= d; ++i) {
      MultiSeries c = coefficient_of(s, {{"u", i}, {"v", d - i}});
      if (!c.is_zero()) out.emplace(std::make_pair(i, d - i), std::move(c));
    }
  return out;
}

}  // namespace dpcob::fgl
