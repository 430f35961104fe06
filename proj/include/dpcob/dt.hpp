#pragma once

// Degree-0 Donaldson-Thomas partition functions as truncated q-series, and
// the exponent identities behind degeneration and double point checks.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcob/chern.hpp"
#include "dpcob/cobordism.hpp"
#include "dpcob/series.hpp"

namespace dpcob::dt {

using chern::DivisorClass;
using chern::Space;

/// Univariate series in q.
using QSeries = MultiSeries;

inline const TablePtr& q_table() {
  static const TablePtr t = make_table({{"q", 1, true}});
  return t;
}

inline QSeries q_one(int order) { return QSeries::constant(q_table(), 1, order); }

inline Rational coefficient(const QSeries& f, int n) { return f.coefficient({n}); }

inline std::vector<Rational> coefficients(const QSeries& f) {
  std::vector<Rational> out;
  for (int n = 0; n <= f.trunc(); ++n) out.push_back(coefficient(f, n));
  return out;
}

/// M(q) = prod_{n>=1} (1 - q^n)^{-n} to order N.
inline QSeries macmahon(int order) {
  if (order < 0) throw std::invalid_argument("negative order");
  QSeries m = q_one(order);
  for (int n = 1; n <= order; ++n) {
    QSeries geometric(q_table(), order);  // 1/(1 - q^n)
    for (int k = 0; k * n <= order; ++k) geometric.add_term({k * n}, 1);
    for (int i = 0; i < n; ++i) m *= geometric;
  }
  return m;
}

/// f^e = exp(e log f) for f with constant term 1.
inline QSeries qpow(const QSeries& f, const Rational& e) {
  if (f.constant_term() != 1) throw std::invalid_argument("qpow needs constant term 1");
  const QSeries one = q_one(f.trunc());
  const QSeries x = f - one;
  if (x.is_zero() || e == 0) return one;
  return one + expm1(log1p(x) * e);
}

/// M(-q), by substituting q -> -q.
inline QSeries macmahon_signed(int order) {
  return substitute(macmahon(order), {{"q", QSeries::variable(q_table(), "q", order) * Rational(-1)}});
}

inline QSeries z_from_exponent(const Rational& e, int order) { return qpow(macmahon_signed(order), e); }

/// M(-q)^{c3(T tensor K)}.
inline QSeries z_absolute(const Space& x, int order) { return z_from_exponent(chern::dt_exponent(x), order); }

/// M(-q)^{c3(T[-S] tensor K[S])}.
inline QSeries z_relative(const Space& x, const DivisorClass& s, int order) {
  return z_from_exponent(chern::log_dt_exponent(x, s), order);
}

struct DegenerationReport {
  Rational relative;  // n(X/S)
  Rational absolute;  // n(X)
  Rational bubble;    // n(P/S_-)
  std::optional<Space> divisor;
  std::optional<Space> bubble_space;
  Rational residual() const { return relative - absolute + bubble; }
};

/// Residual n(X/S) - n(X) + n(P/S_-) with P = P(O_S + O_S(S)) over S and S_- the
/// section with normal bundle O_S(-S); `normal` is the class of O_S(S) on S.
inline DegenerationReport check_degeneration(const Space& x, const DivisorClass& s, const Space& divisor, const DivisorClass& normal) {
  if (divisor.dim() != 2) throw std::invalid_argument("the divisor S must be a surface");
  DegenerationReport r;
  r.relative = chern::log_dt_exponent(x, s);
  r.absolute = chern::dt_exponent(x);
  const Space p = Space::bundle(divisor, {DivisorClass{}, normal});
  const std::string xi = p.presentation().table->variables().back().name;
  r.bubble = chern::log_dt_exponent(p, DivisorClass::generator(xi));
  r.divisor = divisor;
  r.bubble_space = p;
  return r;
}

namespace detail {

/// Dimensions of the projective factors of a product, in generator order.
inline std::optional<std::vector<int>> projective_factors(const Space& x) {
  switch (x.kind()) {
    case Space::Kind::point:
      return std::vector<int>{};
    case Space::Kind::projective:
      return std::vector<int>{x.n()};
    case Space::Kind::product: {
      auto a = projective_factors(x.children()[0]);
      auto b = projective_factors(x.children()[1]);
      if (!a || !b) return std::nullopt;
      a->insert(a->end(), b->begin(), b->end());
      return a;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace detail

/// As above, inferring S and O_S(S) when X is a product of projective spaces and s
/// a hyperplane class h_i: S replaces the i-th factor P^k by P^{k-1}.
inline DegenerationReport check_degeneration(const Space& x, const DivisorClass& s) {
  if (s.is_zero()) {
    DegenerationReport r;
    r.relative = chern::log_dt_exponent(x, s);
    r.absolute = chern::dt_exponent(x);
    r.bubble = 0;
    return r;
  }
  const auto factors = detail::projective_factors(x);
  std::string name;
  if (s.coeffs.size() == 1 && s.coeffs.begin()->second == 1) name = x.presentation().resolve(s.coeffs.begin()->first);
  const auto [prefix, idx] = chern::Presentation::split_name(name);
  const std::size_t slot = static_cast<std::size_t>(idx) - 1;
  if (!factors || prefix != "h" || idx < 1 || slot >= factors->size())
    throw std::invalid_argument("cannot build P(O + O(S)) for " + s.to_string() + " on " + x.to_string() +
                                "; give S and its normal class explicitly");
  std::optional<Space> divisor;
  DivisorClass normal;
  int hyperplanes = 0;
  for (std::size_t i = 0; i < factors->size(); ++i) {
    const int k = i == slot ? (*factors)[i] - 1 : (*factors)[i];
    if (k == 0) continue;
    const Space f = Space::projective(k);
    divisor = divisor ? Space::product(*divisor, f) : f;
    ++hyperplanes;
    if (i == slot) normal = DivisorClass::generator("h" + std::to_string(hyperplanes));
  }
  return check_degeneration(x, s, divisor ? *divisor : Space::point(), normal);
}

/// n(Y) - n(A) - n(B) + n(P), absent spaces contributing 0.
inline Rational check_dp_multiplicativity(const cobordism::DoublePointDatum& datum) {
  auto n = [](const std::optional<Space>& s) { return s ? chern::dt_exponent(*s) : Rational(0); };
  return n(datum.y) - n(datum.a) - n(datum.b) + n(datum.p);
}

/// Renders a q-series as "1 + 20 q + 210 q^2".
inline std::string render(const QSeries& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : f.terms()) {
    const int n = e[0];
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    const std::string mono = n == 0 ? "" : (n == 1 ? "q" : "q^" + std::to_string(n));
    if (mono.empty())
      s += dpcob::to_string(mag);
    else
      s += (mag == 1 ? "" : dpcob::to_string(mag) + " ") + mono;
  }
  return s;
}

}  // namespace dpcob::dt
