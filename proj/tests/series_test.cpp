#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dpcob/series.hpp"

using namespace dpcob;

namespace {

// Dense univariate helpers used as independent oracles.
using Dense = std::vector<Rational>;

Dense dense_mul(const Dense& a, const Dense& b, int n) {
  Dense r(n + 1, 0);
  for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Lagrange inversion: [t^k] g = (1/k) [t^{k-1}] (t / f(t))^k.
Dense lagrange_inverse(const Dense& f, int n) {
  // h = f(t)/t, then t/f = 1/h.
  Dense h(n + 1, 0);
  for (int i = 1; i <= n && i < static_cast<int>(f.size()); ++i) h[i - 1] = f[i];
  Dense inv(n + 1, 0);
  inv[0] = 1 / h[0];
  for (int k = 1; k <= n; ++k) {
    Rational s = 0;
    for (int j = 1; j <= k; ++j) s += h[j] * inv[k - j];
    inv[k] = -s / h[0];
  }
  Dense g(n + 1, 0);
  Dense p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k) {
    p = dense_mul(p, inv, n);
    g[k] = p[k - 1] / k;
  }
  return g;
}

Dense to_dense(const MultiSeries& s, int n) {
  Dense d(n + 1, 0);
  for (const auto& [e, c] : s.terms()) d[e[0]] = c;
  return d;
}

TablePtr uv() { return make_table({{"u", -1, true}, {"v", -1, true}}); }
TablePtr uvw() { return make_table({{"u", 1, true}, {"v", 1, true}, {"w", 1, true}}); }
TablePtr tt() { return make_table({{"t", 1, true}}); }
TablePtr qq() { return make_table({{"q", 1, true}}); }

MultiSeries var(const TablePtr& t, const char* n, int trunc) { return MultiSeries::variable(t, n, trunc); }
MultiSeries one(const TablePtr& t, int trunc) { return MultiSeries::constant(t, 1, trunc); }

MultiSeries random_series(std::mt19937& rng, const TablePtr& t, int trunc, bool constant) {
  std::uniform_int_distribution<int> coeff(-4, 4), den(1, 3), deg(0, trunc);
  MultiSeries s(t, trunc);
  for (int k = 0; k < 8; ++k) {
    Exponent e(t->size(), 0);
    int budget = deg(rng);
    for (std::size_t i = 0; i < e.size() && budget > 0; ++i) {
      std::uniform_int_distribution<int> take(0, budget);
      e[i] = take(rng);
      budget -= e[i];
    }
    if (!constant && t->truncation_degree(e) == 0) continue;
    s.add_term(e, frac(coeff(rng), den(rng)));
  }
  return s;
}

}  // namespace

TEST(SeriesAdd, Examples) {
  auto t = uv();
  auto u = var(t, "u", 4), v = var(t, "v", 4);
  EXPECT_EQ((u + v) + (-u), v);
  auto q = var(qq(), "q", 4);
  EXPECT_EQ((one(qq(), 4) + q) + (one(qq(), 4) - q), MultiSeries::constant(qq(), 2, 4));
  EXPECT_EQ((u + u * v * frac(1, 2)) + u * v * frac(1, 2), u + u * v);
}

TEST(SeriesAdd, TableMismatchThrows) {
  EXPECT_THROW((void)(var(uv(), "u", 3) + var(tt(), "t", 3)), std::invalid_argument);
  EXPECT_THROW((void)(var(uv(), "u", 3) * var(tt(), "t", 3)), std::invalid_argument);
}

TEST(SeriesMul, Examples) {
  auto t = uv();
  auto u = var(t, "u", 4), v = var(t, "v", 4);
  auto o = one(t, 4);
  EXPECT_EQ((o + u) * (o - u), o - u * u);
  EXPECT_EQ((u + v) * (u + v), u * u + v * u * 2 + v * v);
  EXPECT_TRUE((var(t, "u", 1) * var(t, "v", 1)).is_zero());
  EXPECT_EQ((u + v).to_string(), "u + v");
  EXPECT_EQ(((u + v) * (u + v)).to_string(), "u^2 + 2 u*v + v^2");
}

TEST(SeriesMul, NoZeroCoefficientsStored) {
  auto t = uv();
  auto u = var(t, "u", 4);
  auto s = u - u;
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.size(), 0u);
}

TEST(SeriesRing, AxiomsOnRandomInstances) {
  std::mt19937 rng(7);
  auto t = uvw();
  for (int it = 0; it < 25; ++it) {
    auto a = random_series(rng, t, 5, true), b = random_series(rng, t, 5, true), c = random_series(rng, t, 5, true);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
    const auto ab = a * b;
    for (const auto& [e, coeff] : ab.terms()) EXPECT_NE(coeff, 0);
  }
}

TEST(Substitute, Examples) {
  auto t = uvw();
  auto u = var(t, "u", 4), v = var(t, "v", 4), w = var(t, "w", 4);
  EXPECT_EQ(substitute(u * u, {{"u", v + w}}), v * v + v * w * 2 + w * w);

  auto f = u * u * v * frac(3, 2) + w - u * v * w;
  EXPECT_EQ(substitute(f, {{"u", u}, {"v", v}, {"w", w}}), f);
}

TEST(Substitute, LogExpComposition) {
  auto t = tt();
  auto x = var(t, "t", 4);
  auto l = x + x * x;
  auto e = x - x * x + power(x, 3) * 2 - power(x, 4) * 5;
  EXPECT_EQ(substitute(l, {{"t", e}}), x);
}

TEST(Substitute, ConstantTermRejected) {
  auto t = uvw();
  auto u = var(t, "u", 3);
  EXPECT_THROW(substitute(u * u, {{"u", one(t, 3) + u}}), std::invalid_argument);
}

TEST(Substitute, Associative) {
  std::mt19937 rng(11);
  auto t = uvw();
  for (int it = 0; it < 10; ++it) {
    auto f = random_series(rng, t, 4, true);
    auto g = random_series(rng, t, 4, false);
    auto h = random_series(rng, t, 4, false);
    // f(u := g) then u := h, versus f(u := g(u := h)).
    auto lhs = substitute(substitute(f, {{"u", g}}), {{"u", h}});
    auto rhs = substitute(f, {{"u", substitute(g, {{"u", h}})}});
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Reversion, Examples) {
  auto t = tt();
  auto x = var(t, "t", 6);
  EXPECT_EQ(reversion(x, "t"), x);
  auto g = reversion(x + x * x, "t");
  auto expected = lagrange_inverse(to_dense(x + x * x, 6), 6);
  EXPECT_EQ(to_dense(g, 6), expected);
  // Catalan numbers with alternating signs.
  EXPECT_EQ(g.truncated(4), x - x * x + power(x, 3) * 2 - power(x, 4) * 5);
  EXPECT_EQ(reversion(g, "t"), x + x * x);
}

TEST(Reversion, RoundTripAgainstLagrangeOracle) {
  auto t = tt();
  auto x = var(t, "t", 7);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-5, 5), d(1, 4);
  for (int it = 0; it < 10; ++it) {
    MultiSeries f = x;
    for (int k = 2; k <= 7; ++k) f += power(x, k) * frac(c(rng), d(rng));
    auto g = reversion(f, "t");
    EXPECT_EQ(to_dense(g, 7), lagrange_inverse(to_dense(f, 7), 7));
    EXPECT_EQ(substitute(f, {{"t", g}}), x);
    EXPECT_EQ(substitute(g, {{"t", f}}), x);
  }
}

TEST(Reversion, Preconditions) {
  auto t = tt();
  auto x = var(t, "t", 4);
  EXPECT_THROW(reversion(x * 2 + x * x, "t"), std::invalid_argument);
  EXPECT_THROW(reversion(x * x, "t"), std::invalid_argument);
  EXPECT_THROW(reversion(one(t, 4) + x, "t"), std::invalid_argument);
}

TEST(ExpLog, Examples) {
  auto t = qq();
  auto q = var(t, "q", 6);
  EXPECT_TRUE(expm1(MultiSeries(t, 6)).is_zero());
  auto s = q * frac(2, 3) - q * q + power(q, 5) * 7;
  EXPECT_EQ(log1p(expm1(s)), s);
  EXPECT_EQ(expm1(log1p(s)), s);

  // Direct expansion oracle: sum_k (-1)^{k+1} s^k / k with dense arithmetic.
  const int n = 6;
  Dense base = to_dense(q + q * q, n);
  Dense acc(n + 1, 0), p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k) {
    p = dense_mul(p, base, n);
    for (int i = 0; i <= n; ++i) acc[i] += p[i] * frac(k % 2 ? 1 : -1, k);
  }
  EXPECT_EQ(to_dense(log1p(q + q * q), n), acc);
  // q + q^2/2 - 2q^3/3 + ...
  EXPECT_EQ(acc[1], 1);
  EXPECT_EQ(acc[2], frac(1, 2));
  EXPECT_EQ(acc[3], frac(-2, 3));
}

TEST(ExpLog, ConstantTermRejected) {
  auto t = qq();
  EXPECT_THROW(log1p(one(t, 3)), std::invalid_argument);
}

TEST(Reciprocal, GeometricSeries) {
  auto t = qq();
  auto q = var(t, "q", 5);
  auto r = reciprocal(one(t, 5) - q);
  MultiSeries expected = one(t, 5);
  for (int k = 1; k <= 5; ++k) expected += power(q, k);
  EXPECT_EQ(r, expected);
  EXPECT_EQ(r * (one(t, 5) - q), one(t, 5));
}

TEST(Rebase, RenamesVariables) {
  auto t = uv();
  auto u = var(t, "u", 3);
  EXPECT_EQ(rebase(u * u, t, {{"u", "v"}}), var(t, "v", 3) * var(t, "v", 3));
  EXPECT_THROW(rebase(u, tt()), std::invalid_argument);
}

TEST(Rendering, Rationals) {
  auto t = uv();
  auto s = var(t, "u", 3) * frac(-1, 2) + MultiSeries::constant(t, frac(6, 4), 3);
  EXPECT_EQ(s.to_string(), "3/2 - 1/2 u");
  EXPECT_EQ(to_string(parse_rational("-4/6")), "-2/3");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}
