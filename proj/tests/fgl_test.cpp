#include <gtest/gtest.h>

#include <vector>

#include "dpcob/fgl.hpp"

using namespace dpcob;
using namespace dpcob::fgl;

namespace {

// Dense bivariate series over Q, index [i][j] for u^i v^j.
using Grid = std::vector<std::vector<Rational>>;

Grid grid(int n) { return Grid(n + 1, std::vector<Rational>(n + 1, 0)); }

Grid grid_mul(const Grid& a, const Grid& b, int n) {
  Grid r = grid(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      if (a[i][j] == 0) continue;
      for (int k = 0; i + j + k <= n; ++k)
        for (int l = 0; i + j + k + l <= n; ++l) r[i + k][j + l] += a[i][j] * b[k][l];
    }
  return r;
}

// Solves l(F) = l(u) + l(v) by fixed-point iteration with numeric p-values:
// F <- F + (l(u) + l(v) - l(F)). Independent of reversion/substitution.
Grid numeric_law(const std::vector<Rational>& p, int n) {
  auto apply_log = [&](const Grid& x) {
    Grid r = x, pw = x;
    for (int i = 1; i + 1 <= n; ++i) {
      pw = grid_mul(pw, x, n);
      for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) r[a][b] += pw[a][b] * p[i - 1] / (i + 1);
    }
    return r;
  };
  Grid u = grid(n), v = grid(n);
  u[1][0] = 1;
  v[0][1] = 1;
  Grid target = apply_log(u), lv = apply_log(v);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) target[a][b] += lv[a][b];
  Grid F = grid(n);
  F[1][0] = 1;
  F[0][1] = 1;
  for (int it = 0; it < n + 1; ++it) {
    Grid lf = apply_log(F);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) F[a][b] += target[a][b] - lf[a][b];
  }
  return F;
}

Rational evaluate(const MultiSeries& poly, const std::vector<Rational>& p) {
  Rational total = 0;
  const auto& table = *poly.table();
  for (const auto& [e, c] : poly.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) {
        const std::string& name = table[i].name;
        term *= p[std::stoi(name.substr(1)) - 1];
      }
    total += term;
  }
  return total;
}

MultiSeries param(const TablePtr& t, int i) { return MultiSeries::variable(t, param_name(i)); }

}  // namespace

TEST(Logarithm, Coefficients) {
  auto log = logarithm(5);
  const auto& t = log.l.table();
  EXPECT_EQ(log.l.coefficient({1, 0, 0, 0, 0}), 1);
  EXPECT_EQ(log.l.coefficient({3, 0, 1, 0, 0}), frac(1, 3));
  EXPECT_EQ(log.l.coefficient({5, 0, 0, 0, 1}), frac(1, 5));
  EXPECT_EQ(t->size(), 5u);
}

TEST(UniversalLaw, LowOrderCoefficients) {
  auto F = universal_fgl(6);
  const auto& t = F.table();
  EXPECT_EQ(F.coefficient(0, 1), MultiSeries::constant(t, 1, 6));
  EXPECT_EQ(F.coefficient(1, 0), MultiSeries::constant(t, 1, 6));
  for (int j = 2; j <= 6; ++j) EXPECT_TRUE(F.coefficient(0, j).is_zero()) << j;
  EXPECT_EQ(F.coefficient(1, 1), -param(t, 1).truncated(6));
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j) EXPECT_EQ(F.coefficient(i, j), F.coefficient(j, i));
}

TEST(UniversalLaw, MatchesNumericFixedPointOracle) {
  const int n = 6;
  auto F = universal_fgl(n);
  for (const std::vector<Rational>& p : {std::vector<Rational>{1, 2, 3, 4, 5}, {frac(-1, 2), 3, frac(2, 7), -1, 0}}) {
    Grid oracle = numeric_law(p, n);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) EXPECT_EQ(evaluate(F.coefficient(i, j), p), oracle[i][j]) << i << "," << j;
  }
}

TEST(UniversalLaw, AxiomsAndHomogeneity) {
  for (int D = 1; D <= 8; ++D) {
    auto F = universal_fgl(D);
    auto r = check_axioms(F);
    EXPECT_TRUE(r.identity) << D;
    EXPECT_TRUE(r.commutativity) << D;
    EXPECT_TRUE(r.associativity) << D;
    EXPECT_TRUE(is_homogeneous(F)) << D;
  }
}

TEST(CheckAxioms, AdditiveAndMultiplicative) {
  EXPECT_TRUE(check_axioms(additive_fgl(5)).all());
  EXPECT_TRUE(check_axioms(multiplicative_fgl(5)).all());
}

TEST(CheckAxioms, BrokenLawFailsIdentity) {
  auto F = additive_fgl(4);
  F.F.add_term({2, 0}, 1);
  auto r = check_axioms(F);
  EXPECT_FALSE(r.identity);
  EXPECT_FALSE(r.all());
}

TEST(CheckAxioms, NonAssociativeLawDetected) {
  // u + v + u^2v^2 is commutative with unit but not associative.
  auto F = additive_fgl(4);
  F.F.add_term({2, 2}, 1);
  auto r = check_axioms(F);
  EXPECT_TRUE(r.identity);
  EXPECT_TRUE(r.commutativity);
  EXPECT_FALSE(r.associativity);
}

TEST(F11, Examples) {
  EXPECT_TRUE(f11(additive_fgl(5)).is_zero());
  auto U = universal_fgl(5);
  auto g = f11(U);
  EXPECT_EQ(g.constant_term(), 0);
  EXPECT_EQ(coefficient_of(g, {{"u", 0}, {"v", 0}}), -param(U.table(), 1).truncated(3));
  auto M = multiplicative_fgl(5);
  EXPECT_EQ(f11(M), -MultiSeries::variable(M.table(), "beta", 3));
}

TEST(F11, RejectsNonDivisible) {
  auto F = additive_fgl(4);
  F.F.add_term({2, 0}, 1);
  EXPECT_THROW(f11(F), std::domain_error);
}

TEST(Chi, Examples) {
  auto A = additive_fgl(6);
  EXPECT_EQ(chi(A), -MultiSeries::variable(A.table(), "u", 6));

  // u + v - beta uv: chi(u) = -u / (1 - beta u).
  auto M = multiplicative_fgl(6);
  MultiSeries expected(M.table(), 6);
  for (int k = 1; k <= 6; ++k) expected.add_term({k, 0, k - 1}, -1);
  EXPECT_EQ(chi(M), expected);

  auto U = universal_fgl(7);
  EXPECT_TRUE(substitute(U.F, {{"v", chi(U)}}).is_zero());
}

TEST(Difference, Examples) {
  auto A = additive_fgl(5);
  EXPECT_EQ(difference(A), MultiSeries::variable(A.table(), "u", 5) - MultiSeries::variable(A.table(), "v", 5));

  auto U = universal_fgl(6);
  auto Fm = difference(U);
  auto b = coefficient_table(Fm, 6);
  EXPECT_FALSE(b.contains({0, 0}));
  EXPECT_EQ(b.at({1, 0}).constant_term(), 1);
  EXPECT_EQ(b.at({0, 1}).constant_term(), -1);
  EXPECT_EQ(b.at({1, 0}).size(), 1u);
  EXPECT_EQ(b.at({0, 1}).size(), 1u);
  // F^-(u, v) = u - v mod (u, v)^2.
  EXPECT_EQ(Fm.truncated(1), (MultiSeries::variable(U.table(), "u") - MultiSeries::variable(U.table(), "v")).truncated(1));
}

TEST(DifferenceIdentities, AllLawsSatisfyThem) {
  EXPECT_TRUE(check_difference_identities(additive_fgl(5)).all());
  EXPECT_TRUE(check_difference_identities(multiplicative_fgl(5)).all());
  auto r = check_difference_identities(universal_fgl(6));
  EXPECT_TRUE(r.inverse);
  EXPECT_TRUE(r.diagonal);
  EXPECT_TRUE(r.translation);
  EXPECT_TRUE(r.distributive);
}

TEST(DifferenceIdentities, DetectsBrokenLaw) {
  auto F = additive_fgl(4);
  F.F.add_term({2, 2}, 1);
  EXPECT_FALSE(check_difference_identities(F).all());
}
