#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "dpcob/chern.hpp"
#include "dpcob/parse.hpp"
#include "oracles.hpp"

using namespace dpcob;
using namespace dpcob::chern;

namespace {

Space P(int n) { return Space::projective(n); }
Space X(const char* s) { return parse_space(s); }

ChernNumbers as_rational(const std::map<Partition, long>& m) {
  ChernNumbers out;
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

ChernNumbers triple(long c111, long c21, long c3) { return {{{1, 1, 1}, c111}, {{2, 1}, c21}, {{3}, c3}}; }

}  // namespace

TEST(CohomologyRing, ProjectiveSpace) {
  const Space x = P(3);
  const auto& p = cohomology_ring(x);
  const auto basis = p.basis();
  ASSERT_EQ(basis.size(), 4u);
  for (const auto& b : basis) EXPECT_EQ(b.size(), 1u);
  EXPECT_EQ(p.integrate(power(p.generator("h1"), 3)), 1);
  EXPECT_TRUE(p.reduce(power(p.generator("h1"), 4)).is_zero());
}

TEST(CohomologyRing, ProductOfLines) {
  auto x = Space::product(P(1), P(1));
  const auto& p = cohomology_ring(x);
  EXPECT_EQ(p.resolve("a"), "h1");
  EXPECT_EQ(p.resolve("b"), "h2");
  EXPECT_EQ(p.integrate(p.generator("h1") * p.generator("h2")), 1);
  EXPECT_TRUE(p.reduce(p.generator("h1") * p.generator("h1")).is_zero());
  EXPECT_EQ(p.basis()[1].size(), 2u);
}

TEST(CohomologyRing, BundleRelation) {
  auto x = X("PB(P2; 0, h)");
  const auto& p = cohomology_ring(x);
  const auto h = p.generator("h1"), xi = p.generator("xi1");
  EXPECT_EQ(p.reduce(xi * xi), -(h * xi));
  EXPECT_EQ(p.integrate(h * h * xi), 1);
  EXPECT_EQ(p.integrate(power(h, 3)), 0);
  // Betti numbers of a P^1-bundle over P^2: 1, 2, 2, 1.
  const auto basis = p.basis();
  std::vector<std::size_t> betti;
  for (const auto& b : basis) betti.push_back(b.size());
  EXPECT_EQ(betti, (std::vector<std::size_t>{1, 2, 2, 1}));
}

TEST(Integrate, PushForwardForHypersurface) {
  auto x = X("Hyp(P1*P1; a+b)");
  const auto& p = cohomology_ring(x);
  EXPECT_EQ(x.dim(), 1);
  EXPECT_EQ(p.integrate(p.generator("h1")), 1);
  EXPECT_EQ(p.integrate(p.generator("h1") + p.generator("h2")), 2);
}

TEST(Integrate, DegreeMismatchThrows) {
  const Space x = P(3);
  const auto& p = cohomology_ring(x);
  EXPECT_THROW(p.integrate(p.generator("h1")), std::invalid_argument);
}

TEST(TangentChern, ProjectiveSpace) {
  auto x = P(3);
  const auto& p = cohomology_ring(x);
  const auto h = p.generator("h1");
  EXPECT_EQ(chern_class(x, 1), h * 4);
  EXPECT_EQ(chern_class(x, 2), h * h * 6);
  EXPECT_EQ(chern_class(x, 3), power(h, 3) * 4);
}

TEST(TangentChern, EulerOfThreeLines) { EXPECT_EQ(euler_number(X("P1*P1*P1")), 8); }

TEST(TangentChern, BundleFirstChernCube) {
  auto x = X("PB(P2; 0, h)");
  const auto& p = cohomology_ring(x);
  const auto c1 = chern_class(x, 1);
  EXPECT_EQ(c1, p.generator("h1") * 4 + p.generator("xi1") * 2);
  EXPECT_EQ(p.integrate(power(c1, 3)), 56);
}

TEST(ChernNumbers, GoldenThreefolds) {
  EXPECT_EQ(chern_numbers(P(3)), triple(64, 24, 4));
  EXPECT_EQ(chern_numbers(X("P2*P1")), triple(54, 24, 6));
  EXPECT_EQ(chern_numbers(X("P1*P1*P1")), triple(48, 24, 8));
  EXPECT_EQ(chern_numbers(X("Bl(P3)")), triple(56, 24, 6));
  EXPECT_EQ(chern_numbers(X("PB(P2; 0, h)")), triple(56, 24, 6));
}

TEST(ChernNumbers, ProductsMatchMultinomialOracle) {
  const std::vector<std::vector<int>> cases = {{1}, {2}, {3}, {4}, {1, 1}, {2, 1}, {1, 2}, {1, 1, 1}, {2, 2}, {3, 1}, {2, 1, 1}, {1, 1, 1, 1}};
  for (const auto& dims : cases) {
    Space x = P(dims[0]);
    for (std::size_t i = 1; i < dims.size(); ++i) x = Space::product(x, P(dims[i]));
    EXPECT_EQ(chern_numbers(x), as_rational(oracle::product_chern_numbers(dims))) << x.to_string();
  }
}

TEST(ChernNumbers, TwoPresentationOrders) {
  EXPECT_EQ(chern_numbers(X("P2*P1")), chern_numbers(X("P1*P2")));
  EXPECT_EQ(chern_numbers(X("(P1*P1)*P1")), chern_numbers(X("P1*(P1*P1)")));
  EXPECT_EQ(chern_numbers(P(3)), chern_numbers(X("PB(Point; 0, 0, 0, 0)")));
  EXPECT_EQ(chern_numbers(X("PB(P2; 0, h)")), chern_numbers(X("PB(P2; h, 0)")));
  EXPECT_EQ(chern_numbers(X("P1*P1*P1")), chern_numbers(X("PB(P1*P1; 0, 0)")));
  EXPECT_EQ(chern_numbers(X("P2*P1")), chern_numbers(X("PB(P2; 0, 0)")));
}

TEST(ChernNumbers, BlowupClosedFormulas) {
  for (const char* s : {"P3", "P2*P1", "P1*P1*P1", "PB(P2; 0, h)", "PB(P1*P1; 0, a+b)"}) {
    const Space x = X(s);
    auto base = chern_numbers(x);
    auto bl = chern_numbers(Space::blowup(x));
    EXPECT_EQ((bl[{1, 1, 1}]), (base[{1, 1, 1}] - 8)) << s;
    EXPECT_EQ((bl[{2, 1}]), (base[{2, 1}])) << s;
    EXPECT_EQ((bl[{3}]), (base[{3}] + 2)) << s;
  }
}

TEST(ChernNumbers, DimensionBound) {
  EXPECT_THROW(chern_numbers(P(5)), std::invalid_argument);
  EXPECT_NO_THROW(chern_numbers(P(5), 5));
  EXPECT_EQ(chern_numbers(Space::point()), (ChernNumbers{{Partition{}, 1}}));
  EXPECT_EQ(chern_numbers(P(1)), (ChernNumbers{{Partition{1}, 2}}));
}

TEST(Invariants, EulerMatchesCellCount) {
  for (const char* s : {"P3", "P2*P1", "P1*P1*P1", "Bl(P3)", "Bl(P1*P1*P1)", "PB(P2; 0, h)", "PB(P1; 0, h, 2*h)", "P4", "P2*P2",
                        "PB(P1*P1; a, b)", "Bl(PB(P2; 0, h))", "Hyp(P1*P1; a+b)", "Hyp(P1*P2; a+b)", "Hyp(P2*P2; a+b)",
                        "Hyp(P2*P3; a+b)", "Hyp(P3*P1; a+b)", "Hyp(P1*P4; a+b)"}) {
    const Space x = X(s);
    auto comb = combinatorial_euler(x);
    ASSERT_TRUE(comb.has_value()) << s;
    EXPECT_EQ(euler_number(x), *comb) << s;
  }
}

TEST(Invariants, ToddGenusOfRationalThreefolds) {
  for (const char* s : {"P3", "P2*P1", "P1*P1*P1", "Bl(P3)", "Bl(P2*P1)", "Bl(P1*P1*P1)", "PB(P2; 0, h)", "PB(P2; 0, 2*h)",
                        "PB(P1*P1; 0, a+b)", "PB(P1; 0, 0, h)", "PB(PB(P1; 0, h); 0, xi)", "Bl(Bl(P3))"}) {
    EXPECT_EQ((chern_numbers(X(s))[{2, 1}]), 24) << s;
  }
}

TEST(Invariants, MilnorHypersurfaceTwoOrders) {
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; n + m <= 5; ++m) {
      const Space a = Space::hypersurface(Space::product(P(n), P(m)), DivisorClass({{"h1", 1}, {"h2", 1}}));
      const Space b = Space::hypersurface(Space::product(P(m), P(n)), DivisorClass({{"h1", 1}, {"h2", 1}}));
      EXPECT_EQ(chern_numbers(a, 5), chern_numbers(b, 5)) << n << "," << m;
      EXPECT_EQ(euler_number(a), Rational((std::min(n, m) + 1) * std::max(n, m)));
    }
  // H(1,1) is the diagonal conic, a P^1.
  EXPECT_EQ(chern_numbers(X("Hyp(P1*P1; a+b)")), chern_numbers(P(1)));
  // H(1,2) is a ruled surface.
  EXPECT_EQ((chern_numbers(X("Hyp(P1*P2; a+b)"))[{2}]), 4);
}

TEST(DtExponent, Examples) {
  EXPECT_EQ(dt_exponent(P(3)), -20);
  EXPECT_EQ(dt_exponent(X("P1*P1*P1")), -16);
  EXPECT_EQ(dt_exponent(X("P2*P1")), -18);
  EXPECT_EQ(dt_exponent(X("Bl(P3)")), -18);
  EXPECT_THROW(dt_exponent(P(2)), std::invalid_argument);
}

TEST(DtExponent, EqualsC3MinusC1C2) {
  for (const char* s : {"P3", "P2*P1", "Bl(P3)", "PB(P1*P1; 0, a+b)", "Hyp(P2*P2; a+b)", "Hyp(P4; 2*h)"}) {
    const Space x = X(s);
    auto cn = chern_numbers(x);
    EXPECT_EQ(dt_exponent(x), (cn[{3}] - cn[{2, 1}])) << s;
  }
}

TEST(LogDtExponent, Examples) {
  EXPECT_EQ(log_dt_exponent(P(3), {}), dt_exponent(P(3)));
  EXPECT_EQ(log_dt_exponent(P(3), DivisorClass::generator("h1")), -8);
  const Space b = X("PB(P2; 0, h)");
  // The section xi = 0 has normal bundle O(-1).
  const auto& p = b.presentation();
  EXPECT_EQ(p.integrate(p.generator("xi1") * p.generator("xi1") * p.generator("h1")), -1);
  EXPECT_EQ(log_dt_exponent(b, DivisorClass::generator("xi1")), -12);
  EXPECT_EQ(log_dt_exponent(X("P1*P1*P1"), DivisorClass::generator("h3")), -8);
  EXPECT_THROW(log_dt_exponent(P(2), {}), std::invalid_argument);
}

TEST(SpaceConstruction, Errors) {
  EXPECT_THROW(Space::blowup(P(2)), std::invalid_argument);
  EXPECT_THROW(Space::bundle(P(2), {}), std::invalid_argument);
  EXPECT_THROW(Space::bundle(P(2), {DivisorClass::generator("xi1")}), std::invalid_argument);
  EXPECT_THROW(Space::blowup(X("Hyp(P4; h)")), std::invalid_argument);
  EXPECT_THROW(Space::projective(-1), std::invalid_argument);
}

TEST(SpaceConstruction, Dimensions) {
  EXPECT_EQ(X("PB(P2; 0, h, 2*h)").dim(), 4);
  EXPECT_EQ(X("Hyp(P2*P3; a+b)").dim(), 4);
  EXPECT_EQ(X("Bl(P3)").dim(), 3);
  EXPECT_EQ(X("P2*P1*Point").dim(), 3);
}

TEST(SpaceConstruction, NestedGeneratorNames) {
  // The right factor's generators are renumbered after the left factor's.
  const Space x = X("P1*PB(P1; 0, h)");
  const auto& p = x.presentation();
  EXPECT_TRUE(p.table->find("h2").has_value());
  EXPECT_TRUE(p.table->find("xi1").has_value());
  EXPECT_EQ(chern_numbers(x), chern_numbers(X("P1*P1*P1")));
  const Space y = X("PB(P1; 0, h)*PB(P1; 0, h)");
  EXPECT_TRUE(y.presentation().table->find("xi2").has_value());
}
