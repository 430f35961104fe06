#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "dpcob/partition.hpp"
#include "dpcob/space.hpp"

namespace dpcob::chern {

inline constexpr int kDefaultDimensionBound = 4;

/// Chern numbers keyed by partition; std::map order gives c1^d first, c_d last.
using ChernNumbers = std::map<Partition, Rational>;

inline const Presentation& cohomology_ring(const Space& x) { return x.presentation(); }

inline Rational integrate(const Space& x, const MultiSeries& a) { return x.presentation().integrate(a); }

/// Total Chern class of the tangent bundle, in the (ambient) cohomology ring.
inline const MultiSeries& tangent_chern(const Space& x) { return x.presentation().tangent; }

inline MultiSeries chern_class(const Space& x, int k) { return homogeneous_part(tangent_chern(x), k); }

inline ChernNumbers chern_numbers(const Space& x, int dimension_bound = kDefaultDimensionBound) {
  if (x.dim() > dimension_bound)
    throw std::invalid_argument("dimension " + std::to_string(x.dim()) + " exceeds the dimension bound " + std::to_string(dimension_bound));
  const auto& p = x.presentation();
  std::vector<MultiSeries> c;
  for (int k = 0; k <= x.dim(); ++k) c.push_back(homogeneous_part(p.tangent, k));
  ChernNumbers out;
  for (const auto& lambda : partitions(x.dim())) {
    MultiSeries prod = p.one();
    for (int part : lambda) prod = p.mul(prod, c[part]);
    out[lambda] = p.integrate(prod);
  }
  return out;
}

/// Topological Euler characteristic as the top Chern number.
inline Rational euler_number(const Space& x) {
  const auto& p = x.presentation();
  return p.integrate(homogeneous_part(p.tangent, x.dim()));
}

/// Euler characteristic by cell counting, for spaces where that is available:
/// products multiply, bundles multiply by the rank, a point blow-up adds 2, and
/// the Milnor hypersurface H(n,m) is a P^{max-1}-bundle over P^{min}.
inline std::optional<Rational> combinatorial_euler(const Space& x) {
  switch (x.kind()) {
    case Space::Kind::point:
      return Rational(1);
    case Space::Kind::projective:
      return Rational(x.n() + 1);
    case Space::Kind::product: {
      auto a = combinatorial_euler(x.children()[0]);
      auto b = combinatorial_euler(x.children()[1]);
      if (!a || !b) return std::nullopt;
      return Rational(*a * *b);
    }
    case Space::Kind::bundle: {
      auto a = combinatorial_euler(x.children()[0]);
      if (!a) return std::nullopt;
      return Rational(*a * static_cast<long>(x.classes().size()));
    }
    case Space::Kind::blowup: {
      auto a = combinatorial_euler(x.children()[0]);
      if (!a) return std::nullopt;
      return Rational(*a + 2);
    }
    case Space::Kind::hypersurface: {
      const Space& amb = x.children()[0];
      if (amb.kind() != Space::Kind::product) return std::nullopt;
      const Space& l = amb.children()[0];
      const Space& r = amb.children()[1];
      auto n_of = [](const Space& s) { return s.kind() == Space::Kind::projective ? s.n() : (s.kind() == Space::Kind::point ? 0 : -1); };
      const int n = n_of(l), m = n_of(r);
      if (n < 0 || m < 0) return std::nullopt;
      if (x.classes()[0] != DivisorClass({{amb.presentation().resolve("h1"), 1}, {amb.presentation().resolve("h2"), 1}}))
        return std::nullopt;
      return Rational((std::min(n, m) + 1) * std::max(n, m));
    }
  }
  return std::nullopt;
}

/// Integral of c3(V tensor L) for a class c(V) of virtual rank 3 and a line class l:
/// c3 + c2 l + c1 l^2 + l^3.
inline Rational twisted_c3(const Presentation& p, const MultiSeries& total, const MultiSeries& l) {
  const MultiSeries c1 = homogeneous_part(total, 1);
  const MultiSeries c2 = homogeneous_part(total, 2);
  const MultiSeries c3 = homogeneous_part(total, 3);
  const MultiSeries l2 = p.mul(l, l);
  return p.integrate(c3 + p.mul(c2, l) + p.mul(c1, l2) + p.mul(l, l2));
}

/// Exponent of the degree-0 DT partition function: integral of c3(T_X tensor K_X).
inline Rational dt_exponent(const Space& x) {
  if (x.dim() != 3) throw std::invalid_argument("DT exponent needs a 3-fold, got dimension " + std::to_string(x.dim()));
  const auto& p = x.presentation();
  return twisted_c3(p, p.tangent, -homogeneous_part(p.tangent, 1));
}

/// Log version relative to a divisor s: c3(T_X[-S] tensor K_X[S]) with
/// c(T_X[-S]) = c(T_X)/(1+s) and K_X[S] = K_X + s.
inline Rational log_dt_exponent(const Space& x, const DivisorClass& s) {
  if (x.dim() != 3) throw std::invalid_argument("DT exponent needs a 3-fold, got dimension " + std::to_string(x.dim()));
  const auto& p = x.presentation();
  const MultiSeries S = p.divisor(s);
  const MultiSeries v = p.reduce(p.tangent * reciprocal(p.one() + S));
  return twisted_c3(p, v, S - homogeneous_part(p.tangent, 1));
}

}  // namespace dpcob::chern
