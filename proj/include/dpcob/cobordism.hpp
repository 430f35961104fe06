#pragma once

// The rational cobordism ring of a point in the basis of products of
// projective spaces. Classes are identified by their Chern numbers.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpcob/chern.hpp"
#include "dpcob/fgl.hpp"
#include "dpcob/linalg.hpp"
#include "dpcob/partition.hpp"

namespace dpcob::cobordism {

using chern::Space;

/// Basis partitions of dimension d, reverse-lexicographic.
inline std::vector<Partition> basis(int d) {
  if (d < 0) throw std::invalid_argument("negative dimension");
  return partitions(d);
}

/// P^{l1} * P^{l2} * ..., or Point for the empty partition.
inline Space basis_space(const Partition& lambda) {
  if (lambda.empty()) return Space::point();
  Space x = Space::projective(lambda[0]);
  for (std::size_t i = 1; i < lambda.size(); ++i) x = Space::product(x, Space::projective(lambda[i]));
  return x;
}

inline std::string basis_name(const Partition& lambda) { return "[" + basis_space(lambda).to_string() + "]"; }

class CobordismClass {
 public:
  explicit CobordismClass(int dim = 0) : dim_(dim) {
    if (dim < 0) throw std::invalid_argument("negative dimension");
  }

  static CobordismClass of(const Partition& lambda, Rational c = 1) {
    int d = 0;
    for (int k : lambda) d += k;
    CobordismClass x(d);
    x.add(lambda, c);
    return x;
  }

  int dim() const { return dim_; }
  const std::map<Partition, Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational coefficient(const Partition& lambda) const {
    auto it = coeffs_.find(lambda);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add(const Partition& lambda, const Rational& c) {
    int d = 0;
    for (int k : lambda) d += k;
    if (d != dim_) throw std::invalid_argument(dpcob::to_string(lambda) + " is not a partition of " + std::to_string(dim_));
    if (c == 0) return;
    Rational& slot = coeffs_[lambda];
    slot += c;
    if (slot == 0) coeffs_.erase(lambda);
  }

  CobordismClass& operator+=(const CobordismClass& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("adding classes of different dimensions");
    for (const auto& [l, c] : o.coeffs_) add(l, c);
    return *this;
  }
  CobordismClass& operator-=(const CobordismClass& o) { return *this += Rational(-1) * o; }

  friend CobordismClass operator+(CobordismClass a, const CobordismClass& b) { return a += b; }
  friend CobordismClass operator-(CobordismClass a, const CobordismClass& b) { return a -= b; }

  friend CobordismClass operator*(const Rational& k, const CobordismClass& a) {
    CobordismClass r(a.dim_);
    for (const auto& [l, c] : a.coeffs_) r.add(l, k * c);
    return r;
  }

  /// Product of basis monomials is partition concatenation.
  friend CobordismClass operator*(const CobordismClass& a, const CobordismClass& b) {
    CobordismClass r(a.dim_ + b.dim_);
    for (const auto& [la, ca] : a.coeffs_)
      for (const auto& [lb, cb] : b.coeffs_) {
        Partition l = la;
        l.insert(l.end(), lb.begin(), lb.end());
        std::sort(l.begin(), l.end(), std::greater<>());
        r.add(l, ca * cb);
      }
    return r;
  }

  friend bool operator==(const CobordismClass&, const CobordismClass&) = default;

  /// Terms in basis order, e.g. "[P3] - 2 [P2*P1]".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& lambda : basis(dim_)) {
      auto it = coeffs_.find(lambda);
      if (it == coeffs_.end()) continue;
      const Rational& c = it->second;
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (mag != 1) s += dpcob::to_string(mag) + " ";
      s += basis_name(lambda);
    }
    return s;
  }

 private:
  int dim_;
  std::map<Partition, Rational> coeffs_;
};

/// Chern-number partitions of d in column order (ascending lex: c1^d first, c_d last).
inline std::vector<Partition> chern_columns(int d) {
  auto cols = partitions(d);
  std::reverse(cols.begin(), cols.end());
  return cols;
}

/// Rows: basis partitions; columns: Chern numbers in chern_columns order.
inline linalg::Matrix chern_matrix(int d, int dimension_bound = chern::kDefaultDimensionBound) {
  linalg::Matrix m;
  const auto cols = chern_columns(d);
  for (const auto& lambda : basis(d)) {
    const auto cn = chern::chern_numbers(basis_space(lambda), dimension_bound);
    linalg::Vector row;
    for (const auto& mu : cols) row.push_back(cn.at(mu));
    m.push_back(std::move(row));
  }
  return m;
}

namespace detail {

/// Inverse of the transposed Chern matrix per dimension, computed once.
inline const linalg::Matrix& decomposition_matrix(int d, int dimension_bound) {
  static std::shared_mutex mutex;
  static std::map<int, std::shared_ptr<const linalg::Matrix>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(d);
    if (it != cache.end()) return *it->second;
  }
  linalg::Matrix inv;
  try {
    inv = linalg::inverse(linalg::transpose(chern_matrix(d, dimension_bound)));
  } catch (const std::domain_error&) {
    throw std::domain_error("Chern matrix of dimension " + std::to_string(d) + " is singular");
  }
  std::unique_lock lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_shared<const linalg::Matrix>(std::move(inv));
  return *slot;
}

}  // namespace detail

/// The unique rational combination of basis classes with the same Chern numbers as x.
inline CobordismClass decompose(const Space& x, int dimension_bound = chern::kDefaultDimensionBound) {
  const auto cn = chern::chern_numbers(x, dimension_bound);
  const int d = x.dim();
  linalg::Vector rhs;
  for (const auto& mu : chern_columns(d)) rhs.push_back(cn.at(mu));
  const auto coeffs = linalg::matvec(detail::decomposition_matrix(d, dimension_bound), rhs);
  const auto b = basis(d);
  CobordismClass out(d);
  for (std::size_t i = 0; i < b.size(); ++i) out.add(b[i], coeffs[i]);
  return out;
}

/// Y degenerating to A u B with double locus D; an absent space is the empty variety.
struct DoublePointDatum {
  std::optional<Space> y;
  std::optional<Space> a;
  std::optional<Space> b;
  std::optional<Space> p;

  int dim() const {
    for (const auto* s : {&y, &a, &b, &p})
      if (*s) return (*s)->dim();
    return 0;
  }
};

/// [Y] - [A] - [B] + [P]; zero for a genuine double point degeneration.
inline CobordismClass verify_relation(const DoublePointDatum& datum, int dimension_bound = chern::kDefaultDimensionBound) {
  const int d = datum.dim();
  for (const auto* s : {&datum.y, &datum.a, &datum.b, &datum.p})
    if (*s && (*s)->dim() != d) throw std::invalid_argument("double point datum mixes dimensions");
  auto cls = [&](const std::optional<Space>& s) { return s ? decompose(*s, dimension_bound) : CobordismClass(d); };
  return cls(datum.y) - cls(datum.a) - cls(datum.b) + cls(datum.p);
}

/// Point blow-up of a 3-fold as a degeneration: X ~ Bl(X) u P3 glued along P2,
/// with P = P(O + O(1)) over P2.
inline DoublePointDatum blowup_relation(const Space& x) {
  if (x.dim() != 3) throw std::invalid_argument("blow-up relation needs a 3-fold");
  const Space p2 = Space::projective(2);
  return {x, Space::blowup(x), Space::projective(3), Space::bundle(p2, {chern::DivisorClass{}, chern::DivisorClass::generator("h1")})};
}

/// Milnor hypersurface of bidegree (1,1) in P^n x P^m.
inline Space milnor_hypersurface(int n, int m) {
  if (n < 0 || m < 0 || n + m == 0) throw std::invalid_argument("Milnor hypersurface needs n, m >= 0 and n + m > 0");
  auto factor = [](int k) { return k == 0 ? Space::point() : Space::projective(k); };
  const Space amb = Space::product(factor(n), factor(m));
  chern::DivisorClass d;
  int k = 0;
  for (int f : {n, m})
    if (f > 0) d += chern::DivisorClass::generator("h" + std::to_string(++k));
  return Space::hypersurface(amb, d);
}

using CoefficientTable = std::map<std::pair<int, int>, CobordismClass>;

/// a_ij for 1 <= i+j <= max from [H_{n,m}] = sum_{(i,j) != (0,0)} a_ij [P^{n-i}][P^{m-j}].
inline CoefficientTable milnor_fgl_coefficients(int max, int dimension_bound = chern::kDefaultDimensionBound) {
  if (max < 1) throw std::invalid_argument("max must be at least 1");
  if (max > dimension_bound) throw std::invalid_argument("max " + std::to_string(max) + " exceeds the dimension bound " + std::to_string(dimension_bound));
  auto proj = [](int k) { return CobordismClass::of(k == 0 ? Partition{} : Partition{k}); };
  CoefficientTable a;
  for (int total = 1; total <= max; ++total)
    for (int n = 0; n <= total; ++n) {
      const int m = total - n;
      CobordismClass rest = decompose(milnor_hypersurface(n, m), dimension_bound);
      for (const auto& [ij, c] : a) {
        const auto [i, j] = ij;
        if (i <= n && j <= m) rest -= c * proj(n - i) * proj(m - j);
      }
      a.emplace(std::make_pair(n, m), std::move(rest));
    }
  for (const auto& [ij, c] : a)
    if (a.at({ij.second, ij.first}) != c)
      throw std::logic_error("inconsistent Milnor system: a(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ") != a(" +
                             std::to_string(ij.second) + "," + std::to_string(ij.first) + ")");
  return a;
}

/// Reads a polynomial in p1, p2, ... as a class via p_k -> [P^k].
inline CobordismClass from_parameters(const MultiSeries& poly, int dim) {
  const auto& table = *poly.table();
  std::vector<int> part_of(table.size(), 0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& name = table[i].name;
    if (name.size() > 1 && name[0] == 'p' && std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) part_of[i] = std::stoi(name.substr(1));
  }
  CobordismClass out(dim);
  for (const auto& [e, c] : poly.terms()) {
    Partition lambda;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (part_of[i] == 0) throw std::invalid_argument("variable '" + table[i].name + "' is not a cobordism generator");
      lambda.insert(lambda.end(), e[i], part_of[i]);
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    out.add(lambda, c);
  }
  return out;
}

/// Coefficients a_ij, 1 <= i+j <= max, of the universal law read as classes.
inline CoefficientTable universal_fgl_classes(int max) {
  const auto law = fgl::universal_fgl(max);
  CoefficientTable out;
  for (int total = 1; total <= max; ++total)
    for (int i = 0; i <= total; ++i) out.emplace(std::make_pair(i, total - i), from_parameters(law.coefficient(i, total - i), total - 1));
  return out;
}

}  // namespace dpcob::cobordism
