#pragma once

// Sparse truncated multivariate power series with exact coefficients.
//
// A series lives over a VariableTable. Some variables are "truncating": the
// series keeps only terms whose total exponent in those variables is at most
// trunc(). The remaining variables are parameters (p1, p2, ... or the
// generators of a coefficient ring); their degree is bounded only by the
// grading of whatever is being computed.
//
// Terms are kept in a canonical order (total degree, then descending
// lexicographic exponent) and zero coefficients are never stored, so
// structural equality coincides with equality to the common truncation order.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpcob/rational.hpp"

namespace dpcob {

using Exponent = std::vector<int>;

inline constexpr int kNoTruncation = std::numeric_limits<int>::max();

inline long total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }

struct CanonicalOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const long da = total_degree(a);
    const long db = total_degree(b);
    if (da != db) return da < db;
    return b < a;
  }
};

class VariableTable {
 public:
  struct Variable {
    std::string name;
    int weight = 1;
    bool truncating = true;
    bool operator==(const Variable&) const = default;
  };

  VariableTable() = default;

  explicit VariableTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name.empty()) throw std::invalid_argument("empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j].name == vars_[i].name)
          throw std::invalid_argument("duplicate variable name '" + vars_[i].name + "'");
    }
  }

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& variables() const { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  }

  int truncation_degree(const Exponent& e) const {
    int d = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].truncating) d += e[i];
    return d;
  }

  int weighted_degree(const Exponent& e) const {
    int d = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) d += vars_[i].weight * e[i];
    return d;
  }

  bool operator==(const VariableTable&) const = default;

 private:
  std::vector<Variable> vars_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

inline TablePtr make_table(std::vector<VariableTable::Variable> vars) {
  return std::make_shared<const VariableTable>(std::move(vars));
}

inline bool same_table(const TablePtr& a, const TablePtr& b) { return a == b || (a && b && *a == *b); }

template <class Coeff>
class BasicSeries {
 public:
  using Terms = std::map<Exponent, Coeff, CanonicalOrder>;

  BasicSeries() : table_(make_table({})) {}
  explicit BasicSeries(TablePtr table, int trunc = kNoTruncation) : table_(std::move(table)), trunc_(trunc) {
    if (!table_) throw std::invalid_argument("null variable table");
    if (trunc_ < 0) throw std::invalid_argument("negative truncation order");
  }

  static BasicSeries constant(TablePtr table, const Coeff& c, int trunc = kNoTruncation) {
    BasicSeries s(std::move(table), trunc);
    s.add_term(Exponent(s.table_->size(), 0), c);
    return s;
  }

  static BasicSeries variable(TablePtr table, std::string_view name, int trunc = kNoTruncation) {
    BasicSeries s(std::move(table), trunc);
    Exponent e(s.table_->size(), 0);
    e[s.table_->index(name)] = 1;
    s.add_term(e, Coeff(1));
    return s;
  }

  static BasicSeries monomial(TablePtr table, Exponent e, const Coeff& c, int trunc = kNoTruncation) {
    BasicSeries s(std::move(table), trunc);
    s.add_term(e, c);
    return s;
  }

  const TablePtr& table() const { return table_; }
  int trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Exponent zero_exponent() const { return Exponent(table_->size(), 0); }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Coeff constant_term() const { return coefficient(zero_exponent()); }

  /// Accumulates c into the coefficient of x^e. Terms beyond trunc() are dropped.
  void add_term(const Exponent& e, const Coeff& c) {
    if (e.size() != table_->size()) throw std::invalid_argument("exponent length does not match variable table");
    if (c == 0) return;
    if (trunc_ != kNoTruncation) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if ((*table_)[i].truncating && e[i] < 0)
          throw std::invalid_argument("negative exponent in truncation variable '" + (*table_)[i].name + "'");
      if (table_->truncation_degree(e) > trunc_) return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BasicSeries truncated(int order) const {
    BasicSeries r(table_, std::min(order, trunc_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  /// Highest truncation degree among stored terms (0 for the zero series).
  int max_truncation_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, table_->truncation_degree(e));
    return d;
  }

  /// Lowest truncation degree among stored terms; nullopt for zero.
  std::optional<int> order() const {
    std::optional<int> d;
    for (const auto& [e, c] : terms_) {
      int k = table_->truncation_degree(e);
      if (!d || k < *d) d = k;
    }
    return d;
  }

  BasicSeries& operator+=(const BasicSeries& o) {
    check_table(o);
    trunc_ = std::min(trunc_, o.trunc_);
    if (trunc_ != kNoTruncation) std::erase_if(terms_, [&](const auto& t) { return table_->truncation_degree(t.first) > trunc_; });
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  BasicSeries& operator-=(const BasicSeries& o) { return *this += -o; }

  BasicSeries& operator*=(const Coeff& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }

  friend BasicSeries operator+(BasicSeries a, const BasicSeries& b) { return a += b; }
  friend BasicSeries operator-(BasicSeries a, const BasicSeries& b) { return a -= b; }
  friend BasicSeries operator*(BasicSeries a, const Coeff& k) { return a *= k; }
  friend BasicSeries operator*(const Coeff& k, BasicSeries a) { return a *= k; }

  friend BasicSeries operator-(BasicSeries a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }

  friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
    a.check_table(b);
    const int trunc = std::min(a.trunc_, b.trunc_);
    const auto& table = *a.table_;
    BasicSeries r(a.table_, trunc);
    // Bucket b by truncation degree so that pairs beyond trunc are never formed.
    std::vector<std::pair<int, const typename Terms::value_type*>> rhs;
    rhs.reserve(b.terms_.size());
    for (const auto& t : b.terms_) rhs.emplace_back(table.truncation_degree(t.first), &t);
    std::stable_sort(rhs.begin(), rhs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Exponent e(table.size());
    for (const auto& [ea, ca] : a.terms_) {
      const int da = table.truncation_degree(ea);
      for (const auto& [db, tb] : rhs) {
        if (trunc != kNoTruncation && da + db > trunc) break;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + tb->first[i];
        r.add_term(e, ca * tb->second);
      }
    }
    return r;
  }

  BasicSeries& operator*=(const BasicSeries& o) { return *this = *this * o; }

  /// Equality at the common truncation order.
  friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
    if (!same_table(a.table_, b.table_)) return false;
    if (a.trunc_ == b.trunc_) return a.terms_ == b.terms_;
    const int t = std::min(a.trunc_, b.trunc_);
    return a.truncated(t).terms_ == b.truncated(t).terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += (*table_)[i].name;
        if (e[i] != 1) mono += '^' + std::to_string(e[i]);
      }
      const bool negative = c < 0;
      const Coeff mag = negative ? Coeff(-c) : c;
      if (first)
        os << (negative ? "-" : "");
      else
        os << (negative ? " - " : " + ");
      first = false;
      if (mono.empty())
        os << dpcob::to_string(mag);
      else if (mag == 1)
        os << mono;
      else
        os << dpcob::to_string(mag) << ' ' << mono;
    }
    return os.str();
  }

 private:
  void check_table(const BasicSeries& o) const {
    if (!same_table(table_, o.table_)) throw std::invalid_argument("series over different variable tables");
  }

  TablePtr table_;
  Terms terms_;
  int trunc_ = kNoTruncation;
};

using MultiSeries = BasicSeries<Rational>;

template <class Coeff>
BasicSeries<Coeff> power(const BasicSeries<Coeff>& f, int k) {
  if (k < 0) throw std::invalid_argument("negative power of a series");
  auto r = BasicSeries<Coeff>::constant(f.table(), Coeff(1), f.trunc());
  auto base = f;
  while (k > 0) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

/// Part of f of the given total degree in the truncation variables.
template <class Coeff>
BasicSeries<Coeff> homogeneous_part(const BasicSeries<Coeff>& f, int degree) {
  BasicSeries<Coeff> r(f.table(), f.trunc());
  for (const auto& [e, c] : f.terms())
    if (f.table()->truncation_degree(e) == degree) r.add_term(e, c);
  return r;
}

/// Coefficient of the monomial prod x_i^k_i (x_i named in `fixed`), as a series in
/// the remaining variables. Terms whose exponents in the fixed variables differ are discarded.
template <class Coeff>
BasicSeries<Coeff> coefficient_of(const BasicSeries<Coeff>& f, const std::map<std::string, int>& fixed) {
  std::vector<std::pair<std::size_t, int>> idx;
  for (const auto& [name, k] : fixed) idx.emplace_back(f.table()->index(name), k);
  BasicSeries<Coeff> r(f.table(), f.trunc());
  for (const auto& [e, c] : f.terms()) {
    bool match = true;
    for (auto [i, k] : idx) match = match && e[i] == k;
    if (!match) continue;
    Exponent e2 = e;
    for (auto [i, k] : idx) e2[i] = 0;
    r.add_term(e2, c);
  }
  return r;
}

/// Moves f onto another table, mapping variables by name (after optional renaming).
/// Every variable occurring in f must exist in the target.
template <class Coeff>
BasicSeries<Coeff> rebase(const BasicSeries<Coeff>& f, TablePtr target, const std::map<std::string, std::string>& rename = {},
                          std::optional<int> trunc = std::nullopt) {
  const auto& src = *f.table();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto it = rename.find(src[i].name);
    map[i] = target->find(it == rename.end() ? src[i].name : it->second);
  }
  BasicSeries<Coeff> r(target, trunc.value_or(f.trunc()));
  for (const auto& [e, c] : f.terms()) {
    Exponent e2(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) throw std::invalid_argument("variable '" + src[i].name + "' missing from target table");
      e2[*map[i]] += e[i];
    }
    r.add_term(e2, c);
  }
  return r;
}

/// Composition f(x_i := g_i). Unassigned variables are left in place. Each series
/// substituted for a truncation variable must have no term of truncation degree 0.
inline MultiSeries substitute(const MultiSeries& f, const std::map<std::string, MultiSeries>& assignment) {
  const auto& table = *f.table();
  std::vector<const MultiSeries*> repl(table.size(), nullptr);
  int trunc = f.trunc();
  for (const auto& [name, g] : assignment) {
    const std::size_t i = table.index(name);
    if (!same_table(g.table(), f.table())) throw std::invalid_argument("substituted series for '" + name + "' uses a different table");
    if (table[i].truncating) {
      for (const auto& [e, c] : g.terms())
        if (table.truncation_degree(e) == 0)
          throw std::invalid_argument("series substituted for '" + name + "' has a nonzero constant term");
    }
    repl[i] = &g;
    trunc = std::min(trunc, g.trunc());
  }

  // powers[i][k] = repl_i^k, built lazily.
  std::vector<std::vector<MultiSeries>> powers(table.size());
  auto power_of = [&](std::size_t i, int k) -> const MultiSeries& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(MultiSeries::constant(f.table(), 1, trunc));
    while (static_cast<int>(p.size()) <= k) p.push_back(p.back() * *repl[i]);
    return p[k];
  };

  MultiSeries r(f.table(), trunc);
  for (const auto& [e, c] : f.terms()) {
    Exponent rest = e;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (repl[i]) rest[i] = 0;
    MultiSeries term = MultiSeries::monomial(f.table(), rest, c, trunc);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
      if (repl[i] && e[i] > 0) term *= power_of(i, e[i]);
    r += term;
  }
  return r;
}

namespace detail {

inline void require_finite(const MultiSeries& s, const char* what) {
  if (s.trunc() == kNoTruncation) throw std::invalid_argument(std::string(what) + " needs a finite truncation order");
}

inline void require_positive_order(const MultiSeries& s, const char* what) {
  for (const auto& [e, c] : s.terms())
    if (s.table()->truncation_degree(e) == 0)
      throw std::invalid_argument(std::string(what) + " requires zero constant term in the truncation variables");
}

}  // namespace detail

/// log(1 + s) for s without constant term.
inline MultiSeries log1p(const MultiSeries& s) {
  detail::require_positive_order(s, "log1p");
  if (s.is_zero()) return s;
  detail::require_finite(s, "log1p");
  MultiSeries r(s.table(), s.trunc());
  MultiSeries p = s;
  for (int k = 1; k <= s.trunc() && !p.is_zero(); ++k) {
    r += p * frac(k % 2 ? 1 : -1, k);
    p *= s;
  }
  return r;
}

/// exp(s) - 1 for s without constant term.
inline MultiSeries expm1(const MultiSeries& s) {
  detail::require_positive_order(s, "expm1");
  if (s.is_zero()) return s;
  detail::require_finite(s, "expm1");
  MultiSeries r(s.table(), s.trunc());
  MultiSeries p = s;
  Rational fact = 1;
  for (int k = 1; k <= s.trunc() && !p.is_zero(); ++k) {
    fact *= k;
    r += p * Rational(1 / fact);
    p *= s;
  }
  return r;
}

/// 1/f for f = c + (terms of positive truncation degree), c a nonzero rational.
inline MultiSeries reciprocal(const MultiSeries& f) {
  const Rational c0 = f.constant_term();
  if (c0 == 0) throw std::domain_error("reciprocal of a series with zero constant term");
  MultiSeries x = f - MultiSeries::constant(f.table(), c0, f.trunc());
  detail::require_positive_order(x, "reciprocal");
  const Rational inv = 1 / c0;
  if (x.is_zero()) return MultiSeries::constant(f.table(), inv, f.trunc());
  detail::require_finite(f, "reciprocal");
  x *= Rational(-inv);
  MultiSeries r = MultiSeries::constant(f.table(), 1, f.trunc());
  MultiSeries p = r;
  for (int k = 1; k <= f.trunc(); ++k) {
    p *= x;
    if (p.is_zero()) break;
    r += p;
  }
  return r * inv;
}

/// Compositional inverse of f(t) = t + O(t^2) in the truncation variable `var`.
/// Coefficients may involve parameter (non-truncating) variables.
inline MultiSeries reversion(const MultiSeries& f, std::string_view var) {
  const auto& table = *f.table();
  const std::size_t v = table.index(var);
  if (!table[v].truncating) throw std::invalid_argument("reversion variable must be a truncation variable");
  detail::require_finite(f, "reversion");
  Exponent lin(table.size(), 0);
  lin[v] = 1;
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != v && table[i].truncating && e[i] != 0)
        throw std::invalid_argument("reversion expects a univariate series in '" + std::string(var) + "'");
    const int d = table.truncation_degree(e);
    if (d == 0) throw std::invalid_argument("reversion requires zero constant term");
    if (d == 1 && e != lin) throw std::invalid_argument("reversion requires linear coefficient 1");
  }
  if (f.coefficient(lin) != 1) throw std::invalid_argument("reversion requires linear coefficient 1");

  MultiSeries g = MultiSeries::variable(f.table(), var, f.trunc());
  for (int k = 2; k <= f.trunc(); ++k) {
    // f(g) = t + r_k t^k + O(t^{k+1}); correcting g by -r_k t^k kills r_k.
    MultiSeries fg = substitute(f.truncated(k), {{std::string(var), g.truncated(k)}});
    MultiSeries rk = coefficient_of(fg, {{std::string(var), k}});
    for (const auto& [e, c] : rk.terms()) {
      Exponent e2 = e;
      e2[v] = k;
      g.add_term(e2, -c);
    }
  }
  return g;
}

}  // namespace dpcob
