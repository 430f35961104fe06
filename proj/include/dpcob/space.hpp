#pragma once

// Symbolic spaces and their cohomology presentations.
//
// A Space is a constructor tree: points, projective spaces, products,
// projective bundles of sums of line bundles, hypersurfaces, and blow-ups of
// 3-folds at a point. Its rational cohomology is presented as
//   Q[h_i, xi_j, e_k] / (rewrite rules)
// with generator names assigned left to right: h1, h2, ... for hyperplane
// classes, xi1, xi2, ... for bundle classes, e1, ... for exceptional divisors.
//
// Bundle convention: PB(B; l_1, ..., l_r) has Grothendieck relation
// prod_j (xi + l_j) = 0, relative tangent Chern class prod_j (1 + xi + l_j), and
// fiber integral of xi^{r-1} equal to 1.
//
// Hypersurfaces never get an intrinsic presentation: classes live in the
// ambient ring and integration multiplies by the divisor class first.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpcob/series.hpp"

namespace dpcob::chern {

/// Degree-1 class as a linear combination of generator names.
struct DivisorClass {
  std::map<std::string, Rational> coeffs;

  DivisorClass() = default;
  DivisorClass(std::initializer_list<std::pair<const std::string, Rational>> init) : coeffs(init) { prune(); }
  explicit DivisorClass(std::map<std::string, Rational> c) : coeffs(std::move(c)) { prune(); }

  static DivisorClass generator(const std::string& name, Rational c = 1) { return DivisorClass({{name, std::move(c)}}); }

  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const DivisorClass&) const = default;

  DivisorClass& operator+=(const DivisorClass& o) {
    for (const auto& [n, c] : o.coeffs) coeffs[n] += c;
    prune();
    return *this;
  }
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator*(const Rational& k, DivisorClass a) {
    for (auto& [n, c] : a.coeffs) c *= k;
    a.prune();
    return a;
  }
  friend DivisorClass operator-(DivisorClass a) { return Rational(-1) * std::move(a); }

  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (const auto& [n, c] : coeffs) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      if (mag != 1) s += dpcob::to_string(mag) + "*";
      s += n;
    }
    return s;
  }

 private:
  void prune() { std::erase_if(coeffs, [](const auto& t) { return t.second == 0; }); }
};

struct Rule {
  Exponent lead;
  MultiSeries replacement;  // homogeneous of the same degree as lead
};

class Presentation {
 public:
  TablePtr table;
  int dim = 0;          // dimension of the space
  int ambient_dim = 0;  // dimension of the space whose ring is presented
  std::vector<Rule> rules;
  Exponent top;            // integration monomial, integral 1 over the ambient
  MultiSeries multiplier;  // product of hypersurface classes
  MultiSeries tangent;     // total Chern class of the tangent bundle, reduced

  MultiSeries one() const { return MultiSeries::constant(table, 1, ambient_dim); }

  MultiSeries generator(const std::string& name) const { return MultiSeries::variable(table, name, ambient_dim); }

  MultiSeries divisor(const DivisorClass& d) const {
    MultiSeries s(table, ambient_dim);
    for (const auto& [name, c] : d.coeffs) {
      if (!table->find(name)) throw std::invalid_argument("unknown cohomology generator '" + name + "'");
      s += generator(name) * c;
    }
    return s;
  }

  /// Normal form modulo the rewrite rules.
  MultiSeries reduce(const MultiSeries& a) const {
    MultiSeries out(table, ambient_dim);
    std::vector<std::pair<Exponent, Rational>> work(a.terms().begin(), a.terms().end());
    while (!work.empty()) {
      auto [e, c] = std::move(work.back());
      work.pop_back();
      if (total_degree(e) > ambient_dim) continue;
      const Rule* hit = nullptr;
      for (const auto& r : rules)
        if (divides(r.lead, e)) {
          hit = &r;
          break;
        }
      if (!hit) {
        out.add_term(e, c);
        continue;
      }
      for (const auto& [e2, c2] : hit->replacement.terms()) {
        Exponent next = e;
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += e2[i] - hit->lead[i];
        work.emplace_back(std::move(next), c * c2);
      }
    }
    return out;
  }

  MultiSeries mul(const MultiSeries& a, const MultiSeries& b) const { return reduce(a * b); }

  /// Integral over the space of a class of degree dim.
  Rational integrate(const MultiSeries& a) const {
    const MultiSeries nf = reduce(a);
    for (const auto& [e, c] : nf.terms())
      if (total_degree(e) != dim)
        throw std::invalid_argument("integrand has degree " + std::to_string(total_degree(e)) + ", expected " + std::to_string(dim));
    const MultiSeries pushed = reduce(nf * multiplier);
    Rational result = 0;
    for (const auto& [e, c] : pushed.terms()) {
      if (e != top) throw std::logic_error("top-degree normal form is not a multiple of the integration monomial");
      result = c;
    }
    return result;
  }

  /// Standard monomials (not divisible by any rule lead), grouped by degree.
  std::vector<std::vector<Exponent>> basis() const {
    std::vector<std::vector<Exponent>> out(ambient_dim + 1);
    Exponent e(table->size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left, int degree) -> void {
      if (i == e.size()) {
        if (left == 0 && std::none_of(rules.begin(), rules.end(), [&](const Rule& r) { return divides(r.lead, e); }))
          out[degree].push_back(e);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        e[i] = k;
        self(self, i + 1, left - k, degree);
      }
      e[i] = 0;
    };
    for (int d = 0; d <= ambient_dim; ++d) rec(rec, 0, d, d);
    return out;
  }

  /// Resolves a user-facing generator name (aliases h, a, b, c, d, xi, e) to a canonical one.
  std::string resolve(const std::string& name) const {
    if (table->find(name)) return name;
    auto count = [&](const std::string& prefix) {
      int n = 0;
      for (const auto& v : table->variables())
        if (split_name(v.name).first == prefix) ++n;
      return n;
    };
    if ((name == "h" || name == "xi" || name == "e") && count(name) == 1) return name + "1";
    if (name == "x" && count("xi") == 1) return "xi1";
    if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'd') {
      const std::string canon = "h" + std::to_string(name[0] - 'a' + 1);
      if (table->find(canon)) return canon;
    }
    throw std::invalid_argument("unknown cohomology generator '" + name + "'");
  }

  static bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }

  static std::pair<std::string, int> split_name(const std::string& n) {
    std::size_t k = n.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1]))) --k;
    return {n.substr(0, k), k < n.size() ? std::stoi(n.substr(k)) : 0};
  }
};

class Space {
 public:
  enum class Kind { point, projective, product, bundle, hypersurface, blowup };

  static Space point() { return Space(make(Kind::point, 0)); }

  static Space projective(int n) {
    if (n < 0) throw std::invalid_argument("projective space of negative dimension");
    auto node = make(Kind::projective, n);
    node->n = n;
    return Space(node);
  }

  static Space product(const Space& a, const Space& b) {
    auto node = make(Kind::product, a.dim() + b.dim());
    node->children = {a, b};
    return Space(node);
  }

  /// PB(base; l_1, ..., l_r): projective bundle of a sum of r line bundles with the given classes.
  static Space bundle(const Space& base, std::vector<DivisorClass> lines) {
    if (lines.empty()) throw std::invalid_argument("projective bundle needs at least one line class");
    auto node = make(Kind::bundle, base.dim() + static_cast<int>(lines.size()) - 1);
    node->children = {base};
    node->classes = std::move(lines);
    const auto& p = base.presentation();
    for (const auto& l : node->classes) (void)p.divisor(l);
    return Space(node);
  }

  static Space hypersurface(const Space& ambient, const DivisorClass& d) {
    if (ambient.dim() < 1) throw std::invalid_argument("hypersurface in a space of dimension 0");
    auto node = make(Kind::hypersurface, ambient.dim() - 1);
    node->children = {ambient};
    node->classes = {d};
    (void)ambient.presentation().divisor(d);
    return Space(node);
  }

  /// Blow-up of a 3-fold at a point.
  static Space blowup(const Space& x) {
    if (x.dim() != 3) throw std::invalid_argument("point blow-up is only supported for 3-folds");
    if (x.presentation().ambient_dim != x.dim())
      throw std::invalid_argument("point blow-up of a hypersurface is not supported");
    auto node = make(Kind::blowup, 3);
    node->children = {x};
    return Space(node);
  }

  Kind kind() const { return node_->kind; }
  int dim() const { return node_->dim; }
  int n() const { return node_->n; }
  const std::vector<Space>& children() const { return node_->children; }
  const std::vector<DivisorClass>& classes() const { return node_->classes; }

  /// Cohomology presentation, built once and shared.
  const Presentation& presentation() const {
    std::call_once(node_->once, [this] { node_->pres = std::make_shared<const Presentation>(build(*this)); });
    return *node_->pres;
  }

  /// Canonical expression in the space grammar.
  std::string to_string() const {
    switch (kind()) {
      case Kind::point:
        return "Point";
      case Kind::projective:
        return "P" + std::to_string(n());
      case Kind::product: {
        const auto& r = children()[1];
        const std::string rs = r.kind() == Kind::product ? "(" + r.to_string() + ")" : r.to_string();
        return children()[0].to_string() + "*" + rs;
      }
      case Kind::bundle: {
        std::string s = "PB(" + children()[0].to_string() + ";";
        for (std::size_t i = 0; i < classes().size(); ++i) s += (i ? ", " : " ") + classes()[i].to_string();
        return s + ")";
      }
      case Kind::hypersurface:
        return "Hyp(" + children()[0].to_string() + "; " + classes()[0].to_string() + ")";
      case Kind::blowup:
        return "Bl(" + children()[0].to_string() + ")";
    }
    return {};
  }

  friend bool operator==(const Space& a, const Space& b) { return a.to_string() == b.to_string(); }

 private:
  struct Node {
    Kind kind = Kind::point;
    int dim = 0;
    int n = 0;
    std::vector<Space> children;
    std::vector<DivisorClass> classes;
    mutable std::once_flag once;
    mutable std::shared_ptr<const Presentation> pres;
  };

  explicit Space(std::shared_ptr<Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(Kind k, int dim) {
    auto node = std::make_shared<Node>();
    node->kind = k;
    node->dim = dim;
    return node;
  }

  static int count_prefix(const TablePtr& t, const std::string& prefix) {
    int n = 0;
    for (const auto& v : t->variables())
      if (Presentation::split_name(v.name).first == prefix) ++n;
    return n;
  }

  /// Copies p onto a table with extra generators appended and optional renaming.
  static Presentation embed(const Presentation& p, const TablePtr& table, const std::map<std::string, std::string>& rename) {
    Presentation out;
    out.table = table;
    out.dim = p.dim;
    out.ambient_dim = p.ambient_dim;
    for (const auto& r : p.rules) {
      const MultiSeries lead = rebase(MultiSeries::monomial(p.table, r.lead, 1), table, rename, kNoTruncation);
      out.rules.push_back({lead.terms().begin()->first, rebase(r.replacement, table, rename, kNoTruncation)});
    }
    out.top = rebase(MultiSeries::monomial(p.table, p.top, 1), table, rename, kNoTruncation).terms().begin()->first;
    out.multiplier = rebase(p.multiplier, table, rename, kNoTruncation);
    out.tangent = rebase(p.tangent, table, rename, kNoTruncation);
    return out;
  }

  static void set_truncation(Presentation& p) {
    p.multiplier = p.multiplier.truncated(p.ambient_dim);
    p.tangent = p.reduce(p.tangent.truncated(p.ambient_dim));
    for (auto& r : p.rules) r.replacement = r.replacement.truncated(p.ambient_dim);
  }

  static std::vector<VariableTable::Variable> vars_of(const TablePtr& t) { return t->variables(); }

  static Presentation build(const Space& s) {
    switch (s.kind()) {
      case Kind::point: {
        Presentation p;
        p.table = make_table({});
        p.top = {};
        p.multiplier = MultiSeries::constant(p.table, 1, 0);
        p.tangent = MultiSeries::constant(p.table, 1, 0);
        return p;
      }
      case Kind::projective: {
        Presentation p;
        p.table = make_table({{"h1", 1, true}});
        p.dim = p.ambient_dim = s.n();
        p.rules.push_back({{s.n() + 1}, MultiSeries(p.table)});
        p.top = {s.n()};
        p.multiplier = MultiSeries::constant(p.table, 1);
        p.tangent = power(MultiSeries::constant(p.table, 1) + MultiSeries::variable(p.table, "h1"), s.n() + 1);
        set_truncation(p);
        return p;
      }
      case Kind::product: {
        const Presentation& a = s.children()[0].presentation();
        const Presentation& b = s.children()[1].presentation();
        std::map<std::string, int> offset;
        for (const auto& prefix : {"h", "xi", "e"}) offset[prefix] = count_prefix(a.table, prefix);
        std::map<std::string, std::string> rename;
        auto vars = vars_of(a.table);
        for (const auto& v : b.table->variables()) {
          auto [prefix, idx] = Presentation::split_name(v.name);
          const std::string renamed = prefix + std::to_string(idx + offset[prefix]);
          rename[v.name] = renamed;
          vars.push_back({renamed, 1, true});
        }
        auto table = make_table(vars);
        Presentation pa = embed(a, table, {});
        Presentation pb = embed(b, table, rename);
        Presentation p;
        p.table = table;
        p.dim = a.dim + b.dim;
        p.ambient_dim = a.ambient_dim + b.ambient_dim;
        p.rules = pa.rules;
        p.rules.insert(p.rules.end(), pb.rules.begin(), pb.rules.end());
        p.top = pa.top;
        for (std::size_t i = 0; i < p.top.size(); ++i) p.top[i] += pb.top[i];
        p.multiplier = pa.multiplier * pb.multiplier;
        p.tangent = pa.tangent * pb.tangent;
        set_truncation(p);
        return p;
      }
      case Kind::bundle: {
        const Presentation& base = s.children()[0].presentation();
        const std::string xi = "xi" + std::to_string(count_prefix(base.table, "xi") + 1);
        auto vars = vars_of(base.table);
        vars.push_back({xi, 1, true});
        auto table = make_table(vars);
        Presentation p = embed(base, table, {});
        const int r = static_cast<int>(s.classes().size());
        p.dim = base.dim + r - 1;
        p.ambient_dim = base.ambient_dim + r - 1;
        const MultiSeries one = MultiSeries::constant(table, 1);
        const MultiSeries x = MultiSeries::variable(table, xi);
        MultiSeries relation = one;  // prod_j (xi + l_j)
        MultiSeries rel_tangent = one;
        for (const auto& l : s.classes()) {
          const MultiSeries lc = rebase(base.divisor(l), table, {}, kNoTruncation);
          relation *= x + lc;
          rel_tangent *= one + x + lc;
        }
        Exponent lead(table->size(), 0);
        lead.back() = r;
        p.rules.push_back({lead, -(relation - MultiSeries::monomial(table, lead, 1))});
        p.top.back() = r - 1;
        p.tangent = p.tangent * rel_tangent;
        set_truncation(p);
        return p;
      }
      case Kind::hypersurface: {
        const Presentation& amb = s.children()[0].presentation();
        Presentation p = amb;
        p.dim = amb.dim - 1;
        const MultiSeries d = amb.divisor(s.classes()[0]);
        p.multiplier = amb.reduce(amb.multiplier * d);
        p.tangent = amb.reduce(amb.tangent * reciprocal(amb.one() + d));
        return p;
      }
      case Kind::blowup: {
        const Presentation& x = s.children()[0].presentation();
        const std::string e = "e" + std::to_string(count_prefix(x.table, "e") + 1);
        auto vars = vars_of(x.table);
        vars.push_back({e, 1, true});
        auto table = make_table(vars);
        Presentation p = embed(x, table, {});
        const std::size_t ie = table->size() - 1;
        for (std::size_t g = 0; g < ie; ++g) {
          Exponent lead(table->size(), 0);
          lead[g] = 1;
          lead[ie] = 1;
          p.rules.push_back({lead, MultiSeries(table)});
        }
        Exponent cube(table->size(), 0);
        cube[ie] = 3;
        p.rules.push_back({cube, MultiSeries::monomial(table, p.top, 1)});
        // c(Bl) = pi^* c(X) + (1 - E)^3 (1 + E) - 1 = pi^* c(X) - 2E + 2E^3.
        const MultiSeries E = MultiSeries::variable(table, e);
        p.tangent = p.tangent - E * 2 + power(E, 3) * 2;
        set_truncation(p);
        return p;
      }
    }
    throw std::logic_error("unknown space kind");
  }

  std::shared_ptr<Node> node_;
};

}  // namespace dpcob::chern
