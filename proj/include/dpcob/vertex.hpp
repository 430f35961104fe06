#pragma once

// Degree-0 DT invariants of toric 3-folds by torus localization: a sum over
// plane partitions placed at the fixed points, each weighted by the Euler class
// of its virtual tangent character evaluated at a generic integer point.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dpcob/chern.hpp"
#include "dpcob/series.hpp"

namespace dpcob::vertex {

inline constexpr int kDefaultBound = 6;

/// Bumped whenever the localization convention changes; part of cache keys.
inline constexpr int kConventionVersion = 1;

using Box = std::array<int, 3>;

/// Finite order ideal in N^3.
class PlanePartition3D {
 public:
  PlanePartition3D() = default;

  /// Throws unless the boxes form an order ideal.
  explicit PlanePartition3D(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
    std::sort(boxes_.begin(), boxes_.end());
    if (std::adjacent_find(boxes_.begin(), boxes_.end()) != boxes_.end()) throw std::invalid_argument("repeated box");
    for (const auto& b : boxes_)
      for (int i = 0; i < 3; ++i) {
        if (b[i] < 0) throw std::invalid_argument("negative box coordinate");
        Box below = b;
        if (--below[i] >= 0 && !contains(below)) throw std::invalid_argument("boxes are not closed under decrease");
      }
  }

  const std::vector<Box>& boxes() const { return boxes_; }
  int size() const { return static_cast<int>(boxes_.size()); }
  bool contains(const Box& b) const { return std::binary_search(boxes_.begin(), boxes_.end(), b); }

  /// Boxes not in the partition whose addition keeps it an order ideal.
  std::vector<Box> addable() const {
    std::set<Box> out;
    auto ok = [&](const Box& b) {
      if (contains(b)) return false;
      for (int i = 0; i < 3; ++i) {
        Box below = b;
        if (--below[i] >= 0 && !contains(below)) return false;
      }
      return true;
    };
    if (ok({0, 0, 0})) out.insert({0, 0, 0});
    for (const auto& b : boxes_)
      for (int i = 0; i < 3; ++i) {
        Box up = b;
        ++up[i];
        if (ok(up)) out.insert(up);
      }
    return {out.begin(), out.end()};
  }

  PlanePartition3D with(const Box& b) const {
    auto v = boxes_;
    v.push_back(b);
    return PlanePartition3D(std::move(v));
  }

  /// Box coordinates reordered: new coordinate k is old coordinate perm[k].
  PlanePartition3D permuted(const std::array<int, 3>& perm) const {
    std::vector<Box> v;
    for (const auto& b : boxes_) v.push_back({b[perm[0]], b[perm[1]], b[perm[2]]});
    return PlanePartition3D(std::move(v));
  }

  friend bool operator==(const PlanePartition3D&, const PlanePartition3D&) = default;
  friend auto operator<=>(const PlanePartition3D&, const PlanePartition3D&) = default;

 private:
  std::vector<Box> boxes_;
};

/// All plane partitions of n, by growing smaller ones one box at a time.
inline std::vector<PlanePartition3D> enumerate(int n, int bound = kDefaultBound) {
  if (n < 0) throw std::invalid_argument("negative size");
  if (n > bound) throw std::invalid_argument("size " + std::to_string(n) + " exceeds the vertex bound " + std::to_string(bound));
  std::set<PlanePartition3D> level{PlanePartition3D{}};
  for (int k = 0; k < n; ++k) {
    std::set<PlanePartition3D> next;
    for (const auto& p : level)
      for (const auto& b : p.addable()) next.insert(p.with(b));
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

using Character = BasicSeries<Integer>;

inline const TablePtr& character_table() {
  static const TablePtr t = make_table({{"t1", 1, false}, {"t2", 1, false}, {"t3", 1, false}});
  return t;
}

/// V = F - conj(F)/(t1 t2 t3) + F conj(F) (1-t1)(1-t2)(1-t3)/(t1 t2 t3), F = sum over boxes of t^box.
inline Character vertex_character(const PlanePartition3D& pi) {
  const auto& table = character_table();
  Character f(table), fbar(table);
  for (const auto& b : pi.boxes()) {
    f.add_term({b[0], b[1], b[2]}, 1);
    fbar.add_term({-b[0], -b[1], -b[2]}, 1);
  }
  const Character one = Character::constant(table, 1);
  const Character inv = Character::monomial(table, {-1, -1, -1}, 1);
  Character euler = one;
  for (const char* t : {"t1", "t2", "t3"}) euler *= one - Character::variable(table, t);
  Character v = f - fbar * inv + f * fbar * euler * inv;
  if (v.coefficient({0, 0, 0}) != 0) throw std::logic_error("vertex character has a trivial summand");
  Integer rank = 0;
  for (const auto& [e, c] : v.terms()) rank += c;
  if (rank != 0) throw std::logic_error("vertex character has nonzero rank");
  return v;
}

/// Characters of the coordinate functions at a fixed point, as integer linear
/// forms in the global torus parameters s1, s2, s3.
struct ToricChart {
  std::array<std::array<long, 3>, 3> weights{};
};

namespace detail {

inline bool collect_factors(const chern::Space& x, std::vector<int>& out) {
  using K = chern::Space::Kind;
  switch (x.kind()) {
    case K::point:
      return true;
    case K::projective:
      if (x.n() > 0) out.push_back(x.n());
      return true;
    case K::product:
      return collect_factors(x.children()[0], out) && collect_factors(x.children()[1], out);
    default:
      return false;
  }
}

inline long det3(const std::array<std::array<long, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace detail

/// Fixed-point charts of a 3-dimensional product of projective spaces. Each P^n
/// factor uses torus weights (0, s_{o+1}, ..., s_{o+n}); at the fixed point i the
/// coordinate x_j/x_i has weight lambda_j - lambda_i.
inline std::vector<ToricChart> charts(const chern::Space& x) {
  std::vector<int> factors;
  if (!detail::collect_factors(x, factors) || x.dim() != 3)
    throw std::invalid_argument("vertex oracle needs a 3-dimensional product of projective spaces, got " + x.to_string());
  // Per factor: for each fixed point, the list of weight vectors.
  std::vector<std::vector<std::vector<std::array<long, 3>>>> per_factor;
  int offset = 0;
  for (int n : factors) {
    auto lambda = [&](int j) {
      std::array<long, 3> w{0, 0, 0};
      if (j > 0) w[offset + j - 1] = 1;
      return w;
    };
    std::vector<std::vector<std::array<long, 3>>> points;
    for (int i = 0; i <= n; ++i) {
      std::vector<std::array<long, 3>> dirs;
      for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        auto a = lambda(j), b = lambda(i);
        dirs.push_back({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
      }
      points.push_back(std::move(dirs));
    }
    per_factor.push_back(std::move(points));
    offset += n;
  }
  std::vector<ToricChart> out;
  std::vector<std::size_t> idx(per_factor.size(), 0);
  while (true) {
    ToricChart c;
    std::size_t k = 0;
    for (std::size_t f = 0; f < per_factor.size(); ++f)
      for (const auto& w : per_factor[f][idx[f]]) c.weights[k++] = w;
    if (detail::det3(c.weights) == 0) throw std::logic_error("degenerate fixed point");
    out.push_back(c);
    std::size_t f = 0;
    while (f < idx.size() && ++idx[f] == per_factor[f].size()) idx[f++] = 0;
    if (f == idx.size()) break;
  }
  return out;
}

/// A specialization with a vanishing weight; the caller should draw again.
class ZeroWeight : public std::runtime_error {
 public:
  ZeroWeight() : std::runtime_error("zero weight at this specialization") {}
};

/// Euler class of -V at the chart, evaluated at s: product of w^{-m} over terms m t^a.
inline Rational contribution(const Character& v, const ToricChart& chart, const std::array<long, 3>& s) {
  long coord[3];
  for (int k = 0; k < 3; ++k) coord[k] = chart.weights[k][0] * s[0] + chart.weights[k][1] * s[1] + chart.weights[k][2] * s[2];
  Integer num = 1, den = 1;
  for (const auto& [e, m] : v.terms()) {
    const Integer w = Integer(e[0]) * coord[0] + Integer(e[1]) * coord[1] + Integer(e[2]) * coord[2];
    if (w == 0) throw ZeroWeight();
    Integer p;
    const unsigned long mult = Integer(abs(m)).get_ui();
    mpz_pow_ui(p.get_mpz_t(), w.get_mpz_t(), mult);
    if (m < 0)
      num *= p;
    else
      den *= p;
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Localization sum at a fixed specialization s; may throw ZeroWeight.
inline Rational n_dt_at(const chern::Space& x, int n, const std::array<long, 3>& s, unsigned jobs = 1, int bound = kDefaultBound) {
  if (n > bound) throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the vertex bound " + std::to_string(bound));
  if (n < 0) throw std::invalid_argument("negative n");
  const auto cs = charts(x);
  std::vector<std::vector<Character>> chars(n + 1);
  for (int k = 0; k <= n; ++k)
    for (const auto& pi : enumerate(k, bound)) chars[k].push_back(vertex_character(pi));

  // Per chart: sum over partitions of each size.
  std::vector<std::vector<Rational>> series(cs.size(), std::vector<Rational>(n + 1, Rational(0)));
  std::vector<std::exception_ptr> errors(cs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c; (c = next++) < cs.size();) {
      try {
        for (int k = 0; k <= n; ++k)
          for (const auto& v : chars[k]) series[c][k] += contribution(v, cs[c], s);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Rational> total(n + 1, Rational(0));
  total[0] = 1;
  for (const auto& w : series) {
    std::vector<Rational> next_total(n + 1, Rational(0));
    for (int i = 0; i <= n; ++i)
      if (total[i] != 0)
        for (int j = 0; i + j <= n; ++j) next_total[i + j] += total[i] * w[j];
    total = std::move(next_total);
  }
  return total[n];
}

/// Next candidate specialization, coordinates in [1, 1000].
inline std::array<long, 3> specialization(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(1, 1000);
  return {dist(rng), dist(rng), dist(rng)};
}

/// N_{n,0} of x: the localization sum at a generic point drawn from `seed`,
/// redrawn on zero weights, checked to be an integer.
inline Integer n_dt(const chern::Space& x, int n, std::uint64_t seed = 0, unsigned jobs = 1, int bound = kDefaultBound) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto s = specialization(rng);
    try {
      const Rational r = n_dt_at(x, n, s, jobs, bound);
      if (!is_integer(r)) throw std::logic_error("non-integral localization sum " + r.get_str() + " for " + x.to_string());
      return r.get_num();
    } catch (const ZeroWeight&) {
    }
  }
  throw std::runtime_error("no generic specialization found");
}

}  // namespace dpcob::vertex
