#pragma once

// The acceptance criteria AC1..AC8 as runnable checks, shared by the acceptance
// test binary and `dpcob verify-all`.

#include <chrono>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dpcob/chern.hpp"
#include "dpcob/cobordism.hpp"
#include "dpcob/dt.hpp"
#include "dpcob/fgl.hpp"
#include "dpcob/parse.hpp"
#include "dpcob/vertex.hpp"

namespace dpcob::acceptance {

struct Result {
  std::string id;
  std::string title;
  bool ok = false;       // all checks held
  double seconds = 0;
  double limit = 0;      // 0 for no time limit
  std::string detail;
  bool pass() const { return ok && (limit == 0 || seconds < limit); }
};

namespace detail {

class Checks {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary(const std::string& on_success) const {
    if (failures_.empty()) return on_success;
    std::string s = "failed: ";
    for (std::size_t i = 0; i < failures_.size(); ++i) s += (i ? "; " : "") + failures_[i];
    return s;
  }

 private:
  std::vector<std::string> failures_;
};

inline chern::Space X(const char* s) { return chern::parse_space(s); }

inline std::string str(const Rational& r) { return r.get_str(); }

}  // namespace detail

inline Result ac1_axioms() {
  detail::Checks c;
  const auto law = fgl::universal_fgl(6);
  const auto ax = fgl::check_axioms(law);
  c.expect(ax.identity, "identity");
  c.expect(ax.commutativity, "commutativity");
  c.expect(ax.associativity, "associativity");
  const MultiSeries one = MultiSeries::constant(law.table(), 1);
  c.expect(law.coefficient(0, 1) == one, "a01 = 1");
  for (int j = 2; j <= 6; ++j) c.expect(law.coefficient(0, j).is_zero(), "a0" + std::to_string(j) + " = 0");
  for (int d = 1; d <= 6; ++d)
    for (int i = 0; i <= d; ++i) c.expect(law.coefficient(i, d - i) == law.coefficient(d - i, i), "symmetry at " + std::to_string(i) + "," + std::to_string(d - i));
  return {"AC1", "formal group law axioms, degree 6", c.ok(), 0, 5, c.summary("identity, commutativity, associativity; a01=1, a0j=0, a_ij=a_ji")};
}

inline Result ac2_dual_oracle() {
  detail::Checks c;
  const auto milnor = cobordism::milnor_fgl_coefficients(4);
  const auto law = cobordism::universal_fgl_classes(4);
  c.expect(milnor.size() == law.size(), "same index set");
  for (const auto& [ij, v] : milnor) {
    auto it = law.find(ij);
    c.expect(it != law.end() && it->second == v, "a(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")");
  }
  const auto a11 = milnor.at({1, 1});
  c.expect(a11 == cobordism::CobordismClass::of({1}, -1), "a11 = -[P1]");
  return {"AC2", "Milnor hypersurfaces vs universal law, i+j <= 4", c.ok(), 0, 10,
          c.summary(std::to_string(milnor.size()) + " coefficients equal; a11 = " + a11.to_string())};
}

inline Result ac3_difference() {
  detail::Checks c;
  const auto law = fgl::universal_fgl(6);
  const auto rep = fgl::check_difference_identities(law);
  c.expect(rep.inverse, "F(u, chi(u)) = 0");
  c.expect(rep.translation, "F-(F(u,w), F(v,w)) = F-(u,v)");
  c.expect(rep.distributive, "F(F-(u1,v1), F-(u2,v2)) = F-(F(u1,u2), F(v1,v2))");
  const MultiSeries fm = fgl::difference(law);
  const auto& t = law.table();
  c.expect(fm.truncated(1) == (MultiSeries::variable(t, "u") - MultiSeries::variable(t, "v")).truncated(1), "F- = u - v mod (u,v)^2");
  c.expect(fgl::coefficient_table(fm, 1).count({0, 0}) == 0, "b00 = 0");
  c.expect(coefficient_of(fm, {{"u", 1}, {"v", 0}}) == MultiSeries::constant(t, 1), "b10 = 1");
  c.expect(coefficient_of(fm, {{"u", 0}, {"v", 1}}) == MultiSeries::constant(t, -1), "b01 = -1");
  return {"AC3", "difference series identities, degree 6", c.ok(), 0, 5, c.summary("chi, F- mod (u,v)^2, b00/b10/b01, both identities")};
}

inline Result ac4_chern_goldens() {
  detail::Checks c;
  auto triple = [](long a, long b, long d) { return chern::ChernNumbers{{{1, 1, 1}, a}, {{2, 1}, b}, {{3}, d}}; };
  struct Row {
    const char* first;
    const char* second;
    chern::ChernNumbers want;
  };
  const Row rows[] = {{"P3", "PB(Point; 0, 0, 0, 0)", triple(64, 24, 4)},
                      {"P2*P1", "P1*P2", triple(54, 24, 6)},
                      {"P1*P1*P1", "P1*(P1*P1)", triple(48, 24, 8)},
                      {"Bl(P3)", "Bl(PB(Point; 0, 0, 0, 0))", triple(56, 24, 6)},
                      {"PB(P2; 0, h)", "PB(P2; h, 0)", triple(56, 24, 6)}};
  for (const auto& r : rows) {
    c.expect(chern::chern_numbers(detail::X(r.first)) == r.want, r.first);
    c.expect(chern::chern_numbers(detail::X(r.second)) == r.want, r.second);
  }
  return {"AC4", "Chern-number golden table, two presentations each", c.ok(), 0, 0, c.summary("5 spaces x 2 presentations exact")};
}

inline Result ac5_blowup_relation() {
  detail::Checks c;
  for (const char* s : {"P3", "P2*P1", "P1*P1*P1"}) c.expect(cobordism::verify_relation(cobordism::blowup_relation(detail::X(s))).is_zero(), s);
  const Rational d3 = linalg::determinant(cobordism::chern_matrix(3));
  const Rational d4 = linalg::determinant(cobordism::chern_matrix(4));
  c.expect(d3 != 0, "chern_matrix(3) invertible");
  c.expect(d4 != 0, "chern_matrix(4) invertible");
  return {"AC5", "blow-up double point relation", c.ok(), 0, 5,
          c.summary("residual 0 on P3, P2*P1, P1*P1*P1; det3 = " + detail::str(d3) + ", det4 = " + detail::str(d4))};
}

inline Result ac6_conjecture1(unsigned jobs = 1) {
  detail::Checks c;
  const std::pair<const char*, long> exps[] = {{"P3", -20}, {"P1*P1*P1", -16}, {"P2*P1", -18}};
  std::ostringstream detail_text;
  for (const auto& [s, e] : exps) {
    const auto x = detail::X(s);
    const Rational n = chern::dt_exponent(x);
    c.expect(n == e, std::string("dt_exponent(") + s + ") = " + detail::str(n));
    const auto z = dt::z_absolute(x, 3);
    detail_text << s << ":";
    for (int k = 0; k <= 3; ++k) {
      Integer first;
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        Integer v;
        try {
          v = vertex::n_dt(x, k, seed, jobs);
        } catch (const std::exception& ex) {
          c.expect(false, std::string(s) + " n=" + std::to_string(k) + ": " + ex.what());
          continue;
        }
        if (seed == 1) first = v;
        c.expect(v == first, std::string(s) + " n=" + std::to_string(k) + " seed-dependent");
        c.expect(Rational(v) == dt::coefficient(z, k), std::string(s) + " n=" + std::to_string(k) + " vertex " + v.get_str() + " vs " + detail::str(dt::coefficient(z, k)));
      }
      detail_text << " " << first.get_str();
    }
    detail_text << ";";
  }
  return {"AC6", "degree-0 DT: exponents and vertex vs M(-q)^e, n <= 3", c.ok(), 0, 120, c.summary(detail_text.str() + " 3 seeds each")};
}

inline Result ac7_degeneration() {
  detail::Checks c;
  const auto p3 = detail::X("P3");
  const Rational rel = chern::log_dt_exponent(p3, chern::DivisorClass::generator("h1"));
  c.expect(rel == -8, "log_dt_exponent(P3, h) = " + detail::str(rel));
  const auto r = dt::check_degeneration(p3, chern::DivisorClass::generator("h1"));
  c.expect(r.bubble == -12, "n(P/S-) = " + detail::str(r.bubble));
  c.expect(r.residual() == 0, "degeneration residual " + detail::str(r.residual()));
  for (const char* s : {"P3", "P2*P1", "P1*P1*P1"}) c.expect(dt::check_dp_multiplicativity(cobordism::blowup_relation(detail::X(s))) == 0, s);
  return {"AC7", "log DT exponent and degeneration", c.ok(), 0, 5,
          c.summary("-8 - (-20) + (-12) = 0; double point exponent residual 0 on blow-up data")};
}

inline Result ac8_macmahon() {
  detail::Checks c;
  const auto m = dt::coefficients(dt::macmahon(5));
  const std::vector<Rational> want{1, 1, 3, 6, 13, 24};
  c.expect(m == want, "MacMahon coefficients");
  for (int n = 0; n <= 5; ++n) c.expect(Rational(static_cast<long>(vertex::enumerate(n).size())) == m[n], "enumerate(" + std::to_string(n) + ")");
  return {"AC8", "MacMahon series vs plane partition enumeration, n <= 5", c.ok(), 0, 0, c.summary("1, 1, 3, 6, 13, 24 from both")};
}

/// Runs one check, timing it; exceptions become failures.
inline Result timed(const std::string& id, const std::function<Result()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = f();
  } catch (const std::exception& e) {
    r.id = id;
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<Result> run_all(unsigned jobs = 1) {
  return {timed("AC1", ac1_axioms),         timed("AC2", ac2_dual_oracle),  timed("AC3", ac3_difference),
          timed("AC4", ac4_chern_goldens),  timed("AC5", ac5_blowup_relation),
          timed("AC6", [jobs] { return ac6_conjecture1(jobs); }), timed("AC7", ac7_degeneration), timed("AC8", ac8_macmahon)};
}

}  // namespace dpcob::acceptance
