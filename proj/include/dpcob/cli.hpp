#pragma once

// The `dpcob` command line: argument parsing, dispatch and rendering.
// Exit codes: 0 success, 1 verification failure or computation error, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dpcob/acceptance.hpp"
#include "dpcob/cache.hpp"
#include "dpcob/chern.hpp"
#include "dpcob/cobordism.hpp"
#include "dpcob/dt.hpp"
#include "dpcob/fgl.hpp"
#include "dpcob/json.hpp"
#include "dpcob/parse.hpp"
#include "dpcob/vertex.hpp"

namespace dpcob::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

struct Config {
  int degree = 6;       // formal group law truncation D
  int order = 6;        // q-series order N
  int n_bound = 3;      // vertex size bound
  int dim_bound = chern::kDefaultDimensionBound;
  std::string format = "text";
  std::string cache;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

/// Usage errors: bad arguments, bounds exceeded, unparsable expressions.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

using json::Json;

inline void require_bound(int value, int bound, const std::string& what, const std::string& flag) {
  if (value < 0) throw UsageError(what + " must be non-negative");
  if (value > bound) throw UsageError(what + " " + std::to_string(value) + " exceeds " + flag + " " + std::to_string(bound));
}

inline std::string chern_label(const Partition& p) {
  std::map<int, int> counts;
  for (int k : p) ++counts[k];
  std::string s;
  for (const auto& [k, n] : counts) {
    if (!s.empty()) s += "*";
    s += "c" + std::to_string(k);
    if (n > 1) s += "^" + std::to_string(n);
  }
  return s.empty() ? "1" : s;
}

inline fgl::FormalGroupLaw make_law(const std::string& name, int degree) {
  if (degree < 1) throw UsageError("--degree must be at least 1");
  if (name == "universal") return fgl::universal_fgl(degree);
  if (name == "additive") return fgl::additive_fgl(degree);
  if (name == "multiplicative") return fgl::multiplicative_fgl(degree);
  throw UsageError("unknown law '" + name + "' (universal, additive, multiplicative)");
}

inline Json coefficient_rows(const MultiSeries& s, int degree, std::ostream* text, const char* symbol) {
  Json rows = Json::array();
  for (int d = 0; d <= degree; ++d)
    for (int i = 0; i <= d; ++i) {
      const MultiSeries c = coefficient_of(s, {{"u", i}, {"v", d - i}});
      if (text) *text << symbol << "(" << i << "," << d - i << ") = " << c.to_string() << "\n";
      rows.push_back({{"i", i}, {"j", d - i}, {"polynomial", json::encode(c)}});
    }
  return rows;
}

class Runner {
 public:
  Runner(Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  bool json() const { return cfg_.format == "json"; }

  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  chern::Space space(const std::string& text) const { return chern::parse_space(text); }

  std::optional<chern::DivisorClass> divisor(const std::string& text, const chern::Space& x) const {
    if (text.empty()) return std::nullopt;
    return chern::parse_divisor(text, x);
  }

  int fgl_coeffs(const std::string& law_name) {
    const auto law = make_law(law_name, cfg_.degree);
    std::ostringstream text;
    Json rows = coefficient_rows(law.F, cfg_.degree, json() ? nullptr : &text, "a");
    if (json())
      emit({{"command", "fgl coeffs"}, {"law", law_name}, {"degree", cfg_.degree}, {"coefficients", rows}});
    else
      out_ << text.str();
    return kOk;
  }

  int fgl_bcoeffs(const std::string& law_name) {
    const auto law = make_law(law_name, cfg_.degree);
    const MultiSeries fm = fgl::difference(law);
    std::ostringstream text;
    Json rows = coefficient_rows(fm, cfg_.degree, json() ? nullptr : &text, "b");
    if (json())
      emit({{"command", "fgl bcoeffs"}, {"law", law_name}, {"degree", cfg_.degree}, {"coefficients", rows}});
    else
      out_ << text.str();
    return kOk;
  }

  int fgl_check(const std::string& law_name) {
    const auto law = make_law(law_name, cfg_.degree);
    const auto ax = fgl::check_axioms(law);
    const bool homogeneous = fgl::is_homogeneous(law);
    const auto diff = fgl::check_difference_identities(law);
    const std::vector<std::pair<std::string, bool>> items = {{"identity", ax.identity},
                                                             {"commutativity", ax.commutativity},
                                                             {"associativity", ax.associativity},
                                                             {"homogeneity", homogeneous},
                                                             {"inverse", diff.inverse},
                                                             {"diagonal", diff.diagonal},
                                                             {"translation", diff.translation},
                                                             {"distributive", diff.distributive}};
    bool all = true;
    Json j = {{"command", "fgl check"}, {"law", law_name}, {"degree", cfg_.degree}};
    for (const auto& [name, ok] : items) {
      all = all && ok;
      j[name] = ok;
      if (!json()) out_ << name << ": " << (ok ? "ok" : "FAIL") << "\n";
    }
    j["ok"] = all;
    if (json()) emit(j);
    return all ? kOk : kFailure;
  }

  int chern_numbers(const std::string& expr) {
    const auto x = space(expr);
    const auto cn = chern::chern_numbers(x, cfg_.dim_bound);
    if (json()) {
      emit({{"command", "chern numbers"}, {"space", x.to_string()}, {"dimension", x.dim()}, {"chern_numbers", json::encode(cn)}});
    } else {
      out_ << x.to_string() << " (dimension " << x.dim() << ")\n";
      for (const auto& [p, v] : cn) out_ << chern_label(p) << " = " << to_string(v) << "\n";
    }
    return kOk;
  }

  int chern_ring(const std::string& expr) {
    const auto x = space(expr);
    const auto& p = chern::cohomology_ring(x);
    Json gens = Json::array();
    for (const auto& v : p.table->variables()) gens.push_back(v.name);
    Json rels = Json::array();
    std::vector<std::string> rel_text;
    for (const auto& r : p.rules) {
      const std::string lead = MultiSeries::monomial(p.table, r.lead, 1).to_string();
      rel_text.push_back(lead + " = " + r.replacement.to_string());
      rels.push_back({{"lead", lead}, {"replacement", r.replacement.to_string()}});
    }
    const auto b = p.basis();
    Json betti = Json::array();
    for (const auto& deg : b) betti.push_back(deg.size());
    const std::string top = MultiSeries::monomial(p.table, p.top, 1).to_string();
    if (json()) {
      emit({{"command", "chern ring"},
            {"space", x.to_string()},
            {"dimension", x.dim()},
            {"generators", gens},
            {"relations", rels},
            {"basis_sizes", betti},
            {"top_monomial", top},
            {"integration_multiplier", p.multiplier.to_string()},
            {"total_chern_class", p.tangent.to_string()},
            {"euler_number", json::encode(chern::euler_number(x))}});
      return kOk;
    }
    out_ << x.to_string() << " (dimension " << x.dim() << ")\n";
    out_ << "generators:";
    for (const auto& g : gens) out_ << " " << g.get<std::string>();
    out_ << "\nrelations:\n";
    for (const auto& r : rel_text) out_ << "  " << r << "\n";
    out_ << "basis sizes:";
    for (const auto& n : betti) out_ << " " << n.get<std::size_t>();
    out_ << "\nintegral of " << top << " = 1";
    if (p.multiplier != p.one()) out_ << " (classes are multiplied by " << p.multiplier.to_string() << " first)";
    out_ << "\nc(T) = " << p.tangent.to_string() << "\n";
    out_ << "euler number = " << to_string(chern::euler_number(x)) << "\n";
    return kOk;
  }

  int decompose(const std::string& expr) {
    const auto x = space(expr);
    const auto c = cobordism::decompose(x, cfg_.dim_bound);
    if (json())
      emit({{"command", "cobordism decompose"}, {"space", x.to_string()}, {"class", json::encode(c)}});
    else
      out_ << "[" << x.to_string() << "] = " << c.to_string() << "\n";
    return kOk;
  }

  int verify_blowup(const std::string& expr) {
    const auto x = space(expr);
    const auto datum = cobordism::blowup_relation(x);
    const auto residual = cobordism::verify_relation(datum, cfg_.dim_bound);
    const std::pair<const char*, const std::optional<chern::Space>*> parts[] = {{"Y", &datum.y}, {"A", &datum.a}, {"B", &datum.b}, {"P", &datum.p}};
    Json j = {{"command", "cobordism verify-blowup"}, {"space", x.to_string()}};
    Json terms = Json::array();
    for (const auto& [name, s] : parts) {
      const auto c = cobordism::decompose(**s, cfg_.dim_bound);
      terms.push_back({{"role", name}, {"space", (*s)->to_string()}, {"class", json::encode(c)}});
      if (!json()) out_ << name << " = " << (*s)->to_string() << ": " << c.to_string() << "\n";
    }
    j["terms"] = terms;
    j["residual"] = json::encode(residual);
    j["ok"] = residual.is_zero();
    if (json())
      emit(j);
    else
      out_ << "[Y] - [A] - [B] + [P] = " << residual.to_string() << "\n";
    return residual.is_zero() ? kOk : kFailure;
  }

  int fgl_classes(int max) {
    require_bound(max, cfg_.dim_bound, "--max", "--dim-bound");
    if (max < 1) throw UsageError("--max must be at least 1");
    const auto milnor = cobordism::milnor_fgl_coefficients(max, cfg_.dim_bound);
    const auto law = cobordism::universal_fgl_classes(max);
    bool all = true;
    Json rows = Json::array();
    for (const auto& [ij, c] : milnor) {
      const bool agree = law.at(ij) == c;
      all = all && agree;
      rows.push_back({{"i", ij.first}, {"j", ij.second}, {"class", json::encode(c)}, {"agrees_with_universal_law", agree}});
      if (!json()) out_ << "a(" << ij.first << "," << ij.second << ") = " << c.to_string() << (agree ? "" : "  [MISMATCH with universal law]") << "\n";
    }
    if (json())
      emit({{"command", "cobordism fgl-coeffs"}, {"max", max}, {"coefficients", rows}, {"ok", all}});
    else
      out_ << (all ? "all coefficients agree with the universal law" : "MISMATCH") << "\n";
    return all ? kOk : kFailure;
  }

  int zseries(const std::string& expr, const std::string& rel) {
    require_bound(cfg_.order, 1 << 16, "--order", "limit");
    const auto x = space(expr);
    const auto s = divisor(rel, x);
    const Rational e = s ? chern::log_dt_exponent(x, *s) : chern::dt_exponent(x);
    const auto z = dt::z_from_exponent(e, cfg_.order);
    if (json()) {
      Json j = {{"command", "dt zseries"}, {"space", x.to_string()}};
      if (s) j["divisor"] = s->to_string();
      j["exponent"] = json::encode(e);
      j["order"] = cfg_.order;
      j["coefficients"] = json::encode_coefficients(dt::coefficients(z));
      emit(j);
    } else {
      out_ << dt::render(z) << "\n";
    }
    return kOk;
  }

  int exponent(const std::string& expr, const std::string& rel) {
    const auto x = space(expr);
    const auto s = divisor(rel, x);
    const Rational e = s ? chern::log_dt_exponent(x, *s) : chern::dt_exponent(x);
    if (json()) {
      Json j = {{"command", "dt exponent"}, {"space", x.to_string()}};
      if (s) j["divisor"] = s->to_string();
      j["exponent"] = json::encode(e);
      emit(j);
    } else {
      out_ << to_string(e) << "\n";
    }
    return kOk;
  }

  int check_degeneration(const std::string& expr, const std::string& div, const std::string& s_expr, const std::string& normal) {
    const auto x = space(expr);
    const auto s = chern::parse_divisor(div, x);
    dt::DegenerationReport r;
    if (s_expr.empty()) {
      if (!normal.empty()) throw UsageError("--normal needs --divisor-space");
      r = dt::check_degeneration(x, s);
    } else {
      const auto S = space(s_expr);
      r = dt::check_degeneration(x, s, S, normal.empty() ? chern::DivisorClass{} : chern::parse_divisor(normal, S));
    }
    const bool ok = r.residual() == 0;
    if (json()) {
      Json j = {{"command", "dt check-degeneration"}, {"space", x.to_string()}, {"divisor", s.to_string()}};
      if (r.divisor) j["divisor_space"] = r.divisor->to_string();
      if (r.bubble_space) j["bubble"] = r.bubble_space->to_string();
      j["n_relative"] = json::encode(r.relative);
      j["n_absolute"] = json::encode(r.absolute);
      j["n_bubble"] = json::encode(r.bubble);
      j["residual"] = json::encode(r.residual());
      j["ok"] = ok;
      emit(j);
    } else {
      if (r.divisor) out_ << "S = " << r.divisor->to_string() << ", P = " << (r.bubble_space ? r.bubble_space->to_string() : "none") << "\n";
      out_ << "n(X/S) = " << to_string(r.relative) << "\n";
      out_ << "n(X) = " << to_string(r.absolute) << "\n";
      out_ << "n(P/S-) = " << to_string(r.bubble) << "\n";
      out_ << "residual = " << to_string(r.residual()) << "\n";
    }
    return ok ? kOk : kFailure;
  }

  Integer ndt_cached(const chern::Space& x, int n) {
    const auto path = Cache::resolve_path(cfg_.cache);
    const std::string key = "ndt|v" + std::to_string(vertex::kConventionVersion) + "|" + x.to_string() + "|" + std::to_string(n);
    std::optional<Cache> cache;
    if (path) {
      cache.emplace(*path);
      if (auto hit = cache->get(key)) {
        Integer v;
        if (v.set_str(*hit, 10) == 0) return v;
      }
    }
    const Integer v = vertex::n_dt(x, n, cfg_.seed, cfg_.jobs, cfg_.n_bound);
    if (cache) cache->put(key, v.get_str());
    return v;
  }

  int ndt(const std::string& expr, int n) {
    require_bound(n, cfg_.n_bound, "--n", "--n-bound");
    const auto x = space(expr);
    const Integer v = ndt_cached(x, n);
    if (json())
      emit({{"command", "vertex ndt"}, {"space", x.to_string()}, {"n", n}, {"seed", cfg_.seed}, {"value", v.get_str()}});
    else
      out_ << v.get_str() << "\n";
    return kOk;
  }

  int verify_conjecture1(const std::string& expr, int order, const std::string& via) {
    if (via != "vertex") throw UsageError("--via supports only 'vertex'");
    require_bound(order, cfg_.n_bound, "--order", "--n-bound");
    const auto x = space(expr);
    const auto z = dt::z_absolute(x, order);
    bool all = true;
    Json rows = Json::array();
    if (!json()) out_ << "n  vertex  M(-q)^" << to_string(chern::dt_exponent(x)) << "\n";
    for (int n = 0; n <= order; ++n) {
      const Integer v = ndt_cached(x, n);
      const Rational want = dt::coefficient(z, n);
      const bool ok = Rational(v) == want;
      all = all && ok;
      rows.push_back({{"n", n}, {"vertex", v.get_str()}, {"series", json::encode(want)}, {"ok", ok}});
      if (!json()) out_ << n << "  " << v.get_str() << "  " << to_string(want) << (ok ? "" : "  MISMATCH") << "\n";
    }
    if (json())
      emit({{"command", "dt verify-conjecture1"}, {"space", x.to_string()}, {"exponent", json::encode(chern::dt_exponent(x))}, {"rows", rows}, {"ok", all}});
    return all ? kOk : kFailure;
  }

  int verify_all(bool timings) {
    const auto results = acceptance::run_all(cfg_.jobs);
    bool all = true;
    Json rows = Json::array();
    for (const auto& r : results) {
      all = all && r.pass();
      Json row = {{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"detail", r.detail}};
      if (timings) row["seconds"] = r.seconds;
      rows.push_back(row);
      if (!json()) {
        out_ << (r.pass() ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << ": " << r.detail;
        if (timings) out_ << " (" << std::fixed << std::setprecision(3) << r.seconds << " s)";
        out_ << "\n";
      }
    }
    if (json())
      emit({{"command", "verify-all"}, {"results", rows}, {"ok", all}});
    else
      out_ << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
    return all ? kOk : kFailure;
  }

 private:
  Config& cfg_;
  std::ostream& out_;
};

}  // namespace detail

/// Runs the command line given as arguments without the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact computations with formal group laws, Chern numbers, cobordism classes and degree-0 DT series", "dpcob"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache", cfg.cache, std::string("Cache file for vertex results (default: $") + kCacheEnv + ", else off)");
  app.add_option("--dim-bound", cfg.dim_bound, "Largest dimension for Chern numbers and decompositions")->check(CLI::NonNegativeNumber);
  app.add_option("--n-bound", cfg.n_bound, "Largest partition size for the vertex oracle")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "Seed for generic torus weights");
  app.add_option("--jobs", cfg.jobs, "Threads for the vertex localization sum")->check(CLI::PositiveNumber);

  std::function<int()> action;
  std::string expr, div, law = "universal", rel, s_expr, normal, via = "vertex";
  int max = 4, n = 3, order = -1;
  bool timings = false;
  detail::Runner runner(cfg, out);

  auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  auto* fgl_cmd = sub(&app, "fgl", "Formal group laws");
  fgl_cmd->require_subcommand(1);
  for (const auto& [name, desc] : std::vector<std::pair<std::string, std::string>>{
           {"coeffs", "Coefficients a_ij"}, {"bcoeffs", "Coefficients b_ij of the difference series"}, {"check", "Axioms and identities"}}) {
    auto* c = sub(fgl_cmd, name, desc);
    c->add_option("--degree", cfg.degree, "Truncation degree in u, v")->check(CLI::PositiveNumber);
    c->add_option("--law", law, "universal, additive or multiplicative");
    if (name == "coeffs") c->callback([&] { action = [&] { return runner.fgl_coeffs(law); }; });
    if (name == "bcoeffs") c->callback([&] { action = [&] { return runner.fgl_bcoeffs(law); }; });
    if (name == "check") c->callback([&] { action = [&] { return runner.fgl_check(law); }; });
  }

  auto* chern_cmd = sub(&app, "chern", "Cohomology rings and Chern numbers");
  chern_cmd->require_subcommand(1);
  auto* numbers = sub(chern_cmd, "numbers", "Chern numbers of a space");
  numbers->add_option("space", expr, "Space expression")->required();
  numbers->callback([&] { action = [&] { return runner.chern_numbers(expr); }; });
  auto* ring = sub(chern_cmd, "ring", "Cohomology presentation");
  ring->add_option("space", expr, "Space expression")->required();
  ring->callback([&] { action = [&] { return runner.chern_ring(expr); }; });

  auto* cob = sub(&app, "cobordism", "Rational cobordism classes");
  cob->require_subcommand(1);
  auto* dec = sub(cob, "decompose", "Class in the basis of products of projective spaces");
  dec->add_option("space", expr, "Space expression")->required();
  dec->callback([&] { action = [&] { return runner.decompose(expr); }; });
  auto* vb = sub(cob, "verify-blowup", "Blow-up double point relation for a 3-fold");
  vb->add_option("space", expr, "Space expression")->required();
  vb->callback([&] { action = [&] { return runner.verify_blowup(expr); }; });
  auto* fc = sub(cob, "fgl-coeffs", "Law coefficients from Milnor hypersurfaces");
  fc->add_option("--max", max, "Largest i + j");
  fc->callback([&] { action = [&] { return runner.fgl_classes(max); }; });

  auto* dt_cmd = sub(&app, "dt", "Degree-0 DT partition functions");
  dt_cmd->require_subcommand(1);
  auto* zs = sub(dt_cmd, "zseries", "Z(X, q) to a given order");
  zs->add_option("space", expr, "Space expression")->required();
  zs->add_option("--order", cfg.order, "Order in q")->check(CLI::NonNegativeNumber);
  zs->add_option("--rel", rel, "Divisor class for the relative series");
  zs->callback([&] { action = [&] { return runner.zseries(expr, rel); }; });
  auto* ex = sub(dt_cmd, "exponent", "Exponent of M(-q)");
  ex->add_option("space", expr, "Space expression")->required();
  ex->add_option("--rel", rel, "Divisor class for the relative exponent");
  ex->callback([&] { action = [&] { return runner.exponent(expr, rel); }; });
  auto* dg = sub(dt_cmd, "check-degeneration", "Degeneration to the normal cone of a divisor");
  dg->add_option("space", expr, "Space expression")->required();
  dg->add_option("divisor", div, "Divisor class")->required();
  dg->add_option("--divisor-space", s_expr, "The divisor S as a space, when it cannot be inferred");
  dg->add_option("--normal", normal, "Class of O_S(S) on S");
  dg->callback([&] { action = [&] { return runner.check_degeneration(expr, div, s_expr, normal); }; });
  auto* vc = sub(dt_cmd, "verify-conjecture1", "Compare the vertex oracle with M(-q)^e");
  vc->add_option("space", expr, "Space expression")->required();
  vc->add_option("--order", order, "Largest n (default: --n-bound)");
  vc->add_option("--via", via, "Oracle (vertex)");
  vc->callback([&] { action = [&] { return runner.verify_conjecture1(expr, order < 0 ? cfg.n_bound : order, via); }; });

  auto* vx = sub(&app, "vertex", "Localization oracle");
  vx->require_subcommand(1);
  auto* nd = sub(vx, "ndt", "N_{n,0} by localization");
  nd->add_option("space", expr, "Space expression")->required();
  nd->add_option("--n", n, "Number of points");
  nd->callback([&] { action = [&] { return runner.ndt(expr, n); }; });

  auto* va = sub(&app, "verify-all", "Run every acceptance check");
  va->add_flag("--timings", timings, "Include wall-clock timings");
  va->callback([&] { action = [&] { return runner.verify_all(timings); }; });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (!action) return kUsage;
  try {
    return action();
  } catch (const chern::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace dpcob::cli
