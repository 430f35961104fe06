#pragma once

// Recursive-descent parser for space expressions:
//
//   space   := factor ('*' factor)*
//   factor  := 'Point' | 'P' INT | '(' space ')'
//            | 'PB' '(' space ';' divisor (',' divisor)* ')'
//            | 'Hyp' '(' space ';' divisor ')'
//            | 'Bl' '(' space ')'
//   divisor := ['-'] term (('+' | '-') term)*
//   term    := [RATIONAL ['*']] NAME | RATIONAL
//
// Names in a divisor refer to the cohomology generators of the enclosing space
// (h1, h2, ..., xi1, ..., e1, ...) or their aliases (h, a..d, xi, e). A bare
// rational term is only accepted when it is 0.

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dpcob/space.hpp"

namespace dpcob::chern {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Space parse_space_all() {
    Space x = space();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return x;
  }

  DivisorClass parse_divisor_all(const Presentation& p) {
    DivisorClass d = divisor(p);
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) fail("expected identifier");
    return std::string(s_.substr(start, i_ - start));
  }

  Space space() {
    Space x = factor();
    while (accept('*')) x = Space::product(x, factor());
    return x;
  }

  Space factor() {
    skip();
    const std::size_t start = i_;
    if (accept('(')) {
      Space x = space();
      expect(')');
      return x;
    }
    const std::string id = ident();
    try {
      if (id == "Point" || id == "pt") return Space::point();
      if (id == "PB") {
        expect('(');
        Space base = space();
        expect(';');
        std::vector<DivisorClass> lines;
        do lines.push_back(divisor(base.presentation()));
        while (accept(','));
        expect(')');
        return Space::bundle(base, std::move(lines));
      }
      if (id == "Hyp") {
        expect('(');
        Space amb = space();
        expect(';');
        DivisorClass d = divisor(amb.presentation());
        expect(')');
        return Space::hypersurface(amb, d);
      }
      if (id == "Bl") {
        expect('(');
        Space x = space();
        expect(')');
        return Space::blowup(x);
      }
      if (id.size() > 1 && id[0] == 'P' && std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return Space::projective(std::stoi(id.substr(1)));
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
    i_ = start;
    fail("unknown space '" + id + "'");
  }

  // Optional rational coefficient; returns nullopt when none is present.
  std::optional<Rational> number() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) return std::nullopt;
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      const std::size_t d = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (d == i_) fail("expected denominator");
    }
    try {
      return parse_rational(s_.substr(start, i_ - start));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
  }

  DivisorClass term(const Presentation& p, Rational sign) {
    auto coeff = number();
    skip();
    const bool has_name = i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '*');
    if (coeff && !has_name) {
      if (*coeff != 0) fail("a constant is not a divisor class");
      return {};
    }
    if (coeff) accept('*');
    skip();
    const std::size_t at = i_;
    const std::string name = ident();
    std::string canon;
    try {
      canon = p.resolve(name);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
    return DivisorClass::generator(canon, sign * coeff.value_or(1));
  }

  DivisorClass divisor(const Presentation& p) {
    Rational sign = accept('-') ? -1 : 1;
    DivisorClass d = term(p, sign);
    while (true) {
      if (accept('+'))
        d += term(p, 1);
      else if (accept('-'))
        d += term(p, -1);
      else
        break;
    }
    return d;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Space parse_space(std::string_view text) { return detail::Parser(text).parse_space_all(); }

inline DivisorClass parse_divisor(std::string_view text, const Space& x) {
  return detail::Parser(text).parse_divisor_all(x.presentation());
}

}  // namespace dpcob::chern
