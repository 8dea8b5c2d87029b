#pragma once

#include <cctype>
#include <string>

#include "ttp/freealg.hpp"

namespace ttp {

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, AlphabetPtr al, Field f) : s_(text), al_(std::move(al)), f_(std::move(f)) {}

  NCPoly parse() {
    NCPoly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "at position " + std::to_string(i_) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  NCPoly zero() const { return NCPoly(al_, f_); }
  NCPoly constant(const Scalar& c) const { return NCPoly::constant(al_, c); }

  NCPoly expr() {
    skip();
    NCPoly acc = zero();
    bool neg = false;
    if (eat('-')) {
      neg = true;
    } else {
      eat('+');
    }
    NCPoly t = term();
    acc += neg ? -t : t;
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_factor() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  NCPoly term() {
    NCPoly acc = factor();
    while (true) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        std::size_t at = i_;
        NCPoly d = factor();
        if (d.is_zero()) {
          i_ = at;
          fail("division by zero");
        }
        if (d.degree() != 0 || d.size() != 1) {
          i_ = at;
          fail("division by a non-constant");
        }
        acc = d.leading_term().second.inv() * acc;
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  NCPoly factor() {
    NCPoly base = atom();
    if (eat('^')) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent expected");
      long e = std::stol(s_.substr(st, i_ - st));
      NCPoly r = constant(f_.one());
      for (long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  NCPoly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      NCPoly p = expr();
      if (!eat(')')) fail("')' expected");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      mpz_class n(s_.substr(st, i_ - st));
      return constant(f_.from_rational(mpq_class(n)));
    }
    // Longest matching letter name, but "sqrt(" wins over letters.
    if (s_.compare(i_, 4, "sqrt") == 0) {
      std::size_t save = i_;
      i_ += 4;
      if (eat('(')) {
        NCPoly arg = expr();
        if (!eat(')')) fail("')' expected");
        if (arg.degree() > 0) fail("sqrt of a non-constant");
        Scalar v = arg.is_zero() ? f_.zero() : arg.leading_term().second;
        try {
          return constant(sqrt_adjoin(v).root);
        } catch (const Error& e) {
          i_ = save;
          fail(e.what());
        }
      }
      i_ = save;
    }
    std::size_t best = 0, best_len = 0;
    for (std::size_t k = 0; k < al_->size(); ++k) {
      const std::string& n = al_->name(k);
      if (n.size() > best_len && s_.compare(i_, n.size(), n) == 0) {
        best = k;
        best_len = n.size();
      }
    }
    if (best_len == 0) fail("unknown symbol");
    i_ += best_len;
    return NCPoly::letter(al_, f_, best);
  }

  std::string s_;
  AlphabetPtr al_;
  Field f_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Polynomial text: juxtaposition or '*' for products, '^' for powers,
/// integers, p/q, sqrt(m), parentheses.
inline NCPoly parse_poly(const std::string& text, const AlphabetPtr& al, const Field& f) {
  return detail::PolyParser(text, al, f).parse();
}

inline Scalar parse_scalar(const std::string& text, const Field& f) {
  static const AlphabetPtr none = make_alphabet({});
  NCPoly p = parse_poly(text, none, f);
  if (p.is_zero()) return f.zero();
  return p.leading_term().second;
}

/// "QQ" / "Q", "GF(p)", optionally followed by "(sqrt(m))".
inline Field parse_field(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  Field base;
  std::size_t i = 0;
  if (s.rfind("QQ", 0) == 0) {
    base = Field::rationals();
    i = 2;
  } else if (s.rfind("Q", 0) == 0) {
    base = Field::rationals();
    i = 1;
  } else if (s.rfind("GF(", 0) == 0) {
    std::size_t close = s.find(')');
    if (close == std::string::npos) throw Error(ErrorCode::ParseError, "at position " + std::to_string(s.size()) + ": ')' expected");
    std::string num = s.substr(3, close - 3);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::ParseError, "at position 3: prime expected");
    base = Field::prime(std::stoull(num));
    i = close + 1;
  } else {
    throw Error(ErrorCode::ParseError, "at position 0: unknown field '" + text + "'");
  }
  if (i == s.size()) return base;
  if (s.compare(i, 6, "(sqrt(") != 0 || s.size() < i + 8 || s.substr(s.size() - 2) != "))")
    throw Error(ErrorCode::ParseError, "at position " + std::to_string(i) + ": '(sqrt(m))' expected");
  Scalar m = parse_scalar(s.substr(i + 6, s.size() - i - 8), base);
  return Field::quad_ext(base, m);
}

}  // namespace ttp
