#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttp/scalars.hpp"

namespace ttp {

/// Ordered letters; letter i < letter j iff i < j. Weights default to 1.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names, std::vector<int> weights = {})
      : names_(std::move(names)), weights_(std::move(weights)) {
    if (weights_.empty()) weights_.assign(names_.size(), 1);
    if (weights_.size() != names_.size()) throw Error(ErrorCode::InvalidArgument, "weights do not match letters");
    if (names_.size() > 250) throw Error(ErrorCode::InvalidArgument, "alphabet too large");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw Error(ErrorCode::InvalidArgument, "empty letter name");
      if (weights_[i] < 1) throw Error(ErrorCode::InvalidArgument, "letter weight must be positive");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw Error(ErrorCode::InvalidArgument, "duplicate letter " + names_[i]);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  int weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<int>& weights() const { return weights_; }
  bool weighted() const {
    for (int w : weights_)
      if (w != 1) return true;
    return false;
  }

  std::optional<std::size_t> index(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_ && weights_ == o.weights_; }

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::vector<std::string> names, std::vector<int> weights = {}) {
  return std::make_shared<const Alphabet>(std::move(names), std::move(weights));
}

/// A monomial: letter indices plus cached weighted degree.
/// Ordered by degree, then letters from the left.
struct Word {
  std::string letters;
  int degree = 0;

  std::size_t length() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  std::size_t at(std::size_t i) const { return static_cast<unsigned char>(letters[i]); }

  friend bool operator<(const Word& a, const Word& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.letters < b.letters;
  }
  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend Word operator*(const Word& a, const Word& b) { return Word{a.letters + b.letters, a.degree + b.degree}; }

  Word sub(std::size_t pos, std::size_t len, const Alphabet& al) const {
    Word w{letters.substr(pos, len), 0};
    for (char c : w.letters) w.degree += al.weight(static_cast<unsigned char>(c));
    return w;
  }
};

inline Word make_word(const Alphabet& al, const std::vector<std::size_t>& idx) {
  Word w;
  for (auto i : idx) {
    if (i >= al.size()) throw Error(ErrorCode::InvalidArgument, "letter index out of range");
    w.letters.push_back(static_cast<char>(i));
    w.degree += al.weight(i);
  }
  return w;
}

inline std::string word_string(const Alphabet& al, const Word& w) {
  if (w.empty()) return "1";
  bool multi = false;
  for (const auto& n : al.names())
    if (n.size() > 1) multi = true;
  std::string s;
  std::size_t i = 0;
  while (i < w.length()) {
    std::size_t j = i;
    while (j < w.length() && w.letters[j] == w.letters[i]) ++j;
    if (multi && !s.empty()) s += "*";
    s += al.name(w.at(i));
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

class NCPoly {
 public:
  using Terms = std::map<Word, Scalar>;

  NCPoly(AlphabetPtr al, Field f) : al_(std::move(al)), field_(std::move(f)) {}

  static NCPoly monomial(AlphabetPtr al, const Word& w, const Scalar& c) {
    NCPoly p(std::move(al), c.field());
    if (!c.is_zero()) p.terms_.emplace(w, c);
    return p;
  }
  static NCPoly letter(AlphabetPtr al, const Field& f, std::size_t i) {
    Word w = make_word(*al, {i});
    return monomial(std::move(al), w, f.one());
  }
  static NCPoly constant(AlphabetPtr al, const Scalar& c) { return monomial(std::move(al), Word{}, c); }

  const AlphabetPtr& alphabet() const { return al_; }
  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    promote(c.field());
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c.lift(field_));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::pair<Word, Scalar> leading_term() const {
    if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "leading term of 0");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree == std::prev(terms_.end())->first.degree;
  }
  int degree() const { return terms_.empty() ? -1 : std::prev(terms_.end())->first.degree; }

  NCPoly operator-() const {
    NCPoly r(al_, field_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }

  NCPoly& operator+=(const NCPoly& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    a.check(b);
    NCPoly r(a.al_, join(a.field_, b.field_));
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) r.add_term(u * v, c * d);
    return r;
  }
  friend NCPoly operator*(const Scalar& s, const NCPoly& a) {
    NCPoly r(a.al_, join(a.field_, s.field()));
    if (s.is_zero()) return r;
    for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, (s * c).lift(r.field_));
    return r;
  }
  friend NCPoly operator*(const NCPoly& a, const Scalar& s) { return s * a; }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    if (!(*a.al_ == *b.al_) || a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || i->second != j->second) return false;
    return true;
  }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  // Scales so the leading coefficient is 1.
  NCPoly monic() const { return leading_term().second.inv() * *this; }

  NCPoly lift(const Field& f) const {
    NCPoly r(al_, f);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c.lift(f));
    return r;
  }

  // Terms from the largest word down.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Scalar& c = it->second;
      std::string cs = c.to_string();
      bool neg = false;
      if (!cs.empty() && cs[0] == '-' && (c.is_ground() || cs.find_first_of("+-", 1) == std::string::npos)) {
        neg = true;
        cs = cs.substr(1);
      }
      if (cs.find_first_of("+-", 0) != std::string::npos) cs = "(" + cs + ")";
      std::string ws = word_string(*al_, it->first);
      std::string term;
      if (it->first.empty()) {
        term = cs;
      } else if (cs == "1") {
        term = ws;
      } else {
        term = cs + "*" + ws;
      }
      if (s.empty()) {
        s = (neg ? "-" : "") + term;
      } else {
        s += (neg ? " - " : " + ") + term;
      }
    }
    return s;
  }

 private:
  void check(const NCPoly& o) const {
    if (al_ != o.al_ && !(*al_ == *o.al_)) throw Error(ErrorCode::AlphabetMismatch, "polynomials over different alphabets");
  }
  void promote(const Field& f) {
    if (field_.contains(f)) return;
    Field g = join(field_, f);
    for (auto& [w, c] : terms_) c = c.lift(g);
    field_ = g;
  }

  AlphabetPtr al_;
  Field field_;
  Terms terms_;
};

/// Image under the algebra map sending letter i to images[i] (images may
/// live over another alphabet).
inline NCPoly substitute(const NCPoly& p, const std::vector<NCPoly>& images) {
  if (images.size() != p.alphabet()->size()) throw Error(ErrorCode::InvalidArgument, "one image per letter required");
  AlphabetPtr target = images.empty() ? p.alphabet() : images[0].alphabet();
  Field f = p.field();
  for (const auto& im : images) f = join(f, im.field());
  NCPoly out(target, f);
  for (const auto& [w, c] : p.terms()) {
    NCPoly t = NCPoly::constant(target, c.lift(f));
    for (std::size_t i = 0; i < w.length(); ++i) t = t * images[w.at(i)];
    out += t;
  }
  return out;
}

inline std::vector<NCPoly> identity_images(const AlphabetPtr& al, const Field& f) {
  std::vector<NCPoly> v;
  for (std::size_t i = 0; i < al->size(); ++i) v.push_back(NCPoly::letter(al, f, i));
  return v;
}

/// All words of weighted degree exactly d, in increasing order.
inline std::vector<Word> all_words(const Alphabet& al, int d) {
  std::vector<Word> out;
  Word cur;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < al.size(); ++i) {
      int w = al.weight(i);
      if (w > left) continue;
      cur.letters.push_back(static_cast<char>(i));
      cur.degree += w;
      self(self, left - w);
      cur.letters.pop_back();
      cur.degree -= w;
    }
  };
  if (d >= 0) rec(rec, d);
  return out;
}

}  // namespace ttp
