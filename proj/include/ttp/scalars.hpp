#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttp/error.hpp"

namespace ttp {

namespace detail {

// An element of a prime field (p != 0, value in r) or of Q (p == 0, value in q).
struct Base {
  mpq_class q;
  std::uint64_t r = 0;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
  return powmod(a, p - 2, p);
}

inline bool base_zero(std::uint64_t p, const Base& a) { return p ? a.r == 0 : sgn(a.q) == 0; }
inline bool base_eq(std::uint64_t p, const Base& a, const Base& b) { return p ? a.r == b.r : a.q == b.q; }

inline Base base_int(std::uint64_t p, long n) {
  Base out;
  if (p) {
    long m = n % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    out.r = static_cast<std::uint64_t>(m);
  } else {
    out.q = n;
  }
  return out;
}

inline Base base_add(std::uint64_t p, const Base& a, const Base& b) {
  Base out;
  if (p) {
    out.r = (a.r + b.r) % p;
  } else {
    out.q = a.q + b.q;
  }
  return out;
}

inline Base base_neg(std::uint64_t p, const Base& a) {
  Base out;
  if (p) {
    out.r = a.r ? p - a.r : 0;
  } else {
    out.q = -a.q;
  }
  return out;
}

inline Base base_sub(std::uint64_t p, const Base& a, const Base& b) { return base_add(p, a, base_neg(p, b)); }

inline Base base_mul(std::uint64_t p, const Base& a, const Base& b) {
  Base out;
  if (p) {
    out.r = mulmod(a.r, b.r, p);
  } else {
    out.q = a.q * b.q;
  }
  return out;
}

inline Base base_inv(std::uint64_t p, const Base& a) {
  Base out;
  if (p) {
    out.r = invmod(a.r, p);
  } else {
    if (sgn(a.q) == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0");
    out.q = 1 / a.q;
  }
  return out;
}

inline bool base_less(std::uint64_t p, const Base& a, const Base& b) { return p ? a.r < b.r : a.q < b.q; }

inline std::string base_str(std::uint64_t p, const Base& a) { return p ? std::to_string(a.r) : a.q.get_str(); }

// Square root inside the ground field, if one exists.
inline std::optional<Base> base_sqrt(std::uint64_t p, const Base& a) {
  if (p == 0) {
    if (sgn(a.q) < 0) return std::nullopt;
    mpz_class n = a.q.get_num(), d = a.q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Base out;
    out.q = mpq_class(rn, rd);
    out.q.canonicalize();
    return out;
  }
  Base out;
  if (a.r == 0 || p == 2) {
    out.r = a.r;
    return out;
  }
  if (powmod(a.r, (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  std::uint64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a.r, q, p), r = powmod(a.r, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  out.r = std::min(r, p - r);
  return out;
}

inline std::uint64_t smallest_nonresidue(std::uint64_t p) {
  std::uint64_t g = 2;
  while (powmod(g, (p - 1) / 2, p) != p - 1) ++g;
  return g;
}

// n = s^2 * m with m squarefree up to trial division (the cofactor is kept whole unless it is a square).
inline std::pair<mpz_class, mpz_class> square_split(const mpz_class& n) {
  mpz_class m = abs(n), s = 1;
  for (unsigned long f = 2; f < 100000; ++f) {
    mpz_class ff = f * f;
    if (ff > m) break;
    while (mpz_divisible_p(m.get_mpz_t(), ff.get_mpz_t())) {
      m /= ff;
      s *= f;
    }
  }
  if (m > 1 && mpz_perfect_square_p(m.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    s *= r;
    m = 1;
  }
  if (sgn(n) < 0) m = -m;
  return {s, m};
}

}  // namespace detail

class Scalar;

class Field {
 public:
  enum class Kind { Rationals, Prime, QuadExt };

  Field() : spec_(rationals().spec_) {}

  static Field rationals() {
    static const auto q = std::make_shared<const Spec>(Spec{Kind::Rationals, 0, {}});
    return Field(q);
  }

  static Field prime(std::uint64_t p) {
    if (p < 2 || p >= (1ULL << 31)) throw Error(ErrorCode::InvalidArgument, "prime out of range: " + std::to_string(p));
    mpz_class z(static_cast<unsigned long>(p));
    if (!mpz_probab_prime_p(z.get_mpz_t(), 30)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    return Field(std::make_shared<const Spec>(Spec{Kind::Prime, p, {}}));
  }

  // k(sqrt(m)); m must be a non-square of a ground field.
  static Field quad_ext(const Field& base, const Scalar& m);

  Kind kind() const { return spec_->kind; }
  bool is_extension() const { return spec_->kind == Kind::QuadExt; }
  std::uint64_t characteristic() const { return spec_->p; }

  // The ground field Q or GF(p) below this one.
  Field ground() const {
    if (!is_extension()) return *this;
    return spec_->p ? Field(std::make_shared<const Spec>(Spec{Kind::Prime, spec_->p, {}})) : rationals();
  }

  const detail::Base& radicand_base() const { return spec_->radicand; }
  Scalar radicand() const;
  Scalar sqrt_generator() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long n) const;
  Scalar from_rational(const mpq_class& q) const;

  bool operator==(const Field& o) const {
    if (spec_ == o.spec_) return true;
    if (spec_->kind != o.spec_->kind || spec_->p != o.spec_->p) return false;
    if (spec_->kind == Kind::QuadExt) return detail::base_eq(spec_->p, spec_->radicand, o.spec_->radicand);
    return true;
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  // True when every element of `sub` is an element of this field.
  bool contains(const Field& sub) const {
    if (*this == sub) return true;
    return is_extension() && !sub.is_extension() && sub.characteristic() == characteristic();
  }

  std::string name() const {
    switch (spec_->kind) {
      case Kind::Rationals: return "QQ";
      case Kind::Prime: return "GF(" + std::to_string(spec_->p) + ")";
      case Kind::QuadExt: return ground().name() + "(sqrt(" + detail::base_str(spec_->p, spec_->radicand) + "))";
    }
    return "?";
  }

 private:
  struct Spec {
    Kind kind;
    std::uint64_t p;
    detail::Base radicand;
  };
  explicit Field(std::shared_ptr<const Spec> s) : spec_(std::move(s)) {}

  std::shared_ptr<const Spec> spec_;
};

inline Field join(const Field& a, const Field& b) {
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  throw Error(ErrorCode::FieldMismatch, a.name() + " vs " + b.name());
}

/// u + v*sqrt(m) in an extension, plain u otherwise (v stays zero).
class Scalar {
 public:
  Scalar() : field_(Field::rationals()) {}
  Scalar(Field f, detail::Base u, detail::Base v = {}) : field_(std::move(f)), u_(std::move(u)), v_(std::move(v)) {
    if (!field_.is_extension()) v_ = detail::Base{};
  }

  const Field& field() const { return field_; }
  std::uint64_t p() const { return field_.characteristic(); }
  const detail::Base& u() const { return u_; }
  const detail::Base& v() const { return v_; }

  bool is_zero() const { return detail::base_zero(p(), u_) && detail::base_zero(p(), v_); }
  bool is_one() const { return detail::base_eq(p(), u_, detail::base_int(p(), 1)) && detail::base_zero(p(), v_); }
  // Lies in the ground field (no sqrt part).
  bool is_ground() const { return detail::base_zero(p(), v_); }

  Scalar lift(const Field& target) const {
    if (target == field_) return *this;
    if (!target.contains(field_)) throw Error(ErrorCode::FieldMismatch, field_.name() + " into " + target.name());
    return Scalar(target, u_, {});
  }

  Scalar operator-() const { return Scalar(field_, detail::base_neg(p(), u_), detail::base_neg(p(), v_)); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    Field f = join(a.field_, b.field_);
    std::uint64_t p = f.characteristic();
    return Scalar(f, detail::base_add(p, a.u_, b.u_), detail::base_add(p, a.v_, b.v_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Field f = join(a.field_, b.field_);
    std::uint64_t p = f.characteristic();
    using namespace detail;
    if (!f.is_extension()) return Scalar(f, base_mul(p, a.u_, b.u_));
    const Base& m = f.radicand_base();
    Base u = base_add(p, base_mul(p, a.u_, b.u_), base_mul(p, m, base_mul(p, a.v_, b.v_)));
    Base v = base_add(p, base_mul(p, a.u_, b.v_), base_mul(p, a.v_, b.u_));
    return Scalar(f, u, v);
  }
  Scalar inv() const {
    using namespace detail;
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0");
    if (!field_.is_extension()) return Scalar(field_, base_inv(p(), u_));
    const Base& m = field_.radicand_base();
    Base norm = base_sub(p(), base_mul(p(), u_, u_), base_mul(p(), m, base_mul(p(), v_, v_)));
    Base ni = base_inv(p(), norm);
    return Scalar(field_, base_mul(p(), u_, ni), base_neg(p(), base_mul(p(), v_, ni)));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

  Scalar pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar r = field_.one(), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend Scalar operator+(const Scalar& a, long n) { return a + a.field_.from_int(n); }
  friend Scalar operator+(long n, const Scalar& a) { return a.field_.from_int(n) + a; }
  friend Scalar operator-(const Scalar& a, long n) { return a - a.field_.from_int(n); }
  friend Scalar operator-(long n, const Scalar& a) { return a.field_.from_int(n) - a; }
  friend Scalar operator*(const Scalar& a, long n) { return a * a.field_.from_int(n); }
  friend Scalar operator*(long n, const Scalar& a) { return a.field_.from_int(n) * a; }
  friend Scalar operator/(const Scalar& a, long n) { return a / a.field_.from_int(n); }
  friend Scalar operator/(long n, const Scalar& a) { return a.field_.from_int(n) / a; }

  // Values in unrelated fields compare unequal.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.field_.contains(b.field_) && !b.field_.contains(a.field_)) return false;
    std::uint64_t p = a.p();
    return detail::base_eq(p, a.u_, b.u_) && detail::base_eq(p, a.v_, b.v_);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator==(const Scalar& a, long n) { return a == a.field_.from_int(n); }
  friend bool operator!=(const Scalar& a, long n) { return !(a == n); }

  std::string to_string() const {
    using namespace detail;
    std::uint64_t pp = p();
    if (!field_.is_extension() || base_zero(pp, v_)) return base_str(pp, u_);
    std::string root = "sqrt(" + base_str(pp, field_.radicand_base()) + ")";
    std::string vs;
    bool neg = false;
    if (pp == 0 && sgn(v_.q) < 0) {
      neg = true;
      vs = base_str(0, base_neg(0, v_));
    } else {
      vs = base_str(pp, v_);
    }
    std::string term = vs == "1" ? root : vs + "*" + root;
    if (base_zero(pp, u_)) return (neg ? "-" : "") + term;
    return base_str(pp, u_) + (neg ? "-" : "+") + term;
  }

  // Rational value; only meaningful for ground elements of Q.
  const mpq_class& rational() const { return u_.q; }
  std::uint64_t residue() const { return u_.r; }

 private:
  Field field_;
  detail::Base u_, v_;
};

inline Scalar Field::zero() const { return Scalar(*this, detail::base_int(characteristic(), 0)); }
inline Scalar Field::one() const { return Scalar(*this, detail::base_int(characteristic(), 1)); }
inline Scalar Field::from_int(long n) const { return Scalar(*this, detail::base_int(characteristic(), n)); }
inline Scalar Field::from_rational(const mpq_class& q0) const {
  mpq_class q = q0;
  q.canonicalize();
  std::uint64_t p = characteristic();
  if (p == 0) {
    detail::Base b;
    b.q = q;
    return Scalar(*this, b);
  }
  mpz_class num = q.get_num() % static_cast<unsigned long>(p), den = q.get_den() % static_cast<unsigned long>(p);
  if (num < 0) num += static_cast<unsigned long>(p);
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator divisible by " + std::to_string(p));
  detail::Base n, d;
  n.r = num.get_ui();
  d.r = den.get_ui();
  return Scalar(*this, detail::base_mul(p, n, detail::base_inv(p, d)));
}
inline Scalar Field::radicand() const { return Scalar(ground(), spec_->radicand); }
inline Scalar Field::sqrt_generator() const {
  if (!is_extension()) throw Error(ErrorCode::InvalidArgument, name() + " has no adjoined root");
  return Scalar(*this, detail::base_int(characteristic(), 0), detail::base_int(characteristic(), 1));
}

inline Field Field::quad_ext(const Field& base, const Scalar& m) {
  if (base.is_extension()) throw Error(ErrorCode::Unsupported, "nested quadratic extension over " + base.name());
  Scalar mm = m.lift(base);
  if (!mm.is_ground()) throw Error(ErrorCode::Unsupported, "radicand outside the ground field");
  if (auto r = detail::base_sqrt(base.characteristic(), mm.u()))
    throw Error(ErrorCode::InvalidArgument, mm.to_string() + " is a square of " + detail::base_str(base.characteristic(), *r));
  return Field(std::make_shared<const Spec>(Spec{Kind::QuadExt, base.characteristic(), mm.u()}));
}

/// Total order used for canonical representatives: numeric on Q, residue on
/// GF(p), (u, v) lexicographic in extensions.
inline bool canonical_less(const Scalar& a, const Scalar& b) {
  std::uint64_t p = a.p();
  if (!detail::base_eq(p, a.u(), b.u())) return detail::base_less(p, a.u(), b.u());
  return detail::base_less(p, a.v(), b.v());
}

/// A square root of x in its own field, if any.
inline std::optional<Scalar> sqrt_in_field(const Scalar& x) {
  using namespace detail;
  const Field& f = x.field();
  std::uint64_t p = f.characteristic();
  if (x.is_ground()) {
    if (auto r = base_sqrt(p, x.u())) return Scalar(f, *r);
    if (!f.is_extension()) return std::nullopt;
    // u = s^2 m  =>  sqrt(u) = s sqrt(m)
    Base q = base_mul(p, x.u(), base_inv(p, f.radicand_base()));
    if (auto s = base_sqrt(p, q)) return Scalar(f, base_int(p, 0), *s);
    return std::nullopt;
  }
  // (s + t sqrt(m))^2 = u + v sqrt(m): s^2 + m t^2 = u, 2 s t = v.
  if (p == 2) return std::nullopt;
  const Base& m = f.radicand_base();
  Base norm = base_sub(p, base_mul(p, x.u(), x.u()), base_mul(p, m, base_mul(p, x.v(), x.v())));
  auto n = base_sqrt(p, norm);
  if (!n) return std::nullopt;
  Base half = base_inv(p, base_int(p, 2));
  for (int sign : {1, -1}) {
    Base nn = sign > 0 ? *n : base_neg(p, *n);
    Base s2 = base_mul(p, base_add(p, x.u(), nn), half);
    auto s = base_sqrt(p, s2);
    if (!s || base_zero(p, *s)) continue;
    Base t = base_mul(p, x.v(), base_inv(p, base_mul(p, base_int(p, 2), *s)));
    Scalar cand(f, *s, t);
    if (cand * cand == x) return cand;
  }
  return std::nullopt;
}

/// A square root of x, adjoining one to the ground field when needed.
/// `extended` reports whether a new field was built.
struct SqrtResult {
  Scalar root;
  bool extended = false;
};

inline SqrtResult sqrt_adjoin(const Scalar& x) {
  if (auto r = sqrt_in_field(x)) return {*r, false};
  const Field& f = x.field();
  if (f.is_extension()) throw Error(ErrorCode::Unsupported, "square root of " + x.to_string() + " needs a second extension of " + f.name());
  std::uint64_t p = f.characteristic();
  if (p == 0) {
    // x = n/d,  sqrt(x) = sqrt(n d)/d = s sqrt(m)/d
    mpz_class nd = x.rational().get_num() * x.rational().get_den();
    auto [s, m] = detail::square_split(nd);
    Field ext = Field::quad_ext(f, f.from_rational(mpq_class(m)));
    Scalar coeff = ext.from_rational(mpq_class(s, x.rational().get_den()));
    return {coeff * ext.sqrt_generator(), true};
  }
  std::uint64_t g = detail::smallest_nonresidue(p);
  Field ext = Field::quad_ext(f, f.from_int(static_cast<long>(g)));
  Scalar t = *sqrt_in_field(x / f.from_int(static_cast<long>(g)));
  return {t.lift(ext) * ext.sqrt_generator(), true};
}

struct QuadraticRoots {
  std::vector<Scalar> roots;     // distinct roots, canonical order
  std::vector<int> multiplicity;  // parallel to roots
  bool extended = false;         // roots live in a freshly adjoined extension
};

/// Roots of p2 q^2 + p1 q + p0.
inline QuadraticRoots solve_quadratic(const Scalar& p2, const Scalar& p1, const Scalar& p0) {
  Field f = join(join(p2.field(), p1.field()), p0.field());
  QuadraticRoots out;
  if (p2.is_zero()) {
    if (p1.is_zero()) {
      if (p0.is_zero()) throw Error(ErrorCode::InvalidArgument, "all coefficients zero");
      throw Error(ErrorCode::NoRoot, "nonzero constant");
    }
    out.roots.push_back(-p0 / p1);
    out.multiplicity.push_back(1);
    return out;
  }
  if (f.characteristic() == 2) {
    if (f.is_extension()) throw Error(ErrorCode::Unsupported, "characteristic 2 extension");
    for (long c = 0; c < 2; ++c) {
      Scalar q = f.from_int(c);
      if ((p2 * q * q + p1 * q + p0).is_zero()) out.roots.push_back(q);
    }
    if (out.roots.empty()) throw Error(ErrorCode::Unsupported, "irreducible quadratic over GF(2)");
    if (out.roots.size() == 1) {
      out.multiplicity.push_back(2);
    } else {
      out.multiplicity = {1, 1};
    }
    return out;
  }
  Scalar disc = p1 * p1 - 4 * p2 * p0;
  Scalar two_a = 2 * p2;
  if (disc.is_zero()) {
    out.roots.push_back(-p1 / two_a);
    out.multiplicity.push_back(2);
    return out;
  }
  SqrtResult s = sqrt_adjoin(disc);
  out.extended = s.extended;
  Scalar r1 = (-p1 + s.root) / two_a, r2 = (-p1 - s.root) / two_a;
  if (canonical_less(r2, r1)) std::swap(r1, r2);
  out.roots = {r1, r2};
  out.multiplicity = {1, 1};
  return out;
}

}  // namespace ttp
