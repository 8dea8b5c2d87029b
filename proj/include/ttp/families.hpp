#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ttp/matrix.hpp"
#include "ttp/parse.hpp"
#include "ttp/rewrite.hpp"

namespace ttp {

struct ParamTuple2D {
  Scalar a, b, c;

  Field field() const { return join(join(a.field(), b.field()), c.field()); }
  ParamTuple2D lift(const Field& f) const { return {a.lift(f), b.lift(f), c.lift(f)}; }
  bool operator==(const ParamTuple2D& o) const { return a == o.a && b == o.b && c == o.c; }
  std::string to_string() const { return "(" + a.to_string() + ", " + b.to_string() + ", " + c.to_string() + ")"; }
};

/// (a,b,c,d,e,f; A,B,C,D,E,F): zx = ax^2+bxy+cy^2+dxz+eyz+fz^2, zy likewise in capitals.
struct ParamTuple3D {
  Scalar a, b, c, d, e, f, A, B, C, D, E, F;

  static constexpr std::array<const char*, 12> names = {"a", "b", "c", "d", "e", "f", "A", "B", "C", "D", "E", "F"};

  static ParamTuple3D zero(const Field& k) {
    Scalar z = k.zero();
    return {z, z, z, z, z, z, z, z, z, z, z, z};
  }

  std::array<Scalar*, 12> slots() { return {&a, &b, &c, &d, &e, &f, &A, &B, &C, &D, &E, &F}; }
  std::array<const Scalar*, 12> slots() const { return {&a, &b, &c, &d, &e, &f, &A, &B, &C, &D, &E, &F}; }

  Scalar& at(const std::string& name) {
    for (std::size_t i = 0; i < 12; ++i)
      if (name == names[i]) return *slots()[i];
    throw Error(ErrorCode::InvalidArgument, "unknown parameter " + name);
  }
  const Scalar& at(const std::string& name) const { return const_cast<ParamTuple3D*>(this)->at(name); }

  Field field() const {
    Field k = a.field();
    for (auto* s : slots()) k = join(k, s->field());
    return k;
  }
  ParamTuple3D lift(const Field& k) const {
    ParamTuple3D out = *this;
    for (auto* s : out.slots()) *s = s->lift(k);
    return out;
  }
  bool operator==(const ParamTuple3D& o) const {
    auto x = slots(), y = o.slots();
    for (std::size_t i = 0; i < 12; ++i)
      if (!(*x[i] == *y[i])) return false;
    return true;
  }
  std::string to_string() const {
    std::string s = "(";
    auto x = slots();
    for (std::size_t i = 0; i < 12; ++i) s += (i == 0 ? "" : i == 6 ? "; " : ", ") + x[i]->to_string();
    return s + ")";
  }
};

struct Presentation {
  AlphabetPtr alphabet;
  Field field;
  std::vector<NCPoly> relations;
  std::string label;

  RewriteSystem system() const { return RewriteSystem::from_relations(relations); }
  RewriteSystem completed(int d) const { return complete(system(), d).system; }
};

inline const AlphabetPtr& alphabet_xz() {
  static const AlphabetPtr al = make_alphabet({"x", "z"});
  return al;
}
inline const AlphabetPtr& alphabet_yxz() {
  static const AlphabetPtr al = make_alphabet({"y", "x", "z"});
  return al;
}
inline const AlphabetPtr& alphabet_yxw() {
  static const AlphabetPtr al = make_alphabet({"y", "x", "w"});
  return al;
}

namespace detail {

inline NCPoly word_poly(const AlphabetPtr& al, const Field& k, std::initializer_list<std::size_t> idx) {
  return NCPoly::monomial(al, make_word(*al, idx), k.one());
}

}  // namespace detail

inline Presentation build_C(const ParamTuple2D& p) {
  const auto& al = alphabet_xz();
  Field k = p.field();
  auto w = [&](std::initializer_list<std::size_t> i) { return detail::word_poly(al, k, i); };
  NCPoly r = w({1, 0}) - p.a * w({0, 0}) - p.b * w({0, 1}) - p.c * w({1, 1});
  return Presentation{al, k, {r}, "C" + p.to_string()};
}

/// Generators ordered y < x < z.
inline Presentation build_T(const ParamTuple3D& p) {
  const auto& al = alphabet_yxz();
  Field k = p.field();
  auto w = [&](std::initializer_list<std::size_t> i) { return detail::word_poly(al, k, i); };
  const std::size_t y = 0, x = 1, z = 2;
  auto tau = [&](const Scalar& c1, const Scalar& c2, const Scalar& c3, const Scalar& c4, const Scalar& c5, const Scalar& c6) {
    return c1 * w({x, x}) + c2 * w({x, y}) + c3 * w({y, y}) + c4 * w({x, z}) + c5 * w({y, z}) + c6 * w({z, z});
  };
  NCPoly r1 = w({z, x}) - tau(p.a, p.b, p.c, p.d, p.e, p.f);
  NCPoly r2 = w({z, y}) - tau(p.A, p.B, p.C, p.D, p.E, p.F);
  NCPoly r3 = w({x, y}) - w({y, x});
  return Presentation{al, k, {r1, r2, r3}, "T" + p.to_string()};
}

/// Generators ordered y < x < w.
inline Presentation build_Tgh(const Scalar& g, const Scalar& h) {
  Field k = join(g.field(), h.field());
  if (k.characteristic() == 2) throw Error(ErrorCode::CharTwo, "T(g,h) needs characteristic other than 2");
  const auto& al = alphabet_yxw();
  auto w = [&](std::initializer_list<std::size_t> i) { return detail::word_poly(al, k, i); };
  const std::size_t y = 0, x = 1, v = 2;
  NCPoly r1 = w({v, y}) + w({y, v}) - w({x, x}) - g * w({y, y});
  NCPoly r2 = w({v, v}) + h * w({y, y});
  NCPoly r3 = w({x, y}) - w({y, x});
  return Presentation{al, k, {r1, r2, r3}, "T(g,h)=(" + g.to_string() + ", " + h.to_string() + ")"};
}

/// dim T_m = (m+1)(m+2)/2 for every m <= n.
inline bool twisting_axiom_check(const ParamTuple3D& p, int n) {
  if (n < 0 || n > 4) throw Error(ErrorCode::InvalidArgument, "twisting check supports degrees up to 4");
  auto rs = build_T(p).completed(std::max(n, 2));
  auto h = hilbert(rs, n);
  for (int m = 0; m <= n; ++m)
    if (h.dims[static_cast<std::size_t>(m)] != static_cast<std::size_t>((m + 1) * (m + 2) / 2)) return false;
  return true;
}

inline bool ideal_membership(const NCPoly& P, const RewriteSystem& rs, int d) {
  if (!P.is_homogeneous()) throw Error(ErrorCode::InvalidArgument, "membership needs a homogeneous element");
  if (P.degree() > d) throw Error(ErrorCode::InvalidArgument, "element degree exceeds the bound");
  rs.require_completed(d);
  return rs.reduce(P).is_zero();
}

struct OreData {
  ScalarMatrix sigma;            // rows: sigma(x) = d x + e y, sigma(y) = D x + E y
  std::array<Scalar, 6> delta;   // a, b, c, A, B, C

  static OreData from_params(const ParamTuple3D& p) {
    Field k = p.field();
    return OreData{ScalarMatrix::from_rows(k, {{p.d, p.e}, {p.D, p.E}}), {p.a, p.b, p.c, p.A, p.B, p.C}};
  }
};

/// Coefficients of x^3, x^2y, xy^2, y^3 in sigma(x)delta(y) + delta(x)y - sigma(y)delta(x) - delta(y)x,
/// computed in k[x,y].
inline std::array<Scalar, 4> derivation_defect(const OreData& o) {
  Field k = o.sigma.field();
  for (const auto& s : o.delta) k = join(k, s.field());
  using Cubic = std::array<Scalar, 4>;
  auto mul = [&](const Scalar& l0, const Scalar& l1, const Scalar& q0, const Scalar& q1, const Scalar& q2) {
    return Cubic{l0 * q0, l0 * q1 + l1 * q0, l0 * q2 + l1 * q1, l1 * q2};
  };
  const auto& s = o.sigma;
  const auto& dl = o.delta;
  Scalar zero = k.zero(), one = k.one();
  Cubic t1 = mul(s(0, 0), s(0, 1), dl[3], dl[4], dl[5]);
  Cubic t2 = mul(zero, one, dl[0], dl[1], dl[2]);
  Cubic t3 = mul(s(1, 0), s(1, 1), dl[0], dl[1], dl[2]);
  Cubic t4 = mul(one, zero, dl[3], dl[4], dl[5]);
  Cubic out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = (t1[i] + t2[i] - t3[i] - t4[i]).lift(k);
  return out;
}

inline bool derivation_check(const OreData& o) {
  for (const auto& v : derivation_defect(o))
    if (!v.is_zero()) return false;
  return true;
}

struct EllipticForm {
  Scalar beta, gamma, g, h;

  static EllipticForm from(const Scalar& a, const Scalar& B, const Scalar& c, const Scalar& C) {
    Field k = join(join(a.field(), B.field()), join(c.field(), C.field()));
    if (k.characteristic() == 2) throw Error(ErrorCode::CharTwo, "elliptic normal form needs characteristic other than 2");
    EllipticForm f;
    f.beta = 2 - B;
    f.gamma = C + 2 * (a - 1);
    f.g = f.gamma - f.beta * f.beta / 4;
    f.h = c - (a - 1) * (C + a - 1);
    return f;
  }
};

/// T(a, (1-a)(2-B), c, -1, 0, 1; 1, B, C, 0, -1, 0).
inline ParamTuple3D elliptic_tuple(const Scalar& a, const Scalar& B, const Scalar& c, const Scalar& C) {
  Field k = join(join(a.field(), B.field()), join(c.field(), C.field()));
  ParamTuple3D p = ParamTuple3D::zero(k);
  p.a = a.lift(k);
  p.b = ((1 - a) * (2 - B)).lift(k);
  p.c = c.lift(k);
  p.d = k.from_int(-1);
  p.f = k.one();
  p.A = k.one();
  p.B = B.lift(k);
  p.C = C.lift(k);
  p.E = k.from_int(-1);
  return p;
}

/// Images of y, x, w in k<y,x,z> taking T(g,h) onto the elliptic tuple's algebra.
inline std::vector<NCPoly> elliptic_change_of_variables(const Scalar& a, const Scalar& B) {
  Field k = join(a.field(), B.field());
  const auto& al = alphabet_yxz();
  NCPoly y = NCPoly::letter(al, k, 0), x = NCPoly::letter(al, k, 1), z = NCPoly::letter(al, k, 2);
  Scalar half_beta = (2 - B) / 2;
  return {y, x - half_beta * y, -x + (a - 1) * y + z};
}

struct Degree3Overlaps {
  NCPoly G1, G2;  // reduced S-differences at z^3 and z^2 y
};

/// Needs f = 1 and D = F = 0, so the rules are z^2 -> ..., zy -> ..., xy -> yx.
inline Degree3Overlaps degree3_overlap_elements(const ParamTuple3D& p) {
  if (!p.f.is_one() || !p.D.is_zero() || !p.F.is_zero())
    throw Error(ErrorCode::ConstraintError, "degree-3 overlaps need f = 1 and D = F = 0");
  RewriteSystem rs = build_T(p).system();
  const auto& al = alphabet_yxz();
  Word zz = make_word(*al, {2, 2}), zy = make_word(*al, {2, 0});
  const NCPoly* tzz = nullptr;
  const NCPoly* tzy = nullptr;
  for (const auto& r : rs.rules()) {
    if (r.high == zz) tzz = &r.tail;
    if (r.high == zy) tzy = &r.tail;
  }
  if (!tzz || !tzy) throw Error(ErrorCode::ConstraintError, "unexpected leading words");
  Field k = rs.field();
  NCPoly z = NCPoly::letter(al, k, 2), y = NCPoly::letter(al, k, 0);
  NCPoly g1 = rs.reduce(*tzz * z - z * *tzz);
  NCPoly g2 = rs.reduce(*tzz * y - z * *tzy);
  return {g1, g2};
}

}  // namespace ttp
