#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttp/families.hpp"
#include "ttp/sequences.hpp"

namespace ttp {

// ---------------------------------------------------------------------------
// Two generators

/// m_ij = coefficient of v_i v_j in a quadratic relation on two letters.
inline ScalarMatrix phi_matrix(const NCPoly& rel) {
  const auto& al = *rel.alphabet();
  if (al.size() != 2) throw Error(ErrorCode::InvalidArgument, "phi matrix needs two generators");
  if (!rel.is_zero() && (rel.degree() != 2 || !rel.is_homogeneous())) throw Error(ErrorCode::NotQuadratic, "relation not quadratic");
  ScalarMatrix m(rel.field(), 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m.set(i, j, rel.coeff(make_word(al, {i, j})));
  return m;
}

/// N^t * M * N = M_prime. In the witnesses built below M is the canonical
/// form and M_prime the matrix of the input relation.
struct CongruenceData {
  ScalarMatrix M, N, M_prime;
};

inline bool congruence_verify(const CongruenceData& cd) {
  if (cd.N.rows() != cd.N.cols()) throw Error(ErrorCode::SingularN, "N is not square");
  if (det(cd.N).is_zero()) throw Error(ErrorCode::SingularN, "N is singular");
  return cd.N.transpose() * cd.M * cd.N == cd.M_prime;
}

inline ScalarMatrix skew_form(const Scalar& q) {
  Field k = q.field();
  return ScalarMatrix::from_rows(k, {{k.zero(), -q}, {k.one(), k.zero()}});
}
inline ScalarMatrix jordan_form(const Field& k) {
  return ScalarMatrix::from_rows(k, {{k.zero(), k.from_int(-1)}, {k.one(), k.from_int(-1)}});
}
inline ScalarMatrix c_form(const ParamTuple2D& p) {
  Field k = p.field();
  return ScalarMatrix::from_rows(k, {{-p.a, -p.b}, {k.one(), -p.c}});
}

/// (a, b, c) with c != 0 is isomorphic to (ac, b, 1) via z -> z / c.
inline ParamTuple2D normalize_2d(const ParamTuple2D& p) {
  if (p.c.is_zero()) return p;
  Field k = p.field();
  return ParamTuple2D{(p.a * p.c).lift(k), p.b.lift(k), k.one()};
}

struct TTP2DVerdict {
  enum class Kind { IsTTP, NotTTP, Unknown } kind = Kind::IsTTP;
  int bound = 0;
  bool exact = false;
  ParamTuple2D normalized;
  std::optional<int> zero_at;
  std::optional<NCPoly> relation;     // holds in the normalized algebra
  std::optional<NCPoly> dependence;   // among x^i z^j at the same degree, when found
  std::optional<HilbertProfile> hilbert;
  std::vector<std::string> notes;

  std::string kind_name() const { return kind == Kind::IsTTP ? "IsTTP" : kind == Kind::NotTTP ? "NotTTP" : "Unknown"; }
};

namespace detail {

inline std::optional<NCPoly> pbw_dependence_2d(const RewriteSystem& rs, int n) {
  const auto& al = rs.alphabet();
  Field k = rs.field();
  auto nw = normal_words(rs, n)[static_cast<std::size_t>(n)];
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < nw.size(); ++i) idx[nw[i].letters] = i;
  std::vector<Word> mono;
  for (int i = n; i >= 0; --i) {
    std::vector<std::size_t> l(static_cast<std::size_t>(i), 0);
    l.insert(l.end(), static_cast<std::size_t>(n - i), 1);
    mono.push_back(make_word(*al, l));
  }
  ScalarMatrix m(k, nw.size(), mono.size());
  for (std::size_t j = 0; j < mono.size(); ++j) {
    NCPoly nf = rs.reduce(NCPoly::monomial(al, mono[j], k.one()));
    for (const auto& [w, c] : nf.terms()) m.set(idx.at(w.letters), j, c);
  }
  auto rk = rank_kernel(m);
  if (rk.kernel.cols() == 0) return std::nullopt;
  NCPoly dep(al, m.field());
  for (std::size_t j = 0; j < mono.size(); ++j) dep.add_term(mono[j], rk.kernel(j, 0));
  return dep;
}

}  // namespace detail

inline TTP2DVerdict classify_2d_ttp(const ParamTuple2D& p, int N = 50, int max_degree = 8) {
  TTP2DVerdict v;
  v.bound = N;
  v.normalized = normalize_2d(p);
  if (p.c.is_zero() || p.a.is_zero()) {
    v.exact = true;
    v.notes.push_back(p.c.is_zero() ? "c = 0: one-sided twist" : "a = 0: one-sided twist");
    return v;
  }
  const Scalar& a = v.normalized.a;
  const Scalar& b = v.normalized.b;
  auto rep = fn_nonvanishing(a, b, N);
  v.exact = rep.exact;
  if (rep.all_nonzero()) {
    v.notes.push_back("f_n(ac, b) != 0 for n <= " + std::to_string(N) + (rep.exact ? " (periodic, so for all n)" : ""));
    return v;
  }
  int n = *rep.zero_at;
  v.kind = TTP2DVerdict::Kind::NotTTP;
  v.zero_at = n;
  v.notes.push_back("f_" + std::to_string(n) + "(ac, b) = 0");
  auto s = efgh(a, b, n);
  const auto& al = alphabet_xz();
  Field k = v.normalized.field();
  std::vector<std::size_t> zxnz{1};
  zxnz.insert(zxnz.end(), static_cast<std::size_t>(n), 0);
  zxnz.push_back(1);
  std::vector<std::size_t> xn1z(static_cast<std::size_t>(n + 1), 0), xn2(static_cast<std::size_t>(n + 2), 0);
  xn1z.push_back(1);
  NCPoly rel = s.e * NCPoly::monomial(al, make_word(*al, zxnz), k.one()) - s.g * NCPoly::monomial(al, make_word(*al, xn1z), k.one()) +
               a * s.e * NCPoly::monomial(al, make_word(*al, xn2), k.one());
  if (!rel.is_zero()) v.relation = rel;  // all three coefficients vanish when e_n = 0
  if (n + 2 <= max_degree) {
    auto rs = build_C(v.normalized).completed(n + 2);
    v.dependence = detail::pbw_dependence_2d(rs, n + 2);
    if (n == 1 && (b + 1).is_zero()) v.hilbert = hilbert(build_C(v.normalized).completed(5), 5);
  }
  return v;
}

struct IsoType2D {
  enum class Kind { SkewPoly, Jordan, ZxZero, XsqZero } kind = Kind::SkewPoly;
  std::optional<Scalar> q;  // canonical representative of {q, 1/q}
  CongruenceData witness;
  ParamTuple2D normalized;

  std::string kind_name() const {
    switch (kind) {
      case Kind::SkewPoly: return "SkewPoly(" + q->to_string() + ")";
      case Kind::Jordan: return "Jordan";
      case Kind::ZxZero: return "ZxZero";
      case Kind::XsqZero: return "XsqZero";
    }
    return "";
  }
};

namespace detail {

inline Scalar skew_label(const Scalar& q) {
  if (q.is_zero()) return q;
  Scalar r = q.inv();
  return canonical_less(r, q) ? r : q;
}

inline Scalar root_of(const Scalar& x) {
  if (auto r = sqrt_in_field(x)) return *r;
  return sqrt_adjoin(x).root;
}

inline ScalarMatrix mat2(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  Field k = join(join(a.field(), b.field()), join(c.field(), d.field()));
  return ScalarMatrix::from_rows(k, {{a, b}, {c, d}});
}

}  // namespace detail

inline IsoType2D graded_iso_type_2d(const ParamTuple2D& p) {
  if (classify_2d_ttp(p).kind == TTP2DVerdict::Kind::NotTTP)
    throw Error(ErrorCode::ConstraintError, "parameters do not give a twisted tensor product");
  IsoType2D out;
  out.normalized = normalize_2d(p);
  const ParamTuple2D& n = out.normalized;
  Field k = n.field();
  Scalar zero = k.zero(), one = k.one();
  ScalarMatrix MC = c_form(n);
  auto finish = [&](IsoType2D::Kind kind, std::optional<Scalar> q, const ScalarMatrix& M, const ScalarMatrix& N) {
    out.kind = kind;
    out.q = q;
    Field w = join(join(M.field(), N.field()), MC.field());
    out.witness = CongruenceData{M.lift(w), N.lift(w), MC.lift(w)};
    return out;
  };
  if (n.c.is_zero()) {
    if (!n.b.is_one()) {
      Scalar s = n.a.is_zero() ? zero : -n.a / (1 - n.b);
      auto N = detail::mat2(one, zero, s, one);
      if (n.b.is_zero()) return finish(IsoType2D::Kind::ZxZero, std::nullopt, skew_form(zero), N);
      return finish(IsoType2D::Kind::SkewPoly, detail::skew_label(n.b), skew_form(n.b), N);
    }
    if (n.a.is_zero()) return finish(IsoType2D::Kind::SkewPoly, one, skew_form(one), ScalarMatrix::identity(k, 2));
    Scalar r = detail::root_of(n.a);
    return finish(IsoType2D::Kind::Jordan, std::nullopt, jordan_form(r.field()), detail::mat2(zero, -r.inv(), r, zero));
  }
  const Scalar& a = n.a;
  const Scalar& b = n.b;
  if ((b + 1).is_zero()) {
    if (k.characteristic() == 2) throw Error(ErrorCode::CharTwo, "b = -1 branch needs characteristic other than 2");
    Scalar r = detail::root_of(1 - a);
    Scalar half = r.field().one() / 2;
    auto N = detail::mat2((1 + r) / 2, -half, r - 1, r.field().one());
    Scalar m1 = k.from_int(-1);
    return finish(IsoType2D::Kind::SkewPoly, m1, skew_form(m1), N);
  }
  if ((4 * a - (b - 1) * (b - 1)).is_zero()) {
    Scalar r = (b - 1) / 2;  // r^2 = a
    return finish(IsoType2D::Kind::Jordan, std::nullopt, jordan_form(k), detail::mat2(1 + r, zero, r, one));
  }
  auto roots = solve_quadratic(a + b, 2 * a - b * b - 1, a + b);
  Scalar q = roots.roots[0];
  if (roots.roots.size() == 2 && !q.is_zero()) q = detail::skew_label(q);
  Scalar bq = b.lift(q.field());
  auto N = detail::mat2((bq * q - 1) / (q * q - 1), (q - 1).inv(), (bq - q) / (q + 1), q.field().one());
  if (q.is_zero()) return finish(IsoType2D::Kind::ZxZero, std::nullopt, skew_form(q), N);
  return finish(IsoType2D::Kind::SkewPoly, q, skew_form(q), N);
}

inline bool is_canonical_2d(const ParamTuple2D& p) {
  return p.c.is_one() || (p.c.is_zero() && (p.a.is_one() || p.a.is_zero()));
}

inline bool rigidity_check_2d(const ParamTuple2D& p, const ParamTuple2D& p2) {
  if (!is_canonical_2d(p) || !is_canonical_2d(p2)) throw Error(ErrorCode::NotCanonical, "expected (a,b,1), (1,b,0) or (0,b,0)");
  return p == p2;
}

// ---------------------------------------------------------------------------
// Three generators

/// x -> p11 x + p12 y, y -> p21 x + p22 y, z -> lambda z.
struct Substitution {
  std::string label;
  ScalarMatrix P;
  Scalar lambda;

  static Substitution linear(std::string label, const ScalarMatrix& P) { return {std::move(label), P, P.field().one()}; }
  static Substitution scale_z(const Scalar& l) {
    return {"z -> " + l.to_string() + "*z", ScalarMatrix::identity(l.field(), 2), l};
  }

  std::vector<NCPoly> images() const { return images_of(P, lambda); }
  std::vector<NCPoly> inverse_images() const { return images_of(inverse(P), lambda.inv()); }

  std::string to_string() const {
    auto lin = [](const Scalar& c, const char* v) -> std::string {
      if (c.is_zero()) return "";
      if (c.is_one()) return v;
      return "(" + c.to_string() + ")*" + v;
    };
    auto comb = [&](const Scalar& cx, const Scalar& cy) {
      std::string s = lin(cx, "x"), t = lin(cy, "y");
      if (s.empty()) return t;
      if (t.empty()) return s;
      return s + " + " + t;
    };
    return label + ": x -> " + comb(P(0, 0), P(0, 1)) + ", y -> " + comb(P(1, 0), P(1, 1)) + ", z -> " + lin(lambda, "z");
  }

 private:
  static std::vector<NCPoly> images_of(const ScalarMatrix& P, const Scalar& l) {
    const auto& al = alphabet_yxz();
    Field k = join(P.field(), l.field());
    NCPoly y = NCPoly::letter(al, k, 0), x = NCPoly::letter(al, k, 1), z = NCPoly::letter(al, k, 2);
    return {P(1, 0) * x + P(1, 1) * y, P(0, 0) * x + P(0, 1) * y, l * z};
  }
};

/// Reads (a..F) back from relations spanning the same degree-2 space as a
/// T presentation (xy - yx included).
inline ParamTuple3D extract_params(const std::vector<NCPoly>& rels) {
  const auto& al = alphabet_yxz();
  Field k = Field::rationals();
  bool first = true;
  for (const auto& r : rels) {
    if (!(*r.alphabet() == *al)) throw Error(ErrorCode::AlphabetMismatch, "expected generators y, x, z");
    k = first ? r.field() : join(k, r.field());
    first = false;
  }
  const std::size_t y = 0, x = 1, z = 2;
  // columns: zx zy xx xy yy xz yz zz yx
  std::vector<Word> cols = {make_word(*al, {z, x}), make_word(*al, {z, y}), make_word(*al, {x, x}),
                            make_word(*al, {x, y}), make_word(*al, {y, y}), make_word(*al, {x, z}),
                            make_word(*al, {y, z}), make_word(*al, {z, z}), make_word(*al, {y, x})};
  auto row_of = [&](const NCPoly& r) {
    if (!r.is_zero() && (r.degree() != 2 || !r.is_homogeneous())) throw Error(ErrorCode::NotQuadratic, "relation not quadratic");
    std::vector<Scalar> v;
    for (const auto& w : cols) v.push_back(r.coeff(w).lift(k));
    return v;
  };
  std::vector<std::vector<Scalar>> m;
  for (const auto& r : rels) m.push_back(row_of(r));
  detail::GenOps ops{k};
  auto a = m;
  std::size_t rank0 = detail::rref(a, 9, ops, false).size();
  NCPoly comm = NCPoly::monomial(al, cols[3], k.one()) - NCPoly::monomial(al, cols[8], k.one());
  a = m;
  a.push_back(row_of(comm));
  if (detail::rref(a, 9, ops, false).size() != rank0 || rank0 != 3)
    throw Error(ErrorCode::ConstraintError, "relations do not span a twisted presentation");
  for (auto& row : m) {
    row[3] = row[3] + row[8];
    row.pop_back();
  }
  auto piv = detail::rref(m, 8, ops, false);
  if (piv.size() != 2 || piv[0] != 0 || piv[1] != 1)
    throw Error(ErrorCode::ConstraintError, "relations cannot be solved for zx and zy");
  ParamTuple3D p = ParamTuple3D::zero(k);
  Scalar* lower[6] = {&p.a, &p.b, &p.c, &p.d, &p.e, &p.f};
  Scalar* upper[6] = {&p.A, &p.B, &p.C, &p.D, &p.E, &p.F};
  for (std::size_t i = 0; i < 6; ++i) {
    *lower[i] = -m[0][2 + i];
    *upper[i] = -m[1][2 + i];
  }
  return p;
}

inline ParamTuple3D apply_substitution(const ParamTuple3D& p, const Substitution& s) {
  std::vector<NCPoly> out;
  auto im = s.images();
  for (const auto& r : build_T(p).relations) out.push_back(substitute(r, im));
  return extract_params(out);
}

/// D = F = 0, e, f in {0,1}; e = 0 forces A in {0,1}; e = A = 0 forces C in {0,1}; e = 1 forces d = E.
inline bool satisfies_jnf(const ParamTuple3D& p) {
  auto bit = [](const Scalar& s) { return s.is_zero() || s.is_one(); };
  if (!p.D.is_zero() || !p.F.is_zero() || !bit(p.e) || !bit(p.f)) return false;
  if (p.e.is_one()) return p.d == p.E;
  if (!bit(p.A)) return false;
  return !p.A.is_zero() || bit(p.C);
}

struct JNFResult {
  ParamTuple3D normal_form;
  std::vector<Substitution> trace;
  // Empty when a normal form was reached. Otherwise the (f, F) column is not
  // an eigenvector of [[d,e],[D,E]] and no normal form exists.
  std::optional<std::string> obstruction;
};

inline JNFResult jordan_normal_form_3d(const ParamTuple3D& p) {
  JNFResult res{p, {}, std::nullopt};
  if (satisfies_jnf(p)) return res;
  ParamTuple3D cur = p;
  auto apply = [&](const Substitution& s) {
    cur = apply_substitution(cur.lift(join(cur.field(), join(s.P.field(), s.lambda.field()))), s);
    res.trace.push_back(s);
  };
  Field k = cur.field();
  Scalar zero = k.zero(), one = k.one();
  if (!cur.F.is_zero()) {
    apply(Substitution::linear("swap x and y", detail::mat2(zero, one, one, zero)));
    apply(Substitution::scale_z(cur.f.inv()));
    if (!cur.F.is_zero()) {
      Scalar s = cur.F;
      apply(Substitution::linear("shear y -> y + F'x", detail::mat2(one, zero, s, one)));
    }
  } else if (!cur.f.is_zero() && !cur.f.is_one()) {
    apply(Substitution::scale_z(cur.f.inv()));
  }
  k = cur.field();
  zero = k.zero();
  one = k.one();
  if (cur.f.is_one()) {
    if (!cur.D.is_zero()) {
      res.normal_form = cur;
      res.obstruction = "z^2 coefficient vector (1, 0) is not an eigenvector of [[d, e], [D, E]] (D = " + cur.D.to_string() + ")";
      return res;
    }
    if (!cur.e.is_zero() && !cur.e.is_one()) {
      if (cur.d == cur.E) {
        apply(Substitution::linear("rescale y", detail::mat2(one, zero, zero, cur.e.inv())));
      } else {
        apply(Substitution::linear("conjugate", detail::mat2(one, cur.e / (cur.E - cur.d), zero, one)));
      }
    } else if (cur.e.is_one() && cur.d != cur.E) {
      apply(Substitution::linear("conjugate", detail::mat2(one, cur.e / (cur.E - cur.d), zero, one)));
    }
  } else {
    bool upper_ok = cur.D.is_zero() && (cur.e.is_zero() || (cur.e.is_one() && cur.d == cur.E));
    if (!upper_ok) {
      QuadraticRoots roots;
      try {
        roots = solve_quadratic(one, -(cur.d + cur.E), cur.d * cur.E - cur.e * cur.D);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Unsupported) throw;
        res.normal_form = cur;
        res.obstruction = std::string("eigenvalues not available: ") + e.what();
        return res;
      }
      Field kk = roots.roots[0].field();
      Scalar d = cur.d.lift(kk), e = cur.e.lift(kk), D = cur.D.lift(kk), E = cur.E.lift(kk);
      Scalar z0 = kk.zero(), o = kk.one();
      auto eigvec = [&](const Scalar& l) -> std::pair<Scalar, Scalar> {
        if (!(d - l).is_zero() || !e.is_zero()) return {e, l - d};
        return {E - l, -D};
      };
      if (roots.roots.size() == 2) {
        auto [v1x, v1y] = eigvec(roots.roots[0]);
        auto [v2x, v2y] = eigvec(roots.roots[1]);
        apply(Substitution::linear("diagonalize", detail::mat2(v1x, v2x, v1y, v2y)));
      } else {
        const Scalar& l = roots.roots[0];
        bool scalar = e.is_zero() && D.is_zero() && (d - l).is_zero() && (E - l).is_zero();
        if (!scalar) {
          // w = e1 unless (L - l) e1 = 0
          Scalar wx = o, wy = z0;
          Scalar vx = d - l, vy = D;
          if (vx.is_zero() && vy.is_zero()) {
            wx = z0;
            wy = o;
            vx = e;
            vy = E - l;
          }
          apply(Substitution::linear("Jordan block", detail::mat2(vx, wx, vy, wy)));
        }
      }
    }
  }
  k = cur.field();
  if (cur.e.is_zero() && !cur.A.is_zero() && !cur.A.is_one())
    apply(Substitution::linear("y -> A'y", detail::mat2(k.one(), k.zero(), k.zero(), cur.A)));
  if (cur.e.is_zero() && cur.A.is_zero() && !cur.C.is_zero() && !cur.C.is_one())
    apply(Substitution::linear("y -> C'^-1 y", detail::mat2(k.one(), k.zero(), k.zero(), cur.C.inv())));
  if (!satisfies_jnf(cur)) throw Error(ErrorCode::ConstraintError, "normalization did not reach Jordan normal form: " + cur.to_string());
  res.normal_form = cur;
  return res;
}

/// Six equations whose joint vanishing (with A = 0) is G2 = 0.
inline std::array<Scalar, 6> reducible_system(const ParamTuple3D& p) {
  const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d, &e = p.e, &B = p.B, &C = p.C, &E = p.E;
  return {E * (1 - B - E),
          E * (-d - B + d * E),
          B * (1 - d - B) - a * (1 - E * E),
          E * (C + C * E + e - e * E),
          C * (1 - d - 2 * B - B * E) - b * (1 - E * E) - e * B,
          (1 + E) * (-c * (1 - E) - C * C) - e * C};
}

/// First matching reducible case label ("i".."vii"), assuming A = 0.
inline std::optional<std::string> reducible_case(const ParamTuple3D& p) {
  const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d, &e = p.e, &B = p.B, &C = p.C, &E = p.E;
  auto z = [](const Scalar& s) { return s.is_zero(); };
  if (!z(p.A)) return std::nullopt;
  if (z(a - B * (1 - d - B)) && z(b) && z(c) && z(e) && z(C) && z(E)) return "i";
  if (z(e) && z(B) && z(C) && E.is_one()) return "ii";
  if (z(d + 1) && z(B - 2) && z(e) && z(C) && z(E + 1)) return "iii";
  if (z(a - B * (1 - d - B)) && z(b - (1 - d - 2 * B)) && z(c + 1) && C.is_one() && z(e) && z(E)) return "iv";
  if (z(e) && z(d + 1) && z(E + 1) && z(B - 2) && C.is_one()) return "v";
  if (e.is_one() && z(d) && z(E) && z(a - B * (1 - B)) && z(b - (C - B - 2 * B * C)) && z(c + C * (1 + C))) return "vi";
  if (z(B) && z(C) && e.is_one() && d.is_one() && E.is_one()) return "vii";
  return std::nullopt;
}

inline std::string ore_case(const ParamTuple3D& p) {
  if (p.e.is_zero()) {
    bool d1 = p.d.is_one(), E1 = p.E.is_one();
    if (d1 && E1) return "1(i)";
    if (!d1 && E1) return "1(ii)";
    if (d1) return "1(iii)";
    return "1(iv)";
  }
  return p.d.is_one() ? "2(i)" : "2(ii)";
}

struct TTPType3D {
  enum class Kind { Ore, Reducible, Elliptic, NotTTP, UnknownBeyondBound } kind = Kind::NotTTP;
  std::string case_id;
  ParamTuple3D normal_form;
  std::vector<Substitution> trace;
  std::optional<EllipticForm> elliptic;
  std::vector<std::string> witnesses;
  int bound = 0;
  bool exact = true;

  std::string kind_name() const {
    switch (kind) {
      case Kind::Ore: return "Ore";
      case Kind::Reducible: return "Reducible";
      case Kind::Elliptic: return "Elliptic";
      case Kind::NotTTP: return "NotTTP";
      case Kind::UnknownBeyondBound: return "UnknownBeyondBound";
    }
    return "";
  }
  bool is_ttp() const { return kind == Kind::Ore || kind == Kind::Reducible || kind == Kind::Elliptic; }
};

inline TTPType3D classify_3d(const ParamTuple3D& p, int N = 50) {
  TTPType3D out;
  out.bound = N;
  auto jnf = jordan_normal_form_3d(p);
  out.normal_form = jnf.normal_form;
  out.trace = jnf.trace;
  const ParamTuple3D& n = jnf.normal_form;
  auto dims = [&](int d) { return hilbert(build_T(n).completed(d), d).to_string(); };
  if (jnf.obstruction) {
    out.kind = TTPType3D::Kind::UnknownBeyondBound;
    out.exact = false;
    out.witnesses.push_back("no Jordan normal form: " + *jnf.obstruction);
    out.witnesses.push_back("Hilbert dims to degree 5: " + dims(5));
    return out;
  }
  if (n.f.is_zero()) {
    auto defect = derivation_defect(OreData::from_params(n));
    static const char* mono[4] = {"x^3", "x^2y", "xy^2", "y^3"};
    for (std::size_t i = 0; i < 4; ++i)
      if (!defect[i].is_zero()) {
        out.kind = TTPType3D::Kind::NotTTP;
        out.witnesses.push_back(std::string("coefficient of ") + mono[i] +
                                " in sigma(x)delta(y) + delta(x)y - sigma(y)delta(x) - delta(y)x is " + defect[i].to_string() +
                                ", not 0");
        return out;
      }
    out.kind = TTPType3D::Kind::Ore;
    out.case_id = ore_case(n);
    return out;
  }
  auto g = degree3_overlap_elements(n);
  if (g.G2.is_zero()) {
    auto rep = fn_nonvanishing(n.a, n.d, N);
    out.exact = rep.exact;
    if (!rep.all_nonzero()) {
      out.kind = TTPType3D::Kind::NotTTP;
      out.witnesses.push_back("G2 = 0 and f_" + std::to_string(*rep.zero_at) + "(a, d) = 0");
      out.witnesses.push_back("Hilbert dims to degree " + std::to_string(std::min(*rep.zero_at + 2, 6)) + ": " +
                              dims(std::min(*rep.zero_at + 2, 6)));
      return out;
    }
    auto c = reducible_case(n);
    if (!c) throw Error(ErrorCode::ConstraintError, "G2 = 0 but no reducible case matches " + n.to_string());
    out.kind = TTPType3D::Kind::Reducible;
    out.case_id = *c;
    out.witnesses.push_back("f_n(a, d) != 0 for n <= " + std::to_string(N) + (rep.exact ? " (periodic, so for all n)" : ""));
    return out;
  }
  struct Req {
    bool ok;
    const char* what;
    Scalar value;
  };
  Req reqs[] = {{n.e.is_zero(), "e = 0", n.e},
                {(n.d + 1).is_zero(), "d = -1", n.d},
                {n.A.is_one(), "A = 1", n.A},
                {(n.E + 1).is_zero(), "E = -1", n.E},
                {(n.b - (1 - n.a) * (2 - n.B)).is_zero(), "b = (1-a)(2-B)", n.b}};
  for (const auto& r : reqs)
    if (!r.ok) {
      out.kind = TTPType3D::Kind::NotTTP;
      out.witnesses.push_back(std::string("G2 != 0 requires ") + r.what + ", but the value is " + r.value.to_string());
      out.witnesses.push_back("Hilbert dims to degree 4: " + dims(4));
      return out;
    }
  out.kind = TTPType3D::Kind::Elliptic;
  if (n.field().characteristic() != 2) out.elliptic = EllipticForm::from(n.a, n.B, n.c, n.C);
  return out;
}

}  // namespace ttp
