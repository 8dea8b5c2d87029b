#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "ttp/classify.hpp"
#include "ttp/homology.hpp"

namespace ttp {

struct QuadraticDual {
  Presentation dual;
  std::vector<std::size_t> pairing;  // x_i^* is letter pairing[i] of the dual alphabet
  std::string convention = "<x*(x)y*(y), u v> = x*(u) y*(v)";
};

namespace detail {

inline std::vector<std::string> default_dual_names(const Alphabet& al) {
  std::vector<std::string> up;
  for (const auto& n : al.names()) {
    std::string u = n;
    for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    up.push_back(u);
  }
  bool clash = false;
  for (std::size_t i = 0; i < up.size(); ++i) clash = clash || al.index(up[i]).has_value();
  if (!clash) return up;
  std::vector<std::string> out;
  for (const auto& n : al.names()) out.push_back(n + "d");
  return out;
}

inline ScalarMatrix quadratic_relation_matrix(const std::vector<NCPoly>& rels, const Alphabet& al, const Field& k) {
  std::size_t n = al.size();
  ScalarMatrix m(k, rels.size(), n * n);
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (const auto& [w, c] : rels[r].terms()) m.set(r, w.at(0) * n + w.at(1), c.lift(k));
  return m;
}

}  // namespace detail

/// Relations orthogonal to the relation space under the letterwise pairing.
inline QuadraticDual quadratic_dual(const Presentation& alg, AlphabetPtr dual_alphabet = nullptr, std::vector<std::size_t> pairing = {}) {
  const Alphabet& al = *alg.alphabet;
  if (al.weighted()) throw Error(ErrorCode::NotQuadratic, "quadratic dual needs generators of degree one");
  for (const auto& r : alg.relations)
    if (!r.is_zero() && (r.degree() != 2 || !r.is_homogeneous())) throw Error(ErrorCode::NotQuadratic, "relation not quadratic: " + r.to_string());
  std::size_t n = al.size();
  if (!dual_alphabet) dual_alphabet = make_alphabet(detail::default_dual_names(al));
  if (dual_alphabet->size() != n) throw Error(ErrorCode::AlphabetMismatch, "dual alphabet has the wrong size");
  if (pairing.empty())
    for (std::size_t i = 0; i < n; ++i) pairing.push_back(i);
  Field k = alg.field;
  for (const auto& r : alg.relations) k = join(k, r.field());
  auto K = rank_kernel(detail::quadratic_relation_matrix(alg.relations, al, k)).kernel;
  QuadraticDual out;
  out.pairing = pairing;
  out.dual.alphabet = dual_alphabet;
  out.dual.field = k;
  out.dual.label = "dual of " + alg.label;
  for (std::size_t c = 0; c < K.cols(); ++c) {
    NCPoly p(dual_alphabet, k);
    for (std::size_t idx = 0; idx < n * n; ++idx)
      if (!K(idx, c).is_zero()) p.add_term(make_word(*dual_alphabet, {pairing[idx / n], pairing[idx % n]}), K(idx, c));
    out.dual.relations.push_back(p);
  }
  return out;
}

/// The two lists span the same subspace of degree-two elements.
inline bool same_quadratic_span(const std::vector<NCPoly>& a, const std::vector<NCPoly>& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  const Alphabet& al = *a[0].alphabet();
  Field k = a[0].field();
  for (const auto& p : a) k = join(k, p.field());
  for (const auto& p : b) k = join(k, p.field());
  auto ma = detail::quadratic_relation_matrix(a, al, k), mb = detail::quadratic_relation_matrix(b, al, k);
  std::vector<NCPoly> both = a;
  both.insert(both.end(), b.begin(), b.end());
  std::size_t r = rank(detail::quadratic_relation_matrix(both, al, k));
  return rank(ma) == r && rank(mb) == r;
}

struct KoszulVerdict {
  enum class Kind { KoszulToDegree, NotKoszul } kind = Kind::KoszulToDegree;
  int bound = 0;
  std::optional<std::pair<int, int>> witness;  // (i, j) with b_{i,j} != 0 and j != i
  BettiTable betti;
  std::optional<bool> hilbert_identity;        // H(t) H^!(-t) = 1 through the bound
  std::vector<std::string> notes;

  std::string kind_name() const {
    return kind == Kind::KoszulToDegree ? "KoszulToDegree(" + std::to_string(bound) + ")" : "NotKoszul";
  }
};

/// Coefficients of H(t) * H'(-t) through degree n equal 1, 0, 0, ...
inline bool hilbert_convolution_identity(const HilbertProfile& h, const HilbertProfile& hd, int n) {
  for (int m = 0; m <= n; ++m) {
    long s = 0;
    for (int j = 0; j <= m; ++j)
      s += (j % 2 ? -1 : 1) * static_cast<long>(hd.dims[static_cast<std::size_t>(j)]) * static_cast<long>(h.dims[static_cast<std::size_t>(m - j)]);
    if (s != (m == 0 ? 1 : 0)) return false;
  }
  return true;
}

/// Koszul to degree N: the minimal resolution has b_{i,j} = 0 for j != i, i, j <= N.
inline KoszulVerdict koszul_check(const Presentation& alg, int N) {
  auto rs = alg.completed(std::max(N, 2));
  KoszulVerdict v;
  v.bound = N;
  auto res = minimal_resolution(rs, N, N);
  v.betti = res.betti;
  for (const auto& [ij, b] : res.betti.b)
    if (b && ij.first != ij.second) {
      v.kind = KoszulVerdict::Kind::NotKoszul;
      v.witness = ij;
      v.notes.push_back("b_{" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "} = " + std::to_string(b));
      return v;
    }
  bool quadratic = !alg.alphabet->weighted();
  for (const auto& r : alg.relations) quadratic = quadratic && (r.is_zero() || r.degree() == 2);
  if (quadratic) {
    auto dual = quadratic_dual(alg);
    auto hd = hilbert(dual.dual.completed(std::max(N, 2)), N);
    v.hilbert_identity = hilbert_convolution_identity(hilbert(rs, N), hd, N);
    if (!*v.hilbert_identity) v.notes.push_back("H(t) H^!(-t) differs from 1");
  }
  return v;
}

namespace detail {

inline const AlphabetPtr& yoneda_alphabet() {
  static const AlphabetPtr al = make_alphabet({"chi", "nu", "omega", "rho"}, {1, 1, 1, 3});
  return al;
}
inline const AlphabetPtr& yoneda_alphabet_flat() {
  static const AlphabetPtr al = make_alphabet({"chi", "nu", "omega", "rho"});
  return al;
}
inline const AlphabetPtr& dual_alphabet_cno() {
  static const AlphabetPtr al = make_alphabet({"chi", "nu", "omega"});
  return al;
}
inline const AlphabetPtr& dual_alphabet_ocn() {
  static const AlphabetPtr al = make_alphabet({"omega", "chi", "nu"});
  return al;
}

// x* = chi, y* = nu, w* = omega; T(g,h) letters are ordered y, x, w.
inline std::vector<std::size_t> tgh_pairing(const Alphabet& dual) {
  return {*dual.index("nu"), *dual.index("chi"), *dual.index("omega")};
}

/// The six displayed quadratics on chi, nu, omega (and rho, when present).
inline std::vector<NCPoly> yoneda_quadratics(const AlphabetPtr& al, const Scalar& g, const Scalar& h) {
  Field k = join(g.field(), h.field());
  auto L = [&](const char* n) { return NCPoly::letter(al, k, *al->index(n)); };
  NCPoly chi = L("chi"), nu = L("nu"), om = L("omega");
  return {chi * nu + nu * chi, chi * om, om * chi, om * nu - nu * om, nu * om + chi * chi, nu * nu - h * om * om - g * chi * chi};
}

inline std::vector<NCPoly> yoneda_higher(const AlphabetPtr& al, const Field& k) {
  auto L = [&](const char* n) { return NCPoly::letter(al, k, *al->index(n)); };
  NCPoly chi = L("chi"), nu = L("nu"), om = L("omega"), rho = L("rho");
  return {chi * rho, nu * rho, rho * chi, rho * nu, om * rho + rho * om, rho * rho};
}

}  // namespace detail

struct YonedaReport {
  bool h_zero = false;
  bool dual_relations_match = false;  // h != 0
  bool square_normal_form = false;    // h != 0: (a chi + b omega)^2 -> -a^2 omega nu + b^2 omega^2
  bool bigraded_match = false;        // h = 0
  bool tail_dims = false;             // h = 0: dim E^{i,i} = dim E^{i,i+1} = 1 for 3 <= i <= N
  int bound = 0;
  BettiTable betti;
  std::map<std::pair<int, int>, std::size_t> presented;  // h = 0: bigraded dims of the presented algebra
  std::vector<std::string> notes;

  bool ok() const { return h_zero ? bigraded_match && tail_dims : dual_relations_match && square_normal_form; }
};

/// Normal forms, with omega < chi < nu, of chi^2, chi omega, omega chi and omega^2 in the h != 0 dual.
/// By bilinearity they settle (a chi + b omega)^2 for all a, b.
inline bool square_normal_form_check(const Scalar& g, const Scalar& h) {
  const auto& al = detail::dual_alphabet_ocn();
  auto dual = quadratic_dual(build_Tgh(g, h), al, detail::tgh_pairing(*al));
  auto rs = dual.dual.completed(2);
  Field k = rs.field();
  auto L = [&](const char* n) { return NCPoly::letter(al, k, *al->index(n)); };
  NCPoly chi = L("chi"), nu = L("nu"), om = L("omega");
  return rs.reduce(chi * chi) == -(om * nu) && rs.reduce(chi * om).is_zero() && rs.reduce(om * chi).is_zero() &&
         rs.reduce(om * om) == om * om;
}

inline YonedaReport yoneda_verify(const Scalar& g, const Scalar& h, int N) {
  Field k = join(g.field(), h.field());
  if (k.characteristic() == 2) throw Error(ErrorCode::CharTwo, "T(g,h) needs characteristic other than 2");
  YonedaReport rep;
  rep.bound = N;
  rep.h_zero = h.is_zero();
  if (!rep.h_zero) {
    const auto& al = detail::dual_alphabet_cno();
    auto dual = quadratic_dual(build_Tgh(g, h), al, detail::tgh_pairing(*al));
    rep.dual_relations_match = same_quadratic_span(dual.dual.relations, detail::yoneda_quadratics(al, g, h)) &&
                               dual.dual.relations.size() == 6;
    rep.square_normal_form = square_normal_form_check(g, h);
    if (!rep.dual_relations_match) rep.notes.push_back("dual relation space differs from the six quadratics");
    if (!rep.square_normal_form) rep.notes.push_back("square normal form differs");
    return rep;
  }
  auto res = minimal_resolution(build_Tgh(g, h).completed(N + 1), N, N + 1);
  rep.betti = res.betti;
  const auto& al = detail::yoneda_alphabet();
  std::vector<NCPoly> rels = detail::yoneda_quadratics(al, g, h);
  for (const auto& r : detail::yoneda_higher(al, k)) rels.push_back(r);
  auto E = complete(RewriteSystem::from_relations(rels), N).system;
  std::size_t rho = *al->index("rho");
  for (const auto& row : normal_words(E, N))
    for (const Word& w : row) {
      int j = w.degree;
      for (std::size_t t = 0; t < w.length(); ++t) j += (w.at(t) == rho);
      ++rep.presented[{w.degree, j}];
    }
  rep.bigraded_match = true;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N + 1; ++j) {
      auto it = rep.presented.find({i, j});
      std::size_t pd = it == rep.presented.end() ? 0 : it->second;
      if (pd != res.betti.at(i, j)) {
        rep.bigraded_match = false;
        rep.notes.push_back("E^{" + std::to_string(i) + "," + std::to_string(j) + "}: presented " + std::to_string(pd) + ", resolution " +
                            std::to_string(res.betti.at(i, j)));
      }
    }
  rep.tail_dims = true;
  NCPoly om = NCPoly::letter(al, k, *al->index("omega")), r = NCPoly::letter(al, k, rho);
  NCPoly pw = NCPoly::constant(al, k.one());
  for (int i = 1; i <= N; ++i) {
    pw = pw * om;
    if (i < 3) continue;
    bool dims = res.betti.at(i, i) == 1 && res.betti.at(i, i + 1) == 1;
    // omega^i and omega^(i-3) rho survive in the presented algebra
    NCPoly pr = NCPoly::constant(al, k.one());
    for (int t = 0; t < i - 3; ++t) pr = pr * om;
    bool alive = !E.reduce(pw).is_zero() && !E.reduce(pr * r).is_zero();
    if (!dims || !alive) {
      rep.tail_dims = false;
      rep.notes.push_back("homological degree " + std::to_string(i) + " breaks the rank-one pattern");
    }
  }
  return rep;
}

/// The h = 0 presentation with all four generators in degree one.
inline Presentation regraded_yoneda(const Scalar& g) {
  Field k = g.field();
  if (k.characteristic() == 2) throw Error(ErrorCode::CharTwo, "T(g,h) needs characteristic other than 2");
  const auto& al = detail::yoneda_alphabet_flat();
  std::vector<NCPoly> rels = detail::yoneda_quadratics(al, g, k.zero());
  for (const auto& r : detail::yoneda_higher(al, k)) rels.push_back(r);
  return Presentation{al, k, rels, "E(T(" + g.to_string() + ",0)) regraded"};
}

inline KoszulVerdict regraded_yoneda_koszul(const Scalar& g, int N) { return koszul_check(regraded_yoneda(g), N); }

struct GorensteinProfile {
  bool clean = false;  // homology of the dual complex is a single k at the top
  int length = 0;
  ExactnessProfile profile;
  std::optional<int> top_degree;  // internal degree of the surviving k
};

/// Exactness of Hom(P, T) for a finite resolution P of the trivial module.
inline GorensteinProfile gorenstein_check(const GradedComplex& res, int maxdeg) {
  if (res.tail || res.open_top) throw Error(ErrorCode::InvalidArgument, "Gorenstein check needs a finite resolution");
  GradedComplex dual = dual_complex(res);
  int lo = 0;
  for (const auto& m : dual.modules) lo = std::min(lo, m.min_shift());
  GorensteinProfile g;
  g.length = static_cast<int>(res.length()) - 1;
  g.profile = exactness_profile(dual, false, maxdeg + lo);
  const auto& H = g.profile.homology;
  if (H.size() == 1 && H.begin()->first.first == 0 && H.begin()->second == 1) {
    g.clean = true;
    g.top_degree = H.begin()->first.second;
  }
  return g;
}

struct ZeroDivisor {
  NCPoly u, v;        // u v = 0 with both nonzero
  std::string text;
};

/// Search u in degree one with small coefficients and v up to degree max_m with u v = 0 or v u = 0.
inline std::optional<ZeroDivisor> find_zero_divisor(const RewriteSystem& rs, int max_m, const std::vector<NCPoly>& extra = {}) {
  rs.require_completed(max_m + 1);
  detail::Pieces pc(rs);
  Field k = rs.field();
  std::size_t n = rs.alphabet()->size();
  std::vector<NCPoly> cands = extra;
  std::vector<long> digits(n, -2);
  for (;;) {
    std::size_t first = 0;
    while (first < n && digits[first] == 0) ++first;
    if (first < n && digits[first] == 1) {
      NCPoly u(rs.alphabet(), k);
      for (std::size_t i = 0; i < n; ++i) u += k.from_int(digits[i]) * NCPoly::letter(rs.alphabet(), k, i);
      cands.push_back(rs.reduce(u));
    }
    std::size_t i = 0;
    while (i < n && digits[i] == 2) digits[i++] = -2;
    if (i == n) break;
    ++digits[i];
  }
  for (const auto& u : cands) {
    if (u.is_zero()) continue;
    for (int m = 1; m <= max_m; ++m) {
      const auto& src = pc.words(m);
      for (Side side : {Side::Left, Side::Right}) {
        int dt = m + u.degree();
        const auto& tgt = pc.words(dt);
        ScalarMatrix M(k, tgt.size(), src.size());
        for (std::size_t a = 0; a < src.size(); ++a) {
          NCPoly mono = NCPoly::monomial(rs.alphabet(), src[a], k.one());
          NCPoly img = pc.reducer().reduce(side == Side::Left ? u * mono : mono * u);
          for (const auto& [w, c] : img.terms()) M.set(pc.index(w), a, c);
        }
        auto K = rank_kernel(M).kernel;
        if (K.cols() == 0) continue;
        NCPoly v(rs.alphabet(), k);
        for (std::size_t a = 0; a < src.size(); ++a)
          if (!K(a, 0).is_zero()) v.add_term(src[a], K(a, 0));
        std::string t = side == Side::Left ? "(" + u.to_string() + ") * (" + v.to_string() + ") = 0"
                                           : "(" + v.to_string() + ") * (" + u.to_string() + ") = 0";
        return ZeroDivisor{side == Side::Left ? u : v, side == Side::Left ? v : u, t};
      }
    }
  }
  return std::nullopt;
}

struct ASRegVerdict {
  bool regular = false;
  std::string clause;
  std::vector<std::string> reasons;
  std::optional<GorensteinProfile> gorenstein;
  std::optional<KoszulVerdict> koszul;
  std::optional<std::string> witness;
};

/// Decision from the classification; with `evidence`, also computes the Gorenstein
/// profile (finite resolutions) or the Koszul verdict (h = 0) to internal degree maxdeg.
inline ASRegVerdict asreg_decide(const TTPType3D& t, bool evidence = false, int maxdeg = 6) {
  if (!t.is_ttp()) throw Error(ErrorCode::ConstraintError, "AS-regularity needs a certified twisted tensor product, got " + t.kind_name());
  const ParamTuple3D& n = t.normal_form;
  Field k = n.field();
  ASRegVerdict v;
  auto T = build_T(n);
  auto rs = [&] { return T.completed(std::max(maxdeg, 3)); };
  const auto& al = alphabet_yxz();
  NCPoly x = NCPoly::letter(al, k, 1), y = NCPoly::letter(al, k, 0), z = NCPoly::letter(al, k, 2);
  switch (t.kind) {
    case TTPType3D::Kind::Ore: {
      Scalar det = n.d * n.E - n.e * n.D;
      v.clause = "Ore type: regular iff sigma is invertible";
      v.regular = !det.is_zero();
      v.reasons.push_back("det [[d, e], [D, E]] = " + det.to_string());
      if (!v.regular) {
        auto sys = T.completed(4);
        if (auto zd = find_zero_divisor(sys, 3)) v.witness = "zero divisor: " + zd->text;
      }
      break;
    }
    case TTPType3D::Kind::Reducible: {
      v.clause = "reducible type: regular iff E != 0 and a + d != 0";
      v.regular = !n.E.is_zero() && !(n.a + n.d).is_zero();
      v.reasons.push_back("E = " + n.E.to_string() + ", a + d = " + (n.a + n.d).to_string());
      if (n.E.is_zero()) {
        NCPoly u = z - n.B * x - n.C * y;
        auto sys = T.completed(2);
        if (sys.reduce(u * y).is_zero() && !sys.reduce(u).is_zero()) v.witness = "zero divisor: (" + u.to_string() + ") * (y) = 0";
      } else if ((n.a + n.d).is_zero()) {
        // modulo y the z^2 relation factors
        NCPoly rel = T.relations[0];
        NCPoly modY(al, k);
        for (const auto& [w, c] : rel.terms())
          if (w.letters.find(static_cast<char>(0)) == std::string::npos) modY.add_term(w, c);
        NCPoly f = (z - n.a * x) * (z - x);
        if (modY == -f || modY == f)
          v.witness = "modulo y the relation is (" + (z - n.a * x).to_string() + ") * (" + (z - x).to_string() + ")";
      }
      break;
    }
    case TTPType3D::Kind::Elliptic: {
      if (!t.elliptic) throw Error(ErrorCode::CharTwo, "elliptic verdict needs characteristic other than 2");
      v.clause = "elliptic type: regular iff h = c - (a-1)(C+a-1) != 0";
      v.regular = !t.elliptic->h.is_zero();
      v.reasons.push_back("h = " + t.elliptic->h.to_string());
      if (!v.regular) v.reasons.push_back("not Koszul, and quadratic AS-regular algebras are Koszul");
      break;
    }
    default: break;
  }
  if (evidence) {
    if (t.kind == TTPType3D::Kind::Elliptic && !v.regular) {
      v.koszul = koszul_check(T, std::max(maxdeg, 4));
    } else {
      auto res = minimal_resolution(rs(), 4, maxdeg);
      if (!res.truncated) {
        v.gorenstein = gorenstein_check(res.complex, maxdeg);
      } else {
        v.reasons.push_back("minimal resolution did not terminate by the bounds");
      }
    }
  }
  return v;
}

}  // namespace ttp
