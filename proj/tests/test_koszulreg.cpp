#include <catch_amalgamated.hpp>

#include <random>

#include "ttp/koszulreg.hpp"

using namespace ttp;

namespace {

Field Q = Field::rationals();
Scalar q(long n, long d = 1) { return Q.from_rational(mpq_class(n, d)); }

Presentation polynomial_ring(std::vector<std::string> names) {
  auto al = make_alphabet(std::move(names));
  std::vector<NCPoly> rels;
  for (std::size_t i = 0; i < al->size(); ++i)
    for (std::size_t j = i + 1; j < al->size(); ++j)
      rels.push_back(NCPoly::letter(al, Q, j) * NCPoly::letter(al, Q, i) - NCPoly::letter(al, Q, i) * NCPoly::letter(al, Q, j));
  return Presentation{al, Q, rels, "polynomial ring"};
}

ParamTuple3D tuple(std::initializer_list<long> v) {
  ParamTuple3D p = ParamTuple3D::zero(Q);
  auto s = p.slots();
  std::size_t i = 0;
  for (long x : v) *s[i++] = q(x);
  return p;
}

}  // namespace

TEST_CASE("quadratic duals") {
  auto kxy = polynomial_ring({"x", "y"});
  auto d = quadratic_dual(kxy);
  const auto& al = d.dual.alphabet;
  CHECK(al->names() == std::vector<std::string>{"X", "Y"});
  CHECK(same_quadratic_span(d.dual.relations, {parse_poly("X^2", al, Q), parse_poly("Y^2", al, Q), parse_poly("XY + YX", al, Q)}));
  CHECK(hilbert(d.dual.completed(4), 4).to_string() == "1,2,1,0,0");

  // double dual returns the relation space
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    auto T = build_Tgh(q(static_cast<long>(rng() % 7) - 3), q(static_cast<long>(rng() % 7) - 3));
    auto dd = quadratic_dual(quadratic_dual(T).dual, T.alphabet);
    CHECK(same_quadratic_span(dd.dual.relations, T.relations));
    auto d1 = quadratic_dual(T);
    CHECK(d1.dual.relations.size() == 9 - 3);
  }

  auto bad = Presentation{alphabet_xz(), Q, {parse_poly("x^3 - z^3", alphabet_xz(), Q)}, "cubic"};
  CHECK_THROWS_AS(quadratic_dual(bad), Error);
}

TEST_CASE("dual relations of T(g,h)") {
  for (auto [g, h] : {std::pair{q(0), q(1)}, std::pair{q(3), q(-2)}, std::pair{q(1, 2), q(5)}}) {
    auto rep = yoneda_verify(g, h, 4);
    CHECK(!rep.h_zero);
    CHECK(rep.dual_relations_match);
    CHECK(rep.square_normal_form);
    CHECK(rep.ok());
  }
  CHECK_THROWS_AS(yoneda_verify(Field::prime(2).one(), Field::prime(2).one(), 4), Error);
}

TEST_CASE("d3 d2 entries span the relations") {
  for (auto [g, h] : {std::pair{q(0), q(1)}, std::pair{q(2), q(-3)}}) {
    auto cx = resolution_Q(g, h, 3);
    std::vector<NCPoly> ent;
    for (std::size_t c = 0; c < 3; ++c) {
      NCPoly s(cx.algebra->alphabet(), Q);
      for (std::size_t r = 0; r < 3; ++r) s += cx.differentials[3][0][r] * cx.differentials[2][r][c];
      ent.push_back(s);
    }
    CHECK(same_quadratic_span(ent, build_Tgh(g, h).relations));
  }
}

TEST_CASE("Koszul checks") {
  // Ore type, identity sigma with a derivation
  for (auto p : {tuple({1, 0, 2, 1, 0, 0, 0, 3, 1, 0, 1, 0}), tuple({0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 3, 0})}) {
    auto t = classify_3d(p);
    REQUIRE(t.kind == TTPType3D::Kind::Ore);
    auto v = koszul_check(build_T(p), 6);
    CHECK(v.kind == KoszulVerdict::Kind::KoszulToDegree);
    CHECK(v.kind_name() == "KoszulToDegree(6)");
    REQUIRE(v.hilbert_identity);
    CHECK(*v.hilbert_identity);
  }
  for (long h : {1L, -2L}) {
    auto v = koszul_check(build_Tgh(q(3), q(h)), 6);
    CHECK(v.kind == KoszulVerdict::Kind::KoszulToDegree);
  }
  auto v0 = koszul_check(build_Tgh(q(3), q(0)), 6);
  CHECK(v0.kind == KoszulVerdict::Kind::NotKoszul);
  REQUIRE(v0.witness);
  CHECK(*v0.witness == std::pair{3, 4});
  CHECK(v0.betti.at(3, 4) == 1);

  auto c = koszul_check(build_C({q(2), q(3), q(1)}), 6);
  CHECK(c.kind == KoszulVerdict::Kind::KoszulToDegree);
  CHECK(*c.hilbert_identity);
}

TEST_CASE("Yoneda algebra when h = 0") {
  Field F = Field::prime(101);
  for (long g : {0L, 7L}) {
    auto rep = yoneda_verify(F.from_int(g), F.zero(), 6);
    CHECK(rep.h_zero);
    CHECK(rep.bigraded_match);
    CHECK(rep.tail_dims);
    CHECK(rep.ok());
    CHECK(rep.betti.total(3) == 2);
  }
}

TEST_CASE("regraded Yoneda algebra") {
  for (long g : {0L, 1L}) {
    auto v = regraded_yoneda_koszul(q(g), 5);
    CHECK(v.kind == KoszulVerdict::Kind::NotKoszul);
    REQUIRE(v.witness);
    CHECK(v.witness->second > v.witness->first);
    CHECK(v.witness->first >= 2);
  }
}

TEST_CASE("Gorenstein profiles") {
  auto qg = gorenstein_check(resolution_Q(q(1), q(2), 8), 8);
  CHECK(qg.clean);
  CHECK(qg.length == 3);
  CHECK(*qg.top_degree == -3);

  auto kxyz = polynomial_ring({"x", "y", "z"});
  auto res = minimal_resolution(kxyz.completed(6), 5, 6);
  REQUIRE(!res.truncated);
  CHECK(gorenstein_check(res.complex, 6).clean);

  // reducible, E = 0: (z - Bx - Cy) y = 0
  auto red = tuple({-2, 0, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0});
  auto t = classify_3d(red);
  REQUIRE(t.kind == TTPType3D::Kind::Reducible);
  auto r2 = minimal_resolution(build_T(red).completed(6), 4, 6);
  REQUIRE(!r2.truncated);
  CHECK(!gorenstein_check(r2.complex, 6).clean);

  CHECK_THROWS_AS(gorenstein_check(resolution_P(q(1), 6), 6), Error);
}

TEST_CASE("AS-regularity decisions") {
  // Ore, sigma = identity
  auto ore = classify_3d(tuple({1, 2, 0, 1, 0, 0, 0, 1, 1, 0, 1, 0}));
  REQUIRE(ore.kind == TTPType3D::Kind::Ore);
  auto v = asreg_decide(ore, true, 5);
  CHECK(v.regular);
  REQUIRE(v.gorenstein);
  CHECK(v.gorenstein->clean);

  // Ore, sigma = diag(1, 0), zy = x^2
  auto sing = classify_3d(tuple({0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0}));
  REQUIRE(sing.kind == TTPType3D::Kind::Ore);
  auto vs = asreg_decide(sing, true, 5);
  CHECK(!vs.regular);
  CHECK(vs.witness);
  REQUIRE(vs.gorenstein);
  CHECK(!vs.gorenstein->clean);

  // reducible (ii): a + d decides
  auto good = classify_3d(tuple({2, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0}));
  REQUIRE(good.kind == TTPType3D::Kind::Reducible);
  auto vg = asreg_decide(good, true, 5);
  CHECK(vg.regular);
  CHECK(vg.gorenstein->clean);
  auto flat = classify_3d(tuple({2, 0, 0, -2, 0, 1, 0, 0, 0, 0, 1, 0}));
  REQUIRE(flat.kind == TTPType3D::Kind::Reducible);
  auto vf = asreg_decide(flat, true, 5);
  CHECK(!vf.regular);
  REQUIRE(vf.witness);
  CHECK(vf.witness->find("modulo y") != std::string::npos);
  CHECK(!vf.gorenstein->clean);

  auto e0 = classify_3d(tuple({-2, 0, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0}));
  auto ve = asreg_decide(e0, false);
  CHECK(!ve.regular);
  REQUIRE(ve.witness);
  CHECK(ve.witness->find("* (y) = 0") != std::string::npos);

  // elliptic: a=1, B=2, c=1, C=0 gives h = 1
  auto ell = classify_3d(elliptic_tuple(q(1), q(2), q(1), q(0)));
  REQUIRE(ell.kind == TTPType3D::Kind::Elliptic);
  auto vl = asreg_decide(ell, true, 5);
  CHECK(vl.regular);
  CHECK(vl.gorenstein->clean);
  auto ell0 = classify_3d(elliptic_tuple(q(1), q(2), q(0), q(0)));
  auto vl0 = asreg_decide(ell0, true, 5);
  CHECK(!vl0.regular);
  REQUIRE(vl0.koszul);
  CHECK(vl0.koszul->kind == KoszulVerdict::Kind::NotKoszul);

  auto not_ttp = classify_3d(tuple({0, 0, 0, 2, 0, 0, 1, 0, 0, 0, 1, 0}));
  REQUIRE(not_ttp.kind == TTPType3D::Kind::NotTTP);
  CHECK_THROWS_AS(asreg_decide(not_ttp), Error);
}

TEST_CASE("elliptic regular samples resolve in length three") {
  std::mt19937_64 rng(7);
  for (const Field& k : {Field::rationals(), Field::prime(101)}) {
    int seen = 0;
    while (seen < 3) {
      auto r = [&] { return k.from_int(static_cast<long>(rng() % 9) - 4); };
      ParamTuple3D p = elliptic_tuple(r(), r(), r(), r());
      auto t = classify_3d(p);
      REQUIRE(t.kind == TTPType3D::Kind::Elliptic);
      if (t.elliptic->h.is_zero()) continue;
      ++seen;
      auto v = asreg_decide(t, true, 5);
      CHECK(v.regular);
      REQUIRE(v.gorenstein);
      CHECK(v.gorenstein->clean);
      CHECK(v.gorenstein->length == 3);
      auto res = minimal_resolution(build_T(t.normal_form).completed(5), 4, 5);
      CHECK(res.betti.total(3) == 1);
    }
  }
}

TEST_CASE("zero divisor search") {
  auto kxy = polynomial_ring({"x", "y", "z"}).completed(4);
  CHECK(!find_zero_divisor(kxy, 2));
  auto al = alphabet_yxz();
  auto sys = build_T(tuple({0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0})).completed(4);
  auto zd = find_zero_divisor(sys, 2);
  REQUIRE(zd);
  CHECK(sys.reduce(zd->u * zd->v).is_zero());
  CHECK(!zd->u.is_zero());
  CHECK(!sys.reduce(zd->v).is_zero());
}
