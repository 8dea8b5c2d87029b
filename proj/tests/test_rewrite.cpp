#include <catch_amalgamated.hpp>

#include <random>

#include "ttp/parse.hpp"
#include "ttp/rewrite.hpp"

using namespace ttp;

namespace {

std::vector<NCPoly> rels(const AlphabetPtr& al, const Field& f, std::vector<std::string> src) {
  std::vector<NCPoly> out;
  for (const auto& s : src) out.push_back(parse_poly(s, al, f));
  return out;
}

}  // namespace

TEST_CASE("orientation and reduction") {
  auto al = make_alphabet({"x", "z"});
  Field Q = Field::rationals();
  auto rs = RewriteSystem::from_relations(rels(al, Q, {"zx - x^2 - 2 x z"}));
  REQUIRE(rs.rules().size() == 1);
  CHECK(word_string(*al, rs.rules()[0].high) == "zx");
  CHECK(rs.reduce(parse_poly("z x", al, Q)) == parse_poly("x^2 + 2xz", al, Q));
  CHECK(rs.reduce(parse_poly("z x x", al, Q)) == rs.reduce(parse_poly("x^3 + 2 x z x", al, Q)));
  CHECK_THROWS_AS(RewriteSystem::from_relations(rels(al, Q, {"zx - x"})), Error);
  CHECK_THROWS_AS(normal_words(rs, 3), Error);
}

TEST_CASE("Fibonacci growth when zx is tied to z^2") {
  auto al = make_alphabet({"x", "z"});
  Field Q = Field::rationals();
  // C(1,-1,1): zx - x^2 + xz - z^2
  auto r = rels(al, Q, {"zx - x^2 + x z - z^2"});
  auto c = complete(RewriteSystem::from_relations(r), 5);
  auto h = hilbert(c.system, 5);
  CHECK(h.to_string() == "1,2,3,5,8,13");
  CHECK(hilbert_oracle(r, al, Q, 5) == h);
}

TEST_CASE("degree three rule of a two generated relation") {
  auto al = make_alphabet({"x", "z"});
  std::mt19937_64 rng(4);
  Field F = Field::prime(101);
  for (int t = 0; t < 20; ++t) {
    Scalar a = F.from_int(static_cast<long>(rng() % 101)), b = F.from_int(static_cast<long>(rng() % 101));
    NCPoly rel = parse_poly("zx - z^2", al, F) - a * parse_poly("x^2", al, F) - b * parse_poly("x z", al, F);
    auto rs = RewriteSystem::from_relations({rel});
    REQUIRE(rs.overlaps(3).size() == 1);
    NCPoly s = rs.reduce(rs.s_difference(rs.overlaps(3)[0]));
    // (1+b)zxz + (a-1)zx^2 + (b^2-a)x^2z + a(b+1)x^3, up to sign
    NCPoly G = (1 + b) * parse_poly("z x z", al, F) + (a - 1) * parse_poly("z x x", al, F) +
               (b * b - a) * parse_poly("x x z", al, F) + a * (b + 1) * parse_poly("x x x", al, F);
    CHECK((s == G || s == -G));
  }
}

TEST_CASE("completion agrees with the linear algebra oracle") {
  std::mt19937_64 rng(9);
  auto al = make_alphabet({"y", "x", "z"});
  for (const Field& F : {Field::prime(3), Field::prime(7), Field::rationals()}) {
    for (int t = 0; t < 6; ++t) {
      auto coef = [&] { return F.from_int(static_cast<long>(rng() % 5) - 2); };
      NCPoly r1 = parse_poly("zx", al, F), r2 = parse_poly("zy", al, F);
      for (auto w : {"x^2", "x y", "y^2", "x z", "y z", "z^2"}) {
        r1 -= coef() * parse_poly(w, al, F);
        r2 -= coef() * parse_poly(w, al, F);
      }
      std::vector<NCPoly> r = {r1, r2, parse_poly("xy - yx", al, F)};
      int d = t < 2 ? 5 : 4;
      auto c = complete(RewriteSystem::from_relations(r), d);
      CHECK(hilbert(c.system, d) == hilbert_oracle(r, al, F, d));
    }
  }
}

TEST_CASE("confluence under random rewriting") {
  std::mt19937_64 rng(12);
  auto al = make_alphabet({"y", "x", "z"});
  Field F = Field::prime(11);
  std::vector<NCPoly> r = rels(al, F, {"zx - (3x^2 + xy + 2 y z + z^2)", "zy - (x^2 + 5 y^2 - yz)", "xy - yx"});
  auto c = complete(RewriteSystem::from_relations(r), 5);
  for (int t = 0; t < 30; ++t) {
    NCPoly p(al, F);
    for (int k = 0; k < 4; ++k) {
      std::vector<std::size_t> idx(3 + rng() % 3);
      for (auto& i : idx) i = rng() % 3;
      p.add_term(make_word(*al, idx), F.from_int(1 + static_cast<long>(rng() % 10)));
    }
    CHECK(c.system.reduce_random(p, rng) == c.system.reduce(p));
  }
}

TEST_CASE("overlaps of the quadratic basis") {
  auto al = make_alphabet({"y", "x", "z"});
  Field Q = Field::rationals();
  auto rs = RewriteSystem::from_relations(
      rels(al, Q, {"xy - yx", "z^2 - (zx - 2x^2 - yx - y^2 - 3 x z - y z)", "zy - (x^2 + 2 yx + y^2 - yz)"}));
  std::vector<std::string> words;
  for (const auto& o : rs.overlaps(3)) words.push_back(word_string(*al, o.word));
  CHECK(words == std::vector<std::string>{"z^2y", "z^3"});
}

TEST_CASE("weighted generators") {
  auto al = make_alphabet({"x", "y", "rho"}, {1, 1, 3});
  Field Q = Field::rationals();
  auto r = rels(al, Q, {"xy - yx", "rho x - x rho", "rho y - y rho"});
  auto c = complete(RewriteSystem::from_relations(r), 6);
  // k[x, y, rho] with rho in degree 3
  CHECK(hilbert(c.system, 6).to_string() == "1,2,3,5,7,9,12");
  CHECK(hilbert_oracle(r, al, Q, 6) == hilbert(c.system, 6));
}

TEST_CASE("reducer memo matches direct reduction") {
  auto al = make_alphabet({"x", "z"});
  Field Q = Field::rationals();
  auto c = complete(RewriteSystem::from_relations(rels(al, Q, {"zx - 2x^2 - 3xz - z^2"})), 6);
  Reducer red(c.system);
  NCPoly p = parse_poly("z x z x + x z z - 5 z^3 x", al, Q);
  CHECK(red.reduce(p) == c.system.reduce(p));
  Word zz = make_word(*al, {1, 1});
  CHECK(red.left_mul(zz, p) == c.system.reduce(parse_poly("z^2", al, Q) * p));
  CHECK(red.right_mul(p, zz) == c.system.reduce(p * parse_poly("z^2", al, Q)));
}
