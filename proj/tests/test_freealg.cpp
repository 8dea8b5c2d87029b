#include <catch_amalgamated.hpp>

#include <random>

#include "ttp/parse.hpp"

using namespace ttp;

namespace {

Scalar q(long n, long d = 1) { return Field::rationals().from_rational(mpq_class(n, d)); }

NCPoly random_poly(const AlphabetPtr& al, const Field& f, std::mt19937_64& rng, int max_deg) {
  NCPoly p(al, f);
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::size_t> idx(rng() % (max_deg + 1));
    for (auto& i : idx) i = rng() % al->size();
    p.add_term(make_word(*al, idx), f.from_int(static_cast<long>(rng() % 7) - 3));
  }
  return p;
}

}  // namespace

TEST_CASE("word order") {
  auto al = make_alphabet({"y", "x", "z"});
  Word yx = make_word(*al, {0, 1}), xy = make_word(*al, {1, 0}), z = make_word(*al, {2});
  CHECK(yx < xy);
  CHECK(z < yx);
  auto wal = make_alphabet({"x", "y", "rho"}, {1, 1, 3});
  Word rho = make_word(*wal, {2}), xx = make_word(*wal, {0, 0});
  CHECK(rho.degree == 3);
  CHECK(xx < rho);
  CHECK(all_words(*wal, 3).size() == 9);
  CHECK(all_words(*al, 2).size() == 9);
  auto ws = all_words(*al, 3);
  CHECK(std::is_sorted(ws.begin(), ws.end()));
}

TEST_CASE("printing") {
  auto al = make_alphabet({"x", "z"});
  Field Q = Field::rationals();
  NCPoly p = parse_poly("z*x - 2x^2 + 1/3*x*z*z", al, Q);
  CHECK(p.to_string() == "1/3*xz^2 + zx - 2*x^2");
  CHECK(NCPoly(al, Q).to_string() == "0");
  auto wal = make_alphabet({"x", "rho"}, {1, 3});
  NCPoly r = parse_poly("rho x - x rho", wal, Q);
  CHECK(r.to_string() == "rho*x - x*rho");
  NCPoly s = parse_poly("(1 + sqrt(2)) x^2", al, Q);
  CHECK(s.to_string() == "(1+sqrt(2))*x^2");
}

TEST_CASE("ring axioms") {
  std::mt19937_64 rng(1);
  auto al = make_alphabet({"y", "x", "z"});
  for (const Field& f : {Field::rationals(), Field::prime(5)}) {
    for (int t = 0; t < 30; ++t) {
      NCPoly a = random_poly(al, f, rng, 3), b = random_poly(al, f, rng, 3), c = random_poly(al, f, rng, 2);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK(substitute(a * b, identity_images(al, f)) == a * b);
    }
  }
}

TEST_CASE("substitution is an algebra map") {
  std::mt19937_64 rng(2);
  auto al = make_alphabet({"y", "x", "z"});
  Field f = Field::prime(7);
  std::vector<NCPoly> im = {random_poly(al, f, rng, 2), random_poly(al, f, rng, 2), random_poly(al, f, rng, 1)};
  for (int t = 0; t < 20; ++t) {
    NCPoly a = random_poly(al, f, rng, 2), b = random_poly(al, f, rng, 2);
    CHECK(substitute(a * b, im) == substitute(a, im) * substitute(b, im));
    CHECK(substitute(a + b, im) == substitute(a, im) + substitute(b, im));
  }
}

TEST_CASE("parser") {
  auto al = make_alphabet({"x", "xx", "z"});
  Field Q = Field::rationals();
  // longest letter name wins
  NCPoly p = parse_poly("xx", al, Q);
  CHECK(p.leading_term().first == make_word(*al, {1}));
  CHECK(parse_poly("x*x", al, Q).leading_term().first == make_word(*al, {0, 0}));
  CHECK(parse_poly("(x+z)^2", al, Q) == parse_poly("x^2 + x z + z x + z^2", al, Q));
  CHECK(parse_poly("x/2", al, Q) == q(1, 2) * parse_poly("x", al, Q));
  CHECK_THROWS_AS(parse_poly("x/z", al, Q), Error);
  CHECK_THROWS_AS(parse_poly("x + w", al, Q), Error);
  CHECK_THROWS_AS(parse_poly("x^", al, Q), Error);
  CHECK(parse_poly("3 x", al, Field::prime(3)).is_zero());
}

TEST_CASE("alphabet mismatch") {
  auto a1 = make_alphabet({"x", "z"});
  auto a2 = make_alphabet({"x", "y"});
  Field Q = Field::rationals();
  try {
    (void)(NCPoly::letter(a1, Q, 0) + NCPoly::letter(a2, Q, 0));
    FAIL("expected AlphabetMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphabetMismatch);
  }
  CHECK_THROWS_AS(make_alphabet({"x", "x"}), Error);
  CHECK_THROWS_AS(NCPoly(a1, Q).leading_term(), Error);
}
