#include <catch_amalgamated.hpp>

#include <random>

#include "ttp/matrix.hpp"
#include "ttp/parse.hpp"

using namespace ttp;

namespace {

Scalar q(long n, long d = 1) { return Field::rationals().from_rational(mpq_class(n, d)); }

Scalar random_nonzero(const Field& f, std::mt19937_64& rng) {
  while (true) {
    Scalar s = f.characteristic() ? f.from_int(static_cast<long>(rng() % f.characteristic()))
                                  : f.from_rational(mpq_class(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1));
    if (!s.is_zero()) return s;
  }
}

}  // namespace

TEST_CASE("rational and modular arithmetic") {
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  Field f7 = Field::prime(7);
  CHECK(f7.from_int(3).inv() == f7.from_int(5));
  CHECK(f7.from_int(-1).residue() == 6);
  CHECK(q(6, -4).to_string() == "-3/2");
  CHECK_THROWS_MATCHES(q(0).inv(), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::DivisionByZero;
                       }));
  CHECK_THROWS_AS(Field::prime(9), Error);
}

TEST_CASE("mixed fields are rejected") {
  Field f7 = Field::prime(7);
  try {
    (void)(f7.one() + q(1));
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldMismatch);
  }
}

TEST_CASE("quadratic extension arithmetic") {
  Field e = Field::quad_ext(Field::rationals(), q(2));
  Scalar r = e.sqrt_generator();
  CHECK(r * r == e.from_int(2));
  CHECK(r.to_string() == "sqrt(2)");
  CHECK((1 - r).to_string() == "1-sqrt(2)");
  Scalar x = (3 + 2 * r) / 5;
  CHECK(x * x.inv() == e.one());
  CHECK(x.inv().inv() == x);
  // base elements promote into the extension
  CHECK(q(1, 2) + r == r + q(1, 2));
  CHECK_THROWS_AS(Field::quad_ext(Field::rationals(), q(4)), Error);
  CHECK_THROWS_AS(Field::quad_ext(e, q(3)), Error);
  Field other = Field::quad_ext(Field::rationals(), q(3));
  CHECK_THROWS_AS(r + other.sqrt_generator(), Error);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  std::vector<Field> fields = {Field::rationals(), Field::prime(7), Field::prime(101),
                               Field::quad_ext(Field::rationals(), q(-1)), Field::quad_ext(Field::prime(7), Field::prime(7).from_int(3))};
  for (const auto& f : fields) {
    for (int t = 0; t < 40; ++t) {
      Scalar a = random_nonzero(f.ground(), rng).lift(f), b = random_nonzero(f.ground(), rng).lift(f);
      if (f.is_extension()) a = a + b * f.sqrt_generator();
      Scalar c = random_nonzero(f.ground(), rng).lift(f);
      CHECK(a.inv().inv() == a);
      CHECK(a * a.inv() == f.one());
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a - a == f.zero());
    }
  }
}

TEST_CASE("square roots") {
  CHECK(sqrt_in_field(q(9, 4)) == std::optional<Scalar>(q(3, 2)));
  CHECK(!sqrt_in_field(q(2)));
  SqrtResult s = sqrt_adjoin(q(8, 3));
  CHECK(s.extended);
  CHECK(s.root * s.root == q(8, 3).lift(s.root.field()));
  CHECK(s.root.field().radicand() == q(6));
  Field f13 = Field::prime(13);
  for (long a = 1; a < 13; ++a) {
    SqrtResult r = sqrt_adjoin(f13.from_int(a));
    CHECK(r.root * r.root == f13.from_int(a).lift(r.root.field()));
  }
  Field e = Field::quad_ext(Field::rationals(), q(2));
  Scalar z = 3 + 2 * e.sqrt_generator();  // (1 + sqrt 2)^2
  auto w = sqrt_in_field(z);
  REQUIRE(w);
  CHECK(*w * *w == z);
}

TEST_CASE("solve_quadratic") {
  auto r = solve_quadratic(q(1), q(0), q(-1));
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == q(-1));
  CHECK(r.roots[1] == q(1));
  CHECK(!r.extended);

  // a = 0, b = 1 in (a+b) q^2 + (2a-b^2-1) q + (a+b)
  auto d = solve_quadratic(q(1), q(-2), q(1));
  REQUIRE(d.roots.size() == 1);
  CHECK(d.roots[0] == q(1));
  CHECK(d.multiplicity[0] == 2);

  auto s = solve_quadratic(q(1), q(0), q(-2));
  REQUIRE(s.roots.size() == 2);
  CHECK(s.extended);
  CHECK(s.roots[0] * s.roots[1] == q(-2));
  CHECK(s.roots[0] + s.roots[1] == q(0));
  CHECK(s.roots[1] == s.roots[1].field().sqrt_generator());

  auto lin = solve_quadratic(q(0), q(2), q(3));
  REQUIRE(lin.roots.size() == 1);
  CHECK(lin.roots[0] == q(-3, 2));
  CHECK_THROWS_AS(solve_quadratic(q(0), q(0), q(1)), Error);

  Field f2 = Field::prime(2);
  auto c2 = solve_quadratic(f2.one(), f2.one(), f2.zero());
  CHECK(c2.roots.size() == 2);
  try {
    solve_quadratic(f2.one(), f2.one(), f2.one());
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("skew quadratic roots multiply to one") {
  std::mt19937_64 rng(11);
  for (const Field& f : {Field::rationals(), Field::prime(101)}) {
    for (int t = 0; t < 30; ++t) {
      Scalar a = random_nonzero(f, rng), b = random_nonzero(f, rng);
      if ((a + b).is_zero()) continue;
      auto r = solve_quadratic(a + b, 2 * a - b * b - 1, a + b);
      for (const auto& x : r.roots) CHECK(((a + b) * x * x + (2 * a - b * b - 1) * x + (a + b)).is_zero());
      Scalar prod = r.roots.size() == 2 ? r.roots[0] * r.roots[1] : r.roots[0] * r.roots[0];
      CHECK(prod == f.one());
    }
  }
}

TEST_CASE("rank and kernel") {
  Field Q = Field::rationals();
  auto id = ScalarMatrix::identity(Q, 2);
  auto rk = rank_kernel(id);
  CHECK(rk.rank == 2);
  CHECK(rk.kernel.cols() == 0);

  auto ones = ScalarMatrix::from_rows(Q, {{q(1), q(1)}, {q(1), q(1)}});
  rk = rank_kernel(ones);
  CHECK(rk.rank == 1);
  REQUIRE(rk.kernel.cols() == 1);
  CHECK(rk.kernel(0, 0) == -rk.kernel(1, 0));

  ScalarMatrix z(Q, 3, 4);
  rk = rank_kernel(z);
  CHECK(rk.rank == 0);
  CHECK(rk.kernel.cols() == 4);
}

TEST_CASE("rank is independent of pivot order") {
  std::mt19937_64 rng(3);
  for (const Field& f : {Field::rationals(), Field::prime(5), Field::quad_ext(Field::rationals(), q(5))}) {
    for (int t = 0; t < 20; ++t) {
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
      ScalarMatrix m(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (rng() % 3) m.set(i, j, f.from_int(static_cast<long>(rng() % 5) - 2));
      auto a = rank_kernel(m, PivotOrder::Forward);
      auto b = rank_kernel(m, PivotOrder::Reverse);
      CHECK(a.rank == b.rank);
      CHECK(a.rank + a.kernel.cols() == c);
      CHECK(rank(m * a.kernel) == 0);
      CHECK(rank(m * b.kernel) == 0);
      // Both kernel bases span the same space.
      if (a.kernel.cols()) {
        ScalarMatrix both(f, c, a.kernel.cols() + b.kernel.cols());
        for (std::size_t i = 0; i < c; ++i) {
          for (std::size_t j = 0; j < a.kernel.cols(); ++j) both.set(i, j, a.kernel(i, j));
          for (std::size_t j = 0; j < b.kernel.cols(); ++j) both.set(i, a.kernel.cols() + j, b.kernel(i, j));
        }
        CHECK(rank(both) == a.kernel.cols());
        CHECK(rank(a.kernel) == a.kernel.cols());
      }
    }
  }
}

TEST_CASE("determinant, inverse and row span") {
  Field Q = Field::rationals();
  auto m = ScalarMatrix::from_rows(Q, {{q(2), q(1)}, {q(7), q(4)}});
  CHECK(det(m) == q(1));
  CHECK(m * inverse(m) == ScalarMatrix::identity(Q, 2));
  RowSpan span(Q, 3);
  CHECK(span.insert({q(1), q(2), q(3)}));
  CHECK(span.insert({q(0), q(1), q(1)}));
  CHECK(span.contains({q(1), q(3), q(4)}));
  CHECK(!span.insert({q(2), q(5), q(7)}));
  CHECK(span.dim() == 2);
}

TEST_CASE("scalar literals") {
  Field Q = Field::rationals();
  CHECK(parse_scalar("-3/4", Q) == q(-3, 4));
  CHECK(parse_scalar("(1+2)*5", Q) == q(15));
  Scalar r = parse_scalar("1/2 + sqrt(2)/2", Q);
  CHECK(r * r == (3 + 2 * r.field().sqrt_generator()) / 4);
  CHECK(parse_scalar("10", Field::prime(7)).residue() == 3);
  CHECK(parse_field("GF(101)") == Field::prime(101));
  CHECK(parse_field("QQ(sqrt(-1))").radicand() == q(-1));
  try {
    parse_scalar("3 $ 4", Q);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
}
