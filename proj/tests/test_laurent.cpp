#include "doctest.h"
#include "btq/errors.hpp"
#include "btq/laurent.hpp"
#include "test_util.hpp"

using namespace btq;
using btq::testing::Gen;

TEST_CASE("embed examples") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  LaurentSeries t = embed(RatFunc(T), 64);
  CHECK(t.val() == -1);
  CHECK(t.coeffs() == std::vector<Elt>{1});
  CHECK(ord_inf(t) == -1);
  for (int q : {2, 3, 4, 5}) {
    const Field& F = Field::from_q(q);
    const Poly X = Poly::T(F);
    LaurentSeries s = embed(RatFunc(X.one_like(), X - X.one_like()), 40);
    CHECK(s.val() == 1);
    for (int k = 1; k <= 40; ++k) CHECK(s.coeff(k) == 1);
    CHECK((s * embed(RatFunc(X - X.one_like()), 40)).agrees_with(LaurentSeries::one(F)));
  }
  LaurentSeries x = embed(RatFunc(T.scale(2) - T.one_like()), 64);
  CHECK(x.to_string() == "2*u^-1 + 2 + O(u^63)");
  CHECK(embed(RatFunc(T * (T - T.one_like()))).val() == -2);
  CHECK(embed(RatFunc(T)).inv().coeffs() == std::vector<Elt>{1});
  CHECK(embed(RatFunc(T)).inv().val() == 1);
}

TEST_CASE("precision tracking") {
  const Field& F3 = make_field(3, 1);
  LaurentSeries a(F3, 0, {1, 1}, 10);
  LaurentSeries b = LaurentSeries::exact(F3, -2, {1});
  CHECK((a * b).abs_prec() == 8);
  CHECK((a + b).abs_prec() == 10);
  CHECK_THROWS_AS(a.coeff(10), PrecisionLoss);
  CHECK_THROWS_AS(LaurentSeries(F3, 0, {1, 1}, 4).inv(), PrecisionLoss);
  CHECK_THROWS_AS(LaurentSeries::zero(F3, 20).inv(), PrecisionLoss);
  CHECK((a - a).is_zero());
  CHECK((a - a).abs_prec() == 10);
}

TEST_CASE("sqrt examples") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  LaurentSeries s = btq::sqrt(embed(RatFunc(T * T)));
  CHECK(s.val() == -1);
  CHECK(s.lc() == 1);
  CHECK(s.agrees_with(embed(RatFunc(T))));
  LaurentSeries x = embed(RatFunc(T * T - T));
  LaurentSeries r = btq::sqrt(x);
  CHECK(r.val() == -1);
  CHECK((r * r).agrees_with(x));
  CHECK((r * r).prec() >= 60);
  CHECK_THROWS_AS(btq::sqrt(embed(RatFunc(T * T * T))), NotASquare);
  CHECK_THROWS_AS(btq::sqrt(embed(RatFunc((T * T).scale(2)))), NotASquare);
  CHECK_THROWS_AS(btq::sqrt(embed(RatFunc(Poly::T(make_field(2, 1))))), Unsupported);
}

TEST_CASE("sqrt squares back at several precisions") {
  Gen g(31);
  for (int q : {3, 5, 7, 9}) {
    const Field& F = Field::from_q(q);
    for (int it = 0; it < 20; ++it) {
      RatFunc r = g.nonzero_ratfunc(F, 4);
      if (r.ord_inf() % 2 != 0) r = r * RatFunc(Poly::T(F));
      const Elt lc = F.div(r.num().lc(), r.den().lc());
      if (!F.is_square(lc)) r = RatFunc(r.num().scale(F.xi()), r.den());
      for (int prec : {16, 64, 256}) {
        LaurentSeries x = embed(r, prec);
        LaurentSeries y = btq::sqrt(x);
        REQUIRE((y * y).agrees_with(x));
        REQUIRE((y * y).prec() == prec);
      }
    }
  }
}

TEST_CASE("embed is a ring homomorphism and valuations behave") {
  Gen g(37);
  for (int q : {2, 3, 4, 5, 9}) {
    const Field& F = Field::from_q(q);
    for (int it = 0; it < 50; ++it) {
      RatFunc a = g.nonzero_ratfunc(F, 4), b = g.nonzero_ratfunc(F, 4);
      LaurentSeries x = embed(a, 48), y = embed(b, 48);
      REQUIRE((x * y).agrees_with(embed(a * b, 48)));
      REQUIRE((x + y).agrees_with(embed(a + b, 48)));
      REQUIRE(ord_inf(x * y) == ord_inf(x) + ord_inf(y));
      if (!(a + b).is_zero()) REQUIRE(ord_inf(x + y) >= std::min(ord_inf(x), ord_inf(y)));
      REQUIRE((x * x.inv()).agrees_with(LaurentSeries::one(F)));
      REQUIRE(x.inv().agrees_with(embed(a.inv(), 48)));
    }
  }
}

TEST_CASE("Mat2K basics") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  Mat2K m = Mat2K::from(embed(RatFunc(T)), LaurentSeries::one(F3), LaurentSeries::zero(F3), embed(RatFunc(T)));
  CHECK(m.det().val() == -2);
  CHECK((m * m.inverse()).agrees_with(Mat2K::identity(F3)));
  CHECK(m.min_ord() == -1);
}
