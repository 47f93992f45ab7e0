#include <algorithm>
#include <chrono>

#include "doctest.h"
#include "btq/errors.hpp"
#include "btq/linalg.hpp"
#include "btq/order.hpp"
#include "test_util.hpp"

using namespace btq;
using btq::testing::Gen;

namespace {

StandardOrder xi_order(const Field& F, const Poly& r) {
  return StandardOrder(QuatAlgebra(RatFunc(Poly::constant(F, F.xi())), RatFunc(r)));
}

Poly lin(const Field& F, long long c0, long long c1) { return Poly::from_ints(F, {c0, c1}); }

bool contains(const std::vector<TorsionUnit>& v, const QuatA& x) {
  return std::any_of(v.begin(), v.end(), [&](const TorsionUnit& u) { return u.element == x; });
}

}  // namespace

TEST_CASE("nullspace over F_q") {
  const Field& F = make_field(3, 1);
  // x + y + z = 0, y + 2z = 0
  auto ns = nullspace(F, {{1, 1, 1}, {0, 1, 2}}, 3);
  REQUIRE(ns.size() == 1);
  const auto& v = ns[0];
  CHECK(F.add(F.add(v[0], v[1]), v[2]) == 0);
  CHECK(F.add(v[1], F.mul(2, v[2])) == 0);
  CHECK(nullspace(F, {}, 2).size() == 2);
}

TEST_CASE("gram_disc closed forms") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  const Poly r = T * (T - T.one_like());
  StandardOrder o = xi_order(F3, r);
  const Elt xi = F3.xi();
  CHECK(gram_disc(o) == (r * r).scale(F3.neg(F3.mul(F3.from_int(16), F3.mul(xi, xi)))));
  const Field& F2 = make_field(2, 1);
  const Poly S = Poly::T(F2);
  const Poly r2 = S * (S + S.one_like());
  CHECK(gram_disc(xi_order(F2, r2)) == r2 * r2);
  const Poly f = Poly::from_ints(F3, {2, 1, 1});
  StandardOrder o2(QuatAlgebra(RatFunc{T}, RatFunc{f}));
  const Poly d = gram_disc(o2);
  const Poly m = T * f;
  CHECK((d % (m * m)).is_zero());
  CHECK((d / (m * m)).deg_or(-1) == 0);
}

TEST_CASE("gram_disc closed forms hold for deg r <= 6") {
  Gen g(51);
  for (int q : {3, 5, 7, 9, 2, 4, 8}) {
    const Field& F = Field::from_q(q);
    const Elt xi = F.xi();
    const Elt c = F.is_odd() ? F.neg(F.mul(F.from_int(16), F.mul(xi, xi))) : 1;
    for (int it = 0; it < 25; ++it) {
      const Poly r = g.nonzero_poly(F, 6);
      REQUIRE(gram_disc(xi_order(F, r)) == (r * r).scale(c));
    }
  }
}

TEST_CASE("certify_maximal") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  StandardOrder o = xi_order(F3, T * (T - T.one_like()));
  CHECK(certify_maximal(o));
  CHECK(o.maximal == true);
  StandardOrder o2(QuatAlgebra(RatFunc{T}, RatFunc{Poly::from_ints(F3, {2, 1, 1})}));
  CHECK(certify_maximal(o2));
  StandardOrder o3 = xi_order(F3, T * T);
  CHECK_FALSE(certify_maximal(o3));
  const Field& F4 = make_field(2, 2);
  const Poly S = Poly::T(F4);
  StandardOrder o4 = xi_order(F4, S * S * S * S + S);
  CHECK(certify_maximal(o4));
}

TEST_CASE("is_unit") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  StandardOrder o = xi_order(F3, T * (T - T.one_like()));
  const auto& H = o.arith();
  CHECK(is_unit(o, H.one()));
  CHECK(is_unit(o, H.i()));
  CHECK(H.norm(H.i()) == Poly::constant(F3, F3.neg(F3.xi())));
  CHECK_FALSE(is_unit(o, H.j()));
}

TEST_CASE("solve_torsion, q = 3, r = T(T-1)") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  StandardOrder o = xi_order(F3, T * (T - T.one_like()));
  const auto& H = o.arith();
  auto units = solve_torsion(o, 1);
  const QuatA theta1 = H.i();
  const QuatA theta2{Poly(F3), lin(F3, -1, 2), Poly(F3), Poly::constant(F3, 2)};
  CHECK(contains(units, theta1));
  CHECK(contains(units, theta2));
  CHECK(units.front().element == theta1);
  for (const auto& u : solve_torsion(o, 2)) {
    CHECK(H.mul(u.element, u.element) == H.scalar(Poly::constant(F3, F3.xi())));
    CHECK(u.trace.is_zero());
    CHECK(u.order % 3 != 0);
    CHECK(8 % u.order == 0);
  }
  for (std::size_t k = 1; k < units.size(); ++k) CHECK(torsion_less(units[k - 1].element, units[k].element));
  CHECK_THROWS_AS(solve_torsion(StandardOrder(QuatAlgebra(RatFunc(T), RatFunc(T))), 2), Unsupported);
}

TEST_CASE("solve_torsion, even q") {
  const Field& F2 = make_field(2, 1);
  const Poly T = Poly::T(F2);
  StandardOrder o = xi_order(F2, T * (T + T.one_like()));
  auto units = solve_torsion(o, 1);
  const QuatA theta2{T, Poly::constant(F2, 1), Poly::constant(F2, 1), Poly(F2)};
  CHECK(contains(units, theta2));
  for (const auto& u : units) CHECK(u.order == 3);

  const Field& F4 = make_field(2, 2);
  const Poly S = Poly::T(F4);
  const Poly r = S * S * S * S + S;
  StandardOrder o4 = xi_order(F4, r);
  auto u4 = solve_torsion(o4, 2);
  const Elt xi = F4.xi();
  int family = 0;
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      if (!c && !d) continue;
      const Elt alpha = F4.add(F4.add(F4.mul(c, c), F4.mul(c, d)), F4.mul(xi, F4.mul(d, d)));
      const Elt s = *F4.sqrt(alpha);
      for (int m = 0; m < 2; ++m) {
        const Poly a = Poly(F4, {static_cast<Elt>(m), F4.mul(s, s), s});
        QuatA x{a, Poly::constant(F4, 1), Poly::constant(F4, static_cast<Elt>(c)),
                Poly::constant(F4, static_cast<Elt>(d))};
        CHECK(contains(u4, x));
        ++family;
      }
    }
  CHECK(family == 30);
  CHECK(u4.size() == 32);
  for (const auto& u : u4) {
    CHECK(15 % u.order == 0);
    CHECK(3 % u.order != 0);  // roots of X^2+X+xi lie outside F_4
  }
}

TEST_CASE("conj_search") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  StandardOrder o = xi_order(F3, T * (T - T.one_like()));
  const auto& H = o.arith();
  auto same = conj_search(o, H.i(), H.i(), 2);
  REQUIRE(same.witness);
  CHECK(is_unit(o, *same.witness));
  for (int B = 0; B <= 4; ++B) CHECK_FALSE(conj_search(o, H.i(), -H.i(), B).witness);

  const QuatA theta2{Poly(F3), lin(F3, -1, 2), Poly(F3), Poly::constant(F3, 2)};
  // A unit of degree 1: 1 + (c0 + c1 T) ... found by search, then conjugate.
  Gen g(61);
  int tested = 0;
  for (int it = 0; it < 2000 && tested < 3; ++it) {
    QuatA u{g.poly(F3, 1), g.poly(F3, 1), g.poly(F3, 1), g.poly(F3, 1)};
    if (!is_unit(o, u) || (u.y.is_zero() && u.z.is_zero() && u.w.is_zero())) continue;
    const Poly n = H.norm(u);
    const QuatA uinv = H.conj(u).scale(Poly::constant(F3, F3.inv(n.coeff(0))));
    const QuatA y = H.mul(H.mul(u, theta2), uinv);
    auto res = conj_search(o, theta2, y, 2);
    REQUIRE(res.witness);
    CHECK(H.mul(*res.witness, theta2) == H.mul(y, *res.witness));
    ++tested;
  }
  CHECK(tested == 3);
}

TEST_CASE("torsion census, q = 3, r = T(T-1)") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  StandardOrder o = xi_order(F3, T * (T - T.one_like()));
  auto census = torsion_classes(o, 2);
  CHECK(census.expected == 4);
  CHECK(census.classes.size() == 4);
}

TEST_CASE("census is empty when wp = 0") {
  const Field& F3 = make_field(3, 1);
  const Poly T = Poly::T(F3);
  // H(T, T^2+T+2): ramified at T and T^2+T+2 (degrees 1, 2).
  StandardOrder o(QuatAlgebra(RatFunc{T}, RatFunc{Poly::from_ints(F3, {2, 1, 1})}));
  REQUIRE(certify_maximal(o));
  CHECK(ramified_set(o.algebra()).degrees() == std::vector<int>{1, 2});
  CHECK(eichler_expected({1, 2}) == 0);
  auto census = torsion_classes(o, 3);
  CHECK(census.classes.empty());
}
