#include "btq/quat.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "btq/errors.hpp"

namespace btq {

QuatAlgebra::QuatAlgebra(RatFunc a, RatFunc b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.is_zero() || b_.is_zero()) throw InvalidArgument("quaternion algebra needs nonzero a and b");
  if (&a_.field() != &b_.field()) throw InvalidArgument("a and b live over different fields");
}

QuatArith<Poly> QuatAlgebra::over_A() const {
  if (!is_polynomial()) throw InvalidArgument("algebra " + to_string() + " is not defined over A");
  return {a_.num(), b_.num(), odd()};
}

QuatArith<LaurentSeries> QuatAlgebra::over_K(int prec) const {
  return {embed(a_, prec), embed(b_, prec), odd()};
}

std::string QuatAlgebra::to_string() const { return "H(" + a_.to_string() + ", " + b_.to_string() + ")"; }

std::vector<int> RamSet::degrees() const {
  std::vector<int> d;
  for (const auto& p : places) d.push_back(p.degree());
  return d;
}

std::string RamSet::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < places.size(); ++k) s += (k ? ", " : "") + places[k].to_string();
  return s + "}";
}

namespace {

// Residue character of the v-unit part of a nonzero rational function.
int unit_character(const RatFunc& r, const Place& v) {
  const Field& F = r.field();
  if (v.is_infinite()) {
    const Elt lc = F.div(r.num().lc(), r.den().lc());
    return F.is_square(lc) ? 1 : -1;
  }
  auto strip = [&](Poly p) {
    for (;;) {
      auto [qu, rem] = p.divmod(v.poly());
      if (!rem.is_zero()) return p;
      p = std::move(qu);
    }
  };
  return sqr_test_residue(v.poly(), strip(r.num())) * sqr_test_residue(v.poly(), strip(r.den()));
}

int minus_one_character(const Place& v) {
  const Field& F = v.field();
  if (v.is_infinite()) return F.is_square(F.neg(1)) ? 1 : -1;
  return sqr_test_residue(v.poly(), Poly::constant(F, F.neg(1)));
}

// Tame symbol (a, b)_v for odd residue characteristic.
int hilbert_symbol(const RatFunc& a, const RatFunc& b, const Place& v) {
  const int al = v.is_infinite() ? a.ord_inf() : v.ord(a);
  const int be = v.is_infinite() ? b.ord_inf() : v.ord(b);
  int s = 1;
  if ((al * be) % 2 != 0) s *= minus_one_character(v);
  if (be % 2 != 0) s *= unit_character(a, v);
  if (al % 2 != 0) s *= unit_character(b, v);
  return s;
}

void require_even_shape(const QuatAlgebra& alg) {
  if (!alg.a().is_constant())
    throw Unsupported("even-q ramification is implemented for constant a only; got " + alg.to_string());
}

std::vector<Place> candidate_places(const QuatAlgebra& alg) {
  std::vector<Place> out;
  for (const Poly* p : {&alg.a().num(), &alg.a().den(), &alg.b().num(), &alg.b().den()}) {
    if (p->is_constant()) continue;
    for (const auto& f : factor(*p).factors) {
      Place pl = Place::finite(f.poly);
      if (std::find(out.begin(), out.end(), pl) == out.end()) out.push_back(pl);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_split_at(const QuatAlgebra& alg, const Place& v) {
  if (alg.odd()) return hilbert_symbol(alg.a(), alg.b(), v) == 1;
  require_even_shape(alg);
  // x^2 + x + a is irreducible over F_q iff Tr(a) = 1, and then it stays
  // irreducible over the residue field at v iff deg v is odd.
  const Field& F = alg.field();
  if (F.abs_trace(alg.a().num().coeff(0)) == 0) return true;
  if (v.degree() % 2 == 0) return true;
  const int ob = v.is_infinite() ? alg.b().ord_inf() : v.ord(alg.b());
  return ob % 2 == 0;
}

RamSet ramified_set(const QuatAlgebra& alg) {
  if (!alg.odd()) require_even_shape(alg);
  if (!is_split_at(alg, Place::infinity(alg.field())))
    throw RamifiedAtInfinity("algebra " + alg.to_string() + " ramifies at infinity");
  RamSet R;
  for (const auto& v : candidate_places(alg))
    if (!is_split_at(alg, v)) R.places.push_back(v);
  if (R.places.size() % 2 != 0) throw Error("ramified set of " + alg.to_string() + " has odd cardinality");
  return R;
}

int artin_legendre(const Place& v) {
  if (v.is_infinite()) throw InvalidArgument("artin_legendre is defined at finite places");
  return v.degree() % 2 == 0 ? 1 : -1;
}

AlgebraChoice find_algebra(const Field& F, const RamSet& R, int bound) {
  if (!F.is_odd()) throw Unsupported("find_algebra is implemented for odd q");
  if (R.places.size() % 2 != 0) throw InvalidArgument("ramification set must have even cardinality");
  for (const auto& v : R.places)
    if (v.is_infinite()) throw InvalidArgument("ramification at infinity is not supported");
  RamSet target = R;
  std::sort(target.places.begin(), target.places.end());

  // ab squarefree with prime divisors exactly R forces a = c1 prod(S),
  // b = c2 prod(R \ S); enumerate those in the order (max degree, a, b).
  const std::size_t n = target.places.size();
  std::vector<std::pair<Poly, Poly>> cands;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Poly pa = Poly::constant(F, 1), pb = Poly::constant(F, 1);
    for (std::size_t k = 0; k < n; ++k) {
      Poly& side = (mask >> k) & 1 ? pa : pb;
      side = side * target.places[k].poly();
    }
    if (std::max(pa.deg_or(0), pb.deg_or(0)) > bound || pb.deg_or(0) % 2 != 0) continue;
    for (int c1 = 1; c1 < F.q(); ++c1)
      for (int c2 = 1; c2 < F.q(); ++c2) {
        if (!F.is_square(static_cast<Elt>(c2))) continue;
        cands.emplace_back(pa.scale(static_cast<Elt>(c1)), pb.scale(static_cast<Elt>(c2)));
      }
  }
  std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
    const int dx = std::max(x.first.deg_or(0), x.second.deg_or(0));
    const int dy = std::max(y.first.deg_or(0), y.second.deg_or(0));
    if (dx != dy) return dx < dy;
    return x < y;
  });
  for (const auto& [a, b] : cands) {
    QuatAlgebra alg{RatFunc(a), RatFunc(b)};
    if (!is_split_at(alg, Place::infinity(F))) continue;
    if (ramified_set(alg) == target) return {a, b};
  }
  throw SearchExhausted("no algebra ramified exactly at " + R.to_string() + " with degrees <= " +
                        std::to_string(bound));
}

ProfileChoice find_algebra_for_degrees(const Field& F, std::vector<int> degrees, int bound) {
  if (degrees.empty() || degrees.size() % 2 != 0)
    throw InvalidArgument("ramification set must have even cardinality");
  std::sort(degrees.begin(), degrees.end());
  std::vector<std::vector<Poly>> pools(degrees.back() + 1);
  for (int d : degrees) {
    if (d < 1) throw InvalidArgument("place degrees must be positive");
    if (pools[d].empty()) pools[d] = monic_irreducibles(F, d);
  }
  std::vector<Poly> cur;
  std::optional<ProfileChoice> found;
  // Within a run of equal degrees, pick strictly increasing indices.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) {
    if (found) return;
    if (k == degrees.size()) {
      RamSet R;
      for (const Poly& p : cur) R.places.push_back(Place::finite(p));
      try {
        found = ProfileChoice{R, find_algebra(F, R, bound)};
      } catch (const SearchExhausted&) {
      }
      return;
    }
    const auto& pool = pools[degrees[k]];
    const std::size_t start = (k > 0 && degrees[k] == degrees[k - 1]) ? from : 0;
    for (std::size_t t = start; t < pool.size() && !found; ++t) {
      cur.push_back(pool[t]);
      rec(k + 1, t + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
  if (!found) throw SearchExhausted("no algebra with ramification degrees found within degree bound " +
                                    std::to_string(bound));
  return *found;
}

}  // namespace btq
