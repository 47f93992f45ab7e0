#include "btq/order.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include "btq/errors.hpp"
#include "btq/linalg.hpp"
#include "btq/parallel.hpp"

namespace btq {

StandardOrder::StandardOrder(QuatAlgebra alg) : alg_(std::move(alg)), H_(alg_.over_A()) {}

namespace {

std::array<QuatA, 4> basis(const QuatArith<Poly>& H) { return {H.one(), H.i(), H.j(), H.ij()}; }

Poly det4(const std::array<std::array<Poly, 4>, 4>& m) {
  const Field& F = m[0][0].field();
  Poly det(F);
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) inversions += perm[a] > perm[b];
    Poly term = Poly::constant(F, 1);
    for (int r = 0; r < 4; ++r) term = term * m[r][perm[r]];
    det = inversions % 2 ? det - term : det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// All polynomials of degree <= B (zero first), in canonical order.
std::vector<Poly> polys_up_to(const Field& F, int B) {
  std::vector<Poly> out{Poly(F)};
  long long tail = 1;
  for (int d = 0; d <= B; ++d) {
    for (int lead = 1; lead < F.q(); ++lead)
      for (long long idx = 0; idx < tail; ++idx) {
        std::vector<Elt> c(d + 1);
        c[d] = static_cast<Elt>(lead);
        long long t = idx;
        for (int k = 0; k < d; ++k) {
          c[k] = static_cast<Elt>(t % F.q());
          t /= F.q();
        }
        out.emplace_back(F, std::move(c));
      }
    tail *= F.q();
  }
  return out;
}

int max_deg(const QuatA& x) {
  return std::max({x.x.deg_or(-1), x.y.deg_or(-1), x.z.deg_or(-1), x.w.deg_or(-1)});
}

const Poly& component(const QuatA& x, int k) {
  switch (k) {
    case 0: return x.x;
    case 1: return x.y;
    case 2: return x.z;
    default: return x.w;
  }
}

void require_torsion_shape(const StandardOrder& ord) {
  const auto& alg = ord.algebra();
  if (!alg.a().is_constant() || !alg.b().is_poly())
    throw Unsupported("torsion search needs the shape H(c, r) with c in F_q^x and r in A; got " + alg.to_string());
}

}  // namespace

Poly gram_disc(const StandardOrder& ord) {
  const auto& H = ord.arith();
  const auto e = basis(H);
  std::array<std::array<Poly, 4>, 4> m;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) m[k][l] = H.trace(H.mul(e[k], e[l]));
  return det4(m);
}

bool certify_maximal(StandardOrder& ord) {
  const Poly d = gram_disc(ord);
  const RamSet R = ramified_set(ord.algebra());
  Poly prod = Poly::constant(ord.field(), 1);
  for (const auto& v : R.places) prod = prod * v.poly();
  const auto [quo, rem] = d.divmod(prod * prod);
  const bool ok = !d.is_zero() && rem.is_zero() && quo.deg_or(-1) == 0;
  ord.maximal = ok;
  return ok;
}

bool is_unit(const StandardOrder& ord, const QuatA& x) {
  const Poly n = ord.arith().norm(x);
  return n.deg_or(-1) == 0;
}

int element_order(const StandardOrder& ord, const QuatA& x) {
  const auto& H = ord.arith();
  const auto [t, n] = H.charpoly(x);
  if (t.deg_or(0) > 0 || n.deg_or(-1) != 0) return 0;
  const int q = ord.field().q();
  QuatA p = x;
  const QuatA one = H.one();
  for (int k = 1; k <= q * q - 1; ++k) {
    if (p == one) return k;
    p = H.mul(p, x);
  }
  return 0;
}

bool torsion_less(const QuatA& l, const QuatA& r) {
  if (l.w != r.w) return l.w < r.w;
  if (l.z != r.z) return l.z < r.z;
  if (l.y != r.y) return l.y < r.y;
  return l.x < r.x;
}

std::vector<TorsionUnit> solve_torsion(const StandardOrder& ord, int B) {
  require_torsion_shape(ord);
  const Field& F = ord.field();
  const auto& H = ord.arith();
  const Poly& a = H.a();
  const Poly& r = H.b();
  const auto polys = polys_up_to(F, B);
  std::vector<std::vector<QuatA>> found(polys.size());
  const Elt a_inv = F.inv(a.lc());
  parallel_for(polys.size(), [&](std::size_t zi) {
    const Poly& z = polys[zi];
    for (const Poly& w : polys) {
      if (ord.odd()) {
        // trace 0, norm -a:  a y^2 = a - r (z^2 - a w^2)
        const Poly rhs = Poly::constant(F, 1) - (r * (z * z - a * w * w)).scale(a_inv);
        const auto y = poly_sqrt(rhs);
        if (!y || y->deg_or(-1) > B) continue;
        found[zi].push_back({Poly(F), *y, z, w});
        if (!y->is_zero()) found[zi].push_back({Poly(F), -*y, z, w});
      } else {
        // trace 1, norm a:  x^2 + x = r (z^2 + z w + a w^2)
        for (const Poly& x : artin_schreier_roots(r * (z * z + z * w + a * w * w))) {
          if (x.deg_or(-1) > B) continue;
          found[zi].push_back({x, Poly::constant(F, 1), z, w});
        }
      }
    }
  });
  std::vector<QuatA> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(), torsion_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<TorsionUnit> out;
  for (auto& x : all) {
    const auto [t, n] = H.charpoly(x);
    TorsionUnit u{x, FieldElem(F, t.coeff(0)), FieldElem(F, n.coeff(0)), element_order(ord, x)};
    if (u.order == 0 || u.order % F.p() == 0 || (F.q() * F.q() - 1) % u.order != 0)
      throw Error("torsion solution " + u.to_string() + " has unexpected order " + std::to_string(u.order));
    out.push_back(std::move(u));
  }
  return out;
}

ConjResult conj_search(const StandardOrder& ord, const QuatA& x, const QuatA& y, int B, long long max_candidates) {
  const Field& F = ord.field();
  const auto& H = ord.arith();
  const int n = 4 * (B + 1);
  // Images of the unknowns gamma = T^t e_k under gamma -> gamma x - y gamma.
  std::vector<QuatA> unknowns, images;
  int out_deg = 0;
  for (int k = 0; k < 4; ++k)
    for (int t = 0; t <= B; ++t) {
      QuatA g = H.zero();
      const Poly mono = Poly::monomial(F, 1, t);
      (k == 0 ? g.x : k == 1 ? g.y : k == 2 ? g.z : g.w) = mono;
      unknowns.push_back(g);
      images.push_back(H.mul(g, x) - H.mul(y, g));
      out_deg = std::max(out_deg, max_deg(images.back()));
    }
  FqMatrix rows;
  for (int k = 0; k < 4; ++k)
    for (int t = 0; t <= out_deg; ++t) {
      std::vector<Elt> row(n);
      bool nonzero = false;
      for (int c = 0; c < n; ++c) {
        row[c] = component(images[c], k).coeff(t);
        nonzero |= row[c] != 0;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  const auto kernel = nullspace(F, std::move(rows), n);
  ConjResult res;
  res.bound = B;
  res.kernel_dim = static_cast<int>(kernel.size());
  if (kernel.empty()) return res;
  std::vector<QuatA> gens;
  for (const auto& v : kernel) {
    QuatA g = H.zero();
    for (int c = 0; c < n; ++c)
      if (v[c]) g = g + unknowns[c].scale(Poly::constant(F, v[c]));
    gens.push_back(g);
  }
  // Projective enumeration: the last nonzero coefficient is 1.
  const int dim = static_cast<int>(gens.size());
  long double total = 0, pw = 1;
  for (int d = 0; d < dim; ++d) {
    total += pw;
    pw *= F.q();
  }
  if (total > static_cast<long double>(max_candidates))
    throw ResourceGuard("conj_search at B=" + std::to_string(B) + " would test " + std::to_string(static_cast<double>(total)) +
                        " candidates");
  for (int top = 0; top < dim; ++top) {
    long long combos = 1;
    for (int d = 0; d < top; ++d) combos *= F.q();
    for (long long idx = 0; idx < combos; ++idx) {
      QuatA g = gens[top];
      long long t = idx;
      for (int d = 0; d < top; ++d) {
        const Elt c = static_cast<Elt>(t % F.q());
        t /= F.q();
        if (c) g = g + gens[d].scale(Poly::constant(F, c));
      }
      if (is_unit(ord, g)) {
        res.witness = g;
        return res;
      }
    }
  }
  return res;
}

long long eichler_expected(const std::vector<int>& ram_degrees) {
  for (int d : ram_degrees)
    if (d % 2 == 0) return 0;
  return 1LL << ram_degrees.size();
}

TorsionCensus torsion_classes(const StandardOrder& ord, int B, int max_conj_bound) {
  TorsionCensus census;
  census.expected = eichler_expected(ramified_set(ord.algebra()).degrees());
  // A ramified place of even degree splits F_{q^2}F, which then cannot embed
  // into the algebra: there is nothing to search for.
  if (census.expected == 0) return census;
  const auto units = solve_torsion(ord, B);
  int bound = ord.algebra().b().num().deg_or(0) + 2;
  for (;;) {
    census.classes.clear();
    census.conj_bound = bound;
    for (const auto& u : units) {
      bool placed = false;
      for (auto& cls : census.classes) {
        if (conj_search(ord, cls.members.front().element, u.element, bound).witness) {
          cls.members.push_back(u);
          placed = true;
          break;
        }
      }
      if (!placed) census.classes.push_back({{u}});
    }
    if (static_cast<long long>(census.classes.size()) <= census.expected || bound * 2 > max_conj_bound) break;
    bound *= 2;
  }
  return census;
}

}  // namespace btq
