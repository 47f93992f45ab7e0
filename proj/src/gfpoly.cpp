#include "btq/gfpoly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>

#include "btq/errors.hpp"

namespace btq {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Small dense polynomials over F_p used only while building a Field.
using IntPoly = std::vector<int>;

IntPoly intpoly_mod(IntPoly a, const IntPoly& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  // m is monic
  for (int k = static_cast<int>(a.size()) - 1; k >= dm; --k) {
    const int c = a[k] % p;
    if (c == 0) continue;
    for (int i = 0; i <= dm; ++i) a[k - dm + i] = ((a[k - dm + i] - c * m[i]) % p + p) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), dm));
  return a;
}

bool intpoly_irreducible(const IntPoly& m, int p) {
  const int n = static_cast<int>(m.size()) - 1;
  // Trial division by every monic polynomial of degree 1..n/2.
  for (int d = 1; 2 * d <= n; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      IntPoly div(d + 1, 0);
      div[d] = 1;
      long long c = code;
      for (int i = 0; i < d; ++i) {
        div[i] = static_cast<int>(c % p);
        c /= p;
      }
      IntPoly r = intpoly_mod(m, div, p);
      if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) return false;
    }
  }
  return true;
}

IntPoly smallest_irreducible(int p, int e) {
  if (e == 1) return {0, 1};
  long long count = 1;
  for (int i = 0; i < e; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    IntPoly m(e + 1, 0);
    m[e] = 1;
    long long c = code;
    for (int i = 0; i < e; ++i) {
      m[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (m[0] == 0) continue;
    if (intpoly_irreducible(m, p)) return m;
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

}  // namespace

// ---------------------------------------------------------------- Field

Field::Field(int p, int e, std::vector<int> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < e; ++i) q_ *= p;
  const auto to_digits = [&](int v) {
    IntPoly d(e, 0);
    for (int i = 0; i < e; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  const auto from_digits = [&](const IntPoly& d) {
    int v = 0;
    for (int i = e - 1; i >= 0; --i) v = v * p + d[i];
    return v;
  };
  const std::size_t qq = static_cast<std::size_t>(q_) * q_;
  add_.resize(qq);
  mul_.resize(qq);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  sqrt_.assign(q_, kNone);
  trace_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    const IntPoly da = to_digits(a);
    IntPoly dn(e);
    for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<Elt>(from_digits(dn));
    for (int b = 0; b < q_; ++b) {
      const IntPoly db = to_digits(b);
      IntPoly s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      add_[idx(a, b)] = static_cast<Elt>(from_digits(s));
      IntPoly prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      IntPoly r = (e == 1) ? prod : intpoly_mod(prod, modulus_, p);
      r.resize(e, 0);
      mul_[idx(a, b)] = static_cast<Elt>(from_digits(r));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[idx(a, b)] == 1) inv_[a] = static_cast<Elt>(b);
  for (int r = q_ - 1; r >= 0; --r) sqrt_[mul_[idx(r, r)]] = static_cast<Elt>(r);
  for (int a = 0; a < q_; ++a) {
    // Tr(a) = a + a^p + ... + a^{p^{e-1}} lies in F_p, i.e. has index < p.
    Elt t = 0, x = static_cast<Elt>(a);
    for (int i = 0; i < e; ++i) {
      t = add(t, x);
      x = pow(x, static_cast<std::uint64_t>(p));
    }
    trace_[a] = t;
  }
  if (p_ != 2) {
    for (int a = 1; a < q_; ++a)
      if (!is_square(static_cast<Elt>(a))) {
        xi_ = static_cast<Elt>(a);
        break;
      }
  } else {
    for (int a = 1; a < q_; ++a)
      if (trace_[a] == 1) {
        xi_ = static_cast<Elt>(a);
        break;
      }
  }
}

const Field& Field::make(int p, int e, int bound) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw InvalidArgument("field extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > kHardFieldBound) break;
  }
  const int limit = std::min(bound, kHardFieldBound);
  if (q > limit)
    throw InvalidArgument("field size " + std::to_string(p) + "^" + std::to_string(e) + " exceeds the bound " +
                          std::to_string(limit));
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, e}];
  if (!slot) slot.reset(new Field(p, e, smallest_irreducible(p, e)));
  return *slot;
}

const Field& Field::from_q(int q, int bound) {
  if (q < 2) throw InvalidArgument("q must be a prime power >= 2");
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int e = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return make(p, e, bound);
  }
  throw InvalidArgument(std::to_string(q) + " is not a prime power");
}

const Field& make_field(int p, int e) { return Field::make(p, e); }

FieldElem choose_xi(const Field& f) { return {f, f.xi()}; }

Elt Field::inv(Elt a) const {
  if (a == 0) throw InvalidArgument("division by zero in F_" + std::to_string(q_));
  return inv_[a];
}

Elt Field::pow(Elt a, std::uint64_t n) const {
  Elt r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

Elt Field::from_int(long long n) const {
  const long long r = ((n % p_) + p_) % p_;
  return static_cast<Elt>(r);  // prime subfield occupies indices [0, p)
}

std::vector<int> Field::digits(Elt a) const {
  std::vector<int> d(e_);
  int v = a;
  for (int i = 0; i < e_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

std::optional<Elt> Field::sqrt(Elt a) const {
  if (a == 0) return Elt{0};
  if (sqrt_[a] == kNone) return std::nullopt;
  return sqrt_[a];
}

int Field::order(Elt a) const {
  if (a == 0) throw InvalidArgument("zero has no multiplicative order");
  int n = 1;
  for (Elt x = a; x != 1; x = mul(x, a)) ++n;
  return n;
}

std::string Field::format(Elt a) const {
  if (e_ == 1) return std::to_string(a);
  const auto d = digits(a);
  std::string out;
  for (int i = e_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "z";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- Degree

int Degree::value() const {
  if (is_neg_inf()) throw InvalidArgument("degree of the zero polynomial is -inf");
  return v_;
}

std::string Degree::to_string() const { return is_neg_inf() ? "-inf" : std::to_string(v_); }

// ---------------------------------------------------------------- Poly

Poly::Poly(const Field& f, std::vector<Elt> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(const Field& f, Elt c, int k) {
  if (c == 0) return Poly(f);
  std::vector<Elt> v(k + 1, 0);
  v[k] = c;
  return Poly(f, std::move(v));
}

Poly Poly::from_ints(const Field& f, const std::vector<long long>& coeffs) {
  std::vector<Elt> v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.push_back(f.from_int(c));
  return Poly(f, std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  const Field& f = f_ ? *f_ : *o.f_;
  std::vector<Elt> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Poly(f, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  const Field& f = f_ ? *f_ : *o.f_;
  std::vector<Elt> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Poly(f, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  const Field& f = f_ ? *f_ : *o.f_;
  if (c_.empty() || o.c_.empty()) return Poly(f);
  std::vector<Elt> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(c_[i], o.c_[j]));
  }
  return Poly(f, std::move(r));
}

Poly Poly::operator-() const {
  std::vector<Elt> r(c_);
  for (auto& x : r) x = f_->neg(x);
  return Poly(*f_, std::move(r));
}

Poly Poly::scale(Elt c) const {
  if (c == 0) return Poly(*f_);
  std::vector<Elt> r(c_);
  for (auto& x : r) x = f_->mul(x, c);
  return Poly(*f_, std::move(r));
}

Poly Poly::shift(int k) const {
  if (c_.empty() || k == 0) return *this;
  std::vector<Elt> r(k, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return Poly(*f_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
  const Field& f = *d.f_;
  if (c_.size() < d.c_.size()) return {Poly(f), *this};
  std::vector<Elt> r(c_);
  const int dd = static_cast<int>(d.c_.size()) - 1;
  std::vector<Elt> quo(c_.size() - d.c_.size() + 1, 0);
  const Elt inv_lc = f.inv(d.c_.back());
  for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
    if (r[k] == 0) continue;
    const Elt c = f.mul(r[k], inv_lc);
    quo[k - dd] = c;
    for (int i = 0; i <= dd; ++i) r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, d.c_[i]));
  }
  r.resize(dd);
  return {Poly(f, std::move(quo)), Poly(f, std::move(r))};
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scale(f_->inv(c_.back()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(*f_);
  std::vector<Elt> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->mul(c_[i], f_->from_int(static_cast<long long>(i)));
  return Poly(*f_, std::move(r));
}

Poly Poly::pow(std::uint64_t n) const {
  Poly r = one_like(), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

FieldElem Poly::eval(FieldElem x) const {
  Elt acc = 0;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = f_->add(f_->mul(acc, x.raw()), c_[i]);
  return {*f_, acc};
}

Poly Poly::compose(const Poly& g) const {
  Poly acc(*f_);
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = acc * g + constant(*f_, c_[i]);
  return acc;
}

std::strong_ordering Poly::operator<=>(const Poly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() <=> o.c_.size();
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
  return std::strong_ordering::equal;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    if (c_[k] == 0) continue;
    std::string cs = f_->format(c_[k]);
    const bool composite = cs.find('+') != std::string::npos;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += composite && !out.empty() ? "(" + cs + ")" : cs;
      continue;
    }
    if (c_[k] != 1) out += (composite ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b, s0 = a.one_like(), s1 = a.zero_like(), t0 = a.zero_like(), t1 = a.one_like();
  while (!r1.is_zero()) {
    auto [qu, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = s0 - qu * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
    Poly t = t0 - qu * t1;
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elt inv = r0.field().inv(r0.lc());
  return {r0.scale(inv), s0.scale(inv), t0.scale(inv)};
}

Poly invmod(const Poly& a, const Poly& m) {
  XGcd g = xgcd(a % m, m);
  if (!g.g.is_one()) throw InvalidArgument("polynomial is not invertible modulo " + m.to_string());
  return g.s % m;
}

Poly powmod(const Poly& base, unsigned __int128 n, const Poly& mod) {
  Poly r = base.one_like() % mod, b = base % mod;
  while (n) {
    if (n & 1) r = (r * b) % mod;
    n >>= 1;
    if (n) b = (b * b) % mod;
  }
  return r;
}

std::optional<Poly> poly_sqrt(const Poly& f) {
  const Field& F = f.field();
  if (f.is_zero()) return f;
  const int d = f.deg_or(0);
  if (d % 2 != 0) return std::nullopt;
  if (!F.is_odd()) {
    // Frobenius is bijective on F_q: the root is sum sqrt(f_{2k}) T^k.
    std::vector<Elt> r(d / 2 + 1, 0);
    for (int k = 0; k <= d; ++k) {
      if (k % 2 == 1) {
        if (f.coeff(k) != 0) return std::nullopt;
        continue;
      }
      r[k / 2] = *F.sqrt(f.coeff(k));
    }
    return Poly(F, std::move(r));
  }
  const auto lead = F.sqrt(f.lc());
  if (!lead) return std::nullopt;
  const int n = d / 2;
  std::vector<Elt> r(n + 1, 0);
  r[n] = *lead;
  const Elt inv_two_lead = F.inv(F.mul(F.from_int(2), *lead));
  for (int k = n - 1; k >= 0; --k) {
    Poly cur(F, r);
    Poly resid = f - cur * cur;
    r[k] = F.mul(resid.coeff(n + k), inv_two_lead);
  }
  Poly root(F, std::move(r));
  if (root * root != f) return std::nullopt;
  return root;
}

std::vector<Poly> artin_schreier_roots(const Poly& g) {
  const Field& F = g.field();
  if (F.is_odd()) throw Unsupported("Artin-Schreier roots need characteristic 2");
  const int n = std::max(g.deg_or(0), 0);
  std::vector<Poly> out;
  for (int a0 = 0; a0 < F.q(); ++a0) {
    const Elt x = static_cast<Elt>(a0);
    if (F.add(F.mul(x, x), x) != g.coeff(0)) continue;
    std::vector<Elt> a(n + 1, 0);
    a[0] = x;
    for (int k = 1; k <= n; ++k) {
      Elt v = g.coeff(k);
      if (k % 2 == 0) v = F.add(v, F.mul(a[k / 2], a[k / 2]));
      a[k] = v;
    }
    Poly cand(F, std::move(a));
    if (cand * cand + cand == g) out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- factoring

namespace {

// p-th root of a polynomial in F_q[T^p].
Poly pth_root(const Poly& f) {
  const Field& F = f.field();
  const int p = F.p();
  std::uint64_t e = 1;  // x -> x^{q/p} inverts Frobenius
  for (int i = 1; i < F.e(); ++i) e *= p;
  std::vector<Elt> r(f.deg_or(0) / p + 1, 0);
  for (int k = 0; k <= f.deg_or(-1); k += p) r[k / p] = F.pow(f.coeff(k), e);
  return Poly(F, std::move(r));
}

void squarefree_parts(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.deg_or(0) == 0) return;
  const Field& F = f.field();
  const Poly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree_parts(pth_root(f), mult * F.p(), out);
    return;
  }
  Poly c = gcd(f, fp);
  Poly w = f / c;
  int i = 1;
  while (w.deg_or(0) > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.deg_or(0) > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.deg_or(0) > 0) squarefree_parts(pth_root(c.monic()), mult * F.p(), out);
}

unsigned __int128 ipow128(unsigned __int128 b, int e) {
  unsigned __int128 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void equal_degree_split(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const int n = g.deg_or(0);
  if (n == d) {
    out.push_back(g.monic());
    return;
  }
  const Field& F = g.field();
  std::uniform_int_distribution<int> coin(0, F.q() - 1);
  for (;;) {
    std::vector<Elt> rc(n);
    for (auto& x : rc) x = static_cast<Elt>(coin(rng));
    Poly a(F, std::move(rc));
    if (a.deg_or(0) < 1) continue;
    Poly b;
    if (F.is_odd()) {
      const unsigned __int128 e = (ipow128(F.q(), d) - 1) / 2;
      b = powmod(a, e, g) - a.one_like();
    } else {
      // Absolute trace map a + a^2 + ... + a^{2^{ed-1}} mod g.
      Poly t = a % g, acc = a % g;
      for (int k = 1; k < F.e() * d; ++k) {
        t = (t * t) % g;
        acc = acc + t;
      }
      b = acc;
    }
    Poly h = gcd(g, b);
    const int dh = h.deg_or(0);
    if (dh > 0 && dh < n) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

Poly Factorization::expand() const {
  Poly r = Poly::constant(unit);
  for (const auto& fa : factors) r = r * fa.poly.pow(static_cast<std::uint64_t>(fa.multiplicity));
  return r;
}

Factorization factor(const Poly& f) {
  if (f.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  const Field& F = f.field();
  Factorization out{FieldElem(F, f.lc()), {}};
  std::vector<std::pair<Poly, int>> sqf;
  squarefree_parts(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x5eed);
  std::map<Poly, int> acc;
  for (auto& [part, mult] : sqf) {
    // distinct-degree factorization
    Poly rest = part;
    Poly h = Poly::T(F) % rest;
    const Poly X = Poly::T(F);
    for (int i = 1; rest.deg_or(0) >= 2 * i; ++i) {
      h = powmod(h, static_cast<unsigned __int128>(F.q()), rest);
      Poly g = gcd(h - X, rest);
      if (g.deg_or(0) > 0) {
        std::vector<Poly> pieces;
        equal_degree_split(g, i, rng, pieces);
        for (auto& pc : pieces) acc[pc] += mult;
        rest = rest / g;
        h = h % rest;
      }
    }
    if (rest.deg_or(0) > 0) acc[rest.monic()] += mult;
  }
  for (auto& [p, m] : acc) out.factors.push_back({p, m});
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.is_zero()) throw InvalidArgument("is_irreducible of the zero polynomial");
  const int n = f.deg_or(0);
  if (n < 1) return false;
  if (n == 1) return true;
  // Rabin: T^{q^n} = T mod f and gcd(T^{q^{n/r}} - T, f) = 1 for primes r | n.
  const Field& F = f.field();
  const Poly g = f.monic();
  const Poly X = Poly::T(F);
  std::vector<int> primes;
  for (int r = 2, m = n; r <= m; ++r)
    if (m % r == 0) {
      primes.push_back(r);
      while (m % r == 0) m /= r;
    }
  std::vector<Poly> frob(n + 1, X % g);  // frob[k] = T^{q^k} mod g
  for (int k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], static_cast<unsigned __int128>(F.q()), g);
  if (frob[n] != X % g) return false;
  for (int r : primes)
    if (!gcd(frob[n / r] - X, g).is_one()) return false;
  return true;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  if (f.deg_or(0) == 0) return true;
  const Poly fp = f.derivative();
  if (fp.is_zero()) return false;
  return gcd(f, fp).is_one();
}

long long count_irreducible(int q, int d) {
  // (1/d) sum_{k | d} mu(k) q^{d/k}
  const auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    if (n > 1) m = -m;
    return m;
  };
  long long total = 0;
  for (int k = 1; k <= d; ++k) {
    if (d % k) continue;
    long long pw = 1;
    for (int i = 0; i < d / k; ++i) pw *= q;
    total += mobius(k) * pw;
  }
  return total / d;
}

std::vector<Poly> monic_irreducibles(const Field& f, int d) {
  long long count = 1;
  for (int i = 0; i < d; ++i) {
    count *= f.q();
    if (count > 5'000'000) throw ResourceGuard("too many candidate polynomials to enumerate");
  }
  std::vector<Poly> out;
  for (long long code = 0; code < count; ++code) {
    std::vector<Elt> c(d + 1, 0);
    c[d] = 1;
    long long x = code;
    for (int i = 0; i < d; ++i) {
      c[i] = static_cast<Elt>(x % f.q());
      x /= f.q();
    }
    Poly p(f, std::move(c));
    if (is_irreducible(p)) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int sqr_test_residue(const Poly& f, const Poly& g) {
  const Field& F = f.field();
  if (!F.is_odd()) throw Unsupported("quadratic residue symbol needs odd q; use the trace criterion");
  if (!is_irreducible(f)) throw InvalidArgument("sqr_test_residue: modulus " + f.to_string() + " is not irreducible");
  const Poly r = g % f;
  if (r.is_zero()) return 0;
  const unsigned __int128 e = (ipow128(F.q(), f.deg_or(0)) - 1) / 2;
  const Poly s = powmod(r, e, f);
  if (s.is_one()) return 1;
  if (s == Poly::constant(F, F.neg(1))) return -1;
  throw Error("residue symbol did not evaluate to +-1");
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly& num) : num_(num), den_(num.one_like()) {}

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw InvalidArgument("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = num;
    den_ = den.one_like();
    return;
  }
  const Poly g = gcd(num, den);
  Poly n = num / g, d = den / g;
  const Elt inv = d.field().inv(d.lc());
  num_ = n.scale(inv);
  den_ = d.scale(inv);
}

int RatFunc::ord_inf() const {
  if (is_zero()) throw InvalidArgument("ord of zero");
  return den_.deg_or(0) - num_.deg_or(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw InvalidArgument("division by the zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}
RatFunc RatFunc::inv() const { return one_like() / *this; }

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  auto wrap = [](const std::string& t) {
    return t.find_first_of("+-") == std::string::npos ? t : "(" + t + ")";
  };
  return wrap(num_.to_string()) + "/" + wrap(den_.to_string());
}

// ---------------------------------------------------------------- Place

Place Place::infinity(const Field& f) {
  Place pl;
  pl.f_ = &f;
  pl.infinite_ = true;
  return pl;
}

Place Place::finite(const Poly& p) {
  if (!p.is_monic() || !is_irreducible(p))
    throw InvalidArgument("a finite place needs a monic irreducible polynomial, got " + p.to_string());
  Place pl;
  pl.f_ = &p.field();
  pl.poly_ = p;
  return pl;
}

const Poly& Place::poly() const {
  if (infinite_) throw InvalidArgument("the place at infinity has no polynomial");
  return poly_;
}

long long Place::norm() const {
  long long r = 1;
  for (int i = 0; i < degree(); ++i) r *= f_->q();
  return r;
}

int Place::ord(const Poly& a) const {
  if (a.is_zero()) throw InvalidArgument("valuation of zero");
  if (infinite_) return -a.deg_or(0);
  int k = 0;
  Poly x = a;
  for (;;) {
    auto [qu, r] = x.divmod(poly_);
    if (!r.is_zero()) return k;
    x = std::move(qu);
    ++k;
  }
}

int Place::ord(const RatFunc& a) const { return ord(a.num()) - ord(a.den()); }

bool Place::operator==(const Place& o) const {
  return infinite_ == o.infinite_ && (infinite_ || poly_ == o.poly_);
}

std::strong_ordering Place::operator<=>(const Place& o) const {
  if (infinite_ != o.infinite_) return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (infinite_) return std::strong_ordering::equal;
  return poly_ <=> o.poly_;
}

std::string Place::to_string() const { return infinite_ ? "inf" : poly_.to_string(); }

// ---------------------------------------------------------------- Mobius

Mobius Mobius::inverse() const { return {w, -y, -z, x}; }

Mobius Mobius::compose(const Mobius& in) const {
  // [[x,y],[z,w]] * [[in.x,in.y],[in.z,in.w]]
  return {x * in.x + y * in.z, x * in.y + y * in.w, z * in.x + w * in.z, z * in.y + w * in.w};
}

bool Mobius::is_identity() const { return y.is_zero() && z.is_zero() && x == w && !x.is_zero(); }

FieldElem Mobius::apply(FieldElem t) const {
  const FieldElem den = z * t + w;
  if (den.is_zero()) throw InvalidArgument("Mobius map sends this point to infinity");
  return (x * t + y) / den;
}

namespace {
// Homogenized p((xT+y)/(zT+w)) * (zT+w)^n with n = deg p.
Poly homogenized(const Poly& p, const Mobius& m, int n) {
  const Field& F = p.field();
  const Poly lin_num(F, {m.y.raw(), m.x.raw()});
  const Poly lin_den(F, {m.w.raw(), m.z.raw()});
  Poly acc(F);
  for (int k = 0; k <= p.deg_or(-1); ++k) {
    if (p.coeff(k) == 0) continue;
    acc = acc + (lin_num.pow(k) * lin_den.pow(static_cast<std::uint64_t>(n - k))).scale(p.coeff(k));
  }
  return acc;
}
}  // namespace

RatFunc substitute(const RatFunc& r, const Mobius& m) {
  if (r.is_zero()) return r;
  const Field& F = r.field();
  const int n1 = r.num().deg_or(0), n2 = r.den().deg_or(0);
  const Poly lin_den(F, {m.w.raw(), m.z.raw()});
  const Poly top = homogenized(r.num(), m, n1);
  const Poly bot = homogenized(r.den(), m, n2);
  if (n2 >= n1) return RatFunc(top * lin_den.pow(static_cast<std::uint64_t>(n2 - n1)), bot);
  return RatFunc(top, bot * lin_den.pow(static_cast<std::uint64_t>(n1 - n2)));
}

RatFunc pushforward(const RatFunc& r, const Mobius& m) { return substitute(r, m.inverse()); }

Mobius mobius_two_points(const Place& x1, const Place& x2) {
  if (x1.is_infinite() || x2.is_infinite() || x1.degree() != 1 || x2.degree() != 1)
    throw InvalidArgument("mobius_two_points needs two finite places of degree 1");
  if (x1 == x2) throw InvalidArgument("mobius_two_points needs distinct places");
  const Field& F = x1.field();
  const FieldElem c = -x1.poly().coeff_elem(0);
  const FieldElem d = -x2.poly().coeff_elem(0);
  const FieldElem inv = (d - c).inv();
  return {inv, -c * inv, FieldElem(F, 0), FieldElem(F, 1)};
}

}  // namespace btq
