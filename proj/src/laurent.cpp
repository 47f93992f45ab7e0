#include "btq/laurent.hpp"

#include <algorithm>
#include <climits>

#include "btq/errors.hpp"

namespace btq {

namespace {
int clamp_abs(long long a) { return a >= LaurentSeries::kExact ? LaurentSeries::kExact : static_cast<int>(a); }
}  // namespace

LaurentSeries::LaurentSeries(const Field& f, int val, std::vector<Elt> coeffs, int abs_prec)
    : f_(&f), val_(val), c_(std::move(coeffs)), abs_(abs_prec) {
  if (!is_exact() && val_ + static_cast<long long>(c_.size()) > abs_) c_.resize(std::max(0, abs_ - val_));
  normalize();
}

void LaurentSeries::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    val_ = is_exact() ? 0 : abs_;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    val_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

LaurentSeries LaurentSeries::zero(const Field& f, int abs_prec) { return LaurentSeries(f, abs_prec, {}, abs_prec); }

LaurentSeries LaurentSeries::monomial(const Field& f, Elt c, int exponent) {
  return LaurentSeries(f, exponent, {c}, kExact);
}

LaurentSeries LaurentSeries::exact(const Field& f, int val, std::vector<Elt> coeffs) {
  return LaurentSeries(f, val, std::move(coeffs), kExact);
}

LaurentSeries LaurentSeries::from_poly(const Poly& p) {
  if (p.is_zero()) return zero(p.field());
  std::vector<Elt> c(p.coeffs().rbegin(), p.coeffs().rend());
  return exact(p.field(), -p.deg_or(0), std::move(c));
}

Elt LaurentSeries::coeff(int exponent) const {
  if (exponent >= abs_)
    throw PrecisionLoss("coefficient of u^" + std::to_string(exponent) + " is beyond O(u^" + std::to_string(abs_) +
                        ")");
  if (c_.empty() || exponent < val_) return 0;
  const int k = exponent - val_;
  return k < static_cast<int>(c_.size()) ? c_[k] : 0;
}

Elt LaurentSeries::lc() const {
  if (c_.empty()) throw PrecisionLoss("leading coefficient of a zero-to-precision series");
  return c_[0];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  const Field& F = *f_;
  const int abs = std::min(abs_, o.abs_);
  if (c_.empty() && o.c_.empty()) return zero(F, abs);
  int lo = INT_MAX, hi = INT_MIN;  // exponent range [lo, hi)
  for (const auto* s : {this, &o}) {
    if (s->c_.empty()) continue;
    lo = std::min(lo, s->val_);
    hi = std::max(hi, s->val_ + static_cast<int>(s->c_.size()));
  }
  hi = std::min(hi, abs);
  if (lo >= hi) return zero(F, abs);
  std::vector<Elt> r(hi - lo, 0);
  for (int k = lo; k < hi; ++k) {
    Elt a = (k >= val_ && k - val_ < static_cast<int>(c_.size())) ? c_[k - val_] : 0;
    Elt b = (k >= o.val_ && k - o.val_ < static_cast<int>(o.c_.size())) ? o.c_[k - o.val_] : 0;
    r[k - lo] = F.add(a, b);
  }
  return LaurentSeries(F, lo, std::move(r), abs);
}

LaurentSeries LaurentSeries::operator-() const {
  std::vector<Elt> r(c_);
  for (auto& x : r) x = f_->neg(x);
  return LaurentSeries(*f_, val_, std::move(r), abs_);
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  const Field& F = *f_;
  const long long val = static_cast<long long>(val_) + o.val_;
  long long abs = std::min(static_cast<long long>(val_) + o.abs_, static_cast<long long>(o.val_) + abs_);
  if (is_exact() && o.is_exact()) abs = kExact;
  if (c_.empty() || o.c_.empty()) {
    // zero to some precision
    long long za = std::min(c_.empty() ? static_cast<long long>(abs_) + (o.c_.empty() ? o.abs_ : o.val_)
                                       : static_cast<long long>(val_) + o.abs_,
                            o.c_.empty() ? static_cast<long long>(o.abs_) + (c_.empty() ? abs_ : val_)
                                         : static_cast<long long>(o.val_) + abs_);
    if (is_exact() && c_.empty()) za = kExact;
    if (o.is_exact() && o.c_.empty()) za = kExact;
    return zero(F, clamp_abs(za));
  }
  const long long full = static_cast<long long>(c_.size()) + o.c_.size() - 1;
  const long long n = std::min(full, abs - val);
  if (n <= 0) return zero(F, clamp_abs(abs));
  std::vector<Elt> r(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < c_.size() && static_cast<long long>(i) < n; ++i) {
    if (c_[i] == 0) continue;
    const std::size_t jmax = std::min<std::size_t>(o.c_.size(), static_cast<std::size_t>(n - static_cast<long long>(i)));
    for (std::size_t j = 0; j < jmax; ++j) r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
  }
  return LaurentSeries(F, static_cast<int>(val), std::move(r), clamp_abs(abs));
}

LaurentSeries LaurentSeries::scale(Elt c) const {
  if (c == 0) return zero(*f_, abs_);
  std::vector<Elt> r(c_);
  for (auto& x : r) x = f_->mul(x, c);
  return LaurentSeries(*f_, val_, std::move(r), abs_);
}

LaurentSeries LaurentSeries::shift(int k) const {
  LaurentSeries r = *this;
  r.val_ += k;
  if (!is_exact()) r.abs_ += k;
  return r;
}

LaurentSeries LaurentSeries::truncate(int abs_prec) const {
  if (abs_prec >= abs_) return *this;
  std::vector<Elt> r;
  if (!c_.empty() && abs_prec > val_) {
    r.assign(c_.begin(), c_.begin() + std::min<long>(static_cast<long>(c_.size()), abs_prec - val_));
    return LaurentSeries(*f_, val_, std::move(r), abs_prec);
  }
  return zero(*f_, abs_prec);
}

LaurentSeries LaurentSeries::head(int bound) const {
  if (bound > abs_)
    throw PrecisionLoss("need digits below u^" + std::to_string(bound) + " but only O(u^" + std::to_string(abs_) +
                        ") is known");
  if (c_.empty() || bound <= val_) return zero(*f_);
  std::vector<Elt> r(c_.begin(), c_.begin() + std::min<long>(static_cast<long>(c_.size()), bound - val_));
  return exact(*f_, val_, std::move(r));
}

LaurentSeries LaurentSeries::inv(int prec) const {
  if (c_.empty()) throw PrecisionLoss("inversion of a zero-to-precision series");
  const Field& F = *f_;
  if (is_exact() && c_.size() == 1) return monomial(F, F.inv(c_[0]), -val_);
  const int n = is_exact() ? prec : this->prec();
  if (n < kMinCorrectTerms)
    throw PrecisionLoss("inverse would have only " + std::to_string(n) + " correct terms");
  std::vector<Elt> y(n, 0);
  const Elt inv0 = F.inv(c_[0]);
  y[0] = inv0;
  for (int k = 1; k < n; ++k) {
    Elt s = 0;
    const int imax = std::min<int>(k, static_cast<int>(c_.size()) - 1);
    for (int i = 1; i <= imax; ++i) s = F.add(s, F.mul(c_[i], y[k - i]));
    y[k] = F.neg(F.mul(inv0, s));
  }
  return LaurentSeries(F, -val_, std::move(y), -val_ + n);
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
  const int abs = std::min(abs_, o.abs_);
  const LaurentSeries d = (*this - o);
  if (!d.is_zero()) return false;
  (void)abs;
  return true;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  return val_ == o.val_ && c_ == o.c_ && abs_ == o.abs_;
}

std::string LaurentSeries::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const int ex = val_ + static_cast<int>(k);
    std::string cs = f_->format(c_[k]);
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    std::string term;
    if (ex == 0) {
      term = cs;
    } else {
      if (c_[k] != 1) term = cs + "*";
      term += ex == 1 ? "u" : "u^" + std::to_string(ex);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  if (!is_exact()) {
    if (!out.empty()) out += " + ";
    out += "O(u^" + std::to_string(abs_) + ")";
  }
  return out.empty() ? "0" : out;
}

LaurentSeries embed(const RatFunc& r, int prec) {
  const Field& F = r.field();
  if (r.is_zero()) return LaurentSeries::zero(F, prec);
  const LaurentSeries num = LaurentSeries::from_poly(r.num());
  const LaurentSeries den = LaurentSeries::from_poly(r.den());
  // Inverting with a margin keeps `prec` terms after the multiplication.
  const LaurentSeries q = num * den.inv(std::max(prec, kMinCorrectTerms));
  return q.truncate(q.val() + prec);
}

LaurentSeries sqrt(const LaurentSeries& x, int prec) {
  const Field& F = x.field();
  if (!F.is_odd()) throw Unsupported("Laurent square roots are implemented for odd q only");
  if (x.is_zero()) throw NotASquare("square root of a zero-to-precision series");
  if (x.val() % 2 != 0) throw NotASquare("series of odd valuation " + std::to_string(x.val()) + " is not a square");
  const auto lead = F.sqrt(x.lc());
  if (!lead) throw NotASquare("leading coefficient " + F.format(x.lc()) + " is not a square in F_q");
  const int n = x.is_exact() ? prec : x.prec();
  if (n < kMinCorrectTerms) throw PrecisionLoss("square root would have only " + std::to_string(n) + " correct terms");
  // Hensel lifting of y^2 = w on the unit part w = x / (lc u^val), one digit
  // per step: 2 s_0 s_k + sum_{0<i<k} s_i s_{k-i} = w_k with s_0 = 1.
  const Elt inv_lc = F.inv(x.lc());
  std::vector<Elt> w(n, 0);
  for (int k = 0; k < n; ++k) w[k] = F.mul(x.coeff(x.val() + k), inv_lc);
  std::vector<Elt> s(n, 0);
  s[0] = 1;
  const Elt inv2 = F.inv(F.from_int(2));
  for (int k = 1; k < n; ++k) {
    Elt acc = w[k];
    for (int i = 1; i < k; ++i) acc = F.sub(acc, F.mul(s[i], s[k - i]));
    s[k] = F.mul(acc, inv2);
  }
  for (auto& c : s) c = F.mul(c, *lead);
  const int v = x.val() / 2;
  return LaurentSeries(F, v, std::move(s), v + n);
}

// ---------------------------------------------------------------- Mat2K

Mat2K Mat2K::identity(const Field& f) {
  return from(LaurentSeries::one(f), LaurentSeries::zero(f), LaurentSeries::zero(f), LaurentSeries::one(f));
}

Mat2K Mat2K::diag(const LaurentSeries& a, const LaurentSeries& d) {
  return from(a, LaurentSeries::zero(a.field()), LaurentSeries::zero(a.field()), d);
}

Mat2K Mat2K::operator*(const Mat2K& o) const {
  Mat2K r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.at(i, j) = at(i, 0) * o.at(0, j) + at(i, 1) * o.at(1, j);
  return r;
}

Mat2K Mat2K::operator+(const Mat2K& o) const {
  Mat2K r;
  for (int k = 0; k < 4; ++k) r.e[k] = e[k] + o.e[k];
  return r;
}

Mat2K Mat2K::operator-(const Mat2K& o) const {
  Mat2K r;
  for (int k = 0; k < 4; ++k) r.e[k] = e[k] - o.e[k];
  return r;
}

Mat2K Mat2K::scale(const LaurentSeries& s) const {
  Mat2K r;
  for (int k = 0; k < 4; ++k) r.e[k] = e[k] * s;
  return r;
}

LaurentSeries Mat2K::det() const { return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0); }

Mat2K Mat2K::adjugate() const { return from(at(1, 1), -at(0, 1), -at(1, 0), at(0, 0)); }

Mat2K Mat2K::inverse(int prec) const {
  const LaurentSeries d = det();
  if (d.is_zero()) throw PrecisionLoss("matrix is singular to the working precision");
  return adjugate().scale(d.inv(prec));
}

Mat2K Mat2K::transpose() const { return from(at(0, 0), at(1, 0), at(0, 1), at(1, 1)); }

int Mat2K::min_ord() const {
  int m = INT_MAX;
  for (const auto& x : e)
    if (!x.is_zero()) m = std::min(m, x.val());
  if (m == INT_MAX) throw PrecisionLoss("all matrix entries are zero to precision");
  return m;
}

Mat2K Mat2K::pow(int n) const {
  Mat2K r = identity(field()), b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

bool Mat2K::agrees_with(const Mat2K& o) const {
  for (int k = 0; k < 4; ++k)
    if (!e[k].agrees_with(o.e[k])) return false;
  return true;
}

std::string Mat2K::to_string() const {
  return "[[" + e[0].to_string() + ", " + e[1].to_string() + "], [" + e[2].to_string() + ", " + e[3].to_string() +
         "]]";
}

}  // namespace btq
