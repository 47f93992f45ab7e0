#include "btq/parse.hpp"

#include <cctype>
#include <charconv>

#include "btq/errors.hpp"

namespace btq {

namespace {

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) throw ParseError("expected an integer for " + what + ", got '" + s + "'");
  return v;
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

class ExprParser {
 public:
  ExprParser(const Field& f, const std::string& text) : f_(f), s_(text) {}

  RatFunc run() {
    RatFunc v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_atom() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  RatFunc constant(Elt e) const { return RatFunc(Poly::constant(f_, e)); }

  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return v;
      ++pos_;
      const RatFunc t = term();
      v = c == '+' ? v + t : v - t;
    }
  }

  RatFunc term() {
    RatFunc v = unary();
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        const RatFunc t = unary();
        if (c == '/') {
          if (t.is_zero()) fail("division by zero");
          v = v / t;
        } else {
          v = v * t;
        }
      } else if (starts_atom()) {
        v = v * power();
      } else {
        return v;
      }
    }
  }

  RatFunc unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const int n = parse_int(s_.substr(start, pos_ - start), "exponent");
    if (neg) {
      if (base.is_zero()) fail("zero to a negative power");
      base = base.inv();
    }
    RatFunc out = base.one_like();
    for (int k = 0; k < n; ++k) out *= base;
    return out;
  }

  RatFunc atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      long long n = 0;
      for (std::size_t k = start; k < pos_; ++k) n = (n * 10 + (s_[k] - '0')) % f_.p();
      return constant(f_.from_int(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "T") return RatFunc(Poly::T(f_));
      if (id == "xi") return constant(f_.xi());
      if (id == "z") {
        if (f_.e() == 1) fail("'z' needs a non-prime field");
        return constant(static_cast<Elt>(f_.p()));
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end of input");
  }

  const Field& f_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

const Field& parse_field(const std::string& spec) {
  const std::string s = strip(spec);
  if (s.rfind("q=", 0) == 0) return Field::from_q(parse_int(strip(s.substr(2)), "q"));
  if (s.rfind("p=", 0) == 0) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return Field::make(parse_int(strip(s.substr(2)), "p"), 1);
    const std::string rest = strip(s.substr(comma + 1));
    if (rest.rfind("e=", 0) != 0) throw ParseError("expected 'e=' in field spec '" + spec + "'");
    return Field::make(parse_int(strip(s.substr(2, comma - 2)), "p"), parse_int(strip(rest.substr(2)), "e"));
  }
  return Field::from_q(parse_int(s, "q"));
}

RatFunc parse_ratfunc(const Field& f, const std::string& text) { return ExprParser(f, text).run(); }

Poly parse_poly(const Field& f, const std::string& text) {
  const RatFunc r = parse_ratfunc(f, text);
  if (!r.is_poly()) throw ParseError("'" + text + "' is not a polynomial");
  return r.num();
}

QuatAlgebra parse_algebra(const Field& f, const std::string& spec) {
  const std::string s = strip(spec);
  if (s.size() < 4 || s[0] != 'H' || s[1] != '(' || s.back() != ')')
    throw ParseError("algebra spec must look like H(a, b), got '" + spec + "'");
  const std::string inner = s.substr(2, s.size() - 3);
  // Split at the top-level comma.
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    if (inner[k] == '(') ++depth;
    if (inner[k] == ')') --depth;
    if (inner[k] == ',' && depth == 0) {
      if (split != std::string::npos) throw ParseError("too many arguments in '" + spec + "'");
      split = k;
    }
  }
  if (split == std::string::npos) throw ParseError("algebra spec needs two arguments: '" + spec + "'");
  const RatFunc a = parse_ratfunc(f, inner.substr(0, split));
  const RatFunc b = parse_ratfunc(f, inner.substr(split + 1));
  if (a.is_zero() || b.is_zero()) throw ParseError("algebra parameters must be nonzero: '" + spec + "'");
  return QuatAlgebra(a, b);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  const std::string s = strip(text);
  if (s.empty()) throw ParseError("empty list");
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(parse_int(strip(s.substr(start, comma - start)), "list entry"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace btq
