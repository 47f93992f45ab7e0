#pragma once

// Shared generators for randomized tests. Seeds are fixed so failures replay.

#include <random>

#include "btq/gfpoly.hpp"
#include "btq/laurent.hpp"

namespace btq::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Elt elt(const Field& f) { return static_cast<Elt>(uniform(0, f.q() - 1)); }
  Elt nonzero(const Field& f) { return static_cast<Elt>(uniform(1, f.q() - 1)); }

  Poly poly(const Field& f, int max_deg) {
    const int d = uniform(-1, max_deg);
    std::vector<Elt> c(static_cast<std::size_t>(d + 1));
    for (auto& x : c) x = elt(f);
    if (d >= 0) c.back() = nonzero(f);
    return Poly(f, c);
  }
  Poly nonzero_poly(const Field& f, int max_deg) {
    Poly p = poly(f, max_deg);
    while (p.is_zero()) p = poly(f, max_deg);
    return p;
  }
  RatFunc ratfunc(const Field& f, int max_deg) {
    return RatFunc(poly(f, max_deg), nonzero_poly(f, max_deg));
  }
  RatFunc nonzero_ratfunc(const Field& f, int max_deg) {
    return RatFunc(nonzero_poly(f, max_deg), nonzero_poly(f, max_deg));
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace btq::testing
