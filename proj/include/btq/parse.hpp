#pragma once

// Text input: field specs, polynomial and rational-function expressions in
// T, and algebra specs. All failures raise ParseError.

#include <string>
#include <vector>

#include "btq/gfpoly.hpp"
#include "btq/quat.hpp"

namespace btq {

// "9", "q=9" or "p=3,e=2".
const Field& parse_field(const std::string& spec);

// Expression over F_q(T): integers (mapped through F_p), T, z (the root of the
// field modulus), xi, + - * / ^ and parentheses. Juxtaposition multiplies, so
// "2T" and "T(T-1)" are accepted. Exponents are integer literals.
RatFunc parse_ratfunc(const Field& f, const std::string& text);
// As parse_ratfunc, but the value must be a polynomial.
Poly parse_poly(const Field& f, const std::string& text);

// "H(a, b)" with a, b expressions.
QuatAlgebra parse_algebra(const Field& f, const std::string& spec);

// "1,1,2" -> {1, 1, 2}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace btq
