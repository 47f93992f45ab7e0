#pragma once

// Dense linear algebra over F_q and over Z.

#include <cstdint>
#include <vector>

#include "btq/gfpoly.hpp"

namespace btq {

using FqMatrix = std::vector<std::vector<Elt>>;

// Basis of {x : M x = 0} for an m x n matrix given by rows. Each basis vector
// has a 1 in its free column and zeros in the other free columns.
std::vector<std::vector<Elt>> nullspace(const Field& f, FqMatrix rows, int ncols);

// Invariant factors d_1 | d_2 | ... of an integer matrix, zeros included.
std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> m);

}  // namespace btq
