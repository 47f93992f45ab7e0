#pragma once

#include "btq/errors.hpp"

namespace btq {

template <class Fn>
auto with_precision(const QuatAlgebra& alg, int start, Fn&& f) -> decltype(f(std::declval<const SplitEmbedding&>())) {
  for (int prec = start;; prec *= 2) {
    try {
      const SplitEmbedding emb(alg, prec);
      return f(emb);
    } catch (const PrecisionLoss&) {
      if (prec * 2 > kMaxPrecision) throw;
    }
  }
}

}  // namespace btq
