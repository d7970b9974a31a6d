#pragma once

#include "boettcher/simd/series.hpp"

#include <algorithm>

namespace boettcher::simd::detail {

struct ExponentRange {
  int max_n = 0;
  int max_pos_m = 0;
  int max_neg_m = 0;
};

inline ExponentRange exponent_range(std::span<const SeriesTerm> terms) {
  ExponentRange r;
  for (const auto& t : terms) {
    r.max_n = std::max(r.max_n, t.n);
    r.max_pos_m = std::max(r.max_pos_m, t.m);
    r.max_neg_m = std::max(r.max_neg_m, -t.m);
  }
  return r;
}

// Scalar evaluation of points [begin, end). The AVX2 kernel uses it for the
// ragged tail so that every point goes through the same operation sequence.
void eval_series_scalar_range(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out,
                              std::size_t begin, std::size_t end);

}  // namespace boettcher::simd::detail
