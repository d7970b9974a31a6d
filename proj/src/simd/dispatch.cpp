#include "boettcher/simd/series.hpp"

#include <cstdlib>
#include <string>

namespace boettcher::simd {

std::string_view kernel_name(Kernel k) { return k == Kernel::avx2 ? "avx2" : "scalar"; }

Kernel active_kernel() {
  static const Kernel chosen = [] {
    const char* force = std::getenv("BOETTCHER_FORCE_SCALAR");
    if (force != nullptr && std::string(force) == "1") return Kernel::scalar;
    return avx2_available() ? Kernel::avx2 : Kernel::scalar;
  }();
  return chosen;
}

void eval_series(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out) {
  if (active_kernel() == Kernel::avx2)
    eval_series_avx2(terms, points, out);
  else
    eval_series_scalar(terms, points, out);
}

}  // namespace boettcher::simd
