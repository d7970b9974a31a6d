#include "series_detail.hpp"

#include <stdexcept>
#include <vector>

#if defined(BOETTCHER_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace boettcher::simd {

#if defined(BOETTCHER_HAVE_AVX2)

namespace {

#define BOETTCHER_AVX2 __attribute__((target("avx2"), always_inline)) inline

struct V4c {
  __m256d re;
  __m256d im;
};

BOETTCHER_AVX2 V4c mul4(V4c a, V4c b) {
  __m256d re = _mm256_sub_pd(_mm256_mul_pd(a.re, b.re), _mm256_mul_pd(a.im, b.im));
  __m256d im = _mm256_add_pd(_mm256_mul_pd(a.re, b.im), _mm256_mul_pd(a.im, b.re));
  return {re, im};
}

// Power tables of 4 lanes each; plain doubles with unaligned access, since
// std::vector does not guarantee 32-byte alignment.
struct PowerTable {
  std::vector<double> re, im;
  explicit PowerTable(int max_k) : re(4 * (static_cast<std::size_t>(max_k) + 1)), im(re.size()) {}
};

BOETTCHER_AVX2 V4c load(const PowerTable& t, int k) {
  return {_mm256_loadu_pd(&t.re[4 * static_cast<std::size_t>(k)]), _mm256_loadu_pd(&t.im[4 * static_cast<std::size_t>(k)])};
}

BOETTCHER_AVX2 void store(PowerTable& t, int k, V4c v) {
  _mm256_storeu_pd(&t.re[4 * static_cast<std::size_t>(k)], v.re);
  _mm256_storeu_pd(&t.im[4 * static_cast<std::size_t>(k)], v.im);
}

__attribute__((target("avx2"))) void eval_blocks(std::span<const SeriesTerm> terms, const PointsSoA& points,
                                                 ValuesSoA& out, std::size_t blocks) {
  const detail::ExponentRange range = detail::exponent_range(terms);
  PowerTable zp(range.max_n), wp(range.max_pos_m), wn(range.max_neg_m);
  const V4c one{_mm256_set1_pd(1.0), _mm256_setzero_pd()};
  const __m256d sign = _mm256_set1_pd(-0.0);

  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t i = 4 * b;
    const V4c z{_mm256_loadu_pd(&points.z_re[i]), _mm256_loadu_pd(&points.z_im[i])};
    const V4c w{_mm256_loadu_pd(&points.w_re[i]), _mm256_loadu_pd(&points.w_im[i])};

    store(zp, 0, one);
    for (int k = 1; k <= range.max_n; ++k) store(zp, k, mul4(load(zp, k - 1), z));
    store(wp, 0, one);
    for (int k = 1; k <= range.max_pos_m; ++k) store(wp, k, mul4(load(wp, k - 1), w));
    store(wn, 0, one);
    if (range.max_neg_m > 0) {
      const __m256d s = _mm256_add_pd(_mm256_mul_pd(w.re, w.re), _mm256_mul_pd(w.im, w.im));
      const V4c inv{_mm256_div_pd(w.re, s), _mm256_xor_pd(_mm256_div_pd(w.im, s), sign)};
      for (int k = 1; k <= range.max_neg_m; ++k) store(wn, k, mul4(load(wn, k - 1), inv));
    }

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (const auto& term : terms) {
      const V4c t = mul4(load(zp, term.n), term.m >= 0 ? load(wp, term.m) : load(wn, -term.m));
      const __m256d cre = _mm256_set1_pd(term.re);
      const __m256d cim = _mm256_set1_pd(term.im);
      const __m256d pr = _mm256_sub_pd(_mm256_mul_pd(cre, t.re), _mm256_mul_pd(cim, t.im));
      const __m256d pi = _mm256_add_pd(_mm256_mul_pd(cre, t.im), _mm256_mul_pd(cim, t.re));
      acc_re = _mm256_add_pd(acc_re, pr);
      acc_im = _mm256_add_pd(acc_im, pi);
    }
    _mm256_storeu_pd(&out.re[i], acc_re);
    _mm256_storeu_pd(&out.im[i], acc_im);
  }
}

#undef BOETTCHER_AVX2

}  // namespace

bool avx2_available() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
}

void eval_series_avx2(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out) {
  if (!avx2_available()) throw std::runtime_error("AVX2 kernel requested on a CPU without AVX2");
  for (const auto& t : terms)
    if (t.n < 0) throw std::invalid_argument("series term with negative z exponent");
  out.resize(points.size());
  const std::size_t blocks = points.size() / 4;
  eval_blocks(terms, points, out, blocks);
  detail::eval_series_scalar_range(terms, points, out, 4 * blocks, points.size());
}

#else

bool avx2_available() { return false; }

void eval_series_avx2(std::span<const SeriesTerm>, const PointsSoA&, ValuesSoA&) {
  throw std::runtime_error("AVX2 kernel not compiled into this build");
}

#endif

}  // namespace boettcher::simd
