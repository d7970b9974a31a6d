#include "series_detail.hpp"

#include <stdexcept>
#include <vector>

namespace boettcher::simd {

namespace detail {

namespace {

struct C {
  double re;
  double im;
};

inline C mul(C a, C b) {
  double re = a.re * b.re - a.im * b.im;
  double im = a.re * b.im + a.im * b.re;
  return {re, im};
}

}  // namespace

void eval_series_scalar_range(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out,
                              std::size_t begin, std::size_t end) {
  const ExponentRange range = exponent_range(terms);
  std::vector<C> zp(static_cast<std::size_t>(range.max_n) + 1);
  std::vector<C> wp(static_cast<std::size_t>(range.max_pos_m) + 1);
  std::vector<C> wn(static_cast<std::size_t>(range.max_neg_m) + 1);

  for (std::size_t i = begin; i < end; ++i) {
    const C z{points.z_re[i], points.z_im[i]};
    const C w{points.w_re[i], points.w_im[i]};

    zp[0] = {1.0, 0.0};
    for (int k = 1; k <= range.max_n; ++k) zp[k] = mul(zp[k - 1], z);
    wp[0] = {1.0, 0.0};
    for (int k = 1; k <= range.max_pos_m; ++k) wp[k] = mul(wp[k - 1], w);
    wn[0] = {1.0, 0.0};
    if (range.max_neg_m > 0) {
      const double s = w.re * w.re + w.im * w.im;
      const C inv{w.re / s, -(w.im / s)};
      for (int k = 1; k <= range.max_neg_m; ++k) wn[k] = mul(wn[k - 1], inv);
    }

    double acc_re = 0.0;
    double acc_im = 0.0;
    for (const auto& term : terms) {
      const C t = mul(zp[term.n], term.m >= 0 ? wp[term.m] : wn[-term.m]);
      const double pr = term.re * t.re - term.im * t.im;
      const double pi = term.re * t.im + term.im * t.re;
      acc_re += pr;
      acc_im += pi;
    }
    out.re[i] = acc_re;
    out.im[i] = acc_im;
  }
}

}  // namespace detail

void eval_series_scalar(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out) {
  for (const auto& t : terms)
    if (t.n < 0) throw std::invalid_argument("series term with negative z exponent");
  out.resize(points.size());
  detail::eval_series_scalar_range(terms, points, out, 0, points.size());
}

}  // namespace boettcher::simd
