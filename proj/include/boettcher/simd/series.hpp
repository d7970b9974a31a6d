#pragma once

// Batched evaluation of finite bivariate Laurent-in-w series
//
//     S(z, w) = sum_k c_k z^{n_k} w^{m_k},   n_k >= 0, m_k any sign
//
// over structure-of-arrays point batches. A scalar reference kernel and an
// AVX2 kernel (4 points per lane group) perform the same IEEE operations in
// the same order, so their outputs are bit-identical; the dispatcher picks
// AVX2 at runtime when the CPU supports it.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace boettcher::simd {

struct SeriesTerm {
  double re = 0.0;
  double im = 0.0;
  int n = 0;  // exponent of z, >= 0
  int m = 0;  // exponent of w, may be negative
};

struct PointsSoA {
  std::vector<double> z_re, z_im, w_re, w_im;

  std::size_t size() const { return z_re.size(); }
  void resize(std::size_t n) {
    z_re.resize(n);
    z_im.resize(n);
    w_re.resize(n);
    w_im.resize(n);
  }
};

struct ValuesSoA {
  std::vector<double> re, im;

  std::size_t size() const { return re.size(); }
  void resize(std::size_t n) {
    re.resize(n);
    im.resize(n);
  }
};

enum class Kernel { scalar, avx2 };

std::string_view kernel_name(Kernel k);

/// True when the AVX2 kernel was compiled in and the running CPU supports it.
bool avx2_available();

/// Kernel used by eval_series(). BOETTCHER_FORCE_SCALAR=1 in the environment
/// pins the scalar kernel.
Kernel active_kernel();

void eval_series_scalar(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out);

/// Throws std::runtime_error when !avx2_available().
void eval_series_avx2(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out);

void eval_series(std::span<const SeriesTerm> terms, const PointsSoA& points, ValuesSoA& out);

}  // namespace boettcher::simd
