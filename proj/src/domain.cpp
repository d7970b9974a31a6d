#include "boettcher/domain.hpp"

#include <boost/random/sobol.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace boettcher {

WeightedDomain::WeightedDomain(Rational a_, double r1_, double r2_) : a(std::move(a_)), r1(r1_), r2(r2_) {
  if (a.is_negative()) throw std::invalid_argument("weighted domain exponent must be >= 0");
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("weighted domain radii must be positive");
}

double WeightedDomain::margin(Point x) const {
  const double aw = a.to_double();
  const double abs_w = std::abs(x.w);
  const double slanted = std::abs(x.z) / (r1 * std::pow(abs_w, aw));
  return std::max(slanted, abs_w / r2);
}

bool WeightedDomain::contains(Point x) const { return margin(x) < 1.0; }

WeightedDomain WeightedDomain::scaled(double factor) const { return {a, r1 / factor, r2 / factor}; }

std::vector<Point> sample_domain(const WeightedDomain& domain, int count, const SampleOptions& options) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  constexpr int kDims = 4;
  boost::random::sobol qrng(kDims);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, kDims> shift{};
  for (auto& s : shift) s = unit(rng);

  const double aw = domain.a.to_double();
  const double log_r2 = std::log(domain.r2);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    std::array<double, kDims> u{};
    for (std::size_t k = 0; k < kDims; ++k) {
      // 53 high bits -> [0, 1), then shift modulo 1 and nudge into (0, 1)
      double x = std::ldexp(static_cast<double>(qrng() >> 11), -53) + shift[k];
      if (x >= 1.0) x -= 1.0;
      u[k] = x * (1.0 - 0x1p-52) + 0x1p-53;
    }
    const double log_w = log_r2 - options.depth * u[0];
    const double abs_w = std::exp(log_w);
    const double ratio = std::exp(-options.depth * u[1]);
    const double abs_z = ratio * domain.r1 * std::pow(abs_w, aw);
    const double arg_z = std::numbers::pi * (2.0 * u[2] - 1.0);
    const double arg_w = std::numbers::pi * (2.0 * u[3] - 1.0);
    const Point x{std::polar(abs_z, arg_z), std::polar(abs_w, arg_w)};
    if (domain.contains(x)) out.push_back(x);
  }
  return out;
}

}  // namespace boettcher
