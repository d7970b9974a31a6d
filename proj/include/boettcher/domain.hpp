#pragma once

#include "boettcher/germ.hpp"
#include "boettcher/rational.hpp"

#include <cstdint>
#include <vector>

namespace boettcher {

/// U = { |z| < r1 |w|^a, |w| < r2 } with an exact exponent a >= 0.
struct WeightedDomain {
  Rational a;
  double r1 = 0.05;
  double r2 = 0.05;

  WeightedDomain() = default;
  WeightedDomain(Rational a_, double r1_, double r2_);

  bool contains(Point x) const;
  /// max(|z| / (r1 |w|^a), |w| / r2); < 1 exactly on the domain.
  double margin(Point x) const;
  /// Same radii divided by `factor`.
  WeightedDomain scaled(double factor) const;
};

struct SampleOptions {
  /// Sampled depth below the outer boundary, in natural-log units, for both
  /// log|w| and log(|z| / (r1 |w|^a)).
  double depth = 6.907755278982137;  // ln 1000
  std::uint64_t seed = 0x5eed;
};

/// Deterministic quasi-uniform samples of the domain: a 4-dimensional Sobol
/// sequence with a seeded Cranley-Patterson shift, mapped to
/// (log|w|, log|z| ratio, arg z, arg w). Every returned point lies inside
/// the domain and the points are pairwise distinct.
std::vector<Point> sample_domain(const WeightedDomain& domain, int count, const SampleOptions& options = {});

}  // namespace boettcher
