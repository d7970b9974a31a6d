#pragma once

// Numerical Boettcher coordinate phi = lim f0^{-n} o f^n on a weighted
// domain, built as the incremental product
//
//   phi_1 = z * prod_j (1 + zeta_{j-1})^{1/delta^j}
//   phi_2 = w * prod_j (1 + eta_{j-1})^{1/d^j} / (1 + zeta_{j-1})^{gamma_j/(delta d)^j}
//
// where zeta_{j-1}, eta_{j-1} are evaluated along the orbit f^{j-1}(z,w)
// (for general germs zeta is replaced by eps = p~/z^delta - 1). Fractional
// powers use the principal branch t^s = exp(s Log t), legal while |t - 1| < 1.
// The orbit is carried in logarithmic coordinates (the lift of f), so deep
// iterates never underflow.

#include "boettcher/domain.hpp"
#include "boettcher/germ.hpp"
#include "boettcher/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace boettcher {

/// Point or orbit too close to a coordinate axis (|z| or |w| below 1e-300).
class AxisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Some |zeta| or |eta| >= 1 along the orbit; iterate() names the orbit index.
class BranchError : public std::domain_error {
 public:
  BranchError(int iterate, const std::string& what) : std::domain_error(what), iterate_(iterate) {}
  int iterate() const { return iterate_; }

 private:
  int iterate_;
};

inline constexpr double kAxisFloor = 1e-300;

/// (Log z, Log w) with imaginary parts kept in (-pi, pi].
struct LogPoint {
  Complex z;
  Complex w;
};

LogPoint to_log(Point x);
Point from_log(const LogPoint& x);

/// zeta (or eps for general germs) and eta at a point.
struct Perturbation {
  Complex zeta;
  Complex eta;
};

/// Precomputed series for zeta/eps and eta of one germ.
class PerturbationSeries {
 public:
  explicit PerturbationSeries(const Germ& f);

  Perturbation at(const LogPoint& x) const;
  /// Batched evaluation through the dispatched series kernel (plain coordinates).
  std::vector<Perturbation> at(std::span<const Point> points) const;

 private:
  struct Term {
    Complex coeff;
    int dz;
    int dw;
  };
  std::vector<Term> zeta_;
  std::vector<Term> eta_;
};

/// zeta = p(z)/z^delta - 1 (or eps(z,w) for general germs), eta = q/(b z^gamma w^d) - 1.
/// Throws AxisError when z or w vanishes.
Perturbation zeta_eta(const Germ& f, Point x);

/// One step of the lift F(Z,W) = (delta Z + Log(1+zeta), gamma Z + d W + Log b + Log(1+eta)).
LogPoint lift_step(const Germ& f, const LogPoint& x, const Perturbation& pert);

/// gamma_n = sum_{j=1}^n delta^{n-j} d^{j-1} gamma via its closed forms.
BigInt gamma_n(int delta, int d, int gamma, int n);

struct PhiEval {
  Point value;
  int n_used = 0;
  /// Lift-level increment max(|dLog phi_1|, |dLog phi_2|) of the last step.
  double last_increment = 0.0;
  bool converged = false;
  /// Log(phi_1/z) and Log(phi_2/w) as accumulated: the lift Phi - id.
  Complex lift_z;
  Complex lift_w;
};

/// Evaluator bound to one germ; caches the exponent schedule.
class BoettcherMap {
 public:
  explicit BoettcherMap(const Germ& f, int max_n = kDefaultMaxIterates);

  const Germ& germ() const { return f_; }
  int max_n() const { return max_n_; }

  /// phi_n(x); n = 0 is the identity. Throws BranchError or AxisError.
  Point phi_n(Point x, int n) const;
  /// Iterates until the increment is <= tol or max_n factors were used.
  PhiEval phi(Point x, double tol) const;

 private:
  Germ f_;
  PerturbationSeries series_;
  int max_n_;
  std::vector<double> inv_delta_pow_;  // [j] = 1/delta^j
  std::vector<double> inv_d_pow_;      // [j] = 1/d^j
  std::vector<double> cross_;          // [j] = gamma_j/(delta d)^j
};

Point phi_n(const Germ& f, Point x, int n);
PhiEval phi(const Germ& f, Point x, double tol = 1e-12, int max_n = kDefaultMaxIterates);

/// Constant C with ||Phi - id|| < C eps on the lift (d >= 2).
double lift_constant_C(int delta, int d, int gamma);

struct LiftBounds {
  /// Absent for d = 1.
  std::optional<double> C;
  /// sup max(|zeta|, |eta|) over the samples.
  double epsilon = 0.0;
  /// sup max(|Log(1+zeta)|, |Log(1+eta)|) over the samples, i.e. ||F - F0||.
  double epsilon_lift = 0.0;
  /// max(log(1 + epsilon), epsilon_lift).
  double epsilon_tilde = 0.0;
  int samples = 0;
  int rejected = 0;
};

inline constexpr int kDefaultEpsilonSamples = 4096;

/// Throws std::runtime_error when more than 10% of samples leave the branch domain.
LiftBounds epsilon_sup(const Germ& f, const WeightedDomain& domain, int n_samples = kDefaultEpsilonSamples,
                       const SampleOptions& options = {});

enum class ShrinkMode { skew, general };

struct ShrunkenDomain {
  double r1_prime = 0.0;
  double r2_prime = 0.0;
  /// 2C (skew) or (1 + alpha)/alpha * 2 (general, slanted side).
  double shrink_constant = 0.0;
  /// Shift of the slanted log-boundary Re W > (Re Z - log r1)/alpha, in W units.
  double slanted_shift = 0.0;
  /// Shift of the horizontal log-boundary Re W < log r2.
  double straight_shift = 0.0;
  Rational alpha;

  WeightedDomain domain() const { return {alpha, r1_prime, r2_prime}; }
};

/// Radii on which phi is injective. Requires alpha > 0 and bounds.C.
ShrunkenDomain shrunken_domain(const WeightedDomain& domain, const LiftBounds& bounds, const Rational& alpha,
                               ShrinkMode mode);

}  // namespace boettcher
