#pragma once

// Sampled verification of the conjugacy statements at concrete radii. Each
// check is a finite-r instantiation of an asymptotic statement, not a proof.

#include "boettcher/domain.hpp"
#include "boettcher/germ.hpp"
#include "boettcher/phi.hpp"
#include "boettcher/weights.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boettcher {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Non-gating checks are reported but never change the exit status.
  bool gating = true;
  /// Not run (precondition unmet) or inconclusive.
  bool skipped = false;
  double measured = 0.0;
  double bound = 0.0;
  int samples = 0;
  /// Samples dropped by the check's own precondition (axis, branch, FD step).
  int dropped = 0;
  std::string details;
  double seconds = 0.0;
};

struct CheckOptions {
  int samples = 500;
  std::uint64_t seed = SampleOptions{}.seed;
  double tol = 1e-12;
  int max_n = kDefaultMaxIterates;
  /// Sampled depth below the outer boundary (see SampleOptions).
  double depth = SampleOptions{}.depth;

  SampleOptions sampling() const { return {depth, seed}; }
};

inline constexpr double kConjugacyBound = 1e-9;
inline constexpr double kResidualFloor = 1e-30;
inline constexpr double kSlack = 1.05;
inline constexpr double kJacobianFloor = 1e-6;
inline constexpr double kFdStep = 1e-6;
/// Invariance samples reach 12 decades below the boundary, where sub-alpha failures show.
inline constexpr double kInvarianceDepth = 27.631021115928547;  // ln 1e12

/// measured = max margin of f(x) over samples x; passes when < 1.
CheckResult check_invariance(const Germ& f, const WeightedDomain& domain, const CheckOptions& opt);

/// measured = max over samples and components of |phi(f(x)) - f0(phi(x))|_i / max(|f0(phi(x))|_i, 1e-30).
CheckResult check_conjugacy(const Germ& f, const WeightedDomain& domain, const CheckOptions& opt);

/// sup max_i |phi_i/x_i - 1| on U^a_{r,r} for each radius; passes when the
/// sequence is non-increasing and the last value is below the first.
CheckResult check_identity_asymptotics(const Germ& f, const Rational& a, std::span<const double> radii,
                                       const CheckOptions& opt);

/// sup max(|Log(phi_1/z)|, |Log(phi_2/w)|) <= 1.05 C eps~ with eps~ from epsilon_sup on the same domain.
CheckResult check_lift_bound(const Germ& f, const WeightedDomain& domain, const CheckOptions& opt);

/// f^n(x) in U with radii (r1/2^n, r2/2^n) for n = 1..N; orbits run in log coordinates.
CheckResult check_contraction_d1(const Germ& f, const WeightedDomain& domain, int N, const CheckOptions& opt);

/// Distinct images and nonsingular finite-difference Jacobian on the shrunken domain.
CheckResult check_injectivity(const Germ& f, const ShrunkenDomain& shrunken, const CheckOptions& opt);
/// Same on explicit points; throws std::invalid_argument on duplicate points.
CheckResult check_injectivity_at(const Germ& f, const WeightedDomain& domain, std::span<const Point> points,
                                 const CheckOptions& opt);

/// Unit monomials z^i w^j with 1 <= i + j <= 3.
std::vector<Monomial> default_probes();

/// Recomputes alpha after q(z (1 + v), w) for each probe v; measured = number of changed weights.
CheckResult check_weight_stability(const Germ& f, std::span<const Monomial> probes, int max_degree);

enum class VerifyCase { skew_d_ge2, skew_d_eq1, general, not_applicable };

std::string to_string(VerifyCase c);

struct VerifyOptions {
  CheckOptions check;
  /// Overrides the weight exponent of the domain; defaults to alpha.
  std::optional<Rational> a;
  double r1 = 0.05;
  double r2 = 0.05;
  std::vector<double> radii{0.1, 0.05, 0.02, 0.01};
  int contraction_steps = 8;
  int weight_budget = 8;
};

struct VerifyReport {
  Germ germ;
  WeightReport weights;
  VerifyCase verify_case = VerifyCase::not_applicable;
  std::optional<WeightedDomain> domain;
  /// "ok", "gate failed", or the refusal reason.
  std::string status;
  std::vector<CheckResult> checks;

  bool gates_passed() const;
};

VerifyReport run_verify(const Germ& f, const VerifyOptions& options);

/// Pretty-printed JSON; wall-clock seconds only when include_timings.
std::string to_json(const CheckResult& r, bool include_timings = false);
std::string to_json(const WeightReport& r);
std::string to_json(const VerifyReport& r, bool include_timings = false);

}  // namespace boettcher
