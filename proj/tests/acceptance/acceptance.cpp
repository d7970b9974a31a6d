// One PASS/FAIL line per acceptance criterion; exit status is nonzero on any FAIL.

#include "boettcher/oracle.hpp"
#include "boettcher/phi.hpp"
#include "boettcher/verify.hpp"
#include "boettcher/weights.hpp"
#include "gallery.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

using namespace boettcher;

namespace {

struct Outcome {
  bool passed = false;
  std::string summary;
};

Germ unit_skew(int delta, std::initializer_list<std::pair<int, int>> q) {
  std::vector<Monomial> terms;
  for (auto [n, m] : q) terms.push_back({Complex(1.0), n, m});
  return Germ::skew(delta, {}, terms);
}

Germ flagship_skew() { return unit_skew(2, {{0, 2}, {4, 0}}); }
Germ flagship_d1() { return unit_skew(2, {{1, 1}, {3, 0}}); }
Germ flagship_general() {
  return Germ::general(2, {{Complex(1.0), 3, 1}}, {{Complex(1.0), 0, 2}, {Complex(1.0), 3, 0}});
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome weight_exactness() {
  int cases = 0, wrong = 0;
  for (auto [d, A, B] : {std::tuple{2, 2, 1}, {2, 1, 1}, {2, 1, 2}, {3, 1, 1}, {4, 3, 2}})
    for (Complex c : {Complex(1.0), Complex(0.0, 1.0), Complex(0.3, -0.2)}) {
      const SemiconjugateFamily family(d, c, Rational(BigInt(A), BigInt(B)));
      const auto alpha = compute_alpha(family.germ());
      ++cases;
      if (!alpha || *alpha != Rational(BigInt(B), BigInt(A))) ++wrong;
    }
  return {wrong == 0, std::to_string(cases - wrong) + "/" + std::to_string(cases) + " families give alpha = B/A exactly"};
}

Outcome table_conformance() {
  int wrong = 0;
  std::set<std::string> cells;
  const auto entries = gallery::entries();
  for (const auto& e : entries) {
    const WeightReport r = weight_report(e.germ);
    cells.insert(r.table_cell);
    if (!gallery::matches(r.interval, e.interval) || r.trivial != e.trivial) ++wrong;
  }
  const bool has_empty = std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.interval.empty; });
  return {wrong == 0 && entries.size() == 20 && cells.size() == 12 && has_empty,
          std::to_string(entries.size() - wrong) + "/" + std::to_string(entries.size()) + " intervals match, " +
              std::to_string(cells.size()) + " table cells covered"};
}

Outcome gamma_identity() {
  int sums = 0, identities = 0, wrong = 0;
  for (int delta = 2; delta <= 5; ++delta)
    for (int d = 2; d <= 5; ++d)
      for (int gamma = 0; gamma <= 3; ++gamma) {
        std::vector<BigInt> g(13);
        for (int n = 1; n <= 12; ++n) {
          BigInt s = 0;
          for (int j = 1; j <= n; ++j) s += BigInt(gamma) * pow(BigInt(delta), n - j) * pow(BigInt(d), j - 1);
          g[n] = gamma_n(delta, d, gamma, n);
          ++sums;
          if (s != g[n]) ++wrong;
        }
        for (int n = 2; n <= 12; ++n)
          for (int j = 1; j <= n - 1; ++j) {
            const BigInt dn = pow(BigInt(d), n);
            const Rational lhs = Rational(g[n], pow(BigInt(delta), j) * dn) - Rational(g[n - j], dn);
            const Rational rhs(g[j], pow(BigInt(delta) * d, j));
            ++identities;
            if (lhs != rhs) ++wrong;
          }
      }
  return {wrong == 0, std::to_string(sums) + " closed forms and " + std::to_string(identities) +
                          " telescoping identities checked, " + std::to_string(wrong) + " mismatches"};
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const SemiconjugateFamily family(2, Complex(1.0), Rational(2));
  const BoettcherMap map(family.germ());
  const auto points = sample_domain(WeightedDomain(Rational::parse("1/2"), 0.05, 0.05), 100);
  double worst = 0.0;
  for (const auto& x : points) {
    const Point a = map.phi(x, 1e-12).value;
    const Point b = closed_form_phi(family, x).value;
    worst = std::max({worst, std::abs(a.z - b.z) / std::abs(b.z), std::abs(a.w - b.w) / std::abs(b.w)});
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-8 && seconds <= 2.0 && points.size() == 100,
          "max relative deviation " + sci(worst) + " <= 1e-08 on 100 points in " + sci(seconds) + " s"};
}

Outcome conjugacy_residual() {
  CheckOptions opt;
  opt.samples = 200;
  bool ok = true;
  std::string text;
  for (const Germ& f : {flagship_skew(), flagship_d1(), flagship_general()}) {
    const CheckResult r = check_conjugacy(f, WeightedDomain(*compute_alpha(f), 0.05, 0.05), opt);
    ok = ok && r.passed && r.measured <= 1e-9 && r.samples == 200;
    text += (text.empty() ? "" : ", ") + describe(f) + " " + sci(r.measured);
  }
  return {ok, "residuals " + text + " (bound 1e-09)"};
}

Outcome lift_bound() {
  const Germ f = flagship_skew();
  const CheckResult r = check_lift_bound(f, WeightedDomain(Rational::parse("1/2"), 0.05, 0.05), {});
  const bool c_is_one = lift_constant_C(2, 2, 0) == 1.0;
  return {r.passed && c_is_one && r.measured <= r.bound,
          "sup |Phi - id| " + sci(r.measured) + " <= 1.05 C eps~ = " + sci(r.bound) + " with C = 1"};
}

Outcome contraction() {
  CheckOptions opt;
  opt.samples = 500;
  const CheckResult r = check_contraction_d1(flagship_d1(), WeightedDomain(Rational::parse("1/2"), 0.05, 0.05), 8, opt);
  return {r.passed && r.samples == 500 && r.dropped == 0,
          "worst margin " + sci(r.measured) + " < 1 over n = 1..8, " + std::to_string(r.samples) + " samples"};
}

Outcome negative_gates() {
  const WeightReport boundary = weight_report(unit_skew(2, {{1, 1}, {2, 0}}));
  const WeightReport empty = weight_report(unit_skew(2, {{0, 3}, {1, 1}}));
  const VerifyReport vb = run_verify(unit_skew(2, {{1, 1}, {2, 0}}), {});
  const VerifyReport ve = run_verify(unit_skew(2, {{0, 3}, {1, 1}}), {});
  const bool refused = boundary.admissibility == Admissibility::inadmissible_d_eq1_boundary &&
                       empty.admissibility == Admissibility::alpha_undefined && vb.checks.empty() &&
                       ve.checks.empty();

  // f = (z^2, 2zw + z^2) and f0 = (z^2, 2zw): f o h_f = h_f o f0.
  const Complex b(2.0);
  const Germ f = Germ::skew(2, {}, {{b, 1, 1}, {Complex(1.0), 2, 0}});
  const Germ f0 = f.monomial_model();
  double worst = 0.0;
  for (const auto& x : sample_domain(WeightedDomain(Rational(0), 0.05, 0.05), 500)) {
    const Point lhs = f.eval(affine_oracle_d1(b, x));
    const Point rhs = affine_oracle_d1(b, f0.eval(x));
    worst = std::max({worst, std::abs(lhs.z - rhs.z) / std::max(std::abs(rhs.z), kResidualFloor),
                      std::abs(lhs.w - rhs.w) / std::max(std::abs(rhs.w), kResidualFloor)});
  }
  return {refused && worst <= 1e-12, std::string(refused ? "both germs refused" : "refusal missing") +
                                         ", affine conjugacy residual " + sci(worst) + " <= 1e-12"};
}

Outcome weight_stability() {
  const std::vector<Monomial> probes{{Complex(1.0), 1, 0}, {Complex(1.0), 0, 1}, {Complex(1.0), 1, 1}};
  const CheckResult g = check_weight_stability(flagship_general(), probes, 8);
  const CheckResult s = check_weight_stability(flagship_skew(), probes, 8);
  return {g.passed && s.passed && !g.skipped && !s.skipped,
          "changed weights: general " + sci(g.measured) + ", skew " + sci(s.measured) + " over 3 probes"};
}

Outcome identity_asymptotics() {
  const std::array radii{0.1, 0.05, 0.02, 0.01};
  bool ok = true;
  std::string text;
  for (const Germ& f : {flagship_skew(), flagship_d1(), flagship_general()}) {
    const CheckResult r = check_identity_asymptotics(f, *compute_alpha(f), radii, {});
    ok = ok && r.passed;
    text += (text.empty() ? "" : "; ") + describe(f) + ": " + r.details;
  }
  return {ok, text};
}

Outcome injectivity() {
  const Germ f = flagship_skew();
  const Rational a = Rational::parse("1/2");
  const WeightedDomain domain(a, 0.05, 0.05);
  const ShrunkenDomain shrunk = shrunken_domain(domain, epsilon_sup(f, domain), a, ShrinkMode::skew);
  CheckOptions opt;
  opt.samples = 500;
  const CheckResult r = check_injectivity(f, shrunk, opt);
  return {r.passed && r.samples == 500 && r.dropped == 0, r.details};
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, std::function<Outcome()>>, 11> criteria{{
      {"weight exactness", weight_exactness},
      {"table conformance", table_conformance},
      {"gamma_n identity", gamma_identity},
      {"oracle equivalence", oracle_equivalence},
      {"conjugacy residual", conjugacy_residual},
      {"lift bound", lift_bound},
      {"d = 1 contraction", contraction},
      {"negative gates", negative_gates},
      {"weight stability under substitution", weight_stability},
      {"identity asymptotics", identity_asymptotics},
      {"injectivity sampling", injectivity},
  }};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::printf("%s criterion %zu: %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.summary.c_str());
  }
  return failures == 0 ? 0 : 1;
}
