#include "boettcher/weights.hpp"

#include "gallery.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <optional>
#include <random>
#include <set>
#include <tuple>

using namespace boettcher;
using testing::skew;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("is_trivial examples", "[weights]") {
  CHECK(is_trivial(skew(2, {{0, 2}, {1, 3}})));
  CHECK_FALSE(is_trivial(skew(2, {{0, 2}, {4, 0}})));
  CHECK_FALSE(is_trivial(skew(2, {{1, 1}, {3, 0}})));
}

TEST_CASE("compute_m_f examples", "[weights]") {
  CHECK(compute_m_f(skew(2, {{0, 2}, {4, 0}})) == ExtendedRational(q("1/2")));
  CHECK(compute_m_f(skew(2, {{1, 1}, {3, 0}})) == ExtendedRational(q("1/2")));
  CHECK(compute_m_f(skew(2, {{0, 2}})) == ExtendedRational::neg_inf());
}

TEST_CASE("compute_interval examples", "[weights]") {
  const IntervalReport a = compute_interval(skew(3, {{0, 2}}));
  CHECK(a.lower == ExtendedRational(Rational(0)));
  CHECK(a.upper == ExtendedRational::pos_inf());
  CHECK(a.lower_closed);
  CHECK(compute_interval(skew(2, {{1, 2}, {3, 0}})).empty);
  const IntervalReport c = compute_interval(skew(2, {{0, 2}, {4, 0}}));
  CHECK(c.lower == ExtendedRational(q("1/2")));
  CHECK(c.upper == ExtendedRational::pos_inf());
  CHECK(c.str() == "[1/2, +inf)");
}

TEST_CASE("compute_alpha and admissibility examples", "[weights]") {
  const Germ f = skew(2, {{0, 2}, {4, 0}});
  CHECK(compute_alpha(f) == q("1/2"));
  CHECK(admissibility(f, compute_alpha(f)) == Admissibility::admissible_d_ge2);

  const Germ g = Germ::skew(2, {}, {{Complex(3.0, -1.0), 1, 1}, {Complex(1.0), 3, 0}});
  CHECK(compute_alpha(g) == q("1/2"));
  CHECK(admissibility(g, compute_alpha(g)) == Admissibility::admissible_d_eq1);

  const Germ h = Germ::skew(2, {}, {{Complex(2.0), 1, 1}, {Complex(1.0), 2, 0}});
  CHECK(compute_alpha(h) == Rational(1));
  CHECK(admissibility(h, compute_alpha(h)) == Admissibility::inadmissible_d_eq1_boundary);

  const Germ e = skew(2, {{0, 3}, {1, 1}});
  CHECK_FALSE(compute_alpha(e).has_value());
  CHECK(admissibility(e, compute_alpha(e)) == Admissibility::alpha_undefined);
  CHECK(to_string(Admissibility::alpha_undefined) == "AlphaUndefined");
}

TEST_CASE("weight report of the d = 1, gamma = 0 case carries a note", "[weights]") {
  // q = w + ... has gamma + d = 1 and is rejected; gamma = 0, d = 1 cannot occur.
  CHECK_THROWS_AS(skew(2, {{0, 1}, {2, 0}}), GermError);
  const WeightReport r = weight_report(skew(2, {{1, 1}, {2, 0}}));
  CHECK_FALSE(r.notes.empty());
  CHECK(r.alpha_0 == Rational(1));
  CHECK_FALSE(weight_report(skew(2, {{0, 2}, {4, 0}})).alpha_0.has_value());
}

TEST_CASE("gallery intervals match the hand-derived shapes", "[weights]") {
  for (const auto& entry : gallery::entries()) {
    INFO(entry.label);
    const IntervalReport got = compute_interval(entry.germ);
    INFO(got.str());
    CHECK(gallery::matches(got, entry.interval));
    CHECK(is_trivial(entry.germ) == entry.trivial);
  }
}

TEST_CASE("interval agrees with its defining inequalities on a rational grid", "[weights]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(2, 5), expo(0, 6), count(0, 3);
  int tested = 0;
  while (tested < 300) {
    const int delta = deg(rng);
    std::vector<Monomial> terms;
    std::set<std::pair<int, int>> seen;
    const int k = 1 + count(rng);
    for (int i = 0; i < k; ++i) {
      const int n = expo(rng), m = expo(rng);
      if (seen.insert({n, m}).second) terms.push_back({Complex(1.0), n, m});
    }
    std::optional<Germ> f;
    try {
      f = Germ::skew(delta, {}, terms);
    } catch (const GermError&) {
      continue;
    }
    ++tested;
    const ExponentData e = exponent_data(*f);
    const IntervalReport I = compute_interval(e);
    for (int den = 1; den <= 6; ++den)
      for (int num = -36; num <= 36; ++num) {
        const Rational a{BigInt(num), BigInt(den)};
        INFO(describe(*f) << " a=" << a.str() << " I=" << I.str());
        CHECK(I.contains(a) == gallery::in_interval_by_definition(e, a));
      }
    const auto alpha = compute_alpha(e);
    CHECK(alpha.has_value() == !I.empty);
    if (alpha) {
      CHECK(gallery::in_interval_by_definition(e, *alpha));
      if (is_trivial(e)) {
        CHECK(alpha->is_zero());
        CHECK((!compute_m_f(e).is_finite() || compute_m_f(e) <= ExtendedRational(Rational(0))));
      } else {
        CHECK(compute_m_f(e) > ExtendedRational(Rational(0)));
        // nothing in [0, alpha) belongs to I_f
        CHECK_FALSE(gallery::in_interval_by_definition(e, *alpha - Rational(BigInt(1), BigInt(1000000))));
        const Rational g(e.gamma), d(e.d);
        CHECK(*alpha * g + d <= Rational(e.delta));
        for (auto [n, m] : e.others) CHECK(*alpha * Rational(n) + Rational(m) >= *alpha * g + d);
      }
    }
  }
}

TEST_CASE("semiconjugate family has weight B/A", "[weights]") {
  for (auto [d, A, B] : {std::tuple{2, 2, 1}, {2, 1, 1}, {2, 1, 2}, {3, 1, 1}, {4, 3, 2}, {6, 5, 3}}) {
    const int k = A * d / B;
    const Germ f = skew(d, {{0, d}, {k, 0}});
    CHECK(compute_alpha(f) == Rational(BigInt(B), BigInt(A)));
  }
}

TEST_CASE("general germ shares the weight of its skew truncation", "[weights]") {
  const Germ g = Germ::general(2, testing::unit_terms({{3, 1}}), testing::unit_terms({{0, 2}, {3, 0}}));
  CHECK(compute_alpha(g) == q("2/3"));
  CHECK(compute_alpha(g.skew_truncation()) == q("2/3"));
  // a trivial general germ restricts I_f to a >= 0
  const Germ t = Germ::general(2, testing::unit_terms({{2, 1}}), testing::unit_terms({{0, 2}, {1, 3}}));
  CHECK(compute_interval(t).lower == ExtendedRational(Rational(0)));
  CHECK(compute_interval(t.skew_truncation()).lower == ExtendedRational(Rational(-1)));
  CHECK(compute_alpha(t) == compute_alpha(t.skew_truncation()));
}
