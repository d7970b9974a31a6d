#include "boettcher/germ.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace boettcher;
using testing::skew;
using testing::unit_terms;

TEST_CASE("parse_germ derives the leading term", "[germ]") {
  const Germ f = parse_germ(R"({"delta": 2, "q": [[1, 0, 0, 2], [1, 0, 4, 0]]})");
  CHECK(f.delta() == 2);
  CHECK(f.gamma() == 0);
  CHECK(f.d() == 2);
  CHECK(f.b() == Complex(1.0, 0.0));
  CHECK(describe(f) == "(z^2, w^2 + z^4)");

  const Germ g = parse_germ(R"({"delta": 2, "q": [[1.5, -0.5, 1, 1], [1, 0, 3, 0]]})");
  CHECK(g.gamma() == 1);
  CHECK(g.d() == 1);
  CHECK(g.b() == Complex(1.5, -0.5));

  const Germ h = parse_germ(R"({"delta": 2, "p_general": [[1, 0, 3, 1]], "q": [[1, 0, 0, 2], [1, 0, 3, 0]]})");
  CHECK(h.is_general());
  CHECK(h.skew_truncation().p_terms().empty());
}

TEST_CASE("parse_germ names the violated condition", "[germ]") {
  auto message = [](const char* text) {
    try {
      parse_germ(text);
    } catch (const GermError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(message(R"({"delta": 1, "q": [[1, 0, 1, 1]]})") == "delta must be >= 2");
  CHECK(message(R"({"delta": 2, "q": [[1, 0, 0, 1], [1, 0, 0, 2]]})").find("nilpotent") != std::string::npos);
  CHECK(message(R"({"delta": 2, "q": [[1, 0, 0, 0], [1, 0, 0, 2]]})").find("nilpotent") != std::string::npos);
  CHECK(message(R"({"delta": 2, "q": [[1, 0, 1, 0], [1, 0, 0, 2]]})") == "accepted");
  CHECK(message(R"({"delta": 2, "q": [[1, 0, 0, 2], [2, 0, 0, 2]]})").find("duplicate") != std::string::npos);
  CHECK(message(R"({"delta": 2, "q": [[1, 0, 2, 0]]})").find("d = 0") != std::string::npos);
  CHECK(message(R"({"delta": 3, "p_general": [[1, 0, 2, 1]], "q": [[1, 0, 0, 2]]})").find("n >= delta") !=
        std::string::npos);
  CHECK(message(R"({"delta": 3, "p_general": [[1, 0, 3, 0]], "q": [[1, 0, 0, 2]]})").find("m >= 1") !=
        std::string::npos);
  CHECK(message(R"({"delta": 2, "p_tail": [[1, 0, 2]], "q": [[1, 0, 0, 2]]})").find("delta + 1") !=
        std::string::npos);
  CHECK(message(R"({"delta": 2, "q": [[1, 0, 0.5, 2]]})").find("integer") != std::string::npos);
  CHECK(message(R"({"delta": 2, "q": [[1, 0, 0, 2]], "extra": 1})").find("unknown field") != std::string::npos);
  CHECK(message(R"({"delta": 2, "q": )").find("malformed") != std::string::npos);
}

TEST_CASE("germ JSON round-trips", "[germ]") {
  const Germ f = parse_germ(R"({"delta": 3, "p_tail": [[0.25, 0, 4]], "q": [[2, 1, 1, 1], [1, 0, 3, 0]]})");
  const Germ g = parse_germ(germ_to_json(f));
  CHECK(g.q_terms() == f.q_terms());
  CHECK(g.p_terms() == f.p_terms());
  CHECK(g.delta() == 3);
}

TEST_CASE("leading_exponents examples and order independence", "[germ]") {
  const auto a = leading_exponents(unit_terms({{0, 2}, {4, 0}}));
  CHECK((a.gamma == 0 && a.d == 2));
  std::vector<Monomial> q{{Complex(3.0, 1.0), 1, 1}, {Complex(1.0, 0.0), 3, 0}};
  const auto b = leading_exponents(q);
  CHECK((b.gamma == 1 && b.d == 1 && b.b == Complex(3.0, 1.0)));
  const auto c = leading_exponents(unit_terms({{0, 3}, {1, 1}}));
  CHECK((c.gamma == 0 && c.d == 3));

  std::vector<Monomial> terms{{Complex(2, 0), 3, 1}, {Complex(5, 1), 2, 2}, {Complex(7, 0), 2, 5}, {Complex(1, 1), 4, 0}};
  std::mt19937 rng(7);
  for (int k = 0; k < 24; ++k) {
    std::shuffle(terms.begin(), terms.end(), rng);
    const auto lt = leading_exponents(terms);
    CHECK((lt.gamma == 2 && lt.d == 2 && lt.b == Complex(5, 1)));
  }
}

TEST_CASE("eval examples", "[germ]") {
  const Germ f = skew(2, {{0, 2}, {4, 0}});
  const Point o = f.eval({0.0, 0.0});
  CHECK((o.z == 0.0 && o.w == 0.0));
  const Point y = f.eval({0.1, 0.2});
  CHECK(y.z == Complex(0.1 * 0.1));
  CHECK(std::abs(y.w - 0.0401) <= 1e-15 * 0.0401);
  const Germ f0 = skew(2, {{1, 2}});
  const Point m = f0.eval({Complex(0, 1), 1.0});
  CHECK(m.z == Complex(-1, 0));
  CHECK(m.w == Complex(0, 1));
  CHECK_THROWS_AS(f.eval({1e200, 1e200}), std::range_error);
}

TEST_CASE("general germ evaluates p~ with its w terms", "[germ]") {
  const Germ g = Germ::general(2, unit_terms({{3, 1}}), unit_terms({{0, 2}, {3, 0}}));
  const Point x{Complex(0.1, 0.05), Complex(-0.2, 0.1)};
  const Point y = g.eval(x);
  CHECK(std::abs(y.z - (x.z * x.z + x.z * x.z * x.z * x.w)) < 1e-17);
  CHECK(std::abs(y.w - (x.w * x.w + x.z * x.z * x.z)) < 1e-17);
}

TEST_CASE("eval of a monomial germ matches its monomial model", "[germ]") {
  const Germ f = Germ::skew(3, {}, {{Complex(2.0, -1.0), 1, 2}});
  const Germ f0 = f.monomial_model();
  const Point x{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
  const Point a = f.eval(x), b = f0.eval(x);
  CHECK(a.z == b.z);
  CHECK(a.w == b.w);
}

TEST_CASE("iterate examples and orbit concatenation", "[germ]") {
  const Germ sq = skew(2, {{0, 2}});
  const Orbit o = iterate(sq, {0.5, 0.5}, 2);
  REQUIRE(o.points.size() == 3);
  CHECK(o.points[1].z == Complex(0.25));
  CHECK(o.points[2].w == Complex(0.0625));
  CHECK(iterate(sq, {0.5, 0.5}, 0).points.size() == 1);
  CHECK_THROWS(iterate(sq, {0.5, 0.5}, 65));

  const Germ f = skew(2, {{0, 2}, {4, 0}});
  const Orbit g = iterate(f, {0.001, 0.1}, 3);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(g.points[k].w) < std::abs(g.points[k - 1].w));

  const Germ h = Germ::skew(2, {{Complex(0.5, 0.0), 3, 0}}, {{Complex(1.0, 0.0), 1, 1}, {Complex(0.3, 0.2), 3, 0}});
  const Point seeds[] = {{Complex(0.2, 0.1), Complex(0.3, -0.1)}, {Complex(-0.1, 0.3), Complex(0.05, 0.05)}};
  for (const Point& x : seeds)
    for (int a = 0; a <= 8; ++a)
      for (int b = 0; b <= 8; ++b) {
        const Point direct = iterate(h, x, a + b).points.back();
        const Point chained = iterate(h, iterate(h, x, a).points.back(), b).points.back();
        CHECK(direct.z == chained.z);
        CHECK(direct.w == chained.w);
      }
}

TEST_CASE("eval_batch agrees with eval", "[germ]") {
  const Germ f = Germ::skew(2, {{Complex(0.5, 0.1), 3, 0}}, {{Complex(1.0, 0.0), 0, 2}, {Complex(0.3, -0.2), 3, 1}});
  std::vector<Point> xs;
  for (int k = 0; k < 11; ++k) xs.push_back({Complex(0.01 * k, -0.02), Complex(0.1, 0.003 * k)});
  const auto ys = eval_batch(f, xs);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Point y = f.eval(xs[k]);
    CHECK(std::abs(ys[k].z - y.z) <= 1e-15 * std::abs(y.z) + 1e-300);
    CHECK(std::abs(ys[k].w - y.w) <= 1e-15 * std::abs(y.w) + 1e-300);
  }
}

TEST_CASE("substitute_expand examples", "[germ]") {
  const auto q_zw = unit_terms({{1, 1}});
  const Expansion e1 = substitute_expand(q_zw, unit_terms({{1, 0}}), 4);
  CHECK(e1.terms == unit_terms({{1, 1}, {2, 1}}));
  CHECK_FALSE(e1.truncated);

  const Expansion e2 = substitute_expand(unit_terms({{2, 0}}), unit_terms({{0, 1}}), 4);
  REQUIRE(e2.terms.size() == 3);
  CHECK(e2.terms[0] == Monomial{Complex(1.0), 2, 0});
  CHECK(e2.terms[1] == Monomial{Complex(2.0), 2, 1});
  CHECK(e2.terms[2] == Monomial{Complex(1.0), 2, 2});

  const auto q = unit_terms({{0, 2}, {4, 0}});
  CHECK(substitute_expand(q, {}, 4).terms == q);
  CHECK_THROWS_AS(substitute_expand(q, unit_terms({{1, 0}}), 3), std::invalid_argument);
  CHECK_THROWS_AS(substitute_expand(q, unit_terms({{0, 0}}), 8), std::invalid_argument);
  CHECK(substitute_expand(q, unit_terms({{1, 0}}), 5).truncated);
}

TEST_CASE("substitute_expand output dominates its source exponents", "[germ]") {
  const auto q = unit_terms({{0, 3}, {1, 1}, {2, 4}});
  for (const auto& v : {unit_terms({{1, 0}}), unit_terms({{0, 1}}), unit_terms({{1, 1}, {2, 0}})}) {
    const Expansion e = substitute_expand(q, v, 9);
    for (const auto& t : e.terms) {
      const bool dominated = std::any_of(q.begin(), q.end(), [&](const Monomial& s) { return t.n >= s.n && t.m >= s.m; });
      CHECK(dominated);
      CHECK(t.n + t.m <= 9);
    }
  }
}

TEST_CASE("normalize_b examples", "[germ]") {
  const Germ f = skew(2, {{0, 2}, {4, 0}});
  const NormalizedGerm same = normalize_b(f);
  CHECK(same.lambda == Complex(1.0));
  CHECK(same.germ.q_terms() == f.q_terms());

  const Germ g = Germ::skew(2, {}, {{Complex(4.0), 0, 2}, {Complex(1.0), 4, 0}});
  const NormalizedGerm ng = normalize_b(g);
  CHECK(std::abs(ng.lambda - 4.0) < 1e-15);
  CHECK(ng.germ.b() == Complex(1.0));
  // conjugacy h^{-1} o g o h with h(z,w) = (z, w/lambda)
  const Point x{Complex(0.1, 0.02), Complex(0.03, -0.01)};
  const Point gx = g.eval({x.z, x.w / ng.lambda});
  const Point nx = ng.germ.eval(x);
  CHECK(std::abs(gx.w * ng.lambda - nx.w) < 1e-16);

  const Germ h = Germ::skew(2, {}, {{Complex(8.0), 0, 3}});
  const NormalizedGerm nh = normalize_b(h);
  CHECK(std::abs(nh.lambda - std::sqrt(8.0)) < 1e-15);
  CHECK(nh.germ.b() == Complex(1.0));

  const Germ c = Germ::skew(2, {}, {{Complex(0.0, 2.0), 0, 2}, {Complex(1.0), 4, 0}});
  CHECK(normalize_b(c).germ.b() == Complex(1.0));
  CHECK_THROWS(normalize_b(skew(2, {{1, 1}})));
}
