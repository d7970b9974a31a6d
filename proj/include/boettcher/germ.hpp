#pragma once

// Germs f(z,w) = (p(z), q(z,w)) with a superattracting (or nilpotent, when q
// has a linear z term) fixed point at the origin, and the general variant
// f = (p~(z,w), q(z,w)). Coefficients are
// double-precision complex; exponents are exact integers.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boettcher {

using Complex = std::complex<double>;

struct Monomial {
  Complex coeff;
  int n = 0;  // exponent of z
  int m = 0;  // exponent of w

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Point {
  Complex z;
  Complex w;
};

/// Rejected germ input; the message names the violated condition.
class GermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LeadingTerm {
  int gamma = 0;
  int d = 0;
  Complex b;
};

/// Lexicographically minimal (n, m) over q_terms and its coefficient.
/// Precondition: q_terms non-empty.
LeadingTerm leading_exponents(std::span<const Monomial> q_terms);

enum class GermKind { skew, general };

class Germ {
 public:
  /// p(z) = z^delta + sum(p_tail); every tail term has m = 0, n >= delta+1.
  static Germ skew(int delta, std::vector<Monomial> p_tail, std::vector<Monomial> q_terms);
  /// p~(z,w) = z^delta + sum(ptilde); n >= delta, and m >= 1 when n = delta.
  static Germ general(int delta, std::vector<Monomial> ptilde_terms, std::vector<Monomial> q_terms);

  GermKind kind() const { return kind_; }
  bool is_general() const { return kind_ == GermKind::general; }
  int delta() const { return delta_; }
  int gamma() const { return lead_.gamma; }
  int d() const { return lead_.d; }
  Complex b() const { return lead_.b; }

  /// Terms of the first component after the implicit z^delta.
  const std::vector<Monomial>& p_terms() const { return p_terms_; }
  const std::vector<Monomial>& q_terms() const { return q_terms_; }
  /// q_terms without the leading b z^gamma w^d.
  std::vector<Monomial> q_others() const;

  /// Throws std::range_error if a component overflows.
  Point eval(Point x) const;

  /// f0(z,w) = (z^delta, b z^gamma w^d).
  Germ monomial_model() const;
  bool is_monomial() const { return p_terms_.empty() && q_terms_.size() == 1; }

  /// The skew product (p, q) obtained by dropping every w-dependent term of p~.
  Germ skew_truncation() const;

 private:
  Germ() = default;
  GermKind kind_ = GermKind::skew;
  int delta_ = 2;
  std::vector<Monomial> p_terms_;
  std::vector<Monomial> q_terms_;
  LeadingTerm lead_;
};

/// Orbit points[k] = f^k(seed).
struct Orbit {
  std::vector<Point> points;
};

inline constexpr int kDefaultMaxIterates = 64;

Orbit iterate(const Germ& f, Point seed, int n, int max_n = kDefaultMaxIterates);

/// Batched f evaluation through the dispatched series kernel.
std::vector<Point> eval_batch(const Germ& f, std::span<const Point> points);

struct Expansion {
  std::vector<Monomial> terms;
  bool truncated = false;
};

/// Expansion of q(z (1 + v(z,w)), w) truncated to total degree <= max_total_degree.
/// Requires v(0,0) = 0 and max_total_degree >= deg q.
Expansion substitute_expand(std::span<const Monomial> q_terms, std::span<const Monomial> v_terms,
                            int max_total_degree);

struct NormalizedGerm {
  Germ germ;
  Complex lambda;
};

/// Conjugates by (z,w) -> (z, lambda w), lambda^(d-1) = b principal, so the
/// leading coefficient of q becomes 1. Requires d >= 2.
NormalizedGerm normalize_b(const Germ& f);

/// Germ-spec document:
///   {"delta": int, "p_tail": [[re, im, n], ...], "p_general": [[re, im, n, m], ...],
///    "q": [[re, im, n, m], ...]}
/// "p_general" selects the general variant.
Germ parse_germ(std::string_view json_text);
std::string germ_to_json(const Germ& f);

/// Human-readable form, e.g. "(z^2, w^2 + z^4)".
std::string describe(const Germ& f);

}  // namespace boettcher
