#pragma once

// Closed-form ground truth for families with known Boettcher coordinates:
// the one-dimensional coordinate of w -> w^d + c near infinity, the
// semiconjugate family (z^d, w^d + c z^{ld}), and the affine d = 1 family.

#include "boettcher/germ.hpp"
#include "boettcher/rational.hpp"

#include <optional>

namespace boettcher {

/// g(w) = w^d + c.
struct MonicPerturbedPower {
  int d = 2;
  Complex c;
};

/// Radius beyond which |c|/|w|^d < 1/16 and |g(w)| > |w|: 4 max(1,|c|)^{1/(d-1)}.
double escape_radius(const MonicPerturbedPower& g);

/// phi_g(w) = w prod_j (g^j(w) / g^{j-1}(w)^d)^{1/d^j}, truncated once the
/// running factor differs from 1 by less than tol. Requires |w| > escape_radius.
Complex boettcher_1d(const MonicPerturbedPower& g, Complex w, double tol = 1e-17);

/// f(z,w) = (z^d, w^d + c z^{ld}), l = A/B with B | d and A >= 1.
struct SemiconjugateFamily {
  int d = 2;
  Complex c;
  Rational l;

  SemiconjugateFamily(int d_, Complex c_, Rational l_);
  Germ germ() const;
  /// Weight predicted by the closed form: 1/l.
  Rational weight() const { return Rational(1) / l; }
};

struct ClosedFormEval {
  Point value;
  /// arg z within 1e-6 of pi while z^l is not single valued.
  bool branch_warning = false;
};

/// (z, z^l phi_g(w / z^l)) with principal z^l; requires |w| > R |z|^l and z != 0.
ClosedFormEval closed_form_phi(const SemiconjugateFamily& family, Point x);

/// h_f(z,w) = (z, w + z/(1 - b)) for f = (z^2, b z w + z^2), b != 1.
/// It satisfies f o h_f = h_f o f0 with f0 = (z^2, b z w).
Point affine_oracle_d1(Complex b, Point x);

/// Recognizes (z^d, w^d + c z^k) with k >= 1.
std::optional<SemiconjugateFamily> match_semiconjugate(const Germ& f);
/// Recognizes (z^2, b z w + z^2) with b != 1 and returns b.
std::optional<Complex> match_affine_d1(const Germ& f);

}  // namespace boettcher
