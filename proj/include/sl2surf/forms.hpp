#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sl2surf/rational.hpp"
#include "sl2surf/rep.hpp"

namespace sl2surf {

/// A point of the boundary circle RP^1, stored as the linear factor
/// t0*X + t1*Y. Canonical form: (t, 1) for finite t, (1, 0) for infinity.
struct BoundaryPoint {
  Rational t0;
  Rational t1;

  static BoundaryPoint infinity() { return {Rational(1), Rational(0)}; }
  static BoundaryPoint finite(Rational t) { return {std::move(t), Rational(1)}; }

  bool is_infinity() const { return t1 == 0; }

  // Canonicalizes a raw homogeneous pair; the returned scalar is the factor
  // absorbed by the normalization (raw = scalar * canonical).
  static std::pair<BoundaryPoint, Rational> canonical(const Rational& p, const Rational& q);

  bool operator==(const BoundaryPoint& other) const {
    return t0 == other.t0 && t1 == other.t1;
  }
  bool operator<(const BoundaryPoint& other) const;
};

/// A point z = re + i*im of the open upper half plane (im > 0).
struct InteriorPoint {
  Rational re;
  Rational im;

  bool operator==(const InteriorPoint& other) const { return re == other.re && im == other.im; }
  bool operator<(const InteriorPoint& other) const {
    if (re != other.re) return re < other.re;
    return im < other.im;
  }
};

/// Homogeneous form of degree n; coeffs[i] multiplies X^i Y^(n-i).
struct HomogeneousForm {
  int degree = 0;
  std::vector<Rational> coeffs;

  static HomogeneousForm zero(int degree);
  bool is_zero() const;

  bool operator==(const HomogeneousForm& other) const {
    return degree == other.degree && coeffs == other.coeffs;
  }
};

/// One factored block of form (2): u * prod (t_i X + Y)^alpha_i *
/// prod ((z X + Y)(zbar X + Y))^beta_j.
struct FactoredBlock {
  Rational u;
  std::vector<std::pair<BoundaryPoint, int>> boundary_roots;
  std::vector<std::pair<InteriorPoint, int>> interior_roots;

  int root_degree() const;           // sum alpha + 2 sum beta
  void sort_roots();                 // canonical order for equality tests
  bool operator==(const FactoredBlock& other) const;
};

struct GroupElement {
  Rational a, b, c, d;

  static GroupElement identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }
  Rational det() const { return a * d - b * c; }
  GroupElement operator*(const GroupElement& other) const;
  bool is_unimodular() const { return det() == 1; }
};

/// A projective point of P(V) in factored form, one block per irreducible
/// summand of the decomposition.
struct FactoredElement {
  RepDecomposition rep;
  std::vector<FactoredBlock> blocks;

  // Scales every block scalar so the first nonzero u equals 1 and sorts the
  // root lists. Projective equality goes through this form.
  FactoredElement normalized() const;

  // Structural checks: block count, degree sums, root distinctness, im > 0.
  void validate() const;
};

bool projectively_equal(const FactoredElement& x, const FactoredElement& y);
bool projectively_equal(const HomogeneousForm& f, const HomogeneousForm& g);
bool projectively_equal(const std::vector<HomogeneousForm>& f,
                        const std::vector<HomogeneousForm>& g);

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

/// Multiplies the block out in the monomial basis. n is the block degree;
/// throws malformed_block_error when the root multiplicities do not sum to n.
HomogeneousForm expand(const FactoredBlock& block, int n);

/// All blocks of an element, in order.
std::vector<HomogeneousForm> expand_element(const FactoredElement& x);

/// Numerical inverse of expand: multiplicity of the root at infinity from the
/// leading zero coefficients, companion-matrix eigenvalues for the rest, one
/// Newton polish per root, then clustering by mutual distance < tol.
/// Throws unstable_factorization_error when clusters are ambiguous at tol.
FactoredBlock factor(const HomogeneousForm& form, double tol);

/// P(aX + cY, bX + dY), exact.
HomogeneousForm act_form(const GroupElement& A, const HomogeneousForm& form);

/// Moebius action on roots with the cocycle absorbed into the block scalars,
/// so that expand(act_factored(A, x)) == act_form(A, expand(x)) block-wise up
/// to one global projective scale.
FactoredElement act_factored(const GroupElement& A, const FactoredElement& x);
FactoredBlock act_block(const GroupElement& A, const FactoredBlock& block);

// ---------------------------------------------------------------------------
// canonical orbit parametrizations (used by closures and the numeric layer)
// ---------------------------------------------------------------------------

/// Elliptic orbit point x(z) for the element with scalars u at z = i:
/// [u_q (Im z)^{(n_{q+}-n_q)/2} (zX+Y)^{n_q/2} (conj z X+Y)^{n_q/2}]_q.
FactoredElement elliptic_orbit_point(const FactoredElement& base, const InteriorPoint& z);

/// Parabolic orbit point [u_q d^{n_q - n_{q-}} (tX+Y)^{n_q}]_q, d != 0.
FactoredElement parabolic_orbit_point(const FactoredElement& base, const Rational& d,
                                      const BoundaryPoint& t);

/// Hyperbolic orbit point
/// [u_q (t1-t2)^{alpha_{q+}-alpha_q} (t1 X+Y)^{alpha_q} (t2 X+Y)^{n_q-alpha_q}]_q
/// for finite t1 != t2.
FactoredElement hyperbolic_orbit_point(const FactoredElement& base, const Rational& t1,
                                       const Rational& t2);

// ---------------------------------------------------------------------------
// canonical representative builders
// ---------------------------------------------------------------------------

/// [u_q (zX+Y)^{n_q/2} (zbar X+Y)^{n_q/2}]_q; every block with u != 0 must
/// have even dimension.
FactoredElement make_elliptic(const RepDecomposition& rep, const std::vector<Rational>& u,
                              const InteriorPoint& z);

/// [u_q (tX+Y)^{n_q}]_q.
FactoredElement make_parabolic(const RepDecomposition& rep, const std::vector<Rational>& u,
                               const BoundaryPoint& t);

/// [u_q (t1X+Y)^{alpha_q} (t2X+Y)^{n_q-alpha_q}]_q; alphas are per block.
FactoredElement make_hyperbolic(const RepDecomposition& rep, const std::vector<Rational>& u,
                                const BoundaryPoint& t1, const BoundaryPoint& t2,
                                const std::vector<int>& alphas);

/// Restriction of x to the blocks of one interval (all other scalars 0).
FactoredElement restrict_to_interval(const FactoredElement& x, int interval_index);

// ---------------------------------------------------------------------------
// text serialization
// ---------------------------------------------------------------------------

/// One block per line:
///   u=<rational> ; boundary: (t0/t1)^alpha, ... ; interior: (re,im)^beta, ...
std::string to_string(const FactoredElement& x);
FactoredElement parse_factored_element(const std::string& text, const RepDecomposition& rep);

/// `c_n X^n + ... + c_0 Y^n` with exact rationals; zero terms are skipped.
std::string to_string(const HomogeneousForm& f);

std::string to_string(const GroupElement& A);

}  // namespace sl2surf
