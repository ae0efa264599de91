#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sl2surf/classify.hpp"
#include "sl2surf/forms.hpp"

namespace sl2surf {

/// Sparse exact polynomial in two local parameters.
struct BivariatePoly {
  // (i, j) -> coefficient of x^i y^j; zero coefficients are never stored
  std::map<std::pair<int, int>, Rational> terms;

  static BivariatePoly constant(const Rational& c);
  static BivariatePoly monomial(int i, int j, const Rational& c);
  static BivariatePoly x();
  static BivariatePoly y();

  bool is_zero() const { return terms.empty(); }
  int degree() const;  // total degree, -1 for the zero polynomial
  bool is_homogeneous() const;
  bool is_constant() const;

  void add_term(int i, int j, const Rational& c);
  BivariatePoly operator+(const BivariatePoly& other) const;
  BivariatePoly operator-(const BivariatePoly& other) const;
  BivariatePoly operator*(const BivariatePoly& other) const;
  BivariatePoly pow(int e) const;
  double eval(double a, double b) const;
  bool operator==(const BivariatePoly& other) const { return terms == other.terms; }
  std::string str() const;
};

/// Exact membership of a homogeneous target in the subalgebra R[p1, p2],
/// decided by solving the linear system over the monomial basis in the
/// target's degree.
bool ring_membership(const BivariatePoly& target, const BivariatePoly& p1,
                     const BivariatePoly& p2);

/// Membership in R[p1] (the homogeneous part is a single power of p1).
bool univariate_ring_membership(const BivariatePoly& target, const BivariatePoly& p1);

enum class SmoothnessVerdict { Singular, NoObstruction };

/// NoObstruction deliberately does not claim smoothness; the criterion is
/// one-directional.
struct RaccourciResult {
  SmoothnessVerdict verdict = SmoothnessVerdict::NoObstruction;
  int p1_index = -1;
  int p2_index = -1;
  std::optional<int> witness_index;  // offending coordinate when Singular
};

/// The sufficient singularity criterion for a homogeneous polynomial
/// parametrization at the origin: pick P1 of minimal degree, P2 not in R[P1]
/// of minimal degree (ties by input order), report Singular when some
/// coordinate escapes R[P1, P2].
RaccourciResult raccourci_test(const std::vector<BivariatePoly>& coords);

// ---------------------------------------------------------------------------
// analyticity of orbit closures
// ---------------------------------------------------------------------------

enum class AnalyticStatus { Analytic, FinitelyDifferentiable, NotSmooth };
enum class ConjugacyClass {
  Projective,
  Conformal,
  ProductRP1xRP1,
  ProjectivePlane,
  ParabolicFamily,
  NotApplicable,
};

std::string to_string(AnalyticStatus s);
std::string to_string(ConjugacyClass c);

struct AnalyticityVerdict {
  AnalyticStatus status = AnalyticStatus::NotSmooth;
  int ck = 0;  // regularity grade for FinitelyDifferentiable
  ConjugacyClass conjugacy = ConjugacyClass::NotApplicable;
  int m = 0;  // parabolic family index n_{q2-} - n_{q-}
  ClosureTopology family_topology = ClosureTopology::Point;
  std::string witness;
};

/// Disk closures: all gaps (n_{q+}-n_q)/2 even -> projective; some gap 1 ->
/// conformal; otherwise C^((alpha-1)/2) with alpha the smallest odd gap.
AnalyticityVerdict elliptic_analyticity(const FactoredElement& x);

/// Moebius strips glue with the elliptic orbit into the projective plane;
/// cylinders with an alpha-gap of 1 realize the product action on
/// RP^1 x RP^1; everything else is singular along the border circle.
AnalyticityVerdict hyperbolic_analyticity(const FactoredElement& x);

/// Divisibility conditions on the dimension ladder; when they hold the
/// closure is analytic and the pair (m, topology) is a complete conjugacy
/// invariant.
AnalyticityVerdict parabolic_analyticity(const FactoredElement& x);

// ---------------------------------------------------------------------------
// torus gluing of analytic parabolic cylinders
// ---------------------------------------------------------------------------

enum class AssembledSurface { Torus2Orbits, Torus4Orbits };

/// Partner orbits are labelled by sign patterns on the block scalars; the
/// labels live on rays (positive rescaling only). Under the projective
/// identification [v] = [-v] the four odd-case labels collapse pairwise,
/// which distinct_projective_orbits records.
struct GluingDescriptor {
  std::map<int, int> k_values;  // hit block index q -> k_q
  int k_top = 0;
  int m = 0;
  std::vector<FactoredElement> partner_orbits;  // x first, raw sign labels
  AssembledSurface assembled_surface = AssembledSurface::Torus2Orbits;
  int distinct_projective_orbits = 0;
};

GluingDescriptor torus_gluing(const FactoredElement& x);

// ---------------------------------------------------------------------------
// local coordinates of the closures, for the singularity criterion and the
// numeric oracles
// ---------------------------------------------------------------------------

/// Coefficients of the elliptic closure parametrization as homogeneous
/// polynomials in (Re z, Im z) around the border point; constants dropped.
std::vector<BivariatePoly> elliptic_local_coordinates(const FactoredElement& x);

/// Coefficients of the hyperbolic closure parametrization in (t1, t2) around
/// the border circle point.
std::vector<BivariatePoly> hyperbolic_local_coordinates(const FactoredElement& x);

/// Coefficients of the parabolic closure parametrization in (d, t) at the
/// lower border, or (e, t) with e = 1/d at the upper border.
std::vector<BivariatePoly> parabolic_local_coordinates(const FactoredElement& x, bool at_lower);

}  // namespace sl2surf
