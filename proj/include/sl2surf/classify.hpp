#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl2surf/forms.hpp"
#include "sl2surf/rep.hpp"

namespace sl2surf {

enum class OrbitClass {
  Fixed,
  EllipticDisk,
  ParabolicCircle,
  ParabolicCylinder,
  HyperbolicMoebius,
  HyperbolicCylinder,
  HigherDimensional,
};

enum class ClosureTopology {
  ClosedDisk,
  Circle,
  ClosedMoebius,
  Torus,
  KleinBottle,
  ProjectivePlane,
  ClosedCylinder,
  Point,
};

std::string to_string(OrbitClass c);
std::string to_string(ClosureTopology t);

struct OrbitDescriptor {
  OrbitClass cls = OrbitClass::Fixed;
  int dimension = 0;
  int k = 0;  // distinct boundary roots across the support
  int l = 0;  // distinct interior roots across the support
  // |2 alpha_q - n_q| when constant over the support (sign depends on the
  // root labelling, so the absolute value is the orbit invariant)
  std::optional<int> delta;
  Support support;
  // parabolic cylinders with even or odd support: the (b, d) parameter
  // cylinder is a 2-folded covering of the orbit
  bool double_cover = false;

  bool operator==(const OrbitDescriptor& other) const {
    return cls == other.cls && dimension == other.dimension && k == other.k && l == other.l &&
           delta == other.delta && support == other.support && double_cover == other.double_cover;
  }
};

struct ClosureDescriptor {
  ClosureTopology topology = ClosureTopology::Point;
  // canonical representatives of the border orbits, upper component first
  std::vector<FactoredElement> border_orbits;
};

/// The (k, l) trichotomy of low dimensional orbits plus the hyperbolic
/// delta-constancy test. Throws malformed_element_error on bad input.
OrbitDescriptor classify_point(const FactoredElement& x);

/// Border orbits and closure topology; requires dimension <= 2.
ClosureDescriptor closure_of(const FactoredElement& x);

/// 3 minus the orbit dimension.
int stabilizer_dimension(const FactoredElement& x);

struct CensusEntry {
  OrbitDescriptor descriptor;
  int count = 1;
  FactoredElement representative;
};

/// Complete census of orbits of dimension <= 2 of rho_n, one entry per orbit.
std::vector<CensusEntry> enumerate_irreducible(int n);

struct CensusCounts {
  int fixed = 0;
  int circles = 0;
  int moebius = 0;
  int cylinders = 0;
  int disks = 0;

  bool operator==(const CensusCounts&) const = default;
};

CensusCounts census_counts(int n);

/// Canonical hyperbolic invariant: the multiplicity of the smaller root in
/// each hit block (0 when the block does not contain it).
std::vector<int> hyperbolic_alphas(const FactoredElement& x);

}  // namespace sl2surf
