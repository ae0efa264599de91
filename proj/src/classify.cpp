#include "sl2surf/classify.hpp"

#include <algorithm>
#include <set>

namespace sl2surf {

std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::Fixed: return "fixed";
    case OrbitClass::EllipticDisk: return "elliptic_disk";
    case OrbitClass::ParabolicCircle: return "parabolic_circle";
    case OrbitClass::ParabolicCylinder: return "parabolic_cylinder";
    case OrbitClass::HyperbolicMoebius: return "hyperbolic_moebius";
    case OrbitClass::HyperbolicCylinder: return "hyperbolic_cylinder";
    case OrbitClass::HigherDimensional: return "higher_dimensional";
  }
  return "?";
}

std::string to_string(ClosureTopology t) {
  switch (t) {
    case ClosureTopology::ClosedDisk: return "closed_disk";
    case ClosureTopology::Circle: return "circle";
    case ClosureTopology::ClosedMoebius: return "closed_moebius";
    case ClosureTopology::Torus: return "torus";
    case ClosureTopology::KleinBottle: return "klein_bottle";
    case ClosureTopology::ProjectivePlane: return "projective_plane";
    case ClosureTopology::ClosedCylinder: return "closed_cylinder";
    case ClosureTopology::Point: return "point";
  }
  return "?";
}

namespace {

struct RootCensus {
  std::vector<BoundaryPoint> boundary;  // distinct, sorted
  std::vector<InteriorPoint> interior;
};

RootCensus distinct_roots(const FactoredElement& x) {
  RootCensus out;
  for (const FactoredBlock& block : x.blocks) {
    if (block.u == 0) continue;
    for (const auto& [t, alpha] : block.boundary_roots) {
      bool fresh = true;
      for (const BoundaryPoint& s : out.boundary)
        if (s == t) fresh = false;
      if (fresh) out.boundary.push_back(t);
    }
    for (const auto& [z, beta] : block.interior_roots) {
      bool fresh = true;
      for (const InteriorPoint& w : out.interior)
        if (w == z) fresh = false;
      if (fresh) out.interior.push_back(z);
    }
  }
  std::sort(out.boundary.begin(), out.boundary.end());
  std::sort(out.interior.begin(), out.interior.end());
  return out;
}

int multiplicity_of(const FactoredBlock& block, const BoundaryPoint& t) {
  for (const auto& [root, alpha] : block.boundary_roots)
    if (root == t) return alpha;
  return 0;
}

}  // namespace

std::vector<int> hyperbolic_alphas(const FactoredElement& x) {
  RootCensus roots = distinct_roots(x);
  if (roots.boundary.size() != 2 || !roots.interior.empty())
    throw wrong_class_error("hyperbolic_alphas: element is not hyperbolic");
  std::vector<int> alphas(x.blocks.size(), 0);
  for (size_t q = 0; q < x.blocks.size(); ++q)
    if (x.blocks[q].u != 0) alphas[q] = multiplicity_of(x.blocks[q], roots.boundary[0]);
  return alphas;
}

OrbitDescriptor classify_point(const FactoredElement& x) {
  x.validate();
  OrbitDescriptor d;
  d.support = support_of(x);

  RootCensus roots = distinct_roots(x);
  d.k = static_cast<int>(roots.boundary.size());
  d.l = static_cast<int>(roots.interior.size());

  if (d.k == 0 && d.l == 0) {
    // only constant blocks are hit
    d.cls = OrbitClass::Fixed;
    d.dimension = 0;
    return d;
  }

  if (d.k + 2 * d.l > 2) {
    d.cls = OrbitClass::HigherDimensional;
    d.dimension = 3;
    return d;
  }

  if (d.l == 1 && d.k == 0) {
    d.cls = OrbitClass::EllipticDisk;
    d.dimension = 2;
    return d;
  }

  if (d.k == 1 && d.l == 0) {
    if (d.support.single_interval()) {
      d.cls = OrbitClass::ParabolicCircle;
      d.dimension = 1;
    } else {
      d.cls = OrbitClass::ParabolicCylinder;
      d.dimension = 2;
      d.double_cover = d.support.has_parity();
    }
    return d;
  }

  // hyperbolic: 2-dimensional exactly when 2 alpha_q - n_q is constant
  std::vector<int> alphas = hyperbolic_alphas(x);
  std::optional<int> delta;
  bool constant = true;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    int dq = 2 * alphas[q] - x.rep.dims[q];
    if (!delta) delta = dq;
    else if (*delta != dq) constant = false;
  }
  if (!constant) {
    d.cls = OrbitClass::HigherDimensional;
    d.dimension = 3;
    return d;
  }
  d.delta = std::abs(*delta);
  d.dimension = 2;

  bool gaps_even = true;
  int alpha_top = alphas[d.support.q_plus];
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    if ((alpha_top - alphas[q]) % 2 != 0) gaps_even = false;
  }
  d.cls = (*d.delta == 0 && gaps_even) ? OrbitClass::HyperbolicMoebius
                                       : OrbitClass::HyperbolicCylinder;
  return d;
}

int stabilizer_dimension(const FactoredElement& x) { return 3 - classify_point(x).dimension; }

namespace {

std::vector<Rational> masked_scalars(const FactoredElement& x, int interval_index) {
  std::vector<Rational> u(x.blocks.size(), Rational(0));
  for (int q = 0; q < x.rep.block_count(); ++q)
    if (x.rep.interval_of(q) == interval_index) u[q] = x.blocks[q].u;
  return u;
}

}  // namespace

ClosureDescriptor closure_of(const FactoredElement& x) {
  OrbitDescriptor d = classify_point(x);
  if (d.dimension > 2)
    throw unsupported_closure_error("closure_of: 3-dimensional orbits are not described");

  ClosureDescriptor out;
  int upper_interval = x.rep.interval_of(d.support.q_plus);
  int lower_interval = x.rep.interval_of(d.support.q_minus);
  BoundaryPoint origin = BoundaryPoint::finite(0);

  switch (d.cls) {
    case OrbitClass::Fixed:
      out.topology = ClosureTopology::Point;
      break;
    case OrbitClass::ParabolicCircle:
      out.topology = ClosureTopology::Circle;
      break;
    case OrbitClass::EllipticDisk:
      out.topology = ClosureTopology::ClosedDisk;
      out.border_orbits.push_back(make_parabolic(x.rep, masked_scalars(x, upper_interval), origin));
      break;
    case OrbitClass::ParabolicCylinder: {
      out.border_orbits.push_back(make_parabolic(x.rep, masked_scalars(x, upper_interval), origin));
      out.border_orbits.push_back(make_parabolic(x.rep, masked_scalars(x, lower_interval), origin));
      int n_low = x.rep.dims[d.support.q_minus];
      if (d.support.has_parity())
        out.topology = n_low > 0 ? ClosureTopology::ClosedCylinder : ClosureTopology::ClosedDisk;
      else
        out.topology = n_low > 0 ? ClosureTopology::KleinBottle : ClosureTopology::ProjectivePlane;
      break;
    }
    case OrbitClass::HyperbolicMoebius:
      out.topology = ClosureTopology::ClosedMoebius;
      out.border_orbits.push_back(make_parabolic(x.rep, masked_scalars(x, upper_interval), origin));
      break;
    case OrbitClass::HyperbolicCylinder:
      out.topology = ClosureTopology::Torus;
      out.border_orbits.push_back(make_parabolic(x.rep, masked_scalars(x, upper_interval), origin));
      break;
    case OrbitClass::HigherDimensional:
      throw unsupported_closure_error("unreachable");
  }
  return out;
}

std::vector<CensusEntry> enumerate_irreducible(int n) {
  if (n < 0) throw engine_error("enumerate_irreducible: negative n");
  RepDecomposition rep = decompose({n});
  std::vector<Rational> one{Rational(1)};
  std::vector<CensusEntry> out;

  auto add = [&](FactoredElement representative) {
    CensusEntry e;
    e.representative = std::move(representative);
    e.descriptor = classify_point(e.representative);
    out.push_back(std::move(e));
  };

  if (n == 0) {
    add(make_parabolic(rep, one, BoundaryPoint::finite(0)));  // the single fixed point
    return out;
  }

  add(make_parabolic(rep, one, BoundaryPoint::finite(0)));  // the circle [Y^n]
  if (n % 2 == 0) {
    add(make_hyperbolic(rep, one, BoundaryPoint::infinity(), BoundaryPoint::finite(0), {n / 2}));
    add(make_elliptic(rep, one, InteriorPoint{Rational(0), Rational(1)}));
  }
  // cylinders [X^a Y^(n-a)]: the two root roles are unordered, so a < n - a
  for (int a = 1; 2 * a < n; ++a)
    add(make_hyperbolic(rep, one, BoundaryPoint::infinity(), BoundaryPoint::finite(0), {a}));
  return out;
}

CensusCounts census_counts(int n) {
  CensusCounts counts;
  for (const CensusEntry& e : enumerate_irreducible(n)) {
    switch (e.descriptor.cls) {
      case OrbitClass::Fixed: counts.fixed += e.count; break;
      case OrbitClass::ParabolicCircle: counts.circles += e.count; break;
      case OrbitClass::HyperbolicMoebius: counts.moebius += e.count; break;
      case OrbitClass::HyperbolicCylinder: counts.cylinders += e.count; break;
      case OrbitClass::EllipticDisk: counts.disks += e.count; break;
      default: throw engine_error("census: unexpected orbit class");
    }
  }
  return counts;
}

}  // namespace sl2surf
