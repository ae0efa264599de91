#include "sl2surf/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sl2surf {

// ---------------------------------------------------------------------------
// BivariatePoly
// ---------------------------------------------------------------------------

BivariatePoly BivariatePoly::constant(const Rational& c) { return monomial(0, 0, c); }

BivariatePoly BivariatePoly::monomial(int i, int j, const Rational& c) {
  BivariatePoly p;
  p.add_term(i, j, c);
  return p;
}

BivariatePoly BivariatePoly::x() { return monomial(1, 0, Rational(1)); }
BivariatePoly BivariatePoly::y() { return monomial(0, 1, Rational(1)); }

int BivariatePoly::degree() const {
  int d = -1;
  for (const auto& [ij, c] : terms) d = std::max(d, ij.first + ij.second);
  return d;
}

bool BivariatePoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [ij, c] : terms) {
    if (d < 0) d = ij.first + ij.second;
    else if (d != ij.first + ij.second) return false;
  }
  return true;
}

bool BivariatePoly::is_constant() const { return degree() <= 0; }

void BivariatePoly::add_term(int i, int j, const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(i, j);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& other) const {
  BivariatePoly out = *this;
  for (const auto& [ij, c] : other.terms) out.add_term(ij.first, ij.second, c);
  return out;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& other) const {
  BivariatePoly out = *this;
  for (const auto& [ij, c] : other.terms) out.add_term(ij.first, ij.second, -c);
  return out;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& other) const {
  BivariatePoly out;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : other.terms)
      out.add_term(a.first + b.first, a.second + b.second, ca * cb);
  return out;
}

BivariatePoly BivariatePoly::pow(int e) const {
  if (e < 0) throw engine_error("BivariatePoly::pow: negative exponent");
  BivariatePoly out = constant(Rational(1));
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

double BivariatePoly::eval(double a, double b) const {
  double acc = 0;
  for (const auto& [ij, c] : terms)
    acc += to_double(c) * std::pow(a, ij.first) * std::pow(b, ij.second);
  return acc;
}

std::string BivariatePoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [ij, c] : terms) {
    if (!first) out << " + ";
    first = false;
    out << to_string(c);
    if (ij.first) out << " x^" << ij.first;
    if (ij.second) out << " y^" << ij.second;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// subalgebra membership by exact linear algebra
// ---------------------------------------------------------------------------

namespace {

// coefficient vector over the monomial basis x^d, x^(d-1)y, ..., y^d
std::vector<Rational> coeff_vector(const BivariatePoly& p, int d) {
  std::vector<Rational> v(static_cast<size_t>(d) + 1, Rational(0));
  for (const auto& [ij, c] : p.terms) {
    if (ij.first + ij.second != d) throw engine_error("coeff_vector: degree mismatch");
    v[static_cast<size_t>(ij.first)] = c;
  }
  return v;
}

// Gauss-Jordan over Q; true when target lies in the column span.
bool in_span(std::vector<std::vector<Rational>> columns, std::vector<Rational> target) {
  size_t rows = target.size();
  size_t cols = columns.size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pivot = rank;
    while (pivot < rows && columns[c][pivot] == 0) ++pivot;
    if (pivot == rows) continue;
    for (size_t cc = c; cc < cols; ++cc) std::swap(columns[cc][pivot], columns[cc][rank]);
    std::swap(target[pivot], target[rank]);
    Rational inv = Rational(1) / columns[c][rank];
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || columns[c][r] == 0) continue;
      Rational factor = columns[c][r] * inv;
      for (size_t cc = c; cc < cols; ++cc) columns[cc][r] -= factor * columns[cc][rank];
      target[r] -= factor * target[rank];
    }
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (target[r] != 0) return false;
  return true;
}

}  // namespace

namespace {

// split into homogeneous components; the subalgebra generated by homogeneous
// polynomials is graded, so membership is tested per component
std::vector<BivariatePoly> homogeneous_components(const BivariatePoly& p) {
  std::map<int, BivariatePoly> by_degree;
  for (const auto& [ij, c] : p.terms) by_degree[ij.first + ij.second].add_term(ij.first, ij.second, c);
  std::vector<BivariatePoly> out;
  for (auto& [d, comp] : by_degree) out.push_back(std::move(comp));
  return out;
}

}  // namespace

bool univariate_ring_membership(const BivariatePoly& target, const BivariatePoly& p1) {
  if (target.is_zero()) return true;
  if (!p1.is_homogeneous() || p1.degree() <= 0)
    throw engine_error("generator must be homogeneous non-constant");
  if (!target.is_homogeneous()) {
    for (const BivariatePoly& comp : homogeneous_components(target))
      if (!univariate_ring_membership(comp, p1)) return false;
    return true;
  }
  int d = target.degree(), d1 = p1.degree();
  if (d == 0) return true;
  if (d % d1 != 0) return false;
  std::vector<std::vector<Rational>> cols{coeff_vector(p1.pow(d / d1), d)};
  return in_span(std::move(cols), coeff_vector(target, d));
}

bool ring_membership(const BivariatePoly& target, const BivariatePoly& p1,
                     const BivariatePoly& p2) {
  if (target.is_zero()) return true;
  if (!p1.is_homogeneous() || !p2.is_homogeneous() || p1.degree() <= 0 || p2.degree() <= 0)
    throw engine_error("generators must be homogeneous non-constant");
  if (!target.is_homogeneous()) {
    for (const BivariatePoly& comp : homogeneous_components(target))
      if (!ring_membership(comp, p1, p2)) return false;
    return true;
  }
  int d = target.degree();
  if (d == 0) return true;
  int d1 = p1.degree(), d2 = p2.degree();

  std::vector<std::vector<Rational>> cols;
  for (int a = 0; a * d1 <= d; ++a) {
    if ((d - a * d1) % d2 != 0) continue;
    int b = (d - a * d1) / d2;
    cols.push_back(coeff_vector(p1.pow(a) * p2.pow(b), d));
  }
  if (cols.empty()) return false;
  return in_span(std::move(cols), coeff_vector(target, d));
}

RaccourciResult raccourci_test(const std::vector<BivariatePoly>& coords) {
  for (const BivariatePoly& p : coords)
    if (p.is_zero() || p.is_constant())
      throw engine_error("raccourci_test: coordinates must be non-constant");
  if (coords.size() < 2) throw degenerate_input_error("raccourci_test: fewer than 2 coordinates");

  // P1 and P2 are picked among the homogeneous coordinates, as in the
  // statement of the criterion; membership testing is graded and accepts
  // inhomogeneous coordinates
  RaccourciResult result;
  int n = static_cast<int>(coords.size());
  for (int i = 0; i < n; ++i)
    if (coords[i].is_homogeneous() &&
        (result.p1_index < 0 || coords[i].degree() < coords[result.p1_index].degree()))
      result.p1_index = i;
  if (result.p1_index < 0)
    throw engine_error("raccourci_test: no homogeneous coordinate to serve as P1");
  const BivariatePoly& p1 = coords[result.p1_index];

  int max_degree = 0;
  for (const BivariatePoly& p : coords) max_degree = std::max(max_degree, p.degree());
  for (int pass = p1.degree(); pass <= max_degree && result.p2_index < 0; ++pass)
    for (int i = 0; i < n && result.p2_index < 0; ++i)
      if (coords[i].is_homogeneous() && coords[i].degree() == pass &&
          !univariate_ring_membership(coords[i], p1))
        result.p2_index = i;
  if (result.p2_index < 0)
    throw degenerate_input_error("every coordinate lies in R[P1]: the image is a curve");
  const BivariatePoly& p2 = coords[result.p2_index];

  for (int i = 0; i < n; ++i) {
    if (!ring_membership(coords[i], p1, p2)) {
      result.verdict = SmoothnessVerdict::Singular;
      result.witness_index = i;
      return result;
    }
  }
  result.verdict = SmoothnessVerdict::NoObstruction;
  return result;
}

// ---------------------------------------------------------------------------
// analyticity verdicts
// ---------------------------------------------------------------------------

std::string to_string(AnalyticStatus s) {
  switch (s) {
    case AnalyticStatus::Analytic: return "analytic";
    case AnalyticStatus::FinitelyDifferentiable: return "c_k";
    case AnalyticStatus::NotSmooth: return "not_smooth";
  }
  return "?";
}

std::string to_string(ConjugacyClass c) {
  switch (c) {
    case ConjugacyClass::Projective: return "projective";
    case ConjugacyClass::Conformal: return "conformal";
    case ConjugacyClass::ProductRP1xRP1: return "product_rp1xrp1";
    case ConjugacyClass::ProjectivePlane: return "projective_plane";
    case ConjugacyClass::ParabolicFamily: return "parabolic_family";
    case ConjugacyClass::NotApplicable: return "not_applicable";
  }
  return "?";
}

namespace {

// dimensions of the hit intervals, descending
std::vector<int> support_dims(const FactoredElement& x, const Support& s) {
  std::vector<int> dims;
  for (int interval : s.intervals_hit) dims.push_back(x.rep.intervals[interval].dim);
  return dims;
}

}  // namespace

AnalyticityVerdict elliptic_analyticity(const FactoredElement& x) {
  OrbitDescriptor d = classify_point(x);
  if (d.cls != OrbitClass::EllipticDisk)
    throw wrong_class_error("elliptic_analyticity: orbit is not an elliptic disk");

  std::vector<int> dims = support_dims(x, d.support);
  int n_top = dims.front();

  AnalyticityVerdict v;
  bool all_even = true;
  int smallest_odd = -1;
  for (int n : dims) {
    int gap = (n_top - n) / 2;
    if (gap % 2 != 0) {
      all_even = false;
      if (smallest_odd < 0 || gap < smallest_odd) smallest_odd = gap;
    }
  }
  if (smallest_odd == 1) {
    v.status = AnalyticStatus::Analytic;
    v.conjugacy = ConjugacyClass::Conformal;
    v.witness = "gap (n_q+ - n_q)/2 = 1 in the support";
  } else if (all_even) {
    v.status = AnalyticStatus::Analytic;
    v.conjugacy = ConjugacyClass::Projective;
    v.witness = "every gap (n_q+ - n_q)/2 is even";
  } else {
    v.status = AnalyticStatus::FinitelyDifferentiable;
    v.ck = (smallest_odd - 1) / 2;
    v.conjugacy = ConjugacyClass::NotApplicable;
    v.witness = "smallest odd gap alpha = " + std::to_string(smallest_odd);
  }
  return v;
}

AnalyticityVerdict hyperbolic_analyticity(const FactoredElement& x) {
  OrbitDescriptor d = classify_point(x);
  if (d.cls != OrbitClass::HyperbolicMoebius && d.cls != OrbitClass::HyperbolicCylinder)
    throw wrong_class_error("hyperbolic_analyticity: orbit is not hyperbolic 2-dimensional");

  AnalyticityVerdict v;
  if (d.cls == OrbitClass::HyperbolicMoebius) {
    v.status = AnalyticStatus::Analytic;
    v.conjugacy = ConjugacyClass::ProjectivePlane;
    v.witness = "Moebius strip closure glues with the elliptic orbit";
    return v;
  }

  // cylinder: analytic iff some alpha gap equals 1; the gap is invariant
  // under swapping the two root labels, so either labelling decides
  std::vector<int> alphas = hyperbolic_alphas(x);
  int alpha_top = alphas[d.support.q_plus];
  bool gap_one = false;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    if (alpha_top - alphas[q] == 1) gap_one = true;
  }
  if (gap_one) {
    v.status = AnalyticStatus::Analytic;
    v.conjugacy = ConjugacyClass::ProductRP1xRP1;
    v.witness = "alpha gap 1: the (t1, t2) parametrization is an immersion";
  } else {
    v.status = AnalyticStatus::NotSmooth;
    v.conjugacy = ConjugacyClass::NotApplicable;
    v.witness = "no alpha gap 1: a coordinate escapes R[P1, (t1-t2)^2]";
  }
  return v;
}

AnalyticityVerdict parabolic_analyticity(const FactoredElement& x) {
  OrbitDescriptor d = classify_point(x);
  if (d.cls != OrbitClass::ParabolicCylinder)
    throw wrong_class_error("parabolic_analyticity: orbit is not a parabolic cylinder");

  std::vector<int> dims = support_dims(x, d.support);
  int n_top = dims.front();
  int n_low = dims.back();
  int n2_low = dims[dims.size() - 2];  // smallest dimension above n_low
  int n2_top = dims[1];                // largest dimension below n_top
  int m = n2_low - n_low;

  AnalyticityVerdict v;
  v.m = m;
  if (n_low == 0 && n2_low != 1) {
    v.status = AnalyticStatus::NotSmooth;
    v.witness = "n_q- = 0 requires n_q2- = 1, got " + std::to_string(n2_low);
    return v;
  }
  if (n_top - n2_top != m) {
    v.status = AnalyticStatus::NotSmooth;
    v.witness = "n_q+ - n_q2+ = " + std::to_string(n_top - n2_top) + " differs from m = " +
                std::to_string(m);
    return v;
  }
  for (int n : dims) {
    if ((n_top - n) % m != 0) {
      v.status = AnalyticStatus::NotSmooth;
      v.witness = "m = " + std::to_string(m) + " does not divide n_q+ - n_q = " +
                  std::to_string(n_top - n);
      return v;
    }
  }
  v.status = AnalyticStatus::Analytic;
  v.conjugacy = ConjugacyClass::ParabolicFamily;
  v.family_topology = closure_of(x).topology;
  v.witness = "dimension ladder divisible by m = " + std::to_string(m);
  return v;
}

// ---------------------------------------------------------------------------
// torus gluing
// ---------------------------------------------------------------------------

GluingDescriptor torus_gluing(const FactoredElement& x_in) {
  AnalyticityVerdict verdict = parabolic_analyticity(x_in);
  if (verdict.status != AnalyticStatus::Analytic ||
      verdict.family_topology != ClosureTopology::ClosedCylinder)
    throw wrong_class_error("torus_gluing: needs an analytic parabolic cylinder closure");

  FactoredElement x = x_in.normalized();
  Support s = support_of(x);
  int n_low = x.rep.dims[s.q_minus];

  GluingDescriptor g;
  g.m = verdict.m;
  for (int q = 0; q < x.rep.block_count(); ++q)
    if (x.blocks[q].u != 0) g.k_values[q] = (x.rep.dims[q] - n_low) / g.m;
  g.k_top = g.k_values.at(s.q_plus);
  g.assembled_surface =
      g.k_top % 2 == 0 ? AssembledSurface::Torus2Orbits : AssembledSurface::Torus4Orbits;

  auto flipped = [&](auto&& exponent_of) {
    FactoredElement partner = x;
    for (auto& [q, kq] : g.k_values)
      if (exponent_of(kq) % 2 != 0) partner.blocks[q].u = -partner.blocks[q].u;
    return partner;
  };

  g.partner_orbits.push_back(x);
  g.partner_orbits.push_back(flipped([](int kq) { return kq; }));
  if (g.k_top % 2 != 0) {
    g.partner_orbits.push_back(flipped([&](int kq) { return g.k_top - kq; }));
    g.partner_orbits.push_back(flipped([&](int) { return g.k_top; }));
  }

  g.distinct_projective_orbits = 0;
  for (size_t i = 0; i < g.partner_orbits.size(); ++i) {
    bool seen = false;
    for (size_t j = 0; j < i; ++j)
      if (projectively_equal(g.partner_orbits[i], g.partner_orbits[j])) seen = true;
    if (!seen) ++g.distinct_projective_orbits;
  }
  return g;
}

// ---------------------------------------------------------------------------
// local coordinates of the closures
// ---------------------------------------------------------------------------

namespace {

void append_nonconstant(std::vector<BivariatePoly>& out, const BivariatePoly& p) {
  if (!p.is_zero() && !p.is_constant()) out.push_back(p);
}

}  // namespace

std::vector<BivariatePoly> elliptic_local_coordinates(const FactoredElement& x) {
  OrbitDescriptor d = classify_point(x);
  if (d.cls != OrbitClass::EllipticDisk)
    throw wrong_class_error("elliptic_local_coordinates: not an elliptic disk");
  int n_top = x.rep.dims[d.support.q_plus];

  // block q contributes u_q y^((n_top - n)/2) ((x^2+y^2) X^2 + 2x XY + Y^2)^(n/2);
  // the X^a coefficient is homogeneous of degree a in (x, y)
  BivariatePoly norm2 = BivariatePoly::monomial(2, 0, Rational(1)) +
                        BivariatePoly::monomial(0, 2, Rational(1));
  BivariatePoly two_re = BivariatePoly::monomial(1, 0, Rational(2));

  std::vector<BivariatePoly> coords;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    int n = x.rep.dims[q];
    BivariatePoly prefactor = BivariatePoly::monomial(0, (n_top - n) / 2, x.blocks[q].u);
    std::vector<BivariatePoly> xcoeffs{BivariatePoly::constant(Rational(1))};
    for (int step = 0; step < n / 2; ++step) {
      std::vector<BivariatePoly> next(xcoeffs.size() + 2);
      for (size_t a = 0; a < xcoeffs.size(); ++a) {
        next[a + 2] = next[a + 2] + xcoeffs[a] * norm2;
        next[a + 1] = next[a + 1] + xcoeffs[a] * two_re;
        next[a] = next[a] + xcoeffs[a];
      }
      xcoeffs = std::move(next);
    }
    for (const BivariatePoly& c : xcoeffs) append_nonconstant(coords, prefactor * c);
  }
  return coords;
}

std::vector<BivariatePoly> hyperbolic_local_coordinates(const FactoredElement& x) {
  OrbitDescriptor d = classify_point(x);
  if (d.cls != OrbitClass::HyperbolicMoebius && d.cls != OrbitClass::HyperbolicCylinder)
    throw wrong_class_error("hyperbolic_local_coordinates: not hyperbolic 2-dimensional");
  std::vector<int> alphas = hyperbolic_alphas(x);
  int alpha_top = alphas[d.support.q_plus];

  BivariatePoly t1 = BivariatePoly::x();
  BivariatePoly t2 = BivariatePoly::y();
  BivariatePoly diff = t1 - t2;

  std::vector<BivariatePoly> coords;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    int n = x.rep.dims[q];
    int alpha = alphas[q];
    BivariatePoly prefactor = diff.pow(alpha_top - alpha) * BivariatePoly::constant(x.blocks[q].u);
    // X^a coefficients of (t1 X + Y)^alpha (t2 X + Y)^(n - alpha)
    std::vector<BivariatePoly> xcoeffs{BivariatePoly::constant(Rational(1))};
    auto mul_root = [&](const BivariatePoly& root, int times) {
      for (int step = 0; step < times; ++step) {
        std::vector<BivariatePoly> next(xcoeffs.size() + 1);
        for (size_t a = 0; a < xcoeffs.size(); ++a) {
          next[a + 1] = next[a + 1] + xcoeffs[a] * root;
          next[a] = next[a] + xcoeffs[a];
        }
        xcoeffs = std::move(next);
      }
    };
    mul_root(t1, alpha);
    mul_root(t2, n - alpha);
    for (const BivariatePoly& c : xcoeffs) append_nonconstant(coords, prefactor * c);
  }
  return coords;
}

std::vector<BivariatePoly> parabolic_local_coordinates(const FactoredElement& x, bool at_lower) {
  OrbitDescriptor d = classify_point(x);
  if (d.cls != OrbitClass::ParabolicCylinder)
    throw wrong_class_error("parabolic_local_coordinates: not a parabolic cylinder");
  int n_top = x.rep.dims[d.support.q_plus];
  int n_low = x.rep.dims[d.support.q_minus];

  // around the lower border the parameters are (d, t) with coordinates
  // u_q d^(n_q - n_low) C(n_q, a) t^a; the upper border swaps d for e = 1/d
  // and the exponent for n_top - n_q
  std::vector<BivariatePoly> coords;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    int n = x.rep.dims[q];
    int dpow = at_lower ? n - n_low : n_top - n;
    Rational binom(1);
    for (int a = 0; a <= n; ++a) {
      if (a > 0) binom = binom * (n - a + 1) / a;
      append_nonconstant(coords, BivariatePoly::monomial(dpow, a, x.blocks[q].u * binom));
    }
  }
  return coords;
}

}  // namespace sl2surf
