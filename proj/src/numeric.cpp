#include "sl2surf/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace sl2surf {

// ---------------------------------------------------------------------------
// floating layer
// ---------------------------------------------------------------------------

std::vector<double> full_vector(const ChartPoint& p) {
  std::vector<double> v;
  v.reserve(p.coords.size() + 1);
  size_t j = 0;
  for (int i = 0; i < static_cast<int>(p.coords.size()) + 1; ++i) {
    if (i == p.chart) v.push_back(1.0);
    else v.push_back(p.coords[j++]);
  }
  return v;
}

double chart_distance(const ChartPoint& a, const ChartPoint& b) {
  std::vector<double> fa = full_vector(a);
  std::vector<double> fb = full_vector(b);
  if (fa.size() != fb.size()) return std::numeric_limits<double>::infinity();
  double pivot = fb[static_cast<size_t>(a.chart)];
  if (std::abs(pivot) < 1e-120) return std::numeric_limits<double>::infinity();
  double worst = 0;
  for (size_t i = 0; i < fa.size(); ++i) worst = std::max(worst, std::abs(fa[i] - fb[i] / pivot));
  return worst;
}

GroupElementF GroupElementF::exp_h(double t) { return {std::exp(t), 0, 0, std::exp(-t)}; }
GroupElementF GroupElementF::exp_k(double t) {
  return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
}
GroupElementF GroupElementF::exp_l(double t) {
  return {std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t)};
}
GroupElementF GroupElementF::from(const GroupElement& e) {
  return {to_double(e.a), to_double(e.b), to_double(e.c), to_double(e.d)};
}
GroupElementF GroupElementF::operator*(const GroupElementF& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

NumericElement to_numeric(const FactoredElement& x) {
  NumericElement out;
  out.dims = x.rep.dims;
  out.blocks.resize(x.blocks.size());
  for (size_t q = 0; q < x.blocks.size(); ++q) {
    const FactoredBlock& src = x.blocks[q];
    NumericBlock& dst = out.blocks[q];
    dst.u = to_double(src.u);
    for (const auto& [t, alpha] : src.boundary_roots) {
      double t0 = to_double(t.t0), t1 = to_double(t.t1);
      double norm = std::hypot(t0, t1);
      dst.u *= std::pow(norm, alpha);
      dst.boundary_roots.push_back({{t0 / norm, t1 / norm}, alpha});
    }
    for (const auto& [z, beta] : src.interior_roots)
      dst.interior_roots.push_back({{to_double(z.re), to_double(z.im)}, beta});
  }
  return out;
}

NumericElement act(const GroupElementF& A, const NumericElement& x) {
  NumericElement out;
  out.dims = x.dims;
  out.blocks.resize(x.blocks.size());
  for (size_t q = 0; q < x.blocks.size(); ++q) {
    const NumericBlock& src = x.blocks[q];
    NumericBlock& dst = out.blocks[q];
    dst.u = src.u;
    if (src.u == 0) continue;
    for (const auto& [t, alpha] : src.boundary_roots) {
      double p = A.a * t[0] + A.b * t[1];
      double r = A.c * t[0] + A.d * t[1];
      double norm = std::hypot(p, r);
      dst.u *= std::pow(norm, alpha);
      dst.boundary_roots.push_back({{p / norm, r / norm}, alpha});
    }
    for (const auto& [z, beta] : src.interior_roots) {
      std::complex<double> w = A.c * z + std::complex<double>(A.d, 0);
      std::complex<double> num = A.a * z + std::complex<double>(A.b, 0);
      double nrm = std::norm(w);
      dst.u *= std::pow(nrm, beta);
      dst.interior_roots.push_back({num * std::conj(w) / nrm, beta});
    }
  }
  return out;
}

std::vector<double> expand_concat(const NumericElement& x) {
  std::vector<double> out;
  for (size_t q = 0; q < x.blocks.size(); ++q) {
    const NumericBlock& block = x.blocks[q];
    int n = x.dims[q];
    std::vector<double> v{block.u};
    if (block.u != 0) {
      for (const auto& [t, alpha] : block.boundary_roots)
        for (int i = 0; i < alpha; ++i) {
          std::vector<double> next(v.size() + 1, 0.0);
          for (size_t j = 0; j < v.size(); ++j) {
            next[j + 1] += v[j] * t[0];
            next[j] += v[j] * t[1];
          }
          v = std::move(next);
        }
      for (const auto& [z, beta] : block.interior_roots)
        for (int i = 0; i < beta; ++i) {
          double n2 = std::norm(z), re2 = 2 * z.real();
          std::vector<double> next(v.size() + 2, 0.0);
          for (size_t j = 0; j < v.size(); ++j) {
            next[j + 2] += v[j] * n2;
            next[j + 1] += v[j] * re2;
            next[j] += v[j];
          }
          v = std::move(next);
        }
    }
    v.resize(static_cast<size_t>(n) + 1, 0.0);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<double> expand_concat(const FactoredElement& x) { return expand_concat(to_numeric(x)); }

ChartPoint embed_vector(const std::vector<double>& v) {
  int chart = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[static_cast<size_t>(chart)])) chart = static_cast<int>(i);
  if (v[static_cast<size_t>(chart)] == 0) throw malformed_element_error("embed: zero vector");
  ChartPoint p;
  p.chart = chart;
  for (size_t i = 0; i < v.size(); ++i)
    if (static_cast<int>(i) != chart) p.coords.push_back(v[i] / v[static_cast<size_t>(chart)]);
  return p;
}

ChartPoint embed(const FactoredElement& x) { return embed_vector(expand_concat(x)); }

// ---------------------------------------------------------------------------
// rank declaration
// ---------------------------------------------------------------------------

RankReport declare_rank(std::vector<double> sv, double threshold) {
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  RankReport report;
  report.singular_values = sv;
  if (sv.empty()) throw indeterminate_rank_error("no singular values");

  double floor = 5e-14 * std::max(1.0, sv[0]);
  if (sv[0] <= 10 * floor) {
    report.declared_rank = 0;
    report.gap_ratio = 1.0 / std::max(sv[0], 1e-300);
    return report;
  }
  int n = static_cast<int>(sv.size());
  for (int r = n; r >= 1; --r) {
    double next = r < n ? std::max(sv[static_cast<size_t>(r)], floor) : floor;
    if (sv[static_cast<size_t>(r - 1)] > 10 * floor &&
        sv[static_cast<size_t>(r - 1)] / next >= threshold) {
      report.declared_rank = r;
      report.gap_ratio = sv[static_cast<size_t>(r - 1)] / std::max(next, 1e-300);
      return report;
    }
  }
  std::ostringstream msg;
  msg << "no singular-value gap reaches the threshold; values:";
  for (double s : sv) msg << " " << s;
  throw indeterminate_rank_error(msg.str());
}

namespace {

// chart coordinates of v in the given chart (divide and drop the pivot)
std::vector<double> to_chart(const std::vector<double>& v, int chart) {
  double pivot = v[static_cast<size_t>(chart)];
  if (std::abs(pivot) < 1e-120) throw indeterminate_rank_error("chart pivot vanished");
  std::vector<double> out;
  out.reserve(v.size() - 1);
  for (size_t i = 0; i < v.size(); ++i)
    if (static_cast<int>(i) != chart) out.push_back(v[i] / pivot);
  return out;
}

std::vector<double> svd_values(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return {svd.singularValues().data(),
          svd.singularValues().data() + svd.singularValues().size()};
}

int argmax_abs(const std::vector<double>& v) {
  int best = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[static_cast<size_t>(best)])) best = static_cast<int>(i);
  return best;
}

}  // namespace

RankReport orbit_map_rank(const FactoredElement& x, const GroupElementF& at, double h) {
  if (!(h >= 1e-8 && h <= 1e-3)) throw engine_error("orbit_map_rank: h outside [1e-8, 1e-3]");
  NumericElement nx = to_numeric(x);
  std::vector<double> base = expand_concat(act(at, nx));
  if (base.size() <= 1) {
    // one-dimensional ambient space: P(V) is a single point
    RankReport report;
    report.declared_rank = 0;
    report.gap_ratio = std::numeric_limits<double>::infinity();
    return report;
  }
  int chart = argmax_abs(base);

  auto flow_column = [&](GroupElementF (*exp_dir)(double)) {
    std::vector<double> plus = to_chart(expand_concat(act(at * exp_dir(h), nx)), chart);
    std::vector<double> minus = to_chart(expand_concat(act(at * exp_dir(-h), nx)), chart);
    std::vector<double> col(plus.size());
    for (size_t i = 0; i < plus.size(); ++i) col[i] = (plus[i] - minus[i]) / (2 * h);
    return col;
  };

  std::vector<std::vector<double>> cols{flow_column(&GroupElementF::exp_h),
                                        flow_column(&GroupElementF::exp_k),
                                        flow_column(&GroupElementF::exp_l)};
  Eigen::MatrixXd m(static_cast<int>(cols[0].size()), 3);
  for (int j = 0; j < 3; ++j)
    for (size_t i = 0; i < cols[static_cast<size_t>(j)].size(); ++i)
      m(static_cast<int>(i), j) = cols[static_cast<size_t>(j)][i];
  return declare_rank(svd_values(m));
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

GroupElementF random_iwasawa(std::mt19937_64& rng) {
  double angle = 2 * M_PI * uniform01(rng);
  double log_scale = -3 + 6 * uniform01(rng);
  double shear = -10 + 20 * uniform01(rng);
  GroupElementF upper{1, shear, 0, 1};
  return GroupElementF::exp_k(angle) * GroupElementF::exp_h(log_scale) * upper;
}

}  // namespace

std::vector<ChartPoint> sample_orbit(const FactoredElement& x, int count, std::uint64_t seed) {
  if (count < 1) throw engine_error("sample_orbit: count must be positive");
  NumericElement nx = to_numeric(x);
  std::mt19937_64 rng(seed);
  std::vector<ChartPoint> out;
  out.reserve(static_cast<size_t>(count));
  out.push_back(embed(x));
  for (int i = 1; i < count; ++i)
    out.push_back(embed_vector(expand_concat(act(random_iwasawa(rng), nx))));
  return out;
}

// ---------------------------------------------------------------------------
// closure verification
// ---------------------------------------------------------------------------

namespace {

// exact family scalars of the elliptic orbit through x (the cocycle powers
// of Im z are divided back out; they vanish on the top interval)
FactoredElement elliptic_family_base(const FactoredElement& x) {
  Support s = support_of(x);
  int n_top = x.rep.dims[s.q_plus];
  Rational im0;
  for (const FactoredBlock& b : x.blocks)
    if (b.u != 0 && !b.interior_roots.empty()) {
      im0 = b.interior_roots.front().first.im;
      break;
    }
  std::vector<Rational> u(x.blocks.size(), Rational(0));
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    u[static_cast<size_t>(q)] =
        x.blocks[q].u / rational_pow(im0, (n_top - x.rep.dims[q]) / 2);
  }
  return make_elliptic(x.rep, u, InteriorPoint{Rational(0), Rational(1)});
}

// moves one boundary root of a hyperbolic element to infinity, exactly
FactoredElement with_root_at_infinity(const FactoredElement& x) {
  for (const FactoredBlock& b : x.blocks)
    for (const auto& [t, alpha] : b.boundary_roots)
      if (t.is_infinity()) return x;
  // t -> -1/(t - t1) sends t1 to infinity and has determinant 1
  Rational t1;
  for (const FactoredBlock& b : x.blocks)
    if (b.u != 0 && !b.boundary_roots.empty()) {
      t1 = b.boundary_roots.front().first.t0;
      break;
    }
  GroupElement A{Rational(0), Rational(-1), Rational(1), -t1};
  return act_factored(A, x);
}

std::vector<Rational> scalars_of(const FactoredElement& x) {
  std::vector<Rational> u;
  for (const FactoredBlock& b : x.blocks) u.push_back(b.u);
  return u;
}

}  // namespace

ClosureCheck verify_closure(const FactoredElement& x, const ClosureDescriptor& descriptor,
                            int count, std::uint64_t seed, double tol) {
  OrbitDescriptor d = classify_point(x);
  ClosureCheck check;
  check.ok = true;

  if (descriptor.border_orbits.empty()) {
    check.detail = "closed orbit, nothing to verify";
    return check;
  }

  std::mt19937_64 rng(seed);
  auto random_t = [&]() { return frac(static_cast<long>(rng() % 141) - 70, 10); };
  const Rational kBig(100000000);
  const Rational kSmall = frac(1, 100000000);

  auto probe_limit = [&](const FactoredElement& moving, const FactoredElement& target) {
    double dist = chart_distance(embed(target), embed(moving));
    check.worst_distance = std::max(check.worst_distance, dist);
    if (dist > tol) {
      check.ok = false;
      std::ostringstream msg;
      msg << "limit missed the border by " << dist;
      check.detail = msg.str();
    }
  };

  int probes = std::max(1, count);
  if (d.cls == OrbitClass::EllipticDisk) {
    FactoredElement base = elliptic_family_base(x);
    const FactoredElement& border = descriptor.border_orbits[0];
    for (int i = 0; i < probes; ++i) {
      Rational t = random_t();
      FactoredElement target = make_parabolic(x.rep, scalars_of(border), BoundaryPoint::finite(t));
      probe_limit(elliptic_orbit_point(base, InteriorPoint{t, kSmall}), target);
    }
    // |z| -> infinity reaches the t = infinity point of the border circle
    probe_limit(elliptic_orbit_point(base, InteriorPoint{Rational(0), kBig}),
                make_parabolic(x.rep, scalars_of(border), BoundaryPoint::infinity()));
  } else if (d.cls == OrbitClass::ParabolicCylinder) {
    const FactoredElement& upper = descriptor.border_orbits[0];
    const FactoredElement& lower = descriptor.border_orbits[1];
    bool lower_is_point = x.rep.dims[d.support.q_minus] == 0;
    for (int i = 0; i < probes; ++i) {
      BoundaryPoint root = BoundaryPoint::finite(random_t());
      probe_limit(parabolic_orbit_point(x, kBig, root),
                  make_parabolic(x.rep, scalars_of(upper), root));
      FactoredElement lower_target =
          lower_is_point ? lower : make_parabolic(x.rep, scalars_of(lower), root);
      probe_limit(parabolic_orbit_point(x, kSmall, root), lower_target);
    }
  } else if (d.cls == OrbitClass::HyperbolicMoebius || d.cls == OrbitClass::HyperbolicCylinder) {
    FactoredElement family = with_root_at_infinity(x);
    const FactoredElement& border = descriptor.border_orbits[0];
    // the moved family rescales the top-interval scalars by one common
    // factor, which leaves the border circle orbit unchanged
    std::vector<Rational> border_u = scalars_of(border);
    Rational ratio = family.blocks[d.support.q_plus].u / x.blocks[d.support.q_plus].u;
    for (Rational& u : border_u) u *= ratio;
    for (int i = 0; i < probes; ++i) {
      Rational t = random_t();
      FactoredElement target = make_parabolic(x.rep, border_u, BoundaryPoint::finite(t));
      probe_limit(hyperbolic_orbit_point(family, t + kSmall, t), target);
    }
  } else {
    check.detail = "closed orbit, nothing to verify";
  }
  if (check.ok && check.detail.empty()) {
    std::ostringstream msg;
    msg << "all limits within " << tol << " (worst " << check.worst_distance << ")";
    check.detail = msg.str();
  }
  return check;
}

// ---------------------------------------------------------------------------
// stabilizer eigenvalues at the lower border
// ---------------------------------------------------------------------------

std::pair<double, double> boundary_eigenvalues(const FactoredElement& x, double a, double h) {
  if (a == 0) throw engine_error("boundary_eigenvalues: a must be nonzero");
  if (!(h > 0 && h < 0.1)) throw engine_error("boundary_eigenvalues: bad step");
  AnalyticityVerdict verdict = parabolic_analyticity(x);
  if (verdict.status != AnalyticStatus::Analytic)
    throw wrong_class_error("boundary_eigenvalues: closure is not analytic");

  Support s = support_of(x);
  int n_low = x.rep.dims[s.q_minus];
  int m = verdict.m;

  std::vector<int> offset(x.blocks.size() + 1, 0);
  for (size_t q = 0; q < x.blocks.size(); ++q)
    offset[q + 1] = offset[q] + x.rep.dims[q] + 1;

  int q_low = s.q_minus;
  int q2_low = -1;  // hit block with the smallest dimension above n_low
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0 || x.rep.dims[q] <= n_low) continue;
    if (q2_low < 0 || x.rep.dims[q] < x.rep.dims[q2_low]) q2_low = q;
  }
  double u_low = to_double(x.blocks[q_low].u);
  double u2_low = to_double(x.blocks[q2_low].u);

  // chart functions on the closure surface near the lower border:
  //   w1 = coeff(q2_low, Y^n) / coeff(q_low, Y^n_low)
  //   w2 = coeff(q_low, X Y^(n_low - 1)) / coeff(q_low, Y^n_low)   (n_low > 0)
  //   w2 = coeff(q2_low, X) / coeff(q_low, 1)                      (n_low = 0)
  auto surface_vector = [&](double w1, double w2) {
    std::vector<double> v(static_cast<size_t>(offset.back()), 0.0);
    if (n_low > 0) {
      double sval = w1 * u_low / u2_low;
      double tval = w2 / n_low;
      for (int q = 0; q < x.rep.block_count(); ++q) {
        if (x.blocks[q].u == 0) continue;
        int n = x.rep.dims[q];
        int kq = (n - n_low) / m;
        double scale = to_double(x.blocks[q].u) * std::pow(sval, kq);
        double binom = 1;
        for (int i = 0; i <= n; ++i) {
          if (i > 0) binom = binom * (n - i + 1) / i;
          v[static_cast<size_t>(offset[q] + i)] = scale * binom * std::pow(tval, i);
        }
      }
    } else {
      // vertex chart: parameters (p, r) = (d, d t) keep the map polynomial,
      // and m = 1 forces k_q = n_q
      double p = w1 * u_low / u2_low;
      double r = w2 * u_low / u2_low;
      for (int q = 0; q < x.rep.block_count(); ++q) {
        if (x.blocks[q].u == 0) continue;
        int n = x.rep.dims[q];
        double binom = 1;
        for (int i = 0; i <= n; ++i) {
          if (i > 0) binom = binom * (n - i + 1) / i;
          v[static_cast<size_t>(offset[q] + i)] =
              to_double(x.blocks[q].u) * binom * std::pow(p, n - i) * std::pow(r, i);
        }
      }
    }
    return v;
  };

  auto chart_of = [&](const std::vector<double>& v) {
    double pivot = v[static_cast<size_t>(offset[q_low])];
    double w1 = v[static_cast<size_t>(offset[q2_low])] / pivot;
    double w2 = n_low > 0 ? v[static_cast<size_t>(offset[q_low] + 1)] / pivot
                          : v[static_cast<size_t>(offset[q2_low] + 1)] / pivot;
    return std::array<double, 2>{w1, w2};
  };

  // diag(a, 1/a) scales the X^i Y^(n-i) coefficient by a^(2i-n)
  auto act_diag = [&](std::vector<double> v) {
    for (int q = 0; q < x.rep.block_count(); ++q) {
      int n = x.rep.dims[q];
      for (int i = 0; i <= n; ++i)
        v[static_cast<size_t>(offset[q] + i)] *= std::pow(a, 2 * i - n);
    }
    return v;
  };

  auto image = [&](double w1, double w2) { return chart_of(act_diag(surface_vector(w1, w2))); };

  double j11 = (image(h, 0)[0] - image(-h, 0)[0]) / (2 * h);
  double j21 = (image(h, 0)[1] - image(-h, 0)[1]) / (2 * h);
  double j12 = (image(0, h)[0] - image(0, -h)[0]) / (2 * h);
  double j22 = (image(0, h)[1] - image(0, -h)[1]) / (2 * h);

  double tr = j11 + j22, det = j11 * j22 - j12 * j21;
  double disc = tr * tr - 4 * det;
  if (disc < 0) throw engine_error("boundary_eigenvalues: complex eigenvalue pair");
  double r1 = (tr - std::sqrt(disc)) / 2, r2 = (tr + std::sqrt(disc)) / 2;
  if (std::abs(r1) > std::abs(r2)) std::swap(r1, r2);
  return {r1, r2};
}

// ---------------------------------------------------------------------------
// geodesic tangency in the two disk models
// ---------------------------------------------------------------------------

TangencyReport tangency_test(DiskModel model, int samples) {
  TangencyReport report;
  report.model = model;
  report.samples = samples;
  if (samples < 2) {
    report.degenerate = true;
    return report;
  }

  // geodesics from x0 = (1, 0) to endpoints spread over the open upper arc
  std::vector<double> angles;
  for (int j = 0; j < samples; ++j) {
    double theta = M_PI * (j + 1) / (samples + 1);
    double ex = std::cos(theta), ey = std::sin(theta);
    double dir_angle = 0;
    if (model == DiskModel::Conformal) {
      // circle orthogonal to the unit circle through (1, 0) and e: its
      // center c solves c.x0 = 1, c.e = 1; the tangent at x0 is normal to
      // the radius x0 - c
      double cx = 1.0;
      double cy = (1.0 - ex) / ey;
      double rx = 1.0 - cx, ry = -cy;
      dir_angle = std::atan2(rx, -ry);
    } else {
      dir_angle = std::atan2(ey, ex - 1.0);
    }
    angles.push_back(std::fmod(dir_angle + 2 * M_PI, M_PI));  // unoriented line
  }

  double max_angle = 0, min_angle = M_PI;
  for (size_t i = 0; i < angles.size(); ++i)
    for (size_t j = i + 1; j < angles.size(); ++j) {
      double diff = std::abs(angles[i] - angles[j]);
      diff = std::min(diff, M_PI - diff);
      max_angle = std::max(max_angle, diff);
      min_angle = std::min(min_angle, diff);
    }
  report.max_angle = max_angle;
  report.min_angle = min_angle;
  return report;
}

// ---------------------------------------------------------------------------
// embedding rank checks
// ---------------------------------------------------------------------------

namespace {

std::vector<double> poly_power_coeffs(double c0, double c1, double c2, int half) {
  // (c0 Y^2 + c1 XY + c2 X^2)^half, X-degree ascending
  std::vector<double> v{1.0};
  for (int s = 0; s < half; ++s) {
    std::vector<double> next(v.size() + 2, 0.0);
    for (size_t j = 0; j < v.size(); ++j) {
      next[j] += v[j] * c0;
      next[j + 1] += v[j] * c1;
      next[j + 2] += v[j] * c2;
    }
    v = std::move(next);
  }
  return v;
}

}  // namespace

EmbeddingRankCheck elliptic_embedding_rank(const FactoredElement& x, ConjugacyClass model,
                                           int n_points, double h) {
  OrbitDescriptor d = classify_point(x);
  if (d.cls != OrbitClass::EllipticDisk)
    throw wrong_class_error("elliptic_embedding_rank: not an elliptic disk");
  if (model != ConjugacyClass::Projective && model != ConjugacyClass::Conformal)
    throw engine_error("elliptic_embedding_rank: model must be projective or conformal");

  FactoredElement base = elliptic_family_base(x);
  int n_top = x.rep.dims[d.support.q_plus];

  auto embed_map = [&](double a, double b) {
    std::vector<double> out;
    for (int q = 0; q < x.rep.block_count(); ++q) {
      int n = x.rep.dims[q];
      if (base.blocks[q].u == 0) {
        out.insert(out.end(), static_cast<size_t>(n) + 1, 0.0);
        continue;
      }
      double uq = to_double(base.blocks[q].u);
      std::vector<double> block;
      if (model == ConjugacyClass::Projective) {
        double disc = a * (1 - a) - b * b / 4;
        double prefactor = uq * std::pow(disc, (n_top - n) / 4);
        block = poly_power_coeffs(1 - a, b, a, n / 2);
        for (double& c : block) c *= prefactor;
      } else {
        double prefactor = uq * std::pow(b, (n_top - n) / 2);
        block = poly_power_coeffs(1.0, 2 * a, a * a + b * b, n / 2);
        for (double& c : block) c *= prefactor;
      }
      block.resize(static_cast<size_t>(n) + 1, 0.0);
      out.insert(out.end(), block.begin(), block.end());
    }
    return out;
  };

  std::vector<std::array<double, 2>> points;
  int boundary_count = std::max(10, n_points / 10);
  for (int j = 0; j < boundary_count; ++j) {
    if (model == ConjugacyClass::Projective) {
      double theta = 2 * M_PI * j / boundary_count;
      points.push_back({0.5 + std::cos(theta) / 2, std::sin(theta)});
    } else {
      points.push_back({-3.0 + 6.0 * j / std::max(1, boundary_count - 1), 0.0});
    }
  }
  int interior = std::max(0, n_points - boundary_count);
  for (int j = 0; j < interior; ++j) {
    double sfrac = (j + 0.5) / interior;
    double theta = 2 * M_PI * 7 * sfrac;
    if (model == ConjugacyClass::Projective)
      points.push_back({0.5 + sfrac * std::cos(theta) / 2, sfrac * std::sin(theta)});
    else
      points.push_back({3.0 * sfrac * std::cos(theta), 0.05 + 2.0 * sfrac});
  }

  EmbeddingRankCheck check;
  check.all_rank2 = true;
  check.min_gap_ratio = std::numeric_limits<double>::infinity();
  check.boundary_points = boundary_count;
  for (const auto& [pa, pb] : points) {
    std::vector<double> center = embed_map(pa, pb);
    int chart = argmax_abs(center);
    std::vector<double> da_p = to_chart(embed_map(pa + h, pb), chart);
    std::vector<double> da_m = to_chart(embed_map(pa - h, pb), chart);
    std::vector<double> db_p = to_chart(embed_map(pa, pb + h), chart);
    std::vector<double> db_m = to_chart(embed_map(pa, pb - h), chart);
    Eigen::MatrixXd m(static_cast<int>(da_p.size()), 2);
    for (size_t i = 0; i < da_p.size(); ++i) {
      m(static_cast<int>(i), 0) = (da_p[i] - da_m[i]) / (2 * h);
      m(static_cast<int>(i), 1) = (db_p[i] - db_m[i]) / (2 * h);
    }
    RankReport report = declare_rank(svd_values(m));
    if (report.declared_rank != 2) check.all_rank2 = false;
    check.min_gap_ratio = std::min(check.min_gap_ratio, report.gap_ratio);
    ++check.points_checked;
  }
  return check;
}

// ---------------------------------------------------------------------------
// numeric manifold oracle
// ---------------------------------------------------------------------------

SingularityProbe singularity_probe(const std::vector<BivariatePoly>& coords) {
  SingularityProbe probe;
  int n = static_cast<int>(coords.size());

  auto eval_map = [&](double a, double b) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = coords[static_cast<size_t>(i)].eval(a, b);
    return v;
  };

  {
    double h = 1e-6;
    Eigen::MatrixXd jac(n, 2);
    std::vector<double> xp = eval_map(h, 0), xm = eval_map(-h, 0);
    std::vector<double> yp = eval_map(0, h), ym = eval_map(0, -h);
    for (int i = 0; i < n; ++i) {
      jac(i, 0) = (xp[static_cast<size_t>(i)] - xm[static_cast<size_t>(i)]) / (2 * h);
      jac(i, 1) = (yp[static_cast<size_t>(i)] - ym[static_cast<size_t>(i)]) / (2 * h);
    }
    try {
      probe.jacobian_rank = declare_rank(svd_values(jac)).declared_rank;
    } catch (const indeterminate_rank_error&) {
      probe.jacobian_rank = -1;
    }
    if (probe.jacobian_rank == 2) {
      // an immersion at 0 parametrizes a genuinely smooth piece
      probe.singular = false;
      probe.flatness_slope = 2.0;
      return probe;
    }
  }

  // flatness ladder: inside the ball of radius delta, the deviation of the
  // image from its best 2-plane through the origin scales like delta^2 for
  // smooth graphs and like a lower power across a cusp
  std::vector<double> deltas;
  for (int k = 0; k < 5; ++k) deltas.push_back(std::pow(10.0, -2.0 - 0.5 * k));
  std::vector<std::vector<Eigen::VectorXd>> members(deltas.size());

  auto image_norm = [&](double rho, double theta) {
    std::vector<double> p = eval_map(rho * std::cos(theta), rho * std::sin(theta));
    double norm = 0;
    for (double c : p) norm = std::max(norm, std::abs(c));
    return norm;
  };
  auto collect = [&](double rho, double theta) {
    std::vector<double> p = eval_map(rho * std::cos(theta), rho * std::sin(theta));
    double norm = 0;
    for (double c : p) norm = std::max(norm, std::abs(c));
    for (size_t k = 0; k < deltas.size(); ++k)
      if (norm <= deltas[k] && norm > deltas[k] / 4) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = p[static_cast<size_t>(i)];
        members[k].push_back(std::move(v));
      }
  };

  const int rings = 220, spokes = 64;
  for (int r = 0; r < rings; ++r) {
    double rho = std::pow(10.0, -6.0 + 6.0 * r / (rings - 1));
    std::vector<double> norms(spokes);
    for (int sidx = 0; sidx < spokes; ++sidx) {
      double theta = 2 * M_PI * sidx / spokes;
      norms[static_cast<size_t>(sidx)] = image_norm(rho, theta);
      collect(rho, theta);
    }
    // the sheets responsible for a cusp sit where the low-degree coordinates
    // nearly vanish; refine the angular minima of the image norm so those
    // directions are sampled even when they fall between spokes
    for (int sidx = 0; sidx < spokes; ++sidx) {
      double here = norms[static_cast<size_t>(sidx)];
      double prev = norms[static_cast<size_t>((sidx + spokes - 1) % spokes)];
      double next = norms[static_cast<size_t>((sidx + 1) % spokes)];
      if (here > prev || here > next) continue;
      double lo = 2 * M_PI * (sidx - 1) / spokes;
      double hi = 2 * M_PI * (sidx + 1) / spokes;
      for (int it = 0; it < 40; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (image_norm(rho, m1) < image_norm(rho, m2)) hi = m2;
        else lo = m1;
      }
      collect(rho, (lo + hi) / 2);
    }
  }

  std::vector<double> log_delta, log_flat;
  for (size_t k = 0; k < deltas.size(); ++k) {
    if (members[k].size() < 24) continue;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
    for (const Eigen::VectorXd& v : members[k]) cov += v * v.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(cov);
    Eigen::MatrixXd basis(n, 2);
    basis.col(0) = eigs.eigenvectors().col(n - 1);
    basis.col(1) = eigs.eigenvectors().col(n - 2);
    double worst = 0;
    for (const Eigen::VectorXd& v : members[k]) {
      Eigen::VectorXd res = v - basis * (basis.transpose() * v);
      worst = std::max(worst, res.norm());
    }
    if (worst > 1e-13) {
      log_delta.push_back(std::log10(deltas[k]));
      log_flat.push_back(std::log10(worst));
    }
  }

  if (log_delta.size() < 2) {
    // flat at every scale
    probe.singular = false;
    probe.flatness_slope = 2.0;
    return probe;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < log_delta.size(); ++i) {
    sx += log_delta[i];
    sy += log_flat[i];
    sxx += log_delta[i] * log_delta[i];
    sxy += log_delta[i] * log_flat[i];
  }
  double count = static_cast<double>(log_delta.size());
  probe.flatness_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  probe.singular = probe.flatness_slope < 1.75;
  return probe;
}

}  // namespace sl2surf
