#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "sl2surf/classify.hpp"
#include "sl2surf/forms.hpp"
#include "sl2surf/smoothness.hpp"

namespace sl2surf {

// ---------------------------------------------------------------------------
// floating layer mirroring the exact structures
// ---------------------------------------------------------------------------

/// A point of P(V) in the affine chart of its largest-magnitude coordinate.
struct ChartPoint {
  int chart = 0;
  std::vector<double> coords;  // the remaining ambient_dim - 1 coordinates
};

/// Reinserts the 1 at the chart index.
std::vector<double> full_vector(const ChartPoint& p);

/// Distance after re-normalizing b into a's chart; large when b leaves it.
double chart_distance(const ChartPoint& a, const ChartPoint& b);

struct GroupElementF {
  double a = 1, b = 0, c = 0, d = 1;

  static GroupElementF identity() { return {}; }
  static GroupElementF exp_h(double t);  // diag(e^t, e^-t)
  static GroupElementF exp_k(double t);  // rotation
  static GroupElementF exp_l(double t);  // boost
  static GroupElementF from(const GroupElement& exact);
  GroupElementF operator*(const GroupElementF& other) const;
};

struct NumericBlock {
  double u = 0;
  std::vector<std::pair<std::array<double, 2>, int>> boundary_roots;  // (t0, t1), unit norm
  std::vector<std::pair<std::complex<double>, int>> interior_roots;   // Im > 0
};

struct NumericElement {
  std::vector<int> dims;
  std::vector<NumericBlock> blocks;
};

NumericElement to_numeric(const FactoredElement& x);
NumericElement act(const GroupElementF& A, const NumericElement& x);

/// Concatenated block coefficient vectors (X-degree ascending inside each
/// block, blocks in order).
std::vector<double> expand_concat(const NumericElement& x);
std::vector<double> expand_concat(const FactoredElement& x);

/// Normalizes by the largest-magnitude entry.
ChartPoint embed_vector(const std::vector<double>& v);
ChartPoint embed(const FactoredElement& x);

// ---------------------------------------------------------------------------
// rank declarations
// ---------------------------------------------------------------------------

struct RankReport {
  std::vector<double> singular_values;  // descending
  int declared_rank = 0;
  double gap_ratio = 0;  // sigma_r / sigma_(r+1), huge when the tail vanishes
};

/// Gap policy: the declared rank is the largest r with
/// sigma_r / sigma_(r+1) >= threshold (tail padded at the noise floor).
/// Throws indeterminate_rank_error when no gap qualifies.
RankReport declare_rank(std::vector<double> singular_values, double threshold = 1e6);

/// Central finite differences of g -> embed(g x) along the one-parameter
/// subgroups of H, K, L at the point `at`; the declared rank is the numeric
/// orbit dimension.
RankReport orbit_map_rank(const FactoredElement& x, const GroupElementF& at, double h);

// ---------------------------------------------------------------------------
// sampling and closure verification
// ---------------------------------------------------------------------------

/// Deterministic pseudo-random group elements in Iwasawa coordinates
/// (rotation angle uniform, log-scale in [-3, 3], shear in [-10, 10]);
/// the first point is the base point itself.
std::vector<ChartPoint> sample_orbit(const FactoredElement& x, int count, std::uint64_t seed);

struct ClosureCheck {
  bool ok = false;
  double worst_distance = 0;  // largest terminal distance over all probes
  std::string detail;
};

/// Drives the orbit parameters toward the border and asserts the embedded
/// points converge to the claimed border orbits within tol chart distance.
ClosureCheck verify_closure(const FactoredElement& x, const ClosureDescriptor& descriptor,
                            int count, std::uint64_t seed, double tol = 1e-6);

/// Finite-difference differential of the projective action of diag(a, 1/a)
/// at the fixed lower-border point, in a 2-dimensional chart of the orbit
/// closure; returns the two eigenvalues (ascending magnitude).
std::pair<double, double> boundary_eigenvalues(const FactoredElement& x, double a, double h);

// ---------------------------------------------------------------------------
// model geodesic tangency
// ---------------------------------------------------------------------------

enum class DiskModel { Projective, Conformal };

struct TangencyReport {
  DiskModel model = DiskModel::Projective;
  int samples = 0;
  double max_angle = 0;
  double min_angle = 0;
  bool degenerate = false;
};

/// Geodesics sharing the boundary endpoint (1, 0): in the conformal model
/// their closures are mutually tangent, in the projective model they are
/// chords with separated directions.
TangencyReport tangency_test(DiskModel model, int samples);

// ---------------------------------------------------------------------------
// embedding rank checks for the analytic elliptic families
// ---------------------------------------------------------------------------

struct EmbeddingRankCheck {
  bool all_rank2 = false;
  double min_gap_ratio = 0;
  int points_checked = 0;
  int boundary_points = 0;
};

/// Samples the model disk (projective case) or the closed half plane
/// (conformal case), including boundary points, and checks the embedding
/// Jacobian has numeric rank 2 everywhere.
EmbeddingRankCheck elliptic_embedding_rank(const FactoredElement& x, ConjugacyClass model,
                                           int n_points, double h = 1e-6);

// ---------------------------------------------------------------------------
// numeric manifold oracle for the singularity criterion
// ---------------------------------------------------------------------------

struct SingularityProbe {
  bool singular = false;
  int jacobian_rank = 0;
  double flatness_slope = 0;  // ~2 for smooth graphs, <= ~3/2 at a cusp
};

/// Rank of the parametrization at 0, then a multiscale flatness-exponent
/// estimate of the image: the deviation of E from its best tangent plane
/// inside a ball of radius delta scales like delta^2 on smooth surfaces and
/// like a smaller power at the cusps this suite cares about.
SingularityProbe singularity_probe(const std::vector<BivariatePoly>& coords);

}  // namespace sl2surf
