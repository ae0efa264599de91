#include "sl2surf/forms.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

namespace sl2surf {

// ---------------------------------------------------------------------------
// BoundaryPoint
// ---------------------------------------------------------------------------

std::pair<BoundaryPoint, Rational> BoundaryPoint::canonical(const Rational& p,
                                                            const Rational& q) {
  if (p == 0 && q == 0) throw malformed_element_error("boundary point (0,0)");
  if (q == 0) return {BoundaryPoint::infinity(), p};
  return {BoundaryPoint::finite(p / q), q};
}

bool BoundaryPoint::operator<(const BoundaryPoint& other) const {
  // finite roots ascending by t, infinity last
  if (is_infinity() != other.is_infinity()) return !is_infinity();
  if (is_infinity()) return false;
  return t0 < other.t0;
}

// ---------------------------------------------------------------------------
// HomogeneousForm
// ---------------------------------------------------------------------------

HomogeneousForm HomogeneousForm::zero(int degree) {
  HomogeneousForm f;
  f.degree = degree;
  f.coeffs.assign(static_cast<size_t>(degree) + 1, Rational(0));
  return f;
}

bool HomogeneousForm::is_zero() const {
  for (const auto& c : coeffs)
    if (c != 0) return false;
  return true;
}

namespace {

// coefficient vectors are X-degree ascending: v[i] multiplies X^i
void mul_linear(std::vector<Rational>& v, const Rational& x_coef, const Rational& y_coef) {
  std::vector<Rational> out(v.size() + 1, Rational(0));
  for (size_t i = 0; i < v.size(); ++i) {
    out[i + 1] += v[i] * x_coef;
    out[i] += v[i] * y_coef;
  }
  v = std::move(out);
}

// (|z|^2 X^2 + 2 Re z XY + Y^2)
void mul_interior_pair(std::vector<Rational>& v, const InteriorPoint& z) {
  Rational norm2 = z.re * z.re + z.im * z.im;
  Rational twice_re = 2 * z.re;
  std::vector<Rational> out(v.size() + 2, Rational(0));
  for (size_t i = 0; i < v.size(); ++i) {
    out[i + 2] += v[i] * norm2;
    out[i + 1] += v[i] * twice_re;
    out[i] += v[i];
  }
  v = std::move(out);
}

std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FactoredBlock / GroupElement / FactoredElement
// ---------------------------------------------------------------------------

int FactoredBlock::root_degree() const {
  int total = 0;
  for (const auto& [t, alpha] : boundary_roots) total += alpha;
  for (const auto& [z, beta] : interior_roots) total += 2 * beta;
  return total;
}

void FactoredBlock::sort_roots() {
  std::sort(boundary_roots.begin(), boundary_roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(interior_roots.begin(), interior_roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

bool FactoredBlock::operator==(const FactoredBlock& other) const {
  return u == other.u && boundary_roots == other.boundary_roots &&
         interior_roots == other.interior_roots;
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  return {a * other.a + b * other.c, a * other.b + b * other.d,
          c * other.a + d * other.c, c * other.b + d * other.d};
}

FactoredElement FactoredElement::normalized() const {
  FactoredElement out = *this;
  const Rational* lead = nullptr;
  for (const auto& block : out.blocks)
    if (block.u != 0) {
      lead = &block.u;
      break;
    }
  if (!lead) throw malformed_element_error("normalized: every block scalar is zero");
  Rational scale = *lead;
  for (auto& block : out.blocks) {
    block.u /= scale;
    if (block.u == 0) {
      block.boundary_roots.clear();
      block.interior_roots.clear();
    }
    block.sort_roots();
  }
  return out;
}

void FactoredElement::validate() const {
  if (static_cast<int>(blocks.size()) != rep.block_count())
    throw malformed_element_error("block count does not match the decomposition");
  bool any = false;
  for (int q = 0; q < rep.block_count(); ++q) {
    const FactoredBlock& block = blocks[q];
    if (block.u == 0) {
      if (!block.boundary_roots.empty() || !block.interior_roots.empty())
        throw malformed_block_error("block with u=0 carries roots");
      continue;
    }
    any = true;
    if (block.root_degree() != rep.dims[q])
      throw malformed_block_error("root multiplicities do not sum to the block degree");
    for (size_t i = 0; i < block.boundary_roots.size(); ++i) {
      if (block.boundary_roots[i].second <= 0)
        throw malformed_block_error("non-positive boundary multiplicity");
      for (size_t j = i + 1; j < block.boundary_roots.size(); ++j)
        if (block.boundary_roots[i].first == block.boundary_roots[j].first)
          throw malformed_block_error("repeated boundary root");
    }
    for (size_t i = 0; i < block.interior_roots.size(); ++i) {
      if (block.interior_roots[i].second <= 0)
        throw malformed_block_error("non-positive interior multiplicity");
      if (block.interior_roots[i].first.im <= 0)
        throw malformed_block_error("interior root not in the open upper half plane");
      for (size_t j = i + 1; j < block.interior_roots.size(); ++j)
        if (block.interior_roots[i].first == block.interior_roots[j].first)
          throw malformed_block_error("repeated interior root");
    }
  }
  if (!any) throw malformed_element_error("every block scalar is zero");
}

bool projectively_equal(const FactoredElement& x, const FactoredElement& y) {
  if (!(x.rep == y.rep)) return false;
  FactoredElement a = x.normalized(), b = y.normalized();
  for (int q = 0; q < a.rep.block_count(); ++q)
    if (!(a.blocks[q] == b.blocks[q])) return false;
  return true;
}

bool projectively_equal(const HomogeneousForm& f, const HomogeneousForm& g) {
  if (f.degree != g.degree) return false;
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  const Rational *fl = nullptr, *gl = nullptr;
  size_t fi = 0, gi = 0;
  for (size_t i = 0; i < f.coeffs.size(); ++i)
    if (f.coeffs[i] != 0) {
      fl = &f.coeffs[i];
      fi = i;
      break;
    }
  for (size_t i = 0; i < g.coeffs.size(); ++i)
    if (g.coeffs[i] != 0) {
      gl = &g.coeffs[i];
      gi = i;
      break;
    }
  if (fi != gi) return false;
  for (size_t i = 0; i < f.coeffs.size(); ++i)
    if (f.coeffs[i] * *gl != g.coeffs[i] * *fl) return false;
  return true;
}

bool projectively_equal(const std::vector<HomogeneousForm>& f,
                        const std::vector<HomogeneousForm>& g) {
  // one global scale across the whole concatenated coefficient vector
  if (f.size() != g.size()) return false;
  const Rational *fl = nullptr, *gl = nullptr;
  for (size_t b = 0; b < f.size() && !fl; ++b) {
    if (f[b].degree != g[b].degree) return false;
    for (size_t i = 0; i < f[b].coeffs.size(); ++i) {
      bool fz = f[b].coeffs[i] == 0, gz = g[b].coeffs[i] == 0;
      if (fz != gz) return false;
      if (!fz) {
        fl = &f[b].coeffs[i];
        gl = &g[b].coeffs[i];
        break;
      }
    }
  }
  if (!fl) return true;  // both identically zero
  for (size_t b = 0; b < f.size(); ++b) {
    if (f[b].degree != g[b].degree) return false;
    if (f[b].coeffs.size() != g[b].coeffs.size()) return false;
    for (size_t i = 0; i < f[b].coeffs.size(); ++i)
      if (f[b].coeffs[i] * *gl != g[b].coeffs[i] * *fl) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// expand / act
// ---------------------------------------------------------------------------

HomogeneousForm expand(const FactoredBlock& block, int n) {
  if (n < 0) throw malformed_block_error("negative degree");
  if (block.u == 0) {
    if (!block.boundary_roots.empty() || !block.interior_roots.empty())
      throw malformed_block_error("block with u=0 carries roots");
    return HomogeneousForm::zero(n);
  }
  if (block.root_degree() != n)
    throw malformed_block_error("root multiplicities do not sum to the block degree");

  std::vector<Rational> v{block.u};
  for (const auto& [t, alpha] : block.boundary_roots)
    for (int i = 0; i < alpha; ++i) mul_linear(v, t.t0, t.t1);
  for (const auto& [z, beta] : block.interior_roots)
    for (int i = 0; i < beta; ++i) mul_interior_pair(v, z);

  HomogeneousForm out;
  out.degree = n;
  out.coeffs = std::move(v);
  return out;
}

std::vector<HomogeneousForm> expand_element(const FactoredElement& x) {
  std::vector<HomogeneousForm> out;
  out.reserve(x.blocks.size());
  for (int q = 0; q < x.rep.block_count(); ++q) out.push_back(expand(x.blocks[q], x.rep.dims[q]));
  return out;
}

HomogeneousForm act_form(const GroupElement& A, const HomogeneousForm& form) {
  if (!A.is_unimodular()) throw engine_error("act_form: determinant is not 1");
  int n = form.degree;
  // powers of the two substituted linear forms
  std::vector<std::vector<Rational>> px(static_cast<size_t>(n) + 1),
      py(static_cast<size_t>(n) + 1);
  px[0] = {Rational(1)};
  py[0] = {Rational(1)};
  for (int i = 1; i <= n; ++i) {
    px[i] = px[i - 1];
    mul_linear(px[i], A.a, A.c);  // X -> aX + cY
    py[i] = py[i - 1];
    mul_linear(py[i], A.b, A.d);  // Y -> bX + dY
  }
  HomogeneousForm out = HomogeneousForm::zero(n);
  for (int i = 0; i <= n; ++i) {
    if (form.coeffs[i] == 0) continue;
    std::vector<Rational> term = convolve(px[i], py[n - i]);
    for (size_t j = 0; j < term.size(); ++j) out.coeffs[j] += form.coeffs[i] * term[j];
  }
  return out;
}

FactoredBlock act_block(const GroupElement& A, const FactoredBlock& block) {
  FactoredBlock out;
  out.u = block.u;
  if (block.u == 0) return out;
  for (const auto& [t, alpha] : block.boundary_roots) {
    Rational p = A.a * t.t0 + A.b * t.t1;
    Rational q = A.c * t.t0 + A.d * t.t1;
    auto [moved, scale] = BoundaryPoint::canonical(p, q);
    out.u *= rational_pow(scale, alpha);
    out.boundary_roots.emplace_back(moved, alpha);
  }
  for (const auto& [z, beta] : block.interior_roots) {
    // z' = (az+b)/(cz+d); the pair factor picks up |cz+d|^2 per multiplicity
    Rational wr = A.c * z.re + A.d;
    Rational wi = A.c * z.im;
    Rational nrm = wr * wr + wi * wi;
    Rational nr = A.a * z.re + A.b;
    Rational ni = A.a * z.im;
    InteriorPoint moved{(nr * wr + ni * wi) / nrm, z.im / nrm};  // Im uses ad-bc = 1
    out.u *= rational_pow(nrm, beta);
    out.interior_roots.emplace_back(moved, beta);
  }
  out.sort_roots();
  return out;
}

FactoredElement act_factored(const GroupElement& A, const FactoredElement& x) {
  if (!A.is_unimodular()) throw engine_error("act_factored: determinant is not 1");
  FactoredElement out;
  out.rep = x.rep;
  out.blocks.reserve(x.blocks.size());
  for (const auto& block : x.blocks) out.blocks.push_back(act_block(A, block));
  return out;
}

// ---------------------------------------------------------------------------
// factor
// ---------------------------------------------------------------------------

namespace {

std::complex<double> horner(const std::vector<double>& coeffs, std::complex<double> w) {
  std::complex<double> acc = 0.0;
  for (size_t j = coeffs.size(); j-- > 0;) acc = acc * w + coeffs[j];
  return acc;
}

}  // namespace

FactoredBlock factor(const HomogeneousForm& form, double tol) {
  if (form.is_zero()) throw malformed_block_error("factor: zero form");
  if (!(tol > 0)) throw engine_error("factor: tolerance must be positive");
  int n = form.degree;

  int lowest = 0;
  while (form.coeffs[lowest] == 0) ++lowest;
  int mult_infinity = lowest;  // multiplicity of the factor X

  // roots of q(w) = sum_j c_{n-j} w^j; boundary roots sit at w = -t
  int deg_q = n - mult_infinity;
  std::vector<Rational> q(static_cast<size_t>(deg_q) + 1);
  for (int j = 0; j <= deg_q; ++j) q[j] = form.coeffs[n - j];

  int zeros_at_origin = 0;
  while (zeros_at_origin <= deg_q && q[zeros_at_origin] == 0) ++zeros_at_origin;

  std::vector<std::complex<double>> roots(static_cast<size_t>(zeros_at_origin), 0.0);
  int m = deg_q - zeros_at_origin;
  if (m > 0) {
    std::vector<double> r(static_cast<size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) r[j] = to_double(q[j + zeros_at_origin]);

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) companion(i, m - 1) = -r[i] / r[m];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);

    std::vector<double> dr(static_cast<size_t>(m));
    for (int j = 1; j <= m; ++j) dr[j - 1] = j * r[j];
    for (int i = 0; i < m; ++i) {
      std::complex<double> w(solver.eigenvalues()(i).real(), solver.eigenvalues()(i).imag());
      for (int it = 0; it < 2; ++it) {
        std::complex<double> d = horner(dr, w);
        if (std::abs(d) < 1e-14) break;  // multiple root, leave it to clustering
        w -= horner(r, w) / d;
      }
      roots.push_back(w);
    }
  }

  // cluster by mutual distance < tol (connected components)
  size_t count = roots.size();
  std::vector<int> comp(count, -1);
  int ncomp = 0;
  for (size_t i = 0; i < count; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = ncomp;
    std::vector<size_t> stack{i};
    while (!stack.empty()) {
      size_t a = stack.back();
      stack.pop_back();
      for (size_t b = 0; b < count; ++b)
        if (comp[b] < 0 && std::abs(roots[a] - roots[b]) < tol) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
    }
    ++ncomp;
  }
  std::vector<std::complex<double>> centers(ncomp, 0.0);
  std::vector<int> sizes(ncomp, 0);
  for (size_t i = 0; i < count; ++i) {
    centers[comp[i]] += roots[i];
    sizes[comp[i]] += 1;
  }
  for (int c = 0; c < ncomp; ++c) centers[c] /= static_cast<double>(sizes[c]);

  for (int a = 0; a < ncomp; ++a)
    for (int b = a + 1; b < ncomp; ++b)
      if (std::abs(centers[a] - centers[b]) < 2 * tol)
        throw unstable_factorization_error("root clusters within tolerance of merging");

  FactoredBlock out;
  out.u = form.coeffs[mult_infinity];
  if (mult_infinity > 0) out.boundary_roots.emplace_back(BoundaryPoint::infinity(), mult_infinity);

  std::vector<bool> used(ncomp, false);
  for (int c = 0; c < ncomp; ++c) {
    if (used[c]) continue;
    if (std::abs(centers[c].imag()) <= tol) {
      used[c] = true;
      out.boundary_roots.emplace_back(
          BoundaryPoint::finite(rational_from_double(-centers[c].real())), sizes[c]);
      continue;
    }
    if (centers[c].imag() < 0) continue;  // handled from the conjugate partner
    int partner = -1;
    for (int d = 0; d < ncomp; ++d)
      if (!used[d] && d != c && std::abs(std::conj(centers[c]) - centers[d]) < 2 * tol)
        partner = d;
    if (partner < 0 || sizes[partner] != sizes[c])
      throw unstable_factorization_error("conjugate root clusters do not pair up");
    used[c] = used[partner] = true;
    // w = -conj(z) is the positive-imaginary member of the pair
    InteriorPoint z{rational_from_double(-centers[c].real()),
                    rational_from_double(centers[c].imag())};
    out.interior_roots.emplace_back(z, sizes[c]);
  }
  for (int c = 0; c < ncomp; ++c)
    if (!used[c] && std::abs(centers[c].imag()) > tol)
      throw unstable_factorization_error("unpaired complex root cluster");

  out.sort_roots();

  // self-check: a wrong multiplicity guess fails to reproduce the form
  HomogeneousForm back = expand(out, n);
  double scale = 0;
  for (const Rational& c : form.coeffs) scale = std::max(scale, std::abs(to_double(c)));
  for (int i = 0; i <= n; ++i)
    if (std::abs(to_double(back.coeffs[i]) - to_double(form.coeffs[i])) > tol * scale)
      throw unstable_factorization_error(
          "factored roots do not reproduce the form at this tolerance");
  return out;
}

// ---------------------------------------------------------------------------
// orbit parametrizations
// ---------------------------------------------------------------------------

FactoredElement elliptic_orbit_point(const FactoredElement& base, const InteriorPoint& z) {
  if (z.im <= 0) throw engine_error("elliptic_orbit_point: Im z must be positive");
  Support s = support_of(base);
  int n_top = base.rep.dims[s.q_plus];
  FactoredElement out;
  out.rep = base.rep;
  out.blocks.resize(base.blocks.size());
  for (int q = 0; q < base.rep.block_count(); ++q) {
    const Rational& u = base.blocks[q].u;
    if (u == 0) continue;
    int n = base.rep.dims[q];
    if (n % 2 != 0) throw malformed_element_error("elliptic support must be even");
    FactoredBlock& block = out.blocks[q];
    block.u = u * rational_pow(z.im, (n_top - n) / 2);
    if (n > 0) block.interior_roots.emplace_back(z, n / 2);
  }
  return out;
}

FactoredElement parabolic_orbit_point(const FactoredElement& base, const Rational& d,
                                      const BoundaryPoint& t) {
  if (d == 0) throw engine_error("parabolic_orbit_point: d must be nonzero");
  Support s = support_of(base);
  int n_low = base.rep.dims[s.q_minus];
  FactoredElement out;
  out.rep = base.rep;
  out.blocks.resize(base.blocks.size());
  for (int q = 0; q < base.rep.block_count(); ++q) {
    const Rational& u = base.blocks[q].u;
    if (u == 0) continue;
    int n = base.rep.dims[q];
    FactoredBlock& block = out.blocks[q];
    block.u = u * rational_pow(d, n - n_low);
    if (n > 0) block.boundary_roots.emplace_back(t, n);
  }
  return out;
}

FactoredElement hyperbolic_orbit_point(const FactoredElement& base, const Rational& t1,
                                       const Rational& t2) {
  if (t1 == t2) throw engine_error("hyperbolic_orbit_point: t1 and t2 must differ");
  Support s = support_of(base);
  // alpha_q = multiplicity of the infinite root in the canonical representative
  auto alpha_of = [&](int q) {
    for (const auto& [t, mult] : base.blocks[q].boundary_roots)
      if (t.is_infinity()) return mult;
    return 0;
  };
  int alpha_top = alpha_of(s.q_plus);
  FactoredElement out;
  out.rep = base.rep;
  out.blocks.resize(base.blocks.size());
  for (int q = 0; q < base.rep.block_count(); ++q) {
    const Rational& u = base.blocks[q].u;
    if (u == 0) continue;
    int n = base.rep.dims[q];
    int alpha = alpha_of(q);
    FactoredBlock& block = out.blocks[q];
    block.u = u * rational_pow(t1 - t2, alpha_top - alpha);
    if (alpha > 0) block.boundary_roots.emplace_back(BoundaryPoint::finite(t1), alpha);
    if (n - alpha > 0) block.boundary_roots.emplace_back(BoundaryPoint::finite(t2), n - alpha);
    block.sort_roots();
  }
  return out;
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

namespace {

void check_scalars(const RepDecomposition& rep, const std::vector<Rational>& u) {
  if (static_cast<int>(u.size()) != rep.block_count())
    throw malformed_element_error("scalar list does not match the decomposition");
}

}  // namespace

FactoredElement make_elliptic(const RepDecomposition& rep, const std::vector<Rational>& u,
                              const InteriorPoint& z) {
  check_scalars(rep, u);
  if (z.im <= 0) throw malformed_element_error("elliptic point needs Im z > 0");
  FactoredElement x;
  x.rep = rep;
  x.blocks.resize(u.size());
  for (int q = 0; q < rep.block_count(); ++q) {
    if (u[q] == 0) continue;
    if (rep.dims[q] % 2 != 0)
      throw malformed_element_error("elliptic element hits a block of odd dimension");
    x.blocks[q].u = u[q];
    if (rep.dims[q] > 0) x.blocks[q].interior_roots.emplace_back(z, rep.dims[q] / 2);
  }
  x.validate();
  return x;
}

FactoredElement make_parabolic(const RepDecomposition& rep, const std::vector<Rational>& u,
                               const BoundaryPoint& t) {
  check_scalars(rep, u);
  FactoredElement x;
  x.rep = rep;
  x.blocks.resize(u.size());
  for (int q = 0; q < rep.block_count(); ++q) {
    if (u[q] == 0) continue;
    x.blocks[q].u = u[q];
    if (rep.dims[q] > 0) x.blocks[q].boundary_roots.emplace_back(t, rep.dims[q]);
  }
  x.validate();
  return x;
}

FactoredElement make_hyperbolic(const RepDecomposition& rep, const std::vector<Rational>& u,
                                const BoundaryPoint& t1, const BoundaryPoint& t2,
                                const std::vector<int>& alphas) {
  check_scalars(rep, u);
  if (static_cast<int>(alphas.size()) != rep.block_count())
    throw malformed_element_error("alpha list does not match the decomposition");
  if (t1 == t2) throw malformed_element_error("hyperbolic element needs two distinct roots");
  FactoredElement x;
  x.rep = rep;
  x.blocks.resize(u.size());
  for (int q = 0; q < rep.block_count(); ++q) {
    if (u[q] == 0) continue;
    if (alphas[q] < 0 || alphas[q] > rep.dims[q])
      throw malformed_element_error("alpha out of range");
    x.blocks[q].u = u[q];
    if (alphas[q] > 0) x.blocks[q].boundary_roots.emplace_back(t1, alphas[q]);
    if (rep.dims[q] - alphas[q] > 0)
      x.blocks[q].boundary_roots.emplace_back(t2, rep.dims[q] - alphas[q]);
    x.blocks[q].sort_roots();
  }
  x.validate();
  return x;
}

FactoredElement restrict_to_interval(const FactoredElement& x, int interval_index) {
  FactoredElement out = x;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.rep.interval_of(q) == interval_index) continue;
    out.blocks[q] = FactoredBlock{};
  }
  return out;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace {

std::string boundary_to_string(const BoundaryPoint& t) {
  if (t.is_infinity()) return "(1/0)";
  return "(" + t.t0.get_num().get_str() + "/" + t.t0.get_den().get_str() + ")";
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, sep)) out.push_back(token);
  return out;
}

}  // namespace

std::string to_string(const FactoredElement& x) {
  std::ostringstream out;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    const FactoredBlock& block = x.blocks[q];
    if (q) out << "\n";
    out << "u=" << to_string(block.u);
    if (!block.boundary_roots.empty()) {
      out << " ; boundary: ";
      for (size_t i = 0; i < block.boundary_roots.size(); ++i) {
        if (i) out << ", ";
        out << boundary_to_string(block.boundary_roots[i].first) << "^"
            << block.boundary_roots[i].second;
      }
    }
    if (!block.interior_roots.empty()) {
      out << " ; interior: ";
      for (size_t i = 0; i < block.interior_roots.size(); ++i) {
        if (i) out << ", ";
        const InteriorPoint& z = block.interior_roots[i].first;
        out << "(" << to_string(z.re) << "," << to_string(z.im) << ")^"
            << block.interior_roots[i].second;
      }
    }
  }
  return out.str();
}

FactoredElement parse_factored_element(const std::string& text, const RepDecomposition& rep) {
  FactoredElement x;
  x.rep = rep;

  std::vector<std::string> lines;
  for (const std::string& raw : split(text, '\n')) {
    std::string line = trim(raw);
    if (!line.empty()) lines.push_back(line);
  }
  if (static_cast<int>(lines.size()) != rep.block_count())
    throw parse_error("expected " + std::to_string(rep.block_count()) + " block lines, got " +
                      std::to_string(lines.size()));

  auto parse_exponent = [](const std::string& tail, int line_no) {
    if (tail.empty()) return 1;
    if (tail[0] != '^') throw parse_error("expected '^' before multiplicity", line_no, 0);
    try {
      return std::stoi(tail.substr(1));
    } catch (const std::exception&) {
      throw parse_error("bad multiplicity '" + tail + "'", line_no, 0);
    }
  };

  for (int q = 0; q < rep.block_count(); ++q) {
    int line_no = q + 1;
    FactoredBlock& block = x.blocks.emplace_back();
    for (const std::string& raw_section : split(lines[q], ';')) {
      std::string section = trim(raw_section);
      if (section.rfind("u=", 0) == 0) {
        block.u = parse_rational(trim(section.substr(2)));
      } else if (section.rfind("boundary:", 0) == 0) {
        for (const std::string& raw_entry : split(section.substr(9), ',')) {
          std::string entry = trim(raw_entry);
          if (entry.empty()) continue;
          auto open = entry.find('('), close = entry.find(')');
          if (open != 0 || close == std::string::npos)
            throw parse_error("bad boundary root '" + entry + "'", line_no,
                              static_cast<int>(open));
          std::string inside = entry.substr(1, close - 1);
          auto slash = inside.find('/');
          if (slash == std::string::npos)
            throw parse_error("boundary root needs t0/t1", line_no, static_cast<int>(close));
          Rational p = parse_rational(trim(inside.substr(0, slash)));
          Rational den = parse_rational(trim(inside.substr(slash + 1)));
          int mult = parse_exponent(trim(entry.substr(close + 1)), line_no);
          auto [point, scale] = BoundaryPoint::canonical(p, den);
          (void)scale;  // serialized pairs are already canonical up to scale
          block.boundary_roots.emplace_back(point, mult);
        }
      } else if (section.rfind("interior:", 0) == 0) {
        // entries look like (re,im)^beta and contain a comma, so scan for
        // parenthesized groups instead of splitting on commas
        std::string body = section.substr(9);
        size_t pos = 0;
        while (true) {
          auto open = body.find('(', pos);
          if (open == std::string::npos) {
            if (!trim(body.substr(pos)).empty() && trim(body.substr(pos)) != ",")
              throw parse_error("trailing junk in interior section", line_no,
                                static_cast<int>(pos));
            break;
          }
          auto close = body.find(')', open);
          if (close == std::string::npos)
            throw parse_error("unclosed interior root", line_no, static_cast<int>(open));
          std::string inside = body.substr(open + 1, close - open - 1);
          auto comma = inside.find(',');
          if (comma == std::string::npos)
            throw parse_error("interior root needs re,im", line_no, static_cast<int>(open));
          InteriorPoint z{parse_rational(trim(inside.substr(0, comma))),
                          parse_rational(trim(inside.substr(comma + 1)))};
          if (z.im <= 0) throw parse_error("interior root needs im > 0", line_no, 0);
          auto next_comma = body.find(',', close);
          auto next_open = body.find('(', close);
          size_t tail_end = std::min(next_comma == std::string::npos ? body.size() : next_comma,
                                     next_open == std::string::npos ? body.size() : next_open);
          int mult = parse_exponent(trim(body.substr(close + 1, tail_end - close - 1)), line_no);
          block.interior_roots.emplace_back(z, mult);
          pos = tail_end;
          if (pos < body.size() && body[pos] == ',') ++pos;
        }
      } else if (!section.empty()) {
        throw parse_error("unknown section '" + section + "'", line_no, 0);
      }
    }
    block.sort_roots();
  }
  x.validate();
  return x;
}

std::string to_string(const HomogeneousForm& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = f.degree; i >= 0; --i) {
    if (f.coeffs[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << to_string(f.coeffs[i]);
    int j = f.degree - i;
    if (i > 0) out << " X^" << i;
    if (j > 0) out << (i > 0 ? " Y^" : " Y^") << j;
  }
  return out.str();
}

std::string to_string(const GroupElement& A) {
  return "(" + to_string(A.a) + " " + to_string(A.b) + "; " + to_string(A.c) + " " +
         to_string(A.d) + ")";
}

}  // namespace sl2surf
