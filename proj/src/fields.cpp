#include "sl2surf/fields.hpp"

#include <cmath>

namespace sl2surf {

std::string to_string(GeneratorLabel label) {
  switch (label) {
    case GeneratorLabel::K: return "K";
    case GeneratorLabel::H: return "H";
    case GeneratorLabel::L: return "L";
  }
  return "?";
}

std::array<double, 2> PlaneVectorField::operator()(double x, double y) const {
  switch (label) {
    case GeneratorLabel::K:
      return {2.0, 0.0};
    case GeneratorLabel::H:
      return {2.0 * std::sin(x) * (1.0 + std::pow(y, n)),
              (2.0 / n) * std::cos(x) * (2.0 * y + std::pow(y, n + 1))};
    case GeneratorLabel::L:
      return {2.0 * std::cos(x) * (1.0 + std::pow(y, n)),
              -(2.0 / n) * std::sin(x) * (2.0 * y + std::pow(y, n + 1))};
  }
  return {0.0, 0.0};
}

std::array<PlaneVectorField, 3> generators(int n) {
  if (n < 1) throw engine_error("generators: n must be positive");
  return {PlaneVectorField{GeneratorLabel::K, n}, PlaneVectorField{GeneratorLabel::H, n},
          PlaneVectorField{GeneratorLabel::L, n}};
}

BracketCombination expected_bracket(GeneratorLabel a, GeneratorLabel b) {
  if (a == b) return {};
  // [K,L] = -2H, [H,L] = -2K, [H,K] = -2L as 2x2 matrix commutators; the
  // generator map was checked at n = 1 to carry them over with the same sign
  auto pair = [&](GeneratorLabel p, GeneratorLabel q) { return a == p && b == q; };
  if (pair(GeneratorLabel::K, GeneratorLabel::L)) return {0, -2, 0};
  if (pair(GeneratorLabel::L, GeneratorLabel::K)) return {0, 2, 0};
  if (pair(GeneratorLabel::H, GeneratorLabel::L)) return {-2, 0, 0};
  if (pair(GeneratorLabel::L, GeneratorLabel::H)) return {2, 0, 0};
  if (pair(GeneratorLabel::H, GeneratorLabel::K)) return {0, 0, -2};
  return {0, 0, 2};  // [K,H]
}

double bracket_residual(const PlaneVectorField& f, const PlaneVectorField& g,
                        const BracketCombination& expected,
                        const std::vector<std::array<double, 2>>& grid, double h) {
  if (f.n != g.n) throw engine_error("bracket_residual: fields from different families");
  std::array<PlaneVectorField, 3> basis = generators(f.n);

  // five-point stencil: the O(h^4) truncation keeps the residual well below
  // the 1e-6 budget even at n = 6, y = 2
  auto diff = [&](auto&& eval) {
    return (-eval(2.0) + 8 * eval(1.0) - 8 * eval(-1.0) + eval(-2.0)) / (12 * h);
  };
  auto jacobian_apply = [&](const PlaneVectorField& field, double x, double y,
                            const std::array<double, 2>& v) {
    std::array<double, 2> col_x{diff([&](double s) { return field(x + s * h, y)[0]; }),
                                diff([&](double s) { return field(x + s * h, y)[1]; })};
    std::array<double, 2> col_y{diff([&](double s) { return field(x, y + s * h)[0]; }),
                                diff([&](double s) { return field(x, y + s * h)[1]; })};
    return std::array<double, 2>{col_x[0] * v[0] + col_y[0] * v[1],
                                 col_x[1] * v[0] + col_y[1] * v[1]};
  };

  double worst = 0;
  for (const auto& [x, y] : grid) {
    std::array<double, 2> fv = f(x, y), gv = g(x, y);
    std::array<double, 2> dgf = jacobian_apply(g, x, y, fv);
    std::array<double, 2> dfg = jacobian_apply(f, x, y, gv);
    std::array<double, 2> kv = basis[0](x, y), hv = basis[1](x, y), lv = basis[2](x, y);
    for (int i = 0; i < 2; ++i) {
      double bracket = dgf[i] - dfg[i];
      double want = expected.k * kv[i] + expected.h * hv[i] + expected.l * lv[i];
      worst = std::max(worst, std::abs(bracket - want));
    }
  }
  return worst;
}

std::vector<std::array<double, 2>> flow(const PlaneVectorField& f, std::array<double, 2> start,
                                        double t, double step) {
  if (!(step > 0)) throw engine_error("flow: step must be positive");
  if (start[1] < 0) throw engine_error("flow: start below the boundary");
  std::vector<std::array<double, 2>> trajectory{start};
  int steps = static_cast<int>(std::ceil(std::abs(t) / step));
  double dt = t / std::max(1, steps);
  std::array<double, 2> p = start;
  for (int i = 0; i < steps; ++i) {
    auto k1 = f(p[0], p[1]);
    auto k2 = f(p[0] + dt / 2 * k1[0], p[1] + dt / 2 * k1[1]);
    auto k3 = f(p[0] + dt / 2 * k2[0], p[1] + dt / 2 * k2[1]);
    auto k4 = f(p[0] + dt * k3[0], p[1] + dt * k3[1]);
    p[0] += dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    p[1] += dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
      throw engine_error("flow: integration produced non-finite values");
    trajectory.push_back(p);
  }
  return trajectory;
}

double pullback_residual(int n, double x, double y, double h) {
  if (y <= 0) throw engine_error("pullback_residual: needs y > 0");
  std::array<PlaneVectorField, 3> up = generators(n);
  std::array<PlaneVectorField, 3> down = generators(1);
  double worst = 0;
  for (int i = 0; i < 3; ++i) {
    std::array<double, 2> v = up[i](x, y);
    // dF_n by a five-point stencil; F_n(x, y) = (x, y^n)
    double dyn = (-std::pow(y + 2 * h, n) + 8 * std::pow(y + h, n) - 8 * std::pow(y - h, n) +
                  std::pow(y - 2 * h, n)) /
                 (12 * h);
    std::array<double, 2> pushed{v[0], dyn * v[1]};
    std::array<double, 2> want = down[i](x, std::pow(y, n));
    worst = std::max(worst, std::abs(pushed[0] - want[0]));
    worst = std::max(worst, std::abs(pushed[1] - want[1]));
  }
  return worst;
}

}  // namespace sl2surf
