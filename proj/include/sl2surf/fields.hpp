#pragma once

#include <array>
#include <string>
#include <vector>

#include "sl2surf/errors.hpp"

namespace sl2surf {

enum class GeneratorLabel { K, H, L };

std::string to_string(GeneratorLabel label);

/// One infinitesimal generator of the n-th compactified action on the strip
/// R x R+, x understood 2pi-periodically. The closed forms come from pulling
/// the n = 1 fields back under (x, y) -> (x, y^n) and simplifying the
/// removable singularity at y = 0:
///   K = (2, 0)
///   H = (2 sin x (1 + y^n), (2/n) cos x (2y + y^(n+1)))
///   L = (2 cos x (1 + y^n), -(2/n) sin x (2y + y^(n+1)))
struct PlaneVectorField {
  GeneratorLabel label = GeneratorLabel::K;
  int n = 1;

  std::array<double, 2> operator()(double x, double y) const;
};

/// The triple (K, H, L) for the n-th family member; n >= 1.
std::array<PlaneVectorField, 3> generators(int n);

/// Coefficients (c_k, c_h, c_l) of an expected bracket value.
struct BracketCombination {
  double k = 0, h = 0, l = 0;
};

/// Structure constants of the sl2 basis, transported through the generator
/// map: [K,L] = -2H, [H,L] = -2K, [H,K] = -2L.
BracketCombination expected_bracket(GeneratorLabel a, GeneratorLabel b);

/// Max norm over the grid of [f,g] - (c_k K + c_h H + c_l L), with the
/// bracket computed from central-difference Jacobians at step h.
double bracket_residual(const PlaneVectorField& f, const PlaneVectorField& g,
                        const BracketCombination& expected,
                        const std::vector<std::array<double, 2>>& grid, double h);

/// Fixed-step fourth-order explicit integration; throws on non-finite values.
std::vector<std::array<double, 2>> flow(const PlaneVectorField& f, std::array<double, 2> start,
                                        double t, double step);

/// Pushforward consistency: |dF_n(field_n(x, y)) - field_1(x, y^n)| with the
/// differential of F_n taken by central differences. Valid for y > 0.
double pullback_residual(int n, double x, double y, double h = 1e-4);

}  // namespace sl2surf
