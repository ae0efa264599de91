#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "sl2surf/classify.hpp"
#include "sl2surf/numeric.hpp"
#include "sl2surf/smoothness.hpp"

namespace sl2surf {

struct VerificationOptions {
  bool enabled = false;
  std::uint64_t seed = 12345;
  double h = 1e-5;
  int closure_probes = 8;
};

/// Everything the classify command reports for one element.
struct ClassificationReport {
  std::string rep_text;
  std::string element_text;
  OrbitDescriptor orbit;
  std::optional<ClosureDescriptor> closure;       // orbits of dimension <= 2
  std::optional<AnalyticityVerdict> analyticity;  // 2-dimensional orbits
  std::optional<GluingDescriptor> gluing;         // analytic parabolic cylinders

  // verification section, present iff requested
  bool verified = false;
  std::optional<RankReport> rank;
  bool dimension_match = false;
  std::optional<ClosureCheck> closure_check;
  std::optional<std::pair<double, double>> eigenvalues;
  std::optional<std::pair<double, double>> eigenvalues_expected;
  bool eigenvalues_match = false;
  std::optional<EmbeddingRankCheck> embedding;
  VerificationOptions options;
};

ClassificationReport build_report(const FactoredElement& x, const VerificationOptions& options);

/// True when every verification probe in the report agreed with the symbolic
/// verdicts (vacuously true without --verify).
bool verification_passed(const ClassificationReport& report);

/// Human-readable symbolic-vs-numeric mismatches, empty when all agreed.
std::vector<std::string> verification_failures(const ClassificationReport& report);

nlohmann::json to_json(const ClassificationReport& report);
nlohmann::json to_json(const OrbitDescriptor& d);
nlohmann::json to_json(const ClosureDescriptor& d);
nlohmann::json to_json(const AnalyticityVerdict& v);
nlohmann::json to_json(const GluingDescriptor& g);
nlohmann::json to_json(const TangencyReport& report);

/// Minimal structural validator for the shipped report schema: supports
/// type, required, properties, items and enum.
bool validate_against_schema(const nlohmann::json& schema, const nlohmann::json& value,
                             std::string* error = nullptr);

/// Census table and golden-file handling.
std::string census_table(int n_max);
bool census_matches_golden(int n_max, const std::string& golden_text, std::string* diff = nullptr);

/// CSV/SVG emission for the plot command; returns the CSV text.
std::string cloud_csv(const std::vector<ChartPoint>& points);
std::string scatter_svg(const std::vector<ChartPoint>& cloud,
                        const std::vector<ChartPoint>& border, int axis1, int axis2);

/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

// ---------------------------------------------------------------------------
// canonical-element construction from command-line style arguments
// ---------------------------------------------------------------------------

/// "3/4", "-2"; "inf" or "oo" for the infinite boundary point.
BoundaryPoint parse_boundary_arg(const std::string& text);

/// "i", "2i", "1+2i", "1/2-3i" or "re,im".
InteriorPoint parse_interior_arg(const std::string& text);

/// Comma-separated rationals; empty text means all ones.
std::vector<Rational> parse_scalar_list(const std::string& text, int expected);

/// Builds the canonical representative selected by exactly one of the three
/// class arguments. The hyperbolic form is "t1,t2" (alphas default to n_q/2)
/// or "t1,t2,a1,...,ap".
FactoredElement element_from_args(const RepDecomposition& rep, const std::string& elliptic_arg,
                                  const std::string& parabolic_arg,
                                  const std::string& hyperbolic_arg, const std::string& u_csv);

}  // namespace sl2surf
