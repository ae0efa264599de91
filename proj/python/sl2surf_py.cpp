// Python bindings for the classification engine: thin wrappers over the
// string/JSON surfaces, so the type system stays on the C++ side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "sl2surf/fields.hpp"
#include "sl2surf/numeric.hpp"
#include "sl2surf/report.hpp"

namespace py = pybind11;
using namespace sl2surf;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  py::module_ json_mod = py::module_::import("json");
  return json_mod.attr("loads")(j.dump());
}

FactoredElement element_from(const std::string& rep_text, const std::string& element_text) {
  return parse_factored_element(element_text, parse_rep(rep_text));
}

}  // namespace

PYBIND11_MODULE(_sl2surf, m) {
  m.doc() = "orbit classification for projectivized SL(2,R) representations";

  m.def(
      "canonical_element",
      [](const std::string& rep, const std::string& elliptic, const std::string& parabolic,
         const std::string& hyperbolic, const std::string& u) {
        return to_string(
            element_from_args(parse_rep(rep), elliptic, parabolic, hyperbolic, u));
      },
      py::arg("rep"), py::arg("elliptic") = "", py::arg("parabolic") = "",
      py::arg("hyperbolic") = "", py::arg("u") = "",
      "Serialized canonical representative built from class arguments");

  m.def(
      "classify",
      [](const std::string& rep, const std::string& element, bool verify, std::uint64_t seed) {
        VerificationOptions options;
        options.enabled = verify;
        options.seed = seed;
        ClassificationReport report = build_report(element_from(rep, element), options);
        py::dict out = json_to_py(to_json(report));
        out["verification_passed"] = verification_passed(report);
        return out;
      },
      py::arg("rep"), py::arg("element"), py::arg("verify") = false, py::arg("seed") = 12345,
      "Full classification report as a dict");

  m.def(
      "census",
      [](int n_max) {
        py::list rows;
        for (int n = 0; n <= n_max; ++n) {
          CensusCounts c = census_counts(n);
          py::dict row;
          row["n"] = n;
          row["circles"] = c.circles;
          row["moebius"] = c.moebius;
          row["cylinders"] = c.cylinders;
          row["disks"] = c.disks;
          row["fixed"] = c.fixed;
          rows.append(row);
        }
        return rows;
      },
      py::arg("n_max"), "Census of low dimensional orbits of the irreducible actions");

  m.def(
      "expand",
      [](const std::string& rep, const std::string& element) {
        py::list blocks;
        for (const HomogeneousForm& f : expand_element(element_from(rep, element))) {
          py::list coeffs;
          for (const Rational& c : f.coeffs) coeffs.append(to_string(c));
          blocks.append(coeffs);
        }
        return blocks;
      },
      py::arg("rep"), py::arg("element"),
      "Exact coefficient vectors of the expanded blocks, low X-degree first");

  m.def(
      "orbit_rank",
      [](const std::string& rep, const std::string& element, double h) {
        RankReport r = orbit_map_rank(element_from(rep, element), GroupElementF::identity(), h);
        py::dict out;
        out["declared_rank"] = r.declared_rank;
        out["gap_ratio"] = r.gap_ratio;
        out["singular_values"] = r.singular_values;
        return out;
      },
      py::arg("rep"), py::arg("element"), py::arg("h") = 1e-5,
      "Finite-difference rank of the orbit map at the identity");

  m.def(
      "sample",
      [](const std::string& rep, const std::string& element, int count, std::uint64_t seed) {
        py::list rows;
        for (const ChartPoint& p : sample_orbit(element_from(rep, element), count, seed)) {
          py::dict row;
          row["chart"] = p.chart;
          row["coords"] = p.coords;
          rows.append(row);
        }
        return rows;
      },
      py::arg("rep"), py::arg("element"), py::arg("count"), py::arg("seed") = 12345,
      "Deterministic orbit point cloud in affine charts");

  m.def(
      "tangency",
      [](const std::string& model, int samples) {
        DiskModel m_ = model == "conformal" ? DiskModel::Conformal : DiskModel::Projective;
        return json_to_py(to_json(tangency_test(m_, samples)));
      },
      py::arg("model"), py::arg("samples") = 5,
      "Geodesic tangency report for the projective or conformal disk model");

  m.def(
      "fields_summary",
      [](int n) {
        std::vector<std::array<double, 2>> grid;
        for (int i = 0; i < 9; ++i)
          for (int j = 0; j <= 8; ++j)
            grid.push_back({2 * M_PI * i / 9.0, 2.0 * j / 8.0});
        auto gens = generators(n);
        const GeneratorLabel labels[3] = {GeneratorLabel::K, GeneratorLabel::H,
                                          GeneratorLabel::L};
        py::dict residuals;
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            std::string key = "[" + to_string(labels[i]) + "," + to_string(labels[j]) + "]";
            residuals[key.c_str()] =
                bracket_residual(gens[static_cast<size_t>(i)], gens[static_cast<size_t>(j)],
                                 expected_bracket(labels[i], labels[j]), grid, 1e-3);
          }
        py::dict out;
        out["n"] = n;
        out["bracket_residuals"] = residuals;
        double worst = 0;
        for (double x : {0.5, 2.0, 4.0})
          for (double y : {0.3, 0.8, 1.4}) worst = std::max(worst, pullback_residual(n, x, y));
        out["pullback_residual"] = worst;
        return out;
      },
      py::arg("n"), "Bracket and pullback residual summary of the n-th generator family");
}
