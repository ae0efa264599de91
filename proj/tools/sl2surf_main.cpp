// Command-line surface: classification reports, censuses, verification runs
// and plot emission.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sl2surf/fields.hpp"
#include "sl2surf/numeric.hpp"
#include "sl2surf/report.hpp"

using namespace sl2surf;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw engine_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct ElementArgs {
  std::string rep;
  std::string elliptic, parabolic, hyperbolic;
  std::string u;
  std::string element_file;

  void attach(CLI::App* cmd, bool rep_required = true) {
    auto* r = cmd->add_option("--rep", rep, "representation, e.g. 4+2");
    if (rep_required) r->required();
    cmd->add_option("--elliptic", elliptic, "interior point z, e.g. i or 1/2+2i");
    cmd->add_option("--parabolic", parabolic, "boundary point t, e.g. 0 or inf");
    cmd->add_option("--hyperbolic", hyperbolic, "t1,t2 or t1,t2,a1,...,ap");
    cmd->add_option("--u", u, "block scalars, e.g. 1,1 (default all ones)");
    cmd->add_option("--element-file", element_file, "factored element in text form");
  }

  FactoredElement build() const {
    RepDecomposition decomposition = parse_rep(rep);
    if (!element_file.empty())
      return parse_factored_element(read_file(element_file), decomposition);
    return element_from_args(decomposition, elliptic, parabolic, hyperbolic, u);
  }
};

// SL2SURF_TOL_PROFILE=strict|default|fast picks the verification defaults;
// the chosen values are recorded in the report.
VerificationOptions profile_options() {
  VerificationOptions options;
  const char* profile = std::getenv("SL2SURF_TOL_PROFILE");
  if (!profile || std::string(profile) == "default") return options;
  if (std::string(profile) == "strict") {
    options.h = 1e-6;
    options.closure_probes = 16;
  } else if (std::string(profile) == "fast") {
    options.closure_probes = 4;
  } else {
    throw engine_error("unknown SL2SURF_TOL_PROFILE '" + std::string(profile) + "'");
  }
  return options;
}

int run_classify(const ElementArgs& args, bool verify, std::uint64_t seed,
                 const std::string& json_out) {
  FactoredElement x = args.build();
  VerificationOptions options = profile_options();
  options.enabled = verify;
  options.seed = seed;
  ClassificationReport report = build_report(x, options);
  std::string text = to_json(report).dump(2) + "\n";
  if (!json_out.empty()) write_file_atomic(json_out, text);
  std::cout << text;
  if (verify && !verification_passed(report)) {
    std::cerr << "verification mismatch:\n";
    for (const std::string& failure : verification_failures(report))
      std::cerr << "  " << failure << "\n";
    return 3;
  }
  return 0;
}

int run_census(int n_max, const std::string& golden_path) {
  std::cout << census_table(n_max);
  if (!golden_path.empty()) {
    std::string diff;
    if (!census_matches_golden(n_max, read_file(golden_path), &diff)) {
      std::cerr << "census drift: " << diff << "\n";
      return 1;
    }
  }
  return 0;
}

int run_plot(const ElementArgs& args, int count, std::uint64_t seed, const std::string& out_path,
             const std::string& axes_csv) {
  FactoredElement x = args.build();
  OrbitDescriptor d = classify_point(x);
  if (d.dimension > 2) throw engine_error("plot: the orbit is 3-dimensional");
  ClosureDescriptor closure = closure_of(x);

  std::vector<ChartPoint> cloud = sample_orbit(x, count, seed);
  std::vector<ChartPoint> border;
  for (const FactoredElement& b : closure.border_orbits) {
    if (classify_point(b).dimension == 0) {
      border.push_back(embed(b));
      continue;
    }
    std::vector<Rational> u;
    for (const FactoredBlock& block : b.blocks) u.push_back(block.u);
    for (int j = 0; j < 256; ++j) {
      // rational points sweeping the border circle, including infinity
      BoundaryPoint t = (j == 0) ? BoundaryPoint::infinity()
                                 : BoundaryPoint::finite(frac(j - 128, 16));
      border.push_back(embed(make_parabolic(x.rep, u, t)));
    }
  }

  // default projection: the two lowest coordinates of the q_+ block
  int axis1 = 0, axis2 = 1;
  int offset = 0;
  for (int q = 0; q < d.support.q_plus; ++q) offset += x.rep.dims[q] + 1;
  axis1 = offset;
  axis2 = offset + 1;
  if (!axes_csv.empty()) {
    auto comma = axes_csv.find(',');
    if (comma == std::string::npos) throw parse_error("--axes wants i,j");
    axis1 = std::stoi(axes_csv.substr(0, comma));
    axis2 = std::stoi(axes_csv.substr(comma + 1));
  }

  write_file_atomic(out_path, cloud_csv(cloud));
  std::string svg_path = out_path;
  auto dot = svg_path.find_last_of('.');
  svg_path = (dot == std::string::npos ? svg_path : svg_path.substr(0, dot)) + ".svg";
  write_file_atomic(svg_path, scatter_svg(cloud, border, axis1, axis2));
  std::cout << "wrote " << out_path << " and " << svg_path << " (count=" << count
            << " seed=" << seed << " axes=" << axis1 << "," << axis2 << ")\n";
  return 0;
}

int run_fields(int n, const std::string& out_dir, double total_time, double step) {
  std::vector<std::array<double, 2>> grid;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j <= 8; ++j) grid.push_back({2 * M_PI * i / 9.0, 2.0 * j / 8.0});

  auto gens = generators(n);
  json residuals = json::object();
  const GeneratorLabel labels[3] = {GeneratorLabel::K, GeneratorLabel::H, GeneratorLabel::L};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double r = bracket_residual(gens[static_cast<size_t>(i)], gens[static_cast<size_t>(j)],
                                  expected_bracket(labels[i], labels[j]), grid, 1e-3);
      residuals["[" + to_string(labels[i]) + "," + to_string(labels[j]) + "]"] = r;
    }
  double pullback_worst = 0;
  for (double x : {0.5, 2.0, 4.0})
    for (double y : {0.3, 0.8, 1.4})
      pullback_worst = std::max(pullback_worst, pullback_residual(n, x, y));
  double boundary_worst = 0;
  for (const PlaneVectorField& f : gens)
    for (double x = 0; x < 2 * M_PI; x += 0.1)
      boundary_worst = std::max(boundary_worst, std::abs(f(x, 0.0)[1]));

  json summary;
  summary["n"] = n;
  summary["bracket_residuals"] = residuals;
  summary["pullback_residual"] = pullback_worst;
  summary["boundary_y_component"] = boundary_worst;
  summary["grid"] = {{"x", "[0, 2pi) x 9"}, {"y", "[0, 2] x 9"}};
  write_file_atomic(out_dir + "/fields_n" + std::to_string(n) + ".json", summary.dump(2) + "\n");

  for (int i = 0; i < 3; ++i) {
    std::ostringstream csv;
    csv << "x,y\n";
    for (const auto& p : flow(gens[static_cast<size_t>(i)], {0.5, 1.0}, total_time, step)) {
      char buffer[80];
      std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g\n", p[0], p[1]);
      csv << buffer;
    }
    write_file_atomic(out_dir + "/trajectory_" + to_string(labels[i]) + "_n" +
                          std::to_string(n) + ".csv",
                      csv.str());
  }

  // evaluator table of the three generators on the grid
  std::ostringstream table;
  table << "x,y,K_x,K_y,H_x,H_y,L_x,L_y\n";
  for (const auto& [x, y] : grid) {
    auto kv = gens[0](x, y), hv = gens[1](x, y), lv = gens[2](x, y);
    char buffer[220];
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", x,
                  y, kv[0], kv[1], hv[0], hv[1], lv[0], lv[1]);
    table << buffer;
  }
  write_file_atomic(out_dir + "/generators_n" + std::to_string(n) + ".csv", table.str());
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classification and verification of low dimensional orbits of the projectivized "
               "SL(2,R) representations"};
  app.require_subcommand(1);

  ElementArgs classify_args;
  bool verify = false;
  std::uint64_t seed = 12345;
  std::string json_out;
  CLI::App* classify = app.add_subcommand("classify", "classify one element");
  classify_args.attach(classify);
  classify->add_flag("--verify", verify, "run the numeric cross-checks");
  classify->add_option("--seed", seed, "seed for the randomized probes");
  classify->add_option("--json-out", json_out, "also write the report to this file");

  int n_max = 0;
  std::string golden;
  CLI::App* census = app.add_subcommand("census", "orbit census of the irreducible actions");
  census->add_option("--n-max", n_max, "largest representation degree")->required();
  census->add_option("--golden", golden, "compare against a golden TSV file");

  ElementArgs plot_args;
  int count = 2000;
  std::uint64_t plot_seed = 12345;
  std::string out_path = "cloud.csv";
  std::string axes;
  CLI::App* plot = app.add_subcommand("plot", "sample an orbit into CSV and SVG");
  plot_args.attach(plot);
  plot->add_option("--count", count, "number of sampled points");
  plot->add_option("--seed", plot_seed, "sampling seed");
  plot->add_option("--out", out_path, "CSV output path (SVG lands next to it)");
  plot->add_option("--axes", axes, "projection coordinate indices i,j");

  std::string model = "projective";
  int geodesics = 5;
  CLI::App* tangency = app.add_subcommand("tangency", "geodesic tangency report for one disk model");
  tangency->add_option("--model", model, "projective or conformal");
  tangency->add_option("--samples", geodesics, "number of geodesics");

  int field_n = 1;
  std::string out_dir = ".";
  double total_time = 3.0, step = 1e-3;
  CLI::App* fields = app.add_subcommand("fields", "generator tables and flow trajectories");
  fields->add_option("--n", field_n, "family index")->required();
  fields->add_option("--out", out_dir, "output directory");
  fields->add_option("--t", total_time, "integration time");
  fields->add_option("--step", step, "integration step");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return run_classify(classify_args, verify, seed, json_out);
    if (census->parsed()) return run_census(n_max, golden);
    if (tangency->parsed()) {
      if (model != "projective" && model != "conformal")
        throw engine_error("--model must be projective or conformal");
      DiskModel m_ = model == "conformal" ? DiskModel::Conformal : DiskModel::Projective;
      std::cout << to_json(tangency_test(m_, geodesics)).dump(2) << "\n";
      return 0;
    }
    if (plot->parsed()) return run_plot(plot_args, count, plot_seed, out_path, axes);
    if (fields->parsed()) return run_fields(field_n, out_dir, total_time, step);
  } catch (const engine_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
