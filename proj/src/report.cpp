#include "sl2surf/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sl2surf {

using nlohmann::json;

ClassificationReport build_report(const FactoredElement& x, const VerificationOptions& options) {
  ClassificationReport report;
  report.rep_text = format_rep(x.rep);
  report.element_text = to_string(x.normalized());
  report.orbit = classify_point(x);
  report.options = options;

  if (report.orbit.dimension <= 2) report.closure = closure_of(x);

  switch (report.orbit.cls) {
    case OrbitClass::EllipticDisk:
      report.analyticity = elliptic_analyticity(x);
      break;
    case OrbitClass::HyperbolicMoebius:
    case OrbitClass::HyperbolicCylinder:
      report.analyticity = hyperbolic_analyticity(x);
      break;
    case OrbitClass::ParabolicCylinder:
      report.analyticity = parabolic_analyticity(x);
      if (report.analyticity->status == AnalyticStatus::Analytic &&
          report.analyticity->family_topology == ClosureTopology::ClosedCylinder)
        report.gluing = torus_gluing(x);
      break;
    default:
      break;  // circles, fixed points and 3-dimensional orbits carry no verdict
  }

  if (!options.enabled) return report;
  report.verified = true;
  report.rank = orbit_map_rank(x, GroupElementF::identity(), options.h);
  report.dimension_match = report.rank->declared_rank == report.orbit.dimension;
  if (report.closure)
    report.closure_check = verify_closure(x, *report.closure, options.closure_probes,
                                          options.seed);
  if (report.analyticity && report.analyticity->status == AnalyticStatus::Analytic) {
    if (report.orbit.cls == OrbitClass::ParabolicCylinder) {
      double a = 2.0;
      report.eigenvalues = boundary_eigenvalues(x, a, options.h);
      int n_low = x.rep.dims[report.orbit.support.q_minus];
      double e_t = n_low > 0 ? a * a : a;  // vertex chart contracts one power
      double e_s = n_low > 0 ? std::pow(a, -report.analyticity->m) : 1.0 / a;
      report.eigenvalues_expected = {std::min(std::abs(e_s), std::abs(e_t)),
                                     std::max(std::abs(e_s), std::abs(e_t))};
      double lo = std::abs(report.eigenvalues->first);
      double hi = std::abs(report.eigenvalues->second);
      report.eigenvalues_match =
          std::abs(lo - report.eigenvalues_expected->first) <=
              1e-6 * report.eigenvalues_expected->first &&
          std::abs(hi - report.eigenvalues_expected->second) <=
              1e-6 * report.eigenvalues_expected->second;
    }
    if (report.orbit.cls == OrbitClass::EllipticDisk)
      report.embedding = elliptic_embedding_rank(x, report.analyticity->conjugacy, 100);
  }
  return report;
}

bool verification_passed(const ClassificationReport& report) {
  return verification_failures(report).empty();
}

std::vector<std::string> verification_failures(const ClassificationReport& report) {
  std::vector<std::string> failures;
  if (!report.verified) return failures;
  if (!report.dimension_match) {
    std::ostringstream msg;
    msg << "symbolic dimension " << report.orbit.dimension << " vs numeric rank "
        << (report.rank ? report.rank->declared_rank : -1);
    failures.push_back(msg.str());
  }
  if (report.closure_check && !report.closure_check->ok)
    failures.push_back("closure limits: " + report.closure_check->detail);
  if (report.eigenvalues && !report.eigenvalues_match) {
    std::ostringstream msg;
    msg << "boundary eigenvalues {" << report.eigenvalues->first << ", "
        << report.eigenvalues->second << "} vs expected magnitudes {"
        << report.eigenvalues_expected->first << ", " << report.eigenvalues_expected->second
        << "}";
    failures.push_back(msg.str());
  }
  if (report.embedding && !report.embedding->all_rank2)
    failures.push_back("embedding Jacobian dropped below rank 2");
  return failures;
}

json to_json(const OrbitDescriptor& d) {
  json support;
  support["intervals_hit"] = d.support.intervals_hit;
  support["q_plus"] = d.support.q_plus;
  support["q_minus"] = d.support.q_minus;
  support["parity"] = to_string(d.support.parity);
  json out;
  out["class"] = to_string(d.cls);
  out["dimension"] = d.dimension;
  out["k"] = d.k;
  out["l"] = d.l;
  if (d.delta) out["delta"] = *d.delta;
  else out["delta"] = nullptr;
  out["support"] = support;
  out["double_cover"] = d.double_cover;
  return out;
}

json to_json(const ClosureDescriptor& d) {
  json out;
  out["closure_topology"] = to_string(d.topology);
  json border = json::array();
  for (const FactoredElement& b : d.border_orbits) border.push_back(to_string(b));
  out["border"] = border;
  return out;
}

json to_json(const AnalyticityVerdict& v) {
  json out;
  out["status"] = to_string(v.status);
  if (v.status == AnalyticStatus::FinitelyDifferentiable) out["k"] = v.ck;
  out["conjugacy"] = to_string(v.conjugacy);
  if (v.conjugacy == ConjugacyClass::ParabolicFamily) {
    out["m"] = v.m;
    out["family_topology"] = to_string(v.family_topology);
  }
  out["witness"] = v.witness;
  // regularity rigidity of the two disk families, reported as a known fact
  // rather than a computed one
  if (v.conjugacy == ConjugacyClass::Projective)
    out["note"] = "C-infinity realizations of the projective family are automatically analytic";
  if (v.conjugacy == ConjugacyClass::Conformal)
    out["note"] = "C^1 realizations of the conformal family are automatically analytic";
  return out;
}

json to_json(const GluingDescriptor& g) {
  json out;
  out["m"] = g.m;
  out["k_top"] = g.k_top;
  json kv = json::object();
  for (const auto& [q, k] : g.k_values) kv[std::to_string(q)] = k;
  out["k_values"] = kv;
  out["assembled_surface"] =
      g.assembled_surface == AssembledSurface::Torus2Orbits ? "torus_2_orbits" : "torus_4_orbits";
  json partners = json::array();
  for (const FactoredElement& p : g.partner_orbits) partners.push_back(to_string(p));
  out["partners"] = partners;
  out["distinct_projective_orbits"] = g.distinct_projective_orbits;
  return out;
}

json to_json(const TangencyReport& report) {
  json out;
  out["model"] = report.model == DiskModel::Projective ? "projective" : "conformal";
  out["samples"] = report.samples;
  out["max_angle"] = report.max_angle;
  out["min_angle"] = report.min_angle;
  out["degenerate"] = report.degenerate;
  return out;
}

json to_json(const ClassificationReport& report) {
  json out;
  out["schema_version"] = 1;
  out["input"] = {{"rep", report.rep_text}, {"element", report.element_text}};
  out["orbit"] = to_json(report.orbit);
  if (report.closure) out["closure"] = to_json(*report.closure);
  if (report.analyticity) out["analyticity"] = to_json(*report.analyticity);
  if (report.gluing) out["gluing"] = to_json(*report.gluing);
  if (report.verified) {
    json v;
    v["seed"] = report.options.seed;
    v["h"] = report.options.h;
    v["closure_probes"] = report.options.closure_probes;
    if (report.rank) {
      v["rank"] = {{"declared_rank", report.rank->declared_rank},
                   {"gap_ratio", std::min(report.rank->gap_ratio, 1e300)},
                   {"singular_values", report.rank->singular_values}};
      v["dimension_match"] = report.dimension_match;
    }
    if (report.closure_check)
      v["closure_check"] = {{"ok", report.closure_check->ok},
                            {"worst_distance", report.closure_check->worst_distance},
                            {"detail", report.closure_check->detail}};
    if (report.eigenvalues) {
      v["boundary_eigenvalues"] = {
          {"computed", {report.eigenvalues->first, report.eigenvalues->second}},
          {"expected_magnitudes",
           {report.eigenvalues_expected->first, report.eigenvalues_expected->second}},
          {"match", report.eigenvalues_match}};
    }
    if (report.embedding)
      v["embedding_rank"] = {{"all_rank2", report.embedding->all_rank2},
                             {"min_gap_ratio", std::min(report.embedding->min_gap_ratio, 1e300)},
                             {"points_checked", report.embedding->points_checked},
                             {"boundary_points", report.embedding->boundary_points}};
    out["verification"] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// schema validation
// ---------------------------------------------------------------------------

namespace {

bool type_matches(const std::string& type, const json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

}  // namespace

bool validate_against_schema(const json& schema, const json& value, std::string* error) {
  auto fail = [&](const std::string& what) {
    if (error) *error = what;
    return false;
  };
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) ok = type_matches(t.get<std::string>(), value);
    else
      for (const json& option : t) ok = ok || type_matches(option.get<std::string>(), value);
    if (!ok) return fail("type mismatch at " + value.dump().substr(0, 60));
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& option : schema["enum"]) ok = ok || option == value;
    if (!ok) return fail("enum mismatch at " + value.dump().substr(0, 60));
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const json& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          return fail("missing required key " + key.get<std::string>());
    if (schema.contains("properties"))
      for (auto& [key, sub] : schema["properties"].items())
        if (value.contains(key) && !validate_against_schema(sub, value[key], error)) return false;
  }
  if (value.is_array() && schema.contains("items"))
    for (const json& item : value)
      if (!validate_against_schema(schema["items"], item, error)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// census table and golden files
// ---------------------------------------------------------------------------

std::string census_table(int n_max) {
  std::ostringstream out;
  out << "n\tcircles\tmoebius\tcylinders\tdisks\n";
  for (int n = 0; n <= n_max; ++n) {
    CensusCounts c = census_counts(n);
    out << n << "\t" << c.circles << "\t" << c.moebius << "\t" << c.cylinders << "\t" << c.disks
        << "\n";
  }
  return out.str();
}

bool census_matches_golden(int n_max, const std::string& golden_text, std::string* diff) {
  std::istringstream in(golden_text);
  std::string line;
  std::vector<std::array<int, 5>> golden;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n\t", 0) == 0) continue;
    std::istringstream row(line);
    std::array<int, 5> values{};
    for (int& v : values)
      if (!(row >> v)) {
        if (diff) *diff = "unparseable golden row: " + line;
        return false;
      }
    golden.push_back(values);
  }
  for (int n = 0; n <= n_max; ++n) {
    CensusCounts c = census_counts(n);
    bool found = false;
    for (const auto& row : golden) {
      if (row[0] != n) continue;
      found = true;
      std::array<int, 5> want{n, c.circles, c.moebius, c.cylinders, c.disks};
      if (row != want) {
        if (diff) {
          std::ostringstream msg;
          msg << "n=" << n << ": golden (" << row[1] << "," << row[2] << "," << row[3] << ","
              << row[4] << ") vs computed (" << want[1] << "," << want[2] << "," << want[3] << ","
              << want[4] << ")";
          *diff = msg.str();
        }
        return false;
      }
    }
    if (!found) {
      if (diff) *diff = "golden file misses n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// plot output
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::string cloud_csv(const std::vector<ChartPoint>& points) {
  std::ostringstream out;
  if (!points.empty()) {
    out << "chart";
    for (size_t i = 1; i <= points.front().coords.size(); ++i) out << ",coord_" << i;
    out << "\n";
  }
  for (const ChartPoint& p : points) {
    out << p.chart;
    for (double c : p.coords) out << "," << fmt(c);
    out << "\n";
  }
  return out.str();
}

std::string scatter_svg(const std::vector<ChartPoint>& cloud, const std::vector<ChartPoint>& border,
                        int axis1, int axis2) {
  auto project = [&](const ChartPoint& p) {
    std::vector<double> v = full_vector(p);
    return std::array<double, 2>{v[static_cast<size_t>(axis1)], v[static_cast<size_t>(axis2)]};
  };
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  auto scan = [&](const std::vector<ChartPoint>& points) {
    for (const ChartPoint& p : points) {
      auto [px, py] = project(p);
      lo_x = std::min(lo_x, px);
      hi_x = std::max(hi_x, px);
      lo_y = std::min(lo_y, py);
      hi_y = std::max(hi_y, py);
    }
  };
  scan(cloud);
  scan(border);
  if (lo_x > hi_x) lo_x = hi_x = 0;
  if (lo_y > hi_y) lo_y = hi_y = 0;
  double span_x = std::max(hi_x - lo_x, 1e-9), span_y = std::max(hi_y - lo_y, 1e-9);
  double margin = 0.05;
  lo_x -= margin * span_x;
  lo_y -= margin * span_y;
  span_x *= 1 + 2 * margin;
  span_y *= 1 + 2 * margin;

  const double size = 640.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 "
         "640 640\">\n";
  out << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  auto emit = [&](const std::vector<ChartPoint>& points, const char* color, double radius) {
    for (const ChartPoint& p : points) {
      auto [px, py] = project(p);
      double sx = (px - lo_x) / span_x * size;
      double sy = size - (py - lo_y) / span_y * size;
      out << "<circle cx=\"" << fmt(sx) << "\" cy=\"" << fmt(sy) << "\" r=\"" << radius
          << "\" fill=\"" << color << "\" fill-opacity=\"0.6\"/>\n";
    }
  };
  emit(cloud, "#1f77b4", 1.6);
  emit(border, "#d62728", 2.4);
  out << "</svg>\n";
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw engine_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw engine_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw engine_error("cannot move " + tmp + " into place");
}

}  // namespace sl2surf

namespace sl2surf {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

BoundaryPoint parse_boundary_arg(const std::string& text) {
  std::string body = strip(text);
  if (body == "inf" || body == "oo" || body == "infinity") return BoundaryPoint::infinity();
  return BoundaryPoint::finite(parse_rational(body));
}

InteriorPoint parse_interior_arg(const std::string& text) {
  std::string body = strip(text);
  if (body.empty()) throw parse_error("empty interior point");
  auto comma = body.find(',');
  if (comma != std::string::npos) {
    InteriorPoint z{parse_rational(strip(body.substr(0, comma))),
                    parse_rational(strip(body.substr(comma + 1)))};
    if (z.im <= 0) throw parse_error("interior point needs im > 0");
    return z;
  }
  if (body.back() != 'i') throw parse_error("interior point '" + body + "' has no imaginary part");
  body.pop_back();
  // split at the last top-level + or - (not the leading sign)
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;)
    if (body[i] == '+' || body[i] == '-') {
      if (body[i - 1] == '/' || body[i - 1] == '+' || body[i - 1] == '-') continue;
      split = i;
      break;
    }
  Rational re(0), im(1);
  if (split == std::string::npos) {
    std::string imag = strip(body);
    if (!imag.empty() && imag != "+" && imag != "-")
      im = parse_rational(imag);
    else if (imag == "-")
      im = -1;
  } else {
    re = parse_rational(strip(body.substr(0, split)));
    std::string imag = strip(body.substr(split));
    if (imag == "+") im = 1;
    else if (imag == "-") im = -1;
    else im = parse_rational(imag);
  }
  if (im <= 0) throw parse_error("interior point needs im > 0");
  return {re, im};
}

std::vector<Rational> parse_scalar_list(const std::string& text, int expected) {
  std::vector<Rational> out;
  if (strip(text).empty()) {
    out.assign(static_cast<size_t>(expected), Rational(1));
    return out;
  }
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(parse_rational(strip(token)));
  if (static_cast<int>(out.size()) != expected)
    throw parse_error("expected " + std::to_string(expected) + " scalars, got " +
                      std::to_string(out.size()));
  return out;
}

FactoredElement element_from_args(const RepDecomposition& rep, const std::string& elliptic_arg,
                                  const std::string& parabolic_arg,
                                  const std::string& hyperbolic_arg, const std::string& u_csv) {
  int chosen = (!elliptic_arg.empty()) + (!parabolic_arg.empty()) + (!hyperbolic_arg.empty());
  if (chosen != 1)
    throw parse_error("pick exactly one of --elliptic, --parabolic, --hyperbolic");
  std::vector<Rational> u = parse_scalar_list(u_csv, rep.block_count());

  if (!elliptic_arg.empty()) return make_elliptic(rep, u, parse_interior_arg(elliptic_arg));
  if (!parabolic_arg.empty()) return make_parabolic(rep, u, parse_boundary_arg(parabolic_arg));

  std::vector<std::string> tokens;
  std::istringstream in(hyperbolic_arg);
  std::string token;
  while (std::getline(in, token, ',')) tokens.push_back(strip(token));
  if (tokens.size() != 2 && tokens.size() != 2 + static_cast<size_t>(rep.block_count()))
    throw parse_error("--hyperbolic wants t1,t2 or t1,t2,a1,...,ap");
  BoundaryPoint t1 = parse_boundary_arg(tokens[0]);
  BoundaryPoint t2 = parse_boundary_arg(tokens[1]);
  std::vector<int> alphas;
  if (tokens.size() == 2) {
    for (int n : rep.dims) {
      if (n % 2 != 0)
        throw parse_error("odd block dimension: pass alphas explicitly in --hyperbolic");
      alphas.push_back(n / 2);
    }
  } else {
    for (size_t i = 2; i < tokens.size(); ++i) alphas.push_back(std::stoi(tokens[i]));
  }
  return make_hyperbolic(rep, u, t1, t2, alphas);
}

}  // namespace sl2surf
