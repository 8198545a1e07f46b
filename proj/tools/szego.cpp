// szego: command-line front end. Exit status 0 when every contract of the
// command holds, 1 on a contract failure, 2 on a configuration error.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "szego/embedding.hpp"
#include "szego/errors.hpp"
#include "szego/fourier.hpp"
#include "szego/geometry.hpp"
#include "szego/kernel.hpp"
#include "szego/parallel.hpp"
#include "szego/report.hpp"

using namespace szego;
using nlohmann::json;

namespace {

struct Common {
  std::string preset;
  std::string manifold_path;
  int n = 0;
  std::string weights;
  std::string point;
  int m = -1;
  std::string m_range;
  std::uint64_t seed = 1;
  std::size_t samples = 200000;
  unsigned threads = 0;
  std::string out;
  std::string measure;
  double tolerance = -1.0;
};

struct ContractFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      v.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("not an integer: '" + item + "'");
    }
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
  }
  return v;
}

// Entries are real numbers or re:im pairs.
cvec parse_point(const std::string& s) {
  std::vector<cdouble> z;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) z.emplace_back(std::stod(item), 0.0);
      else z.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw ConfigError("bad point coordinate: '" + item + "'");
    }
  }
  cvec v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) v[static_cast<Eigen::Index>(i)] = z[i];
  return v;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int a = std::stoi(s);
      return {a, a};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ConfigError("bad range '" + s + "', expected a..b");
  }
}

Manifold load_manifold(const Common& c) {
  if (!c.manifold_path.empty()) {
    std::ifstream in(c.manifold_path);
    if (!in) throw ConfigError("cannot open manifold file " + c.manifold_path);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("manifold file is not valid JSON: ") + e.what());
    }
    return Manifold::make(parse_manifold_description(doc));
  }
  const std::vector<int> w = parse_int_list(c.weights);
  if (c.preset == "example2") return make_example2();
  if (c.preset.empty() || c.preset == "sphere") {
    int n = c.n;
    if (n == 0) n = w.empty() ? 2 : static_cast<int>(w.size());
    return make_sphere(n, w);
  }
  throw ConfigError("unknown preset '" + c.preset + "' (expected sphere or example2)");
}

json common_config(const Common& c, const Manifold& M, const std::string& command) {
  json j;
  j["command"] = command;
  j["manifold"] = M.name();
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  if (!c.point.empty()) j["point"] = c.point;
  if (c.m >= 0) j["m"] = c.m;
  if (!c.m_range.empty()) j["m_range"] = c.m_range;
  if (!c.measure.empty()) j["measure"] = c.measure;
  if (c.tolerance >= 0.0) j["tolerance"] = c.tolerance;
  return j;
}

BasisOptions basis_options(const Common& c, const Manifold& M) {
  BasisOptions o;
  o.samples = c.samples;
  o.seed = c.seed;
  if (c.measure.empty()) o.measure = default_measure(M);
  else if (c.measure == "round") o.measure = Measure::Round;
  else if (c.measure == "compliant") o.measure = Measure::Compliant;
  else throw ConfigError("unknown measure '" + c.measure + "'");
  return o;
}

SurfacePoint surface_point(const Manifold& M, const std::string& text) {
  cvec z = parse_point(text);
  if (z.size() != M.n()) throw ConfigError("point has " + std::to_string(z.size()) + " coordinates, expected " +
                                           std::to_string(M.n()));
  try {
    return M.point(z);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("point is not on the manifold: ") + e.what());
  }
}

SurfacePoint default_point(const Manifold& M) {
  cvec d = cvec::Zero(M.n());
  d[0] = 1.0;
  return radial_project(M, d);
}

std::vector<int> levels_from(const Common& c, int fallback_lo, int fallback_hi) {
  if (!c.m_range.empty()) {
    const auto [a, b] = parse_range(c.m_range);
    if (a > b || a < 0) throw ConfigError("empty level range " + c.m_range);
    std::vector<int> v;
    for (int m = a; m <= b; ++m) v.push_back(m);
    return v;
  }
  if (c.m >= 0) return {c.m};
  std::vector<int> v;
  for (int m = fallback_lo; m <= fallback_hi; ++m) v.push_back(m);
  return v;
}

json point_json(const SurfacePoint& x) {
  json a = json::array();
  for (Eigen::Index j = 0; j < x.z.size(); ++j) a.push_back({x.z[j].real(), x.z[j].imag()});
  return a;
}

void emit(const Common& c, const std::string& name, const std::string& csv, const json& report, bool json_to_stdout) {
  if (!c.out.empty()) {
    if (!csv.empty()) write_output(c.out, name + ".csv", csv);
    write_output(c.out, name + ".json", report.dump(2) + "\n");
    return;
  }
  if (json_to_stdout) write_output("", name, report.dump(2));
  else write_output("", name, csv);
}

void require(bool ok, const std::string& contract) {
  if (!ok) throw ContractFailure(contract);
}

// ---- subcommands ----

void cmd_dims(const Common& c) {
  const Manifold M = load_manifold(c);
  CsvTable t({"m", "d_m"});
  json rows = json::array();
  bool consistent = true;
  for (int m : levels_from(c, 0, 10)) {
    const long long d = count_multiindices(M.weights(), m);
    if (d <= 20000) consistent &= static_cast<long long>(enumerate_multiindices(M.weights(), m).size()) == d;
    t.row({std::to_string(m), std::to_string(d)});
    rows.push_back({{"m", m}, {"d_m", d}});
  }
  json rep = report_header(common_config(c, M, "dims"), M);
  rep["rows"] = rows;
  rep["contracts"] = {{"enumeration_matches_count", consistent}};
  emit(c, "dims", t.str(), rep, false);
  require(consistent, "enumeration_matches_count");
}

void cmd_norms(const Common& c) {
  const Manifold M = load_manifold(c);
  if (!M.is_sphere()) throw ConfigError("norms: exact norms exist only for sphere manifolds");
  CsvTable t({"m", "alpha", "rational", "pi_power", "value"});
  json rows = json::array();
  for (int m : levels_from(c, 0, 4)) {
    for (const auto& a : enumerate_multiindices(M.weights(), m)) {
      const ExactNorm e = sphere_monomial_norm_sq(a, M.n());
      std::string alpha;
      for (std::size_t j = 0; j < a.exponents.size(); ++j) alpha += (j ? " " : "") + std::to_string(a.exponents[j]);
      t.row({std::to_string(m), alpha, e.rational_part.str(), std::to_string(e.pi_power), format_double(e.value())});
      rows.push_back({{"m", m}, {"alpha", a.exponents}, {"rational", e.rational_part.str()},
                      {"pi_power", e.pi_power}, {"value", e.value()}});
    }
  }
  json rep = report_header(common_config(c, M, "norms"), M);
  rep["rows"] = rows;
  emit(c, "norms", t.str(), rep, false);
}

void cmd_kernel(const Common& c, const std::string& point2) {
  const Manifold M = load_manifold(c);
  const SurfacePoint x = c.point.empty() ? default_point(M) : surface_point(M, c.point);
  const SurfacePoint y = point2.empty() ? x : surface_point(M, point2);
  BasisFamily family(M, basis_options(c, M));
  CsvTable t({"m", "re", "im", "measure"});
  json rows = json::array();
  bool closed_ok = true;
  const double tol = c.tolerance >= 0.0 ? c.tolerance : 1e-10;
  for (int m : levels_from(c, 0, 10)) {
    const FourierBasis& B = family.at(m);
    const cdouble v = szego_kernel(B, x, y).value;
    t.row({std::to_string(m), format_double(v.real()), format_double(v.imag()), to_string(B.measure)});
    json r = {{"m", m}, {"re", v.real()}, {"im", v.imag()}};
    if (M.is_standard_sphere() && point2.empty()) {
      const double cf = sphere_diagonal_closed_form(M.n(), m);
      r["closed_form"] = cf;
      closed_ok &= std::abs(v.real() - cf) <= tol * cf;
    }
    rows.push_back(r);
  }
  json cfg = common_config(c, M, "kernel");
  if (!point2.empty()) cfg["point2"] = point2;
  json rep = report_header(cfg, M);
  rep["rows"] = rows;
  rep["contracts"] = {{"closed_form_diagonal", closed_ok}};
  emit(c, "kernel", t.str(), rep, false);
  require(closed_ok, "closed_form_diagonal");
}

void cmd_fit(const Common& c, bool with_stderr) {
  const Manifold M = load_manifold(c);
  const SurfacePoint x = c.point.empty() ? default_point(M) : surface_point(M, c.point);
  BasisFamily family(M, basis_options(c, M));
  const auto lv = levels_from(c, 20, 60);
  const ExpansionFit f = fit_expansion(family, x, lv.front(), lv.back(), with_stderr && !family.exact());
  const double tol = c.tolerance >= 0.0 ? c.tolerance : (family.exact() ? 0.01 : 0.10);
  CsvTable t({"m", "value", "stderr"});
  for (std::size_t i = 0; i < f.levels.size(); ++i)
    t.row({std::to_string(f.levels[i]), format_double(f.values[i]),
           i < f.stderrs.size() ? format_double(f.stderrs[i]) : ""});
  json rep = report_header(common_config(c, M, "fit"), M);
  rep["point"] = point_json(x);
  rep["stratum"] = f.stratum;
  rep["measure"] = f.measure;
  rep["levels"] = f.levels;
  rep["values"] = f.values;
  rep["stderrs"] = f.stderrs;
  rep["c_lead"] = f.c_lead;
  rep["c_next"] = f.c_next;
  rep["det_levi"] = f.det_levi;
  rep["predicted"] = f.predicted;
  rep["relative_error"] = f.relative_error;
  rep["rms_residual"] = f.rms_residual;
  rep["tolerance"] = tol;
  const bool ok = f.relative_error <= tol;
  rep["contracts"] = {{"leading_coefficient", ok}};
  emit(c, "fit", t.str(), rep, false);
  require(ok, "leading_coefficient (fitted " + format_double(f.c_lead) + ", predicted " +
                  format_double(f.predicted) + ")");
}

void cmd_vanish(const Common& c) {
  const Manifold M = load_manifold(c);
  if (c.point.empty()) throw ConfigError("vanish needs --point on a singular stratum");
  const SurfacePoint x0 = surface_point(M, c.point);
  const int k = stratum_order(M, x0);
  if (k == 1) throw ConfigError("vanish: the point is regular (stratum order 1)");
  BasisFamily family(M, basis_options(c, M));
  const double tol = c.tolerance >= 0.0 ? c.tolerance : 1e-12;
  std::vector<int> levels;
  if (c.m_range.empty() && c.m >= 0) {
    if (c.m % k == 0) throw ConfigError("vanish: k = " + std::to_string(k) + " divides m = " + std::to_string(c.m));
    levels.push_back(c.m);
  } else {
    for (int m : levels_from(c, 1, 60))
      if (m % k != 0) levels.push_back(m);
  }
  CsvTable t({"m", "max_abs", "scale", "passed"});
  json rows = json::array();
  bool ok = true;
  for (int m : levels) {
    const VanishingCertificate v = stratum_vanishing_check(M, family.at(m), x0, tol);
    ok &= v.passed;
    t.row({std::to_string(m), format_double(v.max_abs), format_double(v.scale), v.passed ? "1" : "0"});
    rows.push_back({{"m", m}, {"max_abs", v.max_abs}, {"scale", v.scale}, {"passed", v.passed}});
  }
  json rep = report_header(common_config(c, M, "vanish"), M);
  rep["stratum"] = k;
  rep["tolerance"] = tol;
  rep["certificates"] = rows;
  rep["contracts"] = {{"stratum_vanishing", ok}};
  emit(c, "vanish", t.str(), rep, true);
  require(ok, "stratum_vanishing");
}

void cmd_ratio(const Common& c, const std::string& radii_text, std::size_t count, double sigma, double imag_bound) {
  const Manifold M = load_manifold(c);
  if (c.point.empty()) throw ConfigError("ratio needs --point");
  const SurfacePoint x0 = surface_point(M, c.point);
  BasisFamily family(M, basis_options(c, M));
  const auto lv = levels_from(c, 1, 60);
  const std::vector<double> radii = parse_double_list(radii_text);
  const RatioReport r = ratio_report(family, x0, lv.front(), lv.back(), radii, count, c.seed, sigma, imag_bound);
  CsvTable t({"m", "radius", "max_one_minus_R", "max_abs_I", "undefined", "passed"});
  json rows = json::array();
  for (const auto& row : r.rows) {
    t.row({std::to_string(row.m), format_double(row.radius), format_double(row.max_one_minus_R),
           format_double(row.max_abs_I), std::to_string(row.undefined), row.passed ? "1" : "0"});
    rows.push_back({{"m", row.m}, {"radius", row.radius}, {"max_one_minus_R", row.max_one_minus_R},
                    {"max_abs_I", row.max_abs_I}, {"undefined", row.undefined}, {"passed", row.passed}});
  }
  json cfg = common_config(c, M, "ratio");
  cfg["radii"] = radii;
  cfg["count"] = count;
  cfg["sigma"] = sigma;
  cfg["imag_bound"] = imag_bound;
  json rep = report_header(cfg, M);
  rep["stratum"] = r.stratum;
  rep["rows"] = rows;
  rep["first_pass"] = r.first_pass ? json{{"m", r.first_pass->first}, {"radius", r.first_pass->second}} : json();
  rep["contracts"] = {{"ratio_neighborhood", r.first_pass.has_value()}};
  emit(c, "ratio", t.str(), rep, false);
  require(r.first_pass.has_value(), "ratio_neighborhood");
}

void cmd_project(const Common& c, const std::string& function) {
  const Manifold M = load_manifold(c);
  if (function.empty()) throw ConfigError("project needs --function (JSON term list or a path to one)");
  json terms;
  try {
    std::ifstream in(function);
    if (in) in >> terms;
    else terms = json::parse(function);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad --function: ") + e.what());
  }
  const Polynomial u = parse_polynomial(M.n(), terms);
  const SurfacePoint x = c.point.empty() ? default_point(M) : surface_point(M, c.point);
  const auto lv = levels_from(c, 0, 4);
  int max_degree = 0;
  for (const auto& term : u.terms()) max_degree = std::max(max_degree, std::abs(Polynomial::orbit_degree(term, M.weights().values())));
  for (int m : lv) max_degree = std::max(max_degree, std::abs(m));
  const OrbitQuadrature Q = OrbitQuadrature::for_level(max_degree);
  const double tol = c.tolerance >= 0.0 ? c.tolerance : 1e-12;
  CsvTable t({"m", "re", "im", "exact_re", "exact_im"});
  json rows = json::array();
  bool ok = true;
  for (int m : lv) {
    const cdouble q = circle_average(M, u, x, m, Q);
    // The exact projection keeps the terms of orbit degree m.
    cdouble exact = 0.0, scale = 0.0;
    for (const auto& term : u.terms()) {
      const cdouble v = Polynomial(M.n(), {term}).eval(x.z);
      scale += std::abs(v);
      if (Polynomial::orbit_degree(term, M.weights().values()) == m) exact += v;
    }
    ok &= std::abs(q - exact) <= tol * std::max(1.0, scale.real());
    t.row({std::to_string(m), format_double(q.real()), format_double(q.imag()), format_double(exact.real()),
           format_double(exact.imag())});
    rows.push_back({{"m", m}, {"re", q.real()}, {"im", q.imag()}, {"exact_re", exact.real()}, {"exact_im", exact.imag()}});
  }
  json cfg = common_config(c, M, "project");
  cfg["function"] = terms;
  json rep = report_header(cfg, M);
  rep["nodes"] = Q.node_count();
  rep["rows"] = rows;
  rep["contracts"] = {{"projector_exact", ok}};
  emit(c, "project", t.str(), rep, false);
  require(ok, "projector_exact");
}

struct EmbedOptions {
  int m0 = -1;
  std::string extra;
  std::size_t pairs = 10000;
  std::size_t points = 100;
  double delta = 0.05;
  bool layout_only = false;
  bool no_successor = false;
  int search_max = 0;
};

void cmd_embed(const Common& c, const EmbedOptions& e) {
  const Manifold M = load_manifold(c);
  int m = c.m;
  if (m < 0) m = e.m0 >= 0 ? e.m0 + 1 : 4;
  const std::vector<int> extra = parse_int_list(e.extra);
  json cfg = common_config(c, M, "embed");
  cfg["m"] = m;
  cfg["m0"] = e.m0;
  cfg["extra_levels"] = extra;
  cfg["pairs"] = e.pairs;
  cfg["points"] = e.points;
  cfg["delta"] = e.delta;
  cfg["layout_only"] = e.layout_only;
  cfg["successor_blocks"] = !e.no_successor;
  json rep = report_header(cfg, M);
  json contracts;

  BasisFamily family(M, basis_options(c, M));
  if (e.search_max > 0) {
    const EmbeddingSearchResult s =
        search_embedding(family, m, e.search_max, extra, e.points, e.pairs, e.delta, c.seed);
    json tried = json::array();
    for (const auto& [mm, ok] : s.tried) tried.push_back({{"m", mm}, {"passed", ok}});
    rep["search"] = {{"tried", tried}, {"first_passing_m", s.m ? json(*s.m) : json()}};
    contracts["search"] = s.m.has_value();
    rep["contracts"] = contracts;
    emit(c, "embed", "", rep, true);
    require(s.m.has_value(), "search");
    return;
  }

  const EmbeddingLayout L = embedding_layout(M, m, extra, !e.no_successor);
  rep["levels"] = L.levels;
  rep["block_dims"] = L.dims;
  rep["N_m"] = L.N;
  rep["min_weight"] = L.min_weight;
  rep["warnings"] = L.warnings;
  if (e.m0 >= 0) contracts["min_weight"] = L.min_weight > e.m0;
  std::string csv;
  if (!e.layout_only) {
    const EmbeddingMap phi = build_embedding(family, m, extra, !e.no_successor);
    auto gen = std::mt19937_64(c.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const auto pts = stratified_samples(M, 200, c.seed + 17);
    double eq = 0.0;
    for (const auto& x : pts) {
      const EquivarianceResidual r = check_equivariance(M, phi, x, angle(gen));
      eq = std::max(eq, r.max_abs / r.scale);
    }
    rep["equivariance_residual"] = eq;
    contracts["equivariance"] = eq <= 1e-10;

    const ImmersionReport im = immersion_report(M, phi, e.points, c.seed);
    rep["immersion_floor"] = im.min_singular;
    rep["immersion_argmin"] = point_json(im.samples[im.argmin].x);
    rep["reeb_residual"] = im.max_reeb_residual;
    rep["immersion_failures"] = im.failures.size();
    contracts["immersion"] = im.passed();
    CsvTable t({"sample", "stratum", "sigma_min", "sigma_max"});
    for (std::size_t i = 0; i < im.samples.size(); ++i) {
      const auto& s = im.samples[i];
      t.row({std::to_string(i), std::to_string(s.stratum), format_double(s.singular_values.back()),
             format_double(s.singular_values.front())});
    }
    csv = t.str();

    const SeparationReport sep = separation_report(M, phi, e.pairs, e.delta, c.seed);
    rep["separation_floor"] = sep.separation_floor;
    rep["quotient_separation_floor"] = sep.quotient_separation_floor;
    rep["pairs_considered"] = sep.considered;
    json viol = json::array();
    for (const auto& v : sep.violations) {
      viol.push_back({{"kind", to_string(v.kind)}, {"x", point_json(v.x)}, {"y", point_json(v.y)},
                      {"stratum_x", v.stratum_x}, {"stratum_y", v.stratum_y},
                      {"ambient_distance", v.ambient_distance}, {"quotient_distance", v.quotient_distance},
                      {"image_distance", v.image_distance}, {"offending_levels", v.offending_levels}});
      if (viol.size() >= 50) break;
    }
    rep["violation_count"] = sep.violations.size();
    rep["violations"] = viol;
    contracts["separation"] = sep.passed();
  }
  rep["contracts"] = contracts;
  emit(c, "embed", csv, rep, true);
  for (const auto& [name, ok] : contracts.items()) require(ok.get<bool>(), name);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--preset", c.preset, "sphere or example2");
  sub->add_option("--manifold", c.manifold_path, "JSON manifold description");
  sub->add_option("--n", c.n, "complex dimension for the sphere preset");
  sub->add_option("--weights", c.weights, "comma-separated action weights");
  sub->add_option("--point", c.point, "comma-separated coordinates, complex ones as re:im");
  sub->add_option("--m", c.m, "level");
  sub->add_option("--m-range", c.m_range, "level range a..b");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--samples", c.samples, "Monte-Carlo quadrature size");
  sub->add_option("--threads", c.threads, "worker cap (0 = hardware)");
  sub->add_option("--out", c.out, "output directory (default: stdout)");
  sub->add_option("--measure", c.measure, "round or compliant");
  sub->add_option("--tolerance", c.tolerance, "override the contract tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Szegő kernel laboratory for circle-invariant CR hypersurfaces"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Common c;
  std::string point2, function, radii = "0.3,0.1,0.03";
  std::size_t ratio_count = 50;
  double sigma = 0.05, imag_bound = 0.01;
  bool fit_stderr = false;
  EmbedOptions eo;

  auto* dims = app.add_subcommand("dims", "dimension table (m, d_m)");
  auto* norms = app.add_subcommand("norms", "exact monomial norms on spheres");
  auto* kernel = app.add_subcommand("kernel", "S_m(x, y) values");
  auto* fit = app.add_subcommand("fit", "diagonal expansion fit");
  auto* vanish = app.add_subcommand("vanish", "stratum vanishing certificate");
  auto* ratio = app.add_subcommand("ratio", "consecutive-level ratio diagnostics");
  auto* project = app.add_subcommand("project", "Fourier projector values");
  auto* embed = app.add_subcommand("embed", "equivariant embedding certificate");
  for (auto* s : {dims, norms, kernel, fit, vanish, ratio, project, embed}) add_common(s, c);
  kernel->add_option("--point2", point2, "second point y (default: y = x)");
  fit->add_flag("--stderr", fit_stderr, "half-split standard errors for Monte-Carlo bases");
  ratio->add_option("--radii", radii, "comma-separated ball radii");
  ratio->add_option("--count", ratio_count, "points per ball");
  ratio->add_option("--sigma", sigma, "bound on |1 - R|");
  ratio->add_option("--imag-bound", imag_bound, "bound on |I|");
  project->add_option("--function", function, "JSON term list, inline or a file path");
  embed->add_option("--m0", eo.m0, "minimal-weight bound");
  embed->add_option("--extra-levels", eo.extra, "comma-separated extra levels");
  embed->add_option("--pairs", eo.pairs, "separation pairs");
  embed->add_option("--points", eo.points, "immersion samples");
  embed->add_option("--delta", eo.delta, "separation threshold");
  embed->add_flag("--layout-only", eo.layout_only, "report levels and weights without building bases");
  embed->add_flag("--no-successor", eo.no_successor, "drop the k(m+1) blocks");
  embed->add_option("--search", eo.search_max, "increase m up to this bound until certificates pass");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c.threads) set_thread_count(c.threads);
    if (*dims) cmd_dims(c);
    else if (*norms) cmd_norms(c);
    else if (*kernel) cmd_kernel(c, point2);
    else if (*fit) cmd_fit(c, fit_stderr);
    else if (*vanish) cmd_vanish(c);
    else if (*ratio) cmd_ratio(c, radii, ratio_count, sigma, imag_bound);
    else if (*project) cmd_project(c, function);
    else if (*embed) cmd_embed(c, eo);
  } catch (const ContractFailure& e) {
    std::cerr << "contract failed: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
