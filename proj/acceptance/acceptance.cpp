// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// numbers. Exit status is the number of failing criteria (capped at 1).
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "szego/embedding.hpp"
#include "szego/errors.hpp"
#include "szego/fourier.hpp"
#include "szego/kernel.hpp"
#include "szego/random.hpp"

using namespace szego;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) o.detail.pop_back();
  const bool in_time = dt <= budget_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("[%s] %2d %s: %s; %.2fs (budget %.0fs%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
              dt, budget_s, in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SurfacePoint on(const Manifold& M, std::vector<cdouble> z) {
  cvec v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t j = 0; j < z.size(); ++j) v[static_cast<Eigen::Index>(j)] = z[j];
  return M.point(v);
}

BasisOptions mc(std::size_t samples, std::uint64_t seed = 1) {
  BasisOptions o;
  o.measure = Measure::Compliant;
  o.samples = samples;
  o.seed = seed;
  return o;
}

Outcome leading_coefficient() {
  std::ostringstream d;
  bool ok = true;
  for (int n : {2, 3}) {
    const Manifold S = make_sphere(n);
    BasisFamily fam(S, BasisOptions{Measure::Round});
    cvec z = cvec::Zero(n);
    z[0] = 1.0;
    const ExpansionFit f = fit_expansion(fam, S.point(z), 20, 60);
    const double target = 1.0 / (2 * kPi) * std::pow(kPi, -(n - 1));
    const double rel = std::abs(f.c_lead - target) / target;
    // Closed form: S_m(x,x) = d_m / area(S^{2n−1}).
    double worst = 0.0;
    for (std::size_t i = 0; i < f.levels.size(); ++i) {
      const int m = f.levels[i];
      const double cf = n == 2 ? (m + 1) / (2 * kPi * kPi) : (m + 2) * (m + 1) / 2.0 / std::pow(kPi, 3);
      worst = std::max(worst, std::abs(f.values[i] - cf) / cf);
    }
    ok &= rel <= 0.01 && worst <= 1e-10;
    d << "S^" << 2 * n - 1 << " c=" << fmt("%.6g", f.c_lead) << " target=" << fmt("%.6g", target)
      << " rel=" << fmt("%.2e", rel) << " closed-form dev=" << fmt("%.1e", worst) << (n == 2 ? "; " : "");
  }
  return {ok, d.str()};
}

Outcome stratum_vanishing() {
  std::ostringstream d;
  bool ok = true;
  struct Case {
    Manifold M;
    std::vector<cdouble> x0;
    std::size_t samples;
  };
  // The law is exact for any basis of monomials, so a lean quadrature suffices on example II.
  std::vector<Case> cases;
  cases.push_back({make_sphere(2, {1, 2}), {0.0, 1.0}, 0});
  cases.push_back({make_example2(), {0.0, 0.0, 0.0}, 4000});
  {
    // (0,0,t) with t² + t⁶ = 1.
    cvec dir = cvec::Zero(3);
    dir[2] = 1.0;
    cases.back().x0[2] = radial_project(cases.back().M, dir).z[2];
  }
  for (auto& c : cases) {
    const SurfacePoint x0 = on(c.M, c.x0);
    const int k = stratum_order(c.M, x0);
    BasisOptions o = c.samples ? mc(c.samples) : BasisOptions{Measure::Round};
    BasisFamily fam(c.M, o);
    double worst = 0.0;
    int checked = 0;
    for (int m = 1; m <= 60; ++m) {
      if (m % k == 0) continue;
      const VanishingCertificate v = stratum_vanishing_check(c.M, fam.at(m), x0, 1e-12);
      ok &= v.passed;
      worst = std::max(worst, v.max_abs);
      ++checked;
    }
    d << c.M.name() << " k=" << k << " levels=" << checked << " max|f|=" << fmt("%.1e", worst) << "; ";
  }
  return {ok, d.str()};
}

Outcome root_of_unity() {
  int checked = 0;
  for (int k = 1; k <= 12; ++k)
    for (int m = 0; m <= 200; ++m) {
      if (root_of_unity_sum(k, m) != (m % k == 0 ? k : 0)) return {false, "mismatch at k=" + std::to_string(k)};
      ++checked;
    }
  return {true, std::to_string(checked) + " exact (k, m) pairs"};
}

Outcome factor_k() {
  const Manifold M = make_sphere(2, {1, 2});
  BasisFamily fam(M, mc(200000));
  const SurfacePoint x0 = on(M, {0.0, 1.0});
  const ExpansionFit f = fit_expansion(fam, x0, 20, 60);
  const double det = std::abs(levi_form(M, x0).determinant);
  const double target = 2.0 / (2 * kPi) / kPi * det;
  const double rel = std::abs(f.c_lead - target) / target;
  return {rel <= 0.10, "fitted=" + fmt("%.6g", f.c_lead) + " predicted=" + fmt("%.6g", target) +
                           " |det L|=" + fmt("%.4g", det) + " rel=" + fmt("%.2e", rel)};
}

struct Preset {
  Manifold M;
  int m;
  BasisOptions opt;
};

std::vector<Preset> presets() {
  std::vector<Preset> p;
  p.push_back({make_sphere(2), 2, BasisOptions{Measure::Round}});
  p.push_back({make_sphere(2, {1, 2}), 4, mc(50000)});
  p.push_back({make_example2(), 4, mc(50000)});
  return p;
}

std::string label(const Manifold& M) {
  if (M.name() == "sphere") {
    std::string s = "sphere(";
    for (std::size_t j = 0; j < M.weights().size(); ++j) s += (j ? "," : "") + std::to_string(M.weights()[j]);
    return s + ")";
  }
  return M.name();
}

Outcome equivariance() {
  std::ostringstream d;
  bool ok = true;
  for (auto& p : presets()) {
    BasisFamily fam(p.M, p.opt);
    const EmbeddingMap phi = build_embedding(fam, p.m);
    auto gen = stream_engine(5, 0);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    const auto pts = stratified_samples(p.M, 200, 5);
    double worst = 0.0;
    for (const auto& x : pts) {
      const EquivarianceResidual r = check_equivariance(p.M, phi, x, angle(gen));
      worst = std::max(worst, r.max_abs / r.scale);
    }
    ok &= worst <= 1e-10;
    d << label(p.M) << " " << fmt("%.1e", worst) << "; ";
  }
  return {ok, "max relative residual over 200 (x,θ): " + d.str()};
}

Outcome minimal_weight() {
  std::ostringstream d;
  bool ok = true;
  for (auto& p : presets()) {
    for (int m0 : {10, 100}) {
      const EmbeddingLayout L = embedding_layout(p.M, m0 + 1);
      ok &= L.min_weight > m0;
      d << label(p.M) << " m0=" << m0 << "→" << L.min_weight << " ";
    }
  }
  return {ok, d.str()};
}

Outcome immersion() {
  std::ostringstream d;
  bool ok = true;
  for (auto& p : presets()) {
    BasisFamily fam(p.M, p.opt);
    const EmbeddingMap phi = build_embedding(fam, p.m);
    std::vector<double> floors;
    std::size_t fails = 0;
    int worst_stratum = 1;
    for (std::uint64_t seed : {1, 2, 3}) {
      const ImmersionReport r = immersion_report(p.M, phi, 100, seed);
      floors.push_back(r.min_singular);
      fails += r.failures.size();
      ok &= r.max_reeb_residual <= 1e-8;
      if (!r.failures.empty()) worst_stratum = r.samples[r.argmin].stratum;
    }
    const double lo = *std::min_element(floors.begin(), floors.end());
    const double hi = *std::max_element(floors.begin(), floors.end());
    std::vector<double> sorted = floors;
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted[1];
    const bool stable = med > 0.0 && (hi - med) <= 0.2 * med && (med - lo) <= 0.2 * med;
    const bool positive = lo > 1e-6;
    ok &= stable && positive;
    d << label(p.M) << " m=" << p.m << " floors=" << fmt("%.3g", floors[0]) << "/" << fmt("%.3g", floors[1]) << "/"
      << fmt("%.3g", floors[2]);
    if (fails) d << " (" << fails << " rank-deficient samples, stratum " << worst_stratum << ")";
    d << "; ";
  }
  return {ok, d.str()};
}

Outcome separation() {
  std::ostringstream d;
  bool ok = true;
  for (auto& p : presets()) {
    BasisFamily fam(p.M, p.opt);
    const EmbeddingMap phi = build_embedding(fam, p.m);
    const SeparationReport r = separation_report(p.M, phi, 10000, 0.05, 7);
    ok &= r.passed();
    d << label(p.M) << " violations=" << r.violations.size() << "/" << r.considered
      << " floor=" << fmt("%.3g", r.separation_floor) << "; ";
  }
  // The half-turn pair on X₂ with only even-level blocks.
  const Manifold M = make_sphere(2, {1, 2});
  BasisFamily fam(M, mc(50000));
  const SurfacePoint p = on(M, {0.0, 1.0});
  const SurfacePoint q = act(M, kPi / 2, p);
  const PairResult without = compare_pair(M, build_embedding(fam, 4, {}, false), p, q);
  const PairResult with = compare_pair(M, build_embedding(fam, 4), p, q);
  const bool detected = without.image_distance < 1e-9 * without.scale && with.image_distance > 1e-9 * with.scale;
  ok &= detected;
  d << "half-turn pair: even blocks " << fmt("%.1e", without.image_distance) << " (violation "
    << (detected ? "detected" : "missed") << "), full blocks " << fmt("%.3g", with.image_distance);
  return {ok, d.str()};
}

Outcome decay() {
  std::ostringstream d;
  bool ok = true;
  {
    const Manifold S = make_sphere(2);
    BasisFamily fam(S, BasisOptions{Measure::Round});
    auto gen = stream_engine(11, 0);
    std::vector<int> levels;
    for (int m = 10; m <= 40; ++m) levels.push_back(m);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const SurfacePoint x = radial_project(S, random_direction(gen, 2));
      const SurfacePoint y = radial_project(S, random_direction(gen, 2));
      const DecayProfile pr = decay_profile(fam, x, y, levels);
      const double want = std::log(std::abs(x.z.dot(y.z)));
      worst = std::max(worst, std::abs(pr.slope - want) / std::abs(want));
    }
    ok &= worst <= 0.02;
    d << "S^3 worst slope rel.err=" << fmt("%.1e", worst) << "; ";
  }
  struct W {
    Manifold M;
    std::vector<int> levels;
  };
  std::vector<W> weighted;
  {
    std::vector<int> a, b;
    for (int m = 10; m <= 30; ++m) a.push_back(m);
    for (int m = 6; m <= 18; ++m) b.push_back(m);
    weighted.push_back({make_sphere(2, {1, 2}), a});
    weighted.push_back({make_example2(), b});
  }
  for (auto& w : weighted) {
    BasisFamily fam(w.M, mc(20000));
    auto gen = stream_engine(13, 0);
    const SurfacePoint x = radial_project(w.M, random_direction(gen, w.M.n()));
    const SurfacePoint y = radial_project(w.M, random_direction(gen, w.M.n()));
    const DecayProfile pr = decay_profile(fam, x, y, w.levels);
    ok &= pr.slope < 0.0 && pr.r_squared >= 0.99;
    d << label(w.M) << " slope=" << fmt("%.4g", pr.slope) << " R²=" << fmt("%.4f", pr.r_squared) << "; ";
  }
  return {ok, d.str()};
}

Outcome ratio() {
  const Manifold M = make_sphere(2, {1, 2});
  BasisFamily fam(M, mc(50000));
  const SurfacePoint x0 = on(M, {0.0, 1.0});
  const RatioReport r = ratio_report(fam, x0, 1, 60, {0.3, 0.1, 0.03}, 50, 3);
  double best_R = 1e9, best_I = 1e9;
  for (const auto& row : r.rows) {
    if (row.radius == 0.03) {
      best_R = std::min(best_R, row.max_one_minus_R);
      best_I = std::min(best_I, row.max_abs_I);
    }
  }
  std::string d;
  if (r.first_pass) d = "first pass at m=" + std::to_string(r.first_pass->first) + " radius=" + fmt("%.2g", r.first_pass->second);
  else d = "no (m, radius) passes; at radius 0.03 best max|1-R|=" + fmt("%.3g", best_R) + " best max|I|=" + fmt("%.3g", best_I);
  return {r.first_pass.has_value(), d};
}

Outcome projector() {
  const Manifold E = make_example2();
  auto gen = stream_engine(17, 0);
  std::uniform_int_distribution<int> e(0, 3);
  const SurfacePoint x = radial_project(E, random_direction(gen, 3));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Term t{{1, 1}, {e(gen), e(gen), e(gen)}, {e(gen), e(gen), e(gen)}};
    const int p = Polynomial::orbit_degree(t, E.weights().values());
    const Polynomial u(3, {t});
    const double scale = std::max(1.0, std::abs(u.eval(x.z)));
    for (int m = p - 3; m <= p + 3; ++m) {
      const OrbitQuadrature Q = OrbitQuadrature::for_level(std::max(std::abs(p), std::abs(m)));
      const cdouble want = m == p ? u.eval(x.z) : cdouble(0.0);
      worst = std::max(worst, std::abs(circle_average(E, u, x, m, Q) - want) / scale);
    }
  }
  // Parseval: for u = Σ c_j f_j on the round S³, the orbit projection of u
  // back onto the basis recovers the coefficients, and ‖u‖² = Σ|c_j|².
  const Manifold S = make_sphere(2);
  const FourierBasis B = make_basis(S, 4, BasisOptions{Measure::Round});
  cvec c(static_cast<Eigen::Index>(B.dim()));
  std::normal_distribution<double> nd;
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = cdouble(nd(gen), nd(gen));
  const SampleSet smp = sample_sphere(2, 200000, 19);
  const Estimate n2 = integrate_surface(
      [&](const SurfacePoint& q) { return std::norm((c.transpose() * B.eval(q.z))(0)); }, smp);
  const double parseval_sigma = std::abs(n2.value - c.squaredNorm()) / n2.stderr_;
  const bool ok = worst <= 1e-12 && parseval_sigma <= 5.0;
  return {ok, "100 monomials × 7 levels max err=" + fmt("%.1e", worst) + "; Parseval deviation " +
                  fmt("%.2f", parseval_sigma) + " stderr"};
}

Outcome dimensions() {
  std::ostringstream d;
  bool ok = true;
  for (const Manifold& M : {make_sphere(2), make_sphere(2, {1, 2}), make_example2()}) {
    const int n = M.n();
    const int m = 200;
    const long long dm = count_multiindices(M.weights(), m);
    const double ratio = static_cast<double>(dm) * std::tgamma(n) * static_cast<double>(M.weights().product()) /
                         std::pow(m, n - 1);
    ok &= ratio >= 0.9 && ratio <= 1.1;
    d << label(M) << " d_200=" << dm << " ratio=" << fmt("%.4f", ratio) << "; ";
  }
  return {ok, d.str()};
}

}  // namespace

int main() {
  std::printf("acceptance: %s\n", "szego");
  run(1, "leading coefficient on S^3 and S^5", 10, leading_coefficient);
  run(2, "stratum vanishing", 5, stratum_vanishing);
  run(3, "root-of-unity selector", 1, root_of_unity);
  run(4, "factor-k stretch on the (1,2) sphere", 60, factor_k);
  run(5, "embedding equivariance", 5, equivariance);
  run(6, "minimal-weight law", 1, minimal_weight);
  run(7, "immersion certificate", 60, immersion);
  run(8, "separation certificate", 120, separation);
  run(9, "off-diagonal decay", 10, decay);
  run(10, "ratio diagnostics", 30, ratio);
  run(11, "Fourier projector exactness", 5, projector);
  run(12, "dimension asymptotics", 1, dimensions);
  std::printf("acceptance: %d of 12 criteria failed\n", failures);
  return failures ? 1 : 0;
}
