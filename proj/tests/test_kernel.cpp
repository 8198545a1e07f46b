#include <doctest.h>

#include <numbers>
#include <random>

#include "szego/errors.hpp"
#include "szego/kernel.hpp"
#include "szego/random.hpp"

using namespace szego;

TEST_CASE("root-of-unity selector") {
  for (int k = 1; k <= 12; ++k) {
    for (int m = 0; m <= 50; ++m) {
      // Floating-point oracle of the same sum.
      cdouble s = 0.0;
      for (int j = 1; j <= k; ++j) s += std::polar(1.0, 2 * std::numbers::pi * (j - 1) * m / k);
      const long long exact = root_of_unity_sum(k, m);
      CHECK(exact == (m % k == 0 ? k : 0));
      CHECK(std::abs(s - static_cast<double>(exact)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(root_of_unity_sum(0, 1), PreconditionError);
}

TEST_CASE("sphere kernel matches the closed form") {
  const Manifold S = make_sphere(2);
  BasisFamily fam(S, BasisOptions{Measure::Round});
  std::mt19937_64 gen(1);
  const SurfacePoint x = radial_project(S, random_direction(gen, 2));
  const SurfacePoint y = radial_project(S, random_direction(gen, 2));
  for (int m : {0, 1, 5, 20}) {
    CHECK(szego_diagonal(fam.at(m), x) == doctest::Approx(sphere_diagonal_closed_form(2, m)).epsilon(1e-12));
    CHECK(sphere_diagonal_closed_form(2, m) == doctest::Approx((m + 1) / (2 * std::numbers::pi * std::numbers::pi)));
    // S_m(x,y) = (m+1)/(2π²)·⟨x,y⟩^m.
    const cdouble inner = x.z.dot(y.z);  // Σ conj(x_j) y_j
    const cdouble want = (m + 1) / (2 * std::numbers::pi * std::numbers::pi) * std::pow(std::conj(inner), m);
    CHECK(std::abs(szego_kernel(fam.at(m), x, y).value - want) < 1e-12);
  }
  CHECK(sphere_diagonal_closed_form(3, 4) == doctest::Approx(15.0 / (std::pow(std::numbers::pi, 3))));
}

TEST_CASE("kernel symmetry and reproducing property") {
  const Manifold M = make_sphere(2, {1, 2});
  BasisOptions o;
  o.samples = 30000;
  BasisFamily fam(M, o);
  std::mt19937_64 gen(2);
  const SurfacePoint x = radial_project(M, random_direction(gen, 2));
  const SurfacePoint y = radial_project(M, random_direction(gen, 2));
  const FourierBasis& B = fam.at(6);
  CHECK(std::abs(szego_kernel(B, x, y).value - std::conj(szego_kernel(B, y, x).value)) < 1e-14);
  CHECK(szego_kernel(B, x, x).value.imag() == 0.0);
  CHECK(szego_diagonal(B, x) > 0.0);
  // Equivariance: S_m(e^{iθ}x, y) = e^{imθ} S_m(x, y).
  const cdouble a = szego_kernel(B, act(M, 0.4, x), y).value;
  CHECK(std::abs(a - std::polar(1.0, 6 * 0.4) * szego_kernel(B, x, y).value) < 1e-13);
  // Reproducing property on the rule that defines the basis.
  const QuadratureRule* R = fam.quadrature();
  REQUIRE(R != nullptr);
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < R->points.size(); ++i)
    acc += R->weights[i] * szego_kernel(B, x, R->points[i]).value * szego_kernel(B, R->points[i], y).value;
  CHECK(std::abs(acc - szego_kernel(B, x, y).value) < 1e-10 * szego_diagonal(B, x));
}

TEST_CASE("stratum vanishing") {
  const Manifold M = make_sphere(2, {1, 2});
  BasisOptions o;
  o.samples = 20000;
  BasisFamily fam(M, o);
  cvec z(2);
  z << 0.0, 1.0;
  const SurfacePoint x0 = M.point(z);
  for (int m : {1, 3, 7, 11}) {
    const VanishingCertificate c = stratum_vanishing_check(M, fam.at(m), x0);
    CHECK(c.passed);
    CHECK(c.max_abs == 0.0);
  }
  CHECK(szego_diagonal(fam.at(4), x0) > 0.0);
  CHECK_THROWS_AS(stratum_vanishing_check(M, fam.at(4), x0), PreconditionError);
  cvec r(2);
  r << 0.6, 0.8;
  CHECK_THROWS_AS(stratum_vanishing_check(M, fam.at(3), M.point(r)), PreconditionError);
}

TEST_CASE("expansion fit on the round sphere") {
  const Manifold S = make_sphere(2);
  BasisFamily fam(S, BasisOptions{Measure::Round});
  cvec z(2);
  z << 0.6, 0.8;
  const ExpansionFit f = fit_expansion(fam, S.point(z), 20, 60);
  CHECK(f.c_lead == doctest::Approx(1 / (2 * std::numbers::pi * std::numbers::pi)).epsilon(1e-10));
  CHECK(f.relative_error < 1e-10);
  CHECK(f.stderrs.empty());
  CHECK_THROWS_AS(fit_expansion(fam, S.point(z), 20, 22), NumericalError);
}

TEST_CASE("expansion fit with half-split errors") {
  const Manifold M = make_sphere(2, {1, 2});
  BasisOptions o;
  o.samples = 20000;
  BasisFamily fam(M, o);
  cvec z(2);
  z << 0.0, 1.0;
  const ExpansionFit f = fit_expansion(fam, M.point(z), 10, 20, true);
  CHECK(f.stratum == 2);
  CHECK(f.levels == std::vector<int>{10, 12, 14, 16, 18, 20});
  CHECK(f.stderrs.size() == f.levels.size());
  CHECK(f.det_levi == doctest::Approx(0.5));
  CHECK(f.predicted == doctest::Approx(1 / (2 * std::numbers::pi * std::numbers::pi)));
}

TEST_CASE("off-diagonal decay on the sphere follows log|<x,y>|") {
  const Manifold S = make_sphere(2);
  BasisFamily fam(S, BasisOptions{Measure::Round});
  std::mt19937_64 gen(5);
  const SurfacePoint x = radial_project(S, random_direction(gen, 2));
  const SurfacePoint y = radial_project(S, random_direction(gen, 2));
  std::vector<int> levels;
  for (int m = 10; m <= 40; m += 2) levels.push_back(m);
  const DecayProfile p = decay_profile(fam, x, y, levels);
  CHECK(p.slope == doctest::Approx(std::log(std::abs(x.z.dot(y.z)))).epsilon(1e-9));
  CHECK(p.r_squared > 0.999);
  CHECK_THROWS_AS(decay_profile(fam, x, act(S, 1.0, x), levels), PreconditionError);
}

TEST_CASE("ratio diagnostic at the center and along the orbit") {
  const Manifold M = make_sphere(2, {1, 2});
  BasisOptions o;
  o.samples = 20000;
  BasisFamily fam(M, o);
  cvec z(2);
  z << 0.0, 1.0;
  const SurfacePoint x0 = M.point(z);
  // At x₀ itself the ratio is S_{k(m+1)}(x₀,x₀)/S_{km}(x₀,x₀), real.
  const RatioValue r = ratio_diagnostic(fam, x0, x0, 5);
  CHECK(std::abs(r.I) < 1e-14);
  CHECK(r.R == doctest::Approx(szego_diagonal(fam.at(12), x0) / szego_diagonal(fam.at(10), x0)));
  // Along the orbit the ratio picks up the phase e^{ikθ}.
  const double t = 0.01;
  const RatioValue s = ratio_diagnostic(fam, act(M, t, x0), x0, 5);
  CHECK(std::atan2(s.I, s.R) == doctest::Approx(2 * t).epsilon(1e-8));
  // m = 0 is not a multiplier.
  CHECK_THROWS_AS(ratio_diagnostic(fam, x0, x0, 0), PreconditionError);
}
