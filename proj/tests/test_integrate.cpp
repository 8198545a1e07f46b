#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <numbers>

#include "oracles.hpp"
#include "szego/integrate.hpp"
#include "szego/parallel.hpp"

using namespace szego;

TEST_CASE("sphere sampling") {
  const SampleSet S = sample_sphere(2, 100000, 1);
  double wsum = 0.0;
  for (double w : S.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
  for (std::size_t i = 0; i < 100; ++i) CHECK(S.points[i].z.norm() == doctest::Approx(1.0));
  // Mean of |z₁|² is 1/n.
  const Estimate e = integrate_surface([](const SurfacePoint& p) { return std::norm(p.z[0]); }, S);
  const double area = 2 * std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(e.value / area - 0.5) < 5 * e.stderr_ / area);
}

TEST_CASE("sampling is deterministic and independent of thread count") {
  const SampleSet a = sample_sphere(3, 5000, 42);
  set_thread_count(1);
  const SampleSet b = sample_sphere(3, 5000, 42);
  set_thread_count(0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.points[i].z == b.points[i].z);
  const SampleSet c = sample_sphere(3, 5000, 43);
  CHECK(c.points[0].z != a.points[0].z);
}

TEST_CASE("monomial norms against the exact formula and an independent sampler") {
  const SampleSet S = sample_sphere(2, 200000, 7);
  for (const std::vector<int>& alpha : std::vector<std::vector<int>>{{1, 0}, {2, 1}, {3, 3}, {0, 4}}) {
    auto f = [&](const SurfacePoint& p) { return std::norm(monomial(p.z, alpha)); };
    const Estimate e = integrate_surface(f, S);
    const double exact = oracle::sphere_norm_sq(alpha);
    CHECK(std::abs(e.value - exact) < 5 * e.stderr_);
    const auto [mc, se] = oracle::mc_sphere(2, [&](const cvec& z) { return std::norm(monomial(z, alpha)); }, 100000, 9);
    CHECK(std::abs(e.value - mc) < 5 * std::hypot(e.stderr_, se));
  }
}

TEST_CASE("hypersurface backend reproduces the sphere") {
  const Manifold M = make_sphere(2);
  // Route the sphere through the generic projection sampler.
  ManifoldDescription d;
  d.n = 2;
  d.weights = {1, 1};
  d.rho = M.rho();
  d.kind = ManifoldKind::Hypersurface;
  const Manifold H = Manifold::make(d);
  const SampleSet A = sample_manifold(H, 100000, 3);
  CHECK(A.method == SampleMethod::ImplicitProjection);
  const double area = 2 * std::numbers::pi * std::numbers::pi;
  for (double w : {A.weights[0], A.weights[100]}) CHECK(w == doctest::Approx(area / 100000));
  const Estimate e = integrate_surface([](const SurfacePoint& p) { return std::norm(p.z[0] * p.z[1]); }, A);
  CHECK(std::abs(e.value - oracle::sphere_norm_sq({1, 1})) < 5 * e.stderr_);
}

TEST_CASE("example II area is stable across seeds") {
  const Manifold E = make_example2();
  std::vector<double> areas;
  for (std::uint64_t seed : {1, 2, 3}) {
    const SampleSet S = sample_manifold(E, 100000, seed);
    areas.push_back(integrate_surface([](const SurfacePoint&) { return 1.0; }, S).value);
  }
  for (double a : areas) CHECK(a == doctest::Approx(areas[0]).epsilon(0.01));
  // The domain sits inside the unit ball, so its boundary area is below the sphere's.
  CHECK(areas[0] < std::pow(std::numbers::pi, 3));
}

TEST_CASE("estimates are invariant under the action") {
  const Manifold E = make_example2();
  const SampleSet S = sample_manifold(E, 50000, 5);
  auto f = [](const SurfacePoint& p) { return std::norm(p.z[0]) + 3.0 * std::real(p.z[1] * std::conj(p.z[2])); };
  auto g = [&](const SurfacePoint& p) { return f(act(E, 0.9, p)); };
  const Estimate a = integrate_surface(f, S);
  const Estimate b = integrate_surface(g, S);
  CHECK(std::abs(a.value - b.value) < 5 * std::hypot(a.stderr_, b.stderr_));
}

TEST_CASE("standard error scales like count^(-1/2)") {
  auto f = [](const SurfacePoint& p) { return std::norm(p.z[0] * p.z[0]); };
  const Estimate a = integrate_surface(f, sample_sphere(2, 20000, 1));
  const Estimate b = integrate_surface(f, sample_sphere(2, 80000, 2));
  const double ratio = a.stderr_ / b.stderr_;
  CHECK(ratio > 1.8);
  CHECK(ratio < 2.2);
}

TEST_CASE("density hook") {
  const SampleSet S = sample_sphere(2, 1000, 1);
  auto f = [](const SurfacePoint& p) { return std::norm(p.z[1]); };
  const Estimate a = integrate_surface(f, S);
  const Estimate b = integrate_surface(f, S, [](const SurfacePoint&) { return 1.0; });
  CHECK(a.value == b.value);
}

TEST_CASE("pairwise summation") {
  std::vector<double> v(1000001, 0.1);
  CHECK(pairwise_sum(v.data(), v.size()) == doctest::Approx(100000.1).epsilon(1e-14));
  CHECK(pairwise_sum(v.data(), 0) == 0.0);
}

TEST_CASE("stratified samples follow the quotas") {
  const Manifold M = make_sphere(2, {1, 2});
  const auto pts = stratified_samples(M, 100, 3);
  REQUIRE(pts.size() == 100);
  int singular = 0, near = 0;
  for (const auto& p : pts) {
    if (stratum_order(M, p) == 2) ++singular;
    else if (std::abs(p.z[0]) < 0.05) ++near;
  }
  CHECK(singular == 40);
  CHECK(near >= 20);
  // The standard sphere has no singular strata: every sample is regular.
  for (const auto& p : stratified_samples(make_sphere(2), 20, 1)) CHECK(stratum_order(make_sphere(2), p) == 1);
}

TEST_CASE("ball samples stay in the ball and on the surface") {
  const Manifold M = make_sphere(2, {1, 2});
  cvec z(2);
  z << 0.0, 1.0;
  const SurfacePoint c = M.point(z);
  for (const auto& p : sample_ball(M, c, 0.1, 50, 1)) {
    CHECK((p.z - c.z).norm() < 0.1);
    CHECK(std::abs(M.rho_at(p.z)) < 1e-10);
  }
}

TEST_CASE("sample cache round trip") {
  const Manifold E = make_example2();
  const SampleSet S = sample_manifold(E, 300, 9);
  const std::string path = (std::filesystem::temp_directory_path() / "szego_samples_test.bin").string();
  save_samples(path, S, E.hash());
  const auto back = load_samples(path, E.hash(), 300, 9, S.method);
  REQUIRE(back.has_value());
  CHECK(back->weights == S.weights);
  CHECK(back->points[299].z == S.points[299].z);
  CHECK_FALSE(load_samples(path, E.hash(), 300, 10, S.method).has_value());
  std::remove(path.c_str());
}
