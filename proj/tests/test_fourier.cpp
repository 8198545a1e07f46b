#include <doctest.h>

#include <random>

#include "szego/errors.hpp"
#include "szego/fourier.hpp"
#include "szego/random.hpp"

using namespace szego;

namespace {

Polynomial mono(int n, std::vector<int> a, std::vector<int> b) { return Polynomial(n, {Term{{1, 1}, a, b}}); }

}  // namespace

TEST_CASE("orbit quadrature exactness") {
  const OrbitQuadrature Q(16);
  CHECK(Q.exactness_degree() == 15);
  CHECK(OrbitQuadrature::for_level(10).node_count() == 28);
  CHECK_THROWS_AS(OrbitQuadrature(0), PreconditionError);
}

TEST_CASE("circle average picks pure components") {
  const Manifold M = make_sphere(2, {1, 2});
  std::mt19937_64 gen(1);
  const SurfacePoint x = radial_project(M, random_direction(gen, 2));
  const OrbitQuadrature Q = OrbitQuadrature::for_level(20);

  SUBCASE("holomorphic monomial") {
    const Polynomial u = mono(2, {1, 2}, {0, 0});  // weight 5
    CHECK(std::abs(circle_average(M, u, x, 5, Q) - u.eval(x.z)) < 1e-14);
    for (int m : {0, 1, 4, 6, -5}) CHECK(std::abs(circle_average(M, u, x, m, Q)) < 1e-14);
  }
  SUBCASE("|z1|^2 sits at degree zero") {
    const Polynomial u = mono(2, {1, 0}, {1, 0});
    CHECK(std::abs(circle_average(M, u, x, 0, Q) - u.eval(x.z)) < 1e-14);
    CHECK(std::abs(circle_average(M, u, x, 2, Q)) < 1e-14);
  }
  SUBCASE("mixed polynomial") {
    const Polynomial a = Polynomial::z(2, 0);
    const Polynomial b = mono(2, {0, 2}, {1, 0});  // z̄₁z₂², orbit degree 3
    const Polynomial u = a + b;
    CHECK(std::abs(circle_average(M, u, x, 3, Q) - b.eval(x.z)) < 1e-14);
    CHECK(std::abs(circle_average(M, u, x, 1, Q) - a.eval(x.z)) < 1e-14);
  }
  SUBCASE("pointwise functions") {
    const PointFunction f = [](const cvec& z) { return z[1] * z[1] * z[1]; };
    CHECK(std::abs(circle_average(M, f, x, 6, Q) - f(x.z)) < 1e-14);
  }
}

TEST_CASE("random monomials are reproduced or annihilated") {
  const Manifold E = make_example2();
  std::mt19937_64 gen(2);
  std::uniform_int_distribution<int> e(0, 3);
  const SurfacePoint x = radial_project(E, random_direction(gen, 3));
  for (int i = 0; i < 100; ++i) {
    std::vector<int> a{e(gen), e(gen), e(gen)}, b{e(gen), e(gen), e(gen)};
    const Term t{{1, 1}, a, b};
    const int p = Polynomial::orbit_degree(t, E.weights().values());
    const Polynomial u(3, {t});
    const int m = (i % 2) ? p : p + 1 + (i % 5);
    const OrbitQuadrature Q = OrbitQuadrature::for_level(std::max(std::abs(p), std::abs(m)));
    const cdouble got = circle_average(E, u, x, m, Q);
    const cdouble want = m == p ? u.eval(x.z) : cdouble(0.0);
    CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(u.eval(x.z))));
  }
}

TEST_CASE("Reeb eigenrelation") {
  const Manifold E = make_example2();
  BasisOptions o;
  o.samples = 20000;
  const FourierBasis B = make_basis(E, 8, o);
  std::mt19937_64 gen(3);
  const SurfacePoint x = radial_project(E, random_direction(gen, 3));
  for (std::size_t j = 0; j < B.dim(); ++j) {
    CHECK(check_T_eigen(E, B, j, x) < 1e-9);
    CHECK(check_T_eigen_fd(E, B, j, x) < 1e-5);
  }
  // Polynomials: T z̄^α = −i⟨α,w⟩ z̄^α.
  const Polynomial u = mono(3, {0, 0, 0}, {1, 1, 0});
  CHECK(std::abs(apply_T(E, u, x) - cdouble(0, -3) * u.eval(x.z)) < 1e-14);
  const Polynomial v = mono(3, {2, 0, 1}, {0, 0, 0});
  CHECK(std::abs(apply_T(E, v, x) - cdouble(0, 8) * v.eval(x.z)) < 1e-14);
}

TEST_CASE("components at different levels are orthogonal") {
  BasisOptions o;
  o.samples = 50000;
  const OrthogonalityReport r0 = component_orthogonality(make_sphere(2), 2, 3, o);
  CHECK(r0.exact);
  CHECK(r0.max_abs == 0.0);
  const OrthogonalityReport r = component_orthogonality(make_sphere(2, {1, 2}), 2, 3, o);
  CHECK_FALSE(r.exact);
  CHECK(r.max_sigma_ratio < 5.0);
  CHECK_THROWS_AS(component_orthogonality(make_sphere(2), 2, 2, o), PreconditionError);
}

TEST_CASE("Parseval on a finite span") {
  // For u = Σ c_j f_j with f an orthonormal level basis, Σ|c_j|² = ‖u‖².
  const Manifold S = make_sphere(2);
  const FourierBasis B = make_basis(S, 3, BasisOptions{Measure::Round});
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd;
  cvec c(static_cast<Eigen::Index>(B.dim()));
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = cdouble(nd(gen), nd(gen));
  const SampleSet Smp = sample_sphere(2, 200000, 6);
  const Estimate e = integrate_surface([&](const SurfacePoint& p) { return std::norm(c.dot(B.eval(p.z).conjugate())); }, Smp);
  CHECK(std::abs(e.value - c.squaredNorm()) < 5 * e.stderr_);
}
