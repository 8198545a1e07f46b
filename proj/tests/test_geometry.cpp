#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "szego/errors.hpp"
#include "szego/geometry.hpp"
#include "szego/random.hpp"

using namespace szego;

namespace {

std::function<double(const cvec&)> rho_of(const Manifold& M) {
  return [&M](const cvec& z) { return M.rho_at(z); };
}

SurfacePoint random_point(const Manifold& M, std::mt19937_64& gen, unsigned mask = ~0u) {
  return radial_project(M, random_direction(gen, M.n(), mask));
}

}  // namespace

TEST_CASE("action and Reeb field") {
  const Manifold M = make_sphere(2, {1, 2});
  cvec z(2);
  z << 0.6, 0.8;
  const SurfacePoint x = M.point(z);
  const SurfacePoint y = act(M, std::numbers::pi / 2, x);
  CHECK(std::abs(y.z[0] - cdouble(0, 0.6)) < 1e-15);
  CHECK(std::abs(y.z[1] + 0.8) < 1e-15);
  // T is the θ-derivative of the action.
  const double h = 1e-6;
  const cvec fd = (act(M, h, x).z - act(M, -h, x).z) / (2 * h);
  CHECK((fd - reeb_vector(M, x)).norm() < 1e-9);
}

TEST_CASE("stratum orders") {
  const Manifold M = make_sphere(2, {1, 2});
  cvec a(2), b(2);
  a << 0.0, 1.0;
  b << 0.6, 0.8;
  CHECK(stratum_order(M, M.point(a)) == 2);
  CHECK(stratum_order(M, M.point(b)) == 1);
  const StrataReport r = strata_orders(M);
  CHECK(r.orders == std::vector<int>{1, 2});

  const Manifold E = make_example2();
  CHECK(strata_orders(E).orders == std::vector<int>{1, 2, 6});
  CHECK(strata_orders(make_sphere(3)).orders == std::vector<int>{1});

  // The defining identity of X_k: the action by 2π/k fixes the point.
  std::mt19937_64 gen(3);
  const SurfacePoint p = random_point(E, gen, 0b100);
  CHECK(stratum_order(E, p) == 6);
  CHECK((act(E, 2 * std::numbers::pi / 6, p).z - p.z).norm() < 1e-14);
  CHECK((act(E, 2 * std::numbers::pi / 12, p).z - p.z).norm() > 0.1);
}

TEST_CASE("near-stratum flag") {
  cvec z(2);
  z << 1e-8, 1.0;
  CHECK(near_stratum(SurfacePoint{z, 0.0}));
  z << 0.1, 0.99;
  CHECK_FALSE(near_stratum(SurfacePoint{z, 0.0}));
}

TEST_CASE("radial projection lands on the surface") {
  const Manifold E = make_example2();
  std::mt19937_64 gen(5);
  for (int i = 0; i < 50; ++i) {
    const SurfacePoint p = random_point(E, gen);
    CHECK(std::abs(E.rho_at(p.z)) < 1e-10);
  }
}

TEST_CASE("holomorphic tangent frame") {
  const Manifold E = make_example2();
  std::mt19937_64 gen(7);
  for (int i = 0; i < 10; ++i) {
    const SurfacePoint p = random_point(E, gen);
    const cmat U = holomorphic_tangent_frame(E, p);
    CHECK(U.cols() == 2);
    CHECK((U.adjoint() * U - cmat::Identity(2, 2)).norm() < 1e-12);
    const cvec g = E.rho().dz(p.z);
    CHECK((g.transpose() * U).norm() < 1e-12);
  }
}

TEST_CASE("Levi form on the standard sphere is the identity") {
  for (int n : {2, 3}) {
    const Manifold S = make_sphere(n);
    std::mt19937_64 gen(11);
    const SurfacePoint p = random_point(S, gen);
    const LeviData L = levi_form(S, p);
    for (Eigen::Index j = 0; j < L.eigenvalues.size(); ++j) CHECK(L.eigenvalues[j] == doctest::Approx(1.0));
    CHECK(L.determinant == doctest::Approx(1.0));
    CHECK(L.volume_density == doctest::Approx(1.0));
  }
}

TEST_CASE("Levi form on the (1,2) sphere at the singular point") {
  const Manifold M = make_sphere(2, {1, 2});
  cvec z(2);
  z << 0.0, 1.0;
  const SurfacePoint p = M.point(z);
  const LeviData L = levi_form(M, p);
  CHECK(L.determinant == doctest::Approx(0.5));
  CHECK(L.volume_density == doctest::Approx(0.5));
  // ⟨ω₀, T⟩ = −1 by construction.
  const cvec T = reeb_vector(M, p);
  const cdouble pair = contact_pairing(M, p, T, T.conjugate());
  CHECK(pair.real() == doctest::Approx(-1.0));
  CHECK(std::abs(pair.imag()) < 1e-14);
}

TEST_CASE("Levi form agrees with the finite-difference Hessian oracle") {
  for (const Manifold& M : {make_sphere(2, {1, 2}), make_example2(), make_sphere(3, {1, 2, 3})}) {
    std::mt19937_64 gen(13);
    for (int i = 0; i < 5; ++i) {
      const SurfacePoint p = random_point(M, gen);
      const LeviData L = levi_form(M, p);
      const Eigen::VectorXd ref = oracle::fd_levi_eigenvalues(rho_of(M), M.weights().values(), p.z);
      for (Eigen::Index j = 0; j < ref.size(); ++j) CHECK(L.eigenvalues[j] == doctest::Approx(ref[j]).epsilon(1e-5));
    }
  }
}

TEST_CASE("Levi form agrees with the bracket definition") {
  for (const Manifold& M : {make_sphere(2), make_sphere(2, {1, 2}), make_example2()}) {
    std::mt19937_64 gen(17);
    for (int i = 0; i < 5; ++i) {
      const SurfacePoint p = random_point(M, gen);
      const cmat Lh = levi_form(M, p).matrix;
      const cmat Lb = levi_form_bracket(M, p);
      CHECK((Lh - Lb).norm() < 1e-5 * std::max(1.0, Lh.norm()));
    }
  }
}

TEST_CASE("volume density against the Gram-determinant oracle") {
  for (const Manifold& M : {make_sphere(2), make_sphere(2, {1, 2}), make_example2()}) {
    std::mt19937_64 gen(19);
    for (int i = 0; i < 5; ++i) {
      const SurfacePoint p = random_point(M, gen);
      const double ref = oracle::gram_density(rho_of(M), M.weights().values(), p.z);
      CHECK(volume_density(M, p) == doctest::Approx(ref).epsilon(1e-6));
    }
  }
  // On a weighted sphere the density is 1/Σ m_j|z_j|².
  const Manifold M = make_sphere(2, {1, 2});
  cvec z(2);
  z << 0.6, 0.8;
  CHECK(volume_density(M, M.point(z)) == doctest::Approx(1.0 / (0.36 + 2 * 0.64)));
}

TEST_CASE("Levi form invariance under the action") {
  const Manifold E = make_example2();
  std::mt19937_64 gen(23);
  const SurfacePoint p = random_point(E, gen);
  const LeviData a = levi_form(E, p);
  const LeviData b = levi_form(E, act(E, 1.234, p));
  CHECK((a.eigenvalues - b.eigenvalues).norm() < 1e-12);
  CHECK(volume_density(E, p) == doctest::Approx(volume_density(E, act(E, 0.7, p))));
}

TEST_CASE("quotient distance") {
  const Manifold S = make_sphere(2);
  cvec a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  CHECK(quotient_distance(S, S.point(a), S.point(b)) == doctest::Approx(std::sqrt(2.0)));
  const Manifold M = make_sphere(2, {1, 2});
  std::mt19937_64 gen(29);
  const SurfacePoint p = random_point(M, gen);
  CHECK(quotient_distance(M, p, act(M, 2.5, p)) < 1e-9);

  // Dense brute-force minimum as an oracle.
  const SurfacePoint q = random_point(M, gen);
  double best = 1e9;
  for (int s = 0; s < 200000; ++s) {
    const double t = 2 * std::numbers::pi * s / 200000;
    best = std::min(best, (p.z - act(M, t, q).z).norm());
  }
  CHECK(quotient_distance(M, p, q) == doctest::Approx(best).epsilon(1e-6));
  CHECK(quotient_distance(M, p, q) <= best + 1e-12);
}
