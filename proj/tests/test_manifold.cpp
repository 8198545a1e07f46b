#include <doctest.h>

#include <numbers>

#include <json.hpp>

#include "szego/errors.hpp"
#include "szego/manifold.hpp"

using namespace szego;

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("6/4") == Rational{3, 2});
  CHECK(Rational::parse("-2") == Rational{-2, 1});
  CHECK((Rational{1, 2} + Rational{1, 3}) == Rational{5, 6});
  CHECK((Rational{2, 3} * Rational{3, 4}) == Rational{1, 2});
  CHECK_THROWS_AS(Rational::parse("1/0"), ConfigError);
}

TEST_CASE("polynomial algebra and Wirtinger derivatives") {
  const int n = 2;
  const Polynomial z1 = Polynomial::z(n, 0), z2 = Polynomial::z(n, 1);
  const Polynomial p = (z1 * z1 + z2).pow(2);  // |.|² partner built below
  const Polynomial q = p * p.conj();
  CHECK(q.is_real());
  CHECK_FALSE(p.is_real());

  cvec z(2);
  z << cdouble(0.3, -0.2), cdouble(-0.1, 0.5);
  const cdouble w = z[0] * z[0] + z[1];
  CHECK(std::abs(p.eval(z) - w * w) < 1e-14);
  CHECK(std::abs(q.eval(z) - std::norm(w * w)) < 1e-14);

  // ∂/∂z̄ of a holomorphic polynomial is zero; ∂/∂z₁ by the chain rule.
  CHECK(p.dzbar(z).norm() < 1e-15);
  CHECK(std::abs(p.dz(z)[0] - 2.0 * w * 2.0 * z[0]) < 1e-14);

  // Mixed Hessian against central differences of ∂q/∂z̄_k along z_j.
  const cmat H = q.dz_dzbar(z);
  const double h = 1e-6;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      cvec a = z, b = z, c = z, d = z;
      a[j] += h;
      b[j] -= h;
      c[j] += cdouble(0, h);
      d[j] -= cdouble(0, h);
      // ∂/∂z_j = (∂_x − i∂_y)/2
      const cdouble dx = (q.dzbar(a)[k] - q.dzbar(b)[k]) / (2 * h);
      const cdouble dy = (q.dzbar(c)[k] - q.dzbar(d)[k]) / (2 * h);
      CHECK(std::abs(H(j, k) - 0.5 * (dx - cdouble(0, 1) * dy)) < 1e-7);
    }
  }
}

TEST_CASE("canonical form is order independent") {
  const Polynomial a = Polynomial::z(2, 0) + Polynomial::zbar(2, 1);
  const Polynomial b = Polynomial::zbar(2, 1) + Polynomial::z(2, 0);
  CHECK(a.canonical() == b.canonical());
  CHECK((a - b).terms().empty());
}

TEST_CASE("orbit degree of terms") {
  const Term t{{1, 1}, {2, 1}, {0, 1}};
  CHECK(Polynomial::orbit_degree(t, {1, 2}) == 2);
}

TEST_CASE("weight vector normalization") {
  const WeightVector w({2, 4, 12});
  CHECK(w.values() == std::vector<int>{1, 2, 6});
  CHECK(w.divisor() == 2);
  CHECK(w.lcm() == 6);
  CHECK(w.product() == 12);
}

TEST_CASE("presets") {
  const Manifold s = make_sphere(3);
  CHECK(s.is_standard_sphere());
  CHECK(s.sphere_area() == doctest::Approx(std::pow(std::numbers::pi, 3)));
  const Manifold e = make_example2();
  CHECK(e.n() == 3);
  CHECK(e.weights().values() == std::vector<int>{1, 2, 6});
  CHECK(e.rho().is_real());
  // ρ(0,0,t) = t² + t⁶ − 1 on the real z₃ axis.
  cvec z = cvec::Zero(3);
  z[2] = 0.8;
  CHECK(e.rho_at(z) == doctest::Approx(0.64 + std::pow(0.8, 6) - 1.0));
  CHECK(s.hash() != e.hash());
  CHECK(make_sphere(2, {1, 2}).hash() != make_sphere(2).hash());
}

TEST_CASE("manifold validation") {
  SUBCASE("non-invariant term is named") {
    nlohmann::json doc = {{"n", 2},
                          {"weights", {1, 2}},
                          {"rho",
                           {{{"coeff", "1"}, {"z_exponents", {1, 0}}, {"zbar_exponents", {1, 0}}},
                            {{"coeff", "1"}, {"z_exponents", {0, 1}}, {"zbar_exponents", {0, 1}}},
                            {{"coeff", "1"}, {"z_exponents", {1, 0}}, {"zbar_exponents", {0, 1}}},
                            {{"coeff", "1"}, {"z_exponents", {0, 1}}, {"zbar_exponents", {1, 0}}},
                            {{"coeff", "-1"}, {"z_exponents", {0, 0}}, {"zbar_exponents", {0, 0}}}}}};
    try {
      Manifold::make(parse_manifold_description(doc));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("invariant") != std::string::npos);
    }
  }
  SUBCASE("non-real rho") {
    nlohmann::json doc = {{"n", 2},
                          {"weights", {1, 1}},
                          {"rho", {{{"coeff", "1"}, {"z_exponents", {1, 0}}, {"zbar_exponents", {0, 1}}}}}};
    CHECK_THROWS_AS(Manifold::make(parse_manifold_description(doc)), ConfigError);
  }
  SUBCASE("gcd is divided out with a warning") {
    const Manifold M = make_sphere(2, {2, 4});
    CHECK(M.weights().values() == std::vector<int>{1, 2});
    CHECK_FALSE(M.warnings().empty());
  }
  SUBCASE("round trip through JSON") {
    const Manifold e = make_example2();
    const Manifold back = Manifold::make(parse_manifold_description(e.to_json()));
    CHECK(back.hash() == e.hash());
  }
  SUBCASE("off-surface points are rejected") {
    cvec z(2);
    z << 1.0, 1.0;
    CHECK_THROWS_AS(make_sphere(2).point(z), PreconditionError);
  }
}
