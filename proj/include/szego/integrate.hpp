// Sampling and Monte-Carlo surface integration on X.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "szego/geometry.hpp"

namespace szego {

enum class SampleMethod { SphereUniform, ImplicitProjection };

/// Points of X with surface-measure quadrature weights; Σ weights estimates the area.
struct SampleSet {
  std::vector<SurfacePoint> points;
  std::vector<double> weights;
  std::uint64_t seed = 0;
  SampleMethod method = SampleMethod::SphereUniform;

  std::size_t size() const { return points.size(); }
};

/// Uniform points on S^{2n−1}, each weighted area/count.
SampleSet sample_sphere(int n, std::size_t count, std::uint64_t seed);

/// Radial projection of uniform directions onto a star-shaped X, weighted by
/// the angular Jacobian t^{2n−1}·|∇ρ| / |u·∇ρ| times area(S^{2n−1})/count.
SampleSet sample_hypersurface(const Manifold& M, std::size_t count, std::uint64_t seed);

/// sample_sphere for sphere manifolds, sample_hypersurface otherwise.
SampleSet sample_manifold(const Manifold& M, std::size_t count, std::uint64_t seed);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

struct ComplexEstimate {
  cdouble value{};
  double stderr_ = 0.0;
};

using Density = std::function<double(const SurfacePoint&)>;

/// Weighted mean with pairwise summation; stderr from the sample variance.
Estimate integrate_surface(const std::function<double(const SurfacePoint&)>& f, const SampleSet& S,
                           const Density& density = {});
ComplexEstimate integrate_surface_complex(const std::function<cdouble(const SurfacePoint&)>& f,
                                          const SampleSet& S, const Density& density = {});

/// Sum in a fixed binary tree order.
double pairwise_sum(const double* data, std::size_t count);

/// Point with support exactly `support_mask`, or nullopt when the ray root fails.
std::optional<SurfacePoint> sample_on_support(const Manifold& M, unsigned support_mask,
                                              std::mt19937_64& gen);

/// Stratified samples: 40% regular, 40% on singular strata (exact support
/// patterns with gcd > 1), 20% regular points within `near` of a singular stratum.
std::vector<SurfacePoint> stratified_samples(const Manifold& M, std::size_t count, std::uint64_t seed,
                                             double near = 0.05);

/// Uniform-ish points of X inside the ambient ball |x − center| < radius.
std::vector<SurfacePoint> sample_ball(const Manifold& M, const SurfacePoint& center, double radius,
                                      std::size_t count, std::uint64_t seed);

/// Binary cache keyed by (manifold hash, count, seed, method).
void save_samples(const std::string& path, const SampleSet& S, std::uint64_t manifold_hash);
std::optional<SampleSet> load_samples(const std::string& path, std::uint64_t manifold_hash,
                                      std::size_t count, std::uint64_t seed, SampleMethod method);

}  // namespace szego
