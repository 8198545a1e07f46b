// Circle-invariant real hypersurfaces X = {ρ = 0} ⊂ ℂⁿ with a diagonal
// unitary action e^{iθ}·z = (e^{i m_1 θ} z_1, ..., e^{i m_n θ} z_n).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/polynomial.hpp"

namespace szego {

/// Positive integer weights of the action, normalized to gcd 1.
class WeightVector {
 public:
  WeightVector() = default;
  /// Divides out the gcd; the divisor is kept in divisor().
  explicit WeightVector(std::vector<int> raw);

  const std::vector<int>& values() const { return w_; }
  int operator[](std::size_t j) const { return w_[j]; }
  std::size_t size() const { return w_.size(); }
  int divisor() const { return divisor_; }
  bool all_ones() const;
  long long lcm() const;
  long long product() const;

 private:
  std::vector<int> w_;
  int divisor_ = 1;
};

enum class ManifoldKind { UnitSphere, Hypersurface };

struct ManifoldDescription {
  int n = 0;
  std::vector<int> weights;
  Polynomial rho;
  ManifoldKind kind = ManifoldKind::Hypersurface;
  double surface_tolerance = 1e-9;
  std::string name;
};

struct SurfacePoint {
  cvec z;
  double residual = 0.0;
};

class Manifold {
 public:
  /// Validates and builds. Throws ConfigError for a non-invariant or
  /// non-real ρ; gcd > 1 in the weights is divided out with a warning.
  static Manifold make(const ManifoldDescription& desc);

  int n() const { return n_; }
  const WeightVector& weights() const { return weights_; }
  const Polynomial& rho() const { return rho_; }
  ManifoldKind kind() const { return kind_; }
  double surface_tolerance() const { return tol_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool is_sphere() const { return kind_ == ManifoldKind::UnitSphere; }
  /// Unit sphere with all weights 1.
  bool is_standard_sphere() const { return is_sphere() && weights_.all_ones(); }

  double rho_at(const cvec& z) const { return rho_.eval(z).real(); }
  /// Wraps z as a SurfacePoint; throws PreconditionError when |ρ(z)| exceeds the tolerance.
  SurfacePoint point(const cvec& z) const;
  /// Wraps without the tolerance check.
  SurfacePoint point_unchecked(const cvec& z) const;

  /// Surface area of the unit sphere S^{2n-1}: 2πⁿ/(n−1)!.
  double sphere_area() const;

  std::uint64_t hash() const;
  nlohmann::json to_json() const;

 private:
  int n_ = 0;
  WeightVector weights_;
  Polynomial rho_;
  ManifoldKind kind_ = ManifoldKind::Hypersurface;
  double tol_ = 1e-9;
  std::string name_;
  std::vector<std::string> warnings_;
};

/// |z|² − 1 with the given weights.
Manifold make_sphere(int n, std::vector<int> weights = {});
/// |z₁|²+|z₂|²+|z₃|²+|z₁²+z₂|⁴+|z₂³+z₃|⁶−1 with weights (1,2,6).
Manifold make_example2();
/// "sphere" (optionally with n and weights) or "example2".
Manifold make_preset(const std::string& name, int n = 2, std::vector<int> weights = {});

/// Parses { "n", "weights", "rho": [{coeff, z_exponents, zbar_exponents}], "kind" }.
ManifoldDescription parse_manifold_description(const nlohmann::json& doc);
Polynomial parse_polynomial(int n, const nlohmann::json& terms);
nlohmann::json polynomial_to_json(const Polynomial& p);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace szego
