// Pointwise geometry of X: the action, the Reeb field T, strata, the
// holomorphic tangent space, the contact form, the Levi form and the volume
// density of the compliant metric.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "szego/manifold.hpp"

namespace szego {

inline constexpr double kDefaultZeroTolerance = 1e-9;
inline constexpr double kNearStratumTolerance = 1e-6;

SurfacePoint act(const Manifold& M, double theta, const SurfacePoint& x);
cvec act(const Manifold& M, double theta, const cvec& z);

/// Complex representation i·(m_j z_j) of the real generator T at x.
cvec reeb_vector(const Manifold& M, const SurfacePoint& x);

/// gcd of the weights on the support {j : |x_j| > zero_tolerance}.
int stratum_order(const Manifold& M, const SurfacePoint& x,
                  double zero_tolerance = kDefaultZeroTolerance);
/// True when some coordinate magnitude falls in (zero_tolerance, 1e-6).
bool near_stratum(const SurfacePoint& x, double zero_tolerance = kDefaultZeroTolerance);

struct StrataReport {
  std::vector<int> orders;       ///< sorted, confirmed by a point of X
  std::vector<int> unconfirmed;  ///< candidate gcds no sampled point realized
};

/// gcds of weight subsets realized by points of X with exactly that support.
StrataReport strata_orders(const Manifold& M, int samples = 16, std::uint64_t seed = 1);

/// Radial projection: the point t·u ∈ X with t > 0, for star-shaped X.
/// Throws NumericalError when the root is not bracketed in (0, t_max].
SurfacePoint radial_project(const Manifold& M, const cvec& direction, double t_max = 64.0);

/// Ambient real dot product Re⟨a, b⟩ of complex n-vectors viewed in ℝ^{2n}.
double real_dot(const cvec& a, const cvec& b);

/// Euclidean unit normal of X at x (complex representation of ∇ρ/|∇ρ|).
cvec unit_normal(const Manifold& M, const SurfacePoint& x);

/// Orthonormal basis (columns) of T^{1,0}_x X = ker ∂ρ(x).
cmat holomorphic_tangent_frame(const Manifold& M, const SurfacePoint& x);

/// Euclidean-orthonormal real frame of T_x X, 2n−1 columns in complex form.
cmat real_tangent_frame(const Manifold& M, const SurfacePoint& x);

/// c with ω₀ = c·Im(∂ρ) and ⟨ω₀, T⟩ = −1.
double contact_scale(const Manifold& M, const SurfacePoint& x);

/// ⟨ω₀, v⟩ for a complex vector v = Σ a_j ∂_{z_j} + Σ b_j ∂_{z̄_j}.
cdouble contact_pairing(const Manifold& M, const SurfacePoint& x, const cvec& a, const cvec& b);

struct LeviData {
  rvec eigenvalues;  ///< ascending
  double determinant = 0.0;
  double contact_scale = 0.0;
  double volume_density = 0.0;
  cmat matrix;  ///< Levi matrix in the holomorphic_tangent_frame basis
};

/// Levi form from the complex Hessian of ρ restricted to T^{1,0}, normalized
/// by the contact form and the rigid metric. Throws NumericalError on a
/// nonpositive eigenvalue.
LeviData levi_form(const Manifold& M, const SurfacePoint& x);

/// Levi matrix from the bracket definition (1/2i)⟨[U, V̄], ω₀⟩ with the frame
/// extended by projection onto ker ∂ρ and derivatives by central differences.
cmat levi_form_bracket(const Manifold& M, const SurfacePoint& x, double h = 1e-5);

/// dv_X / dS for the metric that is Euclidean on H = Re T^{1,0} and makes T
/// unit and orthogonal to H.
double volume_density(const Manifold& M, const SurfacePoint& x);

/// min over θ of |x − e^{iθ}·y|.
double quotient_distance(const Manifold& M, const SurfacePoint& x, const SurfacePoint& y,
                         int grid = 720, double theta_tol = 1e-10);

}  // namespace szego
