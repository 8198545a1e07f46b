// Orbit quadrature realizing the Fourier projectors Q_m pointwise, and checks
// of the eigenrelation T f = i m f.
#pragma once

#include <functional>

#include "szego/basis.hpp"

namespace szego {

/// Trapezoid rule on the circle with nodes θ_s = 2πs/M; integrates e^{ipθ}
/// exactly for |p| < M.
class OrbitQuadrature {
 public:
  explicit OrbitQuadrature(int node_count);
  /// 2·max_level + 8 nodes.
  static OrbitQuadrature for_level(int max_level);

  int node_count() const { return count_; }
  int exactness_degree() const { return count_ - 1; }
  double node(int s) const;

 private:
  int count_;
};

using PointFunction = std::function<cdouble(const cvec&)>;

/// (1/M) Σ_s u(e^{iθ_s}·x) e^{−imθ_s}: the level-m orbit Fourier coefficient of u at x.
cdouble circle_average(const Manifold& M, const PointFunction& u, const SurfacePoint& x, int m,
                       const OrbitQuadrature& Q);

/// Same with u a polynomial in (z, z̄).
cdouble circle_average(const Manifold& M, const Polynomial& u, const SurfacePoint& x, int m,
                       const OrbitQuadrature& Q);

/// T u = Σ i m_j (z_j ∂u/∂z_j − z̄_j ∂u/∂z̄_j) at x, for a polynomial u.
cdouble apply_T(const Manifold& M, const Polynomial& u, const SurfacePoint& x);

/// |∇f_j · T(x) − i m f_j(x)| using the holomorphic Jacobian.
double check_T_eigen(const Manifold& M, const FourierBasis& B, std::size_t j, const SurfacePoint& x);
/// Same with the derivative along T by central differences of step h.
double check_T_eigen_fd(const Manifold& M, const FourierBasis& B, std::size_t j, const SurfacePoint& x,
                        double h = 1e-4);

struct OrthogonalityReport {
  double max_abs = 0.0;          ///< max |(f|g)|
  double max_sigma_ratio = 0.0;  ///< max |(f|g)| / stderr; 0 when exact
  bool exact = false;
};

/// Inner products between level-m and level-m′ basis elements. Exact zeros on
/// spheres with the round measure; Monte-Carlo estimates otherwise.
OrthogonalityReport component_orthogonality(const Manifold& M, int m, int m_prime, const BasisOptions& opt);

}  // namespace szego
