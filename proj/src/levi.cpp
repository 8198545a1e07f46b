#include <cmath>

#include "szego/errors.hpp"
#include "szego/geometry.hpp"

namespace szego {

LeviData levi_form(const Manifold& M, const SurfacePoint& x) {
  const cmat U = holomorphic_tangent_frame(M, x);
  const cmat H = M.rho().dz_dzbar(x.z);
  const double c = contact_scale(M, x);
  // ∂∂̄ρ(U_a, Ū_b) = U_aᵀ H conj(U_b). With ω₀ = c·Im ∂ρ the bracket definition
  // gives −(c/2)·∂∂̄ρ, and metric-orthonormal (1,0) vectors are √2 times
  // Euclidean-unit ones, hence the factor −c.
  cmat L = -c * (U.transpose() * H * U.conjugate());
  L = 0.5 * (L + L.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<cmat> eig(L);
  LeviData out;
  out.eigenvalues = eig.eigenvalues();
  out.determinant = out.eigenvalues.prod();
  out.contact_scale = c;
  out.volume_density = volume_density(M, x);
  out.matrix = L;
  if (!(out.eigenvalues.minCoeff() > 0.0)) {
    throw NumericalError("strong pseudoconvexity violated: Levi eigenvalue " +
                         std::to_string(out.eigenvalues.minCoeff()));
  }
  return out;
}

namespace {

// Projection of a fixed coefficient vector onto ker ∂ρ(y); extends a (1,0)
// vector at x to a local section of T^{1,0} on the level sets of ρ.
cvec project_to_kernel(const Manifold& M, const cvec& y, const cvec& u) {
  const cvec g = M.rho().dz(y);
  const cdouble gu = (g.transpose() * u)(0);
  return u - gu * g.conjugate() / g.squaredNorm();
}

}  // namespace

cmat levi_form_bracket(const Manifold& M, const SurfacePoint& x, double h) {
  const int n = M.n();
  const cmat U = holomorphic_tangent_frame(M, x);
  const cdouble I(0.0, 1.0);

  // Dzb[a](j, l) = ∂U_j/∂z̄_l for the extended frame field a.
  std::vector<cmat> Dzb(static_cast<std::size_t>(n - 1), cmat::Zero(n, n));
  for (int l = 0; l < n; ++l) {
    cvec ex = cvec::Zero(n);
    ex[l] = h;
    const cvec ey = I * ex;
    for (int a = 0; a < n - 1; ++a) {
      const cvec u = U.col(a);
      const cvec dx = (project_to_kernel(M, x.z + ex, u) - project_to_kernel(M, x.z - ex, u)) / (2.0 * h);
      const cvec dy = (project_to_kernel(M, x.z + ey, u) - project_to_kernel(M, x.z - ey, u)) / (2.0 * h);
      Dzb[static_cast<std::size_t>(a)].col(l) = 0.5 * (dx + I * dy);
    }
  }

  cmat L(n - 1, n - 1);
  for (int a = 0; a < n - 1; ++a) {
    for (int b = 0; b < n - 1; ++b) {
      const cvec Ua = U.col(a);
      const cvec Vbar = U.col(b).conjugate();
      // [U, V̄] = Σ_k U(V̄_k) ∂_{z̄_k} − Σ_j V̄(U_j) ∂_{z_j}.
      // ∂(conj V_k)/∂z_l = conj(∂V_k/∂z̄_l).
      const cvec zbar_part = Dzb[static_cast<std::size_t>(b)].conjugate() * Ua;
      const cvec z_part = -(Dzb[static_cast<std::size_t>(a)] * Vbar);
      const cdouble pairing = contact_pairing(M, x, z_part, zbar_part);
      // Metric-orthonormal vectors are √2·U, which doubles the form.
      L(a, b) = 2.0 * pairing / (2.0 * I);
    }
  }
  return L;
}

}  // namespace szego
