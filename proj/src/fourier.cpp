#include "szego/fourier.hpp"

#include <cmath>
#include <numbers>

#include "szego/errors.hpp"

namespace szego {

OrbitQuadrature::OrbitQuadrature(int node_count) : count_(node_count) {
  if (node_count < 1) throw PreconditionError("orbit quadrature needs at least one node");
}

OrbitQuadrature OrbitQuadrature::for_level(int max_level) { return OrbitQuadrature(2 * std::abs(max_level) + 8); }

double OrbitQuadrature::node(int s) const { return 2.0 * std::numbers::pi * s / count_; }

cdouble circle_average(const Manifold& M, const PointFunction& u, const SurfacePoint& x, int m,
                       const OrbitQuadrature& Q) {
  const int count = Q.node_count();
  std::vector<double> re(static_cast<std::size_t>(count)), im(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    // e^{−imθ_s} from the exact residue of m·s mod M keeps the phases exact.
    const long long r = ((static_cast<long long>(m) * s) % count + count) % count;
    const cdouble phase = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / count);
    const cdouble v = u(act(M, Q.node(s), x.z)) * phase;
    re[static_cast<std::size_t>(s)] = v.real();
    im[static_cast<std::size_t>(s)] = v.imag();
  }
  return cdouble(pairwise_sum(re.data(), re.size()), pairwise_sum(im.data(), im.size())) /
         static_cast<double>(count);
}

cdouble circle_average(const Manifold& M, const Polynomial& u, const SurfacePoint& x, int m,
                       const OrbitQuadrature& Q) {
  return circle_average(M, [&](const cvec& z) { return u.eval(z); }, x, m, Q);
}

cdouble apply_T(const Manifold& M, const Polynomial& u, const SurfacePoint& x) {
  const cvec gz = u.dz(x.z);
  const cvec gzb = u.dzbar(x.z);
  cdouble s = 0.0;
  for (int j = 0; j < M.n(); ++j) {
    const double w = M.weights()[static_cast<std::size_t>(j)];
    s += cdouble(0.0, w) * (x.z[j] * gz[j] - std::conj(x.z[j]) * gzb[j]);
  }
  return s;
}

double check_T_eigen(const Manifold& M, const FourierBasis& B, std::size_t j, const SurfacePoint& x) {
  const cmat J = eval_basis_jacobian(B, x);
  const cvec f = eval_basis(B, x);
  const cvec T = reeb_vector(M, x);
  const cdouble Tf = (J.row(static_cast<Eigen::Index>(j)) * T)(0);
  return std::abs(Tf - cdouble(0.0, B.level) * f[static_cast<Eigen::Index>(j)]);
}

double check_T_eigen_fd(const Manifold& M, const FourierBasis& B, std::size_t j, const SurfacePoint& x,
                        double h) {
  const cvec T = reeb_vector(M, x);
  const Eigen::Index jj = static_cast<Eigen::Index>(j);
  const cdouble Tf = (B.eval(x.z + h * T)[jj] - B.eval(x.z - h * T)[jj]) / (2.0 * h);
  return std::abs(Tf - cdouble(0.0, B.level) * B.eval(x.z)[jj]);
}

OrthogonalityReport component_orthogonality(const Manifold& M, int m, int m_prime, const BasisOptions& opt) {
  if (m == m_prime) throw PreconditionError("component_orthogonality requires distinct levels");
  OrthogonalityReport rep;
  const Measure measure = M.is_standard_sphere() ? Measure::Round : opt.measure;
  if (M.is_sphere() && measure == Measure::Round) {
    // Distinct weighted degrees force distinct exponents; distinct monomials
    // are orthogonal under the torus-invariant round measure.
    rep.exact = true;
    return rep;
  }
  std::optional<QuadratureRule> own;
  const QuadratureRule* rule = opt.rule;
  if (!rule) {
    own = make_quadrature(M, measure, opt.samples, opt.seed);
    rule = &*own;
  }
  BasisOptions o = opt;
  o.rule = rule;
  o.measure = measure;
  const FourierBasis A = make_basis(M, m, o);
  const FourierBasis B = make_basis(M, m_prime, o);
  const std::size_t N = rule->points.size();
  const Eigen::Index da = static_cast<Eigen::Index>(A.dim());
  const Eigen::Index db = static_cast<Eigen::Index>(B.dim());
  if (da == 0 || db == 0) return rep;
  cmat sum = cmat::Zero(da, db);
  rmat sum2 = rmat::Zero(da, db);
  for (std::size_t i = 0; i < N; ++i) {
    const cvec fa = A.eval(rule->points[i].z);
    const cvec fb = B.eval(rule->points[i].z);
    const double w = rule->weights[i] * static_cast<double>(N);
    const cmat y = w * fa * fb.adjoint();
    sum += y;
    sum2 += y.cwiseAbs2();
  }
  const double dN = static_cast<double>(N);
  const cmat mean = sum / dN;
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index b = 0; b < db; ++b) {
      const double var = std::max(sum2(a, b) / dN - std::norm(mean(a, b)), 0.0) / (dN - 1.0);
      const double se = std::sqrt(var);
      const double v = std::abs(mean(a, b));
      rep.max_abs = std::max(rep.max_abs, v);
      if (se > 0.0) rep.max_sigma_ratio = std::max(rep.max_sigma_ratio, v / se);
    }
  }
  return rep;
}

}  // namespace szego
