#include "szego/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "szego/errors.hpp"
#include "szego/random.hpp"

namespace szego {

cvec act(const Manifold& M, double theta, const cvec& z) {
  cvec out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    out[j] = std::polar(1.0, M.weights()[static_cast<std::size_t>(j)] * theta) * z[j];
  }
  return out;
}

SurfacePoint act(const Manifold& M, double theta, const SurfacePoint& x) {
  return M.point_unchecked(act(M, theta, x.z));
}

cvec reeb_vector(const Manifold& M, const SurfacePoint& x) {
  cvec t(x.z.size());
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    t[j] = cdouble(0.0, M.weights()[static_cast<std::size_t>(j)]) * x.z[j];
  }
  return t;
}

int stratum_order(const Manifold& M, const SurfacePoint& x, double zero_tolerance) {
  int g = 0;
  for (Eigen::Index j = 0; j < x.z.size(); ++j) {
    if (std::abs(x.z[j]) > zero_tolerance) g = std::gcd(g, M.weights()[static_cast<std::size_t>(j)]);
  }
  if (g == 0) throw PreconditionError("invalid point: every coordinate is below the zero tolerance");
  return g;
}

bool near_stratum(const SurfacePoint& x, double zero_tolerance) {
  for (Eigen::Index j = 0; j < x.z.size(); ++j) {
    const double a = std::abs(x.z[j]);
    if (a > zero_tolerance && a < kNearStratumTolerance) return true;
  }
  return false;
}

double real_dot(const cvec& a, const cvec& b) { return a.dot(b).real(); }

SurfacePoint radial_project(const Manifold& M, const cvec& direction, double t_max) {
  const cvec u = direction.normalized();
  auto f = [&](double t) { return M.rho_at(t * u); };
  auto df = [&](double t) { return 2.0 * (M.rho().dz(t * u).transpose() * u)(0).real(); };

  if (M.is_sphere()) return M.point_unchecked(u);

  double lo = 0.0;
  double hi = 1.0;
  if (!(f(lo) < 0.0)) throw NumericalError("radial projection: origin is not inside the manifold");
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > t_max) throw NumericalError("radial projection: root not bracketed in (0, t_max]");
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double ft = f(t);
    if (ft < 0.0) lo = t; else hi = t;
    const double d = df(t);
    double next = (d > 0.0) ? t - ft / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - t) <= 1e-12 * std::max(1.0, t) || hi - lo <= 1e-15;
    t = next;
    if (done) break;
  }
  return M.point_unchecked(t * u);
}

StrataReport strata_orders(const Manifold& M, int samples, std::uint64_t seed) {
  const int n = M.n();
  std::set<int> confirmed;
  std::set<int> candidates;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int g = 0;
    for (int j = 0; j < n; ++j)
      if ((mask >> j) & 1u) g = std::gcd(g, M.weights()[static_cast<std::size_t>(j)]);
    candidates.insert(g);
    if (confirmed.count(g)) continue;
    if (M.is_sphere()) {
      confirmed.insert(g);
      continue;
    }
    auto gen = stream_engine(seed, mask);
    for (int s = 0; s < samples; ++s) {
      try {
        const SurfacePoint p = radial_project(M, random_direction(gen, n, mask));
        if (p.residual > M.surface_tolerance()) continue;
        bool exact = true;
        for (int j = 0; j < n; ++j) {
          const bool on = std::abs(p.z[j]) > kDefaultZeroTolerance;
          if (on != (((mask >> j) & 1u) != 0)) exact = false;
        }
        if (exact) {
          confirmed.insert(g);
          break;
        }
      } catch (const NumericalError&) {
      }
    }
  }
  StrataReport r;
  r.orders.assign(confirmed.begin(), confirmed.end());
  for (int g : candidates)
    if (!confirmed.count(g)) r.unconfirmed.push_back(g);
  return r;
}

cvec unit_normal(const Manifold& M, const SurfacePoint& x) {
  const cvec grad = M.rho().dz(x.z).conjugate();
  const double nrm = grad.norm();
  if (!(nrm > 1e-12)) throw NumericalError("singular point: d(rho) vanishes");
  return grad / nrm;
}

cmat holomorphic_tangent_frame(const Manifold& M, const SurfacePoint& x) {
  const cvec g = M.rho().dz(x.z);
  if (!(g.norm() > 1e-12)) throw NumericalError("singular point: d(rho) vanishes");
  // ker ∂ρ = Hermitian orthogonal complement of conj(g).
  const cmat q = Eigen::HouseholderQR<cmat>(cmat(g.conjugate())).householderQ();
  return q.rightCols(M.n() - 1);
}

cmat real_tangent_frame(const Manifold& M, const SurfacePoint& x) {
  const int n = M.n();
  const cvec nu = unit_normal(M, x);
  rmat col(2 * n, 1);
  col.topRows(n) = nu.real();
  col.bottomRows(n) = nu.imag();
  const rmat q = Eigen::HouseholderQR<rmat>(col).householderQ();
  cmat frame(n, 2 * n - 1);
  for (int c = 0; c < 2 * n - 1; ++c) {
    for (int j = 0; j < n; ++j) frame(j, c) = cdouble(q(j, c + 1), q(n + j, c + 1));
  }
  return frame;
}

double contact_scale(const Manifold& M, const SurfacePoint& x) {
  // ⟨Im ∂ρ, T⟩ = Im(Σ ρ_{z_j} i m_j z_j) = Re(Σ ρ_{z_j} m_j z_j).
  const cvec g = M.rho().dz(x.z);
  double s = 0.0;
  for (int j = 0; j < M.n(); ++j) s += (g[j] * static_cast<double>(M.weights()[static_cast<std::size_t>(j)]) * x.z[j]).real();
  if (std::abs(s) < 1e-14) throw NumericalError("action is not transversal at this point");
  return -1.0 / s;
}

cdouble contact_pairing(const Manifold& M, const SurfacePoint& x, const cvec& a, const cvec& b) {
  const cvec gz = M.rho().dz(x.z);
  const cvec gzb = M.rho().dzbar(x.z);
  const cdouble d = (gz.transpose() * a)(0) - (gzb.transpose() * b)(0);
  return contact_scale(M, x) * d / cdouble(0.0, 2.0);
}

double volume_density(const Manifold& M, const SurfacePoint& x) {
  const int n = M.n();
  const cmat U = holomorphic_tangent_frame(M, x);
  std::vector<cvec> frame;
  for (int a = 0; a < n - 1; ++a) {
    frame.push_back(U.col(a));
    frame.push_back(cdouble(0.0, 1.0) * U.col(a));
  }
  frame.push_back(reeb_vector(M, x));
  const int k = static_cast<int>(frame.size());
  rmat G(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) G(i, j) = real_dot(frame[i], frame[j]);
  // The frame is orthonormal for the compliant metric, so its compliant volume is 1.
  return 1.0 / std::sqrt(G.determinant());
}

double quotient_distance(const Manifold& M, const SurfacePoint& x, const SurfacePoint& y, int grid,
                         double theta_tol) {
  const double two_pi = 2.0 * std::numbers::pi;
  auto dist2 = [&](double th) { return (x.z - act(M, th, y.z)).squaredNorm(); };
  std::vector<double> vals(static_cast<std::size_t>(grid));
  for (int s = 0; s < grid; ++s) vals[static_cast<std::size_t>(s)] = dist2(two_pi * s / grid);

  std::vector<int> order(static_cast<std::size_t>(grid));
  std::iota(order.begin(), order.end(), 0);
  const int keep = std::min(grid, 3);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](int a, int b) { return vals[static_cast<std::size_t>(a)] < vals[static_cast<std::size_t>(b)]; });

  double best = vals[static_cast<std::size_t>(order[0])];
  const double h = two_pi / grid;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int r = 0; r < keep; ++r) {
    double a = two_pi * order[static_cast<std::size_t>(r)] / grid - h;
    double b = a + 2.0 * h;
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = dist2(c);
    double fd = dist2(d);
    while (b - a > theta_tol) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - golden * (b - a);
        fc = dist2(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + golden * (b - a);
        fd = dist2(d);
      }
    }
    best = std::min({best, fc, fd});
  }
  return std::sqrt(std::max(best, 0.0));
}

}  // namespace szego
