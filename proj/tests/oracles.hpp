// Independent reference computations for the tests. None of these call the
// library routine they are used to check.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using cv = Eigen::VectorXcd;

// Counts α with Σ α_j w_j = m by nested trial of every exponent box.
inline long long brute_count(const std::vector<int>& w, int m) {
  long long count = 0;
  std::vector<int> a(w.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t j, int used) {
    if (j == w.size()) {
      if (used == m) ++count;
      return;
    }
    for (int e = 0; used + e * w[j] <= m; ++e) rec(j + 1, used + e * w[j]);
  };
  rec(0, 0);
  return count;
}

// ∫_{S^{2n−1}} |z^α|² dS in floating point via lgamma.
inline double sphere_norm_sq(const std::vector<int>& alpha) {
  const int n = static_cast<int>(alpha.size());
  double lg = std::log(2.0) + n * std::log(std::numbers::pi);
  int total = 0;
  for (int a : alpha) {
    lg += std::lgamma(a + 1.0);
    total += a;
  }
  lg -= std::lgamma(n + total);  // (n − 1 + |α|)!
  return std::exp(lg);
}

// Plain Monte-Carlo mean of f over the unit sphere, times the area; its own
// 32-bit engine and Box–Muller draws.
inline std::pair<double, double> mc_sphere(int n, const std::function<double(const cv&)>& f, int count,
                                           unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double area = 2.0 * std::pow(std::numbers::pi, n) / std::tgamma(n);
  double s = 0.0, s2 = 0.0;
  cv z(n);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = std::sqrt(-2.0 * std::log(1.0 - u(gen)));
      const double t = 2.0 * std::numbers::pi * u(gen);
      z[j] = cd(r * std::cos(t), r * std::sin(t));
    }
    z /= z.norm();
    const double v = f(z);
    s += v;
    s2 += v * v;
  }
  const double mean = s / count;
  const double var = (s2 / count - mean * mean) / (count - 1);
  return {area * mean, area * std::sqrt(var)};
}

inline Eigen::VectorXd to_real(const cv& z) {
  Eigen::VectorXd r(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    r[2 * j] = z[j].real();
    r[2 * j + 1] = z[j].imag();
  }
  return r;
}

inline cv to_complex(const Eigen::VectorXd& r) {
  cv z(r.size() / 2);
  for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = cd(r[2 * j], r[2 * j + 1]);
  return z;
}

// Real gradient of a real function of z by central differences.
inline Eigen::VectorXd fd_gradient(const std::function<double(const cv&)>& rho, const cv& z, double h = 1e-6) {
  const Eigen::VectorXd x = to_real(z);
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (rho(to_complex(a)) - rho(to_complex(b))) / (2 * h);
  }
  return g;
}

// Real Hessian by central differences.
inline Eigen::MatrixXd fd_hessian(const std::function<double(const cv&)>& rho, const cv& z, double h = 1e-4) {
  const Eigen::VectorXd x = to_real(z);
  const Eigen::Index d = x.size();
  Eigen::MatrixXd H(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) {
      auto at = [&](double si, double sk) {
        Eigen::VectorXd y = x;
        y[i] += si * h;
        y[k] += sk * h;
        return rho(to_complex(y));
      };
      H(i, k) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  }
  return H;
}

// Volume density of the metric that is Euclidean on H = T ∩ iT and makes the
// Reeb field unit and orthogonal to H, relative to the Euclidean surface
// measure, from Gram determinants over an arbitrary tangent basis.
inline double gram_density(const std::function<double(const cv&)>& rho, const std::vector<int>& w, const cv& z) {
  const Eigen::VectorXd g = fd_gradient(rho, z);
  const Eigen::Index d = g.size();
  // Tangent basis: kernel of gᵀ.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(g.transpose()), Eigen::ComputeFullV);
  const Eigen::MatrixXd E = svd.matrixV().rightCols(d - 1);
  // H: tangent vectors v with i·v also tangent.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d / 2; ++j) {
    J(2 * j + 1, 2 * j) = 1.0;
    J(2 * j, 2 * j + 1) = -1.0;
  }
  const Eigen::RowVectorXd gi = g.transpose() * J;
  Eigen::MatrixXd C(2, d);
  C.row(0) = g.transpose();
  C.row(1) = gi;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd2(C, Eigen::ComputeFullV);
  const Eigen::MatrixXd Hb = svd2.matrixV().rightCols(d - 2);
  cv Tc(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) Tc[j] = cd(0.0, w[static_cast<std::size_t>(j)]) * z[j];
  const Eigen::VectorXd T = to_real(Tc);
  // Coordinates of each tangent basis vector in (T, Hb).
  Eigen::MatrixXd A(d, d - 1);
  A.col(0) = T;
  A.rightCols(d - 2) = Hb;
  const Eigen::MatrixXd coords = A.colPivHouseholderQr().solve(E);
  // Compliant metric: Hb orthonormal (Euclidean), T unit, T ⊥ H.
  const Eigen::MatrixXd Gc = coords.transpose() * coords;
  const Eigen::MatrixXd Ge = E.transpose() * E;
  return std::sqrt(Gc.determinant() / Ge.determinant());
}

// Levi eigenvalues: complex Hessian (from the real FD Hessian) restricted to
// ker ∂ρ, divided by Re Σ ρ_{z_j} m_j z_j.
inline Eigen::VectorXd fd_levi_eigenvalues(const std::function<double(const cv&)>& rho, const std::vector<int>& w,
                                           const cv& z) {
  const Eigen::Index n = z.size();
  const Eigen::MatrixXd R = fd_hessian(rho, z);
  const Eigen::VectorXd g = fd_gradient(rho, z);
  Eigen::MatrixXcd Hc(n, n);
  cv dz(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    dz[j] = 0.5 * cd(g[2 * j], -g[2 * j + 1]);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double xx = R(2 * j, 2 * k), yy = R(2 * j + 1, 2 * k + 1);
      const double xy = R(2 * j, 2 * k + 1), yx = R(2 * j + 1, 2 * k);
      Hc(j, k) = 0.25 * cd(xx + yy, xy - yx);
    }
  }
  cd pair = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) pair += dz[j] * double(w[static_cast<std::size_t>(j)]) * z[j];
  // Orthonormal basis of {ξ : Σ ρ_{z_j} ξ_j = 0}.
  Eigen::MatrixXcd row(1, n);
  row.row(0) = dz.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(row, Eigen::ComputeFullV);
  const Eigen::MatrixXcd V = svd.matrixV().rightCols(n - 1);
  // ξ ↦ Σ H_jk ξ_j conj(ξ_k).
  const Eigen::MatrixXcd L = V.transpose() * Hc * V.conjugate() / pair.real();
  const Eigen::MatrixXcd Lh = 0.5 * (L + L.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Lh);
  return es.eigenvalues();
}

}  // namespace oracle
