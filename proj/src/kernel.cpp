#include "szego/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "szego/errors.hpp"

namespace szego {

KernelEvaluation szego_kernel(const FourierBasis& B, const SurfacePoint& x, const SurfacePoint& y) {
  const cvec fx = eval_basis(B, x);
  const cvec fy = eval_basis(B, y);
  const std::size_t d = B.dim();
  std::vector<double> re(d), im(d);
  for (std::size_t j = 0; j < d; ++j) {
    const cdouble t = fx[static_cast<Eigen::Index>(j)] * std::conj(fy[static_cast<Eigen::Index>(j)]);
    re[j] = t.real();
    im[j] = t.imag();
  }
  KernelEvaluation k;
  k.level = B.level;
  k.value = cdouble(pairwise_sum(re.data(), d), pairwise_sum(im.data(), d));
  if (x.z == y.z) k.value = cdouble(k.value.real(), 0.0);
  k.x = x;
  k.y = y;
  return k;
}

double szego_diagonal(const FourierBasis& B, const SurfacePoint& x) {
  const cvec fx = eval_basis(B, x);
  std::vector<double> a(B.dim());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::norm(fx[static_cast<Eigen::Index>(j)]);
  return pairwise_sum(a.data(), a.size());
}

long long root_of_unity_sum(int k, int m) {
  if (k < 1) throw PreconditionError("root_of_unity_sum needs k >= 1");
  std::vector<long long> hits(static_cast<std::size_t>(k), 0);
  for (int s = 1; s <= k; ++s) {
    const long long r = ((static_cast<long long>(s - 1) * m) % k + k) % k;
    ++hits[static_cast<std::size_t>(r)];
  }
  if (hits[0] == k) return k;
  // The residues must fill the subgroup gℤ/kℤ, g = gcd(m, k), with equal
  // multiplicity; the sum is then g·(sum of all (k/g)-th roots of unity) = 0.
  const int g = std::gcd(((m % k) + k) % k, k);
  for (int r = 0; r < k; ++r) {
    const long long expect = (r % g == 0) ? g : 0;
    if (hits[static_cast<std::size_t>(r)] != expect) {
      throw NumericalError("root_of_unity_sum: residues are not uniformly distributed");
    }
  }
  return 0;
}

VanishingCertificate stratum_vanishing_check(const Manifold& M, const FourierBasis& B, const SurfacePoint& x0,
                                             double tolerance) {
  VanishingCertificate c;
  c.stratum = stratum_order(M, x0);
  c.level = B.level;
  if (c.stratum == 1) throw PreconditionError("stratum_vanishing_check: point is regular (k = 1)");
  if (B.level % c.stratum == 0) {
    throw PreconditionError("stratum_vanishing_check: k = " + std::to_string(c.stratum) +
                            " divides m = " + std::to_string(B.level));
  }
  const cvec f = eval_basis(B, x0);
  c.max_abs = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  const cmat C = B.coeff_matrix();
  c.scale = C.size() ? C.cwiseAbs().maxCoeff() : 1.0;
  c.passed = c.max_abs <= tolerance * std::max(c.scale, 1.0);
  return c;
}

double sphere_diagonal_closed_form(int n, int m) {
  // binom(m+n−1, n−1) · (n−1)! / (2πⁿ)
  double binom = 1.0;
  for (int i = 1; i <= n - 1; ++i) binom = binom * (m + i) / i;
  return binom * std::tgamma(static_cast<double>(n)) / (2.0 * std::pow(std::numbers::pi, n));
}

namespace {

QuadratureRule half_rule(const QuadratureRule& r, bool second) {
  QuadratureRule h;
  h.measure = r.measure;
  h.seed = r.seed;
  const std::size_t N = r.points.size();
  const std::size_t lo = second ? N / 2 : 0;
  const std::size_t hi = second ? N : N / 2;
  for (std::size_t i = lo; i < hi; ++i) {
    h.points.push_back(r.points[i]);
    h.weights.push_back(r.weights[i] * static_cast<double>(N) / static_cast<double>(hi - lo));
  }
  return h;
}

}  // namespace

ExpansionFit fit_expansion(BasisFamily& family, const SurfacePoint& x, int m_min, int m_max, bool estimate_stderr) {
  const Manifold& M = family.manifold();
  const int n = M.n();
  ExpansionFit fit;
  fit.x = x;
  fit.stratum = stratum_order(M, x);
  for (int m = std::max(m_min, 1); m <= m_max; ++m)
    if (m % fit.stratum == 0) fit.levels.push_back(m);
  if (fit.levels.size() < 4) {
    throw NumericalError("fit_expansion: fewer than 4 admissible levels in [" + std::to_string(m_min) + ", " +
                         std::to_string(m_max) + "] for stratum " + std::to_string(fit.stratum));
  }

  const QuadratureRule* rule = family.quadrature();
  std::optional<QuadratureRule> halves[2];
  if (estimate_stderr && rule) {
    halves[0] = half_rule(*rule, false);
    halves[1] = half_rule(*rule, true);
  }

  const Eigen::Index L = static_cast<Eigen::Index>(fit.levels.size());
  rmat A(L, 2);
  rvec b(L);
  for (Eigen::Index i = 0; i < L; ++i) {
    const int m = fit.levels[static_cast<std::size_t>(i)];
    const FourierBasis& B = family.at(m);
    fit.measure = to_string(B.measure);
    const double v = szego_diagonal(B, x);
    fit.values.push_back(v);
    A(i, 0) = std::pow(static_cast<double>(m), n - 1);
    A(i, 1) = std::pow(static_cast<double>(m), n - 2);
    b[i] = v;
    if (halves[0]) {
      BasisOptions o = family.options();
      o.measure = family.measure();
      double s[2];
      for (int h = 0; h < 2; ++h) {
        o.rule = &*halves[h];
        s[h] = szego_diagonal(make_basis(M, m, o), x);
      }
      fit.stderrs.push_back(0.5 * std::abs(s[0] - s[1]));
    }
  }
  // Column scaling keeps the normal equations well conditioned.
  const rvec colscale = A.colwise().norm().cwiseInverse();
  const rvec c = (A * colscale.asDiagonal()).colPivHouseholderQr().solve(b).cwiseProduct(colscale);
  fit.c_lead = c[0];
  fit.c_next = c[1];
  const rvec resid = A * c - b;
  fit.rms_residual = std::sqrt(resid.cwiseQuotient(b).squaredNorm() / static_cast<double>(L));

  fit.det_levi = std::abs(levi_form(M, x).determinant);
  fit.predicted = fit.stratum / (2.0 * std::numbers::pi) * std::pow(std::numbers::pi, -(n - 1)) * fit.det_levi;
  fit.relative_error = std::abs(fit.c_lead - fit.predicted) / fit.predicted;
  return fit;
}

DecayProfile decay_profile(BasisFamily& family, const SurfacePoint& x, const SurfacePoint& y,
                           const std::vector<int>& levels) {
  const Manifold& M = family.manifold();
  if (quotient_distance(M, x, y) <= 10.0 * M.surface_tolerance()) {
    throw PreconditionError("decay_profile: x and y lie on the same orbit");
  }
  DecayProfile p;
  for (int m : levels) {
    const FourierBasis& B = family.at(m);
    const double sxx = szego_diagonal(B, x);
    const double sxy = std::abs(szego_kernel(B, x, y).value);
    if (!(sxy > 1e-300) || !(sxx > 0.0)) {
      p.truncated = true;
      break;
    }
    p.levels.push_back(m);
    p.log_ratio.push_back(std::log(sxy / sxx));
  }
  const std::size_t L = p.levels.size();
  if (L < 2) throw NumericalError("decay_profile: fewer than two usable levels");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    mx += p.levels[i];
    my += p.log_ratio[i];
  }
  mx /= static_cast<double>(L);
  my /= static_cast<double>(L);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    const double dx = p.levels[i] - mx;
    const double dy = p.log_ratio[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  p.slope = sxy / sxx;
  p.intercept = my - p.slope * mx;
  p.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return p;
}

RatioValue ratio_diagnostic(BasisFamily& family, const SurfacePoint& x, const SurfacePoint& x0, int m) {
  const Manifold& M = family.manifold();
  if (m < 1) throw PreconditionError("ratio_diagnostic: multiplier must be positive");
  const int k = stratum_order(M, x0);
  const FourierBasis& Bm = family.at(k * m);
  const FourierBasis& Bm1 = family.at(k * (m + 1));
  const cdouble den = szego_kernel(Bm, x, x0).value;
  const double scale = std::sqrt(szego_diagonal(Bm, x) * szego_diagonal(Bm, x0));
  if (!(std::abs(den) > 1e-14 * scale)) {
    throw NumericalError("ratio_diagnostic: S_km(x, x0) vanishes; x is outside the ratio neighborhood");
  }
  const cdouble r = szego_kernel(Bm1, x, x0).value / den;
  return {r.real(), r.imag()};
}

RatioReport ratio_report(BasisFamily& family, const SurfacePoint& x0, int m_min, int m_max,
                         const std::vector<double>& radii, std::size_t count, std::uint64_t seed, double sigma,
                         double imag_bound) {
  const Manifold& M = family.manifold();
  RatioReport rep;
  rep.stratum = stratum_order(M, x0);
  rep.sigma = sigma;
  rep.imag_bound = imag_bound;
  std::vector<std::vector<SurfacePoint>> balls;
  for (std::size_t r = 0; r < radii.size(); ++r) balls.push_back(sample_ball(M, x0, radii[r], count, seed + r));
  for (int m = std::max(1, m_min); m <= m_max; ++m) {
    for (std::size_t r = 0; r < radii.size(); ++r) {
      RatioReport::Row row;
      row.m = m;
      row.radius = radii[r];
      for (const auto& x : balls[r]) {
        try {
          const RatioValue v = ratio_diagnostic(family, x, x0, m);
          row.max_one_minus_R = std::max(row.max_one_minus_R, std::abs(1.0 - v.R));
          row.max_abs_I = std::max(row.max_abs_I, std::abs(v.I));
        } catch (const NumericalError&) {
          ++row.undefined;
        }
      }
      row.passed = row.undefined == 0 && row.max_one_minus_R < sigma && row.max_abs_I < imag_bound;
      if (row.passed && !rep.first_pass) rep.first_pass = std::make_pair(m, radii[r]);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace szego
