// The m-th Szegő kernel S_m(x, y) = Σ_j f_j(x) conj(f_j(y)) and the
// diagnostics built on it: stratum vanishing, the diagonal expansion fit,
// off-diagonal decay and the consecutive-level ratio.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szego/basis.hpp"

namespace szego {

struct KernelEvaluation {
  int level = 0;
  cdouble value{};
  SurfacePoint x;
  SurfacePoint y;
};

KernelEvaluation szego_kernel(const FourierBasis& B, const SurfacePoint& x, const SurfacePoint& y);
/// S_m(x, x), real and nonnegative by construction.
double szego_diagonal(const FourierBasis& B, const SurfacePoint& x);

/// Σ_{s=1}^{k} e^{2πi(s−1)m/k}, evaluated exactly by counting residues: the
/// residues (s−1)m mod k cover the subgroup gcd(m,k)ℤ/kℤ uniformly, so the
/// sum is k when k | m and a multiple of a full root-of-unity sum (= 0) otherwise.
long long root_of_unity_sum(int k, int m);

struct VanishingCertificate {
  int stratum = 1;
  int level = 0;
  double max_abs = 0.0;  ///< max_j |f_j(x₀)|
  double scale = 0.0;    ///< max |coefficient|, the natural size of basis values
  bool passed = false;
};

/// For x₀ ∈ X_k with k ∤ m every level-m CR function vanishes at x₀.
/// Throws PreconditionError when k = 1 or k | m.
VanishingCertificate stratum_vanishing_check(const Manifold& M, const FourierBasis& B, const SurfacePoint& x0,
                                             double tolerance = 1e-12);

struct ExpansionFit {
  SurfacePoint x;
  int stratum = 1;
  std::vector<int> levels;
  std::vector<double> values;   ///< S_m(x, x)
  std::vector<double> stderrs;  ///< half-split estimates when Monte-Carlo, else empty
  double c_lead = 0.0;          ///< coefficient of m^{n−1}
  double c_next = 0.0;          ///< coefficient of m^{n−2}
  double det_levi = 0.0;
  double predicted = 0.0;       ///< (k/2π)·π^{−(n−1)}·|det L_x|
  double relative_error = 0.0;
  double rms_residual = 0.0;    ///< relative rms misfit of the two-term model
  std::string measure;
};

/// Least-squares fit of S_m(x, x) ≈ c_{n−1} m^{n−1} + c_{n−2} m^{n−2} over
/// m ∈ [m_min, m_max] with k | m. Throws NumericalError with fewer than four levels.
ExpansionFit fit_expansion(BasisFamily& family, const SurfacePoint& x, int m_min, int m_max,
                           bool estimate_stderr = false);

/// binom(m+n−1, n−1) / area(S^{2n−1}): S_m(x, x) on the standard sphere.
double sphere_diagonal_closed_form(int n, int m);

struct DecayProfile {
  std::vector<int> levels;
  std::vector<double> log_ratio;  ///< log(|S_m(x,y)| / S_m(x,x))
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool truncated = false;  ///< levels after |S_m(x,y)| underflowed were dropped
};

/// Line fit of log(|S_m(x,y)|/S_m(x,x)) against m. Throws PreconditionError
/// when x and y lie on one orbit.
DecayProfile decay_profile(BasisFamily& family, const SurfacePoint& x, const SurfacePoint& y,
                           const std::vector<int>& levels);

struct RatioValue {
  double R = 0.0;
  double I = 0.0;
};

/// R + iI = S_{k(m+1)}(x, x₀) / S_{km}(x, x₀) with k = stratum_order(x₀) and m
/// the level multiplier. Throws NumericalError when the denominator is below
/// 1e-14 of its natural scale.
RatioValue ratio_diagnostic(BasisFamily& family, const SurfacePoint& x, const SurfacePoint& x0, int m);

struct RatioReport {
  int stratum = 1;
  double sigma = 0.05;
  double imag_bound = 0.01;
  struct Row {
    int m = 0;
    double radius = 0.0;
    double max_one_minus_R = 0.0;
    double max_abs_I = 0.0;
    int undefined = 0;
    bool passed = false;
  };
  std::vector<Row> rows;
  std::optional<std::pair<int, double>> first_pass;  ///< (m, radius)
};

/// Scans multipliers m ∈ [m_min, m_max] and the given radii, sampling
/// `count` points of X in each ball around x₀.
RatioReport ratio_report(BasisFamily& family, const SurfacePoint& x0, int m_min, int m_max,
                         const std::vector<double>& radii, std::size_t count, std::uint64_t seed,
                         double sigma = 0.05, double imag_bound = 0.01);

}  // namespace szego
