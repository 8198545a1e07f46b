// Orthonormal monomial bases of the weight-m Fourier components.
//
// A level-m basis is spanned by the restrictions of z^α with ⟨α, w⟩ = m. On
// sphere manifolds with the round measure the monomials are already
// orthogonal and their norms are exact; everywhere else the Gram matrix is a
// Monte-Carlo estimate and the basis is its Cholesky whitening.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "szego/integrate.hpp"

namespace szego {

struct MultiIndex {
  std::vector<int> exponents;
  int weighted_degree = 0;
  int total_degree = 0;

  /// Recomputes both degrees from the exponents.
  static MultiIndex make(std::vector<int> exponents, const WeightVector& w);
};

/// All α with ⟨α, w⟩ = m, colexicographic (last exponent varies slowest).
std::vector<MultiIndex> enumerate_multiindices(const WeightVector& w, int m);
/// Count of enumerate_multiindices without materializing the list.
long long count_multiindices(const WeightVector& w, int m);

/// rational_part · π^{pi_power}.
struct ExactNorm {
  boost::multiprecision::cpp_rational rational_part;
  int pi_power = 0;

  double log_value() const;
  double value() const;
  std::string str() const;
};

/// ∫_{S^{2n−1}} |z^α|² dS = 2 πⁿ α! / (n−1+|α|)!.
ExactNorm sphere_monomial_norm_sq(const MultiIndex& alpha, int n);

enum class Measure { Round, Compliant };

/// Points with their total weights (surface weight × density) for one measure.
struct QuadratureRule {
  std::vector<SurfacePoint> points;
  std::vector<double> weights;
  Measure measure = Measure::Compliant;
  std::uint64_t seed = 0;
};

QuadratureRule make_quadrature(const Manifold& M, Measure measure, std::size_t count, std::uint64_t seed);

struct GramResult {
  cmat G;
  rmat stderr_;          ///< per-entry standard error; zero for exact Gram matrices
  bool exact = false;
  double min_eigenvalue = 0.0;  ///< of the diagonally scaled Gram matrix
};

/// G_jk = ∫ z^{α_j} conj(z^{α_k}) dv. Exact on spheres with the round measure,
/// Monte-Carlo with `rule` otherwise. Throws NumericalError when G is not
/// positive definite within noise.
GramResult gram_matrix(const std::vector<MultiIndex>& indices, const Manifold& M, Measure measure,
                       const QuadratureRule* rule = nullptr);

enum class BasisMeasure { RoundExact, RoundQuadrature, CompliantQuadrature };
std::string to_string(BasisMeasure m);

class FourierBasis {
 public:
  int level = 0;
  int n = 0;
  std::vector<MultiIndex> indices;
  BasisMeasure measure = BasisMeasure::RoundExact;
  double condition = 1.0;         ///< condition number of the diagonally scaled Gram matrix
  double min_eigenvalue = 1.0;    ///< smallest eigenvalue of the scaled Gram matrix

  std::size_t dim() const { return indices.size(); }
  bool is_diagonal() const { return diagonal_; }
  /// C with f = C·(z^{α_j})_j; materialized for diagonal bases.
  cmat coeff_matrix() const;

  void set_diagonal(rvec c);
  void set_lower(cmat c);

  /// (z^{α_j}(x))_j.
  cvec monomials(const cvec& z) const;
  /// ∂z^{α_j}/∂z_k.
  cmat monomial_jacobian(const cvec& z) const;

  cvec eval(const cvec& z) const;
  cmat jacobian(const cvec& z) const;

 private:
  bool diagonal_ = true;
  rvec diag_;
  cmat lower_;
};

/// coeff = inverse Cholesky factor of G (after diagonal scaling). Throws
/// RankDeficiencyError with the failing pivot.
FourierBasis orthonormalize(const std::vector<MultiIndex>& indices, const cmat& G, int level, int n,
                            BasisMeasure measure);

cvec eval_basis(const FourierBasis& B, const SurfacePoint& x);
cmat eval_basis_jacobian(const FourierBasis& B, const SurfacePoint& x);

struct BasisOptions {
  Measure measure = Measure::Compliant;
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
  const QuadratureRule* rule = nullptr;  ///< reused across levels when set
};

/// Default measure: round on the standard sphere (where it equals the compliant
/// one), compliant elsewhere.
Measure default_measure(const Manifold& M);

FourierBasis make_basis(const Manifold& M, int m, const BasisOptions& opt);

/// Bases at several levels of one manifold sharing a single quadrature rule.
class BasisFamily {
 public:
  BasisFamily(const Manifold& M, BasisOptions opt);

  const Manifold& manifold() const { return *M_; }
  Measure measure() const { return measure_; }
  const BasisOptions& options() const { return opt_; }
  /// Built on first use and kept.
  const FourierBasis& at(int m);
  bool exact() const { return M_->is_sphere() && measure_ == Measure::Round; }
  /// The shared Monte-Carlo rule; nullptr for exact families.
  const QuadratureRule* quadrature();

 private:
  const Manifold* M_;
  BasisOptions opt_;
  Measure measure_;
  std::optional<QuadratureRule> rule_;
  std::map<int, FourierBasis> cache_;
};

/// Binary sidecar keyed by (manifold hash, level, measure, seed, samples).
void save_basis(const std::string& path, const FourierBasis& B, std::uint64_t manifold_hash,
                std::uint64_t seed, std::uint64_t samples);
std::optional<FourierBasis> load_basis(const std::string& path, std::uint64_t manifold_hash, int level,
                                       BasisMeasure measure, std::uint64_t seed, std::uint64_t samples);

}  // namespace szego
