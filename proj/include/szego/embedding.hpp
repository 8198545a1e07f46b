// The equivariant CR map Φ_m built from blocks of Fourier components, and
// sampled certificates for equivariance, immersion and injectivity.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szego/basis.hpp"

namespace szego {

/// Levels and dimensions of Φ_m without building any basis.
struct EmbeddingLayout {
  std::vector<int> levels;  ///< sorted, duplicates merged
  std::vector<long long> dims;
  long long N = 0;
  int min_weight = 0;
  std::vector<std::string> warnings;
};

/// Levels k·m and k·(m+1) for every stratum order k, plus extra_levels.
/// With include_successor = false only the k·m levels (and extras) are kept.
EmbeddingLayout embedding_layout(const Manifold& M, int m, const std::vector<int>& extra_levels = {},
                                 bool include_successor = true);
EmbeddingLayout embedding_layout_for_levels(const Manifold& M, std::vector<int> levels);

struct EmbeddingBlock {
  int level = 0;
  FourierBasis basis;
};

struct EmbeddingMap {
  std::vector<EmbeddingBlock> blocks;
  long long N = 0;
  std::vector<int> coordinate_weights;
  int min_weight = 0;
  std::vector<std::string> warnings;

  std::vector<int> levels() const;
};

EmbeddingMap build_embedding(BasisFamily& family, int m, const std::vector<int>& extra_levels = {},
                             bool include_successor = true);
EmbeddingMap build_embedding_for_levels(BasisFamily& family, const std::vector<int>& levels);

cvec evaluate(const EmbeddingMap& phi, const SurfacePoint& x);
/// N × n holomorphic Jacobian ∂Φ_j/∂z_k.
cmat embedding_jacobian(const EmbeddingMap& phi, const SurfacePoint& x);

struct EquivarianceResidual {
  double max_abs = 0.0;  ///< max_j |Φ_j(e^{iθ}x) − e^{i w_j θ}Φ_j(x)|
  double scale = 1.0;    ///< max(1, max_j |Φ_j(x)|)
};

EquivarianceResidual check_equivariance(const Manifold& M, const EmbeddingMap& phi, const SurfacePoint& x,
                                        double theta);

struct ImmersionSample {
  SurfacePoint x;
  int stratum = 1;
  std::vector<double> singular_values;  ///< descending, 2n−1 of them
  double reeb_residual = 0.0;           ///< max_j |dΦ(T)_j − i w_j Φ_j| / scale
};

struct ImmersionReport {
  std::vector<ImmersionSample> samples;
  double min_singular = 0.0;
  std::size_t argmin = 0;
  double max_reeb_residual = 0.0;
  double floor = 1e-6;
  std::vector<std::size_t> failures;  ///< samples with smallest singular value ≤ floor
  bool passed() const { return failures.empty() && max_reeb_residual <= 1e-8; }
};

ImmersionReport immersion_report(const Manifold& M, const EmbeddingMap& phi, std::size_t samples,
                                 std::uint64_t seed, double floor = 1e-6);

enum class PairKind { SameOrbit, HalfTurn, CrossStratum, NearStratum, Random };
std::string to_string(PairKind k);

struct PairResult {
  PairKind kind = PairKind::Random;
  SurfacePoint x, y;
  int stratum_x = 1, stratum_y = 1;
  double ambient_distance = 0.0;
  double quotient_distance = 0.0;
  double image_distance = 0.0;
  double scale = 1.0;
  std::vector<int> offending_levels;  ///< blocks that fail to tell x and y apart
};

/// Compares Φ(x) and Φ(y); quotient distance is computed only when requested.
PairResult compare_pair(const Manifold& M, const EmbeddingMap& phi, const SurfacePoint& x, const SurfacePoint& y,
                        bool with_quotient = true, double relative_floor = 1e-9);

struct SeparationReport {
  double delta = 0.05;
  double relative_floor = 1e-9;
  std::size_t pair_count = 0;
  std::size_t considered = 0;              ///< pairs with |x − y| > δ
  double separation_floor = 0.0;           ///< min image distance over considered pairs
  double quotient_separation_floor = 0.0;  ///< min image distance over pairs with quotient distance > δ
  std::vector<PairResult> violations;
  bool passed() const { return violations.empty(); }
};

/// Stratified pairs: same-orbit shifts, half-turn shifts on singular strata,
/// cross-stratum, near-stratum and random pairs. A pair violates when
/// |x − y| > δ and |Φ(x) − Φ(y)| < relative_floor · max(|Φ(x)|, |Φ(y)|).
SeparationReport separation_report(const Manifold& M, const EmbeddingMap& phi, std::size_t pair_count,
                                   double delta, std::uint64_t seed, double relative_floor = 1e-9);

struct EmbeddingSearchResult {
  std::optional<int> m;  ///< first m passing both certificates
  std::vector<std::pair<int, bool>> tried;
};

/// Increases m from m_start until immersion and separation both pass.
EmbeddingSearchResult search_embedding(BasisFamily& family, int m_start, int m_max,
                                       const std::vector<int>& extra_levels, std::size_t samples,
                                       std::size_t pairs, double delta, std::uint64_t seed);

}  // namespace szego
