#include "szego/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "szego/errors.hpp"
#include "szego/geometry.hpp"
#include "szego/parallel.hpp"
#include "szego/random.hpp"

namespace szego {

namespace {

std::vector<int> layout_levels(const Manifold& M, int m, const std::vector<int>& extra, bool successor) {
  if (m < 1) throw PreconditionError("build_embedding: m must be at least 1");
  std::set<int> levels;
  for (int k : strata_orders(M).orders) {
    levels.insert(k * m);
    if (successor) levels.insert(k * (m + 1));
  }
  for (int e : extra) {
    if (e < 1) throw PreconditionError("build_embedding: extra levels must be positive");
    levels.insert(e);
  }
  return {levels.begin(), levels.end()};
}

}  // namespace

EmbeddingLayout embedding_layout_for_levels(const Manifold& M, std::vector<int> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty()) throw PreconditionError("embedding needs at least one level");
  EmbeddingLayout L;
  L.levels = levels;
  L.min_weight = 0;
  for (int lv : levels) {
    const long long d = count_multiindices(M.weights(), lv);
    L.dims.push_back(d);
    L.N += d;
    if (d == 0) {
      L.warnings.push_back("level " + std::to_string(lv) + " has no monomials; block kept empty");
    } else if (L.min_weight == 0 || lv < L.min_weight) {
      L.min_weight = lv;
    }
  }
  return L;
}

EmbeddingLayout embedding_layout(const Manifold& M, int m, const std::vector<int>& extra_levels,
                                 bool include_successor) {
  return embedding_layout_for_levels(M, layout_levels(M, m, extra_levels, include_successor));
}

std::vector<int> EmbeddingMap::levels() const {
  std::vector<int> out;
  for (const auto& b : blocks) out.push_back(b.level);
  return out;
}

EmbeddingMap build_embedding_for_levels(BasisFamily& family, const std::vector<int>& levels) {
  const EmbeddingLayout L = embedding_layout_for_levels(family.manifold(), levels);
  EmbeddingMap phi;
  phi.warnings = L.warnings;
  phi.min_weight = L.min_weight;
  for (int lv : L.levels) {
    EmbeddingBlock b;
    b.level = lv;
    b.basis = family.at(lv);
    phi.N += static_cast<long long>(b.basis.dim());
    phi.coordinate_weights.insert(phi.coordinate_weights.end(), b.basis.dim(), lv);
    phi.blocks.push_back(std::move(b));
  }
  return phi;
}

EmbeddingMap build_embedding(BasisFamily& family, int m, const std::vector<int>& extra_levels,
                             bool include_successor) {
  return build_embedding_for_levels(family, layout_levels(family.manifold(), m, extra_levels, include_successor));
}

cvec evaluate(const EmbeddingMap& phi, const SurfacePoint& x) {
  cvec out(phi.N);
  Eigen::Index at = 0;
  for (const auto& b : phi.blocks) {
    const Eigen::Index d = static_cast<Eigen::Index>(b.basis.dim());
    if (d == 0) continue;
    out.segment(at, d) = eval_basis(b.basis, x);
    at += d;
  }
  return out;
}

cmat embedding_jacobian(const EmbeddingMap& phi, const SurfacePoint& x) {
  const Eigen::Index n = x.z.size();
  cmat J(phi.N, n);
  Eigen::Index at = 0;
  for (const auto& b : phi.blocks) {
    const Eigen::Index d = static_cast<Eigen::Index>(b.basis.dim());
    if (d == 0) continue;
    J.middleRows(at, d) = eval_basis_jacobian(b.basis, x);
    at += d;
  }
  return J;
}

EquivarianceResidual check_equivariance(const Manifold& M, const EmbeddingMap& phi, const SurfacePoint& x,
                                        double theta) {
  const cvec a = evaluate(phi, x);
  const cvec b = evaluate(phi, act(M, theta, x));
  EquivarianceResidual r;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double w = phi.coordinate_weights[static_cast<std::size_t>(j)];
    r.max_abs = std::max(r.max_abs, std::abs(b[j] - std::polar(1.0, w * theta) * a[j]));
    r.scale = std::max(r.scale, std::abs(a[j]));
  }
  return r;
}

namespace {

ImmersionSample immersion_at(const Manifold& M, const EmbeddingMap& phi, const SurfacePoint& x) {
  ImmersionSample s;
  s.x = x;
  s.stratum = stratum_order(M, x);
  const cmat J = embedding_jacobian(phi, x);
  const cmat E = real_tangent_frame(M, x);
  // Φ is holomorphic, so dΦ(v) = J v for a real tangent vector v ∈ ℂⁿ ≅ ℝ²ⁿ.
  const cmat JE = J * E;
  rmat R(2 * JE.rows(), JE.cols());
  R.topRows(JE.rows()) = JE.real();
  R.bottomRows(JE.rows()) = JE.imag();
  const Eigen::JacobiSVD<rmat> svd(R);
  const rvec sv = svd.singularValues();
  s.singular_values.assign(sv.data(), sv.data() + sv.size());

  const cvec f = evaluate(phi, x);
  const cvec dT = J * reeb_vector(M, x);
  double scale = 1.0;
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    const double w = phi.coordinate_weights[static_cast<std::size_t>(j)];
    scale = std::max(scale, w * std::abs(f[j]));
    s.reeb_residual = std::max(s.reeb_residual, std::abs(dT[j] - cdouble(0.0, w) * f[j]));
  }
  s.reeb_residual /= scale;
  return s;
}

}  // namespace

ImmersionReport immersion_report(const Manifold& M, const EmbeddingMap& phi, std::size_t samples,
                                 std::uint64_t seed, double floor) {
  ImmersionReport rep;
  rep.floor = floor;
  const std::vector<SurfacePoint> pts = stratified_samples(M, samples, seed);
  rep.samples.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { rep.samples[i] = immersion_at(M, phi, pts[i]); });
  rep.min_singular = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    const double lo = s.singular_values.empty() ? 0.0 : s.singular_values.back();
    if (lo < rep.min_singular) {
      rep.min_singular = lo;
      rep.argmin = i;
    }
    if (!(lo > floor)) rep.failures.push_back(i);
    rep.max_reeb_residual = std::max(rep.max_reeb_residual, s.reeb_residual);
  }
  return rep;
}

std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::SameOrbit: return "same-orbit";
    case PairKind::HalfTurn: return "half-turn";
    case PairKind::CrossStratum: return "cross-stratum";
    case PairKind::NearStratum: return "near-stratum";
    case PairKind::Random: return "random";
  }
  return "unknown";
}

PairResult compare_pair(const Manifold& M, const EmbeddingMap& phi, const SurfacePoint& x, const SurfacePoint& y,
                        bool with_quotient, double relative_floor) {
  PairResult r;
  r.x = x;
  r.y = y;
  r.stratum_x = stratum_order(M, x);
  r.stratum_y = stratum_order(M, y);
  r.ambient_distance = (x.z - y.z).norm();
  r.quotient_distance = with_quotient ? quotient_distance(M, x, y) : -1.0;
  const cvec a = evaluate(phi, x);
  const cvec b = evaluate(phi, y);
  r.image_distance = (a - b).norm();
  r.scale = std::max({a.norm(), b.norm(), 1e-300});
  Eigen::Index at = 0;
  for (const auto& blk : phi.blocks) {
    const Eigen::Index d = static_cast<Eigen::Index>(blk.basis.dim());
    const double bd = (a.segment(at, d) - b.segment(at, d)).norm();
    if (bd < relative_floor * r.scale) r.offending_levels.push_back(blk.level);
    at += d;
  }
  return r;
}

SeparationReport separation_report(const Manifold& M, const EmbeddingMap& phi, std::size_t pair_count,
                                   double delta, std::uint64_t seed, double relative_floor) {
  SeparationReport rep;
  rep.delta = delta;
  rep.relative_floor = relative_floor;
  rep.pair_count = pair_count;

  const std::vector<SurfacePoint> pool = stratified_samples(M, std::max<std::size_t>(pair_count, 50), seed);
  std::vector<std::size_t> regular, singular, near;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (stratum_order(M, pool[i]) > 1) singular.push_back(i);
    else if ((pool[i].z.array().abs() < 0.1).any()) near.push_back(i);
    else regular.push_back(i);
  }
  if (regular.empty()) regular = near;
  if (near.empty()) near = regular;

  // Five pair kinds in turn, so every kind gets a fifth of the budget.
  std::vector<std::pair<PairKind, std::pair<SurfacePoint, SurfacePoint>>> pairs;
  pairs.reserve(pair_count);
  auto gen = stream_engine(seed, 0x5e9a);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto pick = [&](const std::vector<std::size_t>& from) -> const SurfacePoint& {
    return pool[from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(gen)]];
  };
  const std::vector<std::size_t>& singular_or_regular = singular.empty() ? regular : singular;
  for (std::size_t i = 0; i < pair_count; ++i) {
    switch (i % 5) {
      case 0: {
        const SurfacePoint& x = pick(regular);
        pairs.push_back({PairKind::SameOrbit, {x, act(M, angle(gen), x)}});
        break;
      }
      case 1: {
        const SurfacePoint& x = pick(singular_or_regular);
        const int k = stratum_order(M, x);
        pairs.push_back({PairKind::HalfTurn, {x, act(M, std::numbers::pi / k, x)}});
        break;
      }
      case 2:
        pairs.push_back({PairKind::CrossStratum, {pick(singular_or_regular), pick(regular)}});
        break;
      case 3: {
        const SurfacePoint& x = pick(near);
        pairs.push_back({PairKind::NearStratum, {x, pick(near)}});
        break;
      }
      default:
        pairs.push_back({PairKind::Random, {pool[i % pool.size()], pick(regular)}});
    }
  }

  std::vector<PairResult> results(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    results[i] = compare_pair(M, phi, pairs[i].second.first, pairs[i].second.second, true, relative_floor);
    results[i].kind = pairs[i].first;
  });

  rep.separation_floor = std::numeric_limits<double>::infinity();
  rep.quotient_separation_floor = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (r.quotient_distance > delta) rep.quotient_separation_floor = std::min(rep.quotient_separation_floor, r.image_distance);
    if (!(r.ambient_distance > delta)) continue;
    ++rep.considered;
    rep.separation_floor = std::min(rep.separation_floor, r.image_distance);
    if (r.image_distance < relative_floor * r.scale) rep.violations.push_back(r);
  }
  return rep;
}

EmbeddingSearchResult search_embedding(BasisFamily& family, int m_start, int m_max,
                                       const std::vector<int>& extra_levels, std::size_t samples,
                                       std::size_t pairs, double delta, std::uint64_t seed) {
  EmbeddingSearchResult res;
  const Manifold& M = family.manifold();
  for (int m = std::max(1, m_start); m <= m_max; ++m) {
    const EmbeddingMap phi = build_embedding(family, m, extra_levels);
    const bool ok = immersion_report(M, phi, samples, seed).passed() &&
                    separation_report(M, phi, pairs, delta, seed).passed();
    res.tried.emplace_back(m, ok);
    if (ok) {
      res.m = m;
      break;
    }
  }
  return res;
}

}  // namespace szego
