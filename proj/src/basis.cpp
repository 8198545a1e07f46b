#include "szego/basis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "szego/errors.hpp"
#include "szego/parallel.hpp"

namespace szego {

namespace mp = boost::multiprecision;

MultiIndex MultiIndex::make(std::vector<int> exponents, const WeightVector& w) {
  MultiIndex a;
  a.exponents = std::move(exponents);
  for (std::size_t j = 0; j < a.exponents.size(); ++j) {
    a.weighted_degree += a.exponents[j] * w[j];
    a.total_degree += a.exponents[j];
  }
  return a;
}

std::vector<MultiIndex> enumerate_multiindices(const WeightVector& w, int m) {
  std::vector<MultiIndex> out;
  if (m < 0) return out;
  const int n = static_cast<int>(w.size());
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  // Fill from the last coordinate, ascending, so the output is colexicographic.
  auto rec = [&](auto&& self, int j, int remaining) -> void {
    if (j == 0) {
      if (remaining % w[0] == 0) {
        alpha[0] = remaining / w[0];
        out.push_back(MultiIndex::make(alpha, w));
      }
      return;
    }
    const int wj = w[static_cast<std::size_t>(j)];
    for (int e = 0; e * wj <= remaining; ++e) {
      alpha[static_cast<std::size_t>(j)] = e;
      self(self, j - 1, remaining - e * wj);
    }
    alpha[static_cast<std::size_t>(j)] = 0;
  };
  rec(rec, n - 1, m);
  return out;
}

long long count_multiindices(const WeightVector& w, int m) {
  if (m < 0) return 0;
  std::vector<long long> ways(static_cast<std::size_t>(m) + 1, 0);
  ways[0] = 1;
  for (int wj : w.values())
    for (int s = wj; s <= m; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - wj)];
  return ways[static_cast<std::size_t>(m)];
}

namespace {

double log_int(const mp::cpp_int& v) {
  const std::size_t bits = mp::msb(v);
  if (bits < 900) return std::log(v.convert_to<double>());
  const std::size_t shift = bits - 60;
  const mp::cpp_int top = v >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

mp::cpp_int factorial(int k) {
  mp::cpp_int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double ExactNorm::log_value() const {
  return log_int(mp::numerator(rational_part)) - log_int(mp::denominator(rational_part)) +
         pi_power * std::log(std::numbers::pi);
}

double ExactNorm::value() const { return std::exp(log_value()); }

std::string ExactNorm::str() const {
  std::ostringstream os;
  os << rational_part << "*pi^" << pi_power;
  return os.str();
}

ExactNorm sphere_monomial_norm_sq(const MultiIndex& alpha, int n) {
  mp::cpp_int num = 2;
  for (int e : alpha.exponents) num *= factorial(e);
  ExactNorm out;
  out.rational_part = mp::cpp_rational(num, factorial(n - 1 + alpha.total_degree));
  out.pi_power = n;
  return out;
}

QuadratureRule make_quadrature(const Manifold& M, Measure measure, std::size_t count, std::uint64_t seed) {
  const SampleSet S = sample_manifold(M, count, seed);
  QuadratureRule rule;
  rule.points = S.points;
  rule.weights = S.weights;
  rule.measure = measure;
  rule.seed = seed;
  if (measure == Measure::Compliant) {
    parallel_for(rule.points.size(), [&](std::size_t i) { rule.weights[i] *= volume_density(M, rule.points[i]); });
  }
  return rule;
}

std::string to_string(BasisMeasure m) {
  switch (m) {
    case BasisMeasure::RoundExact: return "round-exact";
    case BasisMeasure::RoundQuadrature: return "round-quadrature";
    case BasisMeasure::CompliantQuadrature: return "compliant-quadrature";
  }
  return "?";
}

namespace {

// Rows: sample points; columns: monomials.
cmat monomial_table(const std::vector<MultiIndex>& indices, const std::vector<SurfacePoint>& pts) {
  const Eigen::Index N = static_cast<Eigen::Index>(pts.size());
  const Eigen::Index d = static_cast<Eigen::Index>(indices.size());
  cmat V(N, d);
  if (d == 0) return V;
  const int n = static_cast<int>(indices[0].exponents.size());
  int max_e = 0;
  for (const auto& a : indices)
    for (int e : a.exponents) max_e = std::max(max_e, e);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
    cmat powers(n, max_e + 1);
    for (int k = 0; k < n; ++k) {
      powers(k, 0) = 1.0;
      for (int e = 1; e <= max_e; ++e) powers(k, e) = powers(k, e - 1) * pts[i].z[k];
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      cdouble v = 1.0;
      for (int k = 0; k < n; ++k) v *= powers(k, indices[static_cast<std::size_t>(j)].exponents[static_cast<std::size_t>(k)]);
      V(static_cast<Eigen::Index>(i), j) = v;
    }
  });
  return V;
}

double scaled_min_eigenvalue(const cmat& G, double* condition) {
  const rvec d = G.diagonal().real().cwiseSqrt().cwiseInverse();
  const cmat S = d.asDiagonal() * G * d.asDiagonal();
  const rvec ev = Eigen::SelfAdjointEigenSolver<cmat>(S, Eigen::EigenvaluesOnly).eigenvalues();
  if (condition) *condition = ev.size() ? ev.maxCoeff() / ev.minCoeff() : 1.0;
  return ev.size() ? ev.minCoeff() : 1.0;
}

}  // namespace

GramResult gram_matrix(const std::vector<MultiIndex>& indices, const Manifold& M, Measure measure,
                       const QuadratureRule* rule) {
  const Eigen::Index d = static_cast<Eigen::Index>(indices.size());
  for (const auto& a : indices) {
    if (a.weighted_degree != indices.front().weighted_degree) {
      throw PreconditionError("gram_matrix: indices span more than one level");
    }
  }
  GramResult out;
  if (M.is_sphere() && measure == Measure::Round) {
    out.G = cmat::Zero(d, d);
    out.stderr_ = rmat::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) out.G(j, j) = sphere_monomial_norm_sq(indices[static_cast<std::size_t>(j)], M.n()).value();
    out.exact = true;
    out.min_eigenvalue = 1.0;
    return out;
  }
  if (!rule) throw PreconditionError("gram_matrix: a quadrature rule is required for this measure");
  if (rule->measure != measure) throw PreconditionError("gram_matrix: quadrature rule has the wrong measure");

  const std::size_t N = rule->points.size();
  const cmat V = monomial_table(indices, rule->points);
  const rvec W = Eigen::Map<const rvec>(rule->weights.data(), static_cast<Eigen::Index>(N));
  cmat G = V.transpose() * W.asDiagonal() * V.conjugate();
  G = 0.5 * (G + G.adjoint()).eval();

  // Per-entry stderr of the mean of N·W_i·v_ij·conj(v_ik).
  const rmat A = V.cwiseAbs2();
  const rvec W2 = W.cwiseAbs2() * static_cast<double>(N);
  const rmat S2 = A.transpose() * W2.asDiagonal() * A;  // (1/N)Σ (N W)² |v_j|²|v_k|² = S2
  rmat se(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      se(j, k) = std::sqrt(std::max(S2(j, k) - std::norm(G(j, k)), 0.0) / std::max<double>(1.0, static_cast<double>(N) - 1.0));
  out.G = G;
  out.stderr_ = se;
  out.exact = false;
  if (d > 0) {
    out.min_eigenvalue = scaled_min_eigenvalue(G, nullptr);
    if (!(out.min_eigenvalue > 0.0)) {
      throw NumericalError("Gram matrix is not positive definite; smallest scaled eigenvalue " +
                           std::to_string(out.min_eigenvalue));
    }
  }
  return out;
}

void FourierBasis::set_diagonal(rvec c) {
  diagonal_ = true;
  diag_ = std::move(c);
  lower_.resize(0, 0);
}

void FourierBasis::set_lower(cmat c) {
  diagonal_ = false;
  lower_ = std::move(c);
  diag_.resize(0);
}

cmat FourierBasis::coeff_matrix() const {
  if (diagonal_) return diag_.cast<cdouble>().asDiagonal();
  return lower_;
}

cvec FourierBasis::monomials(const cvec& z) const {
  const Eigen::Index d = static_cast<Eigen::Index>(indices.size());
  cvec v(d);
  if (d == 0) return v;
  int max_e = 0;
  for (const auto& a : indices)
    for (int e : a.exponents) max_e = std::max(max_e, e);
  cmat powers(n, max_e + 1);
  for (int k = 0; k < n; ++k) {
    powers(k, 0) = 1.0;
    for (int e = 1; e <= max_e; ++e) powers(k, e) = powers(k, e - 1) * z[k];
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    cdouble p = 1.0;
    for (int k = 0; k < n; ++k) p *= powers(k, indices[static_cast<std::size_t>(j)].exponents[static_cast<std::size_t>(k)]);
    v[j] = p;
  }
  return v;
}

cmat FourierBasis::monomial_jacobian(const cvec& z) const {
  const Eigen::Index d = static_cast<Eigen::Index>(indices.size());
  cmat J = cmat::Zero(d, n);
  if (d == 0) return J;
  int max_e = 0;
  for (const auto& a : indices)
    for (int e : a.exponents) max_e = std::max(max_e, e);
  cmat powers(n, max_e + 1);
  for (int k = 0; k < n; ++k) {
    powers(k, 0) = 1.0;
    for (int e = 1; e <= max_e; ++e) powers(k, e) = powers(k, e - 1) * z[k];
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto& a = indices[static_cast<std::size_t>(j)].exponents;
    for (int k = 0; k < n; ++k) {
      if (a[static_cast<std::size_t>(k)] == 0) continue;
      cdouble p = static_cast<double>(a[static_cast<std::size_t>(k)]);
      for (int l = 0; l < n; ++l) p *= powers(l, a[static_cast<std::size_t>(l)] - (l == k ? 1 : 0));
      J(j, k) = p;
    }
  }
  return J;
}

cvec FourierBasis::eval(const cvec& z) const {
  const cvec v = monomials(z);
  if (diagonal_) return diag_.cast<cdouble>().cwiseProduct(v);
  return lower_.triangularView<Eigen::Lower>() * v;
}

cmat FourierBasis::jacobian(const cvec& z) const {
  const cmat J = monomial_jacobian(z);
  if (diagonal_) return diag_.cast<cdouble>().asDiagonal() * J;
  return lower_.triangularView<Eigen::Lower>() * J;
}

cvec eval_basis(const FourierBasis& B, const SurfacePoint& x) { return B.eval(x.z); }
cmat eval_basis_jacobian(const FourierBasis& B, const SurfacePoint& x) { return B.jacobian(x.z); }

FourierBasis orthonormalize(const std::vector<MultiIndex>& indices, const cmat& G, int level, int n,
                            BasisMeasure measure) {
  const Eigen::Index d = static_cast<Eigen::Index>(indices.size());
  if (G.rows() != d || G.cols() != d) throw PreconditionError("orthonormalize: Gram size mismatch");
  FourierBasis B;
  B.level = level;
  B.n = n;
  B.indices = indices;
  B.measure = measure;
  if (d == 0) {
    B.set_diagonal(rvec());
    return B;
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(G(j, j).real() > 0.0)) throw RankDeficiencyError("Gram matrix has a nonpositive diagonal entry", static_cast<int>(j));
  }

  const cmat offdiag = G - cmat(G.diagonal().asDiagonal());
  if (offdiag.cwiseAbs().maxCoeff() == 0.0) {
    B.set_diagonal(G.diagonal().real().cwiseSqrt().cwiseInverse());
    return B;
  }

  const rvec scale = G.diagonal().real().cwiseSqrt().cwiseInverse();
  const cmat S = scale.asDiagonal() * G * scale.asDiagonal();
  Eigen::LLT<cmat> llt(S);
  if (llt.info() != Eigen::Success) {
    int pivot = static_cast<int>(d) - 1;
    for (Eigen::Index k = 1; k <= d; ++k) {
      if (Eigen::LLT<cmat>(S.topLeftCorner(k, k)).info() != Eigen::Success) {
        pivot = static_cast<int>(k) - 1;
        break;
      }
    }
    throw RankDeficiencyError("Cholesky factorization failed at pivot " + std::to_string(pivot), pivot);
  }
  const cmat L = llt.matrixL();
  cmat Linv = L.triangularView<Eigen::Lower>().solve(cmat::Identity(d, d));
  Linv = Linv * scale.cast<cdouble>().asDiagonal();
  B.set_lower(Linv.triangularView<Eigen::Lower>());
  const rvec ev = Eigen::SelfAdjointEigenSolver<cmat>(S, Eigen::EigenvaluesOnly).eigenvalues();
  B.min_eigenvalue = ev.minCoeff();
  B.condition = ev.maxCoeff() / ev.minCoeff();
  return B;
}

Measure default_measure(const Manifold& M) {
  return M.is_standard_sphere() ? Measure::Round : Measure::Compliant;
}

FourierBasis make_basis(const Manifold& M, int m, const BasisOptions& opt) {
  if (m < 0) throw PreconditionError("level must be nonnegative");
  const auto indices = enumerate_multiindices(M.weights(), m);
  // On the standard sphere the compliant density is identically 1.
  const Measure measure = M.is_standard_sphere() ? Measure::Round : opt.measure;
  if (M.is_sphere() && measure == Measure::Round) {
    const GramResult g = gram_matrix(indices, M, measure);
    return orthonormalize(indices, g.G, m, M.n(), BasisMeasure::RoundExact);
  }
  std::optional<QuadratureRule> own;
  const QuadratureRule* rule = opt.rule;
  if (!rule) {
    own = make_quadrature(M, measure, opt.samples, opt.seed);
    rule = &*own;
  }
  const GramResult g = gram_matrix(indices, M, measure, rule);
  return orthonormalize(indices, g.G, m, M.n(),
                        measure == Measure::Round ? BasisMeasure::RoundQuadrature : BasisMeasure::CompliantQuadrature);
}

BasisFamily::BasisFamily(const Manifold& M, BasisOptions opt)
    : M_(&M), opt_(opt), measure_(M.is_standard_sphere() ? Measure::Round : opt.measure) {}

const FourierBasis& BasisFamily::at(int m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  BasisOptions o = opt_;
  o.measure = measure_;
  if (!exact()) o.rule = quadrature();
  return cache_.emplace(m, make_basis(*M_, m, o)).first->second;
}

const QuadratureRule* BasisFamily::quadrature() {
  if (exact()) return nullptr;
  if (opt_.rule) return opt_.rule;
  if (!rule_) rule_ = make_quadrature(*M_, measure_, opt_.samples, opt_.seed);
  return &*rule_;
}

void save_basis(const std::string& path, const FourierBasis& B, std::uint64_t manifold_hash,
                std::uint64_t seed, std::uint64_t samples) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write basis cache " + path);
  os.write("SZBASIS1", 8);
  const std::int64_t header[8] = {static_cast<std::int64_t>(manifold_hash), B.level, static_cast<std::int64_t>(B.measure),
                                  static_cast<std::int64_t>(seed), static_cast<std::int64_t>(samples), B.n,
                                  static_cast<std::int64_t>(B.dim()), B.is_diagonal() ? 1 : 0};
  os.write(reinterpret_cast<const char*>(header), sizeof(header));
  os.write(reinterpret_cast<const char*>(&B.condition), sizeof(double));
  os.write(reinterpret_cast<const char*>(&B.min_eigenvalue), sizeof(double));
  for (const auto& a : B.indices) os.write(reinterpret_cast<const char*>(a.exponents.data()), static_cast<std::streamsize>(a.exponents.size() * sizeof(int)));
  if (B.is_diagonal()) {
    const rvec c = B.coeff_matrix().diagonal().real();
    os.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double)));
  } else {
    const cmat C = B.coeff_matrix();
    os.write(reinterpret_cast<const char*>(C.data()), static_cast<std::streamsize>(C.size() * sizeof(cdouble)));
  }
}

std::optional<FourierBasis> load_basis(const std::string& path, std::uint64_t manifold_hash, int level,
                                       BasisMeasure measure, std::uint64_t seed, std::uint64_t samples) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  char magic[8];
  is.read(magic, 8);
  if (!is || std::string(magic, 8) != "SZBASIS1") return std::nullopt;
  std::int64_t h[8];
  is.read(reinterpret_cast<char*>(h), sizeof(h));
  if (!is || static_cast<std::uint64_t>(h[0]) != manifold_hash || h[1] != level ||
      h[2] != static_cast<std::int64_t>(measure)) {
    return std::nullopt;
  }
  if (measure != BasisMeasure::RoundExact &&
      (static_cast<std::uint64_t>(h[3]) != seed || static_cast<std::uint64_t>(h[4]) != samples)) {
    return std::nullopt;
  }
  FourierBasis B;
  B.level = level;
  B.n = static_cast<int>(h[5]);
  B.measure = measure;
  const Eigen::Index d = h[6];
  is.read(reinterpret_cast<char*>(&B.condition), sizeof(double));
  is.read(reinterpret_cast<char*>(&B.min_eigenvalue), sizeof(double));
  // Weighted degree is level by construction; total degree is recomputed.
  for (Eigen::Index j = 0; j < d; ++j) {
    MultiIndex a;
    a.exponents.resize(static_cast<std::size_t>(B.n));
    is.read(reinterpret_cast<char*>(a.exponents.data()), static_cast<std::streamsize>(B.n * sizeof(int)));
    a.weighted_degree = level;
    for (int e : a.exponents) a.total_degree += e;
    B.indices.push_back(std::move(a));
  }
  if (h[7]) {
    rvec c(d);
    is.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double)));
    B.set_diagonal(c);
  } else {
    cmat C(d, d);
    is.read(reinterpret_cast<char*>(C.data()), static_cast<std::streamsize>(C.size() * sizeof(cdouble)));
    B.set_lower(C);
  }
  if (!is) return std::nullopt;
  return B;
}

}  // namespace szego
