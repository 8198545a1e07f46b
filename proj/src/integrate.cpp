#include "szego/integrate.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "szego/errors.hpp"
#include "szego/parallel.hpp"
#include "szego/random.hpp"

namespace szego {

namespace {

constexpr std::size_t kBlock = 256;

template <class Draw>
SampleSet sample_blocks(std::size_t count, std::uint64_t seed, SampleMethod method, Draw draw) {
  SampleSet S;
  S.seed = seed;
  S.method = method;
  S.points.resize(count);
  S.weights.resize(count);
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    auto gen = stream_engine(seed, b);
    const std::size_t end = std::min(count, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) draw(gen, S.points[i], S.weights[i]);
  });
  return S;
}

double sphere_area(int n) { return 2.0 * std::pow(M_PI, n) / std::tgamma(static_cast<double>(n)); }

}  // namespace

double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += data[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

SampleSet sample_sphere(int n, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw PreconditionError("sample count must be at least 1");
  const double w = sphere_area(n) / static_cast<double>(count);
  return sample_blocks(count, seed, SampleMethod::SphereUniform,
                       [&](std::mt19937_64& gen, SurfacePoint& p, double& weight) {
                         const cvec u = random_direction(gen, n);
                         p = SurfacePoint{u, std::abs(u.squaredNorm() - 1.0)};
                         weight = w;
                       });
}

SampleSet sample_hypersurface(const Manifold& M, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw PreconditionError("sample count must be at least 1");
  const int n = M.n();
  const double w = sphere_area(n) / static_cast<double>(count);
  return sample_blocks(count, seed, SampleMethod::ImplicitProjection,
                       [&](std::mt19937_64& gen, SurfacePoint& p, double& weight) {
                         const cvec u = random_direction(gen, n);
                         p = radial_project(M, u);
                         const double t = p.z.norm();
                         const cvec grad = M.rho().dz(p.z).conjugate();
                         // dS = t^{2n−1} / |cos(u, ∇ρ)| dσ(u).
                         const double cosine = std::abs(real_dot(u, grad)) / grad.norm();
                         weight = w * std::pow(t, 2 * n - 1) / cosine;
                       });
}

SampleSet sample_manifold(const Manifold& M, std::size_t count, std::uint64_t seed) {
  return M.is_sphere() ? sample_sphere(M.n(), count, seed) : sample_hypersurface(M, count, seed);
}

Estimate integrate_surface(const std::function<double(const SurfacePoint&)>& f, const SampleSet& S,
                           const Density& density) {
  const std::size_t N = S.size();
  if (N == 0) throw PreconditionError("empty sample set");
  std::vector<double> y(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double lam = density ? density(S.points[i]) : 1.0;
    y[i] = static_cast<double>(N) * S.weights[i] * lam * f(S.points[i]);
  }
  const double mean = pairwise_sum(y.data(), N) / static_cast<double>(N);
  std::vector<double> dev(N);
  for (std::size_t i = 0; i < N; ++i) dev[i] = (y[i] - mean) * (y[i] - mean);
  const double var = N > 1 ? pairwise_sum(dev.data(), N) / static_cast<double>(N - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(N))};
}

ComplexEstimate integrate_surface_complex(const std::function<cdouble(const SurfacePoint&)>& f,
                                          const SampleSet& S, const Density& density) {
  const std::size_t N = S.size();
  if (N == 0) throw PreconditionError("empty sample set");
  std::vector<double> re(N), im(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double lam = density ? density(S.points[i]) : 1.0;
    const cdouble v = static_cast<double>(N) * S.weights[i] * lam * f(S.points[i]);
    re[i] = v.real();
    im[i] = v.imag();
  }
  const cdouble mean(pairwise_sum(re.data(), N) / static_cast<double>(N),
                     pairwise_sum(im.data(), N) / static_cast<double>(N));
  std::vector<double> dev(N);
  for (std::size_t i = 0; i < N; ++i) dev[i] = std::norm(cdouble(re[i], im[i]) - mean);
  const double var = N > 1 ? pairwise_sum(dev.data(), N) / static_cast<double>(N - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(N))};
}

std::optional<SurfacePoint> sample_on_support(const Manifold& M, unsigned support_mask,
                                              std::mt19937_64& gen) {
  try {
    SurfacePoint p = radial_project(M, random_direction(gen, M.n(), support_mask));
    if (p.residual > M.surface_tolerance()) return std::nullopt;
    return p;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

std::vector<SurfacePoint> stratified_samples(const Manifold& M, std::size_t count, std::uint64_t seed,
                                             double near) {
  const int n = M.n();
  const unsigned full = (1u << n) - 1u;
  std::vector<unsigned> singular;
  for (unsigned mask = 1; mask < full; ++mask) {
    int g = 0;
    for (int j = 0; j < n; ++j)
      if ((mask >> j) & 1u) g = std::gcd(g, M.weights()[static_cast<std::size_t>(j)]);
    if (g > 1) singular.push_back(mask);
  }

  auto gen = stream_engine(seed, 0x57a7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<SurfacePoint> out;
  out.reserve(count);
  const std::size_t n_sing = singular.empty() ? 0 : (count * 2) / 5;
  const std::size_t n_near = singular.empty() ? 0 : count / 5;
  const std::size_t n_reg = count - n_sing - n_near;

  auto draw_singular = [&]() -> SurfacePoint {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const unsigned mask = singular[static_cast<std::size_t>(unif(gen) * singular.size()) % singular.size()];
      if (auto p = sample_on_support(M, mask, gen)) return *p;
    }
    throw NumericalError("could not realize a singular stratum point");
  };

  for (std::size_t i = 0; i < n_reg; ++i) {
    for (;;) {
      if (auto p = sample_on_support(M, full, gen)) {
        out.push_back(*p);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n_sing; ++i) out.push_back(draw_singular());
  for (std::size_t i = 0; i < n_near; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw NumericalError("could not place a near-stratum point");
      const SurfacePoint p = draw_singular();
      cvec z = p.z;
      const cvec bump = random_direction(gen, n) * (near * unif(gen));
      for (int j = 0; j < n; ++j)
        if (std::abs(z[j]) == 0.0) z[j] = bump[j];
      try {
        const SurfacePoint q = radial_project(M, z);
        if ((q.z - p.z).norm() < near && stratum_order(M, q) == 1) {
          out.push_back(q);
          break;
        }
      } catch (const NumericalError&) {
      }
    }
  }
  return out;
}

std::vector<SurfacePoint> sample_ball(const Manifold& M, const SurfacePoint& center, double radius,
                                      std::size_t count, std::uint64_t seed) {
  const int n = M.n();
  auto gen = stream_engine(seed, 0xba11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<SurfacePoint> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * count + 1000) throw NumericalError("ball sampling did not converge");
    const cvec step = random_direction(gen, n) * (radius * std::pow(unif(gen), 1.0 / (2 * n - 1)));
    try {
      const SurfacePoint q = radial_project(M, center.z + step);
      if ((q.z - center.z).norm() < radius) out.push_back(q);
    } catch (const NumericalError&) {
    }
  }
  return out;
}

void save_samples(const std::string& path, const SampleSet& S, std::uint64_t manifold_hash) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write sample cache " + path);
  const char magic[8] = {'S', 'Z', 'S', 'A', 'M', 'P', '0', '1'};
  os.write(magic, 8);
  const std::uint64_t header[4] = {manifold_hash, S.size(), S.seed, static_cast<std::uint64_t>(S.method)};
  os.write(reinterpret_cast<const char*>(header), sizeof(header));
  const std::uint64_t n = S.points.empty() ? 0 : static_cast<std::uint64_t>(S.points[0].z.size());
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (std::size_t i = 0; i < S.size(); ++i) {
    os.write(reinterpret_cast<const char*>(S.points[i].z.data()), static_cast<std::streamsize>(n * sizeof(cdouble)));
    os.write(reinterpret_cast<const char*>(&S.points[i].residual), sizeof(double));
    os.write(reinterpret_cast<const char*>(&S.weights[i]), sizeof(double));
  }
}

std::optional<SampleSet> load_samples(const std::string& path, std::uint64_t manifold_hash,
                                      std::size_t count, std::uint64_t seed, SampleMethod method) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  char magic[8];
  is.read(magic, 8);
  if (!is || std::string(magic, 8) != "SZSAMP01") return std::nullopt;
  std::uint64_t header[4];
  is.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!is || header[0] != manifold_hash || header[1] != count || header[2] != seed ||
      header[3] != static_cast<std::uint64_t>(method)) {
    return std::nullopt;
  }
  std::uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  SampleSet S;
  S.seed = seed;
  S.method = method;
  S.points.resize(count);
  S.weights.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    S.points[i].z.resize(static_cast<Eigen::Index>(n));
    is.read(reinterpret_cast<char*>(S.points[i].z.data()), static_cast<std::streamsize>(n * sizeof(cdouble)));
    is.read(reinterpret_cast<char*>(&S.points[i].residual), sizeof(double));
    is.read(reinterpret_cast<char*>(&S.weights[i]), sizeof(double));
  }
  if (!is) return std::nullopt;
  return S;
}

}  // namespace szego
