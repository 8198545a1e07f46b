#include "szego/manifold.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "szego/errors.hpp"

namespace szego {

WeightVector::WeightVector(std::vector<int> raw) : w_(std::move(raw)) {
  if (w_.empty()) throw ConfigError("weight vector is empty");
  int g = 0;
  for (int m : w_) {
    if (m < 1) throw ConfigError("weights must be positive integers, got " + std::to_string(m));
    g = std::gcd(g, m);
  }
  divisor_ = g;
  for (int& m : w_) m /= g;
}

bool WeightVector::all_ones() const {
  for (int m : w_)
    if (m != 1) return false;
  return true;
}

long long WeightVector::lcm() const {
  long long l = 1;
  for (int m : w_) l = std::lcm(l, static_cast<long long>(m));
  return l;
}

long long WeightVector::product() const {
  long long p = 1;
  for (int m : w_) p *= m;
  return p;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Manifold Manifold::make(const ManifoldDescription& desc) {
  if (desc.n < 2) throw ConfigError("ambient dimension n must be at least 2");
  if (static_cast<int>(desc.weights.size()) != desc.n) {
    throw ConfigError("expected " + std::to_string(desc.n) + " weights, got " +
                      std::to_string(desc.weights.size()));
  }
  if (desc.rho.dimension() != desc.n) throw ConfigError("defining function dimension mismatch");
  if (desc.rho.terms().empty()) throw ConfigError("defining function is zero");
  if (!(desc.surface_tolerance > 0.0)) throw ConfigError("surface tolerance must be positive");

  Manifold M;
  M.n_ = desc.n;
  M.weights_ = WeightVector(desc.weights);
  M.rho_ = desc.rho;
  M.kind_ = desc.kind;
  M.tol_ = desc.surface_tolerance;
  M.name_ = desc.name;
  if (M.weights_.divisor() > 1) {
    std::ostringstream os;
    os << "weights had common divisor " << M.weights_.divisor() << "; normalized to (";
    for (std::size_t j = 0; j < M.weights_.size(); ++j) os << (j ? "," : "") << M.weights_[j];
    os << ")";
    M.warnings_.push_back(os.str());
  }

  // Invariance: every term must have weighted orbit degree zero. Dividing the
  // weights by their gcd does not change which terms vanish.
  for (const auto& t : M.rho_.terms()) {
    if (Polynomial::orbit_degree(t, M.weights_.values()) != 0) {
      std::ostringstream os;
      os << "defining function is not invariant under the action: term " << t.coeff.str() << "·z^(";
      for (int j = 0; j < M.n_; ++j) os << (j ? "," : "") << t.z_exp[j];
      os << ")·z̄^(";
      for (int j = 0; j < M.n_; ++j) os << (j ? "," : "") << t.zbar_exp[j];
      os << ") has orbit degree " << Polynomial::orbit_degree(t, M.weights_.values());
      throw ConfigError(os.str());
    }
  }
  if (!M.rho_.is_real()) throw ConfigError("defining function is not real-valued");
  return M;
}

SurfacePoint Manifold::point(const cvec& z) const {
  SurfacePoint p = point_unchecked(z);
  if (!(p.residual <= tol_)) {
    throw PreconditionError("point is not on the manifold: |rho| = " + std::to_string(p.residual));
  }
  return p;
}

SurfacePoint Manifold::point_unchecked(const cvec& z) const {
  if (z.size() != n_) throw PreconditionError("point has wrong dimension");
  return SurfacePoint{z, std::abs(rho_at(z))};
}

double Manifold::sphere_area() const {
  return 2.0 * std::pow(std::numbers::pi, n_) / std::tgamma(static_cast<double>(n_));
}

std::uint64_t Manifold::hash() const {
  std::ostringstream os;
  os << (is_sphere() ? "sphere" : "hypersurface") << "|w=";
  for (int m : weights_.values()) os << m << ",";
  os << "|" << rho_.canonical();
  return fnv1a(os.str());
}

nlohmann::json Manifold::to_json() const {
  return {{"n", n_},
          {"weights", weights_.values()},
          {"kind", is_sphere() ? "sphere" : "hypersurface"},
          {"name", name_},
          {"rho", polynomial_to_json(rho_)}};
}

Manifold make_sphere(int n, std::vector<int> weights) {
  if (weights.empty()) weights.assign(static_cast<std::size_t>(std::max(n, 0)), 1);
  if (n < 2) throw ConfigError("sphere needs n >= 2");
  Polynomial rho = Polynomial::constant(n, {-1, 1});
  for (int j = 0; j < n; ++j) rho = rho + Polynomial::z(n, j) * Polynomial::zbar(n, j);
  ManifoldDescription d;
  d.n = n;
  d.weights = std::move(weights);
  d.rho = rho;
  d.kind = ManifoldKind::UnitSphere;
  d.name = "sphere";
  return Manifold::make(d);
}

Manifold make_example2() {
  const int n = 3;
  auto z = [](int j) { return Polynomial::z(3, j); };
  auto zb = [](int j) { return Polynomial::zbar(3, j); };
  const Polynomial p = z(0) * z(0) + z(1);
  const Polynomial q = z(1) * z(1) * z(1) + z(2);
  Polynomial rho = z(0) * zb(0) + z(1) * zb(1) + z(2) * zb(2) + (p * p.conj()).pow(2) +
                   (q * q.conj()).pow(3) - Polynomial::constant(n, {1, 1});
  ManifoldDescription d;
  d.n = n;
  d.weights = {1, 2, 6};
  d.rho = rho;
  d.kind = ManifoldKind::Hypersurface;
  d.name = "example2";
  return Manifold::make(d);
}

Manifold make_preset(const std::string& name, int n, std::vector<int> weights) {
  if (name == "sphere") return make_sphere(n, std::move(weights));
  if (name == "example2") return make_example2();
  throw ConfigError("unknown preset '" + name + "' (expected sphere or example2)");
}

Polynomial parse_polynomial(int n, const nlohmann::json& terms) {
  if (!terms.is_array()) throw ConfigError("polynomial must be an array of terms");
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("z_exponents") ||
        !t.contains("zbar_exponents")) {
      throw ConfigError("each term needs coeff, z_exponents and zbar_exponents");
    }
    Term term;
    try {
      const auto& c = t.at("coeff");
      term.coeff = Rational::parse(c.is_string() ? c.get<std::string>() : c.dump());
      term.z_exp = t.at("z_exponents").get<std::vector<int>>();
      term.zbar_exp = t.at("zbar_exponents").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad polynomial term: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    out.push_back(std::move(term));
  }
  try {
    return Polynomial(n, std::move(out));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json polynomial_to_json(const Polynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    arr.push_back({{"coeff", t.coeff.str()}, {"z_exponents", t.z_exp}, {"zbar_exponents", t.zbar_exp}});
  }
  return arr;
}

ManifoldDescription parse_manifold_description(const nlohmann::json& doc) {
  ManifoldDescription d;
  try {
    d.n = doc.at("n").get<int>();
    d.weights = doc.at("weights").get<std::vector<int>>();
    const std::string kind = doc.value("kind", std::string("hypersurface"));
    if (kind == "sphere") {
      d.kind = ManifoldKind::UnitSphere;
    } else if (kind == "hypersurface") {
      d.kind = ManifoldKind::Hypersurface;
    } else {
      throw ConfigError("kind must be 'sphere' or 'hypersurface', got '" + kind + "'");
    }
    d.surface_tolerance = doc.value("surface_tolerance", 1e-9);
    d.name = doc.value("name", std::string("custom"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad manifold description: ") + e.what());
  }
  if (!doc.contains("rho")) throw ConfigError("manifold description lacks 'rho'");
  d.rho = parse_polynomial(d.n, doc.at("rho"));
  if (d.kind == ManifoldKind::UnitSphere) {
    // The sphere kind is only meaningful for ρ = |z|² − 1.
    Polynomial unit = Polynomial::constant(d.n, {-1, 1});
    for (int j = 0; j < d.n; ++j) unit = unit + Polynomial::z(d.n, j) * Polynomial::zbar(d.n, j);
    if (unit.canonical() != d.rho.canonical()) {
      throw ConfigError("kind 'sphere' requires rho = |z|^2 - 1");
    }
  }
  return d;
}

}  // namespace szego
