#include "szego/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "szego/errors.hpp"

namespace szego {

namespace {

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return {num, den};
}

cdouble ipow(cdouble x, int k) {
  cdouble r{1.0, 0.0};
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

using Key = std::pair<std::vector<int>, std::vector<int>>;

}  // namespace

Rational Rational::parse(const std::string& text) {
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty rational");
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, 1};
    }
    const std::string a = trim(s.substr(0, slash));
    const std::string b = trim(s.substr(slash + 1));
    const long long p = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const long long q = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return reduced(p, q);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::logic_error&) {
    throw ConfigError("malformed rational coefficient '" + text + "'");
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::lcm(a.den, b.den);
  return reduced(a.num * (g / a.den) + b.num * (g / b.den), g);
}

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num, b.den);
  const std::int64_t g2 = std::gcd(b.num, a.den);
  const std::int64_t d1 = g1 == 0 ? 1 : g1;
  const std::int64_t d2 = g2 == 0 ? 1 : g2;
  return reduced((a.num / d1) * (b.num / d2), (a.den / d2) * (b.den / d1));
}

cdouble monomial(const cvec& z, const std::vector<int>& exps) {
  cdouble r{1.0, 0.0};
  for (std::size_t j = 0; j < exps.size(); ++j) {
    if (exps[j] != 0) r *= ipow(z[static_cast<Eigen::Index>(j)], exps[j]);
  }
  return r;
}

Polynomial::Polynomial(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (static_cast<int>(t.z_exp.size()) != n_ || static_cast<int>(t.zbar_exp.size()) != n_) {
      throw std::invalid_argument("term exponent length does not match dimension " +
                                  std::to_string(n_));
    }
    for (int e : t.z_exp)
      if (e < 0) throw std::invalid_argument("negative exponent in polynomial term");
    for (int e : t.zbar_exp)
      if (e < 0) throw std::invalid_argument("negative exponent in polynomial term");
  }
  normalize();
}

Polynomial Polynomial::constant(int n, Rational c) {
  return Polynomial(n, {Term{c, std::vector<int>(n, 0), std::vector<int>(n, 0)}});
}

Polynomial Polynomial::z(int n, int j) {
  std::vector<int> a(n, 0);
  a[j] = 1;
  return Polynomial(n, {Term{{1, 1}, a, std::vector<int>(n, 0)}});
}

Polynomial Polynomial::zbar(int n, int j) {
  std::vector<int> b(n, 0);
  b[j] = 1;
  return Polynomial(n, {Term{{1, 1}, std::vector<int>(n, 0), b}});
}

void Polynomial::normalize() {
  std::map<Key, Rational> merged;
  for (const auto& t : terms_) {
    auto [it, inserted] = merged.try_emplace(Key{t.z_exp, t.zbar_exp}, t.coeff);
    if (!inserted) it->second = it->second + t.coeff;
  }
  terms_.clear();
  for (const auto& [key, c] : merged) {
    if (c.num != 0) terms_.push_back(Term{c, key.first, key.second});
  }
}

Polynomial Polynomial::conj() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{t.coeff, t.zbar_exp, t.z_exp});
  return Polynomial(n_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Term> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return Polynomial(std::max(n_, other.n_), std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<Term> out = terms_;
  for (auto t : other.terms_) {
    t.coeff.num = -t.coeff.num;
    out.push_back(std::move(t));
  }
  return Polynomial(std::max(n_, other.n_), std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<Term> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Term t{a.coeff * b.coeff, a.z_exp, a.zbar_exp};
      for (int j = 0; j < n_; ++j) {
        t.z_exp[j] += b.z_exp[j];
        t.zbar_exp[j] += b.zbar_exp[j];
      }
      out.push_back(std::move(t));
    }
  }
  return Polynomial(n_, std::move(out));
}

Polynomial Polynomial::pow(int k) const {
  Polynomial r = constant(n_, {1, 1});
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool Polynomial::is_real() const {
  std::map<Key, Rational> lookup;
  for (const auto& t : terms_) lookup.emplace(Key{t.z_exp, t.zbar_exp}, t.coeff);
  for (const auto& t : terms_) {
    auto it = lookup.find(Key{t.zbar_exp, t.z_exp});
    if (it == lookup.end() || !(it->second == t.coeff)) return false;
  }
  return true;
}

cdouble Polynomial::eval(const cvec& z) const {
  const cvec zb = z.conjugate();
  cdouble s{0.0, 0.0};
  for (const auto& t : terms_) s += t.coeff.value() * monomial(z, t.z_exp) * monomial(zb, t.zbar_exp);
  return s;
}

cvec Polynomial::dz(const cvec& z) const {
  const cvec zb = z.conjugate();
  cvec g = cvec::Zero(n_);
  for (const auto& t : terms_) {
    const cdouble tail = t.coeff.value() * monomial(zb, t.zbar_exp);
    for (int j = 0; j < n_; ++j) {
      if (t.z_exp[j] == 0) continue;
      std::vector<int> a = t.z_exp;
      a[j] -= 1;
      g[j] += static_cast<double>(t.z_exp[j]) * monomial(z, a) * tail;
    }
  }
  return g;
}

cvec Polynomial::dzbar(const cvec& z) const {
  const cvec zb = z.conjugate();
  cvec g = cvec::Zero(n_);
  for (const auto& t : terms_) {
    const cdouble head = t.coeff.value() * monomial(z, t.z_exp);
    for (int j = 0; j < n_; ++j) {
      if (t.zbar_exp[j] == 0) continue;
      std::vector<int> b = t.zbar_exp;
      b[j] -= 1;
      g[j] += static_cast<double>(t.zbar_exp[j]) * head * monomial(zb, b);
    }
  }
  return g;
}

cmat Polynomial::dz_dzbar(const cvec& z) const {
  const cvec zb = z.conjugate();
  cmat h = cmat::Zero(n_, n_);
  for (const auto& t : terms_) {
    for (int j = 0; j < n_; ++j) {
      if (t.z_exp[j] == 0) continue;
      std::vector<int> a = t.z_exp;
      a[j] -= 1;
      const cdouble za = monomial(z, a);
      for (int k = 0; k < n_; ++k) {
        if (t.zbar_exp[k] == 0) continue;
        std::vector<int> b = t.zbar_exp;
        b[k] -= 1;
        h(j, k) += t.coeff.value() * static_cast<double>(t.z_exp[j] * t.zbar_exp[k]) * za *
                   monomial(zb, b);
      }
    }
  }
  return h;
}

int Polynomial::orbit_degree(const Term& t, const std::vector<int>& weights) {
  int d = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) d += (t.z_exp[j] - t.zbar_exp[j]) * weights[j];
  return d;
}

std::string Polynomial::canonical() const {
  std::ostringstream os;
  os << "n=" << n_;
  for (const auto& t : terms_) {
    os << ";" << t.coeff.str() << ":";
    for (int e : t.z_exp) os << e << ",";
    os << "|";
    for (int e : t.zbar_exp) os << e << ",";
  }
  return os.str();
}

}  // namespace szego
