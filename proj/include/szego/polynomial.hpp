// Polynomials in (z, z̄) on ℂⁿ with Wirtinger derivatives.
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace szego {

using cdouble = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

/// Exact rational coefficient p/q with q > 0, reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational parse(const std::string& text);
  std::string str() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);

/// One term coeff · z^a · z̄^b.
struct Term {
  Rational coeff;
  std::vector<int> z_exp;
  std::vector<int> zbar_exp;
};

/// Sparse polynomial in z and z̄ with rational coefficients. Terms are kept
/// merged and sorted so that equal polynomials have identical term lists.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int n, std::vector<Term> terms);

  static Polynomial constant(int n, Rational c);
  static Polynomial z(int n, int j);
  static Polynomial zbar(int n, int j);

  int dimension() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  Polynomial conj() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial pow(int k) const;

  /// True when the coefficient of z^a z̄^b equals that of z^b z̄^a for every term.
  bool is_real() const;

  cdouble eval(const cvec& z) const;
  /// ∂p/∂z_j at z, j = 0..n-1.
  cvec dz(const cvec& z) const;
  /// ∂p/∂z̄_j at z.
  cvec dzbar(const cvec& z) const;
  /// H(j,k) = ∂²p/∂z_j∂z̄_k at z.
  cmat dz_dzbar(const cvec& z) const;

  /// Weighted orbit degree ⟨a,w⟩ − ⟨b,w⟩ of a single term.
  static int orbit_degree(const Term& t, const std::vector<int>& weights);

  /// Stable textual form, used for hashing.
  std::string canonical() const;

 private:
  void normalize();

  int n_ = 0;
  std::vector<Term> terms_;
};

/// Product Π z_j^{e_j} evaluated with repeated multiplication.
cdouble monomial(const cvec& z, const std::vector<int>& exps);

}  // namespace szego
