#pragma once

#include <map>
#include <string>
#include <vector>

#include "sp/rational.hpp"

namespace sp {

using Exponent = std::vector<int>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// A polynomial with zero variables is a constant and combines with any ring.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}
  MultiPoly(const Rational& c);  // NOLINT: constants convert implicitly

  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int i);
  static MultiPoly monomial(const Exponent& e, const Rational& c = 1);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;
  bool is_homogeneous(int d) const;
  Rational coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const Rational& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator*(const Rational& c, const MultiPoly& p);
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  Rational eval(const Vec& point) const;
  MultiPoly derivative(int i) const;
  MultiPoly pow(int k) const;
  /// Replaces variable i by images[i]; all images must share one ring.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  MultiPoly promoted(int n) const;

  int nvars_ = 0;
  Terms terms_;
};

/// All exponent vectors of total degree d in n variables, in grlex order.
std::vector<Exponent> monomials_of_degree(int n, int d);

/// Coefficient vector of a homogeneous polynomial against a monomial list.
Vec coefficient_vector(const MultiPoly& p, const std::vector<Exponent>& monos);
MultiPoly from_coefficients(const Vec& c, const std::vector<Exponent>& monos);

}  // namespace sp
