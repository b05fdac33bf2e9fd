#include "sp/rational.hpp"

#include <stdexcept>

namespace sp {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

std::string HalfWeight::str() const {
  if (is_integer()) return std::to_string(twice_value / 2);
  return std::to_string(twice_value) + "/2";
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Rational& c, const Vec& v) {
  Vec r(v.size());
  if (sgn(c) == 0) return r;
  for (size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) r[i] = c * v[i];
  return r;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

Rational RationalRng::next() {
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 7);
  const long n = num(gen_);
  return rat(n, den(gen_));
}

Rational RationalRng::next_nonzero() {
  Rational r = next();
  while (r == 0) r = next();
  return r;
}

int RationalRng::next_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

}  // namespace sp
