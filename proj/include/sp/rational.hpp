#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sp {

/// Exact rational scalar; GMP keeps every value canonical after arithmetic.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r);
Rational factorial(int n);

/// Weight in (1/2)Z stored as twice its value.
struct HalfWeight {
  int twice_value = 0;

  constexpr HalfWeight() = default;
  constexpr explicit HalfWeight(int twice) : twice_value(twice) {}
  static constexpr HalfWeight integer(int w) { return HalfWeight(2 * w); }

  constexpr bool is_integer() const { return twice_value % 2 == 0; }
  constexpr bool is_half_odd() const { return twice_value % 2 != 0; }
  Rational value() const { return rat(twice_value, 2); }

  constexpr HalfWeight operator+(HalfWeight o) const { return HalfWeight(twice_value + o.twice_value); }
  constexpr HalfWeight operator-(HalfWeight o) const { return HalfWeight(twice_value - o.twice_value); }
  constexpr HalfWeight operator-() const { return HalfWeight(-twice_value); }
  constexpr auto operator<=>(const HalfWeight&) const = default;

  std::string str() const;
};

/// Dense vector helpers.
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& c, const Vec& v);
Rational dot(const Vec& a, const Vec& b);

/// Seeded source of small random rationals: numerators in [-20, 20], denominators in [1, 7].
class RationalRng {
 public:
  explicit RationalRng(uint64_t seed) : gen_(seed) {}
  Rational next();
  /// Nonzero variant of next().
  Rational next_nonzero();
  int next_int(int lo, int hi);

 private:
  std::mt19937_64 gen_;
};

}  // namespace sp
