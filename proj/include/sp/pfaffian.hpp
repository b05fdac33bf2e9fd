#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sp/errors.hpp"
#include "sp/matrix.hpp"
#include "sp/multipoly.hpp"

namespace sp {

template <class T>
using SquareArray = std::vector<std::vector<T>>;

inline bool is_zero_scalar(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero_scalar(const MultiPoly& x) { return x.is_zero(); }

/// Pfaffians of principal submatrices, memoized on index subsets.
/// Entries may be Rational or MultiPoly.
template <class T>
class PfaffianTable {
 public:
  explicit PfaffianTable(SquareArray<T> a) : a_(std::move(a)) {
    const int n = size();
    if (n > 30) throw DimensionMismatch("Pfaffian table supports at most 30 indices");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(a_[i].size()) != n) throw DimensionMismatch("Pfaffian of non-square array");
      if (!is_zero_scalar(a_[i][i])) throw NonSkew("nonzero diagonal entry");
      for (int j = i + 1; j < n; ++j)
        if (!is_zero_scalar(a_[i][j] + a_[j][i])) throw NonSkew("matrix is not skew-symmetric");
    }
  }

  int size() const { return static_cast<int>(a_.size()); }
  uint32_t full_mask() const { return size() == 0 ? 0u : static_cast<uint32_t>((uint64_t{1} << size()) - 1); }

  /// Pfaffian of the submatrix on the indices in mask (first-row expansion).
  const T& pf(uint32_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    T value = T(Rational(0));
    const int cnt = __builtin_popcount(mask);
    if (cnt == 0) {
      value = T(Rational(1));
    } else if (cnt % 2 == 0) {
      const int i = __builtin_ctz(mask);
      const uint32_t rest = mask & ~(1u << i);
      int k = 0;
      for (int j = i + 1; j < size(); ++j) {
        if (!(rest & (1u << j))) continue;
        ++k;
        if (is_zero_scalar(a_[i][j])) continue;
        const T sub = pf(rest & ~(1u << j));
        if (is_zero_scalar(sub)) continue;
        T term = a_[i][j] * sub;
        if (k % 2 == 1)
          value += term;
        else
          value -= term;
      }
    }
    return memo_.emplace(mask, std::move(value)).first->second;
  }

  T pfaffian() { return pf(full_mask()); }

  /// A_i of the skew-kernel convention: pf with row and column i removed (0-based i).
  T minor1(int i) { return pf(full_mask() & ~(1u << i)); }

  /// A_ij with A_ji = -A_ij and A_ii = 0 (0-based indices).
  T minor2(int i, int j) {
    if (i == j) return T(Rational(0));
    const T v = pf(full_mask() & ~(1u << i) & ~(1u << j));
    return i < j ? v : T(-v);
  }

 private:
  SquareArray<T> a_;
  std::unordered_map<uint32_t, T> memo_;
};

template <class T>
T pfaffian(const SquareArray<T>& a) {
  PfaffianTable<T> t(a);
  return t.pfaffian();
}

Rational pfaffian(const RatMatrix& a);
SquareArray<Rational> to_array(const RatMatrix& a);

/// Result of the closed-form kernel description of a skew matrix.
struct SkewKernel {
  int kernel_dim = 0;
  std::vector<Vec> basis;
  /// Odd size: A_i for every i. Even size: A_ij for i<j, row-major over pairs.
  std::vector<Rational> sub_pfaffians;
  Rational pf = 0;
  bool agrees_with_nullspace = false;
};

/// Kernel of a skew matrix via sub-Pfaffians, cross-checked against kernel_basis.
/// Throws DegenerateBranch when every relevant sub-Pfaffian vanishes.
SkewKernel skew_kernel(const RatMatrix& a);

/// The vectors v_i = ((-1)^j A_ij)_j of the even case (0-based i; signs use 1-based j).
std::vector<Vec> even_kernel_vectors(const RatMatrix& a);

}  // namespace sp
