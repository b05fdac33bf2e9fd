#pragma once
// Seeded case generators and independent oracles shared by the unit suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "sp/matrix.hpp"
#include "sp/multipoly.hpp"
#include "sp/symbol.hpp"

namespace spt {

using sp::RatMatrix;
using sp::Rational;
using sp::Vec;

class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Rational small() { return Rational(integer(-9, 9)); }
  Rational fraction() {
    Rational r(integer(-20, 20), integer(1, 7));
    r.canonicalize();
    return r;
  }
  bool coin() { return integer(0, 1) == 1; }

  RatMatrix skew(int n, int lo = -9, int hi = 9) {
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a(i, j) = Rational(integer(lo, hi));
        a(j, i) = -a(i, j);
      }
    return a;
  }

  RatMatrix matrix(int r, int c) {
    RatMatrix a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a(i, j) = fraction();
    return a;
  }

  /// Matrix of given rank as a product of random r x k and k x c factors.
  RatMatrix low_rank(int r, int c, int k) {
    return matrix(r, k) * matrix(k, c);
  }

  Vec vec(int n) {
    Vec v(n);
    for (auto& x : v) x = fraction();
    return v;
  }

  sp::MultiPoly poly(int nvars, int max_deg, int terms) {
    sp::MultiPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
      sp::Exponent e(nvars);
      int left = integer(0, max_deg);
      for (int i = 0; i < nvars && left > 0; ++i) {
        const int d = integer(0, left);
        e[i] = d;
        left -= d;
      }
      p.add_term(e, fraction());
    }
    return p;
  }

  /// Random symbol with at most max_two two-row components and optionally one one-row component.
  sp::FlagSymbol symbol(int max_dim, int max_s = 4) {
    for (;;) {
      std::vector<sp::SymbolComponent> comps;
      const int two = integer(0, 2);
      for (int i = 0; i < two; ++i) {
        const int s = integer(0, max_s);
        comps.push_back(sp::SymbolComponent::two_row(s, integer(0, 2 * s)));
      }
      if (comps.empty() || coin()) comps.push_back(sp::SymbolComponent::one_row(2 * integer(0, 4) + 1));
      sp::FlagSymbol s(comps);
      if (s.dim() <= max_dim) return s;
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// Determinant by permutation expansion.
inline Rational det_by_permutations(const RatMatrix& a) {
  const int n = a.rows();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational sum = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n && term != 0; ++i) term *= a(i, p[i]);
    sum += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

/// Pfaffian as a signed sum over perfect matchings (crossing-number sign).
inline Rational pfaffian_by_matchings(const RatMatrix& a) {
  const int n = a.rows();
  if (n % 2) return 0;
  Rational total = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    int i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      int crossings = 0;
      for (size_t x = 0; x < pairs.size(); ++x)
        for (size_t y = 0; y < pairs.size(); ++y) {
          const auto [a1, b1] = pairs[x];
          const auto [a2, b2] = pairs[y];
          if (a1 < a2 && a2 < b1 && b1 < b2) ++crossings;
        }
      Rational term = crossings % 2 ? -1 : 1;
      for (const auto& [u, v] : pairs) term *= a(u, v);
      total += term;
      return;
    }
    used[i] = 1;
    for (int j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      pairs.emplace_back(i, j);
      self(self);
      pairs.pop_back();
      used[j] = 0;
    }
    used[i] = 0;
  };
  rec(rec);
  return total;
}

/// Rank by plain Gauss-Jordan elimination over the rationals.
inline int rank_by_gauss(std::vector<Vec> rows) {
  int r = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (int k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

inline int rank_by_gauss(const RatMatrix& m) {
  std::vector<Vec> rows;
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rank_by_gauss(rows);
}

/// Subspace equality by rank of the stacked families.
inline bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  std::vector<Vec> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const int r = rank_by_gauss(both);
  return r == rank_by_gauss(a) && r == rank_by_gauss(b);
}

/// Bracket [a, b] of two matrices as an independent oracle for commutator checks.
inline RatMatrix bracket(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

/// Every symbol built from D(s,l) with s <= max_s plus at most one R(m), with dim X <= max_dim.
inline std::vector<sp::FlagSymbol> symbol_sweep(int max_dim, int max_s, bool finite_only) {
  std::vector<sp::SymbolComponent> pieces;
  for (int s = 0; s <= max_s; ++s)
    for (int l = 0; l <= 2 * s; ++l)
      if (2 * (l + 1) <= max_dim) pieces.push_back(sp::SymbolComponent::two_row(s, l));
  std::vector<sp::FlagSymbol> out;
  std::vector<std::vector<sp::SymbolComponent>> stack{{}};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    int dim = 0;
    for (const auto& c : cur) dim += c.dim();
    for (int m2 = -1; m2 < max_dim; m2 += 2) {
      auto full = cur;
      if (m2 > 0) full.push_back(sp::SymbolComponent::one_row(m2));
      if (full.empty()) continue;
      sp::FlagSymbol s(full);
      if (s.dim() <= max_dim && (!finite_only || sp::classify_finiteness(s).finite)) out.push_back(s);
    }
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (!cur.empty() && pieces[i] < cur.back()) continue;
      if (dim + pieces[i].dim() > max_dim) continue;
      auto next = cur;
      next.push_back(pieces[i]);
      stack.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(), [](const sp::FlagSymbol& a, const sp::FlagSymbol& b) { return a.str() < b.str(); });
  return out;
}

}  // namespace spt
