#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sp/rational.hpp"

namespace sp {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<Vec>& rows, int cols = -1);
  static RatMatrix from_columns(const std::vector<Vec>& cols, int rows = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  Vec flatten() const { return data_; }
  static RatMatrix unflatten(const Vec& v, int rows, int cols);

  RatMatrix transpose() const;
  bool is_zero() const;
  bool is_skew() const;
  bool is_square() const { return rows_ == cols_; }

  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator-() const;
  Vec operator*(const Vec& v) const;
  friend RatMatrix operator*(const Rational& c, const RatMatrix& m);
  bool operator==(const RatMatrix& o) const;

  std::string str() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  Vec data_;
};

/// [a,b] = ab - ba.
RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);

/// Fraction-free (Bareiss) echelon form; returns the pivot columns.
struct BareissResult {
  std::vector<std::vector<mpz_class>> echelon;
  std::vector<int> pivots;
  int swaps = 0;
};
BareissResult bareiss(const RatMatrix& m);

int rank(const RatMatrix& m);
std::vector<Vec> kernel_basis(const RatMatrix& m);
Rational determinant(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Sparse row with strictly increasing column indices and nonzero values.
using SparseRow = std::vector<std::pair<int, Rational>>;
SparseRow to_sparse(const Vec& v);

/// Incrementally maintained reduced row echelon form over sparse rows.
class SparseRref {
 public:
  explicit SparseRref(int cols);

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Inserts a row; returns true when it was independent of the rows already present.
  bool add(const SparseRow& r);
  bool add(const Vec& v) { return add(to_sparse(v)); }
  /// Remainder of r after reduction (empty iff r lies in the row span).
  SparseRow reduce(const SparseRow& r);
  bool contains(const Vec& v) { return reduce(to_sparse(v)).empty(); }

  std::vector<Vec> kernel() const;
  std::vector<int> pivots() const;
  const std::vector<SparseRow>& rows() const { return rows_; }

 private:
  void reduce_in_place(SparseRow& r);

  int cols_;
  std::vector<SparseRow> rows_;
  std::vector<int> pivot_row_;
  std::vector<Rational> work_;
  std::vector<char> touched_;
};

/// Kernel of a system given as sparse rows (the route used for large Leibniz systems).
std::vector<Vec> sparse_kernel(const std::vector<SparseRow>& rows, int cols);

/// Span utilities on dense vectors of a common length.
int span_rank(const std::vector<Vec>& vs);
std::vector<int> independent_indices(const std::vector<Vec>& vs);
std::vector<Vec> independent_subset(const std::vector<Vec>& vs);
bool span_contains(const std::vector<Vec>& basis, const Vec& v);
bool span_contains_all(const std::vector<Vec>& basis, const std::vector<Vec>& vs);
bool spans_equal(const std::vector<Vec>& a, const std::vector<Vec>& b);
std::vector<Vec> intersect_spans(const std::vector<Vec>& a, const std::vector<Vec>& b, int dim);

/// Coordinates of vectors with respect to a fixed independent family.
class CoordinateSolver {
 public:
  CoordinateSolver() : rref_(0) {}
  explicit CoordinateSolver(const std::vector<Vec>& basis);
  std::optional<Vec> coords(const Vec& v) const;
  int size() const { return static_cast<int>(basis_.size()); }
  int dim() const { return dim_; }

 private:
  std::vector<Vec> basis_;
  int dim_ = 0;
  SparseRref rref_;
};

}  // namespace sp
