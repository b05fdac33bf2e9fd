#include "sp/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sp/errors.hpp"

namespace sp {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DimensionMismatch("ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<Vec>& rows, int cols) {
  if (cols < 0) cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  RatMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw DimensionMismatch("row length");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<Vec>& cols, int rows) {
  if (rows < 0) rows = cols.empty() ? 0 : static_cast<int>(cols[0].size());
  RatMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols_; ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw DimensionMismatch("column length");
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

RatMatrix RatMatrix::unflatten(const Vec& v, int rows, int cols) {
  if (static_cast<int>(v.size()) != rows * cols) throw DimensionMismatch("unflatten");
  RatMatrix m(rows, cols);
  m.data_ = v;
  return m;
}

Vec RatMatrix::row(int i) const {
  return Vec(data_.begin() + static_cast<long>(i) * cols_, data_.begin() + static_cast<long>(i + 1) * cols_);
}

Vec RatMatrix::col(int j) const {
  Vec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_zero() const { return sp::is_zero(data_); }

bool RatMatrix::is_skew() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix +");
  RatMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix -");
  RatMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
  return r;
}

RatMatrix RatMatrix::operator-() const {
  RatMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
  return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix *");
  RatMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Rational& b = o(k, j);
        if (sgn(b) != 0) r(i, j) += a * b;
      }
    }
  return r;
}

Vec RatMatrix::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix * vector");
  Vec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) != 0 && sgn(v[k]) != 0) r[i] += a * v[k];
    }
  return r;
}

RatMatrix operator*(const Rational& c, const RatMatrix& m) {
  RatMatrix r(m.rows_, m.cols_);
  for (size_t k = 0; k < m.data_.size(); ++k) r.data_[k] = c * m.data_[k];
  return r;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string RatMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

BareissResult bareiss(const RatMatrix& m) {
  BareissResult res;
  const int nr = m.rows(), nc = m.cols();
  auto& e = res.echelon;
  e.assign(nr, std::vector<mpz_class>(nc));
  for (int i = 0; i < nr; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < nc; ++j) {
      const mpz_class& d = m(i, j).get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (int j = 0; j < nc; ++j) {
      const Rational& x = m(i, j);
      if (sgn(x) != 0) e[i][j] = x.get_num() * (l / x.get_den());
    }
  }
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int p = -1;
    for (int i = r; i < nr; ++i)
      if (sgn(e[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) {
      std::swap(e[p], e[r]);
      ++res.swaps;
    }
    const mpz_class piv = e[r][c];
    for (int i = r + 1; i < nr; ++i) {
      const mpz_class f = e[i][c];
      for (int j = c + 1; j < nc; ++j) {
        e[i][j] = piv * e[i][j] - f * e[r][j];
        if (prev != 1) mpz_divexact(e[i][j].get_mpz_t(), e[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      e[i][c] = 0;
    }
    prev = piv;
    res.pivots.push_back(c);
    ++r;
  }
  e.resize(r);
  return res;
}

int rank(const RatMatrix& m) { return static_cast<int>(bareiss(m).pivots.size()); }

std::vector<Vec> kernel_basis(const RatMatrix& m) {
  const int nc = m.cols();
  BareissResult b = bareiss(m);
  std::vector<char> is_pivot(nc, 0);
  for (int p : b.pivots) is_pivot[p] = 1;
  std::vector<Vec> out;
  for (int f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    Vec x(nc);
    x[f] = 1;
    for (int r = static_cast<int>(b.pivots.size()) - 1; r >= 0; --r) {
      const int p = b.pivots[r];
      Rational s = 0;
      for (int j = p + 1; j < nc; ++j)
        if (sgn(b.echelon[r][j]) != 0 && sgn(x[j]) != 0) s += Rational(b.echelon[r][j]) * x[j];
      x[p] = -s / Rational(b.echelon[r][p]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  BareissResult b = bareiss(m);
  if (static_cast<int>(b.pivots.size()) < n) return 0;
  Rational d(b.echelon[n - 1][n - 1]);
  if (b.swaps % 2) d = -d;
  // undo the per-row denominator clearing
  for (int i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < n; ++j) {
      const mpz_class& den = m(i, j).get_den();
      if (den != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    d /= Rational(l);
  }
  return d;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const int n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (sgn(a(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) return std::nullopt;
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c);
      for (int j = 0; j < n; ++j) {
        if (sgn(a(c, j)) != 0) a(i, j) -= f * a(c, j);
        if (sgn(inv(c, j)) != 0) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

SparseRow to_sparse(const Vec& v) {
  SparseRow r;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (sgn(v[i]) != 0) r.emplace_back(i, v[i]);
  return r;
}

SparseRref::SparseRref(int cols) : cols_(cols), pivot_row_(cols, -1), work_(cols), touched_(cols, 0) {}

void SparseRref::reduce_in_place(SparseRow& r) {
  bool hits = false;
  for (const auto& [c, v] : r)
    if (pivot_row_[c] >= 0) {
      hits = true;
      break;
    }
  if (!hits) return;
  std::vector<int> cols_used;
  for (const auto& [c, v] : r) {
    work_[c] = v;
    touched_[c] = 1;
    cols_used.push_back(c);
  }
  for (const auto& [c, v0] : r) {
    const int pr = pivot_row_[c];
    if (pr < 0) continue;
    const Rational f = v0;  // pivot rows vanish on other pivot columns
    for (const auto& [cc, vv] : rows_[pr]) {
      if (!touched_[cc]) {
        touched_[cc] = 1;
        cols_used.push_back(cc);
        work_[cc] = 0;
      }
      work_[cc] -= f * vv;
    }
  }
  std::sort(cols_used.begin(), cols_used.end());
  SparseRow out;
  for (int c : cols_used) {
    if (sgn(work_[c]) != 0) out.emplace_back(c, work_[c]);
    work_[c] = 0;
    touched_[c] = 0;
  }
  r.swap(out);
}

SparseRow SparseRref::reduce(const SparseRow& r) {
  SparseRow x = r;
  reduce_in_place(x);
  return x;
}

bool SparseRref::add(const SparseRow& r0) {
  SparseRow r = r0;
  reduce_in_place(r);
  if (r.empty()) return false;
  const int p = r.front().first;
  const Rational lead = r.front().second;
  if (lead != 1)
    for (auto& e : r) e.second /= lead;
  for (auto& row : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), p, [](const auto& e, int c) { return e.first < c; });
    if (it == row.end() || it->first != p) continue;
    const Rational f = it->second;
    SparseRow merged;
    merged.reserve(row.size() + r.size());
    size_t a = 0, b = 0;
    while (a < row.size() || b < r.size()) {
      if (b == r.size() || (a < row.size() && row[a].first < r[b].first)) {
        merged.push_back(row[a++]);
      } else if (a == row.size() || r[b].first < row[a].first) {
        merged.emplace_back(r[b].first, -f * r[b].second);
        ++b;
      } else {
        Rational v = row[a].second - f * r[b].second;
        if (sgn(v) != 0) merged.emplace_back(row[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    row.swap(merged);
  }
  pivot_row_[p] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

std::vector<int> SparseRref::pivots() const {
  std::vector<int> p;
  for (const auto& r : rows_) p.push_back(r.front().first);
  return p;
}

std::vector<Vec> SparseRref::kernel() const {
  std::vector<int> free_index(cols_, -1);
  int nfree = 0;
  for (int c = 0; c < cols_; ++c)
    if (pivot_row_[c] < 0) free_index[c] = nfree++;
  std::vector<Vec> out(nfree, Vec(cols_));
  for (int c = 0; c < cols_; ++c)
    if (free_index[c] >= 0) out[free_index[c]][c] = 1;
  for (const auto& row : rows_) {
    const int p = row.front().first;
    for (const auto& [c, v] : row)
      if (c != p && free_index[c] >= 0) out[free_index[c]][p] = -v;
  }
  return out;
}

std::vector<Vec> sparse_kernel(const std::vector<SparseRow>& rows, int cols) {
  SparseRref r(cols);
  for (const auto& row : rows) r.add(row);
  return r.kernel();
}

int span_rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  SparseRref r(static_cast<int>(vs[0].size()));
  for (const auto& v : vs) r.add(v);
  return r.rank();
}

std::vector<int> independent_indices(const std::vector<Vec>& vs) {
  std::vector<int> idx;
  if (vs.empty()) return idx;
  SparseRref r(static_cast<int>(vs[0].size()));
  for (int i = 0; i < static_cast<int>(vs.size()); ++i)
    if (r.add(vs[i])) idx.push_back(i);
  return idx;
}

std::vector<Vec> independent_subset(const std::vector<Vec>& vs) {
  std::vector<Vec> out;
  for (int i : independent_indices(vs)) out.push_back(vs[i]);
  return out;
}

bool span_contains(const std::vector<Vec>& basis, const Vec& v) {
  if (is_zero(v)) return true;
  if (basis.empty()) return false;
  SparseRref r(static_cast<int>(v.size()));
  for (const auto& b : basis) r.add(b);
  return r.contains(v);
}

bool span_contains_all(const std::vector<Vec>& basis, const std::vector<Vec>& vs) {
  if (vs.empty()) return true;
  SparseRref r(static_cast<int>(vs[0].size()));
  for (const auto& b : basis) r.add(b);
  for (const auto& v : vs)
    if (!r.contains(v)) return false;
  return true;
}

bool spans_equal(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  return span_contains_all(a, b) && span_contains_all(b, a);
}

std::vector<Vec> intersect_spans(const std::vector<Vec>& a, const std::vector<Vec>& b, int dim) {
  std::vector<Vec> ai = independent_subset(a), bi = independent_subset(b);
  if (ai.empty() || bi.empty()) return {};
  const int na = static_cast<int>(ai.size()), nb = static_cast<int>(bi.size());
  std::vector<SparseRow> rows;
  for (int i = 0; i < dim; ++i) {
    SparseRow r;
    for (int j = 0; j < na; ++j)
      if (sgn(ai[j][i]) != 0) r.emplace_back(j, ai[j][i]);
    for (int j = 0; j < nb; ++j)
      if (sgn(bi[j][i]) != 0) r.emplace_back(na + j, -bi[j][i]);
    if (!r.empty()) rows.push_back(std::move(r));
  }
  std::vector<Vec> out;
  for (const auto& k : sparse_kernel(rows, na + nb)) {
    Vec v(dim);
    for (int j = 0; j < na; ++j)
      if (sgn(k[j]) != 0) v = v + k[j] * ai[j];
    out.push_back(std::move(v));
  }
  return independent_subset(out);
}

CoordinateSolver::CoordinateSolver(const std::vector<Vec>& basis)
    : basis_(basis), dim_(basis.empty() ? 0 : static_cast<int>(basis[0].size())),
      rref_(dim_ + static_cast<int>(basis.size())) {
  const int m = static_cast<int>(basis.size());
  for (int i = 0; i < m; ++i) {
    SparseRow r = to_sparse(basis[i]);
    if (r.empty()) throw DimensionMismatch("coordinate basis contains zero vector");
    r.emplace_back(dim_ + i, 1);
    rref_.add(r);
  }
  for (const auto& row : rref_.rows())
    if (row.front().first >= dim_) throw DimensionMismatch("coordinate basis is dependent");
}

std::optional<Vec> CoordinateSolver::coords(const Vec& v) const {
  const int m = static_cast<int>(basis_.size());
  Vec c(m);
  Vec residual = v;
  for (const auto& row : rref_.rows()) {
    const int p = row.front().first;
    const Rational f = v[p];
    if (sgn(f) == 0) continue;
    for (const auto& [col, val] : row) {
      if (col < dim_)
        residual[col] -= f * val;
      else
        c[col - dim_] += f * val;
    }
  }
  if (!is_zero(residual)) return std::nullopt;
  return c;
}

}  // namespace sp
