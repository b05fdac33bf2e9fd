#include "sp/flagprolong.hpp"

#include <algorithm>
#include <map>

#include "sp/errors.hpp"

namespace sp {

namespace {

/// Matrices handled internally as sparse rows over the flat index p * n + q.
using SMat = SparseRow;

/// Nonzero entries of a sparse operator, indexed for left and right products.
struct Entries {
  std::vector<std::vector<std::pair<int, Rational>>> by_row, by_col;
  explicit Entries(const RatMatrix& m) : by_row(m.rows()), by_col(m.cols()) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) {
          by_row[i].emplace_back(j, m(i, j));
          by_col[j].emplace_back(i, m(i, j));
        }
  }
};

SMat from_map(const std::map<int, Rational>& acc) {
  SMat out;
  for (const auto& [k, v] : acc)
    if (v != 0) out.emplace_back(k, v);
  return out;
}

/// [m, a] for sparse m and a.
SMat ad_of(const Entries& m, const SMat& a, int n) {
  std::map<int, Rational> acc;
  for (const auto& [idx, v] : a) {
    const int r = idx / n, q = idx % n;
    for (const auto& [p, mv] : m.by_col[r]) acc[p * n + q] += mv * v;  // (m a)_{p q}
    for (const auto& [y, mv] : m.by_row[q]) acc[r * n + y] -= v * mv;  // (a m)_{r y}
  }
  return from_map(acc);
}

SMat sparse_of(const RatMatrix& m) {
  SMat out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out.emplace_back(i * m.cols() + j, m(i, j));
  return out;
}

RatMatrix dense_of(const SMat& s, int n) {
  RatMatrix m(n, n);
  for (const auto& [k, v] : s) m(k / n, k % n) = v;
  return m;
}

std::vector<RatMatrix> dense_all(const std::vector<SMat>& ms, int n) {
  std::vector<RatMatrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(dense_of(m, n));
  return out;
}

/// Coefficient vectors c with sum c_i images[i] in span(targets), one condition per list entry.
std::vector<Vec> combos_into(int count, const std::vector<std::vector<SMat>>& images,
                             const std::vector<std::vector<SMat>>& targets) {
  if (count == 0) return {};
  int nv = count;
  std::vector<int> toff;
  for (const auto& t : targets) {
    toff.push_back(nv);
    nv += static_cast<int>(t.size());
  }
  std::vector<SparseRow> rows;
  for (size_t c = 0; c < images.size(); ++c) {
    std::map<int, std::map<int, Rational>> eq;
    for (int i = 0; i < count; ++i)
      for (const auto& [col, v] : images[c][i]) eq[col][i] += v;
    for (size_t j = 0; j < targets[c].size(); ++j)
      for (const auto& [col, v] : targets[c][j]) eq[col][toff[c] + static_cast<int>(j)] -= v;
    for (auto& [col, m] : eq) {
      SparseRow r = from_map(m);
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  std::vector<Vec> out;
  for (const auto& k : sparse_kernel(rows, nv)) out.emplace_back(k.begin(), k.begin() + count);
  return out;
}

std::vector<SMat> combine(const std::vector<SMat>& basis, const std::vector<Vec>& coeffs) {
  std::vector<SMat> out;
  for (const auto& c : coeffs) {
    std::map<int, Rational> acc;
    for (size_t i = 0; i < basis.size(); ++i)
      if (c[i] != 0)
        for (const auto& [k, v] : basis[i]) acc[k] += c[i] * v;
    out.push_back(from_map(acc));
  }
  return out;
}

/// Independent subset of a family of sparse matrices.
std::vector<SMat> independent(const std::vector<SMat>& ms, int n) {
  SparseRref rref(n * n);
  std::vector<SMat> out;
  for (const auto& m : ms)
    if (rref.add(m)) out.push_back(m);
  return out;
}

/// Conformal factor of A, assuming A lies in csp(X).
Rational conformal_of(const GradedSymplecticSpace& x, const SMat& a) {
  const int n = x.dim();
  int q0 = 0;
  while (x.sigma(0, q0) == 0) ++q0;
  // (A^T S + S A)_{0 q0} = sum_r A_{r0} S_{r q0} + S_{0r} A_{r q0}
  Rational s = 0;
  for (const auto& [idx, v] : a) {
    const int r = idx / n, c = idx % n;
    if (c == 0 && x.sigma(r, q0) != 0) s += v * x.sigma(r, q0);
    if (c == q0 && x.sigma(0, r) != 0) s += x.sigma(0, r) * v;
  }
  return s / x.sigma(0, q0);
}

HalfWeight max_span(const GradedSymplecticSpace& x) {
  const auto ws = x.weight_set();
  return ws.back() - ws.front();
}

MatrixSubspace stack(int n, const std::map<int, std::vector<SMat>>& graded) {
  MatrixSubspace out(n, n);
  for (const auto& [d, v] : graded)
    for (const auto& m : v) out.basis.push_back(dense_of(m, n));
  return out;
}

std::vector<SMat> sp_degree_sparse(const GradedSymplecticSpace& x, HalfWeight d) {
  const int n = x.dim();
  const auto pos = degree_positions(x, d);
  std::vector<std::vector<int>> var(n, std::vector<int>(n, -1));
  for (size_t k = 0; k < pos.size(); ++k) var[pos[k].first][pos[k].second] = static_cast<int>(k);
  std::vector<std::vector<std::pair<int, Rational>>> sig_col(n), sig_row(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x.sigma(i, j) != 0) {
        sig_col[j].emplace_back(i, x.sigma(i, j));
        sig_row[i].emplace_back(j, x.sigma(i, j));
      }
  // (A^T S + S A)_{pq} = sum_r A_{rp} S_{rq} + S_{pr} A_{rq}
  std::vector<SparseRow> rows;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      std::map<int, Rational> e;
      for (const auto& [r, s] : sig_col[q])
        if (var[r][p] >= 0) e[var[r][p]] += s;
      for (const auto& [r, s] : sig_row[p])
        if (var[r][q] >= 0) e[var[r][q]] += s;
      SparseRow row = from_map(e);
      if (!row.empty()) rows.push_back(std::move(row));
    }
  std::vector<SMat> out;
  for (const auto& k : sparse_kernel(rows, static_cast<int>(pos.size()))) {
    std::map<int, Rational> acc;
    for (size_t i = 0; i < pos.size(); ++i)
      if (k[i] != 0) acc[pos[i].first * n + pos[i].second] = k[i];
    out.push_back(from_map(acc));
  }
  return out;
}

std::vector<HalfWeight> all_degrees(const GradedSymplecticSpace& x) {
  std::vector<HalfWeight> out;
  for (HalfWeight a : x.weight_set())
    for (HalfWeight b : x.weight_set()) out.push_back(a - b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Graded pieces of u^F keyed by twice the degree, including the degree -1 line.
std::map<int, std::vector<SMat>> flag_pieces(const GradedSymplecticSpace& x) {
  const int n = x.dim();
  const Entries de(x.delta);
  const int step = x.symbol.index_set() == IndexSet::Half ? 1 : 2;
  const HalfWeight span = max_span(x);
  std::map<int, std::vector<SMat>> u;
  u[-2] = {};
  if (!x.delta.is_zero()) u[-2].push_back(sparse_of(x.delta));
  if (step == 1) u[-1] = {};
  for (int k2 = 0; k2 <= span.twice_value; k2 += step) {
    std::vector<SMat> csp = sp_degree_sparse(x, HalfWeight(k2));
    if (k2 == 0) {
      SMat id;
      for (int i = 0; i < n; ++i) id.emplace_back(i * n + i, Rational(1));
      csp.push_back(std::move(id));
    }
    std::vector<SMat> imgs;
    for (const auto& g : csp) imgs.push_back(ad_of(de, g, n));
    // [v, delta] = -[delta, v]; the sign does not change the span condition
    u[k2] = combine(csp, combos_into(static_cast<int>(csp.size()), {imgs}, {u[k2 - 2]}));
  }
  return u;
}

/// Graded pieces of l(X) keyed by twice the degree.
std::map<int, std::vector<SMat>> l_pieces(const GradedSymplecticSpace& x, const Sl2Triple& t) {
  const int n = x.dim();
  const auto degs = nonnegative_degrees(x);
  std::map<int, std::vector<SMat>> L;
  for (HalfWeight d : degs) L[d.twice_value] = sp_degree_sparse(x, d);
  const Entries ee(t.e), ef(t.f);
  static const std::vector<SMat> none;
  bool changed = true;
  while (changed) {
    changed = false;
    for (HalfWeight d : degs) {
      auto& cur = L[d.twice_value];
      if (cur.empty()) continue;
      std::vector<SMat> ie, iff;
      for (const auto& b : cur) {
        ie.push_back(ad_of(ee, b, n));
        iff.push_back(ad_of(ef, b, n));
      }
      auto below = L.find(d.twice_value - 2);
      auto above = L.find(d.twice_value + 2);
      const auto& tb = below == L.end() ? none : below->second;
      const auto& ta = above == L.end() ? none : above->second;
      const auto coeffs = combos_into(static_cast<int>(cur.size()), {ie, iff}, {tb, ta});
      if (coeffs.size() < cur.size()) {
        cur = combine(cur, coeffs);
        changed = true;
      }
    }
  }
  return L;
}

}  // namespace

// ---------------------------------------------------------------- homogeneous pieces

std::vector<std::pair<int, int>> degree_positions(const GradedSymplecticSpace& x, HalfWeight d) {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < x.dim(); ++p)
    for (int q = 0; q < x.dim(); ++q)
      if (x.weights[p] == x.weights[q] + d) out.emplace_back(p, q);
  return out;
}

MatrixSubspace sp_degree(const GradedSymplecticSpace& x, HalfWeight d) {
  MatrixSubspace out(x.dim(), x.dim());
  out.basis = dense_all(sp_degree_sparse(x, d), x.dim());
  return out;
}

MatrixSubspace csp_degree(const GradedSymplecticSpace& x, HalfWeight d) {
  MatrixSubspace out = sp_degree(x, d);
  if (d.twice_value == 0) out.basis.push_back(RatMatrix::identity(x.dim()));
  return out;
}

std::vector<HalfWeight> nonnegative_degrees(const GradedSymplecticSpace& x) {
  std::vector<HalfWeight> out;
  for (HalfWeight a : x.weight_set())
    for (HalfWeight b : x.weight_set())
      if (a >= b) out.push_back(a - b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- flag prolongation

int FlagProlongation::dim() const {
  int s = delta.is_zero() ? 0 : 1;
  for (const auto& p : pieces) s += p.dim();
  return s;
}

int FlagProlongation::dim_at(HalfWeight d) const {
  if (d == HalfWeight::integer(-1)) return delta.is_zero() ? 0 : 1;
  for (size_t i = 0; i < degrees.size(); ++i)
    if (degrees[i] == d) return pieces[i].dim();
  return 0;
}

MatrixSubspace FlagProlongation::all() const {
  MatrixSubspace out(delta.rows(), delta.cols());
  if (!delta.is_zero()) out.basis.push_back(delta);
  for (const auto& p : pieces) out.basis.insert(out.basis.end(), p.basis.begin(), p.basis.end());
  return out;
}

FlagProlongation flag_prolong(const GradedSymplecticSpace& x) {
  const int n = x.dim();
  FlagProlongation fp;
  fp.delta = x.delta;
  for (const auto& [k2, b] : flag_pieces(x)) {
    if (k2 < 0) continue;
    fp.degrees.push_back(HalfWeight(k2));
    MatrixSubspace piece(n, n);
    piece.basis = dense_all(b, n);
    fp.pieces.push_back(std::move(piece));
  }
  return fp;
}

// ---------------------------------------------------------------- sl2

Sl2Triple sl2_triple(const GradedSymplecticSpace& x) {
  const int n = x.dim();
  Sl2Triple t{x.delta, RatMatrix(n, n), RatMatrix(n, n)};
  for (size_t r = 0; r < x.rows.size(); ++r) {
    const auto& idx = x.row_indices[r];
    const int centre2 = x.rows[r].top.twice_value + x.rows[r].bottom.twice_value;
    const int len = static_cast<int>(idx.size()) - 1;
    for (int i = 0; i <= len; ++i) {
      t.h(idx[i], idx[i]) = x.weights[idx[i]].twice_value - centre2 / 2;
      if (i > 0) t.f(idx[i - 1], idx[i]) = -i * (len - i + 1);
    }
  }
  return t;
}

std::vector<MatrixSubspace> l_of_x_graded(const GradedSymplecticSpace& x, const Sl2Triple& t) {
  const int n = x.dim();
  std::vector<MatrixSubspace> out;
  for (const auto& [k2, b] : l_pieces(x, t)) {
    MatrixSubspace m(n, n);
    m.basis = dense_all(b, n);
    out.push_back(std::move(m));
  }
  return out;
}

MatrixSubspace l_of_x(const GradedSymplecticSpace& x) {
  const int n = x.dim();
  MatrixSubspace out(n, n);
  for (const auto& p : l_of_x_graded(x, sl2_triple(x))) out.basis.insert(out.basis.end(), p.basis.begin(), p.basis.end());
  return out;
}

// ---------------------------------------------------------------- curve symmetries

MatrixSubspace curve_symmetry_algebra(const GradedSymplecticSpace& x) {
  const int n = x.dim();
  std::vector<SMat> sp_basis;
  for (HalfWeight d : all_degrees(x)) {
    auto b = sp_degree_sparse(x, d);
    sp_basis.insert(sp_basis.end(), b.begin(), b.end());
  }
  const int m = static_cast<int>(sp_basis.size());
  const Entries de(x.delta);
  const int kmax = max_span(x).twice_value + 2;
  std::vector<SparseRow> rows;
  std::vector<SMat> cur = sp_basis;
  for (int k = 0; k <= kmax; ++k) {
    // entries of (ad delta)^k A that would push X_w out of X_w
    std::map<int, std::map<int, Rational>> eq;
    for (int i = 0; i < m; ++i)
      for (const auto& [idx, v] : cur[i])
        if (x.weights[idx / n] < x.weights[idx % n]) eq[idx][i] += v;
    for (auto& [pos, e] : eq) {
      SparseRow r = from_map(e);
      if (!r.empty()) rows.push_back(std::move(r));
    }
    for (auto& c : cur) c = ad_of(de, c, n);
  }
  MatrixSubspace out(n, n);
  out.basis = dense_all(independent(combine(sp_basis, sparse_kernel(rows, m)), n), n);
  return out;
}

bool preserves_flat_curve(const GradedSymplecticSpace& x, const RatMatrix& a) {
  const int n = x.dim();
  // powers delta^j / j!
  std::vector<RatMatrix> pw{RatMatrix::identity(n)};
  while (!pw.back().is_zero()) pw.push_back(rat(1, static_cast<long>(pw.size())) * (pw.back() * x.delta));
  pw.pop_back();
  const int deg = static_cast<int>(pw.size()) - 1;
  // e^{-t delta} A e^{t delta} = sum_m t^m sum_{i+j=m} (-1)^i D_i A D_j
  for (int m = 0; m <= 2 * deg; ++m) {
    RatMatrix c(n, n);
    for (int i = 0; i <= std::min(m, deg); ++i) {
      const int j = m - i;
      if (j > deg) continue;
      RatMatrix term = pw[i] * a * pw[j];
      c = (i % 2 == 0) ? c + term : c - term;
    }
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (c(p, q) != 0 && x.weights[p] < x.weights[q]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- a, z, p

RatMatrix off_row_projection(const GradedSymplecticSpace& x, const RatMatrix& a) {
  RatMatrix out = a;
  for (int p = 0; p < x.dim(); ++p)
    for (int q = 0; q < x.dim(); ++q)
      if (x.row_of[p] == x.row_of[q]) out(p, q) = 0;
  return out;
}

AZPDecomposition decompose_azp(const GradedSymplecticSpace& x) {
  const int n = x.dim();
  AZPDecomposition d;
  d.sl2 = sl2_triple(x);
  const auto upieces = flag_pieces(x);
  d.uF.delta = x.delta;
  for (const auto& [k2, b] : upieces) {
    if (k2 < 0) continue;
    d.uF.degrees.push_back(HalfWeight(k2));
    MatrixSubspace piece(n, n);
    piece.basis = dense_all(b, n);
    d.uF.pieces.push_back(std::move(piece));
  }
  const auto lmap = l_pieces(x, d.sl2);

  std::map<int, std::vector<SMat>> rmap, amap, zmap, pmap;
  for (const auto& [k2, b] : upieces) {
    if (k2 != 0) {
      if (!b.empty()) rmap[k2] = b;
      continue;
    }
    // kernel of the conformal factor on u_0
    std::vector<SparseRow> rows(1);
    for (size_t j = 0; j < b.size(); ++j) {
      Rational c = conformal_of(x, b[j]);
      if (c != 0) rows[0].emplace_back(static_cast<int>(j), c);
    }
    rmap[0] = combine(b, sparse_kernel(rows, static_cast<int>(b.size())));
  }

  for (const auto& [k2, b] : rmap) {
    // A(row_i) in row_i: entries across distinct rows vanish
    std::map<int, std::map<int, Rational>> eq;
    for (size_t j = 0; j < b.size(); ++j)
      for (const auto& [idx, v] : b[j])
        if (x.row_of[idx / n] != x.row_of[idx % n]) eq[idx][static_cast<int>(j)] += v;
    std::vector<SparseRow> rows;
    for (auto& [pos, e] : eq) rows.push_back(from_map(e));
    amap[k2] = combine(b, sparse_kernel(rows, static_cast<int>(b.size())));
  }
  for (const auto& [k2, b] : amap) {
    auto it = lmap.find(k2);
    if (it == lmap.end() || b.empty() || it->second.empty()) continue;
    // A = sum c_i a_i = sum d_j l_j
    const auto coeffs = combos_into(static_cast<int>(b.size()), {b}, {it->second});
    zmap[k2] = combine(b, coeffs);
  }
  for (const auto& [k2, b] : lmap) {
    std::vector<SMat> proj;
    for (const auto& m : b) {
      SMat q;
      for (const auto& [idx, v] : m)
        if (x.row_of[idx / n] != x.row_of[idx % n]) q.emplace_back(idx, v);
      proj.push_back(std::move(q));
    }
    pmap[k2] = independent(proj, n);
  }
  d.l_of_x = stack(n, lmap);
  d.r_uF = stack(n, rmap);
  d.a = stack(n, amap);
  d.z = stack(n, zmap);
  d.p = stack(n, pmap);
  return d;
}

// ---------------------------------------------------------------- closed-form dimensions

int string_dim(int top, int lo, int hi) {
  int s = 0;
  for (int i = lo; i <= hi; ++i) s += top - 2 * i + 1;
  return s;
}

int nonnegative_hom_dim(const RowInterval& y1, const RowInterval& y2) {
  const int l1 = y1.length() - 1;
  const int l2 = y2.length() - 1;
  // lowest degree of the i-th summand is bottom(Y2) - top(Y1) + i
  const int diff2 = y1.top.twice_value - y2.bottom.twice_value;
  const int lo = diff2 <= 0 ? 0 : (diff2 + 1) / 2;
  return string_dim(l1 + l2, lo, std::min(l1, l2));
}

PredictedDims predicted_dims(const FlagSymbol& s) {
  PredictedDims pd;
  const auto rows = symbol_rows(s);
  const auto& comps = s.components();
  bool has_delta = false;
  for (const auto& r : rows)
    if (r.length() > 1) has_delta = true;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    const auto& k = comps[c];
    if (!k.is_two_row()) continue;
    ComponentDims cd;
    cd.component = c;
    for (int i = std::max(0, k.l - k.s); i <= k.l / 2; ++i) cd.s_E += 2 * k.l - 4 * i + 1;
    cd.s_F = (k.l % 2 == 0 && 2 * k.s == k.l) ? 1 : 0;
    cd.n_E = 1;
    pd.components.push_back(cd);
    pd.l_x += cd.s_E + cd.s_F + cd.n_E;
    pd.z += 1;
  }
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(rows.size()); ++j) {
      if (rows[i].component == rows[j].component) continue;
      RowPairDims rp{i, j, nonnegative_hom_dim(rows[i], rows[j])};
      pd.row_pairs.push_back(rp);
      pd.l_x += rp.dim;
    }
  pd.p = pd.l_x - pd.z;
  pd.uF = pd.l_x + (has_delta ? 3 : 0) + 1;
  return pd;
}

PredictedDims measured_dims(const GradedSymplecticSpace& x, const AZPDecomposition& d) {
  PredictedDims md;
  auto block_rank = [&](int r1, int r2) {
    // rank of the Hom(row r1 -> row r2) blocks over l(X)
    std::vector<Vec> vs;
    for (const auto& m : d.l_of_x.basis) {
      Vec v;
      for (int p : x.row_indices[r2])
        for (int q : x.row_indices[r1]) v.push_back(m(p, q));
      vs.push_back(std::move(v));
    }
    return span_rank(vs);
  };
  const auto& comps = x.symbol.components();
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    if (!comps[c].is_two_row()) continue;
    int er = -1, fr = -1;
    for (int r = 0; r < static_cast<int>(x.rows.size()); ++r) {
      if (x.rows[r].component != c) continue;
      if (x.rows[r].kind == RowInterval::Kind::E) er = r;
      if (x.rows[r].kind == RowInterval::Kind::F) fr = r;
    }
    ComponentDims cd;
    cd.component = c;
    cd.s_E = block_rank(fr, er);
    cd.s_F = block_rank(er, fr);
    cd.n_E = block_rank(er, er);
    md.components.push_back(cd);
  }
  for (int i = 0; i < static_cast<int>(x.rows.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(x.rows.size()); ++j) {
      if (x.rows[i].component == x.rows[j].component) continue;
      md.row_pairs.push_back({i, j, block_rank(i, j)});
    }
  md.l_x = d.l_of_x.dim();
  md.z = d.z.dim();
  md.p = d.p.dim();
  md.uF = d.uF.dim();
  return md;
}

// ---------------------------------------------------------------- rank-one elements

RatMatrix rank_one(const GradedSymplecticSpace& x, const Vec& v) {
  const int n = x.dim();
  const Vec sv = x.sigma.transpose() * v;  // sigma(v, y) = sum_i v_i S_{i y}
  RatMatrix m(n, n);
  for (int p = 0; p < n; ++p) {
    if (v[p] == 0) continue;
    for (int q = 0; q < n; ++q)
      if (sv[q] != 0) m(p, q) = v[p] * sv[q];
  }
  return m;
}

std::optional<RatMatrix> rank_one_witness(const GradedSymplecticSpace& x, const MatrixSubspace& space) {
  const int n = x.dim();
  if (space.dim() == 0) return std::nullopt;
  SparseRref rref(n * n);
  for (const auto& b : space.basis) rref.add(b.flatten());
  auto test = [&](const Vec& v) -> std::optional<RatMatrix> {
    RatMatrix m = rank_one(x, v);
    if (rref.contains(m.flatten())) return m;
    return std::nullopt;
  };
  // top boxes of each row first, then all basis vectors, then pairwise sums
  for (const auto& idx : x.row_indices) {
    Vec v(n);
    v[idx.front()] = 1;
    if (auto m = test(v)) return m;
  }
  for (int i = 0; i < n; ++i) {
    Vec v(n);
    v[i] = 1;
    if (auto m = test(v)) return m;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int s : {1, -1}) {
        Vec v(n);
        v[i] = 1;
        v[j] = s;
        if (auto m = test(v)) return m;
      }
  return std::nullopt;
}

}  // namespace sp
