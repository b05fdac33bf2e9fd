#include "sp/abnormal.hpp"

#include <algorithm>
#include <map>

#include "sp/errors.hpp"
#include "sp/pfaffian.hpp"

namespace sp {

// ---------------------------------------------------------------- Goh calculus

MultiPoly hamiltonian(const GradedLieAlgebra& g, const Vec& y) {
  MultiPoly h(g.dim());
  for (int k = 0; k < g.dim(); ++k)
    if (y[k] != 0) h += y[k] * MultiPoly::variable(g.dim(), k);
  return h;
}

RatMatrix GohMatrix::at(const Vec& lambda) const {
  RatMatrix m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = entries[i][j].eval(lambda);
  return m;
}

GohMatrix goh_matrix(const FlatModel& fm) {
  const auto& g = fm.algebra;
  GohMatrix gm;
  gm.size = fm.rank();
  gm.nvars = g.dim();
  gm.entries.assign(gm.size, std::vector<MultiPoly>(gm.size, MultiPoly(g.dim())));
  for (int i = 0; i < gm.size; ++i)
    for (int j = 0; j < gm.size; ++j)
      gm.entries[i][j] = hamiltonian(g, g.bracket(fm.distribution[i], fm.distribution[j]));
  return gm;
}

DegeneracyLocus degeneracy_locus(const FlatModel& fm) {
  const GohMatrix gm = goh_matrix(fm);
  PfaffianTable<MultiPoly> table(gm.entries);
  DegeneracyLocus loc;
  const int l = gm.size;
  if (l % 2 == 1) {
    loc.always_degenerate = true;
    loc.pfaffian = MultiPoly(gm.nvars);
    for (int i = 0; i < l; ++i) loc.sub_pfaffians.push_back(table.minor1(i));
  } else {
    loc.pfaffian = table.pfaffian();
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) {
        loc.sub_pfaffians.push_back(table.minor2(i, j));
        loc.pairs.emplace_back(i, j);
      }
  }
  return loc;
}

std::vector<Vec> derived_flag(const FlatModel& fm, int j) {
  if (j < 1) throw RangeError("derived flag index must be at least 1");
  const auto& g = fm.algebra;
  std::vector<Vec> d;
  for (int i : fm.distribution) d.push_back(g.basis_vector(i));
  std::vector<Vec> cur = d;
  for (int step = 2; step <= j; ++step) {
    std::vector<Vec> next = cur;
    for (const auto& a : d)
      for (const auto& b : cur) next.push_back(g.bracket(a, b));
    cur = independent_subset(next);
  }
  return cur;
}

std::vector<MultiPoly> annihilator_forms(const FlatModel& fm, int j) {
  std::vector<MultiPoly> out;
  for (const auto& y : derived_flag(fm, j)) out.push_back(hamiltonian(fm.algebra, y));
  return out;
}

bool same_linear_zero_set(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b) {
  int n = 0;
  for (const auto* v : {&a, &b})
    for (const auto& p : *v) n = std::max(n, p.nvars());
  const auto monos = monomials_of_degree(n, 1);
  auto vecs = [&](const std::vector<MultiPoly>& ps) {
    std::vector<Vec> out;
    for (const auto& p : ps) {
      if (p.is_zero()) continue;
      if (!p.is_homogeneous(1)) throw ConstraintError("zero-set comparison expects linear forms");
      out.push_back(coefficient_vector(p, monos));
    }
    return out;
  };
  return spans_equal(vecs(a), vecs(b));
}

MultiPoly derivative_along(const GradedLieAlgebra& g, const MultiPoly& p,
                           const std::vector<std::pair<MultiPoly, Vec>>& field) {
  const int n = g.dim();
  MultiPoly out(n);
  std::vector<MultiPoly> partial(n);
  for (int k = 0; k < n; ++k) partial[k] = p.derivative(k);
  for (const auto& [phi, x] : field) {
    if (phi.is_zero()) continue;
    MultiPoly inner(n);
    for (int k = 0; k < n; ++k) {
      if (partial[k].is_zero()) continue;
      const Vec bk = g.bracket(x, g.basis_vector(k));
      if (is_zero(bk)) continue;
      inner += partial[k] * hamiltonian(g, bk);
    }
    out += phi * inner;
  }
  return out;
}

std::vector<LocusCheck> locus_identities(const FlatModel& fm) {
  std::vector<LocusCheck> out;
  const auto& g = fm.algebra;
  const auto loc = degeneracy_locus(fm);
  const auto d1 = annihilator_forms(fm, 1);
  const auto d2 = annihilator_forms(fm, 2);
  auto with = [](std::vector<MultiPoly> a, const std::vector<MultiPoly>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  if (fm.rank() == 3) {
    out.push_back({"odd rank: common zeros of G_1, G_2, G_3 in D^perp equal (D^-2)^perp",
                   same_linear_zero_set(with(loc.sub_pfaffians, d1), d2), "linear-form span comparison"});
  }
  if (fm.rank() == 2) {
    const auto d3 = annihilator_forms(fm, 3);
    out.push_back({"rank 2: pf G = 0 in D^perp equals (D^-2)^perp", same_linear_zero_set(with({loc.pfaffian}, d1), d2),
                   "linear-form span comparison"});
    const Vec x1 = g.basis_vector(fm.distribution[0]), x2 = g.basis_vector(fm.distribution[1]);
    const Vec x12 = g.bracket(x1, x2);
    const std::vector<MultiPoly> s2{hamiltonian(g, g.bracket(x1, x12)), hamiltonian(g, g.bracket(x2, x12))};
    out.push_back({"rank 2: S_2 = (D^-3)^perp via length-3 brackets", same_linear_zero_set(with(s2, d2), d3),
                   "H_[X1,[X1,X2]], H_[X2,[X1,X2]] with (D^-2)^perp"});
    // same locus through d(pf G) along the Y_i fields
    const MultiPoly one = MultiPoly::constant(g.dim(), 1);
    const auto y1 = std::vector<std::pair<MultiPoly, Vec>>{{one, x2}};
    const auto y2 = std::vector<std::pair<MultiPoly, Vec>>{{one, x1}};
    const std::vector<MultiPoly> s2y{derivative_along(g, loc.pfaffian, y1), derivative_along(g, loc.pfaffian, y2)};
    out.push_back({"rank 2: S_2 = (D^-3)^perp via d(pf G)(Y_i)", same_linear_zero_set(with(s2y, d2), d3),
                   "derivatives of the Pfaffian along Y_1, Y_2"});
  }
  return out;
}

std::optional<Vec> distribution_coordinates(const FlatModel& fm, const Vec& v) {
  Vec c(fm.rank());
  Vec rest = v;
  for (int i = 0; i < fm.rank(); ++i) {
    c[i] = v[fm.distribution[i]];
    rest[fm.distribution[i]] = 0;
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

namespace {

void require_annihilator(const FlatModel& fm, const Vec& lambda) {
  if (static_cast<int>(lambda.size()) != fm.algebra.dim()) throw DimensionMismatch("covector has the wrong length");
  for (int i : fm.distribution)
    if (lambda[i] != 0)
      throw NotInAnnihilator("lambda does not vanish on distribution vector " + fm.algebra.labels()[i]);
}

Rational pair(const Vec& lambda, const Vec& y) { return dot(lambda, y); }

CharacteristicDirection undefined(const std::string& why) { return {std::nullopt, why}; }

}  // namespace

CharacteristicDirection even_rank_direction(const FlatModel& fm, const Vec& lambda) {
  require_annihilator(fm, lambda);
  const auto& g = fm.algebra;
  const int l = fm.rank();
  if (l % 2 != 0) throw UnsupportedRank("even-rank route needs an even rank");
  const GohMatrix gm = goh_matrix(fm);
  PfaffianTable<MultiPoly> table(gm.entries);
  const MultiPoly pf = table.pfaffian();
  if (pf.eval(lambda) != 0) return undefined("pf G(lambda) != 0: lambda is outside the degeneracy locus");
  int i0 = -1, j0 = -1;
  for (int i = 0; i < l && i0 < 0; ++i)
    for (int j = i + 1; j < l; ++j)
      if (table.minor2(i, j).eval(lambda) != 0) {
        i0 = i;
        j0 = j;
        break;
      }
  if (i0 < 0) return undefined("all G_ij vanish: lambda lies in S_1");
  auto field = [&](int i) {
    std::vector<std::pair<MultiPoly, Vec>> f;
    for (int j = 0; j < l; ++j) {
      if (j == i) continue;
      const MultiPoly c = (j % 2 == 0 ? -1 : 1) * table.minor2(i, j);  // (-1)^j with 1-based j
      f.emplace_back(c, g.basis_vector(fm.distribution[j]));
    }
    return f;
  };
  auto value = [&](const std::vector<std::pair<MultiPoly, Vec>>& f) {
    Vec v(g.dim());
    for (const auto& [c, x] : f) v = v + c.eval(lambda) * x;
    return v;
  };
  const auto yi = field(i0), yj = field(j0);
  const Rational di = derivative_along(g, pf, yi).eval(lambda);
  const Rational dj = derivative_along(g, pf, yj).eval(lambda);
  if (di == 0 && dj == 0) return undefined("d(pf G) vanishes on the kernel: lambda lies in S_2");
  return {di * value(yj) - dj * value(yi), ""};
}

CharacteristicDirection characteristic_direction(const FlatModel& fm, const Vec& lambda) {
  require_annihilator(fm, lambda);
  const auto& g = fm.algebra;
  const int l = fm.rank();
  if (l % 2 == 1) {
    PfaffianTable<Rational> table(to_array(goh_matrix(fm).at(lambda)));
    Vec v(g.dim());
    bool any = false;
    for (int i = 0; i < l; ++i) {
      const Rational gi = table.minor1(i);
      if (gi != 0) any = true;
      v[fm.distribution[i]] = i % 2 == 0 ? gi : Rational(-gi);
    }
    if (!any) return undefined("all G_i vanish: the Goh matrix has corank above one");
    return {v, ""};
  }
  if (l == 2) {
    const Vec x1 = g.basis_vector(fm.distribution[0]), x2 = g.basis_vector(fm.distribution[1]);
    const Vec x12 = g.bracket(x1, x2);
    if (pair(lambda, x12) != 0) return undefined("lambda([X1,X2]) != 0: lambda is outside (D^-2)^perp");
    const Rational a = pair(lambda, g.bracket(x1, x12));
    const Rational b = pair(lambda, g.bracket(x2, x12));
    if (a == 0 && b == 0) return undefined("lambda lies in (D^-3)^perp");
    return {a * x2 - b * x1, ""};
  }
  return even_rank_direction(fm, lambda);
}

// ---------------------------------------------------------------- curves

RatMatrix PolyCurve::at(const Rational& t) const {
  RatMatrix m(dim, cols);
  Rational p = 1;
  for (const auto& c : coeffs) {
    if (p != 0) m = m + p * c;
    p *= t;
  }
  return m;
}

const PolyCurve& FlagCurve::span(HalfWeight i) const {
  for (size_t k = 0; k < indices.size(); ++k)
    if (indices[k] == i) return spans[k];
  throw RangeError("flag curve has no index " + i.str());
}

namespace {

RatMatrix columns_of(const RatMatrix& m, const std::vector<int>& cols) {
  RatMatrix out(m.rows(), static_cast<int>(cols.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, static_cast<int>(j)) = m(i, cols[j]);
  return out;
}

RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

std::vector<Vec> column_list(const RatMatrix& m) {
  std::vector<Vec> out;
  for (int j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

/// Frame of a curve of subspaces as a power series truncated at a fixed order.
/// Columns are independent at t = 0; exact frames are genuine polynomials.
struct Frame {
  int n = 0;
  std::vector<RatMatrix> c;
  bool exact = true;
  int cols() const { return c.empty() ? 0 : c[0].cols(); }
  int order() const { return static_cast<int>(c.size()) - 1; }
  RatMatrix at0() const { return c[0]; }
  RatMatrix eval(const Rational& t) const {
    RatMatrix m(n, cols());
    Rational p = 1;
    for (const auto& k : c) {
      m = m + p * k;
      p *= t;
    }
    return m;
  }
};

Frame derivative(const Frame& f) {
  Frame d;
  d.n = f.n;
  d.exact = f.exact;
  for (int k = 1; k <= f.order(); ++k) d.c.push_back(Rational(k) * f.c[k]);
  if (d.c.empty()) d.c.push_back(RatMatrix(f.n, f.cols()));
  return d;
}

Frame concat(const Frame& a, const Frame& b) {
  Frame f;
  f.n = a.n;
  f.exact = a.exact && b.exact;
  const int ord = f.exact ? std::max(a.order(), b.order()) : std::min(a.order(), b.order());
  for (int k = 0; k <= ord; ++k) {
    const RatMatrix ak = k <= a.order() ? a.c[k] : RatMatrix(a.n, a.cols());
    const RatMatrix bk = k <= b.order() ? b.c[k] : RatMatrix(b.n, b.cols());
    f.c.push_back(hconcat(ak, bk));
  }
  return f;
}

/// Keeps the columns independent at t = 0, after checking that t = 0 is a regular point.
Frame regular_reduce(const Frame& f) {
  const int r0 = rank(f.at0());
  if (f.exact) {
    for (const Rational& t : {rat(3, 7), rat(-11, 5)})
      if (rank(f.eval(t)) > r0) throw NonRegularPoint("osculating rank drops at t = 0");
  }
  const auto keep = independent_indices(column_list(f.at0()));
  Frame out;
  out.n = f.n;
  out.exact = f.exact;
  for (const auto& k : f.c) out.c.push_back(columns_of(k, keep));
  return out;
}

Frame osculate(const Frame& f) { return regular_reduce(concat(f, derivative(f))); }

Frame add(const Frame& a, const Frame& b) { return regular_reduce(concat(a, b)); }

/// Skew-orthogonal complement as a power-series frame.
Frame complement(const Frame& f, const RatMatrix& sigma, int max_order) {
  const int n = f.n, r = f.cols();
  const int order = f.exact ? max_order : f.order();
  std::vector<RatMatrix> m;  // m[k] = c[k]^T sigma, r x n
  for (int k = 0; k <= order; ++k)
    m.push_back(k <= f.order() ? f.c[k].transpose() * sigma : RatMatrix(r, n));
  std::vector<int> piv = bareiss(m[0]).pivots;
  if (static_cast<int>(piv.size()) != r) throw NonRegularPoint("frame is degenerate at t = 0");
  std::vector<int> non;
  for (int j = 0; j < n; ++j)
    if (!std::binary_search(piv.begin(), piv.end(), j)) non.push_back(j);
  std::vector<RatMatrix> p, q;
  for (const auto& mk : m) {
    p.push_back(columns_of(mk, piv));
    q.push_back(columns_of(mk, non));
  }
  std::vector<RatMatrix> inv{*inverse(p[0])};
  for (int k = 1; k <= order; ++k) {
    RatMatrix acc(r, r);
    for (int j = 1; j <= k; ++j) acc = acc + p[j] * inv[k - j];
    inv.push_back(-(inv[0] * acc));
  }
  Frame out;
  out.n = n;
  out.exact = false;
  const int nc = static_cast<int>(non.size());
  for (int k = 0; k <= order; ++k) {
    RatMatrix kk(r, nc);
    for (int j = 0; j <= k; ++j) kk = kk + inv[j] * q[k - j];
    RatMatrix col(n, nc);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < nc; ++b) col(piv[a], b) = -kk(a, b);
    if (k == 0)
      for (int b = 0; b < nc; ++b) col(non[b], b) = 1;
    out.c.push_back(std::move(col));
  }
  return out;
}

bool isotropic(const std::vector<Vec>& basis, const RatMatrix& sigma) {
  for (const auto& a : basis)
    for (const auto& b : basis)
      if (dot(a, sigma * b) != 0) return false;
  return true;
}

std::vector<Vec> complement_at0(const std::vector<Vec>& basis, const RatMatrix& sigma) {
  if (basis.empty()) {
    std::vector<Vec> all;
    for (int i = 0; i < sigma.rows(); ++i) {
      Vec e(sigma.rows());
      e[i] = 1;
      all.push_back(e);
    }
    return all;
  }
  std::vector<Vec> rows;
  for (const auto& b : basis) rows.push_back(sigma.transpose() * b);
  return kernel_basis(RatMatrix::from_rows(rows, sigma.rows()));
}

}  // namespace

FlagCurve flat_curve(const GradedSymplecticSpace& x) {
  FlagCurve fc;
  fc.index_set = x.symbol.index_set();
  fc.sigma = x.sigma;
  const int n = x.dim();
  const int step = fc.index_set == IndexSet::Half ? 1 : 2;
  std::vector<RatMatrix> powers;
  RatMatrix pw = RatMatrix::identity(n);
  for (int k = 0; !pw.is_zero(); ++k) {
    powers.push_back(pw);
    pw = rat(1, k + 1) * (x.delta * pw);
  }
  const auto ws = x.weight_set();
  for (int w = ws.back().twice_value; w >= ws.front().twice_value; w -= step) {
    const auto idx = x.filtration(HalfWeight(w));
    PolyCurve pc;
    pc.dim = n;
    pc.cols = static_cast<int>(idx.size());
    for (const auto& p : powers) pc.coeffs.push_back(columns_of(p, idx));
    fc.indices.push_back(HalfWeight(w));
    fc.spans.push_back(std::move(pc));
  }
  return fc;
}

PolyCurve transform_curve(const PolyCurve& c, const RatMatrix& g) {
  PolyCurve out = c;
  for (auto& k : out.coeffs) k = g * k;
  return out;
}

PolyCurve reparametrize(const PolyCurve& curve, const Rational& c) {
  PolyCurve out;
  out.dim = curve.dim;
  out.cols = curve.cols;
  const int d = curve.degree();
  out.coeffs.assign(2 * std::max(d, 0) + 1, RatMatrix(curve.dim, curve.cols));
  for (int k = 0; k <= d; ++k) {
    // t^k (1 + c t)^k
    Rational binom = 1, cp = 1;
    for (int j = 0; j <= k; ++j) {
      out.coeffs[k + j] = out.coeffs[k + j] + (binom * cp) * curve.coeffs[k];
      binom = binom * (k - j) / (j + 1);
      cp *= c;
    }
  }
  while (out.coeffs.size() > 1 && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  return out;
}

RatMatrix random_symplectic(const RatMatrix& sigma, uint64_t seed, int steps) {
  const int n = sigma.rows();
  RationalRng rng(seed);
  RatMatrix g = RatMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    Vec v(n);
    for (auto& a : v) a = rng.next_int(-3, 3);
    if (is_zero(v)) v[s % n] = 1;
    const Rational a = rng.next_nonzero();
    const Vec sv = sigma * v;
    RatMatrix t = RatMatrix::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) += a * v[i] * sv[j];
    g = t * g;
  }
  return g;
}

std::string to_string(JacobiCase c) {
  switch (c) {
    case JacobiCase::Odd: return "odd";
    case JacobiCase::RankTwo: return "two";
    case JacobiCase::Even: return "even";
  }
  return "?";
}

JacobiCase jacobi_case(IndexSet s) {
  switch (s) {
    case IndexSet::Integer: return JacobiCase::Odd;
    case IndexSet::HalfOdd: return JacobiCase::RankTwo;
    case IndexSet::Half: return JacobiCase::Even;
  }
  return JacobiCase::Odd;
}

ExtractedFlag extract_flag_symbol(const PolyCurve& j, const RatMatrix& sigma, JacobiCase kind) {
  const int n = j.dim;
  if (sigma.rows() != n) throw DimensionMismatch("pairing and curve dimensions differ");
  Frame base;
  base.n = n;
  for (int k = 0; k <= std::max(j.degree(), 0); ++k) base.c.push_back(j.coeffs[k]);
  base = regular_reduce(base);

  // indices in twice units; step is the spacing of the index set
  const int step = kind == JacobiCase::Even ? 1 : 2;
  const int e2 = kind == JacobiCase::Even ? 1 : 2;  // positive J^p is the complement of J^{e2 - p}
  const int start = kind == JacobiCase::RankTwo ? 1 : 0;
  const int bottom = start - 2 * n - 2;
  std::map<int, Frame> fr;
  fr[start] = base;
  std::map<int, bool> still;  // chain already stationary at this index
  auto descend = [&](int p) {
    if (still[p]) {
      fr[p - 2] = fr.at(p);
      still[p - 2] = true;
      return;
    }
    fr[p - 2] = osculate(fr.at(p));
    still[p - 2] = fr[p - 2].cols() == fr.at(p).cols();
  };
  if (kind == JacobiCase::Even) {
    fr[1] = complement(base, sigma, n + 4);
    fr[-1] = add(osculate(fr[1]), base);
    for (int p = 0; p - 2 >= bottom; --p) descend(p);
  } else {
    for (int p = start; p - 2 >= bottom; p -= 2) descend(p);
  }
  const int full = fr.at(bottom).cols();
  int nu = bottom;
  for (int p = bottom; p <= start; p += step)
    if (fr.at(p).cols() == full) nu = p;
  const int top = e2 - nu;  // floor index: complement of J^nu
  for (int p = start + step; p <= top; p += step)
    if (!fr.count(p)) fr[p] = complement(fr.at(e2 - p), sigma, 2);

  ExtractedFlag out;
  out.kind = kind;
  std::map<int, std::vector<Vec>> at0;
  for (int p = nu; p <= top; p += step) at0[p] = column_list(fr.at(p).at0());
  for (int p = nu; p <= top; p += step) {
    if (p + step <= top && !span_contains_all(at0[p], at0[p + step]))
      throw NonSymplecticFlag("flag is not nested at index " + HalfWeight(p).str());
    const bool positive = kind == JacobiCase::RankTwo ? p >= 1 : p > 0;
    if (positive && !isotropic(at0[p], sigma))
      throw NonSymplecticFlag("J^" + HalfWeight(p).str() + " is not isotropic");
    if (!positive && !span_contains_all(at0[p], complement_at0(at0[p], sigma)))
      throw NonSymplecticFlag("J^" + HalfWeight(p).str() + " is not coisotropic");
  }
  out.floor_dim = static_cast<int>(at0[top].size());

  // graded pieces Gr^p = J^p / J^{p+step} for nu <= p < top
  std::map<int, std::vector<Vec>> lift;  // complement vectors representing Gr^p
  for (int p = nu; p < top; p += step) {
    SparseRref r(n);
    for (const auto& v : at0[p + step]) r.add(v);
    for (const auto& v : at0[p])
      if (r.add(v)) lift[p].push_back(v);
  }
  // degree -1 map Gr^p -> Gr^{p-2} read from the velocity of the frame of J^p
  std::map<int, RatMatrix> dbar;
  for (int p = nu + 2; p < top; p += step) {
    const auto& src = lift[p];
    const auto& dst = lift[p - 2];
    RatMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    const Frame& f = fr.at(p);
    const CoordinateSolver own(column_list(f.at0()));
    const RatMatrix vel = derivative(f).at0();
    std::vector<Vec> target = at0[p - 2 + step];
    target.insert(target.end(), dst.begin(), dst.end());
    const CoordinateSolver solver(target);
    const int offset = static_cast<int>(at0[p - 2 + step].size());
    for (size_t b = 0; b < src.size(); ++b) {
      const auto a = own.coords(src[b]);
      if (!a) throw NonSymplecticFlag("frame does not span its own space");
      const Vec w = vel * *a;
      const auto cw = solver.coords(w);
      if (!cw) throw NonSymplecticFlag("velocity leaves J^" + HalfWeight(p - 2).str());
      for (size_t q = 0; q < dst.size(); ++q) m(static_cast<int>(q), static_cast<int>(b)) = (*cw)[offset + q];
    }
    dbar[p] = m;
  }

  for (int p = top - step; p >= nu; p -= step) {
    out.indices.push_back(HalfWeight(p));
    out.spaces.push_back(at0[p]);
    out.graded_dims.push_back(static_cast<int>(lift[p].size()));
  }

  // string counts from ranks of iterated compositions
  auto gdim = [&](int p) { return lift.count(p) ? static_cast<int>(lift[p].size()) : 0; };
  auto r = [&](int a, int b) -> int {
    if (a < nu || a >= top || b < nu || b >= top || b > a) return 0;
    if (gdim(a) == 0) return 0;
    RatMatrix m = RatMatrix::identity(gdim(a));
    for (int p = a; p > b; p -= 2) {
      if (gdim(p - 2) == 0) return 0;
      m = dbar.at(p) * m;
    }
    return rank(m);
  };
  std::map<std::pair<int, int>, int> strings;  // (top, bottom) -> count
  for (int a = nu; a < top; a += step)
    for (int b = a; b >= nu; b -= 2) {
      const int cnt = r(a, b) - r(a + 2, b) - r(a, b - 2) + r(a + 2, b - 2);
      if (cnt < 0) throw NonSymplecticFlag("inconsistent rank profile of the induced map");
      if (cnt > 0) strings[{a, b}] += cnt;
    }

  std::vector<SymbolComponent> comps;
  std::map<std::pair<int, int>, int> left = strings;
  for (auto& [ab, cnt] : left) {
    const auto [a, b] = ab;
    if (cnt == 0) continue;
    if (a % 2 != 0) {
      if (b != -a) throw NonSymplecticFlag("half-integer row is not centred at zero");
      for (int i = 0; i < cnt; ++i) comps.push_back(SymbolComponent::one_row(a));
      cnt = 0;
      continue;
    }
    if (a == -b) {
      if (cnt % 2 != 0) throw NonSymplecticFlag("unpaired symmetric row");
      for (int i = 0; i < cnt / 2; ++i) comps.push_back(SymbolComponent::two_row(a / 2, (a - b) / 2));
      cnt = 0;
      continue;
    }
    if (a < -b) continue;  // bottom row of a pair, consumed with its partner
    auto it = left.find({-b, -a});
    if (it == left.end() || it->second < cnt) throw NonSymplecticFlag("row without a skew-dual partner");
    for (int i = 0; i < cnt; ++i) comps.push_back(SymbolComponent::two_row(a / 2, (a - b) / 2));
    it->second -= cnt;
    cnt = 0;
  }
  for (const auto& [ab, cnt] : left)
    if (cnt != 0) throw NonSymplecticFlag("row without a skew-dual partner");
  out.symbol = FlagSymbol(std::move(comps));
  return out;
}

ExtractedFlag extract_flag_symbol(const FlagCurve& c) {
  const JacobiCase kind = jacobi_case(c.index_set);
  const HalfWeight j = kind == JacobiCase::RankTwo ? HalfWeight(1) : HalfWeight(0);
  return extract_flag_symbol(c.span(j), c.sigma, kind);
}

}  // namespace sp
