#include "sp/prolongpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sp/errors.hpp"

namespace sp {

namespace {

int monomial_weight(const Exponent& e, const std::vector<int>& w) {
  int s = 0;
  for (size_t i = 0; i < e.size(); ++i) s += e[i] * w[i];
  return s;
}

std::vector<int> twice_weights(const GradedSymplecticSpace& x) {
  std::vector<int> w;
  for (const auto& h : x.weights) w.push_back(h.twice_value);
  return w;
}

/// Sparse coefficient rows of polynomials against a shared exponent index.
struct PolyIndex {
  std::map<Exponent, int, GrlexLess> index;
  SparseRow row(const MultiPoly& p) {
    std::map<int, Rational> acc;
    for (const auto& [e, c] : p.terms()) {
      auto it = index.emplace(e, static_cast<int>(index.size())).first;
      acc[it->second] = c;
    }
    SparseRow r;
    for (auto& [k, v] : acc) r.emplace_back(k, v);
    return r;
  }
};

Rational falling_ratio(const Exponent& a, const Exponent& q) {
  // prod (a_i + q_i)! / q_i!
  Rational r = 1;
  for (size_t i = 0; i < a.size(); ++i)
    for (int t = q[i] + 1; t <= a[i] + q[i]; ++t) r *= t;
  return r;
}

Exponent add(const Exponent& a, const Exponent& b) {
  Exponent c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

MultiPoly determinant_poly(const std::vector<std::vector<MultiPoly>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly det(m.empty() ? 0 : m[0][0].nvars());
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    MultiPoly term = MultiPoly::constant(det.nvars(), 1);
    for (int i = 0; i < n && !term.is_zero(); ++i) term = term * m[i][perm[i]];
    if (inv % 2 == 0)
      det += term;
    else
      det -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Matrix exponential of a nilpotent matrix as a polynomial in one parameter variable.
std::vector<std::vector<MultiPoly>> exp_t(const RatMatrix& delta, int nvars, int tvar) {
  const int n = delta.rows();
  std::vector<std::vector<MultiPoly>> e(n, std::vector<MultiPoly>(n, MultiPoly(nvars)));
  RatMatrix pw = RatMatrix::identity(n);
  const MultiPoly t = MultiPoly::variable(nvars, tvar);
  MultiPoly tp = MultiPoly::constant(nvars, 1);
  for (int m = 0; !pw.is_zero(); ++m) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (pw(i, j) != 0) e[i][j] += pw(i, j) * tp;
    pw = rat(1, m + 1) * (delta * pw);
    tp = tp * t;
  }
  return e;
}

VarietySampler subspace_family(const GradedSymplecticSpace& x, const std::vector<int>& span, const std::string& name) {
  VarietySampler v;
  v.name = name;
  v.ambient = x.dim();
  v.arity = 1 + static_cast<int>(span.size());
  v.coord_weights = twice_weights(x);
  const auto e = exp_t(x.delta, v.arity, 0);
  for (int p = 0; p < x.dim(); ++p) {
    MultiPoly c(v.arity);
    for (size_t j = 0; j < span.size(); ++j) {
      if (e[p][span[j]].is_zero()) continue;
      c += e[p][span[j]] * MultiPoly::variable(v.arity, 1 + static_cast<int>(j));
    }
    v.coords.push_back(std::move(c));
  }
  return v;
}

/// Row rank modulo a 61-bit prime; rows independent here are independent over Q.
class ModPRank {
 public:
  explicit ModPRank(int cols) : cols_(cols), pivot_row_(cols, -1) {}
  int rank() const { return static_cast<int>(rows_.size()); }
  bool add(const Vec& v) {
    std::vector<uint64_t> r(cols_);
    for (int j = 0; j < cols_; ++j) {
      const auto red = reduce(v[j]);
      if (!red) return false;  // denominator divisible by the prime; treat the row as dependent
      r[j] = *red;
    }
    for (int j = 0; j < cols_; ++j) {
      if (r[j] == 0 || pivot_row_[j] < 0) continue;
      const uint64_t f = r[j];
      const auto& p = rows_[pivot_row_[j]];
      for (int q = j; q < cols_; ++q) r[q] = sub(r[q], mul(f, p[q]));
    }
    int lead = -1;
    for (int j = 0; j < cols_ && lead < 0; ++j)
      if (r[j] != 0) lead = j;
    if (lead < 0) return false;
    const uint64_t inv = power(r[lead], kP - 2);
    for (int q = lead; q < cols_; ++q) r[q] = mul(r[q], inv);
    for (auto& other : rows_) {
      if (other[lead] == 0) continue;
      const uint64_t f = other[lead];
      for (int q = lead; q < cols_; ++q) other[q] = sub(other[q], mul(f, r[q]));
    }
    pivot_row_[lead] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

 private:
  static constexpr uint64_t kP = (uint64_t{1} << 61) - 1;
  static uint64_t mul(uint64_t a, uint64_t b) { return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kP); }
  static uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kP - b; }
  static uint64_t power(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  static uint64_t of(const mpz_class& z) { return mpz_fdiv_ui(z.get_mpz_t(), kP); }
  static std::optional<uint64_t> reduce(const Rational& x) {
    const uint64_t d = of(x.get_den());
    if (d == 0) return std::nullopt;
    return mul(of(x.get_num()), power(d, kP - 2));
  }
  int cols_;
  std::vector<int> pivot_row_;
  std::vector<std::vector<uint64_t>> rows_;
};

HalfWeight first_isotropic_index(const GradedSymplecticSpace& x) {
  return x.symbol.index_set() == IndexSet::Integer ? HalfWeight::integer(1) : HalfWeight(1);
}

}  // namespace

// ---------------------------------------------------------------- PolySpace

bool PolySpace::contains(const MultiPoly& p) const {
  PolyIndex idx;
  std::vector<SparseRow> rows;
  for (const auto& b : basis) rows.push_back(idx.row(b));
  const SparseRow r = idx.row(p);
  SparseRref rref(static_cast<int>(idx.index.size()));
  for (const auto& row : rows) rref.add(row);
  return rref.reduce(r).empty();
}

bool PolySpace::contains(const PolySpace& o) const {
  PolyIndex idx;
  std::vector<SparseRow> rows, others;
  for (const auto& b : basis) rows.push_back(idx.row(b));
  for (const auto& b : o.basis) others.push_back(idx.row(b));
  SparseRref rref(static_cast<int>(idx.index.size()));
  for (const auto& row : rows) rref.add(row);
  for (const auto& r : others)
    if (!rref.reduce(r).empty()) return false;
  return true;
}

PolySpace poly_span(int nvars, int degree, const std::vector<MultiPoly>& gens) {
  PolySpace ps;
  ps.nvars = nvars;
  ps.degree = degree;
  PolyIndex idx;
  std::vector<SparseRow> rows;
  for (const auto& g : gens) rows.push_back(idx.row(g));
  SparseRref rref(static_cast<int>(idx.index.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_homogeneous(degree) && !gens[i].is_zero())
      throw ConstraintError("polynomial is not homogeneous of degree " + std::to_string(degree));
    if (rref.add(rows[i])) ps.basis.push_back(gens[i]);
  }
  return ps;
}

// ---------------------------------------------------------------- quadratic forms

MultiPoly quadratic_form(const GradedSymplecticSpace& x, const RatMatrix& a) {
  const int n = x.dim();
  const RatMatrix s = x.sigma * a;
  MultiPoly q(n);
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < n; ++r) {
      if (s(p, r) == 0) continue;
      Exponent e(n, 0);
      e[p] += 1;
      e[r] += 1;
      q.add_term(e, s(p, r));
    }
  return q;
}

PolySpace quadratic_forms(const GradedSymplecticSpace& x, const MatrixSubspace& w) {
  std::vector<MultiPoly> gens;
  for (const auto& a : w.basis) gens.push_back(quadratic_form(x, a));
  return poly_span(x.dim(), 2, gens);
}

RatMatrix form_to_matrix(const GradedSymplecticSpace& x, const MultiPoly& q) {
  const int n = x.dim();
  RatMatrix s(n, n);
  for (const auto& [e, c] : q.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < e[i]; ++m) idx.push_back(i);
    if (idx.size() != 2) throw ConstraintError("form_to_matrix expects a quadratic form");
    if (idx[0] == idx[1]) {
      s(idx[0], idx[0]) += c;
    } else {
      s(idx[0], idx[1]) += c / 2;
      s(idx[1], idx[0]) += c / 2;
    }
  }
  const auto inv = inverse(x.sigma);
  return *inv * s;
}

// ---------------------------------------------------------------- standard prolongation

PolySpace standard_prolong(const GradedSymplecticSpace& x, const MatrixSubspace& w, int k) {
  const int n = x.dim();
  const PolySpace wt = quadratic_forms(x, w);
  if (k == 0) return wt;
  PolySpace out;
  out.nvars = n;
  out.degree = k + 2;
  if (wt.dim() == 0) return out;

  // weight classes are used only when the form space is spanned by weight-homogeneous parts
  const auto quad = monomials_of_degree(n, 2);
  std::vector<int> wts = twice_weights(x);
  std::map<int, std::vector<int>> qclass;
  for (int i = 0; i < static_cast<int>(quad.size()); ++i) qclass[monomial_weight(quad[i], wts)].push_back(i);
  std::vector<Vec> wvecs;
  for (const auto& b : wt.basis) wvecs.push_back(coefficient_vector(b, quad));
  std::vector<Vec> parts;
  for (const auto& [c, idx] : qclass)
    for (const auto& v : wvecs) {
      Vec p(quad.size());
      for (int i : idx) p[i] = v[i];
      if (!is_zero(p)) parts.push_back(std::move(p));
    }
  const bool graded = span_rank(parts) == wt.dim();
  if (!graded) {
    qclass.clear();
    std::vector<int> all(quad.size());
    std::iota(all.begin(), all.end(), 0);
    qclass[0] = all;
    std::fill(wts.begin(), wts.end(), 0);
  }

  // annihilator functionals of the forms, class by class
  struct Functional {
    std::vector<std::pair<Exponent, Rational>> support;
  };
  std::vector<Functional> ann;
  for (const auto& [c, idx] : qclass) {
    RatMatrix m(static_cast<int>(wvecs.size()), static_cast<int>(idx.size()));
    for (size_t r = 0; r < wvecs.size(); ++r)
      for (size_t j = 0; j < idx.size(); ++j) m(static_cast<int>(r), static_cast<int>(j)) = wvecs[r][idx[j]];
    for (const auto& kv : kernel_basis(m)) {
      Functional f;
      for (size_t j = 0; j < idx.size(); ++j)
        if (kv[j] != 0) f.support.emplace_back(quad[idx[j]], kv[j]);
      ann.push_back(std::move(f));
    }
  }

  const auto top = monomials_of_degree(n, k + 2);
  std::map<int, std::vector<int>> tclass;
  std::map<Exponent, std::pair<int, int>, GrlexLess> where;
  for (int i = 0; i < static_cast<int>(top.size()); ++i) {
    const int c = monomial_weight(top[i], wts);
    where[top[i]] = {c, static_cast<int>(tclass[c].size())};
    tclass[c].push_back(i);
  }
  std::map<int, std::vector<SparseRow>> rows;
  for (const auto& alpha : monomials_of_degree(n, k)) {
    for (const auto& f : ann) {
      std::map<int, Rational> acc;
      int cls = 0;
      for (const auto& [q, lam] : f.support) {
        const auto pos = where.at(add(alpha, q));
        cls = pos.first;
        acc[pos.second] += lam * falling_ratio(alpha, q);
      }
      SparseRow r;
      for (auto& [c, v] : acc)
        if (v != 0) r.emplace_back(c, v);
      if (!r.empty()) rows[cls].push_back(std::move(r));
    }
  }
  for (const auto& [c, idx] : tclass) {
    for (const auto& kv : sparse_kernel(rows[c], static_cast<int>(idx.size()))) {
      MultiPoly p(n);
      for (size_t j = 0; j < idx.size(); ++j)
        if (kv[j] != 0) p.add_term(top[idx[j]], kv[j]);
      out.basis.push_back(std::move(p));
    }
  }
  return out;
}

// ---------------------------------------------------------------- varieties

Vec VarietySampler::point(const Vec& params) const {
  Vec out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(c.eval(params));
  return out;
}

VarietySampler rational_normal_curve(int d) {
  VarietySampler v;
  v.name = "rational normal curve of degree " + std::to_string(d);
  v.ambient = d + 1;
  v.arity = 1;
  const MultiPoly t = MultiPoly::variable(1, 0);
  for (int k = 0; k <= d; ++k) {
    v.coords.push_back(t.pow(k));
    v.coord_weights.push_back(k);
  }
  return v;
}

VarietySampler flat_normal_curve(int s, int l) { return tangential_developable(s, l, 0); }

VarietySampler tangential_developable(int s, int l, int j) {
  if (j < 0 || j > l) throw RangeError("tangential order out of range");
  VarietySampler v;
  v.name = "tangential developable of order " + std::to_string(j) + " in F of D(" + std::to_string(s) + "," +
           std::to_string(l) + ")";
  v.ambient = l + 1;
  v.arity = j + 2;
  const MultiPoly t = MultiPoly::variable(v.arity, 0);
  for (int k = 0; k <= l; ++k) {
    MultiPoly c(v.arity);
    for (int i = 0; i <= std::min(j, k); ++i)
      c += (Rational(1) / factorial(k - i)) * (t.pow(k - i) * MultiPoly::variable(v.arity, 1 + i));
    v.coords.push_back(std::move(c));
    v.coord_weights.push_back(k);
  }
  return v;
}

std::vector<int> secant_subspace(const GradedSymplecticSpace& x, int component) {
  std::vector<int> span = x.filtration(first_isotropic_index(x));
  const auto& comps = x.symbol.components();
  auto add_e0 = [&](int c) {
    const auto& k = comps[c];
    if (!k.is_two_row() || k.l == 2 * k.s) return;
    for (int r = 0; r < static_cast<int>(x.rows.size()); ++r) {
      if (x.rows[r].component != c || x.rows[r].kind != RowInterval::Kind::E) continue;
      for (int i : x.row_indices[r])
        if (x.weights[i].twice_value == 0) span.push_back(i);
    }
  };
  if (component < 0) {
    for (int c = 0; c < static_cast<int>(comps.size()); ++c) add_e0(c);
  } else if (component < static_cast<int>(comps.size())) {
    add_e0(component);
  }
  std::sort(span.begin(), span.end());
  span.erase(std::unique(span.begin(), span.end()), span.end());
  return span;
}

std::vector<VarietySampler> row_varieties(const GradedSymplecticSpace& x) {
  std::vector<VarietySampler> out;
  const auto& comps = x.symbol.components();
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    if (!comps[c].is_two_row()) continue;
    out.push_back(subspace_family(x, secant_subspace(x, c), "E_" + std::to_string(c + 1)));
  }
  if (x.symbol.has_one_row())
    out.push_back(subspace_family(x, secant_subspace(x, static_cast<int>(comps.size())), "E_R"));
  return out;
}

VarietySampler sum_variety(const GradedSymplecticSpace& x) { return subspace_family(x, secant_subspace(x, -1), "E"); }

// ---------------------------------------------------------------- secant ideals

bool vanishes_on_secant(const VarietySampler& v, const MultiPoly& p, int k) {
  const int total = (k + 1) * v.arity + k;
  std::vector<MultiPoly> coords(v.ambient, MultiPoly(total));
  for (int i = 0; i <= k; ++i) {
    std::vector<MultiPoly> shift;
    for (int m = 0; m < v.arity; ++m) shift.push_back(MultiPoly::variable(total, i * v.arity + m));
    const MultiPoly mix = i == 0 ? MultiPoly::constant(total, 1) : MultiPoly::variable(total, (k + 1) * v.arity + i - 1);
    for (int j = 0; j < v.ambient; ++j) coords[j] += mix * v.coords[j].substitute(shift);
  }
  return p.substitute(coords).is_zero();
}

PolySpace secant_ideal(const VarietySampler& v, int degree, int k, uint64_t seed) {
  PolySpace out;
  out.nvars = v.ambient;
  out.degree = degree;
  const auto monos = monomials_of_degree(v.ambient, degree);
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < static_cast<int>(monos.size()); ++i)
    classes[v.coord_weights.empty() ? 0 : monomial_weight(monos[i], v.coord_weights)].push_back(i);
  size_t largest = 0;
  for (const auto& [c, idx] : classes) largest = std::max(largest, idx.size());

  RationalRng rng(seed);
  std::vector<std::vector<Vec>> powers;  // powers[s][j][e] = x_j^e at sample s
  auto add_samples = [&](size_t count) {
    for (size_t c = 0; c < count; ++c) {
      Vec pt(v.ambient);
      for (int i = 0; i <= k; ++i) {
        Vec prm(v.arity);
        for (auto& a : prm) a = rng.next_int(-9, 9);
        const Vec q = v.point(prm);
        const Rational mix = i == 0 ? Rational(1) : Rational(rng.next_int(1, 9) * (rng.next_int(0, 1) ? 1 : -1));
        for (int j = 0; j < v.ambient; ++j) pt[j] += mix * q[j];
      }
      std::vector<Vec> pw(v.ambient, Vec(degree + 1));
      for (int j = 0; j < v.ambient; ++j) {
        pw[j][0] = 1;
        for (int e = 1; e <= degree; ++e) pw[j][e] = pw[j][e - 1] * pt[j];
      }
      powers.push_back(std::move(pw));
    }
  };
  add_samples(largest + 3);

  for (const auto& [c, idx] : classes) {
    const int m = static_cast<int>(idx.size());
    size_t used = 0;
    ModPRank screen(m);
    std::vector<Vec> kept;
    for (int attempt = 0;; ++attempt) {
      for (; used < powers.size() && screen.rank() < m; ++used) {
        Vec row(m);
        for (int j = 0; j < m; ++j) {
          Rational val = 1;
          const auto& e = monos[idx[j]];
          for (int q = 0; q < v.ambient && val != 0; ++q)
            if (e[q] > 0) val *= powers[used][q][e[q]];
          row[j] = val;
        }
        if (screen.add(row)) kept.push_back(std::move(row));
      }
      if (screen.rank() == m) break;
      std::vector<MultiPoly> cand;
      for (const auto& kv : kernel_basis(RatMatrix::from_rows(kept, m))) {
        MultiPoly p(v.ambient);
        for (int j = 0; j < m; ++j)
          if (kv[j] != 0) p.add_term(monos[idx[j]], kv[j]);
        cand.push_back(std::move(p));
      }
      bool ok = true;
      for (const auto& p : cand)
        if (!vanishes_on_secant(v, p, k)) {
          ok = false;
          break;
        }
      if (ok) {
        out.basis.insert(out.basis.end(), cand.begin(), cand.end());
        break;
      }
      if (attempt >= 5) throw CertificationFailure("sampled kernel element does not vanish on " + v.name);
      add_samples(static_cast<size_t>(m) + 3);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Hankel minors

std::optional<std::pair<int, int>> hankel_alpha_range(int s, int k) {
  const int lo = k + 1, hi = s - k;
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

PolySpace hankel_minor_space(int s, int k, int alpha) {
  const auto range = hankel_alpha_range(s, k);
  if (!range) throw RangeError("no admissible Hankel shape for s=" + std::to_string(s) + ", k=" + std::to_string(k));
  if (alpha < range->first || alpha > range->second)
    throw RangeError("alpha=" + std::to_string(alpha) + " outside [" + std::to_string(range->first) + ", " +
                     std::to_string(range->second) + "]");
  const int nv = s + 2;
  const int rows = alpha + 1, cols = s + 2 - alpha;
  std::vector<std::vector<int>> rsub, csub;
  std::vector<int> cur;
  subsets(rows, k + 2, 0, cur, rsub);
  subsets(cols, k + 2, 0, cur, csub);
  std::vector<MultiPoly> minors;
  for (const auto& rs : rsub)
    for (const auto& cs : csub) {
      std::vector<std::vector<MultiPoly>> m(k + 2, std::vector<MultiPoly>(k + 2, MultiPoly(nv)));
      for (int i = 0; i < k + 2; ++i)
        for (int j = 0; j < k + 2; ++j) m[i][j] = MultiPoly::variable(nv, rs[i] + cs[j]);
      minors.push_back(determinant_poly(m));
    }
  return poly_span(nv, k + 2, minors);
}

MultiPoly moment_to_flat(const MultiPoly& p) {
  std::vector<MultiPoly> img;
  for (int i = 0; i < p.nvars(); ++i) img.push_back(factorial(i) * MultiPoly::variable(p.nvars(), i));
  return p.substitute(img);
}

// ---------------------------------------------------------------- tensors

std::vector<Vec> poly_tensors(const GradedSymplecticSpace& x, const PolySpace& ps) {
  const int n = x.dim();
  const int k = ps.degree - 2;
  const RatMatrix sinv = *inverse(x.sigma);
  std::vector<Vec> out;
  for (const auto& p : ps.basis) {
    Vec t;
    std::vector<int> idx(k, 0);
    for (;;) {
      MultiPoly d = p;
      for (int v : idx) d = d.derivative(v);
      RatMatrix s(n, n);
      for (const auto& [e, c] : d.terms()) {
        std::vector<int> vs;
        for (int i = 0; i < n; ++i)
          for (int m = 0; m < e[i]; ++m) vs.push_back(i);
        if (vs[0] == vs[1]) {
          s(vs[0], vs[0]) += c;
        } else {
          s(vs[0], vs[1]) += c / 2;
          s(vs[1], vs[0]) += c / 2;
        }
      }
      const RatMatrix a = sinv * s;
      for (int v = 0; v < n; ++v)
        for (int o = 0; o < n; ++o) t.push_back(a(o, v));
      int pos = k - 1;
      while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
      if (pos < 0) break;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Vec> tanaka_tensors(const ProlongationReport& rep, int k, int n) {
  if (k >= static_cast<int>(rep.levels.size())) return {};
  // level 0: T_g(v) = A_g v
  std::vector<Vec> cur;
  for (const auto& g : rep.levels[0].images) {
    Vec t;
    for (int v = 0; v < n; ++v) t.insert(t.end(), g[v].begin(), g[v].end());
    cur.push_back(std::move(t));
  }
  for (int j = 1; j <= k; ++j) {
    std::vector<Vec> next;
    for (const auto& f : rep.levels[j].images) {
      Vec t;
      for (int v = 0; v < n; ++v) {
        Vec acc(cur.empty() ? 0 : cur[0].size());
        for (size_t r = 0; r < f[v].size(); ++r)
          if (f[v][r] != 0) acc = acc + f[v][r] * cur[r];
        t.insert(t.end(), acc.begin(), acc.end());
      }
      next.push_back(std::move(t));
    }
    cur = std::move(next);
  }
  return cur;
}

PolySpace restrict_to_row(const GradedSymplecticSpace& x, const PolySpace& ps, int row) {
  const auto& idx = x.row_indices.at(row);
  const int m = static_cast<int>(idx.size());
  std::vector<MultiPoly> gens;
  for (const auto& p : ps.basis) {
    MultiPoly q(m);
    for (const auto& [e, c] : p.terms()) {
      Exponent f(m, 0);
      int used = 0;
      for (int j = 0; j < m; ++j) {
        f[j] = e[idx[j]];
        used += f[j];
      }
      if (used == ps.degree) q.add_term(f, c);
    }
    gens.push_back(std::move(q));
  }
  return poly_span(m, ps.degree, gens);
}

// ---------------------------------------------------------------- theorem harness

bool genpr_hypotheses(const FlagSymbol& s, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  const Finiteness f = classify_finiteness(s);
  if (!f.finite) return fail("symbol is of infinite type: " + f.reason);
  for (const auto& r : symbol_rows(s)) {
    if (r.kind != RowInterval::Kind::R && r.length() < 4) return fail("a two-row component has a row with fewer than 4 boxes");
    if (r.kind == RowInterval::Kind::R && r.length() < 6) return fail("the one-row component has fewer than 6 boxes");
  }
  if (why) why->clear();
  return true;
}

bool secant_hypotheses(const FlagSymbol& s, std::string* why) {
  const auto& c = s.components();
  for (const auto& k : c)
    if (k.is_two_row() && k.l == 2 * k.s) {
      if (why) *why = "rectangular component " + k.str();
      return false;
    }
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j) {
      if (!c[i].is_two_row() || !c[j].is_two_row()) continue;
      if (c[i].s + c[j].s <= std::max(c[i].l, c[j].l)) {
        if (why) *why = "components " + c[i].str() + " and " + c[j].str() + " have s1 + s2 <= max(l1, l2)";
        return false;
      }
    }
  if (why) why->clear();
  return true;
}

bool VerifyReport::all_pass() const {
  for (const auto& t : theorems)
    if (t.applicable && !t.pass) return false;
  return true;
}

ProlongationReport symbol_prolongation(const GradedSymplecticSpace& x, int k_max, bool throw_on_cap) {
  const FlagProlongation fp = flag_prolong(x);
  const GradedLieAlgebra eta = heisenberg(x);
  MatrixSubspace g0(x.dim() + 1, x.dim() + 1);
  for (const auto& m : fp.all().basis) g0.basis.push_back(csp_to_derivation(x, m));
  return throw_on_cap ? tanaka_prolong(eta, g0, k_max) : tanaka_probe(eta, g0, k_max);
}

VerifyReport verify_prolongation_theorems(const FlagSymbol& s, int k_max, uint64_t seed) {
  VerifyReport rep;
  rep.symbol = s;
  rep.k_max = k_max;
  rep.seed = seed;
  const GradedSymplecticSpace x = build_model_space(s);
  const int n = x.dim();
  rep.genpr_hypotheses = genpr_hypotheses(s, &rep.hypotheses_note);
  std::string sec_why;
  const bool sec_ok = secant_hypotheses(s, &sec_why);

  const ProlongationReport pr = symbol_prolongation(x, k_max, false);
  const AZPDecomposition azp = decompose_azp(x);

  const auto& comps = s.components();
  const bool single = comps.size() == 1 && comps[0].is_two_row();
  const bool tangential = single && comps[0].s < comps[0].l && comps[0].l < 2 * comps[0].s;
  const bool hankel = single && comps[0].l == comps[0].s + 1;
  int frow = -1;
  if (single)
    for (int r = 0; r < static_cast<int>(x.rows.size()); ++r)
      if (x.rows[r].kind == RowInterval::Kind::F) frow = r;

  TheoremRow t_p{"tanaka_eq_p", rep.genpr_hypotheses, true, rep.hypotheses_note};
  TheoremRow t_l{"tanaka_eq_lX", rep.genpr_hypotheses, true, rep.hypotheses_note};
  TheoremRow t_inc{"secant_row_inclusion", rep.genpr_hypotheses, true, rep.hypotheses_note};
  TheoremRow t_eq{"secant_equality", rep.genpr_hypotheses && sec_ok, true,
                  rep.genpr_hypotheses ? sec_why : rep.hypotheses_note};
  TheoremRow t_tan{"tangential_equality", tangential, true,
                   tangential ? "" : "requires a single component D(s,l) with s < l < 2s"};
  TheoremRow t_han{"hankel", hankel && tangential, true,
                   hankel && tangential ? "" : "requires a single component D(s,s+1) with s >= 2"};
  const auto rowvars = row_varieties(x);
  std::optional<VarietySampler> esum;
  if (t_eq.applicable) esum = sum_variety(x);
  std::optional<VarietySampler> tdev;
  if (tangential) tdev = tangential_developable(comps[0].s, comps[0].l, comps[0].l - comps[0].s - 1);

  auto fail = [](TheoremRow& t, const std::string& msg) {
    if (t.pass) t.note = msg;
    t.pass = false;
  };

  for (int k = 0; k <= k_max; ++k) {
    const PolySpace pk = standard_prolong(x, azp.p, k);
    DegreeRow row;
    row.k = k;
    row.p = pk.dim();
    if (k >= 1) {
      const PolySpace lk = standard_prolong(x, azp.l_of_x, k);
      row.u = pr.dim(k);
      row.lx = lk.dim();
      if (t_p.applicable && pr.terminated) {
        if (row.u != row.p) fail(t_p, "dimension mismatch at k=" + std::to_string(k));
        if (row.u != row.lx) fail(t_l, "dimension mismatch at k=" + std::to_string(k));
        if (row.u > 0 && row.u == row.p && row.u == row.lx) {
          const auto tt = tanaka_tensors(pr, k, n);
          if (!spans_equal(tt, poly_tensors(x, pk))) fail(t_p, "spaces differ at k=" + std::to_string(k));
          if (!spans_equal(tt, poly_tensors(x, lk))) fail(t_l, "spaces differ at k=" + std::to_string(k));
        }
      }
    } else {
      row.u = pr.dim(0);
      row.lx = azp.l_of_x.dim();
    }
    if (t_inc.applicable)
      for (const auto& v : rowvars)
        for (const auto& p : pk.basis)
          if (!vanishes_on_secant(v, p, k)) fail(t_inc, "a polynomial does not vanish on S^" + std::to_string(k) + v.name);
    if (t_eq.applicable && k >= 1) {
      const PolySpace ide = secant_ideal(*esum, k + 2, k, seed);
      row.secant_sum = ide.dim();
      if (!ide.equals(pk)) fail(t_eq, "ideal differs from the prolongation at k=" + std::to_string(k));
    }
    if (tangential) {
      const PolySpace pf = restrict_to_row(x, pk, frow);
      const PolySpace ide = secant_ideal(*tdev, k + 2, k, seed);
      row.tangential = ide.dim();
      if (pf.dim() != pk.dim()) fail(t_tan, "prolongation is not supported on F");
      if (!ide.equals(pf)) fail(t_tan, "ideal differs from the prolongation at k=" + std::to_string(k));
      if (hankel) {
        const auto range = hankel_alpha_range(comps[0].s, k);
        if (!range) {
          if (pf.dim() != 0) fail(t_han, "no Hankel shape but nonzero prolongation at k=" + std::to_string(k));
        } else {
          for (int a = range->first; a <= range->second; ++a) {
            std::vector<MultiPoly> gens;
            for (const auto& h : hankel_minor_space(comps[0].s, k, a).basis) gens.push_back(moment_to_flat(h));
            if (!poly_span(pf.nvars, k + 2, gens).equals(pf))
              fail(t_han, "Hankel minors differ at k=" + std::to_string(k) + ", alpha=" + std::to_string(a));
          }
        }
      }
    }
    rep.degrees.push_back(row);
  }
  rep.theorems = {t_p, t_l, t_inc, t_eq, t_tan, t_han};
  return rep;
}

}  // namespace sp
