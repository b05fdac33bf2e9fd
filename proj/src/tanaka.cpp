#include "sp/tanaka.hpp"

#include <map>

#include "sp/errors.hpp"

namespace sp {

// ---------------------------------------------------------------- MatrixSubspace

MatrixSubspace MatrixSubspace::span_of(int r, int c, const std::vector<RatMatrix>& gens) {
  MatrixSubspace out(r, c);
  SparseRref rref(r * c);
  for (const auto& g : gens) {
    if (rref.add(g.flatten())) out.basis.push_back(g);
  }
  return out;
}

MatrixSubspace MatrixSubspace::from_flat(int r, int c, const std::vector<Vec>& flat) {
  std::vector<RatMatrix> gens;
  gens.reserve(flat.size());
  for (const auto& v : flat) gens.push_back(RatMatrix::unflatten(v, r, c));
  return span_of(r, c, gens);
}

std::vector<Vec> MatrixSubspace::flat() const {
  std::vector<Vec> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(b.flatten());
  return out;
}

bool MatrixSubspace::contains(const RatMatrix& m) const {
  SparseRref rref(rows * cols);
  for (const auto& b : basis) rref.add(b.flatten());
  return rref.contains(m.flatten());
}

bool MatrixSubspace::contains(const MatrixSubspace& o) const {
  SparseRref rref(rows * cols);
  for (const auto& b : basis) rref.add(b.flatten());
  for (const auto& b : o.basis) {
    if (!rref.contains(b.flatten())) return false;
  }
  return true;
}

MatrixSubspace MatrixSubspace::sum(const MatrixSubspace& o) const {
  std::vector<RatMatrix> gens = basis;
  gens.insert(gens.end(), o.basis.begin(), o.basis.end());
  return span_of(rows, cols, gens);
}

MatrixSubspace MatrixSubspace::intersect(const MatrixSubspace& o) const {
  return from_flat(rows, cols, intersect_spans(flat(), o.flat(), rows * cols));
}

// ---------------------------------------------------------------- derivations

bool is_derivation(const GradedLieAlgebra& t, const RatMatrix& d) {
  const int n = t.dim();
  for (int a = 0; a < n; ++a) {
    const Vec da = d.col(a);
    for (int b = a + 1; b < n; ++b) {
      const Vec lhs = d * t.bracket(a, b);
      const Vec rhs = t.bracket(da, t.basis_vector(b)) + t.bracket(t.basis_vector(a), d.col(b));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

MatrixSubspace deg0_derivations(const GradedLieAlgebra& t) {
  const int n = t.dim();
  // unknowns: entries D(p, q) with equal weights
  std::vector<std::vector<int>> var(n, std::vector<int>(n, -1));
  int nv = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (t.weight(p) == t.weight(q)) var[p][q] = nv++;

  std::vector<SparseRow> rows;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      // D[b_a, b_b] - [D b_a, b_b] - [b_a, D b_b] = 0, one equation per output coordinate
      std::vector<std::map<int, Rational>> eq(n);
      const Vec& ab = t.bracket(a, b);
      for (int m = 0; m < n; ++m) {
        if (ab[m] == 0) continue;
        for (int p = 0; p < n; ++p)
          if (var[p][m] >= 0) eq[p][var[p][m]] += ab[m];
      }
      for (int r = 0; r < n; ++r) {
        if (var[r][a] < 0) continue;
        const Vec& rb = t.bracket(r, b);
        for (int p = 0; p < n; ++p)
          if (rb[p] != 0) eq[p][var[r][a]] -= rb[p];
      }
      for (int r = 0; r < n; ++r) {
        if (var[r][b] < 0) continue;
        const Vec& ar = t.bracket(a, r);
        for (int p = 0; p < n; ++p)
          if (ar[p] != 0) eq[p][var[r][b]] -= ar[p];
      }
      for (auto& e : eq) {
        SparseRow row;
        for (auto& [k, v] : e)
          if (v != 0) row.emplace_back(k, v);
        if (!row.empty()) rows.push_back(std::move(row));
      }
    }
  }
  std::vector<RatMatrix> gens;
  for (const auto& k : sparse_kernel(rows, nv)) {
    RatMatrix d(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (var[p][q] >= 0) d(p, q) = k[var[p][q]];
    gens.push_back(d);
  }
  return MatrixSubspace::span_of(n, n, gens);
}

std::optional<Rational> conformal_factor(const RatMatrix& sigma, const RatMatrix& a) {
  const RatMatrix lhs = a.transpose() * sigma + sigma * a;
  std::optional<Rational> c;
  for (int i = 0; i < sigma.rows(); ++i) {
    for (int j = 0; j < sigma.cols(); ++j) {
      if (sigma(i, j) == 0) {
        if (lhs(i, j) != 0) return std::nullopt;
        continue;
      }
      Rational q = lhs(i, j) / sigma(i, j);
      if (c && *c != q) return std::nullopt;
      c = q;
    }
  }
  return c ? c : std::optional<Rational>(Rational(0));
}

RatMatrix csp_to_derivation(const GradedSymplecticSpace& x, const RatMatrix& a) {
  const auto c = conformal_factor(x.sigma, a);
  if (!c) throw ConstraintError("matrix is not conformally symplectic");
  const int n = x.dim();
  RatMatrix d(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = a(i, j);
  d(n, n) = *c;
  return d;
}

// ---------------------------------------------------------------- prolongation engine

namespace {

struct Elem {
  int level = 0;
  Vec coords;
};

class Engine {
 public:
  Engine(const GradedLieAlgebra& t, ProlongationReport& rep) : t_(t), rep_(rep), n_(t.dim()) {
    local_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      if (t.weight(i) >= 0) throw ConstraintError("the graded algebra must be negatively graded");
      auto& blk = block_[t.weight(i)];
      local_[i] = static_cast<int>(blk.size());
      blk.push_back(i);
    }
  }

  int vdim(int level) const {
    if (level < 0) {
      auto it = block_.find(level);
      return it == block_.end() ? 0 : static_cast<int>(it->second.size());
    }
    return level < static_cast<int>(rep_.levels.size()) ? rep_.levels[level].dim() : 0;
  }

  /// Bracket of basis element r of V_level with the t basis vector b, in V_{level + w(b)}.
  Vec basis_act(int level, int r, int b) const {
    const int target = level + t_.weight(b);
    Vec out(vdim(target));
    if (out.empty()) return out;
    if (level < 0) {
      const Vec& br = t_.bracket(block_.at(level)[r], b);
      for (int k : block_.at(target)) out[local_[k]] = br[k];
      return out;
    }
    return rep_.levels[level].images[r][b];
  }

  Elem act(const Elem& x, int b) const {
    Elem out{x.level + t_.weight(b), Vec(vdim(x.level + t_.weight(b)))};
    if (out.coords.empty()) return out;
    for (size_t r = 0; r < x.coords.size(); ++r) {
      if (x.coords[r] == 0) continue;
      const Vec img = basis_act(x.level, static_cast<int>(r), b);
      for (size_t k = 0; k < img.size(); ++k)
        if (img[k] != 0) out.coords[k] += x.coords[r] * img[k];
    }
    return out;
  }

  Elem bracket(const Elem& x, const Elem& y) {
    const int level = x.level + y.level;
    Elem out{level, Vec(vdim(level))};
    if (is_zero(x.coords) || is_zero(y.coords)) return out;
    if (x.level < 0 && y.level < 0) {
      const auto& bx = block_.at(x.level);
      const auto& by = block_.at(y.level);
      for (size_t r = 0; r < bx.size(); ++r) {
        if (x.coords[r] == 0) continue;
        for (size_t s = 0; s < by.size(); ++s) {
          if (y.coords[s] == 0) continue;
          const Vec& br = t_.bracket(bx[r], by[s]);
          for (int k = 0; k < n_; ++k) {
            if (br[k] == 0) continue;
            if (t_.weight(k) != level) throw JacobiViolation("bracket does not respect the grading");
            out.coords[local_[k]] += x.coords[r] * y.coords[s] * br[k];
          }
        }
      }
      return out;
    }
    if (x.level < 0) {
      Elem r = bracket(y, x);
      for (auto& c : r.coords) c = -c;
      return r;
    }
    if (y.level < 0) {
      const auto& by = block_.at(y.level);
      for (size_t s = 0; s < by.size(); ++s) {
        if (y.coords[s] == 0) continue;
        const Elem a = act(x, by[s]);
        for (size_t k = 0; k < a.coords.size(); ++k) out.coords[k] += y.coords[s] * a.coords[k];
      }
      return out;
    }
    // both non-negative: [X, Y](b) = [X b, Y] + [X, Y b]
    Vec flat;
    for (int b = 0; b < n_; ++b) {
      const Elem xb = act(x, b);
      const Elem yb = act(y, b);
      Elem p = bracket(xb, y);
      const Elem q = bracket(x, yb);
      for (size_t k = 0; k < p.coords.size(); ++k) p.coords[k] += q.coords[k];
      flat.insert(flat.end(), p.coords.begin(), p.coords.end());
    }
    if (out.coords.empty()) {
      if (!is_zero(flat)) throw DimensionMismatch("bracket lands beyond the computed prolongation");
      return out;
    }
    auto c = solver(level).coords(flat);
    if (!c) throw JacobiViolation("bracket of prolongation elements is not a prolongation element");
    out.coords = *c;
    return out;
  }

  /// Computes the degree-k level from the levels below it.
  ProlongationLevel solve_level(int k) {
    std::vector<int> offset(n_ + 1, 0);
    for (int i = 0; i < n_; ++i) offset[i + 1] = offset[i] + vdim(k + t_.weight(i));
    const int nv = offset[n_];
    ProlongationLevel lvl;
    lvl.degree = k;
    if (nv == 0) return lvl;

    std::vector<SparseRow> rows;
    for (int a = 0; a < n_; ++a) {
      const int la = k + t_.weight(a);
      const int da = vdim(la);
      for (int b = a + 1; b < n_; ++b) {
        const int lb = k + t_.weight(b);
        const int db = vdim(lb);
        const int target = la + t_.weight(b);
        const int dt = vdim(target);
        if (dt == 0) continue;
        std::vector<std::map<int, Rational>> eq(dt);
        const Vec& ab = t_.bracket(a, b);
        for (int m = 0; m < n_; ++m) {
          if (ab[m] == 0) continue;
          if (k + t_.weight(m) != target) throw JacobiViolation("bracket does not respect the grading");
          for (int q = 0; q < dt; ++q) eq[q][offset[m] + q] += ab[m];
        }
        for (int r = 0; r < da; ++r) {
          const Vec img = basis_act(la, r, b);
          for (int q = 0; q < dt; ++q)
            if (img[q] != 0) eq[q][offset[a] + r] -= img[q];
        }
        for (int r = 0; r < db; ++r) {
          const Vec img = basis_act(lb, r, a);
          for (int q = 0; q < dt; ++q)
            if (img[q] != 0) eq[q][offset[b] + r] += img[q];
        }
        for (auto& e : eq) {
          SparseRow row;
          for (auto& [col, v] : e)
            if (v != 0) row.emplace_back(col, v);
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }
    }
    for (const auto& kv : sparse_kernel(rows, nv)) {
      std::vector<Vec> images(n_);
      for (int i = 0; i < n_; ++i) images[i] = Vec(kv.begin() + offset[i], kv.begin() + offset[i + 1]);
      lvl.images.push_back(std::move(images));
    }
    return lvl;
  }

  const CoordinateSolver& solver(int level) {
    auto it = solvers_.find(level);
    if (it != solvers_.end()) return it->second;
    std::vector<Vec> flats;
    for (const auto& imgs : rep_.levels[level].images) {
      Vec f;
      for (const auto& v : imgs) f.insert(f.end(), v.begin(), v.end());
      flats.push_back(std::move(f));
    }
    return solvers_.emplace(level, CoordinateSolver(flats)).first->second;
  }

  const std::map<int, std::vector<int>>& blocks() const { return block_; }
  const std::vector<int>& local() const { return local_; }

 private:
  const GradedLieAlgebra& t_;
  ProlongationReport& rep_;
  int n_;
  std::map<int, std::vector<int>> block_;
  std::vector<int> local_;
  std::map<int, CoordinateSolver> solvers_;
};

ProlongationLevel level_zero(const GradedLieAlgebra& t, const MatrixSubspace& g0,
                             const std::map<int, std::vector<int>>& blocks, const std::vector<int>& local) {
  const int n = t.dim();
  if (g0.rows != n || g0.cols != n) throw DimensionMismatch("g0 matrices must act on the graded algebra");
  ProlongationLevel lvl;
  lvl.degree = 0;
  for (const auto& d : g0.basis) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (d(p, q) != 0 && t.weight(p) != t.weight(q))
          throw ConstraintError("g0 element does not preserve the grading");
    if (!is_derivation(t, d)) throw ConstraintError("g0 element is not a derivation");
    std::vector<Vec> images(n);
    for (int i = 0; i < n; ++i) {
      const auto& blk = blocks.at(t.weight(i));
      Vec v(blk.size());
      for (size_t r = 0; r < blk.size(); ++r) v[r] = d(blk[r], i);
      images[i] = std::move(v);
    }
    (void)local;
    lvl.images.push_back(std::move(images));
  }
  return lvl;
}

ProlongationReport run(const GradedLieAlgebra& t, const MatrixSubspace& g0, int k_max) {
  ProlongationReport rep;
  rep.t_dim = t.dim();
  Engine eng(t, rep);
  rep.levels.push_back(level_zero(t, g0, eng.blocks(), eng.local()));
  if (rep.levels[0].dim() == 0) {
    rep.terminated = true;
    rep.termination_degree = 0;
  }
  for (int k = 1; k <= k_max && !rep.terminated; ++k) {
    rep.levels.push_back(eng.solve_level(k));
    if (rep.levels.back().dim() == 0) {
      rep.terminated = true;
      rep.termination_degree = k;
    }
  }
  if (rep.terminated) {
    const int k = *rep.termination_degree + 1;
    rep.confirming_dim = eng.solve_level(k).dim();
  }
  // trailing zero levels are not part of the algebra
  while (rep.levels.size() > 1 && rep.levels.back().dim() == 0) rep.levels.pop_back();
  return rep;
}

}  // namespace

int ProlongationReport::total_dim() const {
  int s = t_dim;
  for (const auto& l : levels) s += l.dim();
  return s;
}

ProlongationReport tanaka_probe(const GradedLieAlgebra& t, const MatrixSubspace& g0, int k_max) {
  return run(t, g0, k_max);
}

ProlongationReport tanaka_prolong(const GradedLieAlgebra& t, const MatrixSubspace& g0, int k_max) {
  ProlongationReport rep = run(t, g0, k_max);
  if (!rep.terminated) {
    throw CapReached("prolongation did not terminate by degree " + std::to_string(k_max) +
                     " (last dimension " + std::to_string(rep.levels.back().dim()) + ")");
  }
  return rep;
}

bool leibniz_holds(const GradedLieAlgebra& t, const ProlongationReport& report, int k, int element, int a, int b) {
  ProlongationReport rep = report;
  Engine eng(t, rep);
  const auto& imgs = rep.levels.at(k).images.at(element);
  const int la = k + t.weight(a);
  const int lb = k + t.weight(b);
  const int target = la + t.weight(b);
  Vec lhs(eng.vdim(target));
  const Vec& ab = t.bracket(a, b);
  for (int m = 0; m < t.dim(); ++m) {
    if (ab[m] == 0 || imgs[m].empty()) continue;
    lhs = lhs + ab[m] * imgs[m];
  }
  Elem fa{la, imgs[a]};
  Elem fb{lb, imgs[b]};
  Vec rhs = eng.act(fa, b).coords - eng.act(fb, a).coords;
  return lhs == rhs;
}

GradedLieAlgebra assemble_algebra(const GradedLieAlgebra& t, const ProlongationReport& report) {
  ProlongationReport rep = report;
  Engine eng(t, rep);
  const int n = t.dim();
  std::vector<int> level_offset(rep.levels.size() + 1, n);
  for (size_t k = 0; k < rep.levels.size(); ++k) level_offset[k + 1] = level_offset[k] + rep.levels[k].dim();
  const int total = level_offset.back();

  std::vector<std::string> labels = t.labels();
  std::vector<int> weights = t.weights();
  for (size_t k = 0; k < rep.levels.size(); ++k) {
    for (int e = 0; e < rep.levels[k].dim(); ++e) {
      labels.push_back("g" + std::to_string(k) + "_" + std::to_string(e));
      weights.push_back(static_cast<int>(k));
    }
  }
  GradedLieAlgebra out(labels, weights);

  auto elem_of = [&](int i) {
    if (i < n) {
      Elem e{t.weight(i), Vec(eng.vdim(t.weight(i)))};
      e.coords[eng.local()[i]] = 1;
      return e;
    }
    int k = 0;
    while (i >= level_offset[k + 1]) ++k;
    Elem e{k, Vec(rep.levels[k].dim())};
    e.coords[i - level_offset[k]] = 1;
    return e;
  };
  auto global_of = [&](const Elem& e) {
    Vec v(total);
    if (e.level < 0) {
      if (!e.coords.empty()) {
        const auto& blk = eng.blocks().at(e.level);
        for (size_t r = 0; r < blk.size(); ++r) v[blk[r]] = e.coords[r];
      }
    } else if (e.level < static_cast<int>(rep.levels.size())) {
      for (size_t r = 0; r < e.coords.size(); ++r) v[level_offset[e.level] + r] = e.coords[r];
    }
    return v;
  };

  for (int i = 0; i < total; ++i) {
    const Elem x = elem_of(i);
    for (int j = i + 1; j < total; ++j) {
      if (i < n && j < n) {
        out.set_bracket(i, j, [&] {
          Vec v(total);
          const Vec& b = t.bracket(i, j);
          for (int k = 0; k < n; ++k) v[k] = b[k];
          return v;
        }());
        continue;
      }
      const Elem y = elem_of(j);
      if (x.level + y.level >= static_cast<int>(rep.levels.size())) continue;
      out.set_bracket(i, j, global_of(eng.bracket(x, y)));
    }
  }
  return out;
}

// ---------------------------------------------------------------- Killing form

RatMatrix killing_form(const GradedLieAlgebra& a) {
  const int n = a.dim();
  std::vector<RatMatrix> ads;
  ads.reserve(n);
  for (int i = 0; i < n; ++i) ads.push_back(a.ad(i));
  RatMatrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Rational tr = 0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          if (ads[i](p, q) != 0 && ads[j](q, p) != 0) tr += ads[i](p, q) * ads[j](q, p);
      b(i, j) = tr;
      b(j, i) = tr;
    }
  }
  return b;
}

KillingSignature symmetric_inertia(const RatMatrix& input) {
  RatMatrix b = input;
  const int n = b.rows();
  KillingSignature sig;
  std::vector<char> done(n, 0);
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int k = 0; k < n && piv < 0; ++k)
      if (!done[k] && b(k, k) != 0) piv = k;
    if (piv < 0) {
      // all remaining diagonal entries vanish; create one from an off-diagonal entry
      int pk = -1, pj = -1;
      for (int k = 0; k < n && pk < 0; ++k) {
        if (done[k]) continue;
        for (int j = 0; j < n; ++j)
          if (!done[j] && j != k && b(k, j) != 0) {
            pk = k;
            pj = j;
            break;
          }
      }
      if (pk < 0) break;
      for (int c = 0; c < n; ++c) b(pk, c) += b(pj, c);
      for (int r = 0; r < n; ++r) b(r, pk) += b(r, pj);
      piv = pk;
    }
    done[piv] = 1;
    const Rational d = b(piv, piv);
    if (d > 0) ++sig.positive;
    else ++sig.negative;
    for (int r = 0; r < n; ++r) {
      if (done[r] || b(r, piv) == 0) continue;
      const Rational f = b(r, piv) / d;
      for (int c = 0; c < n; ++c)
        if (b(piv, c) != 0) b(r, c) -= f * b(piv, c);
    }
    for (int c = 0; c < n; ++c) {
      if (done[c] || b(piv, c) == 0) continue;
      b(piv, c) = 0;
      b(c, piv) = 0;
    }
  }
  sig.rank = sig.positive + sig.negative;
  return sig;
}

KillingSignature killing_signature(const GradedLieAlgebra& a) { return symmetric_inertia(killing_form(a)); }

}  // namespace sp
