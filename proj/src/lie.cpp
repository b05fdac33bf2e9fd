#include "sp/lie.hpp"

#include "sp/errors.hpp"

namespace sp {

GradedLieAlgebra::GradedLieAlgebra(std::vector<std::string> labels, std::vector<int> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.size() != weights_.size()) throw DimensionMismatch("labels and weights differ in length");
  table_.assign(static_cast<size_t>(dim()) * dim(), Vec(dim()));
}

void GradedLieAlgebra::set_bracket(int i, int j, const Vec& v) {
  if (static_cast<int>(v.size()) != dim()) throw DimensionMismatch("bracket vector length");
  if (i == j && !is_zero(v)) throw JacobiViolation("[b_i, b_i] must vanish");
  table_[static_cast<size_t>(i) * dim() + j] = v;
  table_[static_cast<size_t>(j) * dim() + i] = Rational(-1) * v;
}

void GradedLieAlgebra::set_constant(int i, int j, int k, const Rational& c) {
  table_[static_cast<size_t>(i) * dim() + j][k] = c;
}

Vec GradedLieAlgebra::basis_vector(int i) const {
  Vec v(dim());
  v[i] = 1;
  return v;
}

Vec GradedLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec r(dim());
  for (int i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (sgn(y[j]) == 0) continue;
      const Vec& b = bracket(i, j);
      const Rational c = x[i] * y[j];
      for (int k = 0; k < dim(); ++k)
        if (sgn(b[k]) != 0) r[k] += c * b[k];
    }
  }
  return r;
}

RatMatrix GradedLieAlgebra::ad(int i) const {
  RatMatrix m(dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    const Vec& b = bracket(i, j);
    for (int k = 0; k < dim(); ++k) m(k, j) = b[k];
  }
  return m;
}

RatMatrix GradedLieAlgebra::ad(const Vec& x) const {
  RatMatrix m(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (sgn(x[i]) != 0) m = m + x[i] * ad(i);
  return m;
}

std::vector<int> GradedLieAlgebra::indices_of_weight(int w) const {
  std::vector<int> idx;
  for (int i = 0; i < dim(); ++i)
    if (weights_[i] == w) idx.push_back(i);
  return idx;
}

bool GradedLieAlgebra::is_antisymmetric() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i; j < dim(); ++j)
      if (bracket(i, j) != Rational(-1) * bracket(j, i)) return false;
  return true;
}

bool GradedLieAlgebra::respects_grading() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      const Vec& b = bracket(i, j);
      for (int k = 0; k < dim(); ++k)
        if (sgn(b[k]) != 0 && weights_[k] != weights_[i] + weights_[j]) return false;
    }
  return true;
}

std::optional<JacobiViolationInfo> check_jacobi(const GradedLieAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec& ij = a.bracket(i, j);
      for (int k = j + 1; k < n; ++k) {
        Vec s = a.bracket(ij, a.basis_vector(k));
        s = s + a.bracket(a.bracket(j, k), a.basis_vector(i));
        s = s + a.bracket(a.bracket(k, i), a.basis_vector(j));
        if (!is_zero(s)) return JacobiViolationInfo{i, j, k};
      }
    }
  return std::nullopt;
}

int generated_dimension(const GradedLieAlgebra& a, const std::vector<int>& generators) {
  std::vector<Vec> span;
  SparseRref r(a.dim());
  for (int g : generators) {
    Vec v = a.basis_vector(g);
    if (r.add(v)) span.push_back(v);
  }
  for (size_t p = 0; p < span.size(); ++p)
    for (int g : generators) {
      Vec v = a.bracket(a.basis_vector(g), span[p]);
      if (r.add(v)) span.push_back(v);
    }
  return r.rank();
}

GradedLieAlgebra heisenberg(const GradedSymplecticSpace& x) {
  const int n = x.dim();
  std::vector<std::string> labels = x.labels;
  labels.push_back("z");
  std::vector<int> weights(n, -1);
  weights.push_back(-2);
  GradedLieAlgebra a(labels, weights);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (sgn(x.sigma(i, j)) == 0) continue;
      Vec v(n + 1);
      v[n] = x.sigma(i, j);
      a.set_bracket(i, j, v);
    }
  return a;
}

GradedLieAlgebra heisenberg(int dim_x) {
  if (dim_x < 2 || dim_x % 2 != 0) throw ConstraintError("Heisenberg algebra needs an even dim_x >= 2");
  return heisenberg(build_model_space(FlagSymbol({SymbolComponent::one_row(dim_x - 1)})));
}

FlatModel flat_model(const FlagSymbol& s) {
  const GradedSymplecticSpace x = build_model_space(s);
  const IndexSet kind = s.index_set();
  auto grade = [&](HalfWeight w) {
    switch (kind) {
      case IndexSet::Integer: return w.twice_value / 2 - 1;
      case IndexSet::HalfOdd: return (w.twice_value - 3) / 2;
      case IndexSet::Half: return w.twice_value - 2;
    }
    return 0;
  };
  const int gx = kind == IndexSet::Half ? -2 : -1;
  const int gz = kind == IndexSet::Integer ? -2 : (kind == IndexSet::HalfOdd ? -3 : -4);

  std::vector<int> tab;  // model indices with weight <= 1/2, row-major
  for (const auto& idx : x.row_indices)
    for (int i : idx)
      if (x.weights[i].twice_value <= 1) tab.push_back(i);
  std::vector<int> pos(x.dim(), -1);
  std::vector<std::string> labels{"x"};
  std::vector<int> weights{gx};
  FlatModel fm;
  fm.symbol = s;
  fm.tableau_weight.push_back(std::nullopt);
  for (int i : tab) {
    pos[i] = static_cast<int>(labels.size());
    labels.push_back(x.labels[i]);
    weights.push_back(grade(x.weights[i]));
    fm.tableau_weight.push_back(x.weights[i]);
  }
  labels.push_back("z");
  weights.push_back(gz);
  fm.tableau_weight.push_back(std::nullopt);
  fm.x_index = 0;
  fm.z_index = static_cast<int>(labels.size()) - 1;
  fm.algebra = GradedLieAlgebra(labels, weights);
  const int n = fm.algebra.dim();

  for (int i : tab) {
    for (int j = 0; j < x.dim(); ++j) {
      if (sgn(x.delta(j, i)) == 0) continue;
      Vec v(n);
      v[pos[j]] = x.delta(j, i);
      fm.algebra.set_bracket(fm.x_index, pos[i], v);
    }
  }
  Vec zv(n);
  zv[fm.z_index] = 1;
  for (int c = 0; c < static_cast<int>(s.components().size()); ++c) {
    const auto& comp = s.components()[c];
    if (comp.is_two_row()) {
      int e0 = -1, f0 = -1;
      for (int i : tab) {
        if (x.component_of[i] != c || x.weights[i].twice_value != 0) continue;
        if (x.rows[x.row_of[i]].kind == RowInterval::Kind::E) e0 = i;
        if (x.rows[x.row_of[i]].kind == RowInterval::Kind::F) f0 = i;
      }
      if (e0 >= 0 && f0 >= 0) fm.algebra.set_bracket(pos[e0], pos[f0], zv);
    } else {
      int p = -1, m = -1;
      for (int i : tab) {
        if (x.component_of[i] != c) continue;
        if (x.weights[i].twice_value == 1) p = i;
        if (x.weights[i].twice_value == -1) m = i;
      }
      fm.algebra.set_bracket(pos[p], pos[m], zv);
    }
  }
  fm.distribution.push_back(fm.x_index);
  for (int i : tab)
    if (x.weights[i].twice_value == 0 || x.weights[i].twice_value == 1) fm.distribution.push_back(pos[i]);
  return fm;
}

}  // namespace sp
