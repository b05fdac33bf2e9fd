#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sp/flagprolong.hpp"
#include "sp/multipoly.hpp"
#include "sp/tanaka.hpp"

namespace sp {

/// Linearly independent homogeneous polynomials of one degree.
struct PolySpace {
  int nvars = 0;
  int degree = 0;
  std::vector<MultiPoly> basis;
  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const MultiPoly& p) const;
  bool contains(const PolySpace& o) const;
  bool equals(const PolySpace& o) const { return dim() == o.dim() && contains(o); }
};
PolySpace poly_span(int nvars, int degree, const std::vector<MultiPoly>& gens);

/// q_A(x) = sigma(x, A x) for A in sp(X).
MultiPoly quadratic_form(const GradedSymplecticSpace& x, const RatMatrix& a);
PolySpace quadratic_forms(const GradedSymplecticSpace& x, const MatrixSubspace& w);
/// Inverse of quadratic_form: A = sigma^{-1} S with q = x^T S x.
RatMatrix form_to_matrix(const GradedSymplecticSpace& x, const MultiPoly& q);

/// Degree k+2 polynomials whose order-k partial derivatives all lie in the forms of w.
PolySpace standard_prolong(const GradedSymplecticSpace& x, const MatrixSubspace& w, int k);

/// Parametrized variety in a coordinate space.
struct VarietySampler {
  std::string name;
  int ambient = 0;                    ///< number of coordinates
  int arity = 0;                      ///< number of parameters
  std::vector<MultiPoly> coords;      ///< coordinate polynomials in the parameters
  std::vector<int> coord_weights;     ///< torus weights of the coordinates (may be empty)
  Vec point(const Vec& params) const;
};

/// Moment curve t -> (1, t, ..., t^d).
VarietySampler rational_normal_curve(int d);
/// Flat curve of the top F vector of D(s,l) in F coordinates: (t^k / k!)_k.
VarietySampler flat_normal_curve(int s, int l);
/// (t, u_0..u_j) -> sum u_i d^i/dt^i of the flat normal curve.
VarietySampler tangential_developable(int s, int l, int j);
/// Subspace families spanned by e^{t delta} L for the row spaces L of the secant theorems.
std::vector<VarietySampler> row_varieties(const GradedSymplecticSpace& x);
VarietySampler sum_variety(const GradedSymplecticSpace& x);
/// Basis of the subspace L used for row_varieties entry i (or all of them when i < 0).
std::vector<int> secant_subspace(const GradedSymplecticSpace& x, int component);

/// Polynomials of the given degree vanishing on the k-th secant variety, certified symbolically.
PolySpace secant_ideal(const VarietySampler& v, int degree, int k, uint64_t seed);
/// True when p vanishes identically on the k-th secant variety (symbolic substitution).
bool vanishes_on_secant(const VarietySampler& v, const MultiPoly& p, int k);

/// All (k+2)-minors of the (alpha+1) x (s+2-alpha) Hankel matrix in x_1..x_{s+2}.
PolySpace hankel_minor_space(int s, int k, int alpha);
/// Admissible alpha range [k+1, s-k]; empty optional when no alpha fits.
std::optional<std::pair<int, int>> hankel_alpha_range(int s, int k);
/// Rescales moment-curve coordinates to the flat normal curve: x_{i+1} -> i! x_{i+1}.
MultiPoly moment_to_flat(const MultiPoly& p);

/// Symmetric tensors T(v_1..v_{k+1}) in X, flattened, for comparing prolongation spaces.
std::vector<Vec> poly_tensors(const GradedSymplecticSpace& x, const PolySpace& ps);
std::vector<Vec> tanaka_tensors(const ProlongationReport& rep, int k, int n);

/// Restriction of polynomials on X to the coordinates of one row (other coordinates set to 0).
PolySpace restrict_to_row(const GradedSymplecticSpace& x, const PolySpace& ps, int row);

struct DegreeRow {
  int k = 0;
  int u = 0;
  int p = 0;
  int lx = 0;
  std::optional<int> tangential;  ///< dim I_{k+2}(S^k T^{l-s-1} C) when applicable
  std::optional<int> secant_sum;  ///< dim I_{k+2}(S^k E) when applicable
};

struct TheoremRow {
  std::string name;
  bool applicable = false;
  bool pass = true;
  std::string note;
};

struct VerifyReport {
  FlagSymbol symbol;
  int k_max = 0;
  uint64_t seed = 0;
  bool genpr_hypotheses = false;
  std::string hypotheses_note;
  std::vector<DegreeRow> degrees;
  std::vector<TheoremRow> theorems;
  bool all_pass() const;
};

/// Finite type and row-length conditions for the polynomial description; sets why on failure.
bool genpr_hypotheses(const FlagSymbol& s, std::string* why = nullptr);
/// No rectangular D(s,2s) and s1 + s2 > max(l1, l2) for every pair of two-row components.
bool secant_hypotheses(const FlagSymbol& s, std::string* why = nullptr);

VerifyReport verify_prolongation_theorems(const FlagSymbol& s, int k_max, uint64_t seed = 42);

/// Tanaka prolongation of (eta, u^F) for a model space.
ProlongationReport symbol_prolongation(const GradedSymplecticSpace& x, int k_max, bool throw_on_cap = true);

}  // namespace sp
