#pragma once

#include <optional>
#include <vector>

#include "sp/symbol.hpp"
#include "sp/tanaka.hpp"

namespace sp {

/// Entries (p, q) of a matrix of degree d on X: weight(p) = weight(q) + d.
std::vector<std::pair<int, int>> degree_positions(const GradedSymplecticSpace& x, HalfWeight d);
/// Homogeneous parts of sp(X) and csp(X).
MatrixSubspace sp_degree(const GradedSymplecticSpace& x, HalfWeight d);
MatrixSubspace csp_degree(const GradedSymplecticSpace& x, HalfWeight d);
/// Degrees d >= 0 at which gl(X) is nonzero.
std::vector<HalfWeight> nonnegative_degrees(const GradedSymplecticSpace& x);

/// Graded flag prolongation u^F = R delta + u_0 + u_{1/2} + ...
struct FlagProlongation {
  std::vector<HalfWeight> degrees;     ///< non-negative degrees, ascending
  std::vector<MatrixSubspace> pieces;  ///< u_k for each entry of degrees
  RatMatrix delta;
  int dim() const;
  int dim_at(HalfWeight d) const;
  /// Whole algebra including the degree -1 line.
  MatrixSubspace all() const;
};
FlagProlongation flag_prolong(const GradedSymplecticSpace& x);

struct Sl2Triple {
  RatMatrix e, h, f;
};
/// e = delta; h and f act on each row as the standard irreducible sl2-module.
Sl2Triple sl2_triple(const GradedSymplecticSpace& x);

/// Largest sl2-submodule of sp(X) in non-negative degrees, as graded pieces.
std::vector<MatrixSubspace> l_of_x_graded(const GradedSymplecticSpace& x, const Sl2Triple& t);
MatrixSubspace l_of_x(const GradedSymplecticSpace& x);

/// {A in sp(X) : (ad delta)^k A has non-negative degree for all k}; matrices preserving
/// every filtration subspace along the flat curve.
MatrixSubspace curve_symmetry_algebra(const GradedSymplecticSpace& x);
/// A(e^{t delta} X_w) lies in e^{t delta} X_w for all w, as a polynomial identity in t.
bool preserves_flat_curve(const GradedSymplecticSpace& x, const RatMatrix& a);

struct AZPDecomposition {
  FlagProlongation uF;
  Sl2Triple sl2;
  MatrixSubspace l_of_x;
  MatrixSubspace r_uF;  ///< u^F intersected with sp(X)
  MatrixSubspace a, z, p;
};
AZPDecomposition decompose_azp(const GradedSymplecticSpace& x);

/// Projection zeroing every diagonal row block.
RatMatrix off_row_projection(const GradedSymplecticSpace& x, const RatMatrix& a);

struct ComponentDims {
  int component = 0;
  int s_E = 0;
  int s_F = 0;
  int n_E = 0;
};
struct RowPairDims {
  int row1 = 0;
  int row2 = 0;
  int dim = 0;
};
struct PredictedDims {
  std::vector<ComponentDims> components;  ///< TwoRow components only
  std::vector<RowPairDims> row_pairs;     ///< rows in distinct components, row1 < row2
  int l_x = 0;
  int p = 0;
  int z = 0;
  int uF = 0;
};
/// Dimensions from the sl2 decomposition formulas alone.
PredictedDims predicted_dims(const FlagSymbol& s);
/// Same quantities measured by projecting the computed l(X) and u^F.
PredictedDims measured_dims(const GradedSymplecticSpace& x, const AZPDecomposition& d);

/// Sum of dims of Pi_k over the sl2 string i = lo..hi of Pi_{top - 2i}.
int string_dim(int top, int lo, int hi);
/// Largest non-negative sl2-submodule of Hom(Y1, Y2) for rows Y1, Y2.
int nonnegative_hom_dim(const RowInterval& y1, const RowInterval& y2);

/// Rank-one element sigma(v, .) v of sp(X).
RatMatrix rank_one(const GradedSymplecticSpace& x, const Vec& v);
/// Rank-one element of the space found by a structured search, if any.
std::optional<RatMatrix> rank_one_witness(const GradedSymplecticSpace& x, const MatrixSubspace& space);

}  // namespace sp
