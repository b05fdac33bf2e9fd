#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sp/lie.hpp"
#include "sp/multipoly.hpp"
#include "sp/symbol.hpp"

namespace sp {

// ---------------------------------------------------------------- Goh calculus on flat models

/// Linear form H_Y(lambda) = lambda(Y) in the dual coordinates lambda_1..lambda_dim.
MultiPoly hamiltonian(const GradedLieAlgebra& g, const Vec& y);

/// G(lambda)_{ij} = lambda([X_i, X_j]) over the distribution basis of a flat model.
struct GohMatrix {
  int size = 0;
  int nvars = 0;
  std::vector<std::vector<MultiPoly>> entries;
  const MultiPoly& operator()(int i, int j) const { return entries[i][j]; }
  RatMatrix at(const Vec& lambda) const;
};
GohMatrix goh_matrix(const FlatModel& fm);

struct DegeneracyLocus {
  bool always_degenerate = false;        ///< odd rank: the Goh matrix is singular everywhere
  MultiPoly pfaffian;                    ///< even rank only
  std::vector<MultiPoly> sub_pfaffians;  ///< odd: G_i; even: G_ij for i < j
  std::vector<std::pair<int, int>> pairs;  ///< index pairs of the even sub-Pfaffians
};
DegeneracyLocus degeneracy_locus(const FlatModel& fm);

/// Basis of D^{-j} = D + [D, D^{-j+1}] in algebra coordinates (j >= 1).
std::vector<Vec> derived_flag(const FlatModel& fm, int j);
/// Linear forms cutting out (D^{-j})^perp.
std::vector<MultiPoly> annihilator_forms(const FlatModel& fm, int j);
/// Linear forms have the same common zero set iff they span the same space.
bool same_linear_zero_set(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b);

struct LocusCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};
/// Zero-set identities available for the rank of the model (rank 2 and rank 3).
std::vector<LocusCheck> locus_identities(const FlatModel& fm);

/// dP(sum_j phi_j vec H_{X_j}) via dH_Y(vec H_X) = H_{[X,Y]}.
MultiPoly derivative_along(const GradedLieAlgebra& g, const MultiPoly& p,
                           const std::vector<std::pair<MultiPoly, Vec>>& field);

struct CharacteristicDirection {
  std::optional<Vec> vector;  ///< algebra coordinates of the direction
  std::string reason;         ///< why it is undefined
  bool defined() const { return vector.has_value(); }
};
CharacteristicDirection characteristic_direction(const FlatModel& fm, const Vec& lambda);
/// Even-rank route through the Y_i fields and d(pf G); also valid for rank 2.
CharacteristicDirection even_rank_direction(const FlatModel& fm, const Vec& lambda);
/// Coefficients of an algebra vector in the distribution basis (nullopt when outside D).
std::optional<Vec> distribution_coordinates(const FlatModel& fm, const Vec& v);

// ---------------------------------------------------------------- curves of flags

/// Polynomial curve of subspaces: column span of sum_k coeffs[k] t^k.
struct PolyCurve {
  int dim = 0;
  int cols = 0;
  std::vector<RatMatrix> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  RatMatrix at(const Rational& t) const;
};

struct FlagCurve {
  IndexSet index_set = IndexSet::Integer;
  std::vector<HalfWeight> indices;  ///< decreasing
  std::vector<PolyCurve> spans;     ///< spans[k] spans e^{t delta} X_{indices[k]}
  RatMatrix sigma;
  const PolyCurve& span(HalfWeight i) const;
};
FlagCurve flat_curve(const GradedSymplecticSpace& x);

/// g applied to every column.
PolyCurve transform_curve(const PolyCurve& c, const RatMatrix& g);
/// Reparametrization t -> t + c t^2, expanded exactly.
PolyCurve reparametrize(const PolyCurve& curve, const Rational& c);
/// Product of seeded random symplectic transvections x -> x + a sigma(x, v) v.
RatMatrix random_symplectic(const RatMatrix& sigma, uint64_t seed, int steps = 6);

enum class JacobiCase { Odd, RankTwo, Even };
std::string to_string(JacobiCase c);
JacobiCase jacobi_case(IndexSet s);

struct ExtractedFlag {
  JacobiCase kind = JacobiCase::Odd;
  std::vector<HalfWeight> indices;      ///< decreasing, covering the nonzero graded pieces
  std::vector<std::vector<Vec>> spaces; ///< J^i(0) bases
  std::vector<int> graded_dims;         ///< dim Gr^i per index
  int floor_dim = 0;                    ///< dim of the constant part (J^nu)^angle
  FlagSymbol symbol;
};
/// Extended flag of a curve J(t) at t = 0 and the flag symbol read from its graded pieces.
ExtractedFlag extract_flag_symbol(const PolyCurve& j, const RatMatrix& sigma, JacobiCase kind);
ExtractedFlag extract_flag_symbol(const FlagCurve& c);

}  // namespace sp
