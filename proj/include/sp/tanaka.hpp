#pragma once

#include <optional>
#include <vector>

#include "sp/lie.hpp"
#include "sp/matrix.hpp"
#include "sp/symbol.hpp"

namespace sp {

/// Linear subspace of rows x cols matrices, stored by an independent basis.
struct MatrixSubspace {
  int rows = 0;
  int cols = 0;
  std::vector<RatMatrix> basis;

  MatrixSubspace() = default;
  MatrixSubspace(int r, int c) : rows(r), cols(c) {}
  /// Keeps an independent subset of the spanning family.
  static MatrixSubspace span_of(int r, int c, const std::vector<RatMatrix>& gens);
  static MatrixSubspace from_flat(int r, int c, const std::vector<Vec>& flat);

  int dim() const { return static_cast<int>(basis.size()); }
  std::vector<Vec> flat() const;
  bool contains(const RatMatrix& m) const;
  bool contains(const MatrixSubspace& o) const;
  bool equals(const MatrixSubspace& o) const { return contains(o) && o.contains(*this); }
  MatrixSubspace sum(const MatrixSubspace& o) const;
  MatrixSubspace intersect(const MatrixSubspace& o) const;
};

/// Grade-preserving derivations of a negatively graded algebra, as matrices on t.
MatrixSubspace deg0_derivations(const GradedLieAlgebra& t);
bool is_derivation(const GradedLieAlgebra& t, const RatMatrix& d);

/// Embeds A in csp(X) as the derivation A + c(A) on the Heisenberg algebra of X.
RatMatrix csp_to_derivation(const GradedSymplecticSpace& x, const RatMatrix& a);
/// Conformal factor c with A^T S + S A = c S; nullopt when A is not in csp.
std::optional<Rational> conformal_factor(const RatMatrix& sigma, const RatMatrix& a);

/// One non-negative level of the prolongation: for each element, the image of every
/// basis vector b_i of t, in coordinates of the level at degree (level + weight(b_i)).
struct ProlongationLevel {
  int degree = 0;
  std::vector<std::vector<Vec>> images;
  int dim() const { return static_cast<int>(images.size()); }
};

struct ProlongationReport {
  std::vector<ProlongationLevel> levels;  ///< levels[k] is degree k; levels[0] is g0
  bool terminated = false;
  std::optional<int> termination_degree;
  std::optional<int> confirming_dim;  ///< dimension of the degree after the first zero
  int t_dim = 0;
  int dim(int k) const { return k < static_cast<int>(levels.size()) ? levels[k].dim() : 0; }
  int total_dim() const;
};

/// Tanaka prolongation up to k_max; throws CapReached when no degree vanished.
ProlongationReport tanaka_prolong(const GradedLieAlgebra& t, const MatrixSubspace& g0, int k_max);
/// Same computation without the cap error (used to probe infinite type).
ProlongationReport tanaka_probe(const GradedLieAlgebra& t, const MatrixSubspace& g0, int k_max);

/// Full graded algebra t + g0 + u^1 + ... with the brackets of the prolongation.
GradedLieAlgebra assemble_algebra(const GradedLieAlgebra& t, const ProlongationReport& report);

/// Re-evaluates the Leibniz identity of a level element on a basis pair (a, b) of t.
bool leibniz_holds(const GradedLieAlgebra& t, const ProlongationReport& report, int k, int element, int a, int b);

struct KillingSignature {
  int rank = 0;
  int positive = 0;
  int negative = 0;
};
RatMatrix killing_form(const GradedLieAlgebra& a);
KillingSignature killing_signature(const GradedLieAlgebra& a);
/// Inertia of a symmetric rational matrix by exact congruence.
KillingSignature symmetric_inertia(const RatMatrix& b);

}  // namespace sp
