#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sp/matrix.hpp"
#include "sp/symbol.hpp"

namespace sp {

/// Finite-dimensional graded Lie algebra given by exact structure constants.
class GradedLieAlgebra {
 public:
  GradedLieAlgebra() = default;
  GradedLieAlgebra(std::vector<std::string> labels, std::vector<int> weights);

  int dim() const { return static_cast<int>(weights_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int i) const { return weights_[i]; }

  /// Sets [b_i, b_j] = v and [b_j, b_i] = -v.
  void set_bracket(int i, int j, const Vec& v);
  /// Sets a single structure constant without touching the antisymmetric partner.
  void set_constant(int i, int j, int k, const Rational& c);
  const Vec& bracket(int i, int j) const { return table_[static_cast<size_t>(i) * dim() + j]; }
  Rational constant(int i, int j, int k) const { return bracket(i, j)[k]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec basis_vector(int i) const;

  /// Matrix of ad(b_i) in the basis.
  RatMatrix ad(int i) const;
  RatMatrix ad(const Vec& x) const;
  std::vector<int> indices_of_weight(int w) const;

  bool is_antisymmetric() const;
  bool respects_grading() const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> weights_;
  std::vector<Vec> table_;
};

struct JacobiViolationInfo {
  int i, j, k;
};
/// First basis triple violating the Jacobi identity, if any.
std::optional<JacobiViolationInfo> check_jacobi(const GradedLieAlgebra& a);

/// Dimension of the subalgebra generated by the given basis vectors.
int generated_dimension(const GradedLieAlgebra& a, const std::vector<int>& generators);

/// Heisenberg algebra on X with [v_i, v_j] = sigma(v_i, v_j) z; X at weight -1, z at -2.
GradedLieAlgebra heisenberg(const GradedSymplecticSpace& x);
/// Heisenberg algebra using the one-row model pairing on dim_x generators.
GradedLieAlgebra heisenberg(int dim_x);

/// Left-invariant flat distribution with a given flag symbol.
struct FlatModel {
  GradedLieAlgebra algebra;
  std::vector<int> distribution;  ///< basis indices spanning the distribution
  FlagSymbol symbol;
  /// Diagram weight of each tableau basis vector; empty for x and z.
  std::vector<std::optional<HalfWeight>> tableau_weight;
  int x_index = 0;
  int z_index = 0;
  int rank() const { return static_cast<int>(distribution.size()); }
};

FlatModel flat_model(const FlagSymbol& s);

}  // namespace sp
