#pragma once

#include <compare>
#include <string>
#include <vector>

#include "sp/matrix.hpp"
#include "sp/rational.hpp"

namespace sp {

/// Indecomposable piece of a flag symbol: a two-row diagram D(s,l) or a one-row diagram R(m).
struct SymbolComponent {
  enum class Kind { TwoRow = 0, OneRow = 1 };
  Kind kind = Kind::TwoRow;
  int s = 0;
  int l = 0;
  int m2 = 0;  ///< twice m for OneRow

  static SymbolComponent two_row(int s, int l);
  static SymbolComponent one_row(int m2);

  bool is_two_row() const { return kind == Kind::TwoRow; }
  int dim() const { return is_two_row() ? 2 * (l + 1) : m2 + 1; }
  std::string str() const;
  auto operator<=>(const SymbolComponent&) const = default;
};

enum class IndexSet { Integer, HalfOdd, Half };
std::string to_string(IndexSet s);

/// Multiset of components kept in canonical order (TwoRow by (s,l), then OneRow).
class FlagSymbol {
 public:
  FlagSymbol() = default;
  explicit FlagSymbol(std::vector<SymbolComponent> comps);

  const std::vector<SymbolComponent>& components() const { return comps_; }
  IndexSet index_set() const;
  int dim() const;
  int two_row_count() const;
  bool has_one_row() const;
  const SymbolComponent* one_row() const;
  std::string str() const;
  bool operator==(const FlagSymbol& o) const { return comps_ == o.comps_; }

 private:
  std::vector<SymbolComponent> comps_;
};

FlagSymbol parse_symbol(const std::string& spec);

/// A row of the skew diagram as a weight interval [bottom, top].
struct RowInterval {
  enum class Kind { E, F, R };
  int component = 0;
  Kind kind = Kind::E;
  HalfWeight bottom, top;
  int length() const { return (top.twice_value - bottom.twice_value) / 2 + 1; }
};
std::vector<RowInterval> symbol_rows(const FlagSymbol& s);

/// Model space X with weighted basis, pairing sigma and the degree -1 endomorphism delta.
struct GradedSymplecticSpace {
  FlagSymbol symbol;
  std::vector<std::string> labels;
  std::vector<HalfWeight> weights;
  RatMatrix sigma;
  RatMatrix delta;
  std::vector<int> row_of;
  std::vector<RowInterval> rows;
  std::vector<std::vector<int>> row_indices;  ///< basis indices of each row, top weight first
  std::vector<int> component_of;

  int dim() const { return static_cast<int>(weights.size()); }
  /// Indices of the filtration space X_w = sum of pieces of weight >= w.
  std::vector<int> filtration(HalfWeight w) const;
  /// Sorted distinct weights present in X.
  std::vector<HalfWeight> weight_set() const;
  /// Empty string when every structural invariant holds, otherwise the first failure.
  std::string check_invariants() const;
};

GradedSymplecticSpace build_model_space(const FlagSymbol& s);

struct Finiteness {
  bool finite = true;
  int violated_condition = 0;  ///< 0 when finite, otherwise 1 or 2
  std::string reason;
};
Finiteness classify_finiteness(const FlagSymbol& s);

enum class RankParity { Odd, Even };

/// Pads the symbol with pad_count copies of D(eps - nu, 0), eps = 1 (odd) or 1/2 (even).
FlagSymbol modify_symbol(const FlagSymbol& s, int pad_count, RankParity parity, HalfWeight nu);

/// Closed enumeration of Jacobi symbols for rank 2 and 3 distributions on an n-manifold.
std::vector<FlagSymbol> enumerate_symbols(int rank, int n);

}  // namespace sp
