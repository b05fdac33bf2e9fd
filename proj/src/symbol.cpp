#include "sp/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sp/errors.hpp"

namespace sp {

SymbolComponent SymbolComponent::two_row(int s, int l) {
  if (s < 0) throw ConstraintError("D(s,l) requires s >= 0");
  if (l < 0) throw ConstraintError("D(s,l) requires l >= 0");
  if (l > 2 * s) throw ConstraintError("D(s,l) requires l <= 2s");
  SymbolComponent c;
  c.kind = Kind::TwoRow;
  c.s = s;
  c.l = l;
  return c;
}

SymbolComponent SymbolComponent::one_row(int m2) {
  if (m2 <= 0 || m2 % 2 == 0) throw ConstraintError("R(m) requires m to be a positive odd multiple of 1/2");
  SymbolComponent c;
  c.kind = Kind::OneRow;
  c.m2 = m2;
  return c;
}

std::string SymbolComponent::str() const {
  if (is_two_row()) return "D(" + std::to_string(s) + "," + std::to_string(l) + ")";
  return "R(" + std::to_string(m2) + "/2)";
}

std::string to_string(IndexSet s) {
  switch (s) {
    case IndexSet::Integer: return "Z";
    case IndexSet::HalfOdd: return "1/2 Z_odd";
    case IndexSet::Half: return "1/2 Z";
  }
  return "?";
}

FlagSymbol::FlagSymbol(std::vector<SymbolComponent> comps) : comps_(std::move(comps)) {
  if (comps_.empty()) throw ConstraintError("a flag symbol needs at least one component");
  std::sort(comps_.begin(), comps_.end());
  if (std::count_if(comps_.begin(), comps_.end(), [](const auto& c) { return !c.is_two_row(); }) > 1)
    throw ConstraintError("at most one R component is allowed");
}

IndexSet FlagSymbol::index_set() const {
  const bool two = two_row_count() > 0, one = has_one_row();
  if (two && one) return IndexSet::Half;
  return one ? IndexSet::HalfOdd : IndexSet::Integer;
}

int FlagSymbol::dim() const {
  int d = 0;
  for (const auto& c : comps_) d += c.dim();
  return d;
}

int FlagSymbol::two_row_count() const {
  return static_cast<int>(std::count_if(comps_.begin(), comps_.end(), [](const auto& c) { return c.is_two_row(); }));
}

bool FlagSymbol::has_one_row() const { return one_row() != nullptr; }

const SymbolComponent* FlagSymbol::one_row() const {
  for (const auto& c : comps_)
    if (!c.is_two_row()) return &c;
  return nullptr;
}

std::string FlagSymbol::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < comps_.size();) {
    size_t j = i;
    while (j < comps_.size() && comps_[j] == comps_[i]) ++j;
    if (i) os << "+";
    if (j - i > 1) os << (j - i) << "*";
    os << comps_[i].str();
    i = j;
  }
  return os.str();
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  FlagSymbol parse() {
    std::vector<SymbolComponent> comps;
    skip();
    do {
      skip();
      parse_term(comps);
      skip();
    } while (eat('+'));
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return FlagSymbol(std::move(comps));
  }

 private:
  void parse_term(std::vector<SymbolComponent>& out) {
    int mult = 1;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      mult = number();
      skip();
      expect('*');
      skip();
      if (mult <= 0) throw ConstraintError("multiplicity must be positive");
    }
    if (eat('D')) {
      skip();
      expect('(');
      const int s = signed_number();
      expect(',');
      const int l = signed_number();
      expect(')');
      for (int i = 0; i < mult; ++i) out.push_back(SymbolComponent::two_row(s, l));
    } else if (eat('R')) {
      skip();
      expect('(');
      const int p = signed_number();
      expect('/');
      const int q = signed_number();
      expect(')');
      if (q != 2) throw ConstraintError("R(p/2) must have denominator 2");
      for (int i = 0; i < mult; ++i) out.push_back(SymbolComponent::one_row(p));
    } else {
      fail("expected D(s,l) or R(p/2)");
    }
  }

  int signed_number() {
    skip();
    bool neg = eat('-');
    int v = number();
    skip();
    return neg ? -v : v;
  }

  int number() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 100000) fail("number too large");
    }
    return static_cast<int>(v);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip();
    if (!eat(c)) fail(std::string("expected '") + c + "'");
    skip();
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

FlagSymbol parse_symbol(const std::string& spec) { return Parser(spec).parse(); }

std::vector<RowInterval> symbol_rows(const FlagSymbol& s) {
  std::vector<RowInterval> rows;
  const auto& comps = s.components();
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    const auto& k = comps[c];
    if (k.is_two_row()) {
      rows.push_back({c, RowInterval::Kind::E, HalfWeight::integer(k.s - k.l), HalfWeight::integer(k.s)});
      rows.push_back({c, RowInterval::Kind::F, HalfWeight::integer(-k.s), HalfWeight::integer(k.l - k.s)});
    } else {
      rows.push_back({c, RowInterval::Kind::R, HalfWeight(-k.m2), HalfWeight(k.m2)});
    }
  }
  return rows;
}

std::vector<int> GradedSymplecticSpace::filtration(HalfWeight w) const {
  std::vector<int> idx;
  for (int i = 0; i < dim(); ++i)
    if (weights[i] >= w) idx.push_back(i);
  return idx;
}

std::vector<HalfWeight> GradedSymplecticSpace::weight_set() const {
  std::vector<HalfWeight> ws = weights;
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

std::string GradedSymplecticSpace::check_invariants() const {
  const int n = dim();
  if (!sigma.is_skew()) return "sigma is not skew-symmetric";
  if (sgn(determinant(sigma)) == 0) return "sigma is degenerate";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (sgn(sigma(i, j)) != 0 && (weights[i] + weights[j]).twice_value != 0) return "sigma is not a graded pairing";
      if (sgn(delta(i, j)) != 0 && (weights[i] - weights[j]).twice_value != -2) return "delta does not have degree -1";
    }
  const RatMatrix t = delta.transpose() * sigma + sigma * delta;
  if (!t.is_zero()) return "delta is not in sp(X)";
  return "";
}

GradedSymplecticSpace build_model_space(const FlagSymbol& s) {
  GradedSymplecticSpace x;
  x.symbol = s;
  x.rows = symbol_rows(s);
  const int n = s.dim();
  x.sigma = RatMatrix(n, n);
  x.delta = RatMatrix(n, n);
  x.row_indices.resize(x.rows.size());
  const auto& comps = s.components();
  int row_id = 0;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    const auto& k = comps[c];
    const std::string tag = std::to_string(c + 1);
    auto add_row = [&](const std::string& prefix, HalfWeight top, int len) {
      std::vector<int>& idx = x.row_indices[row_id];
      for (int i = 0; i < len; ++i) {
        const HalfWeight w(top.twice_value - 2 * i);
        idx.push_back(static_cast<int>(x.weights.size()));
        x.labels.push_back(prefix + "(" + w.str() + ")");
        x.weights.push_back(w);
        x.row_of.push_back(row_id);
        x.component_of.push_back(c);
      }
      for (int i = 0; i + 1 < len; ++i) x.delta(idx[i + 1], idx[i]) = 1;  // right shift
      ++row_id;
    };
    if (k.is_two_row()) {
      add_row("e" + tag, HalfWeight::integer(k.s), k.l + 1);
      add_row("f" + tag, HalfWeight::integer(k.l - k.s), k.l + 1);
      const auto& e = x.row_indices[row_id - 2];
      const auto& f = x.row_indices[row_id - 1];
      // e_i has weight s - a, f_{-i} sits at position l - a in the F row
      for (int a = 0; a <= k.l; ++a) {
        const int i = k.s - a;
        const int fi = e.size() - 1 - a;
        const Rational v = ((k.s - i) % 2 == 0) ? 1 : -1;
        x.sigma(e[a], f[fi]) = v;
        x.sigma(f[fi], e[a]) = -v;
      }
    } else {
      add_row("eps", HalfWeight(k.m2), k.m2 + 1);
      const auto& r = x.row_indices[row_id - 1];
      const int len = k.m2 + 1;
      for (int a = 0; a < len / 2; ++a) {
        // epsilon_i with i = m - a > 0 pairs with epsilon_{-i}; sign (-1)^{m-i}
        const Rational v = (a % 2 == 0) ? 1 : -1;
        x.sigma(r[a], r[len - 1 - a]) = v;
        x.sigma(r[len - 1 - a], r[a]) = -v;
      }
    }
  }
  return x;
}

Finiteness classify_finiteness(const FlagSymbol& s) {
  Finiteness f;
  const auto rows = symbol_rows(s);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      if (rows[i].bottom >= rows[j].top) {
        f.finite = false;
        f.violated_condition = 1;
        f.reason = "a row starts in the same column as or to the right of the end of another row";
        return f;
      }
    }
  if (s.components().size() == 1 && !s.components()[0].is_two_row() && s.components()[0].m2 == 1) {
    f.finite = false;
    f.violated_condition = 2;
    f.reason = "one row with two boxes";
  }
  return f;
}

FlagSymbol modify_symbol(const FlagSymbol& s, int pad_count, RankParity parity, HalfWeight nu) {
  if (pad_count < 0) throw ConstraintError("pad_count must be non-negative");
  if (pad_count == 0) return s;
  const HalfWeight eps = parity == RankParity::Odd ? HalfWeight(2) : HalfWeight(1);
  const HalfWeight pad = eps - nu;
  if (pad.twice_value < 0) throw ConstraintError("eps - nu must be non-negative");
  if (!pad.is_integer()) throw ConstraintError("eps - nu must be an integer for a D(s,0) pad");
  std::vector<SymbolComponent> comps = s.components();
  for (int i = 0; i < pad_count; ++i) comps.push_back(SymbolComponent::two_row(pad.twice_value / 2, 0));
  return FlagSymbol(std::move(comps));
}

std::vector<FlagSymbol> enumerate_symbols(int rank, int n) {
  if (rank != 2 && rank != 3) throw UnsupportedRank("closed enumeration exists only for rank 2 and 3");
  if (2 * n - 6 <= 0) throw ConstraintError("n too small: 2n - 6 must be positive");
  std::vector<FlagSymbol> out;
  if (rank == 2) {
    out.emplace_back(std::vector<SymbolComponent>{SymbolComponent::one_row(2 * n - 7)});
  } else {
    const int l = n - 4;
    for (int s = (l + 1) / 2; s <= l; ++s) out.emplace_back(std::vector<SymbolComponent>{SymbolComponent::two_row(s, l)});
  }
  return out;
}

}  // namespace sp
