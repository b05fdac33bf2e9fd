#include "sp/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sp/errors.hpp"

namespace sp {

namespace {
int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }
}  // namespace

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total(a), db = total(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly::MultiPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Exponent{}, c);
}

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly p(nvars);
  if (sgn(c) != 0) p.terms_.emplace(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  MultiPoly p(nvars);
  Exponent e(nvars, 0);
  e.at(i) = 1;
  p.terms_.emplace(std::move(e), 1);
  return p;
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
  MultiPoly p(static_cast<int>(e.size()));
  if (sgn(c) != 0) p.terms_.emplace(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  for (const auto& [e, c] : terms_)
    if (total(e) != 0) return false;
  return true;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total(e));
  return d;
}

bool MultiPoly::is_homogeneous(int d) const {
  for (const auto& [e, c] : terms_)
    if (total(e) != d) return false;
  return true;
}

Rational MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw DimensionMismatch("exponent length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::promoted(int n) const {
  if (n == nvars_) return *this;
  if (nvars_ != 0) throw DimensionMismatch("polynomial rings differ");
  return constant(n, coeff(Exponent{}));
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) {
    if (nvars_ == 0) {
      *this = promoted(o.nvars_);
    } else {
      return *this += o.promoted(nvars_);
    }
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  const int n = std::max(nvars_, o.nvars_);
  const MultiPoly a = promoted(n), b = o.promoted(n);
  MultiPoly r(n);
  Exponent e(n);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) {
  MultiPoly r(p.nvars_);
  if (sgn(c) == 0) return r;
  for (const auto& [e, x] : p.terms_) r.terms_.emplace(e, c * x);
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (nvars_ == o.nvars_) return terms_ == o.terms_;
  return (*this - o).is_zero();
}

Rational MultiPoly::eval(const Vec& point) const {
  if (nvars_ != 0 && static_cast<int>(point.size()) != nvars_) throw DimensionMismatch("evaluation point");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    s += m;
  }
  return s;
}

MultiPoly MultiPoly::derivative(int i) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    r.add_term(f, c * e[i]);
  }
  return r;
}

MultiPoly MultiPoly::pow(int k) const {
  MultiPoly r = constant(nvars_, 1), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw DimensionMismatch("substitution arity");
  int target = 0;
  for (const auto& im : images) target = std::max(target, im.nvars());
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly m = constant(target, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      m = m * pw[e[i]];
    }
    r += m;
  }
  return r;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool any = false;
    std::ostringstream mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (any) mono << "*";
      mono << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) mono << "^" << e[i];
      any = true;
    }
    if (!any)
      os << a.get_str();
    else if (a == 1)
      os << mono.str();
    else
      os << a.get_str() << "*" << mono.str();
    first = false;
  }
  return os.str();
}

std::vector<Exponent> monomials_of_degree(int n, int d) {
  std::vector<Exponent> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponent e(n, 0);
  // enumerate compositions of d into n parts
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

Vec coefficient_vector(const MultiPoly& p, const std::vector<Exponent>& monos) {
  Vec v(monos.size());
  for (size_t i = 0; i < monos.size(); ++i) v[i] = p.coeff(monos[i]);
  return v;
}

MultiPoly from_coefficients(const Vec& c, const std::vector<Exponent>& monos) {
  MultiPoly p(monos.empty() ? 0 : static_cast<int>(monos[0].size()));
  for (size_t i = 0; i < monos.size(); ++i) p.add_term(monos[i], c[i]);
  return p;
}

}  // namespace sp
