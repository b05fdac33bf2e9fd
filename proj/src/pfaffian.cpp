#include "sp/pfaffian.hpp"

namespace sp {

SquareArray<Rational> to_array(const RatMatrix& a) {
  if (!a.is_square()) throw NonSkew("matrix is not square");
  SquareArray<Rational> out(a.rows(), std::vector<Rational>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

Rational pfaffian(const RatMatrix& a) {
  if (!a.is_skew()) throw NonSkew("matrix is not skew-symmetric");
  return pfaffian(to_array(a));
}

std::vector<Vec> even_kernel_vectors(const RatMatrix& a) {
  PfaffianTable<Rational> t(to_array(a));
  const int n = a.rows();
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) {
    Vec v(n);
    for (int j = 0; j < n; ++j) {
      const Rational m = t.minor2(i, j);
      v[j] = ((j + 1) % 2 == 0) ? m : Rational(-m);
    }
    out.push_back(std::move(v));
  }
  return out;
}

SkewKernel skew_kernel(const RatMatrix& a) {
  if (!a.is_skew()) throw NonSkew("matrix is not skew-symmetric");
  const int n = a.rows();
  PfaffianTable<Rational> t(to_array(a));
  SkewKernel res;
  const std::vector<Vec> nullspace = kernel_basis(a);
  if (n % 2 == 1) {
    int nonzero = -1;
    for (int i = 0; i < n; ++i) {
      res.sub_pfaffians.push_back(t.minor1(i));
      if (nonzero < 0 && sgn(res.sub_pfaffians.back()) != 0) nonzero = i;
    }
    if (nonzero < 0) throw DegenerateBranch("all sub-Pfaffians A_i vanish");
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? res.sub_pfaffians[i] : Rational(-res.sub_pfaffians[i]);
    res.kernel_dim = 1;
    res.basis.push_back(std::move(v));
  } else {
    res.pf = t.pfaffian();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) res.sub_pfaffians.push_back(t.minor2(i, j));
    if (sgn(res.pf) != 0) {
      res.kernel_dim = 0;
    } else {
      int i0 = -1, j0 = -1;
      for (int i = 0; i < n && i0 < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (sgn(t.minor2(i, j)) != 0) {
            i0 = i;
            j0 = j;
            break;
          }
      if (i0 < 0) throw DegenerateBranch("pf = 0 and all sub-Pfaffians A_ij vanish");
      const std::vector<Vec> vs = even_kernel_vectors(a);
      res.kernel_dim = 2;
      res.basis = {vs[i0], vs[j0]};
    }
  }
  res.agrees_with_nullspace = static_cast<int>(nullspace.size()) == res.kernel_dim &&
                              span_contains_all(nullspace, res.basis) && span_rank(res.basis) == res.kernel_dim;
  return res;
}

}  // namespace sp
