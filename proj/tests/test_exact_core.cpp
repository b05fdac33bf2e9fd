#include "doctest.h"
#include "sp/errors.hpp"
#include "sp/matrix.hpp"
#include "sp/multipoly.hpp"
#include "sp/pfaffian.hpp"
#include "support.hpp"

using namespace sp;

TEST_SUITE("exact-core") {
  TEST_CASE("rationals stay canonical") {
    Rational a = rat(6, 4);
    CHECK(a.get_num() == 3);
    CHECK(a.get_den() == 2);
    Rational b = rat(-3, 2) + a;
    CHECK(b == 0);
    CHECK(to_string(rat(-7, 21)) == "-1/3");
    CHECK(rat(1, -2).get_den() > 0);
  }

  TEST_CASE("half weights order like their values") {
    spt::Gen g(11);
    for (int t = 0; t < 200; ++t) {
      const HalfWeight a(g.integer(-20, 20)), b(g.integer(-20, 20));
      CHECK((a < b) == (a.value() < b.value()));
      CHECK((a + b).value() == a.value() + b.value());
      CHECK(a.is_integer() == (a.value().get_den() == 1));
    }
    CHECK(HalfWeight(5).str() == "5/2");
    CHECK(HalfWeight::integer(-2).str() == "-2");
  }

  TEST_CASE("kernel_basis examples") {
    CHECK(kernel_basis(RatMatrix::identity(3)).empty());
    CHECK(kernel_basis(RatMatrix(2, 3)).size() == 3);
    const auto k = kernel_basis(RatMatrix{{1, 2}, {2, 4}});
    REQUIRE(k.size() == 1);
    CHECK(spt::same_span(k, {Vec{-2, 1}}));
  }

  TEST_CASE("kernel_basis property: independent, annihilated, count cols - rank") {
    spt::Gen g(12);
    for (int t = 0; t < 40; ++t) {
      const int r = g.integer(1, 6), c = g.integer(1, 7), k = g.integer(0, std::min(r, c));
      const RatMatrix m = g.low_rank(r, c, k);
      const auto ker = kernel_basis(m);
      const int rk = spt::rank_by_gauss(m);
      CHECK(rank(m) == rk);
      CHECK(static_cast<int>(ker.size()) == c - rk);
      CHECK(spt::rank_by_gauss(ker) == static_cast<int>(ker.size()));
      for (const auto& v : ker) CHECK(is_zero(m * v));
    }
  }

  TEST_CASE("sparse RREF agrees with dense elimination") {
    spt::Gen g(13);
    for (int t = 0; t < 30; ++t) {
      const int r = g.integer(1, 8), c = g.integer(1, 8);
      const RatMatrix m = g.low_rank(r, c, g.integer(0, std::min(r, c)));
      SparseRref rr(c);
      for (int i = 0; i < r; ++i) rr.add(m.row(i));
      CHECK(rr.rank() == spt::rank_by_gauss(m));
      const auto ker = rr.kernel();
      CHECK(static_cast<int>(ker.size()) == c - rr.rank());
      for (const auto& v : ker) CHECK(is_zero(m * v));
      for (int i = 0; i < r; ++i) CHECK(rr.contains(m.row(i)));
      std::vector<SparseRow> rows;
      for (int i = 0; i < r; ++i) rows.push_back(to_sparse(m.row(i)));
      CHECK(spt::same_span(sparse_kernel(rows, c), kernel_basis(m)));
    }
  }

  TEST_CASE("determinant and inverse against the permutation oracle") {
    spt::Gen g(14);
    for (int t = 0; t < 30; ++t) {
      const int n = g.integer(1, 6);
      const RatMatrix m = g.matrix(n, n);
      CHECK(determinant(m) == spt::det_by_permutations(m));
      const auto inv = inverse(m);
      if (determinant(m) != 0) {
        REQUIRE(inv);
        CHECK(*inv * m == RatMatrix::identity(n));
      } else {
        CHECK_FALSE(inv);
      }
    }
  }

  TEST_CASE("coordinate solver recovers coefficients") {
    spt::Gen g(15);
    std::vector<Vec> basis = {g.vec(5), g.vec(5), g.vec(5)};
    CoordinateSolver cs(basis);
    const Vec c = g.vec(3);
    const Vec v = c[0] * basis[0] + c[1] * basis[1] + c[2] * basis[2];
    const auto got = cs.coords(v);
    REQUIRE(got);
    CHECK(*got == c);
  }

  TEST_CASE("pfaffian examples") {
    const MultiPoly a = MultiPoly::variable(1, 0);
    const MultiPoly z1(1);
    const SquareArray<MultiPoly> m2 = {{z1, a}, {-a, z1}};
    CHECK(pfaffian(m2) == a);

    spt::Gen g(16);
    for (int n : {1, 3, 5, 7}) CHECK(pfaffian(g.skew(n)) == 0);

    std::vector<MultiPoly> v;
    for (int i = 0; i < 6; ++i) v.push_back(MultiPoly::variable(6, i));
    const MultiPoly z(6);
    SquareArray<MultiPoly> m4 = {{z, v[0], v[1], v[2]}, {-v[0], z, v[3], v[4]}, {-v[1], -v[3], z, v[5]}, {-v[2], -v[4], -v[5], z}};
    CHECK(pfaffian(m4) == v[0] * v[5] - v[1] * v[4] + v[2] * v[3]);

    CHECK_THROWS_AS(pfaffian(RatMatrix{{0, 1}, {1, 0}}), NonSkew);
  }

  TEST_CASE("property: pf^2 = det and pf matches the matching expansion") {
    spt::Gen g(17);
    for (int t = 0; t < 100; ++t) {
      const int n = g.integer(2, 8);
      const RatMatrix a = g.skew(n);
      const Rational pf = pfaffian(a);
      CHECK(pf * pf == determinant(a));
      CHECK(pf == spt::pfaffian_by_matchings(a));
    }
  }

  TEST_CASE("property: even sub-Pfaffian kernel identity") {
    spt::Gen g(18);
    for (int t = 0; t < 40; ++t) {
      const int n = 2 * g.integer(1, 4);
      const RatMatrix a = g.skew(n);
      const Rational pf = pfaffian(a);
      const auto vs = even_kernel_vectors(a);
      for (int s = 0; s < n; ++s)
        for (int i = 0; i < n; ++i) {
          Rational sum = 0;
          for (int j = 0; j < n; ++j) sum += a(s, j) * vs[i][j];
          const Rational expect = i != s ? Rational(0) : (s % 2 == 0 ? pf : Rational(-pf));  // (-1)^{s-1} pf, 1-based s
          CHECK(sum == expect);
        }
    }
  }

  TEST_CASE("skew_kernel examples") {
    const RatMatrix a{{0, 3, -2}, {-3, 0, 5}, {2, -5, 0}};
    const SkewKernel k = skew_kernel(a);
    CHECK(k.kernel_dim == 1);
    CHECK(spt::same_span(k.basis, {Vec{5, 2, 3}}));
    CHECK(k.agrees_with_nullspace);

    const SkewKernel z2 = skew_kernel(RatMatrix(2, 2));
    CHECK(z2.kernel_dim == 2);
    CHECK(spt::rank_by_gauss(z2.basis) == 2);
    CHECK_THROWS_AS(skew_kernel(RatMatrix(3, 3)), DegenerateBranch);
    CHECK(kernel_basis(RatMatrix(3, 3)).size() == 3);
  }

  TEST_CASE("property: skew_kernel spans the nullspace") {
    spt::Gen g(19);
    int exercised = 0;
    for (int t = 0; t < 100; ++t) {
      const int n = g.integer(2, 8);
      RatMatrix a = g.skew(n);
      if (n % 2 == 0 && g.coin()) {
        // rank n-2: conjugate a block with a zero 2x2 corner
        RatMatrix b = g.skew(n);
        for (int i = n - 2; i < n; ++i)
          for (int j = 0; j < n; ++j) b(i, j) = b(j, i) = 0;
        const RatMatrix p = g.matrix(n, n);
        a = p.transpose() * b * p;
      }
      try {
        const SkewKernel k = skew_kernel(a);
        CHECK(k.agrees_with_nullspace);
        CHECK(spt::same_span(k.basis, kernel_basis(a)));
        ++exercised;
      } catch (const DegenerateBranch&) {
        CHECK(static_cast<int>(kernel_basis(a).size()) > 2 - n % 2);
      }
    }
    CHECK(exercised > 80);
  }

  TEST_CASE("property: polynomial ring identities and evaluation homomorphism") {
    spt::Gen g(20);
    for (int t = 0; t < 40; ++t) {
      const MultiPoly p = g.poly(3, 4, 5), q = g.poly(3, 4, 5);
      CHECK((p + q) - q == p);
      CHECK(p * q == q * p);
      const Vec x = g.vec(3);
      CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
      CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
      // product rule for the formal derivative
      CHECK((p * q).derivative(1) == p.derivative(1) * q + p * q.derivative(1));
    }
  }

  TEST_CASE("multipoly basics") {
    const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    const MultiPoly p = x * x * y - rat(1, 2) * y;
    CHECK(p.degree() == 3);
    CHECK_FALSE(p.is_homogeneous(3));
    CHECK((p - p).is_zero());
    CHECK(p.substitute({y, x}) == y * y * x - rat(1, 2) * x);
    CHECK(monomials_of_degree(3, 2).size() == 6);
    const auto monos = monomials_of_degree(2, 3);
    const MultiPoly h = x * x * y + 3 * (y * y * y);
    CHECK(from_coefficients(coefficient_vector(h, monos), monos) == h);
  }
}
