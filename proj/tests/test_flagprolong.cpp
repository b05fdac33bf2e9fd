#include "doctest.h"
#include "sp/flagprolong.hpp"
#include "support.hpp"

using namespace sp;

namespace {

FlagProlongation uf(const char* spec) { return flag_prolong(build_model_space(parse_symbol(spec))); }

bool in_sp(const RatMatrix& sigma, const RatMatrix& a) { return (a.transpose() * sigma + sigma * a).is_zero(); }

std::vector<Vec> flats(const std::vector<RatMatrix>& ms) {
  std::vector<Vec> out;
  for (const auto& m : ms) out.push_back(m.flatten());
  return out;
}

}  // namespace

TEST_SUITE("flag-prolong") {
  TEST_CASE("flag prolongation examples") {
    for (const char* r : {"R(3/2)", "R(5/2)", "R(7/2)", "R(9/2)"}) CHECK(uf(r).dim() == 4);
    CHECK(uf("D(2,3)").dim() == 8);
    CHECK(uf("D(1,2)").dim() == 7);
  }

  TEST_CASE("property: u^F is a graded subalgebra of csp closed under bracketing with delta") {
    for (const char* spec : {"D(2,3)", "D(1,2)+R(3/2)", "D(3,5)", "R(5/2)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      const FlagProlongation f = flag_prolong(x);
      const MatrixSubspace all = f.all();
      for (const auto& a : all.basis) {
        CHECK(conformal_factor(x.sigma, a).has_value());
        CHECK(all.contains(spt::bracket(a, x.delta)));
        for (const auto& b : all.basis) CHECK(all.contains(spt::bracket(a, b)));
      }
    }
  }

  TEST_CASE("sl2 triple") {
    const GradedSymplecticSpace r = build_model_space(parse_symbol("R(3/2)"));
    const Sl2Triple t = sl2_triple(r);
    RatMatrix h(4, 4);
    const int diag[] = {3, 1, -1, -3};
    for (int i = 0; i < 4; ++i) h(r.row_indices[0][i], r.row_indices[0][i]) = diag[i];
    CHECK(t.h == h);
    spt::Gen g(61);
    for (int k = 0; k < 20; ++k) {
      const FlagSymbol s = g.symbol(18);
      const GradedSymplecticSpace x = build_model_space(s);
      const Sl2Triple u = sl2_triple(x);
      INFO(s.str());
      CHECK(u.e == x.delta);
      CHECK(spt::bracket(u.e, u.f) == u.h);
      CHECK(spt::bracket(u.h, u.e) == Rational(-2) * u.e);
      CHECK(spt::bracket(u.h, u.f) == Rational(2) * u.f);
      CHECK(in_sp(x.sigma, u.f));
      CHECK(in_sp(x.sigma, u.h));
    }
  }

  TEST_CASE("azp examples") {
    CHECK(decompose_azp(build_model_space(parse_symbol("D(1,2)"))).p.dim() == 2);
    const AZPDecomposition d = decompose_azp(build_model_space(parse_symbol("D(2,3)")));
    CHECK(d.z.dim() == 1);
    CHECK(d.p.dim() == 3);
    for (const char* r : {"R(3/2)", "R(5/2)", "R(9/2)"}) {
      const AZPDecomposition e = decompose_azp(build_model_space(parse_symbol(r)));
      CHECK(e.l_of_x.dim() == 0);
      CHECK(e.p.dim() == 0);
    }
  }

  TEST_CASE("z is spanned by the signed identities of two-row components") {
    const GradedSymplecticSpace x = build_model_space(parse_symbol("D(2,3)+D(3,5)"));
    const AZPDecomposition d = decompose_azp(x);
    std::vector<RatMatrix> zs;
    for (int c = 0; c < 2; ++c) {
      RatMatrix z(x.dim(), x.dim());
      for (int i = 0; i < x.dim(); ++i)
        if (x.component_of[i] == c) z(i, i) = x.rows[x.row_of[i]].kind == RowInterval::Kind::E ? 1 : -1;
      zs.push_back(z);
    }
    CHECK(spt::same_span(flats(d.z.basis), flats(zs)));
  }

  TEST_CASE("predicted dims examples") {
    const PredictedDims a = predicted_dims(parse_symbol("D(2,3)"));
    REQUIRE(a.components.size() == 1);
    CHECK(a.components[0].s_E == 3);
    CHECK(a.components[0].s_F == 0);
    const PredictedDims b = predicted_dims(parse_symbol("D(3,4)"));
    CHECK(b.components[0].s_E == 6);
    CHECK(b.components[0].s_F == 0);
    CHECK(b.uF == 11);
    CHECK(predicted_dims(parse_symbol("D(1,2)")).components[0].s_F == 1);
  }

  TEST_CASE("sl2 string dimensions against direct sums") {
    // Pi_k has dimension k + 1; strings stay in non-negative highest weights
    for (int top = 0; top <= 12; ++top)
      for (int lo = 0; lo <= 3; ++lo)
        for (int hi = lo; hi <= top / 2; ++hi) {
          int sum = 0;
          for (int i = lo; i <= hi; ++i) sum += top - 2 * i + 1;
          CHECK(string_dim(top, lo, hi) == sum);
        }
  }

  TEST_CASE("property: formulas match brute force on a sample of symbols") {
    const auto all = spt::symbol_sweep(12, 4, true);
    REQUIRE(all.size() >= 19);
    for (size_t i = 0; i < all.size(); i += 3) {
      const GradedSymplecticSpace x = build_model_space(all[i]);
      const AZPDecomposition d = decompose_azp(x);
      const PredictedDims p = predicted_dims(all[i]);
      const PredictedDims m = measured_dims(x, d);
      INFO(all[i].str());
      CHECK(p.uF == d.uF.dim());
      CHECK(p.l_x == d.l_of_x.dim());
      CHECK(p.p == d.p.dim());
      CHECK(p.z == d.z.dim());
      CHECK(p.l_x == m.l_x);
      REQUIRE(p.components.size() == m.components.size());
      for (size_t c = 0; c < p.components.size(); ++c) {
        CHECK(p.components[c].s_E == m.components[c].s_E);
        CHECK(p.components[c].s_F == m.components[c].s_F);
        CHECK(p.components[c].n_E == m.components[c].n_E);
      }
      REQUIRE(p.row_pairs.size() == m.row_pairs.size());
      for (size_t r = 0; r < p.row_pairs.size(); ++r) CHECK(p.row_pairs[r].dim == m.row_pairs[r].dim);
    }
  }

  TEST_CASE("property: r(u^F) = l(X) + sl2 and u^F = r(u^F) + R Id") {
    for (const char* spec : {"D(2,3)", "D(3,4)", "D(1,2)+R(5/2)", "D(2,3)+D(3,4)", "R(7/2)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      const AZPDecomposition d = decompose_azp(x);
      INFO(spec);
      std::vector<Vec> semidirect = d.l_of_x.flat();
      for (const auto& m : {d.sl2.e, d.sl2.h, d.sl2.f}) semidirect.push_back(m.flatten());
      CHECK(spt::same_span(semidirect, d.r_uF.flat()));
      std::vector<Vec> with_id = d.r_uF.flat();
      with_id.push_back(RatMatrix::identity(x.dim()).flatten());
      CHECK(spt::same_span(with_id, d.uF.all().flat()));
      CHECK(d.uF.dim() == d.r_uF.dim() + 1);
      // l(X) = z + p after projection
      CHECK(d.l_of_x.dim() == d.z.dim() + d.p.dim());
    }
  }

  TEST_CASE("property: the two l(X) routes agree and preserve the flat curve") {
    spt::Gen g(62);
    for (int t = 0; t < 20; ++t) {
      const FlagSymbol s = g.symbol(14);
      const GradedSymplecticSpace x = build_model_space(s);
      INFO(s.str());
      const MatrixSubspace fix = l_of_x(x);
      const MatrixSubspace curve = curve_symmetry_algebra(x);
      CHECK(fix.equals(curve));
      for (const auto& a : fix.basis) {
        CHECK(in_sp(x.sigma, a));
        CHECK(preserves_flat_curve(x, a));
      }
    }
  }

  TEST_CASE("a matrix outside l(X) moves the flat curve") {
    const GradedSymplecticSpace x = build_model_space(parse_symbol("D(2,3)"));
    const Sl2Triple t = sl2_triple(x);
    const AZPDecomposition d = decompose_azp(x);
    for (const auto& z : d.z.basis) CHECK(preserves_flat_curve(x, z));
    // [delta, h] and [delta, f] leave the non-negative degrees
    CHECK_FALSE(preserves_flat_curve(x, t.h));
    CHECK_FALSE(preserves_flat_curve(x, t.f));
  }

  TEST_CASE("rank-one elements") {
    for (const char* spec : {"D(2,3)", "D(3,4)", "D(2,4)+R(3/2)", "D(3,5)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      INFO(spec);
      CHECK_FALSE(rank_one_witness(x, decompose_azp(x).p).has_value());
    }
    for (const char* spec : {"D(2,2)", "D(3,3)", "D(1,1)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      INFO(spec);
      const auto w = rank_one_witness(x, decompose_azp(x).p);
      REQUIRE(w.has_value());
      CHECK(spt::rank_by_gauss(*w) == 1);
      CHECK(decompose_azp(x).p.contains(*w));
    }
  }
}
