#include "doctest.h"
#include "sp/errors.hpp"
#include "sp/flagprolong.hpp"
#include "sp/prolongpoly.hpp"
#include "support.hpp"

using namespace sp;

namespace {

// Partial derivative d^alpha as repeated single derivatives.
MultiPoly partial(MultiPoly p, const Exponent& alpha) {
  for (size_t i = 0; i < alpha.size(); ++i)
    for (int r = 0; r < alpha[i]; ++r) p = p.derivative(static_cast<int>(i));
  return p;
}

// dim of {F of degree k+2 : every order-k partial lies in span(forms)} by a dense solve.
int prolongation_dim_by_partials(int n, const std::vector<MultiPoly>& forms, int k) {
  const auto quad = monomials_of_degree(n, 2);
  std::vector<Vec> fc;
  for (const auto& f : forms) fc.push_back(coefficient_vector(f, quad));
  // annihilator of the form space inside the quadric coefficients
  RatMatrix fm = RatMatrix::from_rows(fc, static_cast<int>(quad.size()));
  const std::vector<Vec> ann = fc.empty() ? std::vector<Vec>{} : kernel_basis(fm);
  std::vector<Vec> annihilator = ann;
  if (fc.empty())
    for (size_t i = 0; i < quad.size(); ++i) {
      Vec e(quad.size());
      e[i] = 1;
      annihilator.push_back(e);
    }
  const auto top = monomials_of_degree(n, k + 2);
  std::vector<Vec> rows;
  for (const auto& alpha : monomials_of_degree(n, k)) {
    // column j: coefficient vector of d^alpha of the j-th monomial
    std::vector<Vec> cols;
    for (const auto& m : top) cols.push_back(coefficient_vector(partial(MultiPoly::monomial(m), alpha), quad));
    for (const auto& a : annihilator) {
      Vec row(top.size());
      for (size_t j = 0; j < top.size(); ++j) row[j] = dot(a, cols[j]);
      if (!is_zero(row)) rows.push_back(row);
    }
  }
  return static_cast<int>(top.size()) - spt::rank_by_gauss(rows);
}

bool vanishes_at_samples(const VarietySampler& v, const MultiPoly& p, spt::Gen& g, int samples = 12) {
  for (int s = 0; s < samples; ++s) {
    Vec params(v.arity);
    for (auto& x : params) x = g.fraction();
    if (p.eval(v.point(params)) != 0) return false;
  }
  return true;
}

MultiPoly moment_substitution(const MultiPoly& p) {
  // x_{i+1} -> t^i in a one-variable ring
  std::vector<MultiPoly> images;
  for (int i = 0; i < p.nvars(); ++i) images.push_back(MultiPoly::monomial({i}));
  return p.substitute(images);
}

}  // namespace

TEST_SUITE("prolong-poly") {
  TEST_CASE("quadratic forms round trip") {
    const GradedSymplecticSpace x = build_model_space(parse_symbol("D(2,3)"));
    const AZPDecomposition d = decompose_azp(x);
    for (const auto& a : d.p.basis) {
      const MultiPoly q = quadratic_form(x, a);
      CHECK(q.is_homogeneous(2));
      CHECK(form_to_matrix(x, q) == a);
    }
    CHECK(quadratic_forms(x, d.p).dim() == d.p.dim());
  }

  TEST_CASE("standard prolongation examples") {
    const GradedSymplecticSpace x23 = build_model_space(parse_symbol("D(2,3)"));
    CHECK(standard_prolong(x23, decompose_azp(x23).p, 1).dim() == 0);
    const GradedSymplecticSpace x34 = build_model_space(parse_symbol("D(3,4)"));
    const MatrixSubspace p34 = decompose_azp(x34).p;
    CHECK(standard_prolong(x34, p34, 0).dim() == p34.dim());
    CHECK(standard_prolong(x34, p34, 1).dim() == 1);
    CHECK(standard_prolong(x34, p34, 2).dim() == 0);
    const MatrixSubspace zero(x34.dim(), x34.dim());
    for (int k = 0; k <= 2; ++k) CHECK(standard_prolong(x34, zero, k).dim() == 0);
  }

  TEST_CASE("standard prolongation against the dense partials oracle") {
    for (const char* spec : {"D(2,3)", "D(3,4)", "D(1,2)", "D(2,4)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      const MatrixSubspace p = decompose_azp(x).p;
      const PolySpace forms = quadratic_forms(x, p);
      INFO(spec);
      for (int k = 1; k <= 2; ++k) CHECK(standard_prolong(x, p, k).dim() == prolongation_dim_by_partials(x.dim(), forms.basis, k));
    }
  }

  TEST_CASE("property: first partials of W^(k) lie in W^(k-1)") {
    for (const char* spec : {"D(3,4)", "D(4,5)", "D(3,5)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      const MatrixSubspace p = decompose_azp(x).p;
      INFO(spec);
      for (int k = 1; k <= 2; ++k) {
        const PolySpace hi = standard_prolong(x, p, k);
        const PolySpace lo = standard_prolong(x, p, k - 1);
        for (const auto& f : hi.basis)
          for (int i = 0; i < x.dim(); ++i) CHECK(lo.contains(f.derivative(i)));
      }
    }
  }

  TEST_CASE("secant ideal examples") {
    const VarietySampler cubic = rational_normal_curve(3);
    const PolySpace q = secant_ideal(cubic, 2, 0, 7);
    CHECK(q.dim() == 3);
    CHECK(secant_ideal(cubic, 3, 1, 7).dim() == 0);
    const PolySpace quartic = secant_ideal(rational_normal_curve(4), 3, 1, 7);
    CHECK(quartic.dim() == 1);
    spt::Gen g(71);
    for (const auto& p : q.basis) {
      CHECK(vanishes_on_secant(cubic, p, 0));
      CHECK(moment_substitution(p).is_zero());
      CHECK(vanishes_at_samples(cubic, p, g));
    }
  }

  TEST_CASE("property: secant ideals do not depend on the seed") {
    const VarietySampler v = rational_normal_curve(5);
    for (int k = 0; k <= 1; ++k) {
      const PolySpace a = secant_ideal(v, k + 2, k, 1);
      const PolySpace b = secant_ideal(v, k + 2, k, 99);
      CHECK(a.equals(b));
    }
  }

  TEST_CASE("a non-vanishing polynomial is rejected by certification") {
    const VarietySampler cubic = rational_normal_curve(3);
    const MultiPoly x0 = MultiPoly::variable(4, 0), x2 = MultiPoly::variable(4, 2);
    CHECK_FALSE(vanishes_on_secant(cubic, x0 * x2, 0));
  }

  TEST_CASE("Hankel minors") {
    const PolySpace a = hankel_minor_space(2, 0, 1);
    CHECK(a.dim() == 3);
    const PolySpace b = hankel_minor_space(3, 1, 2);
    CHECK(b.dim() == 1);
    CHECK_THROWS_AS(hankel_minor_space(2, 1, 1), RangeError);
    CHECK_FALSE(hankel_alpha_range(2, 1).has_value());
    CHECK(secant_ideal(rational_normal_curve(3), 3, 1, 42).dim() == 0);
    const auto r = hankel_alpha_range(5, 1);
    REQUIRE(r);
    CHECK(r->first == 2);
    CHECK(r->second == 4);
  }

  TEST_CASE("property: Hankel minors vanish on the secant variety and span its ideal") {
    for (int s = 2; s <= 5; ++s)
      for (int k = 0; k <= 2; ++k) {
        const auto range = hankel_alpha_range(s, k);
        if (!range) continue;
        const VarietySampler v = rational_normal_curve(s + 1);
        const PolySpace ideal = secant_ideal(v, k + 2, k, 42);
        for (int alpha = range->first; alpha <= range->second; ++alpha) {
          const PolySpace h = hankel_minor_space(s, k, alpha);
          INFO("s=" << s << " k=" << k << " alpha=" << alpha);
          for (const auto& p : h.basis) {
            CHECK(vanishes_on_secant(v, p, k));
            if (k == 0) CHECK(moment_substitution(p).is_zero());
          }
          CHECK(ideal.contains(h));
        }
      }
  }

  TEST_CASE("flat normal curve matches the moment curve after rescaling") {
    const VarietySampler flat = flat_normal_curve(3, 4);
    const PolySpace h = hankel_minor_space(3, 0, 1);
    for (const auto& p : h.basis) CHECK(vanishes_on_secant(flat, moment_to_flat(p), 0));
  }

  TEST_CASE("hypothesis predicates") {
    CHECK(genpr_hypotheses(parse_symbol("D(3,4)")));
    std::string why;
    CHECK_FALSE(genpr_hypotheses(parse_symbol("R(3/2)"), &why));
    CHECK_FALSE(why.empty());
    CHECK_FALSE(secant_hypotheses(parse_symbol("D(2,4)+D(3,4)")));
    CHECK(secant_hypotheses(parse_symbol("D(3,4)+D(3,5)")));
  }

  TEST_CASE("verification report examples") {
    const VerifyReport a = verify_prolongation_theorems(parse_symbol("D(3,4)"), 3);
    CHECK(a.all_pass());
    REQUIRE(a.degrees.size() >= 2);
    const DegreeRow& r1 = a.degrees[1];
    CHECK(r1.u == 1);
    CHECK(r1.p == 1);
    CHECK(r1.lx == 1);
    REQUIRE(r1.tangential);
    CHECK(*r1.tangential == 1);

    const VerifyReport b = verify_prolongation_theorems(parse_symbol("D(2,3)"), 2);
    CHECK(b.all_pass());
    CHECK(b.degrees[1].u == 0);
    CHECK(b.degrees[1].p == 0);
    CHECK(b.degrees[1].lx == 0);
    CHECK(*b.degrees[1].tangential == 0);

    const VerifyReport c = verify_prolongation_theorems(parse_symbol("R(3/2)"), 2);
    CHECK_FALSE(c.genpr_hypotheses);
    CHECK(c.degrees[1].u > 0);
    for (const auto& t : c.theorems)
      if (t.name == "tanaka_eq_p") CHECK_FALSE(t.applicable);
  }

  TEST_CASE("property: Tanaka and polynomial prolongations agree as tensor spaces") {
    for (const char* spec : {"D(3,4)", "D(4,5)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      const ProlongationReport r = symbol_prolongation(x, 4);
      const MatrixSubspace p = decompose_azp(x).p;
      INFO(spec);
      int compared = 0;
      for (int k = 1; k < static_cast<int>(r.levels.size()); ++k) {
        const auto a = tanaka_tensors(r, k, x.dim());
        const auto b = poly_tensors(x, standard_prolong(x, p, k));
        CHECK(spt::same_span(a, b));
        compared += static_cast<int>(a.size());
      }
      CHECK(compared > 0);
    }
  }

  TEST_CASE("property: u^k lies in the row-variety secant ideals") {
    for (const char* spec : {"D(2,3)", "D(3,4)", "D(2,4)", "D(1,2)+R(7/2)"}) {
      const VerifyReport r = verify_prolongation_theorems(parse_symbol(spec), 2);
      INFO(spec);
      for (const auto& t : r.theorems)
        if (t.name == "secant_row_inclusion" && t.applicable) CHECK(t.pass);
    }
  }
}
