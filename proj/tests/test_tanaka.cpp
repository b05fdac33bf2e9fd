#include "doctest.h"
#include "sp/errors.hpp"
#include "sp/flagprolong.hpp"
#include "sp/prolongpoly.hpp"
#include "sp/tanaka.hpp"
#include "support.hpp"

using namespace sp;

namespace {

// Grade-preserving derivations by a dense solve over all of gl(t).
int derivation_dim_by_dense_solve(const GradedLieAlgebra& t) {
  const int n = t.dim();
  auto var = [n](int r, int c) { return r * n + c; };
  std::vector<Vec> rows;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (t.weight(r) != t.weight(c)) {
        Vec e(n * n);
        e[var(r, c)] = 1;
        rows.push_back(e);
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int out = 0; out < n; ++out) {
        // (D[b_i,b_j])_out - ([D b_i, b_j])_out - ([b_i, D b_j])_out
        Vec e(n * n);
        for (int m = 0; m < n; ++m) e[var(out, m)] += t.constant(i, j, m);
        for (int m = 0; m < n; ++m) e[var(m, i)] -= t.constant(m, j, out);
        for (int m = 0; m < n; ++m) e[var(m, j)] -= t.constant(i, m, out);
        rows.push_back(e);
      }
  return n * n - spt::rank_by_gauss(rows);
}

ProlongationReport prolong_symbol(const char* spec, int k_max = 6) {
  return symbol_prolongation(build_model_space(parse_symbol(spec)), k_max);
}

}  // namespace

TEST_SUITE("tanaka") {
  TEST_CASE("degree-zero derivations") {
    for (int d = 2; d <= 6; d += 2) {
      const MatrixSubspace g0 = deg0_derivations(heisenberg(d));
      CHECK(g0.dim() == d * (d + 1) / 2 + 1);
      for (const auto& m : g0.basis) CHECK(is_derivation(heisenberg(d), m));
    }
    GradedLieAlgebra line({"v"}, {-1});
    CHECK(deg0_derivations(line).dim() == 1);
  }

  TEST_CASE("degree-zero derivations against the dense oracle") {
    for (const char* spec : {"D(2,3)", "R(5/2)", "D(1,2)", "D(2,3)+R(1/2)"}) {
      const GradedLieAlgebra a = flat_model(parse_symbol(spec)).algebra;
      INFO(spec);
      CHECK(deg0_derivations(a).dim() == derivation_dim_by_dense_solve(a));
    }
    CHECK(deg0_derivations(heisenberg(4)).dim() == derivation_dim_by_dense_solve(heisenberg(4)));
  }

  TEST_CASE("csp embedding lands in the derivations of the Heisenberg algebra") {
    const GradedSymplecticSpace x = build_model_space(parse_symbol("D(1,2)"));
    const GradedLieAlgebra eta = heisenberg(x);
    for (const auto& a : csp_degree(x, HalfWeight(0)).basis) CHECK(is_derivation(eta, csp_to_derivation(x, a)));
    CHECK(is_derivation(eta, csp_to_derivation(x, x.delta)));
  }

  TEST_CASE("G2 from the rank-two symbol of a five-manifold") {
    const GradedSymplecticSpace x = build_model_space(parse_symbol("R(3/2)"));
    const ProlongationReport r = symbol_prolongation(x, 6);
    CHECK(r.terminated);
    CHECK(r.total_dim() == 14);
    REQUIRE(r.confirming_dim);
    CHECK(*r.confirming_dim == 0);
    const GradedLieAlgebra g = assemble_algebra(heisenberg(x), r);
    CHECK(g.dim() == 14);
    CHECK_FALSE(check_jacobi(g));
    CHECK(killing_signature(g).rank == 14);
  }

  TEST_CASE("rank-two symbol of a seven-manifold has no first prolongation") {
    const ProlongationReport r = prolong_symbol("R(7/2)");
    CHECK(r.dim(1) == 0);
    CHECK(r.total_dim() == 13);
  }

  TEST_CASE("so(4,3) from D(1,2)") {
    const GradedSymplecticSpace x = build_model_space(parse_symbol("D(1,2)"));
    const ProlongationReport r = symbol_prolongation(x, 6);
    CHECK(r.total_dim() == 21);
    const GradedLieAlgebra g = assemble_algebra(heisenberg(x), r);
    CHECK_FALSE(check_jacobi(g));
    CHECK(g.is_antisymmetric());
    CHECK(g.respects_grading());
    CHECK(killing_signature(g).rank == 21);
  }

  TEST_CASE("property: Leibniz holds on sampled pairs for every element") {
    spt::Gen gen(51);
    for (const char* spec : {"R(3/2)", "D(1,2)", "D(3,4)"}) {
      const GradedSymplecticSpace x = build_model_space(parse_symbol(spec));
      const GradedLieAlgebra eta = heisenberg(x);
      const ProlongationReport r = symbol_prolongation(x, 6);
      for (int k = 0; k < static_cast<int>(r.levels.size()); ++k)
        for (int e = 0; e < r.levels[k].dim(); ++e)
          for (int s = 0; s < 50; ++s) {
            const int a = gen.integer(0, eta.dim() - 1), b = gen.integer(0, eta.dim() - 1);
            CHECK(leibniz_holds(eta, r, k, e, a, b));
          }
    }
  }

  TEST_CASE("contact negative control: full csp has a first prolongation") {
    const GradedLieAlgebra eta = heisenberg(4);
    const ProlongationReport r = tanaka_probe(eta, deg0_derivations(eta), 2);
    CHECK_FALSE(r.terminated);
    CHECK(r.dim(1) > 0);
    CHECK_THROWS_AS(tanaka_prolong(eta, deg0_derivations(eta), 2), CapReached);
  }

  TEST_CASE("trivial prolongation keeps the brackets of t") {
    const GradedLieAlgebra eta = heisenberg(4);
    const ProlongationReport r = tanaka_prolong(eta, MatrixSubspace(eta.dim(), eta.dim()), 3);
    CHECK(r.total_dim() == eta.dim());
    const GradedLieAlgebra g = assemble_algebra(eta, r);
    REQUIRE(g.dim() == eta.dim());
    for (int i = 0; i < eta.dim(); ++i)
      for (int j = 0; j < eta.dim(); ++j) CHECK(g.bracket(i, j) == eta.bracket(i, j));
  }

  TEST_CASE("Killing form diagnostics") {
    CHECK(killing_signature(heisenberg(4)).rank == 0);
    const KillingSignature s = symmetric_inertia(RatMatrix{{2, 1, 0}, {1, 2, 0}, {0, 0, -3}});
    CHECK(s.rank == 3);
    CHECK(s.positive == 2);
    CHECK(s.negative == 1);
    const KillingSignature z = symmetric_inertia(RatMatrix{{0, 1}, {1, 0}});
    CHECK(z.positive == 1);
    CHECK(z.negative == 1);
  }
}
