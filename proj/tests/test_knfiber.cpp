#include "corpus.hpp"
#include "cw_oracle.hpp"
#include "doctest.h"
#include "logkn/error.hpp"
#include "logkn/knfiber.hpp"

using namespace logkn;
using namespace logkn::knfiber;
using intlin::HomologySummary;
using intlin::IntegerMatrix;

namespace {

HomologySummary free_summary(std::initializer_list<std::size_t> ranks) {
  HomologySummary h;
  for (auto r : ranks) h.groups.push_back({r, {}});
  return h;
}

}  // namespace

TEST_CASE("fiber surfaces of basic graphs") {
  const auto t1 = build_fiber(degen::tate_ngon(1));
  CHECK(t1.genus == 1);
  REQUIRE(t1.rank() == 2);
  CHECK(t1.node_class("e0") == std::vector<Integer>{0, 1});

  const auto g2 = build_fiber(degen::good_reduction(2));
  CHECK(g2.genus == 2);
  CHECK(g2.node_ids.empty());

  const degen::DualGraph bridge("bridge", {{"a", 1, 1, 0}, {"b", 1, 1, 0}}, {{"e", "a", "b"}});
  const auto fb = build_fiber(bridge);
  CHECK(fb.genus == 2);
  CHECK(fb.node_class("e") == std::vector<Integer>(4, 0));

  CHECK_THROWS_AS(build_fiber(degen::apply_blowup(degen::tate_ngon(1), degen::NodeBlowup{"e0"})), Error);
}

TEST_CASE("Tate monodromy") {
  const auto r1 = monodromy(build_fiber(degen::tate_ngon(1)));
  CHECK(r1.T == IntegerMatrix{{1, 0}, {1, 1}});
  CHECK(r1.rank_n == 1);
  CHECK(r1.nilpotency_degree == 2);
  for (long n = 1; n <= 6; ++n) {
    const auto r = monodromy(build_fiber(degen::tate_ngon(static_cast<std::size_t>(n))));
    CHECK(r.T == IntegerMatrix{{1, 0}, {n, 1}});
    const auto form = transvection_normal_form(r.T);
    REQUIRE(form.has_value());
    CHECK(form->shear == n);
    CHECK(form->conjugator * r.T * intlin::unimodular_inverse(form->conjugator) == IntegerMatrix{{1, n}, {0, 1}});
  }
}

TEST_CASE("transvection normal form rejects non-unipotent matrices") {
  CHECK_FALSE(transvection_normal_form(IntegerMatrix{{2, 1}, {1, 1}}).has_value());
  CHECK_FALSE(transvection_normal_form(IntegerMatrix::identity(3)).has_value());
  const auto neg = transvection_normal_form(IntegerMatrix{{1, -3}, {0, 1}});
  REQUIRE(neg.has_value());
  CHECK(neg->shear == 3);
  const auto mixed = transvection_normal_form(IntegerMatrix{{-1, 1}, {-4, 3}});
  REQUIRE(mixed.has_value());
  CHECK(mixed->shear == 1);
}

TEST_CASE("good reduction has trivial monodromy and product homology") {
  for (long g = 0; g <= 3; ++g) {
    const auto f = build_fiber(degen::good_reduction(g));
    const auto r = monodromy(f);
    CHECK(r.T == IntegerMatrix::identity(static_cast<std::size_t>(2 * g)));
    CHECK(r.N.is_zero());
    const auto b1 = static_cast<std::size_t>(2 * g);
    CHECK(total_space_homology(f, r) == free_summary({1, b1 + 1, b1 + 1, 1}));
  }
}

TEST_CASE("total space of the Tate curve") {
  const auto f = build_fiber(degen::tate_ngon(1));
  CHECK(total_space_homology(f, monodromy(f)) == free_summary({1, 2, 2, 1}));
  // H_1 = Z + coker N = Z + Z + Z/n.
  const auto f3 = build_fiber(degen::tate_ngon(3));
  const auto h3 = total_space_homology(f3, monodromy(f3));
  CHECK(h3[1].rank == 2);
  CHECK(h3[1].torsion == std::vector<Integer>{3});
}

TEST_CASE("closed form agrees with the CW oracle") {
  for (const auto& g : testing::semistable_corpus()) {
    if (g.edges().size() > 6) continue;
    CAPTURE(g.name());
    const auto cmp = testing::compare_with_oracle(g);
    CHECK(cmp.genus);
    CHECK(cmp.homology);
    CHECK(cmp.unimodular);
    CHECK(cmp.node_classes);
    CHECK(cmp.crossings);
    CHECK(cmp.monodromy);
  }
}

TEST_CASE("monodromy algebra on the corpus") {
  for (const auto& g : testing::semistable_corpus()) {
    CAPTURE(g.name());
    const auto f = build_fiber(g);
    const auto r = monodromy(f);
    CHECK(f.genus == g.total_genus() + g.first_betti());
    CHECK((r.N * r.N).is_zero());
    CHECK(r.rank_n == static_cast<std::size_t>(g.first_betti()));
    CHECK(r.weights[0] + r.weights[1] + r.weights[2] == 2 * f.genus);
    const auto e = exp_nilpotent(r.N);
    REQUIRE(e.has_value());
    CHECK(*e == r.T);
    const auto l = log_unipotent(r.T);
    REQUIRE(l.has_value());
    CHECK(*l == r.N);
    if (f.closed()) CHECK(preserves_form(r.T, f.intersection_form));
    for (std::size_t i = 0; i < f.node_classes.size(); ++i)
      for (std::size_t j = 0; j < f.node_classes.size(); ++j)
        CHECK(intersection(f, f.node_classes[i], f.node_classes[j]) == 0);
    const auto model = chain_model(f, r);
    const auto total = total_space_homology(f, r);
    CHECK(intlin::wang_ranks_consistent(model.complex, model.twist, total));
    CHECK(total[0] == intlin::HomologyGroup{1, {}});
  }
}

TEST_CASE("blowup invariance") {
  const auto t3 = blowup_invariance(degen::tate_ngon(3), degen::SmoothPointBlowup{"v0", false});
  CHECK(t3.full);
  CHECK(t3.passed());
  const auto node = blowup_invariance(degen::tate_ngon(1), degen::NodeBlowup{"e0"});
  CHECK_FALSE(node.full);
  CHECK(node.passed());
  const degen::DualGraph ex2("ex2", {{"v", 0, 1, 1}}, {});
  const auto marked = blowup_invariance(ex2, degen::SmoothPointBlowup{"v", true});
  CHECK(marked.full);
  CHECK(marked.passed());
  for (const auto& g : testing::semistable_corpus()) {
    for (const auto& move : degen::applicable_moves(g)) {
      CAPTURE(g.name());
      CAPTURE(degen::describe(move));
      CHECK(blowup_invariance(g, move).passed());
    }
  }
}

TEST_CASE("Hopf surface") {
  const auto h = hopf_surface();
  CHECK(h.fiber == free_summary({1, 1, 0, 1, 1}));
  CHECK(h.total == free_summary({1, 2, 1, 1, 2, 1}));
}

TEST_CASE("Tate gluing quotient") {
  const auto t = tate_gluing_check();
  CHECK(t.ok);
  CHECK(t.winding == 1);
  CHECK(t.fiber == free_summary({1, 2, 1}));
  CHECK(t.total == free_summary({1, 2, 2, 1}));
  CHECK(t.total_via_seam == t.total);
}
