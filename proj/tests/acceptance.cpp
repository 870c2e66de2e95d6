// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "corpus.hpp"
#include "cw_oracle.hpp"
#include "logkn/blowfiber.hpp"
#include "logkn/error.hpp"
#include "logkn/etalecmp.hpp"
#include "logkn/knfiber.hpp"
#include "oracles.hpp"

using namespace logkn;
using intlin::HomologySummary;
using intlin::IntegerMatrix;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = "failed: " + what;
    passed = passed && ok;
  }
};

HomologySummary free_summary(std::initializer_list<std::size_t> ranks) {
  HomologySummary h;
  for (auto r : ranks) h.groups.push_back({r, {}});
  return h;
}

Outcome tate_curve() {
  Outcome o;
  const auto f = knfiber::build_fiber(degen::tate_ngon(1));
  const auto r = knfiber::monodromy(f);
  o.require(f.genus == 1, "fiber genus 1");
  o.require(r.T.rows() == 2 && r.T.cols() == 2, "T is 2x2");
  o.require((r.N * r.N).is_zero(), "(T - I)^2 = 0");
  o.require(r.rank_n == 1, "rank(T - I) = 1");
  const auto form = knfiber::transvection_normal_form(r.T);
  o.require(form && form->shear == 1 &&
                form->conjugator * r.T * intlin::unimodular_inverse(form->conjugator) == IntegerMatrix{{1, 1}, {0, 1}},
            "T conjugate to [[1,1],[0,1]]");
  o.require(knfiber::total_space_homology(f, r) == free_summary({1, 2, 2, 1}), "total homology [Z, Z^2, Z^2, Z]");
  o.require(knfiber::tate_gluing_check().ok, "explicit gluing quotient agrees");
  if (o.passed) o.detail = "T = " + intlin::to_string(r.T) + ", H_* = " + intlin::to_string(knfiber::total_space_homology(f, r));
  return o;
}

Outcome tate_family() {
  Outcome o;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto g = degen::tate_ngon(n);
    const auto r = knfiber::monodromy(knfiber::build_fiber(g));
    const auto closed = knfiber::transvection_normal_form(r.T);
    const auto cmp = testing::compare_with_oracle(g);
    const auto oracle = knfiber::transvection_normal_form(cmp.oracle_T);
    const auto tag = "n = " + std::to_string(n);
    o.require(closed && closed->shear == static_cast<long>(n), tag + " closed form");
    o.require(cmp.ok(), tag + " oracle agreement");
    o.require(oracle && oracle->shear == static_cast<long>(n), tag + " oracle transvection");
  }
  if (o.passed) o.detail = "n = 1..6, closed form and CW oracle both give [[1,n],[0,1]]";
  return o;
}

Outcome good_reduction() {
  Outcome o;
  const intlin::ChainComplex circle({1, 1}, {IntegerMatrix(1, 1)});
  for (long g = 0; g <= 3; ++g) {
    const auto f = knfiber::build_fiber(degen::good_reduction(g));
    const auto r = knfiber::monodromy(f);
    const auto b1 = static_cast<std::size_t>(2 * g);
    const intlin::ChainComplex surface({1, b1, 1}, {IntegerMatrix(1, b1), IntegerMatrix(b1, 1)});
    const auto product = intlin::homology(intlin::tensor_product(surface, circle));
    o.require(r.T == IntegerMatrix::identity(b1), "g = " + std::to_string(g) + " T = I");
    o.require(knfiber::total_space_homology(f, r) == product, "g = " + std::to_string(g) + " product pattern");
  }
  if (o.passed) o.detail = "g = 0..3, T = I, H_*(total) = H_*(S_g x S^1)";
  return o;
}

Outcome blowup_invariance() {
  Outcome o;
  const auto graphs = testing::random_semistable_graphs(25, 4242);
  std::size_t smooth = 0, node = 0;
  for (const auto& g : graphs) {
    for (const auto& move : degen::applicable_moves(g)) {
      const auto rep = knfiber::blowup_invariance(g, move);
      const bool is_smooth = std::holds_alternative<degen::SmoothPointBlowup>(move);
      o.require(rep.passed(), g.name() + " " + degen::describe(move));
      o.require(rep.full == is_smooth, g.name() + " " + degen::describe(move) + " path");
      (is_smooth ? smooth : node)++;
    }
  }
  if (o.passed) {
    o.detail = std::to_string(graphs.size()) + " graphs, " + std::to_string(smooth) +
               " smooth-point moves (g_F, T, H_*), " + std::to_string(node) + " node moves (chi, zeta)";
  }
  return o;
}

Outcome key_calculation() {
  Outcome o;
  std::size_t cases = 0;
  std::uint64_t seed = 1;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> l;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) l.push_back(i);
      const auto model = blowfiber::fiber_of_simple_blowup({n, l});
      const auto cert = blowfiber::verify_contractibility(model, 1000, seed++);
      const auto tag = "|I| = " + std::to_string(n) + ", |L| = " + std::to_string(l.size());
      o.require(!model.empty(), tag + " nonempty");
      o.require(model.dimension() == l.size() + 2 * (n - l.size()) - 1, tag + " dimension");
      o.require(cert.passed() && cert.violations == 0, tag + " star-shaped");
      ++cases;
    }
  }
  bool rejected = false;
  try {
    blowfiber::fiber_of_simple_blowup({3, {}});
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::CenterNotInDivisor;
  }
  o.require(rejected, "L = {} raises CenterNotInDivisor");
  if (o.passed) o.detail = std::to_string(cases) + " cases x 1000 samples, 0 violations; empty L rejected";
  return o;
}

Outcome hopf() {
  Outcome o;
  const auto h = knfiber::hopf_surface();
  o.require(h.fiber == free_summary({1, 1, 0, 1, 1}), "fiber [Z, Z, 0, Z, Z]");
  o.require(h.total == free_summary({1, 2, 1, 1, 2, 1}), "total [Z, Z^2, Z, Z, Z^2, Z]");
  if (o.passed) o.detail = "fiber " + intlin::to_string(h.fiber) + ", total " + intlin::to_string(h.total);
  return o;
}

Outcome log_points() {
  Outcome o;
  for (std::size_t r = 0; r <= 4; ++r) {
    for (long n = 2; n <= 6; ++n) {
      o.require(etalecmp::compare_log_point(r, n), "r = " + std::to_string(r) + ", n = " + std::to_string(n));
    }
  }
  if (o.passed) o.detail = "r = 0..4, n = 2..6";
  return o;
}

Outcome mod_n_consistency() {
  Outcome o;
  const auto corpus = testing::semistable_corpus();
  for (const auto& g : corpus)
    for (long n = 2; n <= 5; ++n)
      o.require(etalecmp::mapping_torus_mod_n_consistency(g, n), g.name() + " mod " + std::to_string(n));
  if (o.passed) o.detail = std::to_string(corpus.size()) + " graphs, n = 2..5";
  return o;
}

Outcome smith_oracle() {
  Outcome o;
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const auto small = testing::random_small_matrix(rng, 6, 10);
    IntegerMatrix a(small.size(), small[0].size());
    for (std::size_t i = 0; i < small.size(); ++i)
      for (std::size_t j = 0; j < small[0].size(); ++j) a(i, j) = small[i][j];
    const auto snf = intlin::smith_normal_form(a);
    const auto expected = testing::invariant_factors_by_minors(small);
    const auto got = intlin::invariant_factors(a);
    bool same = got.size() == expected.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) same = got[i] == expected[i];
    const auto tag = "matrix " + std::to_string(trial);
    o.require(same, tag + " invariant factors");
    o.require(snf.U * a * snf.V == snf.S && intlin::is_unimodular(snf.U) && intlin::is_unimodular(snf.V),
              tag + " U A V = S");
  }
  if (o.passed) o.detail = "200 matrices up to 6x6, entries in [-10, 10]";
  return o;
}

Outcome monodromy_algebra() {
  Outcome o;
  const auto corpus = testing::semistable_corpus();
  std::size_t symplectic = 0;
  for (const auto& g : corpus) {
    const auto f = knfiber::build_fiber(g);
    const auto r = knfiber::monodromy(f);
    o.require((r.N * r.N).is_zero(), g.name() + " N^2 = 0");
    const auto e = knfiber::exp_nilpotent(r.N);
    o.require(e && *e == r.T, g.name() + " exp(N) = T");
    o.require(r.rank_n == static_cast<std::size_t>(g.first_betti()), g.name() + " rank N = b_1");
    if (f.closed()) {
      o.require(knfiber::preserves_form(r.T, f.intersection_form), g.name() + " T^T J T = J");
      ++symplectic;
    }
  }
  if (o.passed) {
    o.detail = std::to_string(corpus.size()) + " graphs; T^T J T = J on the " + std::to_string(symplectic) +
               " closed fibers";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Tate curve", tate_curve},
      {"Tate n-gon family", tate_family},
      {"Good reduction", good_reduction},
      {"Blowup invariance", blowup_invariance},
      {"Key calculation", key_calculation},
      {"Hopf surface", hopf},
      {"Etale comparison at log points", log_points},
      {"Mod-n consistency", mod_n_consistency},
      {"SNF oracle", smith_oracle},
      {"Monodromy algebra", monodromy_algebra},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    std::printf("[%s] %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
