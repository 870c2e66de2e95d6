// logkn: command-line front end for dual-graph analyses, blowup moves,
// monoid charts, built-in examples and mod-n comparisons.

#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "logkn/blowfiber.hpp"
#include "logkn/graph_io.hpp"
#include "logkn/report.hpp"

namespace {

using logkn::report::json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInvariantViolation = 2;

bool g_pretty = false;

void emit(const json& j) {
  if (g_pretty) {
    std::cout << logkn::report::pretty(j);
  } else {
    std::cout << j.dump() << '\n';
  }
}

int fail(const std::string& code, const std::string& message) {
  std::cout << json{{"error", code}, {"message", message}}.dump() << '\n';
  return kInputError;
}

// Carries the full validation report of a rejected graph.
struct RejectedGraph {
  json report;
};

// The first validation error becomes the error code.
logkn::degen::DualGraph load_valid(const std::string& path) {
  auto g = logkn::degen::load_graph(path);
  const auto errors = logkn::degen::validate(g);
  if (!errors.empty()) {
    json list = json::array();
    for (const auto& e : errors) list.push_back({{"kind", logkn::degen::to_string(e.kind)}, {"message", e.message}});
    throw RejectedGraph{{{"error", logkn::degen::to_string(errors.front().kind)},
                         {"message", errors.front().message},
                         {"errors", list}}};
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kato-Nakayama spaces of log degenerations: desk-scale invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", g_pretty, "Render aligned text instead of JSON");

  std::string file;
  std::function<int()> action;

  auto* analyze = app.add_subcommand("analyze", "Fiber, monodromy and total homology of a dual graph");
  analyze->add_option("file", file, "Dual graph JSON")->required();
  analyze->callback([&] {
    action = [&] {
      emit(logkn::report::analysis(load_valid(file)));
      return kOk;
    };
  });

  std::string node, smooth_point;
  bool through_mark = false, check = false;
  auto* blowup = app.add_subcommand("blowup", "Apply a blowup move");
  blowup->add_option("file", file, "Dual graph JSON")->required();
  auto* node_opt = blowup->add_option("--node", node, "Blow up the node with this edge id");
  auto* smooth_opt = blowup->add_option("--smooth-point", smooth_point, "Blow up a smooth point on this vertex");
  node_opt->excludes(smooth_opt);
  blowup->add_flag("--through-mark", through_mark, "The blown-up point lies on a horizontal mark")->needs(smooth_opt);
  blowup->add_flag("--check", check, "Run the invariance checks");
  blowup->callback([&] {
    action = [&]() -> int {
      if (node.empty() && smooth_point.empty()) return fail("InvalidArgument", "one of --node or --smooth-point is required");
      const auto g = load_valid(file);
      logkn::degen::BlowupMove move = node.empty()
                                          ? logkn::degen::BlowupMove{logkn::degen::SmoothPointBlowup{smooth_point, through_mark}}
                                          : logkn::degen::BlowupMove{logkn::degen::NodeBlowup{node}};
      const auto h = logkn::degen::apply_blowup(g, move);
      if (!check) {
        emit(logkn::degen::graph_to_json(h));
        return kOk;
      }
      const auto r = logkn::knfiber::blowup_invariance(g, move);
      emit({{"graph", logkn::degen::graph_to_json(h)}, {"invariance", logkn::report::invariance(r)}});
      return r.passed() ? kOk : kInvariantViolation;
    };
  });

  std::string generators, multiplicities;
  auto* chart = app.add_subcommand("chart", "Monoid chart report");
  auto* gen_opt = chart->add_option("--generators", generators, "Monoid generators, e.g. \"1,0;1,1\"");
  auto* mult_opt = chart->add_option("--multiplicities", multiplicities, "Chart multiplicities a1,...,ar");
  gen_opt->excludes(mult_opt);
  chart->callback([&] {
    action = [&]() -> int {
      if (*gen_opt) {
        emit(logkn::report::chart_from_generators(logkn::monoid::FsMonoid::parse(generators)));
      } else if (*mult_opt) {
        emit(logkn::report::chart_from_multiplicities(logkn::monoid::good_model_chart(multiplicities)));
      } else {
        return fail("InvalidArgument", "one of --generators or --multiplicities is required");
      }
      return kOk;
    };
  });

  std::string example;
  std::size_t n = 1;
  long genus = 1;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  auto* examples = app.add_subcommand("examples", "Built-in scenarios: tate, good-reduction, hopf, blowfiber");
  examples->add_option("name", example, "Scenario name")->required();
  examples->add_option("--n", n, "Number of components of the Tate cycle")->check(CLI::PositiveNumber);
  examples->add_option("--genus", genus, "Genus for good-reduction")->check(CLI::NonNegativeNumber);
  examples->add_option("--samples", samples, "Monte Carlo samples per blowfiber case");
  examples->add_option("--seed", seed, "Seed for blowfiber sampling");
  examples->callback([&] {
    action = [&]() -> int {
      if (example == "tate") {
        const auto g = logkn::degen::tate_ngon(n);
        auto j = logkn::report::analysis(g);
        const auto form = logkn::knfiber::transvection_normal_form(
            logkn::knfiber::monodromy(logkn::knfiber::build_fiber(g)).T);
        if (form) j["transvection"] = logkn::report::integer_json(form->shear);
        if (n == 1) j["gluing_check"] = logkn::report::tate_gluing();
        emit(j);
        return kOk;
      }
      if (example == "good-reduction") {
        emit(logkn::report::analysis(logkn::degen::good_reduction(genus)));
        return kOk;
      }
      if (example == "hopf") {
        emit(logkn::report::hopf());
        return kOk;
      }
      if (example == "blowfiber") {
        const auto j = logkn::report::blowfiber_suite(samples, seed);
        emit(j);
        return j["passed"].get<bool>() ? kOk : kInvariantViolation;
      }
      return fail("UnknownExample", "unknown example '" + example + "'");
    };
  });

  std::optional<std::size_t> log_point;
  long modulus = 2;
  auto* etale = app.add_subcommand("compare-etale", "Mod-n comparison for a mapping torus or a log point");
  etale->add_option("file", file, "Dual graph JSON");
  etale->add_option("--log-point", log_point, "Rank r of the log point");
  etale->add_option("--mod", modulus, "Coefficient modulus n >= 2")->required()->check(CLI::Range(2L, 1000000L));
  etale->callback([&] {
    action = [&]() -> int {
      json j;
      bool ok;
      if (log_point) {
        if (*log_point > 16) return fail("InvalidArgument", "--log-point is capped at 16");
        j = logkn::report::log_point_comparison(*log_point, modulus);
        ok = j["agree"].get<bool>();
      } else if (!file.empty()) {
        j = logkn::report::mapping_torus_comparison(load_valid(file), modulus);
        ok = j["consistent"].get<bool>();
      } else {
        return fail("InvalidArgument", "a graph file or --log-point is required");
      }
      emit(j);
      return ok ? kOk : kInvariantViolation;
    };
  });

  std::size_t index_count = 1;
  std::size_t log_count = 1;
  auto* blowfiber = app.add_subcommand("blowfiber", "Contractibility check for one simple blowup fiber");
  blowfiber->add_option("--i", index_count, "|I|")->required();
  blowfiber->add_option("--l", log_count, "|L|; the model depends only on |L| and |I|")->required();
  blowfiber->add_option("--samples", samples, "Monte Carlo samples");
  blowfiber->add_option("--seed", seed, "Sampling seed");
  blowfiber->callback([&] {
    action = [&]() -> int {
      if (log_count > index_count) return fail("InvalidArgument", "--l must not exceed --i");
      std::vector<std::size_t> log_indices(log_count);
      std::iota(log_indices.begin(), log_indices.end(), std::size_t{0});
      const auto j = logkn::report::blowfiber_case(index_count, log_indices, samples, seed);
      emit(j);
      return j["passed"].get<bool>() ? kOk : kInvariantViolation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("UsageError", e.what());
  }
  try {
    return action();
  } catch (const RejectedGraph& r) {
    std::cout << r.report.dump() << '\n';
    return kInputError;
  } catch (const logkn::Error& e) {
    std::cout << logkn::report::error_json(e).dump() << '\n';
    return kInputError;
  }
}
