#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "logkn/degen.hpp"

namespace logkn::testing {

/// Hand-built graphs: Tate cycles, good reduction, bridges, banana and theta
/// graphs, loops on positive genus, marked configurations.
std::vector<degen::DualGraph> named_semistable_graphs();

/// Graphs with some multiplicity > 1.
std::vector<degen::DualGraph> non_reduced_graphs();

struct RandomGraphLimits {
  std::size_t max_vertices = 8;
  std::size_t max_edges = 10;
  long max_genus = 3;
  long max_marks = 2;
};

/// Connected, semistable; loops and parallel edges allowed.
degen::DualGraph random_semistable_graph(std::mt19937_64& rng, const RandomGraphLimits& limits);
std::vector<degen::DualGraph> random_semistable_graphs(std::size_t count, std::uint64_t seed,
                                                       const RandomGraphLimits& limits = {});

/// Extra *.json graphs from the directory named by LOGKN_CORPUS, if set.
std::vector<degen::DualGraph> environment_graphs();

/// Named + 30 random (fixed seed) + valid semistable environment graphs.
std::vector<degen::DualGraph> semistable_corpus();

}  // namespace logkn::testing
