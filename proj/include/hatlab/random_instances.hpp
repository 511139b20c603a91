#pragma once

#include <cstdint>
#include <random>

#include "hatlab/engine.hpp"
#include "hatlab/ordinal_line.hpp"

namespace hatlab {

using Rng = std::mt19937_64;

/// Uniformly random table strategy for the instance.
TableStrategy random_table(const Instance& inst, Rng& rng);

/// Deterministic rule strategy hashing (seed, asking, seen, heard) to a color.
Strategy random_rule_strategy(std::uint64_t seed);

struct RandomInstanceLimits {
  int max_askings = 8;
  int max_players = 5;
  Color max_colors = 2;
  // Caps |S^{-1}[mu(t)]| + |H^{-1}[t]| so tables stay small.
  int max_inputs = 6;
};

/// Custom instance with random sight, random labeling and an acyclic random
/// hearing relation.
Instance random_acyclic_instance(Rng& rng, const RandomInstanceLimits& limits = {});

/// Eventually-base assignment with at most `max_exceptions` exceptions
/// (offsets below `max_offset`), and a front hat when the shape has one.
LazyAssignment random_lazy_assignment(Rng& rng, const LineShape& shape, ColorSpace colors, int max_exceptions = 10,
                                      std::uint64_t max_offset = 40);

}  // namespace hatlab
