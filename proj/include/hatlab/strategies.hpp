#pragma once

#include <vector>

#include "hatlab/engine.hpp"

namespace hatlab {

struct BlockPartition {
  std::vector<std::vector<PlayerId>> blocks;
  std::vector<PlayerId> leftover;
};

/// Consecutive blocks {0..c-1}, {c..2c-1}, ... of size c; the rest is leftover.
BlockPartition consecutive_blocks(int players, int colors, int blocks);

/// Modular-sum strategy on one block. The block's i-th player (in the given
/// order) guesses i minus the sum of the other block hats it sees, mod |C|.
/// Players outside the block guess 0.
Strategy mod_sum(std::vector<PlayerId> block, ColorSpace colors);

/// The combination of per-block mod_sum strategies over HNSA(m, c), with a
/// constant-0 part for the leftover. Guarantees >= n correct guesses.
Strategy block_mod_sum(int players, int colors, int blocks);

/// Least-color-differing assignment that defeats `strat` on a canonical HNSF
/// instance, built from the last position to the first.
Assignment diagonal_adversary(const Strategy& strat, const Instance& inst);

/// Finite-line selector strategy for the finite-difference equivalence: on a
/// finite player set there is one class, and the selector returns the
/// constant-`base` assignment, so everyone guesses `base`.
Strategy base_selector(Color base);

/// Finite-line forward selector for HNSF: at position m, pick the least
/// member of m's class (agrees with the seen hats beyond m) under the
/// well-ordering "compare at the highest differing position, base least",
/// and guess its value at m.
Strategy forward_selector(Color base);

/// HBSF sum broadcast over Z/|C|. The front player announces the sum of the
/// hats it sees; position b guesses front guess minus (sum of hats beyond b
/// plus heard non-front guesses before b). Only the front can be wrong.
Strategy sum_broadcast(ColorSpace colors);

}  // namespace hatlab
