#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hatlab/model.hpp"

namespace hatlab {

/// A player on an ordinal-indexed line: the front player, or the ordinal
/// omega*block + offset. The front precedes every ordinal position.
struct OrdinalPosition {
  bool front = false;
  std::uint32_t block = 0;
  std::uint64_t offset = 0;

  static constexpr OrdinalPosition front_player() { return {true, 0, 0}; }
  static constexpr OrdinalPosition ordinal(std::uint32_t k, std::uint64_t n) { return {false, k, n}; }

  friend constexpr std::strong_ordering operator<=>(const OrdinalPosition& a, const OrdinalPosition& b) {
    if (a.front != b.front) return a.front ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.front) return std::strong_ordering::equal;
    if (auto c = a.block <=> b.block; c != 0) return c;
    return a.offset <=> b.offset;
  }
  friend constexpr bool operator==(const OrdinalPosition& a, const OrdinalPosition& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::string to_string() const;
};

/// Players indexed by the ordinals below omega*limit_blocks, plus an optional
/// front player.
struct LineShape {
  std::uint32_t limit_blocks = 1;
  bool front_present = false;
};

/// An eventually-constant sequence on ordinal positions: `base` everywhere
/// except at finitely many listed positions.
struct LazySequence {
  Color base = 0;
  std::map<OrdinalPosition, Color> exceptions;

  Color at(const OrdinalPosition& p) const;
  /// Drops exceptions equal to base.
  void normalize();
};

/// Pointwise sum in Z/mu.
LazySequence add(const LazySequence& x, const LazySequence& y, ColorSpace colors);

/// The homomorphic extension of the finite-support sum to eventually-constant
/// sequences that vanishes on constants: sum of (value - base) mod mu over the
/// exceptions.
Color sigma_prime(const LazySequence& seq, ColorSpace colors);

/// Eventually-base assignment on a line; `front` is the front player's hat.
struct LazyAssignment {
  Color base = 0;
  std::map<OrdinalPosition, Color> exceptions;
  std::optional<Color> front;

  Color at(const OrdinalPosition& p) const;
  LazySequence ordinal_part() const { return {base, exceptions}; }
  void normalize();
  /// Positions whose hat differs from base (front excluded).
  std::vector<OrdinalPosition> deviations() const;
};

enum class LineStrategy { GabayOConnor, ForwardSelector, SumBroadcast };

std::string_view to_string(LineStrategy s);

/// Symbolic play: the guess at every non-evaluated ordinal position is
/// `generic`; `evaluated` lists every position the run computed explicitly.
struct LazyGuessRecord {
  Color generic = 0;
  std::map<OrdinalPosition, Color> evaluated;
  std::optional<Color> front;
  // Every evaluated non-exceptional position guessed `generic`, which is what
  // the run assumed for positions it did not evaluate.
  bool generic_consistent = true;

  Color at(const OrdinalPosition& p) const;
};

struct MismatchCensus {
  std::vector<OrdinalPosition> incorrect;
  // Set when every position outside `incorrect` is guessed correctly.
  bool cofinite_correct = true;

  Cardinal incorrect_count() const {
    return cofinite_correct ? Cardinal(incorrect.size()) : Cardinal::omega();
  }
};

/// Runs one of the infinite-line strategies on an eventually-base assignment.
/// Evaluates the front, every exception, the successor of every exception,
/// the first two positions of every limit block, and one position past the
/// last exception of every block.
LazyGuessRecord run_lazy(LineStrategy kind, const LineShape& shape, ColorSpace colors, const LazyAssignment& a);

MismatchCensus mismatch_census(const LazyAssignment& a, const LazyGuessRecord& g);

/// Positions evaluated by run_lazy, ascending.
std::vector<OrdinalPosition> evaluation_points(const LineShape& shape, const LazyAssignment& a);

}  // namespace hatlab
