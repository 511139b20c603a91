#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hatlab/error.hpp"

namespace hatlab {

using Color = std::uint32_t;
using PlayerId = int;
using AskingId = int;

// Total map M -> C, indexed by player.
using Assignment = std::vector<Color>;

/// Colors are 0..size-1.
struct ColorSpace {
  Color size = 1;

  constexpr bool contains(Color c) const noexcept { return c < size; }
  friend constexpr bool operator==(ColorSpace, ColorSpace) = default;
};

/// A finite cardinal or the first infinite one (written "omega").
class Cardinal {
 public:
  constexpr Cardinal() = default;
  constexpr Cardinal(std::uint64_t finite) : value_(finite) {}  // NOLINT: implicit by intent
  static constexpr Cardinal omega() {
    Cardinal c;
    c.omega_ = true;
    return c;
  }

  constexpr bool is_omega() const noexcept { return omega_; }
  constexpr bool is_finite() const noexcept { return !omega_; }
  // Meaningless for omega.
  constexpr std::uint64_t value() const noexcept { return value_; }

  friend constexpr bool operator==(const Cardinal&, const Cardinal&) = default;
  friend constexpr std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b) {
    if (a.omega_ != b.omega_) return a.omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.omega_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  std::uint64_t value_ = 0;
  bool omega_ = false;
};

/// e_{>=k}: at least k correct guesses; e^{<k}: fewer than k incorrect guesses.
struct EvaluationRule {
  enum class Kind { AtLeastCorrect, FewerIncorrectThan };

  Kind kind = Kind::AtLeastCorrect;
  Cardinal threshold = 1;

  static EvaluationRule at_least_correct(Cardinal k);
  static EvaluationRule fewer_incorrect_than(Cardinal k);

  std::string to_string() const;
  friend bool operator==(const EvaluationRule&, const EvaluationRule&) = default;
};

enum class InstanceKind { Custom, Hnsa, Hnsf, Hbsf };

std::string_view to_string(InstanceKind kind);

// (from, to) pairs. For sight, (m', m) means m sees m'. For hearing, (t', t)
// means the guess at t' is heard before the guess at t.
using Relation = std::vector<std::pair<int, int>>;

/// One hat-guessing problem over finite players M, asking times T and colors C.
/// The assignment space A is always the full function space M -> C.
///
/// Construction never throws on malformed relations; `validate_instance`
/// reports them, and the engine refuses to play invalid instances. Adjacency
/// lists silently drop out-of-range pairs.
class Instance {
 public:
  static Instance custom(int players, ColorSpace colors, Relation sight, int askings, Relation hearing,
                         std::vector<PlayerId> labeling, EvaluationRule rule);

  InstanceKind kind() const noexcept { return kind_; }
  int player_count() const noexcept { return players_; }
  int asking_count() const noexcept { return askings_; }
  ColorSpace colors() const noexcept { return colors_; }
  const EvaluationRule& rule() const noexcept { return rule_; }
  const Relation& sight() const noexcept { return sight_; }
  const Relation& hearing() const noexcept { return hearing_; }
  const std::vector<PlayerId>& labeling() const noexcept { return labeling_; }

  PlayerId player_of(AskingId t) const { return labeling_.at(static_cast<std::size_t>(t)); }

  /// S^{-1}[m]: players whose hats m sees, ascending.
  std::span<const PlayerId> seen_by(PlayerId m) const { return seen_by_.at(static_cast<std::size_t>(m)); }
  /// H^{-1}[t]: askings whose guesses t hears, ascending.
  std::span<const AskingId> heard_by(AskingId t) const { return heard_by_.at(static_cast<std::size_t>(t)); }

  /// Display label: HBSF positions read -1 (front), 0, 1, ...; others read their index.
  int player_label(PlayerId m) const noexcept { return kind_ == InstanceKind::Hbsf ? m - 1 : m; }

  Instance with_rule(EvaluationRule rule) const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  friend Instance build_canonical_instance(InstanceKind, int, int, EvaluationRule);
  void index();

  InstanceKind kind_ = InstanceKind::Custom;
  int players_ = 0;
  int askings_ = 0;
  ColorSpace colors_;
  Relation sight_;
  Relation hearing_;
  std::vector<PlayerId> labeling_;
  EvaluationRule rule_;
  std::vector<std::vector<PlayerId>> seen_by_;
  std::vector<std::vector<AskingId>> heard_by_;
};

/// HNSA: everyone sees everyone else, hears nothing. HNSF: position i sees all
/// j > i. HBSF: as HNSF, and also hears every earlier guess; position 0 is the
/// front player (label -1). In all three T = M and the labeling is the identity.
Instance build_canonical_instance(InstanceKind kind, int players, int colors, EvaluationRule rule);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  // One hearing cycle (asking indices), empty if H is acyclic.
  std::vector<AskingId> cycle_witness;
  std::vector<PlayerId> self_sight;

  bool valid() const noexcept { return errors.empty(); }
};

ValidationReport validate_instance(const Instance& inst);

// Throws HatError(InvalidInstance) or CyclicHearingError.
void require_valid(const Instance& inst);

// Throws HatError(InvalidAssignment) if the size or any color is off.
void require_assignment(const Instance& inst, std::span<const Color> a);

/// Finds one directed cycle in the hearing graph; empty if acyclic.
std::vector<AskingId> find_hearing_cycle(int askings, const Relation& hearing);

}  // namespace hatlab
