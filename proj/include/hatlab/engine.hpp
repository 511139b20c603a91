#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hatlab/model.hpp"

namespace hatlab {

/// Everything a player may use at asking t: the hats of S^{-1}[mu(t)] and the
/// guesses of H^{-1}[t], each aligned with the instance's ascending lists.
struct Decision {
  const Instance& instance;
  AskingId asking;
  PlayerId player;
  std::span<const PlayerId> seen_players;
  std::span<const Color> seen;
  std::span<const AskingId> heard_askings;
  std::span<const Color> heard;
};

using DecisionRule = std::function<Color(const Decision&)>;

/// Explicit strategy: one table per asking, indexed by the input pattern
/// (seen colors then heard colors, read as a base-|C| number, first digit most
/// significant).
class TableStrategy {
 public:
  TableStrategy() = default;
  explicit TableStrategy(std::vector<std::vector<Color>> entries) : entries_(std::move(entries)) {}

  /// Number of input patterns at asking t: |C|^(|S^{-1}[mu(t)]| + |H^{-1}[t]|).
  static std::uint64_t pattern_count(const Instance& inst, AskingId t);
  static std::uint64_t pattern_index(Color colors, std::span<const Color> seen, std::span<const Color> heard);

  /// Checks shape and color range against the instance; throws InvalidStrategy.
  void check(const Instance& inst) const;

  const std::vector<std::vector<Color>>& entries() const noexcept { return entries_; }
  std::vector<std::vector<Color>>& entries() noexcept { return entries_; }

  Color decide(const Decision& d) const;

 private:
  std::vector<std::vector<Color>> entries_;
};

class Strategy {
 public:
  Strategy(TableStrategy table) : impl_(std::move(table)), name_("table") {}  // NOLINT
  Strategy(std::string name, DecisionRule rule) : impl_(std::move(rule)), name_(std::move(name)) {}

  bool is_table() const noexcept { return std::holds_alternative<TableStrategy>(impl_); }
  const TableStrategy& table() const { return std::get<TableStrategy>(impl_); }
  const std::string& name() const noexcept { return name_; }

  Color decide(const Decision& d) const;

 private:
  std::variant<TableStrategy, DecisionRule> impl_;
  std::string name_;
};

Strategy constant_strategy(Color c);

// guesses: T -> C.
using GuessRecord = std::vector<Color>;

struct GameResult {
  GuessRecord guesses;
  std::vector<PlayerId> correct_set;
  std::vector<PlayerId> incorrect_set;
  // Over askings; equal to the set sizes when the labeling is a bijection.
  std::uint64_t correct_count = 0;
  std::uint64_t incorrect_count = 0;
  bool verdict = false;
};

/// Linear extension of the hearing relation. Seed 0 always yields the
/// smallest-index-first (lexicographically least) extension; other seeds
/// break ties pseudo-randomly.
std::vector<AskingId> topological_extension(const Instance& inst, std::uint64_t seed = 0);

bool evaluate(const EvaluationRule& rule, Cardinal correct_count, Cardinal incorrect_count);

/// Plays a fixed instance repeatedly with reusable buffers. Not thread-safe;
/// use one per thread.
class GameRunner {
 public:
  GameRunner(const Instance& inst, const Strategy& strat, std::vector<AskingId> order);
  GameRunner(const Instance& inst, const Strategy& strat);

  /// Fills guesses (size |T|) with the unique play g_{a,sigma}.
  void play(std::span<const Color> a, std::span<Color> guesses);
  GameResult run(std::span<const Color> a);

  const Instance& instance() const noexcept { return inst_; }

 private:
  const Instance& inst_;
  const Strategy& strat_;
  std::vector<AskingId> order_;
  std::vector<Color> seen_buf_;
  std::vector<Color> heard_buf_;
};

GameResult run_game(const Instance& inst, const Strategy& strat, std::span<const Color> a);
GameResult run_game(const Instance& inst, const Strategy& strat, std::span<const Color> a,
                    std::vector<AskingId> order);

// Builds the result record from a finished play.
GameResult score_play(const Instance& inst, std::span<const Color> a, GuessRecord guesses);

struct SweepOptions {
  std::uint64_t max_assignments = 100'000'000;
  unsigned jobs = 1;
};

struct SweepReport {
  std::uint64_t assignments = 0;
  std::uint64_t min_correct = 0;
  std::uint64_t max_incorrect = 0;
  bool winning = true;
  // Lexicographically least assignment with verdict 0.
  std::optional<Assignment> counterexample;
};

/// |C|^|M|, or throws SweepTooLarge when above the budget.
std::uint64_t assignment_count(const Instance& inst, std::uint64_t budget);

/// Assignment with lexicographic rank `index` (player 0 most significant).
Assignment assignment_at(const Instance& inst, std::uint64_t index);

/// Sweeps every assignment. Parallel runs are deterministic.
SweepReport is_winning(const Instance& inst, const Strategy& strat, const SweepOptions& opts = {});

/// Visits every assignment in lexicographic order with its result.
void for_each_play(const Instance& inst, const Strategy& strat, const SweepOptions& opts,
                   const std::function<void(const Assignment&, const GameResult&)>& visit);

/// One component of a combination. players[i] / askings[i] give the target
/// index of the sub-instance's player / asking i.
struct CombinationPart {
  Instance instance;
  Strategy strategy;
  std::vector<PlayerId> players;
  std::vector<AskingId> askings;
};

/// The combination of the parts' strategies over `target`: at asking t the
/// owning part's strategy decides from its own restricted view.
Strategy combine(std::vector<CombinationPart> parts, const Instance& target);

}  // namespace hatlab
