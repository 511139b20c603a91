#pragma once

#include <cstdint>
#include <optional>

#include "hatlab/engine.hpp"

namespace hatlab {

struct SearchBudget {
  std::uint64_t max_strategies = 10'000'000;
  // Strategy (or search node) x assignment evaluations.
  std::uint64_t max_assignments = 100'000'000;
};

struct SearchVerdict {
  bool exists_winning = false;
  std::optional<TableStrategy> witness;
  // Max over tables of min over assignments of correct askings, when computed.
  std::optional<std::uint64_t> best_guaranteed;
  std::uint64_t strategies_examined = 0;
  std::uint64_t pruned = 0;
};

/// Lazy stream over every table strategy of a finite instance. Entries are
/// ordered askings-first (in the seed-0 topological order), each table by
/// pattern index; the stream advances like an odometer whose last entry
/// moves fastest, so strategies come out in lexicographic order.
class TableEnumerator {
 public:
  /// Throws BudgetExceeded carrying the exact count if it tops the budget.
  TableEnumerator(const Instance& inst, const SearchBudget& budget = {});

  std::uint64_t total() const noexcept { return total_; }
  const TableStrategy& current() const noexcept { return current_; }
  bool done() const noexcept { return done_; }
  void next();

 private:
  Color colors_;
  std::uint64_t total_ = 1;
  bool done_ = false;
  TableStrategy current_;
  // (asking, pattern) in enumeration order.
  std::vector<std::pair<AskingId, std::uint64_t>> slots_;
};

/// Exact number of table strategies, saturating at UINT64_MAX.
std::uint64_t table_strategy_count(const Instance& inst);

/// Max over all table strategies of the guaranteed (min over assignments)
/// number of correct askings. With `prune`, raises the target k until the
/// pruned search for an at_least:k winner comes back empty; the reported
/// counts are those of that last, exhaustive run. Without `prune`, evaluates
/// every complete table.
SearchVerdict best_guaranteed_correct(const Instance& inst, const SearchBudget& budget = {}, bool prune = true);

/// Whether some table strategy wins the instance's own rule; returns the
/// enumeration-least winner as the witness.
SearchVerdict exists_winning_exhaustive(const Instance& inst, const SearchBudget& budget = {}, bool prune = true);

/// Sum over all assignments of the number of correct guesses (HNSA only).
std::uint64_t correct_count_census(const Instance& inst, const Strategy& strat,
                                   std::uint64_t max_assignments = 100'000'000);

/// Converts any strategy into its table on this instance (by querying every
/// input pattern).
TableStrategy tabulate(const Instance& inst, const Strategy& strat);

}  // namespace hatlab
