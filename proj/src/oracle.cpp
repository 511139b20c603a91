#include "hatlab/oracle.hpp"

#include <algorithm>
#include <limits>

namespace hatlab {

namespace {

constexpr Color kUnset = std::numeric_limits<Color>::max();
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp && r != kSaturated; ++i) r = saturating_mul(r, base);
  return r;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return b > kSaturated - a ? kSaturated : a + b; }

std::vector<std::pair<AskingId, std::uint64_t>> enumeration_slots(const Instance& inst,
                                                                  const std::vector<AskingId>& order) {
  std::vector<std::pair<AskingId, std::uint64_t>> slots;
  for (AskingId t : order) {
    const std::uint64_t patterns = TableStrategy::pattern_count(inst, t);
    for (std::uint64_t p = 0; p < patterns; ++p) slots.emplace_back(t, p);
  }
  return slots;
}

// Search over partially filled tables. Each assignment is replayed with
// unknown guesses propagating through hearing; bounds come from counting
// decided-correct, decided-incorrect and undecided askings.
class PartialSearch {
 public:
  enum class Mode { BestGuaranteed, ExistsWinning };

  PartialSearch(const Instance& inst, const SearchBudget& budget, Mode mode)
      : inst_(inst), budget_(budget), mode_(mode), colors_(inst.colors().size) {
    require_valid(inst);
    order_ = topological_extension(inst, 0);
    assignments_ = assignment_count(inst, budget.max_assignments);
    for (AskingId t = 0; t < inst.asking_count(); ++t) {
      const std::uint64_t patterns = TableStrategy::pattern_count(inst, t);
      if (patterns > budget.max_strategies) {
        throw BudgetExceededError(ErrorCode::BudgetExceeded, patterns, budget.max_strategies,
                                  "table for asking " + std::to_string(t));
      }
      table_.entries().emplace_back(patterns, kUnset);
    }
    slots_ = enumeration_slots(inst, order_);

    // Per (assignment, asking): the seen part of the pattern index.
    const auto n = static_cast<std::size_t>(inst.asking_count());
    seen_prefix_.resize(assignments_ * n);
    heard_scale_.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      heard_scale_[t] = saturating_pow(colors_, inst.heard_by(static_cast<AskingId>(t)).size());
    }
    actual_.resize(assignments_ * n);
    for (std::uint64_t i = 0; i < assignments_; ++i) {
      const Assignment a = assignment_at(inst, i);
      for (std::size_t t = 0; t < n; ++t) {
        std::uint64_t idx = 0;
        for (PlayerId q : inst.seen_by(inst.player_of(static_cast<AskingId>(t)))) {
          idx = idx * colors_ + a[static_cast<std::size_t>(q)];
        }
        seen_prefix_[i * n + t] = idx;
        actual_[i * n + t] = a[static_cast<std::size_t>(inst.player_of(static_cast<AskingId>(t)))];
      }
    }
    guesses_.resize(n);
    right_.resize(assignments_);
    if (inst.hearing().empty()) {
      needed_ = required_correct(inst.rule(), static_cast<std::uint64_t>(n));
      entry_offset_.assign(n + 1, 0);
      for (std::size_t t = 0; t < n; ++t) entry_offset_[t + 1] = entry_offset_[t] + table_.entries()[t].size();
      help_.resize(entry_offset_[n] * colors_);
    }
    // Subtree sizes: strategies completing a prefix of length s.
    suffix_count_.assign(slots_.size() + 1, 1);
    for (std::size_t s = slots_.size(); s-- > 0;) suffix_count_[s] = saturating_mul(suffix_count_[s + 1], colors_);
  }

  SearchVerdict run_pruned() {
    descend(0);
    return finish();
  }

  SearchVerdict run_unpruned() {
    TableEnumerator stream(inst_, budget_);
    for (; !stream.done(); stream.next()) {
      table_ = stream.current();
      ++verdict_.strategies_examined;
      charge_node();
      const Bounds b = bounds(false);
      if (mode_ == Mode::BestGuaranteed) {
        if (!incumbent_ || b.min_lower > *incumbent_) {
          incumbent_ = b.min_lower;
          verdict_.witness = table_;
        }
      } else if (b.all_win) {
        verdict_.witness = table_;
        break;
      }
    }
    return finish();
  }

 private:
  struct Bounds {
    std::uint64_t min_lower = kSaturated;  // min over assignments of decided-correct
    bool feasible = true;                  // every assignment can still satisfy the rule
    bool all_win = true;                   // every assignment satisfies the rule whatever the rest is
  };

  void charge_node() {
    if (++nodes_ > budget_.max_strategies) {
      throw BudgetExceededError(ErrorCode::BudgetExceeded, nodes_, budget_.max_strategies, "strategy search nodes");
    }
  }

  void charge_evaluation() {
    if (++evaluations_ > budget_.max_assignments) {
      throw BudgetExceededError(ErrorCode::BudgetExceeded, evaluations_, budget_.max_assignments,
                                "strategy x assignment evaluations");
    }
  }

  // Replays assignment i; returns (decided correct, decided incorrect).
  std::pair<std::uint64_t, std::uint64_t> replay(std::uint64_t i) {
    const auto n = static_cast<std::size_t>(inst_.asking_count());
    std::uint64_t right = 0;
    std::uint64_t wrong = 0;
    for (AskingId t : order_) {
      const auto ts = static_cast<std::size_t>(t);
      std::uint64_t heard_index = 0;
      bool known = true;
      for (AskingId s : inst_.heard_by(t)) {
        const Color g = guesses_[static_cast<std::size_t>(s)];
        if (g == kUnset) {
          known = false;
          break;
        }
        heard_index = heard_index * colors_ + g;
      }
      Color g = kUnset;
      if (known) g = table_.entries()[ts][seen_prefix_[i * n + ts] * heard_scale_[ts] + heard_index];
      guesses_[ts] = g;
      if (g == kUnset) continue;
      if (g == actual_[i * n + ts]) {
        ++right;
      } else {
        ++wrong;
      }
    }
    return {right, wrong};
  }

  bool satisfiable(std::uint64_t right, std::uint64_t wrong, std::uint64_t undecided) const {
    const EvaluationRule& rule = inst_.rule();
    if (rule.kind == EvaluationRule::Kind::AtLeastCorrect) return evaluate(rule, right + undecided, 0);
    return evaluate(rule, 0, wrong);
  }

  bool guaranteed(std::uint64_t right, std::uint64_t wrong, std::uint64_t undecided) const {
    const EvaluationRule& rule = inst_.rule();
    if (rule.kind == EvaluationRule::Kind::AtLeastCorrect) return evaluate(rule, right, 0);
    return evaluate(rule, 0, wrong + undecided);
  }

  // Correct askings every assignment needs once the table is complete.
  static std::uint64_t required_correct(const EvaluationRule& rule, std::uint64_t askings) {
    const Cardinal k = rule.threshold;
    if (rule.kind == EvaluationRule::Kind::AtLeastCorrect) return k.value();
    if (k.is_omega() || k.value() > askings) return 0;
    return askings - k.value() + 1;
  }

  // Without hearing, the undecided entry (t, p) is correct for at most one
  // own-hat color among the assignments showing pattern p at t. Fails when the
  // missing correct guesses outnumber what the undecided entries can supply.
  bool counting_feasible() {
    const auto n = static_cast<std::size_t>(inst_.asking_count());
    std::fill(help_.begin(), help_.end(), 0);
    std::uint64_t deficit = 0;
    for (std::uint64_t i = 0; i < assignments_; ++i) {
      if (right_[i] >= needed_) continue;
      deficit += needed_ - right_[i];
      for (std::size_t t = 0; t < n; ++t) {
        const std::uint64_t p = seen_prefix_[i * n + t];
        if (table_.entries()[t][p] != kUnset) continue;
        ++help_[(entry_offset_[t] + p) * colors_ + actual_[i * n + t]];
      }
    }
    std::uint64_t supply = 0;
    for (std::size_t e = 0; e < help_.size(); e += colors_) {
      supply += *std::max_element(help_.begin() + static_cast<std::ptrdiff_t>(e),
                                  help_.begin() + static_cast<std::ptrdiff_t>(e + colors_));
      if (supply >= deficit) return true;
    }
    return supply >= deficit;
  }

  // With `early_exit`, stops at the first assignment that can no longer meet
  // the rule (checking the last culprit first).
  Bounds bounds(bool early_exit) {
    Bounds b;
    const auto total = static_cast<std::uint64_t>(inst_.asking_count());
    auto visit = [&](std::uint64_t i) {
      charge_evaluation();
      const auto [right, wrong] = replay(i);
      const std::uint64_t undecided = total - right - wrong;
      b.min_lower = std::min(b.min_lower, right);
      right_[i] = right;
      if (!satisfiable(right, wrong, undecided)) b.feasible = false;
      if (!guaranteed(right, wrong, undecided)) b.all_win = false;
      return early_exit && !b.feasible;
    };
    if (early_exit && culprit_ < assignments_ && visit(culprit_)) return b;
    for (std::uint64_t i = 0; i < assignments_; ++i) {
      if (early_exit && i == culprit_) continue;
      if (visit(i)) {
        culprit_ = i;
        return b;
      }
    }
    if (early_exit && !b.all_win && !help_.empty()) b.feasible = counting_feasible();
    return b;
  }

  // Exists mode only. Returns true once a winning completion is found.
  bool descend(std::size_t slot) {
    charge_node();
    const Bounds b = bounds(true);
    if (!b.feasible) {
      verdict_.pruned = saturating_add(verdict_.pruned, suffix_count_[slot]);
      return false;
    }
    if (b.all_win) {
      // Least completion of this prefix: every remaining entry 0.
      TableStrategy witness = table_;
      for (auto& row : witness.entries()) {
        for (Color& c : row) {
          if (c == kUnset) c = 0;
        }
      }
      verdict_.witness = std::move(witness);
      ++verdict_.strategies_examined;
      return true;
    }
    if (slot == slots_.size()) {
      ++verdict_.strategies_examined;
      return false;
    }
    auto [t, pattern] = slots_[slot];
    Color& entry = table_.entries()[static_cast<std::size_t>(t)][pattern];
    for (Color c = 0; c < colors_; ++c) {
      entry = c;
      if (descend(slot + 1)) return true;
    }
    entry = kUnset;
    return false;
  }

  SearchVerdict finish() {
    if (mode_ == Mode::BestGuaranteed) {
      verdict_.best_guaranteed = incumbent_;
      verdict_.exists_winning = verdict_.witness.has_value() && evaluate(inst_.rule(), *incumbent_,
                                                                         inst_.asking_count() - *incumbent_);
      // The max-min witness wins iff any table wins only for at_least rules.
      if (inst_.rule().kind != EvaluationRule::Kind::AtLeastCorrect) verdict_.exists_winning = false;
    } else {
      verdict_.exists_winning = verdict_.witness.has_value();
    }
    if (!verdict_.exists_winning && mode_ == Mode::ExistsWinning) verdict_.witness.reset();
    return verdict_;
  }

  const Instance& inst_;
  SearchBudget budget_;
  Mode mode_;
  Color colors_;
  std::vector<AskingId> order_;
  std::uint64_t assignments_ = 0;
  TableStrategy table_;
  std::vector<std::pair<AskingId, std::uint64_t>> slots_;
  std::vector<std::uint64_t> seen_prefix_;
  std::vector<std::uint64_t> heard_scale_;
  std::vector<Color> actual_;
  std::vector<Color> guesses_;
  std::vector<std::uint64_t> suffix_count_;
  std::optional<std::uint64_t> incumbent_;
  std::vector<std::uint64_t> right_;
  // Counting bound state, used only without hearing.
  std::uint64_t needed_ = 0;
  std::vector<std::size_t> entry_offset_;
  std::vector<std::uint64_t> help_;
  std::uint64_t culprit_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t evaluations_ = 0;
  SearchVerdict verdict_;
};

}  // namespace

std::uint64_t table_strategy_count(const Instance& inst) {
  std::uint64_t total = 1;
  for (AskingId t = 0; t < inst.asking_count(); ++t) {
    const std::size_t digits = inst.seen_by(inst.player_of(t)).size() + inst.heard_by(t).size();
    const std::uint64_t patterns = saturating_pow(inst.colors().size, digits);
    if (patterns == kSaturated) return kSaturated;
    total = saturating_mul(total, saturating_pow(inst.colors().size, patterns));
  }
  return total;
}

TableEnumerator::TableEnumerator(const Instance& inst, const SearchBudget& budget) : colors_(inst.colors().size) {
  require_valid(inst);
  total_ = table_strategy_count(inst);
  if (total_ > budget.max_strategies) {
    throw BudgetExceededError(ErrorCode::BudgetExceeded, total_, budget.max_strategies, "table strategy enumeration");
  }
  for (AskingId t = 0; t < inst.asking_count(); ++t) {
    current_.entries().emplace_back(TableStrategy::pattern_count(inst, t), 0);
  }
  slots_ = enumeration_slots(inst, topological_extension(inst, 0));
}

void TableEnumerator::next() {
  if (done_) return;
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
    Color& c = current_.entries()[static_cast<std::size_t>(it->first)][it->second];
    if (++c < colors_) return;
    c = 0;
  }
  done_ = true;
}

SearchVerdict best_guaranteed_correct(const Instance& inst, const SearchBudget& budget, bool prune) {
  if (!prune) return PartialSearch(inst, budget, PartialSearch::Mode::BestGuaranteed).run_unpruned();

  // Raise the target until no table reaches it; the last exhausted run
  // supplies the search counts.
  const auto askings = static_cast<std::uint64_t>(inst.asking_count());
  TableStrategy best;
  for (AskingId t = 0; t < inst.asking_count(); ++t) best.entries().emplace_back(TableStrategy::pattern_count(inst, t), 0);
  SearchVerdict last;
  std::uint64_t reached = 0;
  while (reached < askings) {
    const Instance target = inst.with_rule(EvaluationRule::at_least_correct(reached + 1));
    last = PartialSearch(target, budget, PartialSearch::Mode::ExistsWinning).run_pruned();
    if (!last.exists_winning) break;
    best = *last.witness;
    ++reached;
  }
  SearchVerdict verdict;
  verdict.best_guaranteed = reached;
  verdict.witness = std::move(best);
  verdict.strategies_examined = last.strategies_examined;
  verdict.pruned = last.pruned;
  verdict.exists_winning =
      inst.rule().kind == EvaluationRule::Kind::AtLeastCorrect && evaluate(inst.rule(), reached, askings - reached);
  return verdict;
}

SearchVerdict exists_winning_exhaustive(const Instance& inst, const SearchBudget& budget, bool prune) {
  PartialSearch search(inst, budget, PartialSearch::Mode::ExistsWinning);
  return prune ? search.run_pruned() : search.run_unpruned();
}

std::uint64_t correct_count_census(const Instance& inst, const Strategy& strat, std::uint64_t max_assignments) {
  if (inst.kind() != InstanceKind::Hnsa) throw HatError(ErrorCode::NotHNSA, "census is defined for HNSA instances");
  std::uint64_t census = 0;
  SweepOptions opts;
  opts.max_assignments = max_assignments;
  for_each_play(inst, strat, opts, [&](const Assignment&, const GameResult& r) { census += r.correct_count; });
  return census;
}

TableStrategy tabulate(const Instance& inst, const Strategy& strat) {
  require_valid(inst);
  const Color colors = inst.colors().size;
  TableStrategy table;
  for (AskingId t = 0; t < inst.asking_count(); ++t) {
    const PlayerId m = inst.player_of(t);
    const auto seen_players = inst.seen_by(m);
    const auto heard_askings = inst.heard_by(t);
    const std::uint64_t patterns = TableStrategy::pattern_count(inst, t);
    auto& row = table.entries().emplace_back(patterns, 0);
    std::vector<Color> digits(seen_players.size() + heard_askings.size(), 0);
    for (std::uint64_t p = 0; p < patterns; ++p) {
      std::uint64_t rest = p;
      for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        *it = static_cast<Color>(rest % colors);
        rest /= colors;
      }
      const std::span<const Color> all(digits);
      const Decision d{inst, t, m, seen_players, all.first(seen_players.size()), heard_askings,
                       all.subspan(seen_players.size())};
      const Color g = strat.decide(d);
      if (!inst.colors().contains(g)) throw HatError(ErrorCode::StrategyRangeError, "strategy left the color range");
      row[p] = g;
    }
  }
  return table;
}

}  // namespace hatlab
