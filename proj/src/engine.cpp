#include "hatlab/engine.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace hatlab {

std::uint64_t TableStrategy::pattern_count(const Instance& inst, AskingId t) {
  const std::size_t digits = inst.seen_by(inst.player_of(t)).size() + inst.heard_by(t).size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < digits; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / inst.colors().size) {
      throw HatError(ErrorCode::InvalidStrategy, "table pattern count overflows");
    }
    count *= inst.colors().size;
  }
  return count;
}

std::uint64_t TableStrategy::pattern_index(Color colors, std::span<const Color> seen, std::span<const Color> heard) {
  std::uint64_t index = 0;
  for (Color c : seen) index = index * colors + c;
  for (Color c : heard) index = index * colors + c;
  return index;
}

void TableStrategy::check(const Instance& inst) const {
  if (static_cast<int>(entries_.size()) != inst.asking_count()) {
    throw HatError(ErrorCode::InvalidStrategy, "table has " + std::to_string(entries_.size()) + " askings, instance has " +
                                                   std::to_string(inst.asking_count()));
  }
  for (AskingId t = 0; t < inst.asking_count(); ++t) {
    const auto& row = entries_[static_cast<std::size_t>(t)];
    if (row.size() != pattern_count(inst, t)) {
      throw HatError(ErrorCode::InvalidStrategy, "table for asking " + std::to_string(t) + " has " +
                                                     std::to_string(row.size()) + " entries, expected " +
                                                     std::to_string(pattern_count(inst, t)));
    }
    for (Color c : row) {
      if (!inst.colors().contains(c)) throw HatError(ErrorCode::InvalidStrategy, "table entry out of color range");
    }
  }
}

Color TableStrategy::decide(const Decision& d) const {
  const auto& row = entries_.at(static_cast<std::size_t>(d.asking));
  return row.at(pattern_index(d.instance.colors().size, d.seen, d.heard));
}

Color Strategy::decide(const Decision& d) const {
  if (const auto* table = std::get_if<TableStrategy>(&impl_)) return table->decide(d);
  return std::get<DecisionRule>(impl_)(d);
}

Strategy constant_strategy(Color c) {
  return Strategy("constant:" + std::to_string(c), [c](const Decision&) { return c; });
}

std::vector<AskingId> topological_extension(const Instance& inst, std::uint64_t seed) {
  const int n = inst.asking_count();
  if (auto cycle = find_hearing_cycle(n, inst.hearing()); !cycle.empty()) throw CyclicHearingError(std::move(cycle));

  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<AskingId>> out(static_cast<std::size_t>(n));
  for (AskingId t = 0; t < n; ++t) {
    for (AskingId from : inst.heard_by(t)) {
      out[static_cast<std::size_t>(from)].push_back(t);
      ++indegree[static_cast<std::size_t>(t)];
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<AskingId> ready;
  for (AskingId t = 0; t < n; ++t) {
    if (indegree[static_cast<std::size_t>(t)] == 0) ready.push_back(t);
  }
  std::vector<AskingId> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    std::size_t pick = 0;
    if (seed == 0) {
      pick = static_cast<std::size_t>(std::min_element(ready.begin(), ready.end()) - ready.begin());
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng);
    }
    AskingId t = ready[pick];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
    order.push_back(t);
    for (AskingId next : out[static_cast<std::size_t>(t)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.push_back(next);
    }
  }
  return order;
}

bool evaluate(const EvaluationRule& rule, Cardinal correct_count, Cardinal incorrect_count) {
  switch (rule.kind) {
    case EvaluationRule::Kind::AtLeastCorrect: return correct_count >= rule.threshold;
    case EvaluationRule::Kind::FewerIncorrectThan: return incorrect_count < rule.threshold;
  }
  return false;
}

namespace {

void check_order(const Instance& inst, const std::vector<AskingId>& order) {
  const auto n = static_cast<std::size_t>(inst.asking_count());
  if (order.size() != n) throw HatError(ErrorCode::InvalidInstance, "order does not enumerate every asking");
  std::vector<int> position(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const AskingId t = order[i];
    if (t < 0 || static_cast<std::size_t>(t) >= n || position[static_cast<std::size_t>(t)] != -1) {
      throw HatError(ErrorCode::InvalidInstance, "order is not a permutation of the askings");
    }
    position[static_cast<std::size_t>(t)] = static_cast<int>(i);
  }
  for (auto [from, to] : inst.hearing()) {
    if (position[static_cast<std::size_t>(from)] > position[static_cast<std::size_t>(to)]) {
      throw HatError(ErrorCode::InvalidInstance, "order does not extend the hearing relation");
    }
  }
}

}  // namespace

GameRunner::GameRunner(const Instance& inst, const Strategy& strat, std::vector<AskingId> order)
    : inst_(inst), strat_(strat), order_(std::move(order)) {
  require_valid(inst_);
  check_order(inst_, order_);
  if (strat_.is_table()) strat_.table().check(inst_);
}

GameRunner::GameRunner(const Instance& inst, const Strategy& strat)
    : GameRunner(inst, strat, topological_extension(inst, 0)) {}

void GameRunner::play(std::span<const Color> a, std::span<Color> guesses) {
  const Color colors = inst_.colors().size;
  for (AskingId t : order_) {
    const PlayerId m = inst_.player_of(t);
    const auto seen_players = inst_.seen_by(m);
    const auto heard_askings = inst_.heard_by(t);
    seen_buf_.resize(seen_players.size());
    heard_buf_.resize(heard_askings.size());
    for (std::size_t i = 0; i < seen_players.size(); ++i) seen_buf_[i] = a[static_cast<std::size_t>(seen_players[i])];
    for (std::size_t i = 0; i < heard_askings.size(); ++i) {
      heard_buf_[i] = guesses[static_cast<std::size_t>(heard_askings[i])];
    }
    const Decision d{inst_, t, m, seen_players, seen_buf_, heard_askings, heard_buf_};
    const Color g = strat_.decide(d);
    if (g >= colors) {
      throw HatError(ErrorCode::StrategyRangeError, "strategy '" + strat_.name() + "' guessed color " +
                                                        std::to_string(g) + " at asking " + std::to_string(t));
    }
    guesses[static_cast<std::size_t>(t)] = g;
  }
}

GameResult GameRunner::run(std::span<const Color> a) {
  require_assignment(inst_, a);
  GuessRecord guesses(static_cast<std::size_t>(inst_.asking_count()), 0);
  play(a, guesses);
  return score_play(inst_, a, std::move(guesses));
}

GameResult score_play(const Instance& inst, std::span<const Color> a, GuessRecord guesses) {
  GameResult result;
  std::vector<int> status(static_cast<std::size_t>(inst.player_count()), 0);  // 0 unasked, 1 right, 2 wrong
  for (AskingId t = 0; t < inst.asking_count(); ++t) {
    const PlayerId m = inst.player_of(t);
    const bool right = guesses[static_cast<std::size_t>(t)] == a[static_cast<std::size_t>(m)];
    if (right) {
      ++result.correct_count;
      if (status[static_cast<std::size_t>(m)] == 0) status[static_cast<std::size_t>(m)] = 1;
    } else {
      ++result.incorrect_count;
      status[static_cast<std::size_t>(m)] = 2;
    }
  }
  for (PlayerId m = 0; m < inst.player_count(); ++m) {
    if (status[static_cast<std::size_t>(m)] == 1) result.correct_set.push_back(m);
    if (status[static_cast<std::size_t>(m)] == 2) result.incorrect_set.push_back(m);
  }
  result.verdict = evaluate(inst.rule(), result.correct_count, result.incorrect_count);
  result.guesses = std::move(guesses);
  return result;
}

GameResult run_game(const Instance& inst, const Strategy& strat, std::span<const Color> a) {
  GameRunner runner(inst, strat);
  return runner.run(a);
}

GameResult run_game(const Instance& inst, const Strategy& strat, std::span<const Color> a,
                    std::vector<AskingId> order) {
  GameRunner runner(inst, strat, std::move(order));
  return runner.run(a);
}

std::uint64_t assignment_count(const Instance& inst, std::uint64_t budget) {
  std::uint64_t count = 1;
  for (int i = 0; i < inst.player_count(); ++i) {
    if (count > budget / inst.colors().size) {
      // Report a saturated lower bound when the exact count would overflow.
      unsigned long long required = count;
      for (int j = i; j < inst.player_count(); ++j) {
        if (required > std::numeric_limits<unsigned long long>::max() / inst.colors().size) {
          required = std::numeric_limits<unsigned long long>::max();
          break;
        }
        required *= inst.colors().size;
      }
      throw BudgetExceededError(ErrorCode::SweepTooLarge, required, budget, "assignment sweep");
    }
    count *= inst.colors().size;
  }
  return count;
}

Assignment assignment_at(const Instance& inst, std::uint64_t index) {
  Assignment a(static_cast<std::size_t>(inst.player_count()), 0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    *it = static_cast<Color>(index % inst.colors().size);
    index /= inst.colors().size;
  }
  return a;
}

namespace {

// Odometer step in lexicographic order; false after the last assignment.
bool advance(Assignment& a, Color colors) {
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    if (++*it < colors) return true;
    *it = 0;
  }
  return false;
}

struct Shard {
  std::uint64_t min_correct = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_incorrect = 0;
  std::optional<std::uint64_t> first_failure;
};

Shard sweep_range(const Instance& inst, const Strategy& strat, const std::vector<AskingId>& order,
                  std::uint64_t begin, std::uint64_t end) {
  Shard shard;
  if (begin >= end) return shard;
  GameRunner runner(inst, strat, order);
  Assignment a = assignment_at(inst, begin);
  GuessRecord guesses(static_cast<std::size_t>(inst.asking_count()), 0);
  for (std::uint64_t index = begin; index < end; ++index) {
    runner.play(a, guesses);
    std::uint64_t correct = 0;
    for (AskingId t = 0; t < inst.asking_count(); ++t) {
      if (guesses[static_cast<std::size_t>(t)] == a[static_cast<std::size_t>(inst.player_of(t))]) ++correct;
    }
    const std::uint64_t incorrect = static_cast<std::uint64_t>(inst.asking_count()) - correct;
    shard.min_correct = std::min(shard.min_correct, correct);
    shard.max_incorrect = std::max(shard.max_incorrect, incorrect);
    if (!shard.first_failure && !evaluate(inst.rule(), correct, incorrect)) shard.first_failure = index;
    advance(a, inst.colors().size);
  }
  return shard;
}

}  // namespace

SweepReport is_winning(const Instance& inst, const Strategy& strat, const SweepOptions& opts) {
  require_valid(inst);
  const std::uint64_t total = assignment_count(inst, opts.max_assignments);
  const auto order = topological_extension(inst, 0);
  if (strat.is_table()) strat.table().check(inst);

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 256))));
  std::vector<Shard> shards(jobs);
  if (jobs == 1) {
    shards[0] = sweep_range(inst, strat, order, 0, total);
  } else {
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::uint64_t begin = total * j / jobs;
      const std::uint64_t end = total * (j + 1) / jobs;
      workers.emplace_back([&, j, begin, end] {
        try {
          shards[j] = sweep_range(inst, strat, order, begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  SweepReport report;
  report.assignments = total;
  report.min_correct = std::numeric_limits<std::uint64_t>::max();
  std::optional<std::uint64_t> first_failure;
  for (const auto& s : shards) {
    report.min_correct = std::min(report.min_correct, s.min_correct);
    report.max_incorrect = std::max(report.max_incorrect, s.max_incorrect);
    if (s.first_failure && (!first_failure || *s.first_failure < *first_failure)) first_failure = s.first_failure;
  }
  report.winning = !first_failure.has_value();
  if (first_failure) report.counterexample = assignment_at(inst, *first_failure);
  return report;
}

void for_each_play(const Instance& inst, const Strategy& strat, const SweepOptions& opts,
                   const std::function<void(const Assignment&, const GameResult&)>& visit) {
  require_valid(inst);
  const std::uint64_t total = assignment_count(inst, opts.max_assignments);
  GameRunner runner(inst, strat);
  Assignment a(static_cast<std::size_t>(inst.player_count()), 0);
  for (std::uint64_t index = 0; index < total; ++index) {
    visit(a, runner.run(a));
    advance(a, inst.colors().size);
  }
}

namespace {

struct PartRouting {
  std::size_t part = 0;
  AskingId local_asking = 0;
  // Positions, within the target's seen / heard spans, of the part's own
  // seen players / heard askings.
  std::vector<std::size_t> seen_positions;
  std::vector<std::size_t> heard_positions;
};

std::size_t position_in(std::span<const int> sorted, int value) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

Strategy combine(std::vector<CombinationPart> parts, const Instance& target) {
  require_valid(target);
  if (parts.empty()) throw HatError(ErrorCode::CoverageError, "no parts to combine");

  const auto n = static_cast<std::size_t>(target.asking_count());
  std::vector<PartRouting> routing(n);
  std::vector<bool> owned(n, false);

  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = parts[p];
    require_valid(part.instance);
    if (static_cast<int>(part.players.size()) != part.instance.player_count() ||
        static_cast<int>(part.askings.size()) != part.instance.asking_count()) {
      throw HatError(ErrorCode::RelationMismatch, "part " + std::to_string(p) + " embedding has the wrong size");
    }
    if (part.instance.colors().size > target.colors().size) {
      throw HatError(ErrorCode::RelationMismatch, "part " + std::to_string(p) + " uses colors outside the target");
    }
    for (PlayerId q : part.players) {
      if (q < 0 || q >= target.player_count()) {
        throw HatError(ErrorCode::RelationMismatch, "part " + std::to_string(p) + " maps to unknown player");
      }
    }
    for (AskingId local = 0; local < part.instance.asking_count(); ++local) {
      const AskingId t = part.askings[static_cast<std::size_t>(local)];
      if (t < 0 || static_cast<std::size_t>(t) >= n) {
        throw HatError(ErrorCode::CoverageError, "part " + std::to_string(p) + " maps to unknown asking");
      }
      if (owned[static_cast<std::size_t>(t)]) {
        throw HatError(ErrorCode::OverlapError, "asking " + std::to_string(t) + " belongs to more than one part");
      }
      owned[static_cast<std::size_t>(t)] = true;

      const PlayerId local_player = part.instance.player_of(local);
      if (part.players[static_cast<std::size_t>(local_player)] != target.player_of(t)) {
        throw HatError(ErrorCode::RelationMismatch, "labeling of asking " + std::to_string(t) + " disagrees");
      }

      PartRouting& r = routing[static_cast<std::size_t>(t)];
      r.part = p;
      r.local_asking = local;
      const auto target_seen = target.seen_by(target.player_of(t));
      for (PlayerId q : part.instance.seen_by(local_player)) {
        const std::size_t pos = position_in(target_seen, part.players[static_cast<std::size_t>(q)]);
        if (pos == target_seen.size()) {
          throw HatError(ErrorCode::RelationMismatch, "target sight does not contain part " + std::to_string(p));
        }
        r.seen_positions.push_back(pos);
      }
      const auto target_heard = target.heard_by(t);
      for (AskingId s : part.instance.heard_by(local)) {
        const std::size_t pos = position_in(target_heard, part.askings[static_cast<std::size_t>(s)]);
        if (pos == target_heard.size()) {
          throw HatError(ErrorCode::RelationMismatch, "target hearing does not contain part " + std::to_string(p));
        }
        r.heard_positions.push_back(pos);
      }
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (!owned[t]) throw HatError(ErrorCode::CoverageError, "asking " + std::to_string(t) + " is owned by no part");
  }

  auto shared_parts = std::make_shared<const std::vector<CombinationPart>>(std::move(parts));
  auto shared_routing = std::make_shared<const std::vector<PartRouting>>(std::move(routing));
  std::string name = "combine(";
  for (std::size_t p = 0; p < shared_parts->size(); ++p) name += (p ? "," : "") + (*shared_parts)[p].strategy.name();
  name += ")";

  return Strategy(std::move(name), [shared_parts, shared_routing](const Decision& d) {
    const PartRouting& r = (*shared_routing)[static_cast<std::size_t>(d.asking)];
    const CombinationPart& part = (*shared_parts)[r.part];
    std::vector<Color> seen(r.seen_positions.size());
    std::vector<Color> heard(r.heard_positions.size());
    for (std::size_t i = 0; i < seen.size(); ++i) seen[i] = d.seen[r.seen_positions[i]];
    for (std::size_t i = 0; i < heard.size(); ++i) heard[i] = d.heard[r.heard_positions[i]];
    const PlayerId local_player = part.instance.player_of(r.local_asking);
    const Decision local{part.instance,
                         r.local_asking,
                         local_player,
                         part.instance.seen_by(local_player),
                         seen,
                         part.instance.heard_by(r.local_asking),
                         heard};
    return part.strategy.decide(local);
  });
}

}  // namespace hatlab
