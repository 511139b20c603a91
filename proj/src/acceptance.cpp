#include "hatlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "hatlab/oracle.hpp"
#include "hatlab/ordinal_line.hpp"
#include "hatlab/random_instances.hpp"
#include "hatlab/strategies.hpp"

namespace hatlab {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (passed) detail.str("");
    passed = false;
    detail << why << "; ";
  }
};

using Body = std::function<void(Outcome&, Rng&)>;

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_seconds;  // 0: no limit
  Body body;
};

Instance hnsa(int m, int c, EvaluationRule rule = EvaluationRule::at_least_correct(0)) {
  return build_canonical_instance(InstanceKind::Hnsa, m, c, rule);
}

void block_mod_sum_exact(Outcome& out, Rng&) {
  int cases = 0;
  for (int m = 1; m <= 6; ++m) {
    for (int c : {2, 3}) {
      const int n = m / c;
      const Instance inst = hnsa(m, c, EvaluationRule::at_least_correct(static_cast<std::uint64_t>(n)));
      const SweepReport r = is_winning(inst, block_mod_sum(m, c, n));
      ++cases;
      if (r.min_correct != static_cast<std::uint64_t>(n) || !r.winning) {
        out.fail("m=" + std::to_string(m) + " c=" + std::to_string(c) + " min_correct=" +
                 std::to_string(r.min_correct) + " expected " + std::to_string(n));
      }
    }
  }
  if (out.passed) out.detail << cases << " (m,c) cases, min correct = floor(m/c) exactly";
}

void hnsa_exhaustive(Outcome& out, Rng&) {
  for (auto [m, c] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
    const SearchVerdict v = best_guaranteed_correct(hnsa(m, c));
    const auto expected = static_cast<std::uint64_t>(m / c);
    if (v.best_guaranteed != expected) {
      out.fail("(" + std::to_string(m) + "," + std::to_string(c) + ") best_guaranteed=" +
               std::to_string(v.best_guaranteed.value_or(999)));
    } else {
      out.detail << "(" << m << "," << c << ")=" << expected << " [" << v.strategies_examined << " examined, "
                 << v.pruned << " pruned] ";
    }
  }
}

void hnsa_census(Outcome& out, Rng&) {
  const Instance small = hnsa(2, 2);
  const std::uint64_t expected_small = 2 * 4 / 2;
  int tables = 0;
  for (TableEnumerator stream(small); !stream.done(); stream.next()) {
    ++tables;
    const std::uint64_t census = correct_count_census(small, Strategy(stream.current()));
    if (census != expected_small) out.fail("table " + std::to_string(tables) + " census " + std::to_string(census));
  }
  if (tables != 16) out.fail("enumerated " + std::to_string(tables) + " tables, expected 16");

  const Instance three = hnsa(3, 3);
  const std::uint64_t census = correct_count_census(three, block_mod_sum(3, 3, 1));
  if (census != 3 * 27 / 3) out.fail("mod-sum (3,3) census " + std::to_string(census));
  if (out.passed) out.detail << "16 tables at (2,2) -> 4 each; mod-sum at (3,3) -> 27";
}

void hnsf_no_winner(Outcome& out, Rng&) {
  for (int m = 1; m <= 3; ++m) {
    const Instance inst = build_canonical_instance(InstanceKind::Hnsf, m, 2, EvaluationRule::at_least_correct(1));
    const SearchVerdict v = exists_winning_exhaustive(inst);
    if (v.exists_winning) out.fail("HNSF m=" + std::to_string(m) + " has a winning table");
    if (v.strategies_examined + v.pruned != table_strategy_count(inst)) {
      out.fail("HNSF m=" + std::to_string(m) + " search did not cover every table");
    }
  }
  const Instance line = build_canonical_instance(InstanceKind::Hnsf, 5, 3, EvaluationRule::at_least_correct(1));
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Strategy strat = random_rule_strategy(s);
    const Assignment a = diagonal_adversary(strat, line);
    const GameResult r = run_game(line, strat, a);
    if (r.correct_count != 0) out.fail("adversary failed against random strategy " + std::to_string(s));
  }
  if (out.passed) out.detail << "no winner for m<=3, c=2; adversary zeroes 100 random strategies at (5,3)";
}

void hbsf_sum_broadcast(Outcome& out, Rng&) {
  std::uint64_t plays = 0;
  for (int m = 2; m <= 8; ++m) {
    for (int c = 2; c <= 4; ++c) {
      const Instance inst = build_canonical_instance(InstanceKind::Hbsf, m, c, EvaluationRule::fewer_incorrect_than(2));
      const Strategy strat = sum_broadcast(ColorSpace{static_cast<Color>(c)});
      const SweepReport r = is_winning(inst, strat);
      if (r.max_incorrect > 1 || !r.winning) {
        out.fail("m=" + std::to_string(m) + " c=" + std::to_string(c) + " max_incorrect " +
                 std::to_string(r.max_incorrect));
      }
      for_each_play(inst, strat, {}, [&](const Assignment&, const GameResult& g) {
        ++plays;
        for (PlayerId p : g.incorrect_set) {
          if (p != 0) out.fail("non-front error at m=" + std::to_string(m) + " c=" + std::to_string(c));
        }
      });
    }
  }
  if (out.passed) out.detail << plays << " plays, every error at the front";
}

void hbsf_exhaustive(Outcome& out, Rng&) {
  const Instance inst = build_canonical_instance(InstanceKind::Hbsf, 2, 2, EvaluationRule::fewer_incorrect_than(1));
  const SearchVerdict v = exists_winning_exhaustive(inst);
  const std::uint64_t total = table_strategy_count(inst);
  if (total != 16) out.fail("expected 16 tables, counted " + std::to_string(total));
  if (v.exists_winning) out.fail("found a table with no errors");
  if (v.strategies_examined + v.pruned != total) out.fail("search did not cover every table");
  if (out.passed) out.detail << "no winner among " << total << " tables";
}

void lazy_lines(Outcome& out, Rng& rng) {
  int runs = 0;
  for (int i = 0; i < 100; ++i) {
    const auto blocks = std::uniform_int_distribution<std::uint32_t>(1, 3)(rng);
    const ColorSpace colors{std::uniform_int_distribution<Color>(2, 5)(rng)};

    const LineShape plain{blocks, false};
    const LazyAssignment a = random_lazy_assignment(rng, plain, colors);
    const auto deviations = a.deviations();
    const std::set<OrdinalPosition> deviation_set(deviations.begin(), deviations.end());

    const MismatchCensus goc = mismatch_census(a, run_lazy(LineStrategy::GabayOConnor, plain, colors, a));
    if (!goc.cofinite_correct || goc.incorrect != deviations) out.fail("GabayOConnor census differs from deviations");

    const MismatchCensus fs = mismatch_census(a, run_lazy(LineStrategy::ForwardSelector, plain, colors, a));
    if (!fs.cofinite_correct) out.fail("ForwardSelector not cofinitely correct");
    for (const auto& p : fs.incorrect) {
      if (!deviation_set.contains(p)) out.fail("ForwardSelector error outside deviations at " + p.to_string());
    }

    const LineShape fronted{blocks, true};
    const LazyAssignment b = random_lazy_assignment(rng, fronted, colors);
    const LazyGuessRecord g = run_lazy(LineStrategy::SumBroadcast, fronted, colors, b);
    const MismatchCensus sb = mismatch_census(b, g);
    if (!sb.cofinite_correct) out.fail("SumBroadcast not cofinitely correct");
    for (const auto& p : sb.incorrect) {
      if (!p.front) out.fail("SumBroadcast error at " + p.to_string());
    }
    for (const auto& [p, guess] : g.evaluated) {
      if (guess != b.at(p)) out.fail("SumBroadcast wrong at checked position " + p.to_string());
    }
    runs += 3;
  }
  if (out.passed) out.detail << runs << " lazy runs on omega*K lines, K<=3";
}

void unique_play(Outcome& out, Rng& rng) {
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance inst = random_acyclic_instance(rng);
    const Strategy strat(random_table(inst, rng));
    const auto first = topological_extension(inst, 1);
    std::vector<AskingId> second = first;
    for (std::uint64_t seed = 2; seed < 64 && second == first; ++seed) second = topological_extension(inst, seed);

    GameRunner left(inst, strat, first);
    GameRunner right(inst, strat, second);
    const std::uint64_t total = assignment_count(inst, 1'000'000);
    for (std::uint64_t k = 0; k < total; ++k) {
      const Assignment a = assignment_at(inst, k);
      if (left.run(a).guesses != right.run(a).guesses) {
        out.fail("instance " + std::to_string(i) + " plays differ across extensions");
        break;
      }
    }
    compared += first != second ? 1 : 0;
  }
  if (out.passed) out.detail << "100 instances, " << compared << " with two distinct extensions";
}

void sigma_extension(Outcome& out, Rng& rng) {
  for (Color mu : {2u, 3u, 5u}) {
    const ColorSpace colors{mu};
    const LineShape shape{3, false};
    for (int i = 0; i < 1000; ++i) {
      const LazyAssignment x = random_lazy_assignment(rng, shape, colors);
      const LazyAssignment y = random_lazy_assignment(rng, shape, colors);
      const LazySequence sum = add(x.ordinal_part(), y.ordinal_part(), colors);
      const Color lhs = sigma_prime(sum, colors);
      const Color rhs = (sigma_prime(x.ordinal_part(), colors) + sigma_prime(y.ordinal_part(), colors)) % mu;
      if (lhs != rhs) out.fail("homomorphism fails for mu=" + std::to_string(mu));

      LazySequence finite = random_lazy_assignment(rng, shape, colors).ordinal_part();
      finite.base = 0;
      std::uint64_t plain = 0;
      for (const auto& [p, c] : finite.exceptions) plain += c;
      if (sigma_prime(finite, colors) != plain % mu) out.fail("extension fails for mu=" + std::to_string(mu));
    }
  }
  if (out.passed) out.detail << "1000 pairs and 1000 finite-support sequences for each mu in {2,3,5}";
}

void combination(Outcome& out, Rng& rng) {
  std::uint64_t plays = 0;
  for (int i = 0; i < 50; ++i) {
    const int m = std::uniform_int_distribution<int>(2, 6)(rng);
    const int c = std::uniform_int_distribution<int>(2, 3)(rng);
    std::vector<PlayerId> players(static_cast<std::size_t>(m));
    std::iota(players.begin(), players.end(), 0);
    std::shuffle(players.begin(), players.end(), rng);
    const int split = std::uniform_int_distribution<int>(1, m - 1)(rng);
    std::vector<std::vector<PlayerId>> blocks{{players.begin(), players.begin() + split},
                                              {players.begin() + split, players.end()}};
    for (auto& b : blocks) std::sort(b.begin(), b.end());

    const Instance target = hnsa(m, c);
    std::vector<CombinationPart> parts;
    for (const auto& b : blocks) {
      Instance sub = hnsa(static_cast<int>(b.size()), c);
      Strategy strat(random_table(sub, rng));
      parts.push_back({std::move(sub), std::move(strat), b, b});
    }
    const std::vector<CombinationPart> copies = parts;
    const Strategy combined = combine(std::move(parts), target);

    for_each_play(target, combined, {}, [&](const Assignment& a, const GameResult& whole) {
      ++plays;
      for (const auto& part : copies) {
        Assignment local;
        for (PlayerId q : part.players) local.push_back(a[static_cast<std::size_t>(q)]);
        const GameResult own = run_game(part.instance, part.strategy, local);
        for (std::size_t k = 0; k < part.askings.size(); ++k) {
          if (own.guesses[k] != whole.guesses[static_cast<std::size_t>(part.askings[k])]) {
            out.fail("split " + std::to_string(i) + " disagrees with its part");
            return;
          }
        }
      }
    });
  }
  if (out.passed) out.detail << "50 splits, " << plays << " plays in blockwise agreement";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"hnsa-block-mod-sum", "block mod-sum guarantees exactly floor(m/c) correct", 1.0, block_mod_sum_exact},
      {"hnsa-exhaustive", "no HNSA table beats floor(m/c)", 30.0, hnsa_exhaustive},
      {"hnsa-census", "HNSA correct-guess census is |M||A|/|C|", 0.0, hnsa_census},
      {"hnsf-no-winner", "finite HNSF has no winner; diagonal adversary", 10.0, hnsf_no_winner},
      {"hbsf-sum-broadcast", "sum broadcast errs at most once, only at the front", 10.0, hbsf_sum_broadcast},
      {"hbsf-exhaustive", "no HBSF table makes zero errors", 0.0, hbsf_exhaustive},
      {"lazy-lines", "selectors and sum broadcast on omega*K lines", 0.0, lazy_lines},
      {"unique-play", "plays agree across topological extensions", 0.0, unique_play},
      {"sigma-extension", "sigma' is a homomorphism extending the finite sum", 0.0, sigma_extension},
      {"combination", "combined play agrees blockwise with its parts", 0.0, combination},
  };
  return all;
}

}  // namespace

std::vector<std::string> acceptance_ids() {
  std::vector<std::string> ids;
  for (const auto& c : criteria()) ids.push_back(c.id);
  return ids;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!opts.only.empty() && c.id.rfind(opts.only, 0) != 0) continue;
    Outcome out;
    // Each criterion gets its own stream so filtering does not shift samples.
    Rng rng(opts.seed ^ fnv1a(c.id));
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out, rng);
    } catch (const std::exception& e) {
      out.fail(std::string("threw: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_seconds > 0 && seconds >= c.time_limit_seconds) {
      out.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(c.time_limit_seconds) + " s");
    }
    results.push_back({c.id, c.title, out.passed, out.detail.str(), seconds});
  }
  return results;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.id.size());
  for (const auto& r : results) {
    os << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << r.id << "  ("
       << std::fixed << std::setprecision(3) << r.seconds << " s)  " << r.title << ": " << r.detail << "\n";
  }
  return os.str();
}

}  // namespace hatlab
