#include "hatlab/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace hatlab {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

TableStrategy random_table(const Instance& inst, Rng& rng) {
  std::uniform_int_distribution<Color> color(0, inst.colors().size - 1);
  TableStrategy table;
  for (AskingId t = 0; t < inst.asking_count(); ++t) {
    auto& row = table.entries().emplace_back(TableStrategy::pattern_count(inst, t));
    for (Color& c : row) c = color(rng);
  }
  return table;
}

Strategy random_rule_strategy(std::uint64_t seed) {
  return Strategy("random:" + std::to_string(seed), [seed](const Decision& d) {
    std::uint64_t h = mix(seed ^ mix(static_cast<std::uint64_t>(d.asking)));
    for (Color c : d.seen) h = mix(h ^ (c + 1));
    h = mix(h ^ 0xabcdefULL);
    for (Color c : d.heard) h = mix(h ^ (c + 1));
    return static_cast<Color>(h % d.instance.colors().size);
  });
}

Instance random_acyclic_instance(Rng& rng, const RandomInstanceLimits& limits) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int players = uniform(1, limits.max_players);
  const int askings = uniform(1, limits.max_askings);
  const auto colors = static_cast<Color>(uniform(1, static_cast<int>(limits.max_colors)));

  std::vector<PlayerId> labeling(static_cast<std::size_t>(askings));
  for (auto& m : labeling) m = uniform(0, players - 1);

  // Sight per player, keeping room for hearing inputs.
  const int sight_cap = std::min(players - 1, limits.max_inputs / 2);
  Relation sight;
  for (PlayerId m = 0; m < players; ++m) {
    std::vector<PlayerId> others;
    for (PlayerId q = 0; q < players; ++q) {
      if (q != m) others.push_back(q);
    }
    std::shuffle(others.begin(), others.end(), rng);
    const int k = uniform(0, sight_cap);
    for (int i = 0; i < k; ++i) sight.emplace_back(others[static_cast<std::size_t>(i)], m);
  }

  // Hearing edges only go forward in a hidden random order.
  std::vector<AskingId> hidden(static_cast<std::size_t>(askings));
  std::iota(hidden.begin(), hidden.end(), 0);
  std::shuffle(hidden.begin(), hidden.end(), rng);
  Relation hearing;
  for (int j = 1; j < askings; ++j) {
    const AskingId t = hidden[static_cast<std::size_t>(j)];
    int seen = 0;
    for (auto [from, to] : sight) seen += to == labeling[static_cast<std::size_t>(t)] ? 1 : 0;
    const int cap = std::min(j, limits.max_inputs - seen);
    const int k = uniform(0, std::max(cap, 0));
    std::vector<AskingId> earlier(hidden.begin(), hidden.begin() + j);
    std::shuffle(earlier.begin(), earlier.end(), rng);
    for (int i = 0; i < k; ++i) hearing.emplace_back(earlier[static_cast<std::size_t>(i)], t);
  }
  return Instance::custom(players, ColorSpace{colors}, std::move(sight), askings, std::move(hearing),
                          std::move(labeling), EvaluationRule::at_least_correct(0));
}

LazyAssignment random_lazy_assignment(Rng& rng, const LineShape& shape, ColorSpace colors, int max_exceptions,
                                      std::uint64_t max_offset) {
  std::uniform_int_distribution<Color> color(0, colors.size - 1);
  LazyAssignment a;
  a.base = color(rng);
  const int count = std::uniform_int_distribution<int>(0, max_exceptions)(rng);
  for (int i = 0; i < count; ++i) {
    const auto k = std::uniform_int_distribution<std::uint32_t>(0, shape.limit_blocks - 1)(rng);
    const auto n = std::uniform_int_distribution<std::uint64_t>(0, max_offset - 1)(rng);
    a.exceptions[OrdinalPosition::ordinal(k, n)] = color(rng);
  }
  if (shape.front_present) a.front = color(rng);
  return a;
}

}  // namespace hatlab
