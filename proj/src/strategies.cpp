#include "hatlab/strategies.hpp"

#include <algorithm>
#include <numeric>

namespace hatlab {

BlockPartition consecutive_blocks(int players, int colors, int blocks) {
  if (players <= 0 || colors <= 0) throw HatError(ErrorCode::ZeroSize, "players and colors must be positive");
  if (blocks < 0 || blocks > players / colors) {
    throw HatError(ErrorCode::TooManyBlocks, std::to_string(blocks) + " blocks of size " + std::to_string(colors) +
                                                 " do not fit in " + std::to_string(players) + " players");
  }
  BlockPartition partition;
  PlayerId next = 0;
  for (int b = 0; b < blocks; ++b) {
    auto& block = partition.blocks.emplace_back(static_cast<std::size_t>(colors));
    std::iota(block.begin(), block.end(), next);
    next += colors;
  }
  for (; next < players; ++next) partition.leftover.push_back(next);
  return partition;
}

Strategy mod_sum(std::vector<PlayerId> block, ColorSpace colors) {
  if (block.size() != colors.size) {
    throw HatError(ErrorCode::BlockSizeMismatch, "block of " + std::to_string(block.size()) + " players needs " +
                                                     std::to_string(block.size()) + " colors, got " +
                                                     std::to_string(colors.size));
  }
  {
    auto sorted = block;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw HatError(ErrorCode::BlockSizeMismatch, "block lists a player twice");
    }
  }
  const Color mu = colors.size;
  return Strategy("mod_sum", [block = std::move(block), mu](const Decision& d) -> Color {
    const auto self = std::find(block.begin(), block.end(), d.player);
    if (self == block.end()) return 0;
    std::uint64_t visible = 0;
    for (std::size_t i = 0; i < d.seen.size(); ++i) {
      if (std::find(block.begin(), block.end(), d.seen_players[i]) != block.end()) visible += d.seen[i];
    }
    const auto renamed = static_cast<std::uint64_t>(self - block.begin());
    return static_cast<Color>((renamed + mu - visible % mu) % mu);
  });
}

Strategy block_mod_sum(int players, int colors, int blocks) {
  const BlockPartition partition = consecutive_blocks(players, colors, blocks);
  const auto any = EvaluationRule::at_least_correct(0);
  const Instance target = build_canonical_instance(InstanceKind::Hnsa, players, colors, any);
  const ColorSpace space{static_cast<Color>(colors)};

  std::vector<CombinationPart> parts;
  for (const auto& block : partition.blocks) {
    Instance sub = build_canonical_instance(InstanceKind::Hnsa, colors, colors, any);
    std::vector<PlayerId> local(block.size());
    std::iota(local.begin(), local.end(), 0);
    parts.push_back({std::move(sub), mod_sum(std::move(local), space), block, block});
  }
  if (!partition.leftover.empty()) {
    Instance sub = build_canonical_instance(InstanceKind::Hnsa, static_cast<int>(partition.leftover.size()), colors, any);
    parts.push_back({std::move(sub), constant_strategy(0), partition.leftover, partition.leftover});
  }
  Strategy combined = combine(std::move(parts), target);
  return Strategy("block_mod_sum:n=" + std::to_string(blocks), [combined](const Decision& d) {
    return combined.decide(d);
  });
}

Assignment diagonal_adversary(const Strategy& strat, const Instance& inst) {
  if (inst.kind() != InstanceKind::Hnsf) throw HatError(ErrorCode::NotHNSF, "adversary needs a canonical HNSF instance");
  if (inst.colors().size < 2) throw HatError(ErrorCode::NeedsTwoColors, "cannot avoid the only color");
  if (strat.is_table()) strat.table().check(inst);

  const int n = inst.player_count();
  Assignment a(static_cast<std::size_t>(n), 0);
  for (PlayerId i = n - 1; i >= 0; --i) {
    const auto seen_players = inst.seen_by(i);
    std::vector<Color> seen;
    seen.reserve(seen_players.size());
    for (PlayerId j : seen_players) seen.push_back(a[static_cast<std::size_t>(j)]);
    const Decision d{inst, i, i, seen_players, seen, inst.heard_by(i), {}};
    const Color forced = strat.decide(d);
    if (!inst.colors().contains(forced)) {
      throw HatError(ErrorCode::StrategyRangeError, "strategy guessed color " + std::to_string(forced));
    }
    a[static_cast<std::size_t>(i)] = forced == 0 ? 1 : 0;
  }
  return a;
}

Strategy base_selector(Color base) {
  return Strategy("base_selector:base=" + std::to_string(base), [base](const Decision&) { return base; });
}

Strategy forward_selector(Color base) {
  // The least member of the class keeps the seen hats beyond m and is base at
  // every position up to m, so its value at m is base.
  return Strategy("forward_selector:base=" + std::to_string(base), [base](const Decision& d) {
    for (PlayerId j : d.seen_players) {
      if (j <= d.player) throw HatError(ErrorCode::NotHNSF, "forward selector needs forward sight");
    }
    return base;
  });
}

Strategy sum_broadcast(ColorSpace colors) {
  const Color mu = colors.size;
  return Strategy("sum_broadcast", [mu](const Decision& d) -> Color {
    if (d.instance.kind() != InstanceKind::Hbsf) throw HatError(ErrorCode::NotHBSF, "sum_broadcast needs HBSF");
    std::uint64_t seen_sum = 0;
    for (Color c : d.seen) seen_sum += c;
    if (d.player == 0) return static_cast<Color>(seen_sum % mu);
    // heard[0] is the front's announcement; the rest are the guesses between
    // the front and this position. Own slot counts as 0.
    std::uint64_t rest = seen_sum;
    for (std::size_t i = 1; i < d.heard.size(); ++i) rest += d.heard[i];
    const std::uint64_t front = d.heard.empty() ? 0 : d.heard[0];
    return static_cast<Color>((front + mu - rest % mu) % mu);
  });
}

}  // namespace hatlab
