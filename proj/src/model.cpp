#include "hatlab/model.hpp"

#include <algorithm>
#include <sstream>

namespace hatlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroSize: return "ZeroSize";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::CyclicHearing: return "CyclicHearing";
    case ErrorCode::InvalidAssignment: return "InvalidAssignment";
    case ErrorCode::StrategyRangeError: return "StrategyRangeError";
    case ErrorCode::InvalidStrategy: return "InvalidStrategy";
    case ErrorCode::SweepTooLarge: return "SweepTooLarge";
    case ErrorCode::OverlapError: return "OverlapError";
    case ErrorCode::CoverageError: return "CoverageError";
    case ErrorCode::RelationMismatch: return "RelationMismatch";
    case ErrorCode::BlockSizeMismatch: return "BlockSizeMismatch";
    case ErrorCode::TooManyBlocks: return "TooManyBlocks";
    case ErrorCode::NeedsTwoColors: return "NeedsTwoColors";
    case ErrorCode::NotHNSA: return "NotHNSA";
    case ErrorCode::NotHNSF: return "NotHNSF";
    case ErrorCode::NotHBSF: return "NotHBSF";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

CyclicHearingError::CyclicHearingError(std::vector<int> witness)
    : HatError(ErrorCode::CyclicHearing, "hearing relation has a cycle through askings [" + join_ints(witness) + "]"),
      witness_(std::move(witness)) {}

BudgetExceededError::BudgetExceededError(ErrorCode code, unsigned long long required, unsigned long long budget,
                                         const std::string& what)
    : HatError(code, what + " requires " + std::to_string(required) + " (budget " + std::to_string(budget) + ")"),
      required_(required),
      budget_(budget) {}

std::string Cardinal::to_string() const { return omega_ ? "omega" : std::to_string(value_); }

EvaluationRule EvaluationRule::at_least_correct(Cardinal k) {
  if (k.is_omega()) throw HatError(ErrorCode::ConfigError, "at_least threshold must be finite");
  return {Kind::AtLeastCorrect, k};
}

EvaluationRule EvaluationRule::fewer_incorrect_than(Cardinal k) { return {Kind::FewerIncorrectThan, k}; }

std::string EvaluationRule::to_string() const {
  return std::string(kind == Kind::AtLeastCorrect ? "at_least:" : "fewer_incorrect:") + threshold.to_string();
}

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Custom: return "custom";
    case InstanceKind::Hnsa: return "hnsa";
    case InstanceKind::Hnsf: return "hnsf";
    case InstanceKind::Hbsf: return "hbsf";
  }
  return "custom";
}

Instance Instance::custom(int players, ColorSpace colors, Relation sight, int askings, Relation hearing,
                          std::vector<PlayerId> labeling, EvaluationRule rule) {
  if (players <= 0 || colors.size == 0) throw HatError(ErrorCode::ZeroSize, "players and colors must be positive");
  if (askings < 0) throw HatError(ErrorCode::ZeroSize, "asking count must be nonnegative");
  Instance inst;
  inst.players_ = players;
  inst.askings_ = askings;
  inst.colors_ = colors;
  inst.sight_ = std::move(sight);
  inst.hearing_ = std::move(hearing);
  inst.labeling_ = std::move(labeling);
  inst.rule_ = rule;
  inst.index();
  return inst;
}

void Instance::index() {
  std::sort(sight_.begin(), sight_.end());
  sight_.erase(std::unique(sight_.begin(), sight_.end()), sight_.end());
  std::sort(hearing_.begin(), hearing_.end());
  hearing_.erase(std::unique(hearing_.begin(), hearing_.end()), hearing_.end());

  seen_by_.assign(static_cast<std::size_t>(players_), {});
  for (auto [from, to] : sight_) {
    if (from < 0 || from >= players_ || to < 0 || to >= players_) continue;
    seen_by_[static_cast<std::size_t>(to)].push_back(from);
  }
  heard_by_.assign(static_cast<std::size_t>(askings_), {});
  for (auto [from, to] : hearing_) {
    if (from < 0 || from >= askings_ || to < 0 || to >= askings_) continue;
    heard_by_[static_cast<std::size_t>(to)].push_back(from);
  }
  for (auto& v : seen_by_) std::sort(v.begin(), v.end());
  for (auto& v : heard_by_) std::sort(v.begin(), v.end());
}

Instance Instance::with_rule(EvaluationRule rule) const {
  Instance copy = *this;
  copy.rule_ = rule;
  return copy;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.kind_ == b.kind_ && a.players_ == b.players_ && a.askings_ == b.askings_ && a.colors_ == b.colors_ &&
         a.sight_ == b.sight_ && a.hearing_ == b.hearing_ && a.labeling_ == b.labeling_ && a.rule_ == b.rule_;
}

Instance build_canonical_instance(InstanceKind kind, int players, int colors, EvaluationRule rule) {
  if (players <= 0 || colors <= 0) throw HatError(ErrorCode::ZeroSize, "players and colors must be positive");
  if (kind == InstanceKind::Custom) throw HatError(ErrorCode::ConfigError, "custom is not a canonical kind");

  Relation sight;
  Relation hearing;
  for (int seer = 0; seer < players; ++seer) {
    for (int other = 0; other < players; ++other) {
      if (other == seer) continue;
      if (kind == InstanceKind::Hnsa || other > seer) sight.emplace_back(other, seer);
      if (kind == InstanceKind::Hbsf && other < seer) hearing.emplace_back(other, seer);
    }
  }
  std::vector<PlayerId> labeling(static_cast<std::size_t>(players));
  for (int i = 0; i < players; ++i) labeling[static_cast<std::size_t>(i)] = i;

  Instance inst = Instance::custom(players, ColorSpace{static_cast<Color>(colors)}, std::move(sight), players,
                                   std::move(hearing), std::move(labeling), rule);
  inst.kind_ = kind;
  return inst;
}

std::vector<AskingId> find_hearing_cycle(int askings, const Relation& hearing) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(std::max(askings, 0)));
  for (auto [from, to] : hearing) {
    if (from < 0 || from >= askings || to < 0 || to >= askings) continue;
    out[static_cast<std::size_t>(from)].push_back(to);
  }
  for (auto& v : out) std::sort(v.begin(), v.end());

  // Iterative DFS, colors: 0 white, 1 on stack, 2 done.
  std::vector<int> state(out.size(), 0);
  std::vector<int> parent(out.size(), -1);
  for (int root = 0; root < askings; ++root) {
    if (state[static_cast<std::size_t>(root)] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    state[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& succ = out[static_cast<std::size_t>(node)];
      if (next == succ.size()) {
        state[static_cast<std::size_t>(node)] = 2;
        stack.pop_back();
        continue;
      }
      int child = succ[next++];
      if (state[static_cast<std::size_t>(child)] == 1) {
        std::vector<int> cycle{child};
        for (int v = node; v != child; v = parent[static_cast<std::size_t>(v)]) cycle.push_back(v);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (state[static_cast<std::size_t>(child)] == 0) {
        state[static_cast<std::size_t>(child)] = 1;
        parent[static_cast<std::size_t>(child)] = node;
        stack.emplace_back(child, 0);
      }
    }
  }
  return {};
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  const int m = inst.player_count();
  const int t = inst.asking_count();

  if (inst.colors().size == 0) report.errors.push_back("color space is empty");
  if (m <= 0) report.errors.push_back("player set is empty");

  for (auto [from, to] : inst.sight()) {
    if (from < 0 || from >= m || to < 0 || to >= m) {
      report.errors.push_back("sight pair (" + std::to_string(from) + "," + std::to_string(to) +
                              ") references a player outside 0.." + std::to_string(m - 1));
    } else if (from == to) {
      report.self_sight.push_back(from);
      report.warnings.push_back("player " + std::to_string(from) + " sees their own hat");
    }
  }
  for (auto [from, to] : inst.hearing()) {
    if (from < 0 || from >= t || to < 0 || to >= t) {
      report.errors.push_back("hearing pair (" + std::to_string(from) + "," + std::to_string(to) +
                              ") references an asking outside 0.." + std::to_string(t - 1));
    }
  }

  const auto& labeling = inst.labeling();
  if (static_cast<int>(labeling.size()) != t) {
    report.errors.push_back("labeling has " + std::to_string(labeling.size()) + " entries for " + std::to_string(t) +
                            " askings");
  }
  for (std::size_t i = 0; i < labeling.size(); ++i) {
    if (labeling[i] < 0 || labeling[i] >= m) {
      report.errors.push_back("asking " + std::to_string(i) + " is labeled with unknown player " +
                              std::to_string(labeling[i]));
    }
  }

  report.cycle_witness = find_hearing_cycle(t, inst.hearing());
  if (!report.cycle_witness.empty()) {
    report.errors.push_back("hearing relation has a cycle through askings [" + join_ints(report.cycle_witness) + "]");
  }
  if (inst.rule().kind == EvaluationRule::Kind::AtLeastCorrect && inst.rule().threshold.is_omega()) {
    report.errors.push_back("at_least threshold must be finite");
  }
  return report;
}

void require_valid(const Instance& inst) {
  ValidationReport report = validate_instance(inst);
  if (!report.cycle_witness.empty()) throw CyclicHearingError(report.cycle_witness);
  if (!report.valid()) throw HatError(ErrorCode::InvalidInstance, report.errors.front());
}

void require_assignment(const Instance& inst, std::span<const Color> a) {
  if (static_cast<int>(a.size()) != inst.player_count()) {
    throw HatError(ErrorCode::InvalidAssignment, "assignment has " + std::to_string(a.size()) + " colors for " +
                                                     std::to_string(inst.player_count()) + " players");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!inst.colors().contains(a[i])) {
      throw HatError(ErrorCode::InvalidAssignment,
                     "color " + std::to_string(a[i]) + " at player " + std::to_string(i) + " is out of range");
    }
  }
}

}  // namespace hatlab
