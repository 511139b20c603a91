#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hatlab/engine.hpp"
#include "hatlab/oracle.hpp"
#include "hatlab/ordinal_line.hpp"

namespace hatlab {

using Json = nlohmann::ordered_json;

// "at_least:2", "fewer_incorrect:1", "fewer_incorrect:omega".
EvaluationRule parse_rule(std::string_view text);
Json rule_to_json(const EvaluationRule& rule);
EvaluationRule rule_from_json(const Json& j);

/// {"kind", "players", "colors", "sight", "hearing", "labeling", "rule"};
/// canonical kinds carry only kind/players/colors/rule.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

InstanceKind parse_kind(std::string_view text);

/// {"name": ..., "params": {...}} from "name" or "name:k=v,k=v" or "name:v".
Json parse_strategy_spec(std::string_view text);
Strategy strategy_from_json(const Json& descriptor, const Instance& inst);

Json table_to_json(const TableStrategy& table);
TableStrategy table_from_json(const Json& j);

Assignment parse_assignment(std::string_view text);

Json labels_to_json(const Instance& inst, const std::vector<PlayerId>& players);
Json game_result_to_json(const Instance& inst, std::span<const Color> a, const GameResult& r);
Json sweep_report_to_json(const SweepReport& r);
Json search_verdict_to_json(const Instance& inst, const SearchVerdict& v);

/// {"base", "exceptions": [{"k", "n", "color"}], "front": int|null, "blocks"}.
struct LazyDescriptor {
  LazyAssignment assignment;
  LineShape shape;
};
LazyDescriptor lazy_from_json(const Json& j);
Json lazy_to_json(const LazyDescriptor& d);
Json lazy_record_to_json(const LazyGuessRecord& g, const MismatchCensus& census);

}  // namespace hatlab
