#include "hatlab/descriptors.hpp"

#include <charconv>

#include "hatlab/strategies.hpp"

namespace hatlab {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw HatError(ErrorCode::ConfigError, what); }

std::uint64_t parse_uint(std::string_view text, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    config_error(std::string("expected a nonnegative integer for ") + what + ", got '" + std::string(text) + "'");
  }
  return value;
}

Cardinal parse_threshold(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "omega") return Cardinal::omega();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) return j.get<std::uint64_t>();
  config_error("rule threshold must be a nonnegative integer or \"omega\"");
}

Relation relation_from_json(const Json& j, const char* what) {
  Relation r;
  if (j.is_null()) return r;
  if (!j.is_array()) config_error(std::string(what) + " must be an array of pairs");
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) config_error(std::string(what) + " entries must be [from, to]");
    r.emplace_back(pair[0].get<int>(), pair[1].get<int>());
  }
  return r;
}

Json relation_to_json(const Relation& r) {
  Json out = Json::array();
  for (auto [from, to] : r) out.push_back({from, to});
  return out;
}

Json assignment_to_json(std::span<const Color> a) {
  Json out = Json::array();
  for (Color c : a) out.push_back(c);
  return out;
}

}  // namespace

EvaluationRule parse_rule(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) config_error("rule must look like at_least:N or fewer_incorrect:N|omega");
  const auto kind = text.substr(0, colon);
  const auto value = text.substr(colon + 1);
  const Cardinal k = value == "omega" ? Cardinal::omega() : Cardinal(parse_uint(value, "rule threshold"));
  if (kind == "at_least") {
    if (k.is_omega()) config_error("at_least threshold must be finite");
    return EvaluationRule::at_least_correct(k);
  }
  if (kind == "fewer_incorrect") return EvaluationRule::fewer_incorrect_than(k);
  config_error("unknown rule kind '" + std::string(kind) + "'");
}

Json rule_to_json(const EvaluationRule& rule) {
  Json j;
  j["kind"] = rule.kind == EvaluationRule::Kind::AtLeastCorrect ? "at_least" : "fewer_incorrect";
  if (rule.threshold.is_omega()) {
    j["threshold"] = "omega";
  } else {
    j["threshold"] = rule.threshold.value();
  }
  return j;
}

EvaluationRule rule_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("threshold")) config_error("rule needs kind and threshold");
  const std::string kind = j.at("kind").get<std::string>();
  const Cardinal k = parse_threshold(j.at("threshold"));
  if (kind == "at_least") {
    if (k.is_omega()) config_error("at_least threshold must be finite");
    return EvaluationRule::at_least_correct(k);
  }
  if (kind == "fewer_incorrect") return EvaluationRule::fewer_incorrect_than(k);
  config_error("unknown rule kind '" + kind + "'");
}

InstanceKind parse_kind(std::string_view text) {
  if (text == "hnsa") return InstanceKind::Hnsa;
  if (text == "hnsf") return InstanceKind::Hnsf;
  if (text == "hbsf") return InstanceKind::Hbsf;
  if (text == "custom") return InstanceKind::Custom;
  config_error("unknown instance kind '" + std::string(text) + "'");
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["kind"] = std::string(to_string(inst.kind()));
  j["players"] = inst.player_count();
  j["colors"] = inst.colors().size;
  if (inst.kind() == InstanceKind::Custom) {
    j["sight"] = relation_to_json(inst.sight());
    j["hearing"] = relation_to_json(inst.hearing());
    j["labeling"] = inst.labeling();
  }
  j["rule"] = rule_to_json(inst.rule());
  return j;
}

Instance instance_from_json(const Json& j) {
  try {
    if (!j.is_object()) config_error("instance descriptor must be an object");
    const InstanceKind kind = parse_kind(j.value("kind", std::string("custom")));
    const int players = j.at("players").get<int>();
    const int colors = j.at("colors").get<int>();
    const EvaluationRule rule = j.contains("rule") ? rule_from_json(j.at("rule")) : EvaluationRule::at_least_correct(1);
    if (kind != InstanceKind::Custom) return build_canonical_instance(kind, players, colors, rule);
    if (colors <= 0) throw HatError(ErrorCode::ZeroSize, "colors must be positive");

    std::vector<PlayerId> labeling;
    if (j.contains("labeling")) {
      labeling = j.at("labeling").get<std::vector<PlayerId>>();
    } else {
      for (int i = 0; i < players; ++i) labeling.push_back(i);
    }
    const int askings = static_cast<int>(labeling.size());
    return Instance::custom(players, ColorSpace{static_cast<Color>(colors)},
                            relation_from_json(j.value("sight", Json()), "sight"), askings,
                            relation_from_json(j.value("hearing", Json()), "hearing"), std::move(labeling), rule);
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("malformed instance descriptor: ") + e.what());
  }
}

Json parse_strategy_spec(std::string_view text) {
  Json j;
  const auto colon = text.find(':');
  j["name"] = std::string(text.substr(0, colon));
  j["params"] = Json::object();
  if (colon == std::string_view::npos) return j;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      j["params"]["value"] = parse_uint(item, "strategy parameter");
    } else {
      j["params"][std::string(item.substr(0, eq))] = parse_uint(item.substr(eq + 1), "strategy parameter");
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return j;
}

Strategy strategy_from_json(const Json& descriptor, const Instance& inst) {
  try {
    const std::string name = descriptor.at("name").get<std::string>();
    const Json params = descriptor.value("params", Json::object());
    auto param = [&](const char* key, std::optional<std::uint64_t> fallback = std::nullopt) -> std::uint64_t {
      if (params.contains(key)) return params.at(key).get<std::uint64_t>();
      if (params.contains("value")) return params.at("value").get<std::uint64_t>();
      if (fallback) return *fallback;
      config_error("strategy '" + name + "' needs parameter '" + key + "'");
    };

    if (name == "constant") return constant_strategy(static_cast<Color>(param("color", 0)));
    if (name == "base_selector") return base_selector(static_cast<Color>(param("base", 0)));
    if (name == "forward_selector") return forward_selector(static_cast<Color>(param("base", 0)));
    if (name == "sum_broadcast") return sum_broadcast(inst.colors());
    if (name == "mod_sum") {
      std::vector<PlayerId> block;
      if (params.contains("block")) {
        block = params.at("block").get<std::vector<PlayerId>>();
      } else {
        for (PlayerId m = 0; m < inst.player_count(); ++m) block.push_back(m);
      }
      return mod_sum(std::move(block), inst.colors());
    }
    if (name == "block_mod_sum") {
      if (inst.kind() != InstanceKind::Hnsa) throw HatError(ErrorCode::NotHNSA, "block_mod_sum plays HNSA instances");
      const auto colors = static_cast<int>(inst.colors().size);
      return block_mod_sum(inst.player_count(), colors,
                           static_cast<int>(param("n", static_cast<std::uint64_t>(inst.player_count() / colors))));
    }
    if (name == "table") {
      TableStrategy table = table_from_json(params.at("entries"));
      table.check(inst);
      return Strategy(std::move(table));
    }
    config_error("unknown strategy '" + name + "'");
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("malformed strategy descriptor: ") + e.what());
  }
}

Json table_to_json(const TableStrategy& table) {
  Json out = Json::array();
  for (const auto& row : table.entries()) out.push_back(row);
  return out;
}

TableStrategy table_from_json(const Json& j) {
  return TableStrategy(j.get<std::vector<std::vector<Color>>>());
}

Assignment parse_assignment(std::string_view text) {
  Assignment a;
  while (!text.empty()) {
    const auto comma = text.find(',');
    a.push_back(static_cast<Color>(parse_uint(text.substr(0, comma), "assignment color")));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return a;
}

Json labels_to_json(const Instance& inst, const std::vector<PlayerId>& players) {
  Json out = Json::array();
  for (PlayerId m : players) out.push_back(inst.player_label(m));
  return out;
}

Json game_result_to_json(const Instance& inst, std::span<const Color> a, const GameResult& r) {
  Json j;
  j["assignment"] = assignment_to_json(a);
  j["guesses"] = assignment_to_json(r.guesses);
  j["correct"] = labels_to_json(inst, r.correct_set);
  j["incorrect"] = labels_to_json(inst, r.incorrect_set);
  j["correct_count"] = r.correct_count;
  j["incorrect_count"] = r.incorrect_count;
  j["verdict"] = r.verdict ? 1 : 0;
  return j;
}

Json sweep_report_to_json(const SweepReport& r) {
  Json j;
  j["assignments"] = r.assignments;
  j["min_correct"] = r.min_correct;
  j["max_incorrect"] = r.max_incorrect;
  j["winning"] = r.winning;
  j["counterexample"] = r.counterexample ? assignment_to_json(*r.counterexample) : Json();
  return j;
}

Json search_verdict_to_json(const Instance& inst, const SearchVerdict& v) {
  Json j;
  j["instance"] = instance_to_json(inst);
  j["best_guaranteed"] = v.best_guaranteed ? Json(*v.best_guaranteed) : Json();
  j["exists_winning"] = v.exists_winning;
  j["witness_table"] = v.witness ? table_to_json(*v.witness) : Json();
  j["strategies_examined"] = v.strategies_examined;
  j["pruned"] = v.pruned;
  return j;
}

LazyDescriptor lazy_from_json(const Json& j) {
  try {
    LazyDescriptor d;
    d.assignment.base = j.at("base").get<Color>();
    d.shape.limit_blocks = j.value("blocks", 1u);
    if (j.contains("exceptions")) {
      for (const auto& e : j.at("exceptions")) {
        const auto p = OrdinalPosition::ordinal(e.value("k", 0u), e.at("n").get<std::uint64_t>());
        d.assignment.exceptions[p] = e.at("color").get<Color>();
      }
    }
    if (j.contains("front") && !j.at("front").is_null()) {
      d.assignment.front = j.at("front").get<Color>();
      d.shape.front_present = true;
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("malformed lazy assignment descriptor: ") + e.what());
  }
}

Json lazy_to_json(const LazyDescriptor& d) {
  Json j;
  j["base"] = d.assignment.base;
  Json exceptions = Json::array();
  for (const auto& [p, c] : d.assignment.exceptions) exceptions.push_back({{"k", p.block}, {"n", p.offset}, {"color", c}});
  j["exceptions"] = exceptions;
  j["front"] = d.assignment.front ? Json(*d.assignment.front) : Json();
  j["blocks"] = d.shape.limit_blocks;
  return j;
}

Json lazy_record_to_json(const LazyGuessRecord& g, const MismatchCensus& census) {
  Json j;
  j["generic_guess"] = g.generic;
  j["front_guess"] = g.front ? Json(*g.front) : Json();
  Json evaluated = Json::array();
  for (const auto& [p, c] : g.evaluated) evaluated.push_back({{"position", p.to_string()}, {"guess", c}});
  j["evaluated"] = evaluated;
  j["generic_consistent"] = g.generic_consistent;
  Json incorrect = Json::array();
  for (const auto& p : census.incorrect) incorrect.push_back(p.to_string());
  j["incorrect"] = incorrect;
  j["cofinite_correct"] = census.cofinite_correct;
  j["incorrect_count"] = census.incorrect_count().to_string();
  return j;
}

}  // namespace hatlab
