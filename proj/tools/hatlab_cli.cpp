// hatlab: run, sweep and search hat-guessing games from the command line.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hatlab/acceptance.hpp"
#include "hatlab/descriptors.hpp"
#include "hatlab/oracle.hpp"
#include "hatlab/ordinal_line.hpp"
#include "hatlab/strategies.hpp"

using namespace hatlab;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct Budgets {
  std::uint64_t sweep = 100'000'000;
  SearchBudget search;
};

Budgets budgets_from_env() {
  Budgets b;
  const char* env = std::getenv("HATLAB_BUDGET");
  if (env == nullptr || *env == '\0') return b;
  const std::string text(env);
  auto number = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      throw HatError(ErrorCode::ConfigError, "HATLAB_BUDGET: bad number '" + s + "'");
    }
  };
  if (text.find('=') == std::string::npos) {
    const auto v = number(text);
    b.sweep = b.search.max_strategies = b.search.max_assignments = v;
    return b;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    const auto v = number(eq == std::string::npos ? "" : item.substr(eq + 1));
    if (key == "sweep") {
      b.sweep = v;
    } else if (key == "strategies") {
      b.search.max_strategies = v;
    } else if (key == "evaluations") {
      b.search.max_assignments = v;
    } else {
      throw HatError(ErrorCode::ConfigError, "HATLAB_BUDGET: unknown key '" + key + "'");
    }
  }
  return b;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw HatError(ErrorCode::ConfigError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw HatError(ErrorCode::ConfigError, path + ": " + e.what());
  }
}

// Options shared by run / sweep / search.
struct GameOptions {
  std::string instance_file;
  std::string kind = "hnsa";
  int players = 0;
  int colors = 0;
  std::string rule = "at_least:1";
  std::string strategy;
  std::string strategy_file;
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  void attach(CLI::App& app, bool needs_strategy) {
    app.add_option("--instance", instance_file, "JSON instance descriptor file");
    app.add_option("--kind", kind, "hnsa | hnsf | hbsf")->check(CLI::IsMember({"hnsa", "hnsf", "hbsf"}));
    app.add_option("-m,--players", players, "Number of players (HBSF counts the front player)");
    app.add_option("-c,--colors", colors, "Number of colors");
    app.add_option("--rule", rule, "at_least:N | fewer_incorrect:N | fewer_incorrect:omega");
    if (needs_strategy) {
      app.add_option("--strategy", strategy, "name[:k=v,...], e.g. block_mod_sum:n=2, constant:0, sum_broadcast");
      app.add_option("--strategy-file", strategy_file, "JSON strategy descriptor file");
    }
    app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", seed, "Seed for topological-extension sampling");
    app.add_option("--jobs", jobs, "Worker threads for sweeps");
  }

  Instance instance() const {
    if (!instance_file.empty()) return instance_from_json(read_json_file(instance_file));
    if (players <= 0 || colors <= 0) throw HatError(ErrorCode::ConfigError, "need --instance or -m/-c");
    return build_canonical_instance(parse_kind(kind), players, colors, parse_rule(rule));
  }

  Strategy make_strategy(const Instance& inst) const {
    if (!strategy_file.empty()) return strategy_from_json(read_json_file(strategy_file), inst);
    if (strategy.empty()) throw HatError(ErrorCode::ConfigError, "need --strategy or --strategy-file");
    return strategy_from_json(parse_strategy_spec(strategy), inst);
  }
};

std::string label_list(const Instance& inst, const std::vector<PlayerId>& players) {
  std::string s = "[";
  for (std::size_t i = 0; i < players.size(); ++i) {
    const int label = inst.player_label(players[i]);
    s += (i ? "," : "") + (inst.kind() == InstanceKind::Hbsf && label == -1 ? std::string("front")
                                                                           : std::to_string(label));
  }
  return s + "]";
}

std::string color_list(std::span<const Color> colors, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < colors.size(); ++i) s += (i ? sep : "") + std::to_string(colors[i]);
  return s;
}

int cmd_run(const GameOptions& o, const std::string& assignment_text) {
  const Instance inst = o.instance();
  const Strategy strat = o.make_strategy(inst);
  const Assignment a = parse_assignment(assignment_text);
  require_assignment(inst, a);
  const GameResult r = run_game(inst, strat, a, topological_extension(inst, o.seed));
  if (o.format == "text") {
    std::cout << "verdict=" << (r.verdict ? 1 : 0) << " correct=" << label_list(inst, r.correct_set)
              << " incorrect=" << label_list(inst, r.incorrect_set) << " guesses=[" << color_list(r.guesses)
              << "]\n";
  } else if (o.format == "csv") {
    std::cout << "assignment,correct,incorrect,verdict\n"
              << color_list(a, " ") << "," << r.correct_count << "," << r.incorrect_count << ","
              << (r.verdict ? 1 : 0) << "\n";
  } else {
    std::cout << game_result_to_json(inst, a, r).dump(2) << "\n";
  }
  return r.verdict ? 0 : kExitFailure;
}

int cmd_sweep(const GameOptions& o, const Budgets& budgets) {
  const Instance inst = o.instance();
  const Strategy strat = o.make_strategy(inst);
  SweepOptions opts;
  opts.max_assignments = budgets.sweep;
  opts.jobs = o.jobs;
  if (o.format == "csv") {
    std::cout << "assignment,correct,incorrect,verdict\n";
    bool winning = true;
    for_each_play(inst, strat, opts, [&](const Assignment& a, const GameResult& r) {
      winning = winning && r.verdict;
      std::cout << color_list(a, " ") << "," << r.correct_count << "," << r.incorrect_count << ","
                << (r.verdict ? 1 : 0) << "\n";
    });
    return winning ? 0 : kExitFailure;
  }
  const SweepReport r = is_winning(inst, strat, opts);
  if (o.format == "text") {
    std::cout << "assignments=" << r.assignments << " min_correct=" << r.min_correct
              << " max_incorrect=" << r.max_incorrect << " winning=" << (r.winning ? "true" : "false")
              << " counterexample=" << (r.counterexample ? "[" + color_list(*r.counterexample) + "]" : "null")
              << "\n";
  } else {
    std::cout << sweep_report_to_json(r).dump(2) << "\n";
  }
  return r.winning ? 0 : kExitFailure;
}

int cmd_search(const GameOptions& o, const Budgets& budgets, const std::string& expect, bool no_prune) {
  const Instance inst = o.instance();
  SearchVerdict v = exists_winning_exhaustive(inst, budgets.search, !no_prune);
  const SearchVerdict best = best_guaranteed_correct(inst, budgets.search, !no_prune);
  v.best_guaranteed = best.best_guaranteed;
  if (o.format == "text") {
    std::cout << "exists_winning=" << (v.exists_winning ? "true" : "false")
              << " best_guaranteed=" << v.best_guaranteed.value_or(0) << " strategies_examined="
              << v.strategies_examined << " pruned=" << v.pruned << "\n";
  } else {
    std::cout << search_verdict_to_json(inst, v).dump(2) << "\n";
  }
  if (expect.empty()) return 0;
  return (expect == "yes") == v.exists_winning ? 0 : kExitFailure;
}

int cmd_line(const std::string& strategy, Color colors, const std::string& lazy_text, const std::string& lazy_file) {
  LineStrategy kind = LineStrategy::GabayOConnor;
  if (strategy == "forward_selector") kind = LineStrategy::ForwardSelector;
  if (strategy == "sum_broadcast") kind = LineStrategy::SumBroadcast;
  Json descriptor;
  if (!lazy_file.empty()) {
    descriptor = read_json_file(lazy_file);
  } else {
    try {
      descriptor = Json::parse(lazy_text);
    } catch (const nlohmann::json::exception& e) {
      throw HatError(ErrorCode::ConfigError, std::string("--lazy: ") + e.what());
    }
  }
  LazyDescriptor d = lazy_from_json(descriptor);
  const LazyGuessRecord g = run_lazy(kind, d.shape, ColorSpace{colors}, d.assignment);
  const MismatchCensus census = mismatch_census(d.assignment, g);
  Json out;
  out["strategy"] = std::string(to_string(kind));
  out["assignment"] = lazy_to_json(d);
  out["record"] = lazy_record_to_json(g, census);
  const auto rule =
      kind == LineStrategy::SumBroadcast ? EvaluationRule::fewer_incorrect_than(2) : EvaluationRule::fewer_incorrect_than(Cardinal::omega());
  const bool verdict = evaluate(rule, Cardinal::omega(), census.incorrect_count());
  out["rule"] = rule_to_json(rule);
  out["verdict"] = verdict ? 1 : 0;
  std::cout << out.dump(2) << "\n";
  return verdict ? 0 : kExitFailure;
}

int cmd_verify(const std::string& only, std::uint64_t seed) {
  AcceptanceOptions opts;
  opts.only = only;
  if (seed != 0) opts.seed = seed;
  const auto results = run_acceptance(opts);
  std::cout << format_results(results);
  if (results.empty()) {
    std::cout << "no criterion matches '" << only << "'\n";
    return kExitFailure;
  }
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  std::cout << (all ? "all criteria passed\n" : "some criteria FAILED\n");
  return all ? 0 : kExitFailure;
}

int cmd_bench(const Budgets& budgets, unsigned jobs) {
  using Clock = std::chrono::steady_clock;
  auto time = [](auto&& f) {
    const auto start = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  std::cout << "case,seconds\n";
  {
    const Instance inst = build_canonical_instance(InstanceKind::Hnsa, 12, 3, EvaluationRule::at_least_correct(4));
    const Strategy strat = block_mod_sum(12, 3, 4);
    SweepOptions opts{budgets.sweep, jobs};
    std::cout << "sweep hnsa m=12 c=3 block_mod_sum," << time([&] { is_winning(inst, strat, opts); }) << "\n";
  }
  {
    const Instance inst = build_canonical_instance(InstanceKind::Hbsf, 10, 4, EvaluationRule::fewer_incorrect_than(2));
    const Strategy strat = sum_broadcast(ColorSpace{4});
    SweepOptions opts{budgets.sweep, jobs};
    std::cout << "sweep hbsf m=10 c=4 sum_broadcast," << time([&] { is_winning(inst, strat, opts); }) << "\n";
  }
  for (auto [m, c] : {std::pair{3, 2}, std::pair{2, 3}}) {
    const Instance inst = build_canonical_instance(InstanceKind::Hnsa, m, c, EvaluationRule::at_least_correct(1));
    std::cout << "search hnsa m=" << m << " c=" << c << " pruned,"
              << time([&] { best_guaranteed_correct(inst, budgets.search, true); }) << "\n";
    std::cout << "search hnsa m=" << m << " c=" << c << " unpruned,"
              << time([&] { best_guaranteed_correct(inst, budgets.search, false); }) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hat-guessing game engine: play, sweep, search and verify"};
  app.require_subcommand(1);

  GameOptions run_opts;
  std::string assignment;
  auto* run = app.add_subcommand("run", "Play one assignment");
  run_opts.attach(*run, true);
  run->add_option("--assignment", assignment, "Comma-separated colors, player order (HBSF: front first)")->required();

  GameOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Play every assignment and decide winningness");
  sweep_opts.attach(*sweep, true);

  GameOptions search_opts;
  std::string expect;
  bool no_prune = false;
  auto* search = app.add_subcommand("search", "Exhaustively search table strategies");
  search_opts.attach(*search, false);
  search->add_option("--expect", expect, "yes | no: exit 0 iff the verdict matches")
      ->check(CLI::IsMember({"yes", "no"}));
  search->add_flag("--no-prune", no_prune, "Evaluate every table instead of branch and bound");

  std::string line_strategy = "gabay_oconnor";
  Color line_colors = 2;
  std::string lazy_text;
  std::string lazy_file;
  auto* line = app.add_subcommand("line", "Symbolic play on an omega*K line");
  line->add_option("--strategy", line_strategy, "gabay_oconnor | forward_selector | sum_broadcast")
      ->check(CLI::IsMember({"gabay_oconnor", "forward_selector", "sum_broadcast"}));
  line->add_option("-c,--colors", line_colors, "Number of colors")->required();
  line->add_option("--lazy", lazy_text, "Lazy assignment JSON");
  line->add_option("--lazy-file", lazy_file, "Lazy assignment JSON file");

  std::string only;
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--only", only, "Run criteria whose id starts with this prefix");
  verify->add_option("--seed", verify_seed, "Seed for the randomized criteria");

  unsigned bench_jobs = 1;
  auto* bench = app.add_subcommand("bench", "Time representative sweeps and searches");
  bench->add_option("--jobs", bench_jobs, "Worker threads for sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const Budgets budgets = budgets_from_env();
    if (*run) return cmd_run(run_opts, assignment);
    if (*sweep) return cmd_sweep(sweep_opts, budgets);
    if (*search) return cmd_search(search_opts, budgets, expect, no_prune);
    if (*line) {
      if (lazy_text.empty() && lazy_file.empty()) throw HatError(ErrorCode::ConfigError, "need --lazy or --lazy-file");
      return cmd_line(line_strategy, line_colors, lazy_text, lazy_file);
    }
    if (*verify) return cmd_verify(only, verify_seed);
    if (*bench) return cmd_bench(budgets, bench_jobs);
  } catch (const HatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool budget = e.code() == ErrorCode::SweepTooLarge || e.code() == ErrorCode::BudgetExceeded;
    return budget ? kExitBudget : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
