#pragma once

// Command-line front end. Exit codes:
//   0 success / equilibrium, 2 parse or shape error, 3 not an equilibrium,
//   4 enumeration budget exceeded, 5 no equilibrium where one must exist,
//   6 fuzz certification failure.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hog/hog.hpp"

namespace hog::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kNotEquilibrium = 3,
  kBudgetExceeded = 4,
  kNoEquilibrium = 5,
  kFuzzFailure = 6,
};

struct CommonOptions {
  std::optional<double> tol;
  std::optional<std::uint64_t> budget;
  bool json_output = false;
  std::string out;
};

inline std::uint64_t resolve_budget(const CommonOptions& opts,
                                    const GameFile* file) {
  if (opts.budget) return *opts.budget;
  if (file && file->solver.budget) return *file->solver.budget;
  if (const char* env = std::getenv("HOG_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw StructuralError(std::string("HOG_BUDGET is not a number: ") + env);
    }
  }
  return kDefaultBudget;
}

inline double resolve_tol(const CommonOptions& opts, const GameFile* file,
                          double fallback) {
  if (opts.tol) return *opts.tol;
  if (file && file->solver.tol) return *file->solver.tol;
  return fallback;
}

inline json table_json(const OutcomeTable& t) {
  json rows = json::array();
  for (MoveId x = 0; x < t.size(); ++x) {
    if (t.dim() == 1) {
      rows.push_back(t.scalar(x));
    } else {
      rows.push_back(std::vector<double>(t[x].begin(), t[x].end()));
    }
  }
  return rows;
}

inline json outcome_json(OutcomeView r) {
  if (r.size() == 1) return r[0];
  return std::vector<double>(r.begin(), r.end());
}

inline std::string render(const json& j) {
  if (j.is_number_float()) {
    std::ostringstream s;
    s.precision(12);
    s << j.get<double>();
    return s.str();
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) s += ", ";
      s += render(j[k]);
    }
    return s + "]";
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

// Text form of a report: one "key: value" line per scalar field, nested
// arrays of objects rendered as indented blocks.
inline void print_text(std::ostream& out, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_array() && !v.empty() && v[0].is_object()) {
      out << pad << it.key() << ":\n";
      for (const json& e : v) {
        out << pad << "  -\n";
        print_text(out, e, indent + 4);
      }
    } else if (v.is_object()) {
      out << pad << it.key() << ":\n";
      print_text(out, v, indent + 2);
    } else {
      out << pad << it.key() << ": " << render(v) << "\n";
    }
  }
}

inline void emit(std::ostream& out, const CommonOptions& opts,
                 const json& report) {
  if (opts.json_output) {
    out << report.dump(2) << "\n";
  } else {
    print_text(out, report);
  }
}

inline void write_artifact(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw StructuralError("cannot write " + path);
  f << j.dump(2) << "\n";
}

inline json parse_json_arg(const std::string& text, const char* what) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw ParseError(std::string("cannot open ") + what + " file " + text.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    body = buf.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

// --- check-eq ------------------------------------------------------------

inline json pure_report(const SimultaneousGame& g, const PureProfile& p,
                        double tol, bool& all_ok) {
  json players = json::array();
  all_ok = true;
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const OutcomeTable t = unilateral_map(g, i, p);
    const bool ok = g.quantifier(i).contains(t, t[p[i]], tol);
    all_ok = all_ok && ok;
    players.push_back({{"player", i},
                       {"quantifier", kind_name(g.quantifier(i).kind())},
                       {"deviation_table", table_json(t)},
                       {"outcome", outcome_json(t[p[i]])},
                       {"in_quantifier", ok}});
  }
  return players;
}

inline json mixed_report(const SimultaneousGame& g, const MixedProfile& p,
                         double tol, std::uint64_t budget, bool& all_ok) {
  json players = json::array();
  all_ok = true;
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const OutcomeTable t = mixed_unilateral_table(g, i, p, budget);
    const Outcome value = expected_outcome(g, i, p, budget);
    const bool ok = g.quantifier(i).contains(t, value, tol);
    all_ok = all_ok && ok;
    players.push_back({{"player", i},
                       {"quantifier", kind_name(g.quantifier(i).kind())},
                       {"vertex_table", table_json(t)},
                       {"expected_outcome", outcome_json(value)},
                       {"in_quantifier", ok}});
  }
  return players;
}

inline int cmd_check_eq(const std::string& path, const std::string& profile_arg,
                        const std::string& strategy_arg,
                        const CommonOptions& opts, std::ostream& out) {
  const GameFile f = load_game_file(path);
  const double tol = resolve_tol(opts, &f, 1e-9);
  const std::uint64_t budget = resolve_budget(opts, &f);
  json report;
  report["game"] = path;
  report["tol"] = tol;

  if (f.kind == GameKind::kSequential) {
    if (strategy_arg.empty()) {
      throw ParseError("sequential games are checked with --strategy");
    }
    const SequentialGame g = to_sequential(f);
    const SeqStrategy pi = parse_strategy(parse_json_arg(strategy_arg, "strategy"), f);
    const auto failure = find_suboptimal_history(g, pi, tol, budget);
    report["kind"] = "sequential_strategy";
    report["strategic_play"] = strategic_play(g, pi);
    report["optimal"] = !failure.has_value();
    if (failure) {
      report["first_violation"] = {{"round", failure->round},
                                   {"history", failure->history}};
    }
    try {
      report["normal_form_nash"] = check_soundness(g, pi, tol, budget);
    } catch (const ResourceError& e) {
      report["normal_form_nash"] = std::string("skipped: ") + e.what();
    }
    emit(out, opts, report);
    return failure ? kNotEquilibrium : kOk;
  }

  if (profile_arg.empty()) throw ParseError("--profile is required");
  const SimultaneousGame g = to_simultaneous(f);
  const Profile profile = parse_profile(parse_json_arg(profile_arg, "profile"), f);
  bool ok = false;
  if (const auto* pure = std::get_if<PureProfile>(&profile)) {
    report["kind"] = "pure";
    report["profile"] = *pure;
    report["players"] = pure_report(g, *pure, tol, ok);
  } else {
    const auto& mixed = std::get<MixedProfile>(profile);
    report["kind"] = "mixed";
    report["profile"] = profile_to_json(mixed);
    report["players"] = mixed_report(g, mixed, tol, budget, ok);
  }
  report["equilibrium"] = ok;
  emit(out, opts, report);
  return ok ? kOk : kNotEquilibrium;
}

// --- solve / normal-form / bbc -------------------------------------------

inline json bbc_report(const TwoPlayerStage& s, double tol,
                       std::uint64_t budget, bool& psi_phi) {
  const BbcComparison c = compare_bbc_vs_product(s);
  const auto violation = find_psi_phi_violation(s, c.bbc, tol, budget);
  psi_phi = !violation.has_value();
  json r;
  r["bbc"] = {c.bbc.first, c.bbc.second};
  r["bbc_outcome"] = outcome_json(c.bbc_outcome);
  r["product"] = {c.product.first, c.product.second};
  r["product_outcome"] = outcome_json(c.product_outcome);
  r["same_first"] = c.same_first;
  r["same_second"] = c.same_second;
  r["psi_phi_profile"] = psi_phi;
  if (violation) {
    r["violation"] = {{"player", violation->player},
                      {"reply_function", violation->witness}};
  }
  if (!s.single_valued()) {
    r["warning"] =
        "quantifiers are not both single-valued; the bbc output carries no "
        "psi-phi guarantee";
  }
  return r;
}

inline int cmd_bbc(const std::string& path, const CommonOptions& opts,
                   std::ostream& out, std::ostream& err) {
  const GameFile f = load_game_file(path);
  const TwoPlayerStage s = to_stage(f);
  bool ok = false;
  json report = bbc_report(s, resolve_tol(opts, &f, 0.0), resolve_budget(opts, &f), ok);
  report["game"] = path;
  if (report.contains("warning")) {
    err << "warning: " << report["warning"].get<std::string>() << "\n";
  }
  if (!opts.out.empty()) write_artifact(opts.out, report);
  emit(out, opts, report);
  return ok ? kOk : kNotEquilibrium;
}

inline int cmd_normal_form(const std::string& path, const CommonOptions& opts,
                           std::ostream& out) {
  const GameFile f = load_game_file(path);
  const GameFile nf = normal_form_file(f, resolve_budget(opts, &f));
  const json j = to_json(nf);
  if (!opts.out.empty()) {
    write_artifact(opts.out, j);
    json report;
    report["game"] = path;
    report["written"] = opts.out;
    report["move_set_sizes"] = nf.move_counts();
    emit(out, opts, report);
  } else {
    out << j.dump(2) << "\n";
  }
  return kOk;
}

inline int cmd_solve(const std::string& path, const std::string& mode,
                     std::optional<std::size_t> grid_depth,
                     const CommonOptions& opts, std::ostream& out,
                     std::ostream& err) {
  if (mode == "normal-form") return cmd_normal_form(path, opts, out);
  if (mode == "bbc") return cmd_bbc(path, opts, out, err);

  const GameFile f = load_game_file(path);
  const std::uint64_t budget = resolve_budget(opts, &f);
  json report;
  report["game"] = path;
  report["mode"] = mode;
  json artifact;
  int code = kOk;

  if (mode == "seq") {
    const SequentialGame g = to_sequential(f);
    const double tol = resolve_tol(opts, &f, 0.0);
    const Play play = compute_optimal_play(g, budget);
    const SeqStrategy pi = compute_optimal_strategy(g, budget);
    report["tol"] = tol;
    report["optimal_play"] = play;
    report["outcome"] = outcome_json(g.outcome(play));
    report["strategy"] = strategy_to_json(pi);
    report["strategic_play_matches"] = strategic_play(g, pi) == play;
    report["optimal"] = is_optimal_strategy(g, pi, tol, budget);
    try {
      report["normal_form_nash"] = check_soundness(g, pi, tol, budget);
    } catch (const ResourceError& e) {
      report["normal_form_nash"] = std::string("skipped: ") + e.what();
    }
    artifact = {{"play", play}, {"strategy", strategy_to_json(pi)}};
  } else if (mode == "pure") {
    const SimultaneousGame g = to_simultaneous(f);
    const double tol = resolve_tol(opts, &f, 1e-9);
    const auto eqs = enumerate_pure_equilibria(g, tol, budget);
    report["tol"] = tol;
    report["count"] = eqs.size();
    json list = json::array();
    for (const PureProfile& p : eqs) {
      bool ok = false;
      list.push_back({{"profile", p}, {"players", pure_report(g, p, tol, ok)},
                      {"certified", ok}});
    }
    report["equilibria"] = list;
    artifact = eqs;
  } else if (mode == "mixed") {
    const SimultaneousGame g = to_simultaneous(f);
    const double tol = resolve_tol(opts, &f, 1e-9);
    report["tol"] = tol;
    bool max_2p = g.player_count() == 2;
    for (std::size_t i = 0; i < g.player_count() && max_2p; ++i) {
      max_2p = g.outcome_dim(i) == 1 &&
               std::holds_alternative<qk::Max>(g.quantifier(i).kind());
    }
    std::vector<MixedProfile> eqs;
    if (max_2p) {
      report["solver"] = "support_enumeration";
      const SupportEnumerationResult r = solve_support_enumeration_2p(g, tol);
      report["singular_systems_skipped"] = r.singular_systems;
      eqs = r.equilibria;
      if (r.contradicts_existence()) {
        err << "error: support enumeration found no equilibrium, but every "
               "finite game has one\n";
        code = kNoEquilibrium;
      }
    } else {
      const std::size_t depth = grid_depth.value_or(f.solver.grid_depth.value_or(2));
      report["solver"] = "grid_search";
      report["grid_depth"] = depth;
      eqs = solve_generic(g, depth, tol, budget);
      if (eqs.empty()) {
        report["warning"] = "no certified profile on this grid; try a finer --grid-depth";
      }
    }
    report["count"] = eqs.size();
    json list = json::array();
    artifact = json::array();
    for (const MixedProfile& p : eqs) {
      bool ok = false;
      list.push_back({{"profile", profile_to_json(p)},
                      {"players", mixed_report(g, p, tol, budget, ok)},
                      {"certified", ok}});
      artifact.push_back(profile_to_json(p));
    }
    report["equilibria"] = list;
  } else {
    throw ParseError("unknown solve mode '" + mode +
                     "' (pure, mixed, seq, bbc, normal-form)");
  }
  if (!opts.out.empty()) write_artifact(opts.out, artifact);
  emit(out, opts, report);
  return code;
}

// --- fuzz -------------------------------------------------------------------

struct FuzzOptions {
  std::uint64_t seed = 42;
  std::size_t count = 200;
  std::string kind = "seq";  // seq, soundness, bbc, all
  std::size_t max_rounds = 3;
  std::size_t max_moves = 3;
  std::int64_t payoff_lo = -9;
  std::int64_t payoff_hi = 9;
  bool inject_fault = false;
};

// Certifies one game file; returns a description of the failure, if any.
// Sequential games get the optimal-play checks for kinds seq/all and the
// normal-form soundness check for kinds soundness/all.
inline std::optional<std::string> certify(const GameFile& f, const std::string& kind,
                                          bool inject_fault, std::uint64_t budget) {
  if (f.kind == GameKind::kSequential) {
    const SequentialGame g = to_sequential(f);
    const Play play = compute_optimal_play(g, budget);
    SeqStrategy pi = compute_optimal_strategy(g, budget);
    if (inject_fault) {
      // Corrupt the root move so the checkers have something to catch.
      MoveId& root = pi.tables[0][0];
      root = (root + 1) % g.move_count(0);
    }
    const bool play_checks = kind != "soundness";
    if (play_checks && strategic_play(g, pi) != play) {
      return "strategic play of the optimal strategy differs from the "
             "product of selection functions";
    }
    if (play_checks && !is_optimal_strategy(g, pi, 0.0, budget)) {
      return "computed strategy is not optimal";
    }
    if (kind != "seq" && !check_soundness(g, pi, 0.0, budget)) {
      return "optimal strategy is not a Nash equilibrium of the normal form";
    }
    return std::nullopt;
  }
  const TwoPlayerStage s = to_stage(f);
  MovePair profile = bbc(s);
  if (inject_fault) profile.first = (profile.first + 1) % s.x_count();
  if (!is_psi_phi_profile(s, profile, 0.0, budget)) {
    return "bbc output is not a psi-phi profile";
  }
  return std::nullopt;
}

// Greedy shrink: zero payoff entries one at a time while the failure
// persists.
inline GameFile minimize_failure(GameFile f, const std::string& kind,
                                 bool inject_fault, std::uint64_t budget) {
  for (std::size_t k = 0; k < f.payoffs[0].size(); ++k) {
    if (f.payoffs[0][k] == 0.0) continue;
    GameFile trial = f;
    trial.payoffs[0][k] = 0.0;
    if (certify(trial, kind, inject_fault, budget)) f = std::move(trial);
  }
  return f;
}

inline int cmd_fuzz(const FuzzOptions& fo, const CommonOptions& opts,
                    std::ostream& out) {
  const std::uint64_t budget = resolve_budget(opts, nullptr);
  if (fo.kind != "seq" && fo.kind != "soundness" && fo.kind != "bbc" &&
      fo.kind != "all") {
    throw ParseError("unknown fuzz kind '" + fo.kind + "'");
  }
  if (fo.max_rounds == 0 || fo.max_moves == 0 || fo.payoff_lo > fo.payoff_hi) {
    throw ParseError("fuzz shape must have rounds, moves >= 1 and lo <= hi");
  }

  // Largest shape first: every game drawn must fit the budget.
  const std::uint64_t plays = checked_power(fo.max_moves, fo.max_rounds);
  require_within_budget(plays, budget, "largest play space");
  if (fo.kind == "soundness" || fo.kind == "all") {
    std::uint64_t histories = 1;
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < fo.max_rounds; ++i) {
      const std::uint64_t s = checked_power(fo.max_moves, histories);
      require_within_budget(s, budget, "largest contingent move set");
      sizes.push_back(static_cast<std::size_t>(s));
      histories = checked_product(std::vector<std::size_t>{
          static_cast<std::size_t>(histories), fo.max_moves});
    }
    require_within_budget(checked_product(sizes), budget,
                          "largest normal-form profile space");
  }
  if (fo.kind == "bbc" || fo.kind == "all") {
    require_within_budget(checked_power(fo.max_moves, fo.max_moves), budget,
                          "largest reply-function space");
  }

  Rng rng(fo.seed);
  ShapeParams shape;
  shape.min_players = 1;
  shape.max_players = fo.max_rounds;
  shape.min_moves = 1;
  shape.max_moves = fo.max_moves;
  shape.payoff_lo = fo.payoff_lo;
  shape.payoff_hi = fo.payoff_hi;

  std::size_t passed = 0;
  for (std::size_t n = 0; n < fo.count; ++n) {
    const bool stage = fo.kind == "bbc" || (fo.kind == "all" && n % 3 == 2);
    const GameFile f = stage ? random_stage(rng, shape)
                             : random_sequential_game(rng, shape);
    const auto failure = certify(f, fo.kind, fo.inject_fault, budget);
    if (!failure) {
      ++passed;
      continue;
    }
    const GameFile minimal = minimize_failure(f, fo.kind, fo.inject_fault, budget);
    const std::string dir = opts.out.empty() ? "." : opts.out;
    std::filesystem::create_directories(dir);
    const std::string file = dir + "/fuzz_failure_seed" +
                             std::to_string(fo.seed) + "_game" +
                             std::to_string(n) + ".json";
    write_artifact(file, to_json(minimal));
    json report;
    report["seed"] = fo.seed;
    report["game_index"] = n;
    report["passed_before_failure"] = passed;
    report["failure"] = *failure;
    report["minimized_game"] = file;
    emit(out, opts, report);
    return kFuzzFailure;
  }
  json report;
  report["seed"] = fo.seed;
  report["kind"] = fo.kind;
  report["games"] = fo.count;
  report["passed"] = passed;
  emit(out, opts, report);
  return kOk;
}

// --- entry point ----------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"hog: selection functions, quantifiers and generalised games"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto add_common = [&opts](CLI::App* sub) {
    sub->add_option("--tol", opts.tol, "membership tolerance");
    sub->add_option("--budget", opts.budget,
                    "enumeration budget (default: HOG_BUDGET or 1000000)");
    sub->add_flag("--json", opts.json_output, "emit the report as JSON");
    sub->add_option("--out", opts.out, "write results to this path");
  };

  std::string game_path;
  std::string profile_arg;
  std::string strategy_arg;
  std::string mode;
  std::optional<std::size_t> grid_depth;
  FuzzOptions fuzz;

  CLI::App* check = app.add_subcommand("check-eq", "verify a profile or strategy");
  check->add_option("game", game_path, "game file")->required();
  check->add_option("--profile", profile_arg,
                    "JSON profile: [0,1], [\"H\",\"T\"] or [[.5,.5],[.5,.5]]; "
                    "@file reads it from a file");
  check->add_option("--strategy", strategy_arg,
                    "JSON strategy tables for sequential games");
  add_common(check);

  CLI::App* solve = app.add_subcommand("solve", "solve a game");
  solve->add_option("game", game_path, "game file")->required();
  solve->add_option("--mode", mode, "pure | mixed | seq | bbc | normal-form")
      ->required();
  solve->add_option("--grid-depth", grid_depth, "simplex grid denominator");
  add_common(solve);

  CLI::App* nf = app.add_subcommand("normal-form", "export the normal form");
  nf->add_option("game", game_path, "sequential game file")->required();
  add_common(nf);

  CLI::App* bbc_cmd = app.add_subcommand("bbc", "BBC functional on a stage");
  bbc_cmd->add_option("game", game_path, "two-player stage file")->required();
  add_common(bbc_cmd);

  CLI::App* fz = app.add_subcommand("fuzz", "random theorem certification");
  fz->add_option("--seed", fuzz.seed, "random seed");
  fz->add_option("--count", fuzz.count, "number of games");
  fz->add_option("--kind", fuzz.kind, "seq | soundness | bbc | all");
  fz->add_option("--max-rounds", fuzz.max_rounds, "rounds per sequential game");
  fz->add_option("--max-moves", fuzz.max_moves, "moves per round");
  fz->add_option("--payoff-lo", fuzz.payoff_lo, "smallest payoff");
  fz->add_option("--payoff-hi", fuzz.payoff_hi, "largest payoff");
  fz->add_flag("--inject-fault", fuzz.inject_fault,
               "corrupt each candidate before certification (harness self-test)");
  add_common(fz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (*check) return cmd_check_eq(game_path, profile_arg, strategy_arg, opts, out);
    if (*solve) return cmd_solve(game_path, mode, grid_depth, opts, out, err);
    if (*nf) return cmd_normal_form(game_path, opts, out);
    if (*bbc_cmd) return cmd_bbc(game_path, opts, out, err);
    if (*fz) return cmd_fuzz(fuzz, opts, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kParseError;
}

}  // namespace hog::cli
