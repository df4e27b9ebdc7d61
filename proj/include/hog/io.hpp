#pragma once

// JSON game files.
//
//   {
//     "version": 1,
//     "kind": "simultaneous" | "sequential" | "two_player_stage",
//     "outcome_dim": 1,
//     "players": [                      // "rounds" for sequential games
//       {"name": "row", "moves": ["H", "T"],
//        "quantifier": {"kind": "max"}, "selection": {"kind": "argmax"}}
//     ],
//     "payoffs": [[...], [...]],        // one row-major tensor per player
//     "payoff": [...],                  // or one shared tensor
//     "solver": {"tol": 1e-9, "grid_depth": 2, "budget": 1000000}
//   }
//
// Tensors are dense and row-major over profiles (last player fastest), with
// outcome_dim consecutive numbers per profile. Sequential games and stages
// always use a single "payoff" tensor.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hog/core.hpp"
#include "hog/errors.hpp"
#include "hog/minimax.hpp"
#include "hog/mixed.hpp"
#include "hog/normal_form.hpp"
#include "hog/sequential.hpp"
#include "hog/simultaneous.hpp"

namespace hog {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Parse or validation failure; the message names the offending field as a
// JSON pointer, or the line/column for syntax errors.
class ParseError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

enum class GameKind { kSimultaneous, kSequential, kTwoPlayerStage };

struct PlayerDesc {
  std::string name;
  std::vector<std::string> moves;
  QuantifierKind quantifier;
  std::optional<SelectionKind> selection;

  friend bool operator==(const PlayerDesc&, const PlayerDesc&) = default;
};

struct SolverParams {
  std::optional<double> tol;
  std::optional<std::size_t> grid_depth;
  std::optional<std::uint64_t> budget;

  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

struct GameFile {
  int version = kFormatVersion;
  GameKind kind = GameKind::kSimultaneous;
  std::vector<PlayerDesc> players;
  std::size_t outcome_dim = 1;
  bool single_outcome_space = false;
  std::vector<std::vector<double>> payoffs;
  SolverParams solver;
  // Normal-form exports: per player, a readable history -> move listing of
  // each contingent move. Informational only.
  std::vector<std::vector<std::string>> contingent_tables;

  std::vector<std::size_t> move_counts() const {
    std::vector<std::size_t> counts;
    for (const PlayerDesc& p : players) counts.push_back(p.moves.size());
    return counts;
  }

  friend bool operator==(const GameFile&, const GameFile&) = default;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw ParseError("field " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

inline const json& member(const json& j, const std::string& path,
                          const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing");
  return *it;
}

inline std::size_t as_index(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    fail(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline std::vector<double> as_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    v.push_back(as_number(j[k], path + "/" + std::to_string(k)));
  }
  return v;
}

inline QuantifierKind parse_quantifier(const json& j, const std::string& path) {
  const json& kind = member(j, path, "kind");
  if (!kind.is_string()) fail(path + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "max") return qk::Max{};
  if (k == "min") return qk::Min{};
  if (k == "fixed_point") return qk::FixedPoint{};
  if (k == "average") return qk::Average{};
  if (k == "eps_ball") {
    const double radius = as_number(member(j, path, "radius"), path + "/radius");
    if (!(radius > 0.0)) fail(path + "/radius", "must be > 0");
    return qk::EpsilonBall{as_index(member(j, path, "center"), path + "/center"),
                           radius};
  }
  if (k == "restricted") {
    const QuantifierKind inner =
        parse_quantifier(member(j, path, "inner"), path + "/inner");
    const json& pos = member(j, path, "positions");
    if (!pos.is_array()) fail(path + "/positions", "expected an array");
    std::vector<MoveId> positions;
    for (std::size_t n = 0; n < pos.size(); ++n) {
      positions.push_back(as_index(pos[n], path + "/positions/" + std::to_string(n)));
    }
    return qk::Restricted{
        std::make_shared<const Quantifier>(make_standard_quantifier(inner)),
        std::move(positions)};
  }
  fail(path + "/kind", "unknown quantifier kind '" + k + "'");
}

inline SelectionKind parse_selection(const json& j, const std::string& path) {
  const json& kind = member(j, path, "kind");
  if (!kind.is_string()) fail(path + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "argmax") return sk::ArgMax{};
  if (k == "argmin") return sk::ArgMin{};
  if (k == "fixed_point_witness") return sk::FixedPointWitness{};
  if (k == "nearest_average") return sk::NearestAverage{};
  if (k == "constant") {
    return sk::Constant{as_index(member(j, path, "move"), path + "/move")};
  }
  fail(path + "/kind", "unknown selection kind '" + k + "'");
}

}  // namespace detail

inline json quantifier_to_json(const QuantifierKind& kind) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, qk::EpsilonBall>) {
          return {{"kind", "eps_ball"}, {"center", k.center}, {"radius", k.radius}};
        } else if constexpr (std::is_same_v<K, qk::Restricted>) {
          return {{"kind", "restricted"},
                  {"inner", quantifier_to_json(k.inner->kind())},
                  {"positions", k.positions}};
        } else if constexpr (std::is_same_v<K, qk::Custom>) {
          throw StructuralError("custom quantifier '" + k.name +
                                "' cannot be serialized");
        } else {
          return {{"kind", kind_name(QuantifierKind(k))}};
        }
      },
      kind);
}

inline json selection_to_json(const SelectionKind& kind) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, sk::Constant>) {
          return {{"kind", "constant"}, {"move", k.move}};
        } else if constexpr (std::is_same_v<K, sk::Custom>) {
          throw StructuralError("custom selection '" + k.name +
                                "' cannot be serialized");
        } else {
          return {{"kind", kind_name(SelectionKind(k))}};
        }
      },
      kind);
}

inline const char* kind_tag(GameKind kind) {
  switch (kind) {
    case GameKind::kSimultaneous: return "simultaneous";
    case GameKind::kSequential: return "sequential";
    case GameKind::kTwoPlayerStage: return "two_player_stage";
  }
  return "";
}

inline GameFile parse_game_file(const json& j) {
  using detail::fail;
  using detail::member;
  GameFile f;
  const json& version = member(j, "", "version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    fail("/version", "unsupported format version " + version.dump());
  }
  const json& kind = member(j, "", "kind");
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "simultaneous") f.kind = GameKind::kSimultaneous;
  else if (k == "sequential") f.kind = GameKind::kSequential;
  else if (k == "two_player_stage") f.kind = GameKind::kTwoPlayerStage;
  else fail("/kind", "unknown game kind " + kind.dump());

  if (j.contains("outcome_dim")) {
    f.outcome_dim = detail::as_index(j["outcome_dim"], "/outcome_dim");
    if (f.outcome_dim == 0) fail("/outcome_dim", "must be >= 1");
  }

  const char* list_key = f.kind == GameKind::kSequential ? "rounds" : "players";
  const std::string list_path = std::string("/") + list_key;
  const json& players = member(j, "", list_key);
  if (!players.is_array() || players.empty()) {
    fail(list_path, "expected a nonempty array");
  }
  if (f.kind == GameKind::kTwoPlayerStage && players.size() != 2) {
    fail(list_path, "a two-player stage needs exactly 2 players");
  }
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string path = list_path + "/" + std::to_string(i);
    const json& p = players[i];
    PlayerDesc d;
    if (p.contains("name")) {
      if (!p["name"].is_string()) fail(path + "/name", "expected a string");
      d.name = p["name"].get<std::string>();
    }
    const json& moves = member(p, path, "moves");
    if (moves.is_number_integer()) {
      const std::size_t n = detail::as_index(moves, path + "/moves");
      for (std::size_t m = 0; m < n; ++m) d.moves.push_back(std::to_string(m));
    } else if (moves.is_array()) {
      for (std::size_t m = 0; m < moves.size(); ++m) {
        if (!moves[m].is_string()) {
          fail(path + "/moves/" + std::to_string(m), "expected a string label");
        }
        d.moves.push_back(moves[m].get<std::string>());
      }
    } else {
      fail(path + "/moves", "expected a move count or an array of labels");
    }
    if (d.moves.empty()) fail(path + "/moves", "move set must be nonempty");
    d.quantifier = detail::parse_quantifier(member(p, path, "quantifier"),
                                            path + "/quantifier");
    if (p.contains("selection")) {
      d.selection = detail::parse_selection(p["selection"], path + "/selection");
    }
    try {
      const StandardParams params{f.outcome_dim, d.moves.size()};
      make_standard_quantifier(d.quantifier, params);
      if (d.selection) make_standard_selection(*d.selection, params);
    } catch (const StructuralError& e) {
      fail(path, e.what());
    }
    f.players.push_back(std::move(d));
  }

  const std::uint64_t profiles = checked_product(f.move_counts());
  if (profiles > (std::uint64_t{1} << 32)) {
    fail("/", "profile space too large for a dense payoff tensor");
  }
  const std::uint64_t expected = profiles * f.outcome_dim;
  auto check_length = [&](const std::vector<double>& t, const std::string& path) {
    if (t.size() != expected) {
      fail(path, "payoff tensor has length " + std::to_string(t.size()) +
                     ", expected " + std::to_string(expected) +
                     " (product of move counts times outcome_dim)");
    }
  };
  if (j.contains("payoff")) {
    f.single_outcome_space = true;
    f.payoffs.push_back(detail::as_numbers(j["payoff"], "/payoff"));
    check_length(f.payoffs[0], "/payoff");
  } else if (j.contains("payoffs")) {
    if (f.kind != GameKind::kSimultaneous) {
      fail("/payoffs", "this game kind takes a single \"payoff\" tensor");
    }
    const json& ps = j["payoffs"];
    if (!ps.is_array() || ps.size() != f.players.size()) {
      fail("/payoffs", "expected one tensor per player");
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string path = "/payoffs/" + std::to_string(i);
      f.payoffs.push_back(detail::as_numbers(ps[i], path));
      check_length(f.payoffs.back(), path);
    }
  } else {
    fail("/payoff", "missing (give \"payoff\" or \"payoffs\")");
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) fail("/solver", "expected an object");
    if (s.contains("tol")) {
      f.solver.tol = detail::as_number(s["tol"], "/solver/tol");
      if (*f.solver.tol < 0) fail("/solver/tol", "must be >= 0");
    }
    if (s.contains("grid_depth")) {
      f.solver.grid_depth = detail::as_index(s["grid_depth"], "/solver/grid_depth");
    }
    if (s.contains("budget")) {
      f.solver.budget = detail::as_index(s["budget"], "/solver/budget");
    }
  }
  if (j.contains("contingent_tables")) {
    const json& c = j["contingent_tables"];
    try {
      f.contingent_tables = c.get<std::vector<std::vector<std::string>>>();
    } catch (const json::exception&) {
      fail("/contingent_tables", "expected an array of string arrays");
    }
  }
  return f;
}

inline GameFile parse_game_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Map the byte offset to line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("syntax error at line " + std::to_string(line) +
                     ", column " + std::to_string(col) + ": " + e.what());
  }
  return parse_game_file(j);
}

inline GameFile load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game_text(buf.str());
}

inline json to_json(const GameFile& f) {
  json j;
  j["version"] = f.version;
  j["kind"] = kind_tag(f.kind);
  j["outcome_dim"] = f.outcome_dim;
  json players = json::array();
  for (const PlayerDesc& p : f.players) {
    json d;
    d["name"] = p.name;
    d["moves"] = p.moves;
    d["quantifier"] = quantifier_to_json(p.quantifier);
    if (p.selection) d["selection"] = selection_to_json(*p.selection);
    players.push_back(std::move(d));
  }
  j[f.kind == GameKind::kSequential ? "rounds" : "players"] = std::move(players);
  if (f.single_outcome_space) {
    j["payoff"] = f.payoffs.at(0);
  } else {
    j["payoffs"] = f.payoffs;
  }
  json solver = json::object();
  if (f.solver.tol) solver["tol"] = *f.solver.tol;
  if (f.solver.grid_depth) solver["grid_depth"] = *f.solver.grid_depth;
  if (f.solver.budget) solver["budget"] = *f.solver.budget;
  if (!solver.empty()) j["solver"] = std::move(solver);
  if (!f.contingent_tables.empty()) j["contingent_tables"] = f.contingent_tables;
  return j;
}

namespace detail {

inline std::vector<Quantifier> build_quantifiers(const GameFile& f) {
  std::vector<Quantifier> qs;
  for (const PlayerDesc& p : f.players) {
    qs.push_back(make_standard_quantifier(p.quantifier,
                                          {f.outcome_dim, p.moves.size()}));
  }
  return qs;
}

inline std::vector<SelectionFunction> build_selections(const GameFile& f) {
  std::vector<SelectionFunction> ss;
  for (const PlayerDesc& p : f.players) {
    const SelectionKind kind =
        p.selection ? *p.selection : attaining_selection(p.quantifier);
    ss.push_back(make_standard_selection(kind, {f.outcome_dim, p.moves.size()}));
  }
  return ss;
}

template <typename Game>
void copy_labels(const GameFile& f, Game& g, std::vector<std::string>& names) {
  for (const PlayerDesc& p : f.players) {
    names.push_back(p.name);
    g.move_labels.push_back(p.moves);
  }
}

}  // namespace detail

inline SimultaneousGame to_simultaneous(const GameFile& f) {
  if (f.kind == GameKind::kSequential) {
    throw StructuralError("sequential game given where a simultaneous game is "
                          "needed (convert it with normal-form)");
  }
  SimultaneousGame g = [&] {
    if (f.single_outcome_space) {
      return SimultaneousGame::with_single_outcome_space(
          f.move_counts(),
          tensor_outcome(MixedRadix(f.move_counts()), f.payoffs.at(0),
                         f.outcome_dim),
          f.outcome_dim, detail::build_quantifiers(f));
    }
    return SimultaneousGame::from_tensors(
        f.move_counts(), f.payoffs,
        std::vector<std::size_t>(f.players.size(), f.outcome_dim),
        detail::build_quantifiers(f));
  }();
  detail::copy_labels(f, g, g.player_names);
  return g;
}

inline SequentialGame to_sequential(const GameFile& f) {
  if (f.kind != GameKind::kSequential) {
    throw StructuralError("expected a sequential game file");
  }
  SequentialGame g = SequentialGame::from_tensor(
      f.move_counts(), f.payoffs.at(0), f.outcome_dim,
      detail::build_quantifiers(f), detail::build_selections(f));
  detail::copy_labels(f, g, g.round_names);
  return g;
}

inline TwoPlayerStage to_stage(const GameFile& f) {
  if (f.players.size() != 2 || !f.single_outcome_space ||
      f.kind == GameKind::kSequential) {
    throw StructuralError(
        "a stage needs 2 players and a single outcome space (\"payoff\")");
  }
  const auto qs = detail::build_quantifiers(f);
  const auto ss = detail::build_selections(f);
  const std::size_t nx = f.players[0].moves.size();
  const std::size_t ny = f.players[1].moves.size();
  OutcomeTable q(nx * ny, f.outcome_dim);
  for (std::size_t k = 0; k < nx * ny; ++k) {
    q.set(k, OutcomeView(f.payoffs[0]).subspan(k * f.outcome_dim, f.outcome_dim));
  }
  return TwoPlayerStage(nx, ny, std::move(q), qs[0], qs[1], ss[0], ss[1]);
}

// Materialises the normal form of a sequential game file as a simultaneous
// game file with single outcome space. Contingent move k of round i is
// labelled "#k"; contingent_tables spells out its history -> move listing.
inline GameFile normal_form_file(const GameFile& seq,
                                 std::uint64_t budget = kDefaultBudget) {
  const SequentialGame g = to_sequential(seq);
  const SimultaneousGame nf = to_normal_form(g, budget);

  GameFile out;
  out.kind = GameKind::kSimultaneous;
  out.outcome_dim = seq.outcome_dim;
  out.single_outcome_space = true;
  out.solver = seq.solver;
  for (std::size_t i = 0; i < g.round_count(); ++i) {
    const ContingentMoveSet set(g, i);
    const MixedRadix histories = g.history_space(i);
    PlayerDesc d;
    d.name = seq.players[i].name;
    std::vector<MoveId> constants;
    for (MoveId x = 0; x < g.move_count(i); ++x) {
      constants.push_back(static_cast<MoveId>(set.constant_index(x)));
    }
    d.quantifier = qk::Restricted{
        std::make_shared<const Quantifier>(g.quantifier(i)), constants};
    std::vector<std::string> listing;
    for (std::uint64_t k = 0; k < set.size(); ++k) {
      d.moves.push_back("#" + std::to_string(k));
      const std::vector<MoveId> table = set.table(k);
      std::string text;
      for (std::uint64_t h = 0; h < table.size(); ++h) {
        if (!text.empty()) text += ", ";
        text += "(";
        const std::vector<MoveId> hist = histories.decode(h);
        for (std::size_t j = 0; j < hist.size(); ++j) {
          if (j) text += ",";
          text += seq.players[j].moves[hist[j]];
        }
        text += ")->" + seq.players[i].moves[table[h]];
      }
      listing.push_back(std::move(text));
    }
    out.players.push_back(std::move(d));
    out.contingent_tables.push_back(std::move(listing));
  }
  std::vector<double> tensor;
  tensor.reserve(nf.profile_space().size() * out.outcome_dim);
  for_each_tuple(nf.profile_space(), [&](std::span<const MoveId> s) {
    const Outcome r = nf.outcome(0, s);
    tensor.insert(tensor.end(), r.begin(), r.end());
  });
  out.payoffs.push_back(std::move(tensor));
  return out;
}

// --- profiles and strategies -------------------------------------------

inline MoveId parse_move(const json& j, const std::vector<std::string>& labels,
                         const std::string& path) {
  if (j.is_string()) {
    for (MoveId m = 0; m < labels.size(); ++m) {
      if (labels[m] == j.get<std::string>()) return m;
    }
    detail::fail(path, "unknown move label " + j.dump());
  }
  const std::size_t m = detail::as_index(j, path);
  if (m >= labels.size()) detail::fail(path, "move index out of range");
  return m;
}

// A pure profile is an array of move indices or labels; a mixed profile is
// an array of probability arrays.
using Profile = std::variant<PureProfile, MixedProfile>;

inline Profile parse_profile(const json& j, const GameFile& f,
                             double tol_simplex = 1e-6) {
  if (!j.is_array() || j.size() != f.players.size()) {
    detail::fail("/profile", "expected one entry per player (" +
                                 std::to_string(f.players.size()) + ")");
  }
  const bool mixed = std::any_of(j.begin(), j.end(),
                                 [](const json& e) { return e.is_array(); });
  if (!mixed) {
    PureProfile p;
    for (std::size_t i = 0; i < j.size(); ++i) {
      p.push_back(parse_move(j[i], f.players[i].moves,
                             "/profile/" + std::to_string(i)));
    }
    return p;
  }
  MixedProfile p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "/profile/" + std::to_string(i);
    std::vector<double> probs;
    if (j[i].is_array()) {
      probs = detail::as_numbers(j[i], path);
    } else {
      probs.assign(f.players[i].moves.size(), 0.0);
      probs.at(parse_move(j[i], f.players[i].moves, path)) = 1.0;
    }
    if (probs.size() != f.players[i].moves.size()) {
      detail::fail(path, "expected " + std::to_string(f.players[i].moves.size()) +
                             " probabilities");
    }
    try {
      p.emplace_back(std::move(probs), tol_simplex);
    } catch (const StructuralError& e) {
      detail::fail(path, e.what());
    }
  }
  return p;
}

inline json profile_to_json(const MixedProfile& p) {
  json j = json::array();
  for (const MixedStrategy& s : p) j.push_back(s.probs());
  return j;
}

// Strategies: one array per round, entries in history order.
inline SeqStrategy parse_strategy(const json& j, const GameFile& f) {
  const SequentialGame g = to_sequential(f);
  if (!j.is_array() || j.size() != g.round_count()) {
    detail::fail("/strategy", "expected one table per round");
  }
  SeqStrategy pi;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "/strategy/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != g.history_space(i).size()) {
      detail::fail(path, "expected " + std::to_string(g.history_space(i).size()) +
                             " entries");
    }
    std::vector<MoveId> table;
    for (std::size_t h = 0; h < j[i].size(); ++h) {
      table.push_back(parse_move(j[i][h], f.players[i].moves,
                                 path + "/" + std::to_string(h)));
    }
    pi.tables.push_back(std::move(table));
  }
  return pi;
}

inline json strategy_to_json(const SeqStrategy& pi) { return pi.tables; }

}  // namespace hog
