// spikit: a solver toolkit for safe Pareto improvements in finite
// normal-form games. All decisions are emitted as machine-checkable JSON
// certificates; `spikit --verify cert.json` re-checks any of them.
//
// Exit codes: 0 success / decision "yes"; 1 decision "no" (not an SPI, no
// isomorphism, invalid certificate); 2 usage or input errors; 3 size-cap
// refusals.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spikit/certificate.hpp"
#include "spikit/spikit.hpp"

namespace {

using namespace spikit;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitCap = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Game load_game(const std::string& path) { return game_from_text(read_input(path)); }
json load_json(const std::string& path) { return parse_json_text(read_input(path)); }

bool g_pretty = false;

void print_game_table(const Game& g, std::ostream& os) {
  if (g.num_players() != 2) {
    os << game_to_json(g).dump(2) << "\n";
    return;
  }
  std::vector<std::vector<std::string>> cells(g.num_actions(0) + 1,
                                              std::vector<std::string>(g.num_actions(1) + 1));
  for (int c = 0; c < g.num_actions(1); ++c) cells[0][c + 1] = g.actions[1][c];
  for (int r = 0; r < g.num_actions(0); ++r) {
    cells[r + 1][0] = g.actions[0][r];
    for (int c = 0; c < g.num_actions(1); ++c) {
      const PayoffVector& u = g.payoff({r, c});
      cells[r + 1][c + 1] = rational_to_string(u[0]) + ", " + rational_to_string(u[1]);
    }
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << std::string(width[c] - row[c].size(), ' ') << row[c];
      os << (c + 1 == row.size() ? "\n" : "  ");
    }
  }
}

void emit(const json& j) {
  if (g_pretty && j.is_object() && j.contains("players")) {
    print_game_table(game_from_json(j), std::cout);
    return;
  }
  std::cout << j.dump(2) << "\n";
}

Disarmament parse_removal_spec(const Game& g, const std::string& spec) {
  Disarmament d = Disarmament::none(g);
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string::npos) throw parse_error("bad --remove spec (expected 'player:label,label;...')");
    int player = std::stoi(part.substr(0, colon)) - 1;
    if (player < 0 || player >= g.num_players()) throw parse_error("--remove: player out of range");
    // labels may themselves contain commas ("l,f"), so match greedily:
    // longest action label that prefixes the rest of the spec wins
    std::string labels = part.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < labels.size()) {
      if (labels[pos] == ',') {
        ++pos;
        continue;
      }
      int best = -1;
      std::size_t best_len = 0;
      for (int a = 0; a < g.num_actions(player); ++a) {
        const std::string& lab = g.actions[player][a];
        if (lab.size() > best_len && labels.compare(pos, lab.size(), lab) == 0 &&
            (pos + lab.size() == labels.size() || labels[pos + lab.size()] == ',')) {
          best = a;
          best_len = lab.size();
        }
      }
      if (best < 0)
        throw parse_error("--remove: unknown action label at '" + labels.substr(pos) + "' for player " +
                          std::to_string(player + 1));
      d.removed[player].insert(best);
      pos += best_len;
    }
  }
  return d;
}

Graph graph_from_json_obj(const json& j) {
  Graph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) {
    int a = e[0].get<int>(), b = e[1].get<int>();
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= g.n || a == b) throw parse_error("graph: bad edge");
    g.edges.emplace_back(a, b);
  }
  return g;
}

Digraph digraph_from_json_obj(const json& j) {
  Digraph d;
  d.n = j.at("n").get<int>();
  d.adj.assign(d.n, std::vector<int>(d.n, 0));
  if (j.contains("adj")) {
    const json& m = j["adj"];
    for (int i = 0; i < d.n; ++i)
      for (int k = 0; k < d.n; ++k) d.adj[i][k] = m.at(i).at(k).get<int>() ? 1 : 0;
  } else {
    for (const auto& e : j.at("edges")) d.adj[e[0].get<int>()][e[1].get<int>()] = 1;
  }
  return d;
}

std::vector<std::vector<Rational>> weights_from_json(const json& j, std::size_t count, int players) {
  std::vector<std::vector<Rational>> w;
  if (!j.is_array()) throw parse_error("weights file must be an array of per-player weight arrays");
  for (const auto& row : j) {
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    w.push_back(std::move(r));
  }
  if (w.size() != count || (count > 0 && static_cast<int>(w[0].size()) != players))
    throw parse_error("weights file shape does not match the reduced game");
  return w;
}

int run_reduce(const std::string& game_path) {
  Game g = load_game(game_path);
  ReductionResult r = reduce(g);
  json out = reduction_to_json(r);
  if (g_pretty) {
    print_game_table(r.game, std::cout);
    for (const auto& s : r.trace)
      std::cout << "removed " << g.actions[s.player][s.removed_action] << " (player " << s.player + 1
                << "), dominated by " << g.actions[s.player][s.dominating_action] << "\n";
  } else {
    emit(out);
  }
  return kExitYes;
}

int run_iso(const std::string& a_path, const std::string& b_path, bool pareto, bool coeff10,
            bool subgame_mode, const std::string& partial_psi) {
  Game a = load_game(a_path);
  Game b = load_game(b_path);
  json out;
  bool found = false;
  if (!partial_psi.empty()) {
    json pj = load_json(partial_psi);
    std::vector<int> psi1(a.num_actions(0), -1);
    for (auto it = pj.begin(); it != pj.end(); ++it) {
      auto from = std::find(a.actions[0].begin(), a.actions[0].end(), it.key());
      auto to = std::find(b.actions[0].begin(), b.actions[0].end(), it.value().get<std::string>());
      if (from == a.actions[0].end() || to == b.actions[0].end())
        throw parse_error("psi file: unknown action label");
      psi1[from - a.actions[0].begin()] = static_cast<int>(to - b.actions[0].begin());
    }
    for (int v : psi1)
      if (v < 0) throw parse_error("psi file: psi1 must be total on the first game's player-1 actions");
    auto isos = find_partial_isomorphisms(a, b, psi1);
    out["type"] = "iso-list";
    out["variant"] = "partial";
    json list = json::array();
    for (const auto& iso : isos) list.push_back(isomorphism_to_json(iso));
    out["isomorphisms"] = list;
    found = !isos.empty();
  } else if (subgame_mode) {
    SubgameIsoVariant variant = pareto ? SubgameIsoVariant::Pareto
                                       : coeff10 ? SubgameIsoVariant::Coeff10 : SubgameIsoVariant::Any;
    auto subs = find_subgame_isomorphisms(a, b, variant);
    out["type"] = "subgame-iso-list";
    json list = json::array();
    for (const auto& s : subs)
      list.push_back({{"subset", s.subset}, {"isomorphism", isomorphism_to_json(s.iso)}});
    out["embeddings"] = list;
    found = !subs.empty();
  } else if (pareto) {
    auto pi = exists_pareto_improving_iso(a, b);
    out["type"] = "pareto-iso";
    if (pi) {
      out["isomorphism"] = isomorphism_to_json(pi->iso);
      out["strict"] = pi->strict;
      if (pi->witness) out["witness"] = outcome_to_json(*pi->witness);
    }
    found = pi.has_value();
  } else if (coeff10) {
    found = exists_coeff10_iso(a, b);
    out["type"] = "coeff10-iso";
    out["exists"] = found;
  } else {
    auto isos = find_isomorphisms(a, b);
    out["type"] = "iso-list";
    json list = json::array();
    for (const auto& iso : isos) list.push_back(isomorphism_to_json(iso));
    out["isomorphisms"] = list;
    found = !isos.empty();
  }
  emit(out);
  return found ? kExitYes : kExitNo;
}

int run_spi_check(const std::string& def_path, const std::string& cand_path, bool u1) {
  Game def = load_game(def_path);
  Game cand = load_game(cand_path);
  ImprovementKind kind = u1 ? ImprovementKind::PlayerOne : ImprovementKind::Pareto;
  auto cert = is_spi(def, cand, kind);
  if (!cert) {
    std::cout << "{\"decision\": \"not an SPI\"}\n";
    return kExitNo;
  }
  emit(spi_certificate_to_json(def, cand, *cert));
  return kExitYes;
}

int run_disarm_verify(const std::string& game_path, const std::string& removal, bool u1) {
  Game g = load_game(game_path);
  Disarmament d = parse_removal_spec(g, removal);
  auto cert = verify_disarmament(g, d, u1 ? ImprovementKind::PlayerOne : ImprovementKind::Pareto);
  if (!cert) {
    std::cout << "{\"decision\": \"not an SPI\"}\n";
    return kExitNo;
  }
  emit(disarm_certificate_to_json(g, d, *cert));
  return kExitYes;
}

int run_disarm_search(const std::string& game_path, int unilateral, std::uint64_t max_subsets, bool u1) {
  Game g = load_game(game_path);
  DisarmMode mode = unilateral > 0 ? DisarmMode::Unilateral : DisarmMode::Any;
  auto hits = search_disarmament(g, mode, unilateral - 1,
                                 u1 ? ImprovementKind::PlayerOne : ImprovementKind::Pareto, max_subsets);
  json out;
  out["type"] = "disarm-search";
  json list = json::array();
  for (const auto& h : hits) list.push_back(disarm_certificate_to_json(g, h.d, h.cert));
  out["hits"] = list;
  emit(out);
  return hits.empty() ? kExitNo : kExitYes;
}

int run_token(const std::string& mode, const std::string& game_path, const std::string& weights_path) {
  Game g = load_game(game_path);
  if (!weights_path.empty()) {
    RealizationMode rmode = mode == "pure" ? RealizationMode::Pure : RealizationMode::Correlated;
    if (mode == "simple") throw parse_error("token --optimize applies to pure or correlated mode");
    std::vector<PayoffVector> V = payoff_set(reduce(g).game);
    TokenObjective obj{weights_from_json(load_json(weights_path), V.size(), g.num_players())};
    TokenOptResult res = optimize_token(g, rmode, obj);
    json out;
    out["type"] = "token-opt";
    out["status"] = res.status == OptStatus::Attained ? "attained"
                    : res.status == OptStatus::Supremum ? "supremum" : "no-spi";
    if (res.status == OptStatus::NoSpi) {
      emit(out);
      return kExitNo;
    }
    out["value"] = rational_to_json(res.value);
    if (res.spi) out["spi"] = token_spi_to_json(g, *res.spi);
    if (res.status == OptStatus::Supremum) {
      out["family"] = {{"rule", "(1-2e)*psi_star + e*psi_s + e*id, e in (0, 1/2)"},
                       {"psi_star", affine_map_to_json(res.family_star->map)},
                       {"psi_s", affine_map_to_json(res.family_s->map)}};
      out["sample_at_1_4"] = token_spi_to_json(g, *res.sample);
    }
    emit(out);
    return kExitYes;
  }
  std::optional<TokenSpi> spi;
  if (mode == "simple")
    spi = simple_token_spi(g, RealizationMode::Pure);
  else if (mode == "simple-correlated")
    spi = simple_token_spi(g, RealizationMode::Correlated);
  else if (mode == "pure")
    spi = pure_iso_token_spi(g);
  else if (mode == "correlated")
    spi = correlated_iso_token_spi(g);
  else
    throw parse_error("unknown token mode: " + mode);
  if (!spi) {
    std::cout << "{\"decision\": \"no token SPI\"}\n";
    return kExitNo;
  }
  emit(token_spi_to_json(g, *spi));
  return kExitYes;
}

int run_token_gpr(const std::string& inst_path) {
  VectorRemapInstance inst = vector_remap_instance_from_json(load_json(inst_path));
  auto remap = gpr_decide(inst);
  if (!remap) {
    std::cout << "{\"decision\": \"no remapping\"}\n";
    return kExitNo;
  }
  emit(gpr_certificate_to_json(inst, *remap));
  return kExitYes;
}

int run_remap_omni(const std::string& game_path, const std::string& mode, const std::string& weights_path) {
  Game g = load_game(game_path);
  RealizationMode rmode = mode == "pure" ? RealizationMode::Pure : RealizationMode::Correlated;
  if (!weights_path.empty()) {
    std::size_t K = reduce(g).game.outcome_count();
    OmniObjective obj{weights_from_json(load_json(weights_path), K, g.num_players())};
    OmniOptResult res = omni_optimize(g, rmode, obj);
    json out;
    out["type"] = "omni-opt";
    out["status"] = res.status == OptStatus::Attained ? "attained"
                    : res.status == OptStatus::Supremum ? "supremum" : "no-spi";
    if (res.status == OptStatus::NoSpi) {
      emit(out);
      return kExitNo;
    }
    out["value"] = rational_to_json(res.value);
    if (res.remap) out["remap"] = omni_remap_to_json(g, *res.remap);
    if (res.status == OptStatus::Supremum) out["sample_at_1_2"] = omni_remap_to_json(g, *res.sample);
    emit(out);
    return kExitYes;
  }
  auto remap = omni_exists(g, rmode);
  if (!remap) {
    std::cout << "{\"decision\": \"no omnilateral remapping SPI\"}\n";
    return kExitNo;
  }
  emit(omni_remap_to_json(g, *remap));
  return kExitYes;
}

int run_remap_uni(const std::string& game_path, const std::string& psi_path, std::uint64_t cap) {
  Game g = load_game(game_path);
  if (psi_path.empty()) {
    auto hits = uni_search(g, cap);
    json out;
    out["type"] = "uni-search";
    json list = json::array();
    for (const auto& [remap, cert] : hits) {
      UniVerifyResult res = uni_verify(g, remap);
      list.push_back(uni_remap_to_json(g, remap, res));
    }
    out["hits"] = list;
    emit(out);
    return hits.empty() ? kExitNo : kExitYes;
  }
  json pj = load_json(psi_path);
  ReductionResult r = reduce(g);
  std::vector<int> psi1(r.game.num_actions(0), -1);
  for (auto it = pj.begin(); it != pj.end(); ++it) {
    auto from = std::find(r.game.actions[0].begin(), r.game.actions[0].end(), it.key());
    auto to = std::find(g.actions[0].begin(), g.actions[0].end(), it.value().get<std::string>());
    if (from == r.game.actions[0].end())
      throw parse_error("psi file: '" + it.key() + "' is not a reduced player-1 action");
    if (to == g.actions[0].end()) throw parse_error("psi file: unknown target action label");
    psi1[from - r.game.actions[0].begin()] = static_cast<int>(to - g.actions[0].begin());
  }
  for (int v : psi1)
    if (v < 0) throw parse_error("psi file: psi1 must be total on the reduced player-1 actions");
  UniRemap remap{psi1};
  UniVerifyResult res = uni_verify(g, remap);
  json out = uni_remap_to_json(g, remap, res);
  if (!res.cert) {
    out["decision"] = "not an SPI";
    emit(out);
    return kExitNo;
  }
  emit(out);
  return kExitYes;
}

int run_gen(const std::string& name, const std::vector<std::string>& args, bool truth,
            int players, const std::string& actions_spec, long lo, long hi, std::uint64_t seed) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw parse_error("gen " + name + ": expected " + std::to_string(k) + " file argument(s)");
  };
  if (name == "seaway" || name == "seaway_token" || name == "negotiation" || name == "temptation" ||
      name == "why_iso") {
    need(0);
    emit(game_to_json(example_game(name)));
    return kExitYes;
  }
  if (name == "random") {
    need(0);
    std::vector<int> actions;
    std::stringstream ss(actions_spec);
    std::string part;
    while (std::getline(ss, part, ',')) actions.push_back(std::stoi(part));
    if (static_cast<int>(actions.size()) == 1) actions.assign(players, actions[0]);
    emit(game_to_json(random_game(players, actions, lo, hi, seed)));
    return kExitYes;
  }
  if (name == "gpr-graph") {
    need(1);
    Graph graph = graph_from_json_obj(load_json(args[0]));
    emit(vector_remap_instance_to_json(gen_gpr_from_graph(graph)));
    return kExitYes;
  }
  GadgetInstance inst;
  if (name == "disarm-verify-gadget") {
    need(2);
    inst = gen_disarm_verify_gadget(load_game(args[0]), load_game(args[1]));
  } else if (name == "disarm-search-gadget") {
    need(2);
    inst = gen_disarm_search_gadget(load_game(args[0]), load_game(args[1]));
  } else if (name == "uni-remap-gadget") {
    need(2);
    inst = gen_uni_remap_gadget(digraph_from_json_obj(load_json(args[0])), digraph_from_json_obj(load_json(args[1])));
  } else {
    throw parse_error("gen: unknown generator '" + name + "'");
  }
  if (truth) {
    json out;
    out["game"] = game_to_json(inst.game);
    out["truth"] = inst.truth;
    out["note"] = inst.note;
    json removed = json::array();
    for (const auto& s : inst.planted.removed) removed.push_back(std::vector<int>(s.begin(), s.end()));
    out["planted_disarmament"] = removed;
    emit(out);
  } else {
    emit(game_to_json(inst.game));
  }
  return kExitYes;
}

int run_oracle(const std::string& which, const std::vector<std::string>& args) {
  if (which == "is-spi") {
    if (args.size() != 2) throw parse_error("oracle is-spi: expected two game files");
    bool yes = brute_is_spi(load_game(args[0]), load_game(args[1]));
    std::cout << (yes ? "{\"decision\": true}" : "{\"decision\": false}") << "\n";
    return yes ? kExitYes : kExitNo;
  }
  if (which == "coloring") {
    if (args.size() != 1) throw parse_error("oracle coloring: expected one graph file");
    bool yes = brute_coloring(graph_from_json_obj(load_json(args[0])));
    std::cout << (yes ? "{\"decision\": true}" : "{\"decision\": false}") << "\n";
    return yes ? kExitYes : kExitNo;
  }
  if (which == "pure-token") {
    if (args.size() != 1) throw parse_error("oracle pure-token: expected one game file");
    bool yes = brute_pure_token(load_game(args[0]));
    std::cout << (yes ? "{\"decision\": true}" : "{\"decision\": false}") << "\n";
    return yes ? kExitYes : kExitNo;
  }
  throw parse_error("oracle: unknown oracle '" + which + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spikit: safe Pareto improvements for finite normal-form games"};
  app.require_subcommand(0, 1);
  std::string verify_path;
  bool lp_debug = false;
  app.add_option("--verify", verify_path, "re-check an emitted certificate");
  app.add_flag("--pretty", g_pretty, "render games as tables instead of JSON");
  app.add_flag("--lp-debug", lp_debug, "dump simplex pivots to stderr");

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "iterated elimination of strictly dominated actions");
  std::string reduce_game;
  reduce_cmd->add_option("game", reduce_game)->required();

  // iso
  auto* iso_cmd = app.add_subcommand("iso", "isomorphism search between two games");
  std::string iso_a, iso_b, iso_partial;
  bool iso_pareto = false, iso_coeff10 = false, iso_subgame = false;
  iso_cmd->add_option("a", iso_a)->required();
  iso_cmd->add_option("b", iso_b)->required();
  iso_cmd->add_flag("--pareto", iso_pareto);
  iso_cmd->add_flag("--coeff10", iso_coeff10);
  iso_cmd->add_flag("--subgame", iso_subgame);
  iso_cmd->add_option("--partial", iso_partial, "psi1 file: player-1 action label map");

  // spi check
  auto* spi_cmd = app.add_subcommand("spi", "SPI decisions");
  auto* spi_check = spi_cmd->add_subcommand("check", "decide whether candidate is an SPI on default");
  std::string spi_def, spi_cand;
  bool spi_u1 = false;
  spi_check->add_option("default", spi_def)->required();
  spi_check->add_option("candidate", spi_cand)->required();
  spi_check->add_flag("--u1", spi_u1, "safe u1 improvements instead of Pareto");

  // disarm
  auto* disarm_cmd = app.add_subcommand("disarm", "disarmament SPIs");
  auto* disarm_verify_cmd = disarm_cmd->add_subcommand("verify", "verify a given disarmament");
  std::string dv_game, dv_remove;
  bool dv_u1 = false;
  disarm_verify_cmd->add_option("game", dv_game)->required();
  disarm_verify_cmd->add_option("--remove", dv_remove, "e.g. \"1:FA,FN;2:\"")->required();
  disarm_verify_cmd->add_flag("--u1", dv_u1);
  auto* disarm_search_cmd = disarm_cmd->add_subcommand("search", "search all SPI disarmaments");
  std::string ds_game;
  int ds_unilateral = 0;
  std::uint64_t ds_cap = default_search_cap();
  bool ds_u1 = false;
  disarm_search_cmd->add_option("game", ds_game)->required();
  disarm_search_cmd->add_option("--unilateral", ds_unilateral, "restrict removals to this player (1-based)");
  disarm_search_cmd->add_option("--max-subsets", ds_cap);
  disarm_search_cmd->add_flag("--u1", ds_u1);

  // token
  auto* token_cmd = app.add_subcommand("token", "token-game SPIs");
  std::string token_mode, token_game, token_weights;
  token_cmd->add_option("mode", token_mode, "simple | simple-correlated | pure | correlated | gpr")->required();
  token_cmd->add_option("input", token_game, "game file (instance file for gpr)")->required();
  token_cmd->add_option("--optimize", token_weights, "weights file: per reduced payoff, per player");

  // remap
  auto* remap_cmd = app.add_subcommand("remap", "default-remapping SPIs");
  auto* remap_omni = remap_cmd->add_subcommand("omni", "omnilateral default remapping");
  std::string ro_game, ro_mode = "pure", ro_weights;
  remap_omni->add_option("game", ro_game)->required();
  remap_omni->add_option("--mode", ro_mode, "pure | correlated");
  remap_omni->add_option("--optimize", ro_weights, "weights file: per reduced outcome, per player");
  auto* remap_uni = remap_cmd->add_subcommand("uni", "unilateral default remapping (player 1 commits)");
  std::string ru_game, ru_psi;
  std::uint64_t ru_cap = default_search_cap();
  remap_uni->add_option("game", ru_game)->required();
  remap_uni->add_option("--psi", ru_psi, "psi1 file: reduced-action -> action label map");
  remap_uni->add_option("--max-candidates", ru_cap);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "instance generators");
  std::string gen_name;
  std::vector<std::string> gen_args;
  bool gen_truth = false;
  int gen_players = 2;
  std::string gen_actions = "3";
  long gen_lo = -5, gen_hi = 5;
  std::uint64_t gen_seed = 0;
  gen_cmd->add_option("name", gen_name)->required();
  gen_cmd->add_option("args", gen_args, "input files for gadget generators");
  gen_cmd->add_flag("--truth", gen_truth, "emit {game, truth, ...} instead of the bare game");
  gen_cmd->add_option("--players", gen_players);
  gen_cmd->add_option("--actions", gen_actions, "per-player action counts, e.g. 3 or 3,4");
  gen_cmd->add_option("--lo", gen_lo);
  gen_cmd->add_option("--hi", gen_hi);
  gen_cmd->add_option("--seed", gen_seed);

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference oracles");
  std::string oracle_which;
  std::vector<std::string> oracle_args;
  oracle_cmd->add_option("which", oracle_which, "is-spi | coloring | pure-token")->required();
  oracle_cmd->add_option("args", oracle_args);

  CLI11_PARSE(app, argc, argv);
  if (lp_debug) setenv("SPIKIT_LP_DEBUG", "1", 1);

  try {
    if (!verify_path.empty()) {
      bool ok = verify_certificate(load_json(verify_path));
      std::cout << (ok ? "{\"certificate\": \"valid\"}" : "{\"certificate\": \"invalid\"}") << "\n";
      return ok ? kExitYes : kExitNo;
    }
    if (*reduce_cmd) return run_reduce(reduce_game);
    if (*iso_cmd) return run_iso(iso_a, iso_b, iso_pareto, iso_coeff10, iso_subgame, iso_partial);
    if (*spi_check) return run_spi_check(spi_def, spi_cand, spi_u1);
    if (*disarm_verify_cmd) return run_disarm_verify(dv_game, dv_remove, dv_u1);
    if (*disarm_search_cmd) return run_disarm_search(ds_game, ds_unilateral, ds_cap, ds_u1);
    if (*token_cmd) {
      if (token_mode == "gpr") return run_token_gpr(token_game);
      return run_token(token_mode, token_game, token_weights);
    }
    if (*remap_omni) return run_remap_omni(ro_game, ro_mode, ro_weights);
    if (*remap_uni) return run_remap_uni(ru_game, ru_psi, ru_cap);
    if (*gen_cmd) return run_gen(gen_name, gen_args, gen_truth, gen_players, gen_actions, gen_lo, gen_hi, gen_seed);
    if (*oracle_cmd) return run_oracle(oracle_which, oracle_args);
    std::cerr << app.help() << "\n";
    return kExitError;
  } catch (const size_cap_error& e) {
    std::cerr << "size cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
