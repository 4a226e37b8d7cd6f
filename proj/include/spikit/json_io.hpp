#pragma once

// Game file format and related JSON plumbing. A game file is an object with
// "players" (array of strings), "actions" (per-player arrays of labels) and
// "payoffs" (nested arrays, outermost dimension = player 1's actions,
// innermost entry = array of n rational literals). A rational literal is an
// integer, a "p/q" string with q > 0, or an exact decimal string ("3.2").

#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spikit/game.hpp"
#include "spikit/iso.hpp"
#include "spikit/rational.hpp"

namespace spikit {

using json = nlohmann::ordered_json;

inline json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) {
    long v = r.get_num().get_si();
    if (v >= -(1L << 53) && v <= (1L << 53)) return json(v);
  }
  return json(rational_to_string(r));
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Rational(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    // shortest round-trip decimal of the double, converted exactly
    return parse_rational(j.dump());
  }
  throw parse_error("expected a rational literal, got: " + j.dump());
}

inline json payoff_vector_to_json(const PayoffVector& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rational_to_json(r));
  return a;
}

inline PayoffVector payoff_vector_from_json(const json& j, std::size_t expect) {
  if (!j.is_array() || j.size() != expect) throw parse_error("payoff entry must be an array of n rationals");
  PayoffVector v;
  v.reserve(expect);
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

namespace detail {

inline json payoff_level(const Game& g, int player, std::size_t base, std::size_t stride) {
  json arr = json::array();
  if (player == g.num_players()) return payoff_vector_to_json(g.payoffs[base]);
  std::size_t inner = stride / g.actions[player].size();
  for (int a = 0; a < g.num_actions(player); ++a)
    arr.push_back(payoff_level(g, player + 1, base + a * inner, inner));
  return arr;
}

inline void parse_payoff_level(const json& j, const Game& g, int player, std::vector<PayoffVector>& out) {
  if (player == g.num_players()) {
    out.push_back(payoff_vector_from_json(j, g.players.size()));
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != g.num_actions(player))
    throw parse_error("payoff tensor shape does not match action counts");
  for (const auto& e : j) parse_payoff_level(e, g, player + 1, out);
}

}  // namespace detail

inline json game_to_json(const Game& g) {
  json j;
  j["players"] = g.players;
  j["actions"] = g.actions;
  j["payoffs"] = detail::payoff_level(g, 0, 0, g.outcome_count());
  return j;
}

inline Game game_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("game file must be a JSON object");
  Game g;
  if (!j.contains("players") || !j["players"].is_array()) throw parse_error("game file needs a 'players' array");
  for (const auto& p : j["players"]) g.players.push_back(p.get<std::string>());
  if (!j.contains("actions") || !j["actions"].is_array() || j["actions"].size() != g.players.size())
    throw parse_error("game file needs one action-label array per player");
  g.actions.resize(g.players.size());
  for (std::size_t i = 0; i < g.players.size(); ++i)
    for (const auto& a : j["actions"][i]) g.actions[i].push_back(a.get<std::string>());
  if (!j.contains("payoffs")) throw parse_error("game file needs a 'payoffs' tensor");
  for (const auto& acts : g.actions) {
    if (acts.empty()) throw parse_error("every player needs at least one action");
    std::set<std::string> seen(acts.begin(), acts.end());
    if (seen.size() != acts.size()) throw parse_error("duplicate action labels for a player");
  }
  detail::parse_payoff_level(j["payoffs"], g, 0, g.payoffs);
  g.validate();
  return g;
}

/// Wraps nlohmann parsing to report line and column on failure.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t pos = e.byte > 0 ? e.byte - 1 : 0;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "JSON parse error at line " << line << ", column " << col << ": " << e.what();
    throw parse_error(msg.str());
  }
}

inline Game game_from_text(const std::string& text) { return game_from_json(parse_json_text(text)); }

inline json outcome_to_json(const Outcome& o) { return json(o); }

inline Outcome outcome_from_json(const json& j) {
  Outcome o;
  for (const auto& e : j) o.push_back(e.get<int>());
  return o;
}

inline json profile_to_json(const CorrelatedProfile& c) {
  json arr = json::array();
  for (const auto& [o, p] : c.support) arr.push_back({{"outcome", outcome_to_json(o)}, {"prob", rational_to_json(p)}});
  return arr;
}

inline CorrelatedProfile profile_from_json(const json& j) {
  CorrelatedProfile c;
  for (const auto& e : j) {
    Outcome o = outcome_from_json(e.at("outcome"));
    Rational p = rational_from_json(e.at("prob"));
    c.support[o] += p;
  }
  return c;
}

inline json affine_map_to_json(const AffineUtilityMap& m) {
  json j;
  json mm = json::array(), bb = json::array();
  for (const auto& x : m.m) mm.push_back(rational_to_json(x));
  for (const auto& x : m.b) bb.push_back(rational_to_json(x));
  j["m"] = mm;
  j["b"] = bb;
  return j;
}

inline AffineUtilityMap affine_map_from_json(const json& j) {
  AffineUtilityMap m;
  for (const auto& e : j.at("m")) m.m.push_back(rational_from_json(e));
  for (const auto& e : j.at("b")) m.b.push_back(rational_from_json(e));
  return m;
}

inline json isomorphism_to_json(const Isomorphism& iso) {
  json j;
  j["actions"] = iso.action_map;
  j["map"] = affine_map_to_json(iso.map);
  j["scope"] = iso.scope == IsoScope::AllPlayers ? "all-players" : "players-minus-one";
  return j;
}

inline Isomorphism isomorphism_from_json(const json& j) {
  Isomorphism iso;
  for (const auto& pm : j.at("actions")) iso.action_map.push_back(pm.get<std::vector<int>>());
  iso.map = affine_map_from_json(j.at("map"));
  iso.scope = j.value("scope", "all-players") == "players-minus-one" ? IsoScope::PlayersMinusOne
                                                                     : IsoScope::AllPlayers;
  return iso;
}

}  // namespace spikit
