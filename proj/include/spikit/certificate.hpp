#pragma once

// Machine-checkable certificates. Every decision the toolkit emits is a JSON
// object that embeds its inputs; verify_certificate re-checks the claim from
// the raw payoffs (direct arithmetic re-derivation, never trusting the
// solver's search). A perturbed payoff anywhere must make verification fail.

#include <string>

#include "spikit/default_remap.hpp"
#include "spikit/disarm.hpp"
#include "spikit/json_io.hpp"
#include "spikit/oracle.hpp"
#include "spikit/spi.hpp"
#include "spikit/token.hpp"

namespace spikit {

inline json realization_to_json(const Realization& r) {
  if (std::holds_alternative<Outcome>(r)) return json{{"outcome", outcome_to_json(std::get<Outcome>(r))}};
  return json{{"mix", profile_to_json(std::get<CorrelatedProfile>(r))}};
}

inline Realization realization_from_json(const json& j) {
  if (j.contains("outcome")) return outcome_from_json(j["outcome"]);
  return profile_from_json(j.at("mix"));
}

inline json reduction_to_json(const ReductionResult& r) {
  json steps = json::array();
  for (const auto& s : r.trace)
    steps.push_back({{"player", s.player}, {"removed", s.removed_action}, {"dominator", s.dominating_action}});
  return json{{"game", game_to_json(r.game)}, {"kept", r.kept}, {"trace", steps}};
}

// ---------------------------------------------------------------------------
// SPI certificates (spi check / disarm verify / disarm search entries)

inline json spi_certificate_to_json(const Game& def, const Game& cand, const SpiCertificate& cert) {
  json j;
  j["type"] = "spi";
  j["improvement"] = cert.improvement == ImprovementKind::Pareto ? "pareto" : "u1";
  j["kind"] = cert.kind == SpiCertificate::Kind::Simple ? "simple" : "isomorphism";
  j["default"] = game_to_json(def);
  j["candidate"] = game_to_json(cand);
  j["reduced_default_kept"] = cert.reduced_default.kept;
  j["reduced_candidate_kept"] = cert.reduced_candidate.kept;
  if (cert.iso) j["isomorphism"] = isomorphism_to_json(*cert.iso);
  j["witness_source"] = outcome_to_json(cert.witness_source);
  if (cert.witness_target) j["witness_target"] = outcome_to_json(*cert.witness_target);
  return j;
}

/// Re-checks an SPI certificate from the embedded games only: re-reduces,
/// re-verifies the isomorphism payoff equation or the all-pairs dominance,
/// and the strict witness.
inline bool verify_spi_certificate_json(const json& j) {
  Game def = game_from_json(j.at("default"));
  Game cand = game_from_json(j.at("candidate"));
  if (def.num_players() != cand.num_players()) return false;
  ImprovementKind kind = j.value("improvement", "pareto") == "u1" ? ImprovementKind::PlayerOne
                                                                  : ImprovementKind::Pareto;
  ReductionResult rd = reduce(def), rc = reduce(cand);
  if (json(rd.kept) != j.at("reduced_default_kept")) return false;
  if (json(rc.kept) != j.at("reduced_candidate_kept")) return false;
  Outcome witness = outcome_from_json(j.at("witness_source"));
  if (!rd.game.valid_outcome(witness)) return false;
  if (j.at("kind") == "simple") {
    for (const auto& s : rd.game.payoffs)
      for (const auto& t : rc.game.payoffs)
        if (!detail::weak_improve(t, s, kind)) return false;
    for (const auto& t : rc.game.payoffs)
      if (!detail::strict_improve(t, rd.game.payoff(witness), kind)) return false;
    return true;
  }
  if (!j.contains("isomorphism")) return false;
  Isomorphism iso = isomorphism_from_json(j["isomorphism"]);
  if (iso.scope == IsoScope::AllPlayers) {
    if (!is_isomorphism(rd.game, rc.game, iso)) return false;
  } else {
    // re-derive the partial-isomorphism set and re-check the universal
    // Pareto-improvement condition
    if (rd.game.num_players() < 2) return false;
    if (static_cast<int>(iso.action_map.size()) != rd.game.num_players()) return false;
    auto isos = find_partial_isomorphisms(rd.game, rc.game, iso.action_map[0]);
    bool present = false;
    for (const auto& cand_iso : isos) {
      if (!iso_weakly_improving(rd.game, rc.game, cand_iso)) return false;
      if (cand_iso.action_map == iso.action_map) present = true;
    }
    if (!present) return false;
    return strictly_improves(rc.game.payoff(iso.apply(witness)), rd.game.payoff(witness));
  }
  bool weak = true;
  for_each_outcome(rd.game, [&](const Outcome& o) {
    if (weak && !detail::weak_improve(rc.game.payoff(iso.apply(o)), rd.game.payoff(o), kind)) weak = false;
  });
  if (!weak) return false;
  return detail::strict_improve(rc.game.payoff(iso.apply(witness)), rd.game.payoff(witness), kind);
}

inline json disarm_certificate_to_json(const Game& g, const Disarmament& d, const SpiCertificate& cert) {
  json removed = json::array();
  for (const auto& s : d.removed) removed.push_back(std::vector<int>(s.begin(), s.end()));
  json j = spi_certificate_to_json(g, remove_actions(g, d), cert);
  j["type"] = "disarm";
  j["game"] = game_to_json(g);
  j["removed"] = removed;
  return j;
}

inline bool verify_disarm_certificate_json(const json& j) {
  Game g = game_from_json(j.at("game"));
  Disarmament d{std::vector<std::set<int>>(g.players.size())};
  const json& removed = j.at("removed");
  if (removed.size() != g.players.size()) return false;
  for (std::size_t i = 0; i < removed.size(); ++i)
    for (const auto& a : removed[i]) d.removed[i].insert(a.get<int>());
  // the embedded default/candidate pair must be exactly the disarmament
  if (game_from_json(j.at("default")) != g) return false;
  if (game_from_json(j.at("candidate")) != remove_actions(g, d)) return false;
  return verify_spi_certificate_json(j);
}

// ---------------------------------------------------------------------------
// token certificates

inline json token_spi_to_json(const Game& g, const TokenSpi& spi) {
  json j;
  j["type"] = "token";
  j["game"] = game_to_json(g);
  j["kind"] = spi.kind == TokenSpi::Kind::Simple ? "simple" : "isomorphism";
  j["token_game"] = game_to_json(spi.token);
  if (spi.iso) j["isomorphism"] = isomorphism_to_json(*spi.iso);
  if (spi.remap) {
    j["map"] = affine_map_to_json(spi.remap->map);
    json reals = json::array();
    for (const auto& [v, real] : spi.remap->realizations) {
      json e = realization_to_json(real);
      e["payoff"] = payoff_vector_to_json(v);
      reals.push_back(std::move(e));
    }
    j["realizations"] = reals;
  }
  if (spi.simple) {
    json e = realization_to_json(spi.simple->second);
    e["payoff"] = payoff_vector_to_json(spi.simple->first);
    j["realization"] = std::move(e);
  }
  j["witness_payoff"] = payoff_vector_to_json(spi.witness);
  return j;
}

inline TokenSpi token_spi_from_json(const json& j, const Game& g) {
  TokenSpi spi;
  spi.kind = j.at("kind") == "simple" ? TokenSpi::Kind::Simple : TokenSpi::Kind::Iso;
  spi.token = game_from_json(j.at("token_game"));
  if (j.contains("isomorphism")) spi.iso = isomorphism_from_json(j["isomorphism"]);
  if (j.contains("map")) {
    UtilityRemap remap;
    remap.map = affine_map_from_json(j["map"]);
    for (const auto& e : j.at("realizations"))
      remap.realizations.emplace_back(payoff_vector_from_json(e.at("payoff"), g.players.size()),
                                      realization_from_json(e));
    spi.remap = std::move(remap);
  }
  if (j.contains("realization"))
    spi.simple = {payoff_vector_from_json(j["realization"].at("payoff"), g.players.size()),
                  realization_from_json(j["realization"])};
  spi.witness = payoff_vector_from_json(j.at("witness_payoff"), g.players.size());
  return spi;
}

inline bool verify_token_certificate_json(const json& j) {
  Game g = game_from_json(j.at("game"));
  try {
    TokenSpi spi = token_spi_from_json(j, g);
    return verify_token_spi(g, spi);
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// omnilateral / unilateral remap certificates

inline json omni_remap_to_json(const Game& g, const OmniRemap& remap) {
  json j;
  j["type"] = "omni";
  j["game"] = game_to_json(g);
  json entries = json::array();
  for (const auto& [from, real] : remap.map) {
    json e = realization_to_json(real);
    e["from"] = outcome_to_json(from);
    entries.push_back(std::move(e));
  }
  j["map"] = entries;
  j["witness"] = outcome_to_json(remap.witness);
  return j;
}

inline bool verify_omni_certificate_json(const json& j) {
  Game g = game_from_json(j.at("game"));
  OmniRemap remap;
  for (const auto& e : j.at("map")) remap.map.emplace_back(outcome_from_json(e.at("from")), realization_from_json(e));
  remap.witness = outcome_from_json(j.at("witness"));
  try {
    return verify_omni_remap(g, remap);
  } catch (const std::exception&) {
    return false;
  }
}

inline json uni_remap_to_json(const Game& g, const UniRemap& remap, const UniVerifyResult& res) {
  json j;
  j["type"] = "uni";
  j["game"] = game_to_json(g);
  j["psi1"] = remap.psi1;
  j["image"] = res.image;
  j["commit_kept"] = res.commit_reduction.kept;
  json isos = json::array();
  for (const auto& iso : res.partial_isos) isos.push_back(isomorphism_to_json(iso));
  j["partial_isomorphisms"] = isos;
  if (res.cert) {
    const SpiCertificate& cert = *res.cert;
    j["condition"] = cert.kind == SpiCertificate::Kind::Simple ? 1 : 2;
    j["witness_source"] = outcome_to_json(cert.witness_source);
    if (cert.witness_target) j["witness_target"] = outcome_to_json(*cert.witness_target);
    if (cert.iso) j["isomorphism"] = isomorphism_to_json(*cert.iso);
  }
  if (res.flagged_all_dominating) j["note"] = "all commitment outcomes dominate the reduced default, but the characterization lemma does not certify this case";
  return j;
}

/// Re-runs uni_verify on the embedded game and compares the verdict; the
/// universal quantifier over partial isomorphisms cannot be checked without
/// re-enumeration, which is exactly what uni_verify does.
inline bool verify_uni_certificate_json(const json& j) {
  Game g = game_from_json(j.at("game"));
  UniRemap remap{j.at("psi1").get<std::vector<int>>()};
  try {
    UniVerifyResult res = uni_verify(g, remap);
    if (!res.cert) return false;
    if (json(res.commit_reduction.kept) != j.at("commit_kept")) return false;
    if (j.contains("witness_source") &&
        outcome_from_json(j["witness_source"]) != res.cert->witness_source)
      return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// gpr certificates

inline json vector_remap_instance_to_json(const VectorRemapInstance& inst) {
  json s = json::array(), t = json::array();
  for (const auto& v : inst.inputs) s.push_back(payoff_vector_to_json(v));
  for (const auto& v : inst.targets) t.push_back(payoff_vector_to_json(v));
  return json{{"dim", inst.dim}, {"s", s}, {"t", t}};
}

inline VectorRemapInstance vector_remap_instance_from_json(const json& j) {
  VectorRemapInstance inst;
  inst.dim = j.at("dim").get<int>();
  for (const auto& v : j.at("s")) inst.inputs.push_back(payoff_vector_from_json(v, inst.dim));
  for (const auto& v : j.at("t")) inst.targets.push_back(payoff_vector_from_json(v, inst.dim));
  return inst;
}

inline json gpr_certificate_to_json(const VectorRemapInstance& inst, const VectorRemap& remap) {
  json j;
  j["type"] = "gpr";
  j["instance"] = vector_remap_instance_to_json(inst);
  j["map"] = affine_map_to_json(remap.map);
  json assign = json::array();
  for (const auto& [from, to] : remap.assignment)
    assign.push_back({{"from", payoff_vector_to_json(from)}, {"to", payoff_vector_to_json(to)}});
  j["assignment"] = assign;
  return j;
}

inline bool verify_gpr_certificate_json(const json& j) {
  VectorRemapInstance inst = vector_remap_instance_from_json(j.at("instance"));
  AffineUtilityMap map = affine_map_from_json(j.at("map"));
  if (static_cast<int>(map.m.size()) != inst.dim) return false;
  for (const auto& m : map.m)
    if (m <= 0) return false;
  std::vector<PayoffVector> S(inst.inputs);
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::vector<PayoffVector> pool(S);
  pool.insert(pool.end(), inst.targets.begin(), inst.targets.end());
  std::sort(pool.begin(), pool.end());
  const json& assign = j.at("assignment");
  if (assign.size() != S.size()) return false;
  bool strict = false;
  for (std::size_t k = 0; k < S.size(); ++k) {
    PayoffVector from = payoff_vector_from_json(assign[k].at("from"), inst.dim);
    PayoffVector to = payoff_vector_from_json(assign[k].at("to"), inst.dim);
    if (from != S[k]) return false;
    if (map.apply(from) != to) return false;
    if (!std::binary_search(pool.begin(), pool.end(), to)) return false;
    if (!weakly_improves(to, from)) return false;
    strict = strict || strictly_improves(to, from);
  }
  return strict;
}

// ---------------------------------------------------------------------------
// dispatch

inline bool verify_certificate(const json& j);

namespace detail {

// composite outputs (search results, optimization reports) verify when every
// embedded certificate does
inline bool verify_all(const json& arr) {
  for (const auto& e : arr)
    if (!verify_certificate(e)) return false;
  return true;
}

}  // namespace detail

inline bool verify_certificate(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "spi") return verify_spi_certificate_json(j);
    if (type == "disarm") return verify_disarm_certificate_json(j);
    if (type == "token") return verify_token_certificate_json(j);
    if (type == "omni") return verify_omni_certificate_json(j);
    if (type == "uni") return verify_uni_certificate_json(j);
    if (type == "gpr") return verify_gpr_certificate_json(j);
    if (type == "disarm-search" || type == "uni-search") return detail::verify_all(j.at("hits"));
    if (type == "token-opt" || type == "omni-opt") {
      const std::string status = j.at("status").get<std::string>();
      if (status == "no-spi") return false;  // nothing to certify
      bool ok = true;
      const char* key = type == "token-opt" ? "spi" : "remap";
      if (j.contains(key)) ok = ok && verify_certificate(j[key]);
      if (j.contains("sample_at_1_4")) ok = ok && verify_certificate(j["sample_at_1_4"]);
      if (j.contains("sample_at_1_2")) ok = ok && verify_certificate(j["sample_at_1_2"]);
      return ok && (j.contains(key) || j.contains("sample_at_1_4") || j.contains("sample_at_1_2"));
    }
  } catch (const std::exception&) {
    return false;
  }
  throw parse_error("unknown certificate type: " + type);
}

}  // namespace spikit
