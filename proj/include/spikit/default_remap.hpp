#pragma once

// Default-remapping SPIs. Omnilateral: all players can reveal their default
// outcome and jointly remap it; an SPI exists iff some reduced outcome is
// Pareto sub-optimal in the feasible set. Unilateral: Player 1 commits to a
// function of their own default action; verification runs the reduction under
// commitment and the all-isomorphisms-improving condition.

#include <map>
#include <optional>
#include <vector>

#include <cmath>

#include "spikit/disarm.hpp"
#include "spikit/spi.hpp"
#include "spikit/token.hpp"

namespace spikit {

/// Omnilateral remap: each reduced-game outcome (in original index space) is
/// mapped to a realization; identity entries are stored explicitly.
struct OmniRemap {
  std::vector<std::pair<Outcome, Realization>> map;  // canonical reduced-outcome order
  Outcome witness;                                   // strictly improved reduced outcome
};

inline bool verify_omni_remap(const Game& g, const OmniRemap& remap) {
  ReductionResult r = reduce(g);
  if (remap.map.size() != r.game.outcome_count()) return false;
  std::size_t pos = 0;
  bool ok = true, strict_seen = false, witness_ok = false;
  for_each_outcome(r.game, [&](const Outcome& o) {
    if (!ok) return;
    Outcome orig = r.to_original(o);
    if (remap.map[pos].first != orig) {
      ok = false;
      return;
    }
    PayoffVector to = realization_payoff(g, remap.map[pos].second);
    const PayoffVector& from = g.payoff(orig);
    if (!weakly_improves(to, from)) ok = false;
    if (strictly_improves(to, from)) {
      strict_seen = true;
      if (orig == remap.witness) witness_ok = true;
    }
    ++pos;
  });
  return ok && strict_seen && witness_ok;
}

/// Omnilateral existence. Pure: scan each reduced outcome for a strict
/// dominator in u(A). Correlated: the one monolithic LP over all reduced
/// outcomes, SPI iff the total gain is positive.
inline std::optional<OmniRemap> omni_exists(const Game& g, RealizationMode mode) {
  ReductionResult r = reduce(g);
  OmniRemap out;
  bool any_strict = false;
  if (mode == RealizationMode::Pure) {
    for_each_outcome(r.game, [&](const Outcome& o) {
      Outcome orig = r.to_original(o);
      const PayoffVector& from = g.payoff(orig);
      std::optional<Outcome> target;
      for (std::size_t idx = 0; idx < g.outcome_count() && !target; ++idx)
        if (strictly_improves(g.payoffs[idx], from)) target = g.unflatten(idx);
      if (target && !any_strict) {
        any_strict = true;
        out.witness = orig;
      }
      out.map.emplace_back(orig, target ? Realization(*target) : Realization(orig));
    });
    if (!any_strict) return std::nullopt;
    return out;
  }

  detail::PayoffClasses classes = detail::payoff_classes(g);
  const std::size_t C = classes.payoffs.size();
  const int n = g.num_players();
  std::vector<Outcome> reduced_orig;
  for_each_outcome(r.game, [&](const Outcome& o) { reduced_orig.push_back(r.to_original(o)); });
  const std::size_t K = reduced_orig.size();
  LinearProgram lp;
  std::vector<std::vector<int>> q(K, std::vector<int>(C));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t c = 0; c < C; ++c) q[k][c] = lp.add_var(Rational(0));
  Rational base = 0;
  for (std::size_t k = 0; k < K; ++k) {
    LinConstraint sum1;
    for (std::size_t c = 0; c < C; ++c) sum1.terms.emplace_back(q[k][c], Rational(1));
    sum1.cmp = Cmp::EQ;
    sum1.rhs = 1;
    lp.add_constraint(std::move(sum1));
    const PayoffVector& from = g.payoff(reduced_orig[k]);
    for (int i = 0; i < n; ++i) {
      LinConstraint ge;
      for (std::size_t c = 0; c < C; ++c) ge.terms.emplace_back(q[k][c], classes.payoffs[c][i]);
      ge.cmp = Cmp::GE;
      ge.rhs = from[i];
      lp.add_constraint(std::move(ge));
      base += from[i];
    }
  }
  lp.objective.assign(lp.num_vars, Rational(0));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t c = 0; c < C; ++c) {
      Rational coef = 0;
      for (int i = 0; i < n; ++i) coef += classes.payoffs[c][i];
      lp.objective[q[k][c]] = coef;
    }
  LpSolution sol = solve(lp);
  if (!sol.optimal() || sol.value - base <= 0) return std::nullopt;
  for (std::size_t k = 0; k < K; ++k) {
    CorrelatedProfile prof;
    for (std::size_t c = 0; c < C; ++c)
      if (sol.assignment[q[k][c]] > 0) prof.support[classes.rep[c]] += sol.assignment[q[k][c]];
    PayoffVector to = expected_payoff(g, prof);
    if (!any_strict && strictly_improves(to, g.payoff(reduced_orig[k]))) {
      any_strict = true;
      out.witness = reduced_orig[k];
    }
    out.map.emplace_back(reduced_orig[k], std::move(prof));
  }
  if (!any_strict) return std::nullopt;  // unreachable: total gain positive
  return out;
}

struct OmniObjective {
  std::vector<std::vector<Rational>> weights;  // per reduced outcome (canonical order), per player
};

struct OmniOptResult {
  OptStatus status = OptStatus::NoSpi;
  Rational value = 0;  // weighted utility gain over the default
  std::optional<OmniRemap> remap;        // Attained
  std::optional<OmniRemap> family_star;  // Supremum endpoints
  std::optional<OmniRemap> family_s;
  std::optional<OmniRemap> sample;       // family at eps = 1/2
};

/// Linear-objective optimization over omnilateral remaps. Pure mode is the
/// per-outcome greedy (with a minimal-loss repair when the unconstrained
/// argmax is nowhere strict); correlated mode is the lexicographic LP with the
/// epsilon-interpolation fallback.
inline OmniOptResult omni_optimize(const Game& g, RealizationMode mode, const OmniObjective& objective) {
  ReductionResult r = reduce(g);
  std::vector<Outcome> reduced_orig;
  for_each_outcome(r.game, [&](const Outcome& o) { reduced_orig.push_back(r.to_original(o)); });
  const std::size_t K = reduced_orig.size();
  const int n = g.num_players();
  if (objective.weights.size() != K)
    throw std::invalid_argument("omni_optimize: weight count must match the reduced outcome count");
  for (const auto& w : objective.weights)
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("omni_optimize: weight vector length must match the player count");

  OmniOptResult out;
  std::optional<OmniRemap> exists = omni_exists(g, mode);
  if (!exists) return out;

  auto score = [&](std::size_t k, const PayoffVector& u) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) s += objective.weights[k][i] * (u[i] - g.payoff(reduced_orig[k])[i]);
    return s;
  };

  if (mode == RealizationMode::Pure) {
    // per-outcome argmax over weakly improving outcomes; ties prefer strict
    struct Choice {
      Outcome best;
      Rational value;
      bool strict;
      std::optional<Outcome> best_strict;  // argmax among strictly improving
      Rational strict_value;
    };
    std::vector<Choice> choices(K);
    for (std::size_t k = 0; k < K; ++k) {
      const PayoffVector& from = g.payoff(reduced_orig[k]);
      Choice ch{reduced_orig[k], Rational(0), false, std::nullopt, Rational(0)};
      bool first = true;
      for (std::size_t idx = 0; idx < g.outcome_count(); ++idx) {
        const PayoffVector& u = g.payoffs[idx];
        if (!weakly_improves(u, from)) continue;
        Rational s = score(k, u);
        bool strict = strictly_improves(u, from);
        if (first || s > ch.value || (s == ch.value && strict && !ch.strict)) {
          ch.best = g.unflatten(idx);
          ch.value = s;
          ch.strict = strict;
        }
        first = false;
        if (strict && (!ch.best_strict || s > ch.strict_value)) {
          ch.best_strict = g.unflatten(idx);
          ch.strict_value = s;
        }
      }
      choices[k] = std::move(ch);
    }
    bool any_strict = false;
    for (const auto& c : choices) any_strict = any_strict || c.strict;
    if (!any_strict) {
      // pay the least objective loss to make one outcome strictly improving
      std::optional<std::size_t> pick;
      Rational best_loss = 0;
      for (std::size_t k = 0; k < K; ++k) {
        if (!choices[k].best_strict) continue;
        Rational loss = choices[k].value - choices[k].strict_value;
        if (!pick || loss < best_loss) {
          pick = k;
          best_loss = loss;
        }
      }
      if (!pick) return out;  // unreachable: omni_exists(pure) succeeded
      choices[*pick].best = *choices[*pick].best_strict;
      choices[*pick].value = choices[*pick].strict_value;
      choices[*pick].strict = true;
    }
    OmniRemap remap;
    Rational total = 0;
    for (std::size_t k = 0; k < K; ++k) {
      remap.map.emplace_back(reduced_orig[k], choices[k].best);
      total += choices[k].value;
      if (choices[k].strict && remap.witness.empty()) remap.witness = reduced_orig[k];
    }
    out.status = OptStatus::Attained;
    out.value = total;
    out.remap = std::move(remap);
    return out;
  }

  // correlated: lexicographic LP (weighted objective, then the total gain mu)
  detail::PayoffClasses classes = detail::payoff_classes(g);
  const std::size_t C = classes.payoffs.size();
  LinearProgram lp;
  std::vector<std::vector<int>> q(K, std::vector<int>(C));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t c = 0; c < C; ++c) q[k][c] = lp.add_var(Rational(0));
  int mu = lp.add_var(Rational(0));
  Rational weighted_base = 0;
  LinConstraint gain;  // mu <= total utility gain
  gain.terms.emplace_back(mu, Rational(1));
  Rational gain_rhs = 0;
  for (std::size_t k = 0; k < K; ++k) {
    LinConstraint sum1;
    for (std::size_t c = 0; c < C; ++c) sum1.terms.emplace_back(q[k][c], Rational(1));
    sum1.cmp = Cmp::EQ;
    sum1.rhs = 1;
    lp.add_constraint(std::move(sum1));
    const PayoffVector& from = g.payoff(reduced_orig[k]);
    for (int i = 0; i < n; ++i) {
      LinConstraint ge;
      for (std::size_t c = 0; c < C; ++c) ge.terms.emplace_back(q[k][c], classes.payoffs[c][i]);
      ge.cmp = Cmp::GE;
      ge.rhs = from[i];
      lp.add_constraint(std::move(ge));
      weighted_base += objective.weights[k][i] * from[i];
      gain_rhs -= from[i];
    }
    for (std::size_t c = 0; c < C; ++c) {
      Rational coef = 0;
      for (int i = 0; i < n; ++i) coef += classes.payoffs[c][i];
      gain.terms.emplace_back(q[k][c], -coef);
    }
  }
  gain.cmp = Cmp::LE;
  gain.rhs = gain_rhs;  // mu - sum q u <= -sum u(a)
  lp.add_constraint(std::move(gain));
  lp.objective.assign(lp.num_vars, Rational(0));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t c = 0; c < C; ++c) {
      Rational coef = 0;
      for (int i = 0; i < n; ++i) coef += objective.weights[k][i] * classes.payoffs[c][i];
      lp.objective[q[k][c]] = coef;
    }
  std::vector<Rational> obj2(lp.num_vars, Rational(0));
  obj2[mu] = 1;
  lp.objective2 = std::move(obj2);
  LpSolution sol = solve_lex(lp);
  if (!sol.optimal()) return out;
  out.value = sol.value - weighted_base;

  auto build_from = [&](const std::vector<Rational>& x) {
    OmniRemap remap;
    for (std::size_t k = 0; k < K; ++k) {
      CorrelatedProfile prof;
      for (std::size_t c = 0; c < C; ++c)
        if (x[q[k][c]] > 0) prof.support[classes.rep[c]] += x[q[k][c]];
      PayoffVector to = expected_payoff(g, prof);
      if (remap.witness.empty() && strictly_improves(to, g.payoff(reduced_orig[k])))
        remap.witness = reduced_orig[k];
      remap.map.emplace_back(reduced_orig[k], std::move(prof));
    }
    return remap;
  };

  if (sol.value2 > 0) {
    out.status = OptStatus::Attained;
    out.remap = build_from(sol.assignment);
    return out;
  }
  out.status = OptStatus::Supremum;
  out.family_star = build_from(sol.assignment);
  out.family_star->witness.clear();
  out.family_s = *exists;
  const Rational eps(1, 2);
  OmniRemap sample;
  for (std::size_t k = 0; k < K; ++k) {
    CorrelatedProfile prof;
    const auto& star = std::get<CorrelatedProfile>(out.family_star->map[k].second);
    for (const auto& [o, p] : star.support) prof.support[o] += (1 - eps) * p;
    const Realization& sreal = out.family_s->map[k].second;
    if (std::holds_alternative<CorrelatedProfile>(sreal)) {
      for (const auto& [o, p] : std::get<CorrelatedProfile>(sreal).support) prof.support[o] += eps * p;
    } else {
      prof.support[std::get<Outcome>(sreal)] += eps;
    }
    PayoffVector to = expected_payoff(g, prof);
    if (sample.witness.empty() && strictly_improves(to, g.payoff(reduced_orig[k])))
      sample.witness = reduced_orig[k];
    sample.map.emplace_back(reduced_orig[k], std::move(prof));
  }
  out.sample = std::move(sample);
  return out;
}

/// Unilateral remap for Player 1: psi1[r] is the full-game action committed
/// to when the reduced default action at position r would have been played.
struct UniRemap {
  std::vector<int> psi1;
};

struct UniVerifyResult {
  std::optional<SpiCertificate> cert;
  std::vector<Isomorphism> partial_isos;  // all (psi1, phi_2, ..., phi_n)
  ReductionResult default_reduction;
  ReductionResult commit_reduction;       // reduction under the commitment
  std::vector<int> image;                 // hat A_1, ascending original indices
  // true when condition 2 failed but every commitment outcome dominates the
  // reduced default; the characterization lemma does not certify this case
  bool flagged_all_dominating = false;
};

inline UniVerifyResult uni_verify(const Game& g, const UniRemap& remap) {
  UniVerifyResult res;
  res.default_reduction = reduce(g);
  const Game& rd = res.default_reduction.game;
  if (static_cast<int>(remap.psi1.size()) != rd.num_actions(0))
    throw std::invalid_argument("uni_verify: psi1 must be total on the reduced player-1 actions");
  for (int a : remap.psi1)
    if (a < 0 || a >= g.num_actions(0)) throw std::invalid_argument("uni_verify: psi1 image outside player 1's actions");

  // Assumption-5 removal (non-image player-1 actions), then iterated
  // dominance for players != 1 to a fixed point
  res.image = remap.psi1;
  std::sort(res.image.begin(), res.image.end());
  res.image.erase(std::unique(res.image.begin(), res.image.end()), res.image.end());
  std::vector<std::set<int>> removed(g.players.size());
  for (int a = 0; a < g.num_actions(0); ++a)
    if (!std::binary_search(res.image.begin(), res.image.end(), a)) removed[0].insert(a);
  Game pinned = remove_actions(g, Disarmament{removed});
  std::vector<bool> may(g.players.size(), true);
  may[0] = false;
  res.commit_reduction = reduce_players(pinned, may);
  // re-express player 1's kept actions in g's index space (the other
  // players' indexing is unchanged)
  for (int& a : res.commit_reduction.kept[0]) a = res.image[a];
  const Game& commit = res.commit_reduction.game;

  bool constant = res.image.size() == 1;
  if (constant) {
    // condition 1: the pinned column's surviving outcomes dominate all of
    // the reduced default, one source outcome strictly improved by all
    bool weak_all = true;
    for (const auto& s : rd.payoffs) {
      for (const auto& t : commit.payoffs)
        if (!weakly_improves(t, s)) {
          weak_all = false;
          break;
        }
      if (!weak_all) break;
    }
    if (!weak_all) return res;
    std::optional<Outcome> witness;
    for_each_outcome(rd, [&](const Outcome& s) {
      if (witness) return;
      bool all_strict = true;
      for (const auto& t : commit.payoffs)
        if (!strictly_improves(t, rd.payoff(s))) {
          all_strict = false;
          break;
        }
      if (all_strict) witness = s;
    });
    if (!witness) return res;
    SpiCertificate cert;
    cert.kind = SpiCertificate::Kind::Simple;
    cert.reduced_default = res.default_reduction;
    cert.reduced_candidate = res.commit_reduction;
    cert.witness_source = *witness;
    res.cert = std::move(cert);
    return res;
  }

  // condition 2: partial isomorphisms exist and every one of them is Pareto
  // improving, with a strict witness somewhere
  std::vector<int> psi1_commit(remap.psi1.size());
  for (std::size_t a = 0; a < remap.psi1.size(); ++a) {
    auto it = std::lower_bound(res.image.begin(), res.image.end(), remap.psi1[a]);
    psi1_commit[a] = static_cast<int>(it - res.image.begin());
  }
  bool shapes_match = true;
  for (int i = 1; i < g.num_players(); ++i)
    if (rd.num_actions(i) != commit.num_actions(i)) shapes_match = false;
  if (shapes_match) res.partial_isos = find_partial_isomorphisms(rd, commit, psi1_commit);

  auto all_dominating = [&]() {
    for (const auto& s : rd.payoffs)
      for (const auto& t : commit.payoffs)
        if (!weakly_improves(t, s)) return false;
    return true;
  };

  if (res.partial_isos.empty()) {
    res.flagged_all_dominating = all_dominating();
    return res;
  }
  std::optional<std::size_t> witness_iso;
  std::optional<Outcome> witness_outcome;
  for (std::size_t k = 0; k < res.partial_isos.size(); ++k) {
    const Isomorphism& iso = res.partial_isos[k];
    if (!iso_weakly_improving(rd, commit, iso)) {
      res.flagged_all_dominating = all_dominating();
      return res;
    }
    if (!witness_iso) {
      if (auto w = iso_strict_witness(rd, commit, iso)) {
        witness_iso = k;
        witness_outcome = w;
      }
    }
  }
  if (!witness_iso) return res;  // no strict improvement possible
  SpiCertificate cert;
  cert.kind = SpiCertificate::Kind::Isomorphism;
  cert.reduced_default = res.default_reduction;
  cert.reduced_candidate = res.commit_reduction;
  cert.iso = res.partial_isos[*witness_iso];
  cert.witness_source = *witness_outcome;
  cert.witness_target = cert.iso->apply(*witness_outcome);
  res.cert = std::move(cert);
  return res;
}

/// Exhaustive search over psi1 candidates (|A_1|^{|reduced A_1|}, capped).
inline std::vector<std::pair<UniRemap, SpiCertificate>> uni_search(const Game& g,
                                                                   std::uint64_t max_candidates = default_search_cap()) {
  ReductionResult r = reduce(g);
  const int base = g.num_actions(0);
  const int digits = r.game.num_actions(0);
  long double count = std::pow(static_cast<long double>(base), static_cast<long double>(digits));
  if (count > static_cast<long double>(max_candidates))
    throw size_cap_error("uni_search: candidate count exceeds the cap of " + std::to_string(max_candidates));
  std::vector<std::pair<UniRemap, SpiCertificate>> hits;
  std::vector<int> psi1(digits, 0);
  while (true) {
    UniRemap remap{psi1};
    UniVerifyResult res = uni_verify(g, remap);
    if (res.cert) hits.emplace_back(std::move(remap), std::move(*res.cert));
    int pos = digits - 1;
    while (pos >= 0) {
      if (++psi1[pos] < base) break;
      psi1[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return hits;
}

}  // namespace spikit
