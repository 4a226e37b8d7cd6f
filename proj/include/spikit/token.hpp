#pragma once

// Token-game SPIs: simple token SPIs (pure scan / LP), pure isomorphism token
// SPIs (the anchor-set algorithm), correlated isomorphism token SPIs (the
// remapping LP with the epsilon-blend repair), the 2-player case
// characterization, the abstracted vector-remapping problem, and optimization
// over token SPIs (exhaustive for pure, lexicographic LP for correlated).

#include <optional>
#include <variant>
#include <vector>

#include "spikit/game.hpp"
#include "spikit/iso.hpp"
#include "spikit/lp.hpp"
#include "spikit/reduction.hpp"

namespace spikit {

enum class RealizationMode { Pure, Correlated };

using Realization = std::variant<Outcome, CorrelatedProfile>;

inline PayoffVector realization_payoff(const Game& g, const Realization& r) {
  if (std::holds_alternative<Outcome>(r)) {
    const Outcome& o = std::get<Outcome>(r);
    if (!g.valid_outcome(o)) throw std::invalid_argument("realization: invalid outcome");
    return g.payoff(o);
  }
  return expected_payoff(g, std::get<CorrelatedProfile>(r));
}

/// Valid utility remapping function: entrywise positive affine, strictly
/// Pareto improving on the reduced payoffs, with a realization per payoff.
struct UtilityRemap {
  AffineUtilityMap map;
  std::vector<std::pair<PayoffVector, Realization>> realizations;  // canonical payoff order
};

struct TokenSpi {
  enum class Kind { Simple, Iso };
  Kind kind = Kind::Simple;
  Game token;
  std::optional<Isomorphism> iso;     // reduced(g) -> token, Iso kind only
  std::optional<UtilityRemap> remap;  // Iso kind only
  std::optional<std::pair<PayoffVector, Realization>> simple;  // Simple kind: the one token payoff
  PayoffVector witness;               // reduced payoff strictly improved
};

namespace detail {

// distinct payoff vectors of g with a canonical representative outcome each
struct PayoffClasses {
  std::vector<PayoffVector> payoffs;  // canonical order
  std::vector<Outcome> rep;

  int index_of(const PayoffVector& v) const {
    auto it = std::lower_bound(payoffs.begin(), payoffs.end(), v);
    if (it == payoffs.end() || *it != v) return -1;
    return static_cast<int>(it - payoffs.begin());
  }
};

inline PayoffClasses payoff_classes(const Game& g) {
  PayoffClasses c;
  c.payoffs = payoff_set(g);
  c.rep.resize(c.payoffs.size());
  std::vector<bool> seen(c.payoffs.size(), false);
  for (std::size_t idx = 0; idx < g.outcome_count(); ++idx) {
    int k = c.index_of(g.payoffs[idx]);
    if (!seen[k]) {
      seen[k] = true;
      c.rep[k] = g.unflatten(idx);
    }
  }
  return c;
}

// first reduced outcome (in original index space) realizing payoff v
inline Outcome reduced_representative(const Game&, const ReductionResult& r, const PayoffVector& v) {
  Outcome found;
  bool done = false;
  for_each_outcome(r.game, [&](const Outcome& o) {
    if (!done && r.game.payoff(o) == v) {
      found = r.to_original(o);
      done = true;
    }
  });
  if (!done) throw std::logic_error("reduced_representative: payoff not present");
  return found;
}

inline Game build_token_game(const Game& reduced, const AffineUtilityMap& map) {
  Game t;
  t.players = reduced.players;
  t.actions.resize(reduced.players.size());
  for (int i = 0; i < reduced.num_players(); ++i)
    for (const auto& label : reduced.actions[i]) t.actions[i].push_back("Token " + label);
  t.payoffs.reserve(reduced.payoffs.size());
  for (const auto& u : reduced.payoffs) t.payoffs.push_back(map.apply(u));
  return t;
}

inline Isomorphism identity_order_iso(const Game& reduced, const AffineUtilityMap& map) {
  Isomorphism iso;
  iso.action_map.resize(reduced.players.size());
  for (int i = 0; i < reduced.num_players(); ++i)
    for (int a = 0; a < reduced.num_actions(i); ++a) iso.action_map[i].push_back(a);
  iso.map = map;
  iso.scope = IsoScope::AllPlayers;
  return iso;
}

inline TokenSpi build_iso_token_spi(const Game&, const ReductionResult& r, const AffineUtilityMap& map,
                                    std::vector<std::pair<PayoffVector, Realization>> realizations) {
  TokenSpi spi;
  spi.kind = TokenSpi::Kind::Iso;
  spi.token = build_token_game(r.game, map);
  spi.iso = identity_order_iso(r.game, map);
  spi.remap = UtilityRemap{map, std::move(realizations)};
  for (const auto& [v, real] : spi.remap->realizations) {
    if (strictly_improves(map.apply(v), v)) {
      spi.witness = v;
      break;
    }
  }
  return spi;
}

}  // namespace detail

/// Full re-check of a token SPI against the raw game: token game shape and
/// dominance-freeness, the isomorphism payoff equation, exact realization
/// payoffs, weak improvement everywhere and a strict witness.
inline bool verify_token_spi(const Game& g, const TokenSpi& spi) {
  if (spi.token.num_players() != g.num_players()) return false;
  spi.token.validate();
  {
    ReductionResult tr = reduce(spi.token);
    for (int i = 0; i < spi.token.num_players(); ++i)
      if (static_cast<int>(tr.kept[i].size()) != spi.token.num_actions(i)) return false;
  }
  ReductionResult r = reduce(g);
  std::vector<PayoffVector> V = payoff_set(r.game);
  if (spi.kind == TokenSpi::Kind::Simple) {
    if (!spi.simple) return false;
    if (spi.token.outcome_count() != 1) return false;
    const PayoffVector& w = spi.token.payoffs.front();
    if (spi.simple->first != w) return false;
    if (realization_payoff(g, spi.simple->second) != w) return false;
    bool strict_seen = false;
    for (const auto& v : V) {
      if (!weakly_improves(w, v)) return false;
      if (strictly_improves(w, v)) strict_seen = true;
    }
    if (!std::binary_search(V.begin(), V.end(), spi.witness)) return false;
    return strict_seen && strictly_improves(w, spi.witness);
  }
  if (!spi.iso || !spi.remap) return false;
  for (int i = 0; i < g.num_players(); ++i)
    if (spi.token.num_actions(i) != r.game.num_actions(i)) return false;
  if (!is_isomorphism(r.game, spi.token, *spi.iso)) return false;
  if (!(spi.iso->map == spi.remap->map)) return false;
  const AffineUtilityMap& map = spi.remap->map;
  for (const auto& m : map.m)
    if (m <= 0) return false;
  // realizations must cover every reduced payoff and reproduce map(v) exactly
  if (spi.remap->realizations.size() != V.size()) return false;
  for (std::size_t k = 0; k < V.size(); ++k) {
    if (spi.remap->realizations[k].first != V[k]) return false;
    if (realization_payoff(g, spi.remap->realizations[k].second) != map.apply(V[k])) return false;
  }
  bool strict_seen = false;
  for (const auto& v : V) {
    PayoffVector t = map.apply(v);
    if (!weakly_improves(t, v)) return false;
    if (strictly_improves(t, v)) strict_seen = true;
  }
  if (!std::binary_search(V.begin(), V.end(), spi.witness)) return false;
  return strict_seen && strictly_improves(map.apply(spi.witness), spi.witness);
}

/// Simple token SPI: a single-outcome token game whose payoff weakly
/// dominates all reduced payoffs and strictly dominates one of them.
inline std::optional<TokenSpi> simple_token_spi(const Game& g, RealizationMode mode) {
  ReductionResult r = reduce(g);
  std::vector<PayoffVector> V = payoff_set(r.game);
  auto build = [&](const PayoffVector& w, Realization real) -> TokenSpi {
    TokenSpi spi;
    spi.kind = TokenSpi::Kind::Simple;
    spi.token.players = g.players;
    spi.token.actions.assign(g.players.size(), {"Token"});
    spi.token.payoffs = {w};
    spi.simple = {w, std::move(real)};
    for (const auto& v : V)
      if (strictly_improves(w, v)) {
        spi.witness = v;
        break;
      }
    return spi;
  };
  if (mode == RealizationMode::Pure) {
    for (std::size_t idx = 0; idx < g.outcome_count(); ++idx) {
      const PayoffVector& w = g.payoffs[idx];
      bool weak_all = true, strict_one = false;
      for (const auto& v : V) {
        if (!weakly_improves(w, v)) {
          weak_all = false;
          break;
        }
        strict_one = strict_one || strictly_improves(w, v);
      }
      if (weak_all && strict_one) return build(w, g.unflatten(idx));
    }
    return std::nullopt;
  }
  // correlated: the theorem-proof LP, SPI iff the optimum is strictly positive
  detail::PayoffClasses classes = detail::payoff_classes(g);
  const std::size_t C = classes.payoffs.size();
  const int n = g.num_players();
  LinearProgram lp;
  std::vector<int> p(C);
  for (std::size_t c = 0; c < C; ++c) p[c] = lp.add_var(Rational(0));
  {
    LinConstraint sum1;
    for (std::size_t c = 0; c < C; ++c) sum1.terms.emplace_back(p[c], Rational(1));
    sum1.cmp = Cmp::EQ;
    sum1.rhs = 1;
    lp.add_constraint(std::move(sum1));
  }
  Rational vsum = 0;
  for (const auto& v : V) {
    for (int i = 0; i < n; ++i) {
      LinConstraint ge;
      for (std::size_t c = 0; c < C; ++c) ge.terms.emplace_back(p[c], classes.payoffs[c][i]);
      ge.cmp = Cmp::GE;
      ge.rhs = v[i];
      lp.add_constraint(std::move(ge));
      vsum += v[i];
    }
  }
  lp.objective.assign(lp.num_vars, Rational(0));
  for (std::size_t c = 0; c < C; ++c) {
    Rational coef = 0;
    for (int i = 0; i < n; ++i) coef += classes.payoffs[c][i];
    lp.objective[p[c]] = coef * Rational(static_cast<long>(V.size()));
  }
  LpSolution sol = solve(lp);
  if (!sol.optimal() || sol.value - vsum <= 0) return std::nullopt;
  CorrelatedProfile prof;
  PayoffVector w(n, Rational(0));
  for (std::size_t c = 0; c < C; ++c) {
    if (sol.assignment[p[c]] > 0) {
      prof.support[classes.rep[c]] = sol.assignment[p[c]];
      for (int i = 0; i < n; ++i) w[i] += sol.assignment[p[c]] * classes.payoffs[c][i];
    }
  }
  return build(w, std::move(prof));
}

namespace detail {

// Algorithm-1 driver: enumerates candidate remapping functions and calls
// `sink` with every valid (m, b); sink returns true to stop the enumeration.
template <typename Sink>
void enumerate_pure_remaps(const Game& g, const ReductionResult& r, Sink&& sink) {
  std::vector<PayoffVector> V = payoff_set(r.game);
  std::vector<PayoffVector> UA = payoff_set(g);
  const int n = g.num_players();

  // anchor set: at most n+1 payoffs covering two distinct values per
  // non-constant dimension; deterministic tie-breaking by canonical order
  std::vector<std::size_t> anchor{0};
  for (int i = 0; i < n; ++i) {
    bool v_multi = false;
    for (const auto& v : V)
      if (v[i] != V[0][i]) v_multi = true;
    if (!v_multi) continue;
    bool have_two = false;
    for (std::size_t a = 1; a < anchor.size() && !have_two; ++a)
      if (V[anchor[a]][i] != V[anchor[0]][i]) have_two = true;
    if (have_two) continue;
    std::vector<Rational> present;
    for (const auto& a : anchor) present.push_back(V[a][i]);
    for (std::size_t k = 0; k < V.size(); ++k) {
      bool differs = true;
      for (const auto& x : present)
        if (V[k][i] == x) differs = false;
      if (differs) {
        anchor.push_back(k);
        break;
      }
    }
  }

  std::vector<std::size_t> choice(anchor.size(), 0);
  const std::size_t m_targets = UA.size();
  while (true) {
    // fit per-dimension positive affine maps from the anchor assignment
    AffineUtilityMap map;
    map.m.assign(n, Rational(1));
    map.b.assign(n, Rational(0));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      std::optional<std::pair<Rational, Rational>> two;  // first pair (x, y)
      std::optional<std::pair<Rational, Rational>> fit;  // (m, b)
      for (std::size_t a = 0; a < anchor.size() && ok; ++a) {
        Rational x = V[anchor[a]][i], y = UA[choice[a]][i];
        if (fit) {
          if (y != fit->first * x + fit->second) ok = false;
        } else if (two) {
          if (x == two->first) {
            if (y != two->second) ok = false;  // not single-valued
          } else {
            Rational m = (y - two->second) / (x - two->first);
            if (m <= 0) ok = false;
            else fit = {m, two->second - m * two->first};
          }
        } else {
          two = {x, y};
        }
      }
      if (!ok) continue;
      if (fit) {
        map.m[i] = fit->first;
        map.b[i] = fit->second;
      } else {
        map.m[i] = 1;  // dimension constant across V
        map.b[i] = two->second - two->first;
      }
    }
    if (ok) {
      // strict Pareto improvement on V and feasibility into u(A)
      bool strict = false;
      for (const auto& v : V) {
        PayoffVector t = map.apply(v);
        if (!weakly_improves(t, v)) {
          ok = false;
          break;
        }
        strict = strict || strictly_improves(t, v);
        if (!std::binary_search(UA.begin(), UA.end(), t)) {
          ok = false;
          break;
        }
      }
      if (ok && strict && sink(map, V)) return;
    }
    // next choice, lexicographic
    std::size_t pos = choice.size();
    while (pos > 0) {
      if (++choice[pos - 1] < m_targets) break;
      choice[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) return;
  }
}

}  // namespace detail

/// Pure isomorphism token SPI via the anchor-set enumeration.
inline std::optional<TokenSpi> pure_iso_token_spi(const Game& g) {
  ReductionResult r = reduce(g);
  std::optional<TokenSpi> out;
  detail::enumerate_pure_remaps(g, r, [&](const AffineUtilityMap& map, const std::vector<PayoffVector>& V) {
    std::vector<std::pair<PayoffVector, Realization>> realizations;
    for (const auto& v : V) {
      PayoffVector t = map.apply(v);
      bool found = false;
      for (std::size_t idx = 0; idx < g.outcome_count() && !found; ++idx) {
        if (g.payoffs[idx] == t) {
          realizations.emplace_back(v, g.unflatten(idx));
          found = true;
        }
      }
      if (!found) return false;  // cannot happen: feasibility checked
    }
    out = detail::build_iso_token_spi(g, r, map, std::move(realizations));
    return true;
  });
  return out;
}

namespace detail {

struct CorrelatedLpResult {
  LpSolution sol;
  std::vector<PayoffVector> V;
  PayoffClasses classes;
  std::vector<int> var_m, var_b;                 // per player
  std::vector<std::vector<int>> var_q;           // per payoff j, per class c
  Rational v_total = 0;                          // sum over (i, j) of v^j_i
};

// The correlated utility-remapping LP. Distributions run over distinct
// payoff classes of u(A); see the realization expansion below.
inline CorrelatedLpResult correlated_remap_lp(const Game& g, const ReductionResult& r,
                                              const std::vector<std::vector<Rational>>* weights,
                                              bool lexicographic) {
  CorrelatedLpResult res;
  res.V = payoff_set(r.game);
  res.classes = payoff_classes(g);
  const int n = g.num_players();
  const std::size_t k = res.V.size(), C = res.classes.payoffs.size();
  LinearProgram lp;
  res.var_m.resize(n);
  res.var_b.resize(n);
  for (int i = 0; i < n; ++i) res.var_m[i] = lp.add_var(Rational(0));
  for (int i = 0; i < n; ++i) res.var_b[i] = lp.add_var(std::nullopt);
  res.var_q.assign(k, std::vector<int>(C));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < C; ++c) res.var_q[j][c] = lp.add_var(Rational(0));
  for (std::size_t j = 0; j < k; ++j) {
    LinConstraint sum1;
    for (std::size_t c = 0; c < C; ++c) sum1.terms.emplace_back(res.var_q[j][c], Rational(1));
    sum1.cmp = Cmp::EQ;
    sum1.rhs = 1;
    lp.add_constraint(std::move(sum1));
  }
  for (int i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Rational& vij = res.V[j][i];
      res.v_total += vij;
      LinConstraint improve;  // m_i v + b_i >= v
      improve.terms.emplace_back(res.var_m[i], vij);
      improve.terms.emplace_back(res.var_b[i], Rational(1));
      improve.cmp = Cmp::GE;
      improve.rhs = vij;
      lp.add_constraint(std::move(improve));
      LinConstraint realize;  // sum_c q u_i(c) - m_i v - b_i = 0
      for (std::size_t c = 0; c < C; ++c) realize.terms.emplace_back(res.var_q[j][c], res.classes.payoffs[c][i]);
      realize.terms.emplace_back(res.var_m[i], -vij);
      realize.terms.emplace_back(res.var_b[i], Rational(-1));
      realize.cmp = Cmp::EQ;
      realize.rhs = 0;
      lp.add_constraint(std::move(realize));
    }
  }
  lp.objective.assign(lp.num_vars, Rational(0));
  if (weights) {
    for (int i = 0; i < n; ++i) {
      Rational mc = 0, bc = 0;
      for (std::size_t j = 0; j < k; ++j) {
        mc += (*weights)[j][i] * res.V[j][i];
        bc += (*weights)[j][i];
      }
      lp.objective[res.var_m[i]] = mc;
      lp.objective[res.var_b[i]] = bc;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Rational mc = 0;
      for (std::size_t j = 0; j < k; ++j) mc += res.V[j][i];
      lp.objective[res.var_m[i]] = mc;
      lp.objective[res.var_b[i]] = Rational(static_cast<long>(k));
    }
  }
  if (lexicographic) {
    int mu = lp.add_var(Rational(0));
    for (int i = 0; i < n; ++i) {
      LinConstraint c;  // mu <= m_i
      c.terms.emplace_back(mu, Rational(1));
      c.terms.emplace_back(res.var_m[i], Rational(-1));
      c.cmp = Cmp::LE;
      c.rhs = 0;
      lp.add_constraint(std::move(c));
    }
    LinConstraint gain;  // mu <= sum of utility gains
    gain.terms.emplace_back(mu, Rational(1));
    for (int i = 0; i < n; ++i) {
      Rational mc = 0;
      for (std::size_t j = 0; j < k; ++j) mc += res.V[j][i];
      gain.terms.emplace_back(res.var_m[i], -mc);
      gain.terms.emplace_back(res.var_b[i], Rational(-static_cast<long>(k)));
    }
    gain.cmp = Cmp::LE;
    gain.rhs = -res.v_total;
    lp.add_constraint(std::move(gain));
    lp.objective.resize(lp.num_vars, Rational(0));
    std::vector<Rational> obj2(lp.num_vars, Rational(0));
    obj2[mu] = 1;
    lp.objective2 = std::move(obj2);
    res.sol = solve_lex(lp);
  } else {
    res.sol = solve(lp);
  }
  return res;
}

inline std::vector<std::pair<PayoffVector, Realization>> expand_realizations(
    const CorrelatedLpResult& lpr, const std::vector<Rational>& x) {
  std::vector<std::pair<PayoffVector, Realization>> out;
  for (std::size_t j = 0; j < lpr.V.size(); ++j) {
    CorrelatedProfile prof;
    for (std::size_t c = 0; c < lpr.classes.payoffs.size(); ++c) {
      const Rational& q = x[lpr.var_q[j][c]];
      if (q > 0) prof.support[lpr.classes.rep[c]] += q;
    }
    out.emplace_back(lpr.V[j], std::move(prof));
  }
  return out;
}

inline AffineUtilityMap extract_map(const CorrelatedLpResult& lpr, const std::vector<Rational>& x) {
  AffineUtilityMap map;
  for (int v : lpr.var_m) map.m.push_back(x[v]);
  for (int v : lpr.var_b) map.b.push_back(x[v]);
  return map;
}

// (1 - eps) * remap + eps * identity, realizations mixed with point masses on
// canonical reduced outcomes; valid for any eps in (0,1), eps = 1/2 canonical.
inline UtilityRemap blend_with_identity(const Game& g, const ReductionResult& r, const AffineUtilityMap& map,
                                        std::vector<std::pair<PayoffVector, Realization>> reals,
                                        const Rational& eps) {
  UtilityRemap out;
  out.map.m.resize(map.m.size());
  out.map.b.resize(map.b.size());
  for (std::size_t i = 0; i < map.m.size(); ++i) {
    out.map.m[i] = (1 - eps) * map.m[i] + eps;
    out.map.b[i] = (1 - eps) * map.b[i];
  }
  for (auto& [v, real] : reals) {
    CorrelatedProfile mixed;
    const CorrelatedProfile& base = std::get<CorrelatedProfile>(real);
    for (const auto& [o, p] : base.support) mixed.support[o] += (1 - eps) * p;
    mixed.support[reduced_representative(g, r, v)] += eps;
    out.realizations.emplace_back(v, std::move(mixed));
  }
  return out;
}

}  // namespace detail

/// Correlated isomorphism token SPI: the remapping LP decides (optimum > 0),
/// and a zero coefficient in the optimal assignment is repaired by blending
/// with the identity at eps = 1/2.
inline std::optional<TokenSpi> correlated_iso_token_spi(const Game& g) {
  ReductionResult r = reduce(g);
  detail::CorrelatedLpResult lpr = detail::correlated_remap_lp(g, r, nullptr, false);
  if (!lpr.sol.optimal() || lpr.sol.value - lpr.v_total <= 0) return std::nullopt;
  AffineUtilityMap map = detail::extract_map(lpr, lpr.sol.assignment);
  auto reals = detail::expand_realizations(lpr, lpr.sol.assignment);
  bool needs_repair = false;
  for (const auto& m : map.m) needs_repair = needs_repair || m == 0;
  UtilityRemap remap;
  if (needs_repair)
    remap = detail::blend_with_identity(g, r, map, std::move(reals), Rational(1, 2));
  else
    remap = UtilityRemap{std::move(map), std::move(reals)};
  return detail::build_iso_token_spi(g, r, remap.map, std::move(remap.realizations));
}

enum class TwoPlayerCase { SingletonV, C1, C2a, C2b, C2c, C3 };

struct Characterization {
  TwoPlayerCase label = TwoPlayerCase::C1;
  bool admits = false;
  std::vector<PayoffVector> V;
  std::vector<PayoffVector> Vstar;
};

namespace detail {

// max total slack of a hull point weakly above v; v is strictly improvable in
// u(Delta(A)) iff the optimum is positive
inline bool hull_strictly_improvable(const PayoffClasses& classes, const PayoffVector& v) {
  const int n = static_cast<int>(v.size());
  LinearProgram lp;
  std::vector<int> p(classes.payoffs.size());
  for (std::size_t c = 0; c < p.size(); ++c) p[c] = lp.add_var(Rational(0));
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = lp.add_var(Rational(0));
  LinConstraint sum1;
  for (std::size_t c = 0; c < p.size(); ++c) sum1.terms.emplace_back(p[c], Rational(1));
  sum1.cmp = Cmp::EQ;
  sum1.rhs = 1;
  lp.add_constraint(std::move(sum1));
  for (int i = 0; i < n; ++i) {
    LinConstraint eq;
    for (std::size_t c = 0; c < p.size(); ++c) eq.terms.emplace_back(p[c], classes.payoffs[c][i]);
    eq.terms.emplace_back(s[i], Rational(-1));
    eq.cmp = Cmp::EQ;
    eq.rhs = v[i];
    lp.add_constraint(std::move(eq));
  }
  lp.objective.assign(lp.num_vars, Rational(0));
  for (int i = 0; i < n; ++i) lp.objective[s[i]] = 1;
  LpSolution sol = solve(lp);
  return sol.optimal() && sol.value > 0;
}

// (v_i + eps, v_-i) in the hull for some eps > 0
inline bool hull_improvable_in_dim(const PayoffClasses& classes, const PayoffVector& v, int dim) {
  const int n = static_cast<int>(v.size());
  LinearProgram lp;
  std::vector<int> p(classes.payoffs.size());
  for (std::size_t c = 0; c < p.size(); ++c) p[c] = lp.add_var(Rational(0));
  int eps = lp.add_var(Rational(0));
  LinConstraint sum1;
  for (std::size_t c = 0; c < p.size(); ++c) sum1.terms.emplace_back(p[c], Rational(1));
  sum1.cmp = Cmp::EQ;
  sum1.rhs = 1;
  lp.add_constraint(std::move(sum1));
  for (int i = 0; i < n; ++i) {
    LinConstraint eq;
    for (std::size_t c = 0; c < p.size(); ++c) eq.terms.emplace_back(p[c], classes.payoffs[c][i]);
    if (i == dim) eq.terms.emplace_back(eps, Rational(-1));
    eq.cmp = Cmp::EQ;
    eq.rhs = v[i];
    lp.add_constraint(std::move(eq));
  }
  lp.objective.assign(lp.num_vars, Rational(0));
  lp.objective[eps] = 1;
  LpSolution sol = solve(lp);
  return sol.optimal() && sol.value > 0;
}

}  // namespace detail

/// The published two-player case analysis for correlated isomorphism token
/// SPIs, decided with exact per-point hull LPs.
inline Characterization characterize_2p(const Game& g) {
  if (g.num_players() != 2) throw std::invalid_argument("characterize_2p: exactly two players required");
  ReductionResult r = reduce(g);
  Characterization out;
  out.V = payoff_set(r.game);
  detail::PayoffClasses classes = detail::payoff_classes(g);
  if (out.V.size() == 1) {
    out.label = TwoPlayerCase::SingletonV;
    out.admits = detail::hull_strictly_improvable(classes, out.V[0]);
    if (!out.admits) out.Vstar = out.V;
    return out;
  }
  for (const auto& v : out.V)
    if (!detail::hull_strictly_improvable(classes, v)) out.Vstar.push_back(v);
  if (out.Vstar.empty()) {
    out.label = TwoPlayerCase::C1;
    out.admits = true;
    return out;
  }
  if (out.Vstar.size() >= 2) {
    out.label = TwoPlayerCase::C3;
    out.admits = false;
    return out;
  }
  const PayoffVector& vstar = out.Vstar.front();
  bool extremal[2];
  for (int i = 0; i < 2; ++i) {
    Rational lo = out.V[0][i], hi = out.V[0][i];
    for (const auto& v : out.V) {
      if (v[i] < lo) lo = v[i];
      if (v[i] > hi) hi = v[i];
    }
    extremal[i] = vstar[i] == lo || vstar[i] == hi;
  }
  if (extremal[0] && extremal[1]) {
    out.label = TwoPlayerCase::C2a;
    out.admits = true;
    return out;
  }
  if (!extremal[0] && !extremal[1]) {
    out.label = TwoPlayerCase::C2c;
    out.admits = false;
    return out;
  }
  int dim = extremal[0] ? 0 : 1;
  out.label = TwoPlayerCase::C2b;
  out.admits = true;
  for (const auto& v : out.V) {
    if (v[dim] == vstar[dim]) continue;
    if (!detail::hull_improvable_in_dim(classes, v, dim)) {
      out.admits = false;
      break;
    }
  }
  return out;
}

/// Abstracted remapping problem: inputs S, targets T, find an entrywise
/// positive affine strictly Pareto-improving map S -> S ∪ T.
struct VectorRemapInstance {
  int dim = 0;
  std::vector<PayoffVector> inputs;   // S
  std::vector<PayoffVector> targets;  // T

  void validate() const {
    for (const auto& v : inputs)
      if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("gpr: input dimension mismatch");
    for (const auto& v : targets)
      if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("gpr: target dimension mismatch");
  }
};

struct VectorRemap {
  AffineUtilityMap map;
  std::vector<std::pair<PayoffVector, PayoffVector>> assignment;  // input -> image
};

inline std::optional<VectorRemap> gpr_decide(const VectorRemapInstance& inst) {
  inst.validate();
  std::vector<PayoffVector> S(inst.inputs.begin(), inst.inputs.end());
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (S.empty()) return std::nullopt;
  std::vector<PayoffVector> pool(S);
  pool.insert(pool.end(), inst.targets.begin(), inst.targets.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const int n = inst.dim;

  std::vector<std::vector<const PayoffVector*>> candidates(S.size());
  for (std::size_t k = 0; k < S.size(); ++k)
    for (const auto& w : pool)
      if (weakly_improves(w, S[k])) candidates[k].push_back(&w);

  // per-dimension affine consistency: known (x -> y) pairs, then the fitted
  // (m, b) once two distinct inputs are seen
  std::vector<std::map<Rational, Rational>> pairs(n);
  std::vector<std::optional<std::pair<Rational, Rational>>> fit(n);
  std::vector<const PayoffVector*> image(S.size(), nullptr);
  std::optional<VectorRemap> result;

  auto rec = [&](auto&& self, std::size_t k, int strict_count) -> bool {
    if (k == S.size()) {
      if (strict_count == 0) return false;
      VectorRemap vr;
      vr.map.m.assign(n, Rational(1));
      vr.map.b.assign(n, Rational(0));
      for (int d = 0; d < n; ++d) {
        if (fit[d]) {
          vr.map.m[d] = fit[d]->first;
          vr.map.b[d] = fit[d]->second;
        } else {
          const auto& [x, y] = *pairs[d].begin();
          vr.map.m[d] = 1;
          vr.map.b[d] = y - x;
        }
      }
      for (std::size_t idx = 0; idx < S.size(); ++idx) vr.assignment.emplace_back(S[idx], *image[idx]);
      result = std::move(vr);
      return true;
    }
    for (const PayoffVector* w : candidates[k]) {
      // tentatively extend every dimension, recording undo information
      std::vector<int> added_pair;
      std::vector<int> added_fit;
      bool ok = true;
      for (int d = 0; d < n && ok; ++d) {
        const Rational& x = S[k][d];
        const Rational& y = (*w)[d];
        auto it = pairs[d].find(x);
        if (it != pairs[d].end()) {
          if (it->second != y) ok = false;
        } else if (fit[d]) {
          if (y != fit[d]->first * x + fit[d]->second) ok = false;
          else {
            pairs[d].emplace(x, y);
            added_pair.push_back(d);
          }
        } else {
          pairs[d].emplace(x, y);
          added_pair.push_back(d);
          if (pairs[d].size() == 2) {
            auto a = pairs[d].begin();
            auto b = std::next(a);
            Rational m = (b->second - a->second) / (b->first - a->first);
            if (m <= 0) ok = false;
            else {
              fit[d] = {m, a->second - m * a->first};
              added_fit.push_back(d);
            }
          }
        }
      }
      if (ok) {
        image[k] = w;
        int strict = strict_count + (strictly_improves(*w, S[k]) ? 1 : 0);
        if (self(self, k + 1, strict)) return true;
        image[k] = nullptr;
      }
      for (int d : added_fit) fit[d].reset();
      for (int d : added_pair) pairs[d].erase(S[k][d]);
    }
    return false;
  };
  rec(rec, 0, 0);
  return result;
}

enum class OptStatus { Attained, Supremum, NoSpi };

/// Per-reduced-payoff linear weights in the canonical order of payoff_set on
/// the reduced game; one Rational per player.
struct TokenObjective {
  std::vector<std::vector<Rational>> weights;
};

struct TokenOptResult {
  OptStatus status = OptStatus::NoSpi;
  Rational value = 0;  // weighted utility gain over the default
  std::optional<TokenSpi> spi;           // Attained
  std::optional<UtilityRemap> family_star;  // Supremum: LP-optimal (possibly invalid) endpoint
  std::optional<UtilityRemap> family_s;     // Supremum: any valid remap
  std::optional<TokenSpi> sample;           // Supremum: family instantiated at eps = 1/4
};

/// Optimizes a linear objective over token SPIs. Pure mode enumerates all
/// valid remapping functions; correlated mode runs the lexicographic LP and
/// falls back to the epsilon-interpolation family when no optimal SPI exists.
inline TokenOptResult optimize_token(const Game& g, RealizationMode mode, const TokenObjective& objective) {
  ReductionResult r = reduce(g);
  std::vector<PayoffVector> V = payoff_set(r.game);
  const int n = g.num_players();
  if (objective.weights.size() != V.size()) throw std::invalid_argument("optimize_token: weight count must match the reduced payoff count");
  for (const auto& w : objective.weights)
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("optimize_token: weight vector length must match the player count");

  TokenOptResult out;
  auto gain_of = [&](const AffineUtilityMap& map) {
    Rational total = 0;
    for (std::size_t j = 0; j < V.size(); ++j)
      for (int i = 0; i < n; ++i) total += objective.weights[j][i] * (map.m[i] * V[j][i] + map.b[i] - V[j][i]);
    return total;
  };

  if (mode == RealizationMode::Pure) {
    std::optional<AffineUtilityMap> best;
    Rational best_value = 0;
    detail::enumerate_pure_remaps(g, r, [&](const AffineUtilityMap& map, const std::vector<PayoffVector>&) {
      Rational value = gain_of(map);
      if (!best || value > best_value) {
        best = map;
        best_value = value;
      }
      return false;  // keep enumerating
    });
    if (!best) return out;
    std::vector<std::pair<PayoffVector, Realization>> reals;
    for (const auto& v : V) {
      PayoffVector t = best->apply(v);
      for (std::size_t idx = 0; idx < g.outcome_count(); ++idx)
        if (g.payoffs[idx] == t) {
          reals.emplace_back(v, g.unflatten(idx));
          break;
        }
    }
    out.status = OptStatus::Attained;
    out.value = best_value;
    out.spi = detail::build_iso_token_spi(g, r, *best, std::move(reals));
    return out;
  }

  std::optional<TokenSpi> decision = correlated_iso_token_spi(g);
  if (!decision) return out;
  detail::CorrelatedLpResult lpr = detail::correlated_remap_lp(g, r, &objective.weights, true);
  if (!lpr.sol.optimal()) return out;  // cannot happen on a decided instance
  Rational weighted_default = 0;
  for (std::size_t j = 0; j < V.size(); ++j)
    for (int i = 0; i < n; ++i) weighted_default += objective.weights[j][i] * V[j][i];
  out.value = lpr.sol.value - weighted_default;
  AffineUtilityMap star_map = detail::extract_map(lpr, lpr.sol.assignment);
  auto star_reals = detail::expand_realizations(lpr, lpr.sol.assignment);
  if (lpr.sol.value2 > 0) {
    out.status = OptStatus::Attained;
    out.spi = detail::build_iso_token_spi(g, r, star_map, std::move(star_reals));
    return out;
  }
  out.status = OptStatus::Supremum;
  out.family_star = UtilityRemap{star_map, star_reals};
  out.family_s = decision->remap;
  // sample at eps = 1/4: (1 - 2 eps) psi* + eps psi_s + eps id
  const Rational eps(1, 4);
  AffineUtilityMap mix;
  mix.m.resize(n);
  mix.b.resize(n);
  const AffineUtilityMap& sm = out.family_s->map;
  for (int i = 0; i < n; ++i) {
    mix.m[i] = (1 - 2 * eps) * star_map.m[i] + eps * sm.m[i] + eps;
    mix.b[i] = (1 - 2 * eps) * star_map.b[i] + eps * sm.b[i];
  }
  std::vector<std::pair<PayoffVector, Realization>> mix_reals;
  for (std::size_t j = 0; j < V.size(); ++j) {
    CorrelatedProfile prof;
    for (const auto& [o, p] : std::get<CorrelatedProfile>(star_reals[j].second).support)
      prof.support[o] += (1 - 2 * eps) * p;
    for (const auto& [o, p] : std::get<CorrelatedProfile>(out.family_s->realizations[j].second).support)
      prof.support[o] += eps * p;
    prof.support[detail::reduced_representative(g, r, V[j])] += eps;
    mix_reals.emplace_back(V[j], std::move(prof));
  }
  out.sample = detail::build_iso_token_spi(g, r, mix, std::move(mix_reals));
  return out;
}

}  // namespace spikit
