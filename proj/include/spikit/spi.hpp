#pragma once

// The central SPI decision between two games: G' is an SPI on G iff either
// every reduced-G' payoff weakly dominates every reduced-G payoff (with one
// source outcome strictly improved by all targets), or there is a strictly
// Pareto-improving isomorphism between the reduced games. Certificates carry
// enough structure to be re-verified from raw payoffs.

#include <map>
#include <optional>
#include <vector>

#include "spikit/game.hpp"
#include "spikit/iso.hpp"
#include "spikit/reduction.hpp"

namespace spikit {

/// Multivalued map between outcome spaces; total on the source (images may be
/// empty for eliminated outcomes).
struct OutcomeCorrespondence {
  std::map<Outcome, std::vector<Outcome>> images;  // image lists sorted, unique

  const std::vector<Outcome>& at(const Outcome& o) const { return images.at(o); }
};

inline OutcomeCorrespondence identity_correspondence(const Game& g) {
  OutcomeCorrespondence c;
  for_each_outcome(g, [&](const Outcome& o) { c.images[o] = {o}; });
  return c;
}

inline OutcomeCorrespondence all_correspondence(const Game& g, const Game& h) {
  OutcomeCorrespondence c;
  std::vector<Outcome> all;
  for_each_outcome(h, [&](const Outcome& o) { all.push_back(o); });
  for_each_outcome(g, [&](const Outcome& o) { c.images[o] = all; });
  return c;
}

/// Elimination correspondence g ~ reduced(g): surviving outcomes map to their
/// reduced-space counterparts, eliminated ones to the empty set.
inline OutcomeCorrespondence elimination_correspondence(const Game& g, const ReductionResult& r) {
  OutcomeCorrespondence c;
  for_each_outcome(g, [&](const Outcome& o) {
    Outcome reduced(o.size());
    bool survives = true;
    for (std::size_t i = 0; i < o.size() && survives; ++i) {
      const auto& k = r.kept[i];
      auto it = std::find(k.begin(), k.end(), o[i]);
      if (it == k.end())
        survives = false;
      else
        reduced[i] = static_cast<int>(it - k.begin());
    }
    c.images[o] = survives ? std::vector<Outcome>{reduced} : std::vector<Outcome>{};
  });
  return c;
}

inline OutcomeCorrespondence iso_correspondence(const Game& g, const Isomorphism& iso) {
  OutcomeCorrespondence c;
  for_each_outcome(g, [&](const Outcome& o) { c.images[o] = {iso.apply(o)}; });
  return c;
}

/// Pointwise composition: apply f, then g.
inline OutcomeCorrespondence compose_correspondences(const OutcomeCorrespondence& f,
                                                     const OutcomeCorrespondence& g) {
  OutcomeCorrespondence c;
  for (const auto& [o, mids] : f.images) {
    std::vector<Outcome> out;
    for (const auto& mid : mids) {
      auto it = g.images.find(mid);
      if (it == g.images.end()) throw std::invalid_argument("compose_correspondences: target/source mismatch");
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    c.images[o] = std::move(out);
  }
  return c;
}

/// Which improvement predicate an SPI decision runs under. PlayerOne is the
/// "safe u1 improvements" variant: only Player 1's utility must improve,
/// nothing is required for the others.
enum class ImprovementKind { Pareto, PlayerOne };

namespace detail {

inline bool weak_improve(const PayoffVector& to, const PayoffVector& from, ImprovementKind k) {
  if (k == ImprovementKind::Pareto) return weakly_improves(to, from);
  return to[0] >= from[0];
}

inline bool strict_improve(const PayoffVector& to, const PayoffVector& from, ImprovementKind k) {
  if (k == ImprovementKind::Pareto) return strictly_improves(to, from);
  return to[0] > from[0];
}

}  // namespace detail

struct SpiCertificate {
  enum class Kind { Simple, Isomorphism };
  Kind kind = Kind::Simple;
  ImprovementKind improvement = ImprovementKind::Pareto;
  ReductionResult reduced_default;
  ReductionResult reduced_candidate;
  std::optional<spikit::Isomorphism> iso;  // Isomorphism kind: between the reduced games
  Outcome witness_source;                  // reduced-space outcome with a strict improvement
  std::optional<Outcome> witness_target;   // its image (Isomorphism kind)
};

/// Condition-2 test only: every reduced-candidate payoff weakly dominates
/// every reduced-default payoff, and some default outcome is strictly
/// improved by all candidate outcomes.
inline bool is_simple_spi(const Game& def, const Game& cand, ImprovementKind k = ImprovementKind::Pareto) {
  if (def.num_players() != cand.num_players()) throw std::invalid_argument("is_simple_spi: player count mismatch");
  Game rd = reduce(def).game;
  Game rc = reduce(cand).game;
  for (const auto& s : rd.payoffs)
    for (const auto& t : rc.payoffs)
      if (!detail::weak_improve(t, s, k)) return false;
  for (const auto& s : rd.payoffs) {
    bool all_strict = true;
    for (const auto& t : rc.payoffs)
      if (!detail::strict_improve(t, s, k)) {
        all_strict = false;
        break;
      }
    if (all_strict) return true;
  }
  return false;
}

/// The characterization-lemma decision. Checks the simple condition first,
/// then the isomorphism condition on the reduced games.
inline std::optional<SpiCertificate> is_spi(const Game& def, const Game& cand,
                                            ImprovementKind k = ImprovementKind::Pareto) {
  if (def.num_players() != cand.num_players()) throw std::invalid_argument("is_spi: player count mismatch");
  SpiCertificate cert;
  cert.improvement = k;
  cert.reduced_default = reduce(def);
  cert.reduced_candidate = reduce(cand);
  const Game& rd = cert.reduced_default.game;
  const Game& rc = cert.reduced_candidate.game;

  // condition 2 (simple)
  bool simple = true;
  for (const auto& s : rd.payoffs) {
    for (const auto& t : rc.payoffs)
      if (!detail::weak_improve(t, s, k)) {
        simple = false;
        break;
      }
    if (!simple) break;
  }
  if (simple) {
    std::optional<Outcome> witness;
    for_each_outcome(rd, [&](const Outcome& s) {
      if (witness) return;
      bool all_strict = true;
      for (const auto& t : rc.payoffs)
        if (!detail::strict_improve(t, rd.payoff(s), k)) {
          all_strict = false;
          break;
        }
      if (all_strict) witness = s;
    });
    if (witness) {
      cert.kind = SpiCertificate::Kind::Simple;
      cert.witness_source = *witness;
      return cert;
    }
  }

  // condition 1 (isomorphism between the reduced games)
  if (rd.num_players() == rc.num_players()) {
    bool shapes = true;
    for (int i = 0; i < rd.num_players(); ++i)
      if (rd.num_actions(i) != rc.num_actions(i)) shapes = false;
    if (shapes) {
      auto map = detail::forced_utility_map(rd, rc, 0, nullptr);
      if (map) {
        bool improving = true;
        std::optional<Outcome> witness;
        for_each_outcome(rd, [&](const Outcome& o) {
          const PayoffVector& u = rd.payoff(o);
          PayoffVector t = map->apply(u);
          if (!detail::weak_improve(t, u, k)) improving = false;
          if (!witness && detail::strict_improve(t, u, k)) witness = o;
        });
        if (improving && witness) {
          auto isos = detail::search_isomorphisms(rd, rc, *map, 0, nullptr, 1);
          if (!isos.empty()) {
            cert.kind = SpiCertificate::Kind::Isomorphism;
            cert.iso = isos.front();
            cert.witness_source = *witness;
            cert.witness_target = cert.iso->apply(*witness);
            return cert;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace spikit
