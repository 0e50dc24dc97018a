#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamflag/flag.hpp"

namespace lamflag {

enum class StuckKind { Value, Dead, InvariantBroken };

// One transition out of a configuration. Empty flags = silent; a flagged
// alternative without a successor is a terminating transition.
template <typename C>
struct Alt {
  std::string rule;
  FlagSeq flags;
  std::optional<C> next;
};

// Result of stepping a configuration: a unique silent successor, a set of
// flagged alternatives with pairwise distinct flag sequences, or no
// transition at all.
template <typename C>
struct StepResult {
  enum class K { Silent, Flagged, Stuck };
  K k = K::Stuck;
  std::vector<Alt<C>> alts;
  StuckKind stuck = StuckKind::Dead;
  std::string detail;

  static StepResult silent(std::string rule, C next) {
    StepResult r;
    r.k = K::Silent;
    r.alts.push_back(Alt<C>{std::move(rule), {}, std::move(next)});
    return r;
  }
  static StepResult flagged(std::vector<Alt<C>> alternatives) {
    StepResult r;
    r.k = K::Flagged;
    r.alts = std::move(alternatives);
    return r;
  }
  static StepResult stuck_value() {
    StepResult r;
    r.k = K::Stuck;
    r.stuck = StuckKind::Value;
    return r;
  }
  static StepResult stuck_dead(std::string why) {
    StepResult r;
    r.k = K::Stuck;
    r.stuck = StuckKind::Dead;
    r.detail = std::move(why);
    return r;
  }
  static StepResult invariant_broken(std::string why) {
    StepResult r;
    r.k = K::Stuck;
    r.stuck = StuckKind::InvariantBroken;
    r.detail = std::move(why);
    return r;
  }
};

} // namespace lamflag
