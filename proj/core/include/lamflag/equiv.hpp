#pragma once

#include "lamflag/translate.hpp"

namespace lamflag {

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

enum class VerdictKind { Bisimilar, Distinguished, Unknown };

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  unsigned depth = 0;
  bool up_to_fuel = false;
  std::vector<std::string> witness; // flag trace to the diverging point
  std::string reason;               // Unknown: fuel-exhaustion | divergence-suspected

  static Verdict bisimilar(unsigned d, bool upto = false) {
    Verdict v;
    v.kind = VerdictKind::Bisimilar;
    v.depth = d;
    v.up_to_fuel = upto;
    return v;
  }
  static Verdict distinguished(std::vector<std::string> w) {
    Verdict v;
    v.kind = VerdictKind::Distinguished;
    v.witness = std::move(w);
    return v;
  }
  static Verdict unknown(std::string why) {
    Verdict v;
    v.kind = VerdictKind::Unknown;
    v.reason = std::move(why);
    return v;
  }
};

std::string verdict_json(const Verdict& v);
std::string verdict_text(const Verdict& v);

// ---------------------------------------------------------------------------
// Bounded machine bisimulation on flag sequences
// ---------------------------------------------------------------------------

Verdict machine_bisim(MachineKind k, const MachineConfig& c1, const MachineConfig& c2,
                      unsigned depth, unsigned tau_fuel, const MachineOpts& opts = {});

// ---------------------------------------------------------------------------
// Bounded weak bisimulation on the visible-label LTS of translated processes
// ---------------------------------------------------------------------------

Verdict hocore_bisim(const ho::Proc& p1, const ho::Proc& p2,
                     const TranslationProfile& profile, unsigned depth,
                     unsigned tau_fuel);

// ---------------------------------------------------------------------------
// Direct definitional oracles
// ---------------------------------------------------------------------------

enum class EquivMode { Cbn, Cbv, Mu };

Verdict nf_bisim_direct(const TermNPtr& t, const TermNPtr& s, EquivMode mode,
                        unsigned depth, unsigned fuel);

// Closed closures; the argument quantification is approximated by exhaustive
// enumeration of closed terms up to arg_size AST nodes.
Verdict app_bisim_direct(const ClosD& c1, const ClosD& c2, EquivMode mode,
                         unsigned depth, unsigned arg_size, unsigned fuel);
Verdict app_bisim_direct_mu(const ClosMu& c1, const ClosMu& c2, unsigned rank,
                            unsigned depth, unsigned arg_size, unsigned fuel);

Verdict ctx_equiv_bounded(const TermDPtr& t, const TermDPtr& s, unsigned ctx_size,
                          unsigned fuel);

// Deterministic size-lexicographic enumeration of closed de Bruijn terms
// (size = AST nodes). values_only keeps lambda-abstractions.
std::vector<TermDPtr> enumerate_closed(unsigned max_size, bool with_mu,
                                       bool values_only = false);

// ---------------------------------------------------------------------------
// Machine / translation correspondence
// ---------------------------------------------------------------------------

struct Correspondence {
  bool ok = true;
  std::string error;
  unsigned machine_steps = 0;  // silent machine transitions
  unsigned flag_points = 0;    // flagged machine transitions co-checked
  unsigned tau_steps = 0;      // kam/ck: translation tau transitions
  unsigned pushes = 0, grabs = 0;
  bool converged = false;      // kam/ck: machine reached a value
  bool barb_b = false;         // kam/ck: weak output barb on b
  unsigned audited_states = 0;
};

Correspondence correspondence(MachineKind k, const MachineConfig& c0, unsigned fuel,
                              const MachineOpts& opts = {});
std::string correspondence_text(const Correspondence& r);

struct AuditReport {
  bool ok = true;
  std::string violation;
  unsigned states = 0;
};

AuditReport determinism_audit(const ho::Proc& p0, const TranslationProfile& profile,
                              unsigned fuel);

} // namespace lamflag
