#pragma once

#include <variant>

#include "lamflag/list.hpp"
#include "lamflag/step.hpp"
#include "lamflag/term.hpp"

namespace lamflag {

// ---------------------------------------------------------------------------
// Substitution-based KAM
// ---------------------------------------------------------------------------

struct KamConfig {
  TermNPtr term;
  List<TermNPtr> stack; // head = top
};

StepResult<KamConfig> kam_step(const KamConfig& c);
std::string show(const KamConfig& c);
std::string key(const KamConfig& c);

// ---------------------------------------------------------------------------
// Normal-form bisimulation machine, call by name
// ---------------------------------------------------------------------------

struct NfbCbnConfig {
  bool eval = true;     // eval vs continuation mode
  TermNPtr term;        // eval mode only
  List<TermNPtr> stack;
  unsigned counter = 0; // fresh-variable supply; > every free var in sight
};

StepResult<NfbCbnConfig> nfb_cbn_step(const NfbCbnConfig& c);
std::string show(const NfbCbnConfig& c);
std::string key(const NfbCbnConfig& c);

// ---------------------------------------------------------------------------
// Environment-based KAM (de Bruijn, closures)
// ---------------------------------------------------------------------------

struct ClosD {
  TermDPtr t;
  List<ClosD> env;
};
bool equal(const ClosD& a, const ClosD& b);

struct EnvKamConfig {
  TermDPtr term;
  List<ClosD> env;
  List<ClosD> stack;
};

StepResult<EnvKamConfig> kam_env_step(const EnvKamConfig& c);
std::string show(const EnvKamConfig& c);
std::string key(const EnvKamConfig& c);

// ---------------------------------------------------------------------------
// Applicative-bisimulation machine: env-KAM plus argument generation
// ---------------------------------------------------------------------------

struct AbPair {
  TermDPtr t;
  unsigned acc;
};

struct AbInd {
  unsigned n;
  List<AbPair> rho;
  ClosD clos; // (body, env) of the value under test
};
struct AbTm {
  TermDPtr t;
  unsigned acc;
  List<AbPair> rho;
  ClosD clos;
};
using AbConfig = std::variant<EnvKamConfig, AbInd, AbTm>;

StepResult<AbConfig> ab_step(const AbConfig& c);
std::string show(const AbConfig& c);
std::string key(const AbConfig& c);

// The canonical flag word that drives an argument-generating machine to
// produce t; with_mu enables the mu-binder extension.
FlagSeq seq_flags(const TermDPtr& t, bool with_mu = false);

} // namespace lamflag
