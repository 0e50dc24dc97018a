#pragma once

#include <variant>

#include "lamflag/machines_cbn.hpp"

namespace lamflag {

// ---------------------------------------------------------------------------
// CK machine (substitution-based, left-to-right call by value)
// ---------------------------------------------------------------------------

struct CkFrame {
  bool is_arg;  // arg t (unevaluated argument) vs fun v (evaluated function)
  TermNPtr t;
};

struct CkConfig {
  bool eval = true;
  TermNPtr term;          // eval: term under evaluation; cont: current value
  List<CkFrame> stack;
};

bool is_value_n(const TermNPtr& t); // FVar or Lam

StepResult<CkConfig> ck_step(const CkConfig& c);
std::string show(const CkConfig& c);
std::string key(const CkConfig& c);

// ---------------------------------------------------------------------------
// NFB machine for call by value: CK plus a counter and normal-form tests.
// eta_strict selects the variant that distinguishes values by kind.
// ---------------------------------------------------------------------------

struct NfbCbvConfig {
  CkConfig ck;
  unsigned counter = 0;
};

StepResult<NfbCbvConfig> nfb_cbv_step(const NfbCbvConfig& c, bool eta_strict = false);
std::string show(const NfbCbvConfig& c);
std::string key(const NfbCbvConfig& c);

// ---------------------------------------------------------------------------
// CEK machine: CK with closures and environments. Environment discipline as
// in the call-by-name environment machine; frames hold closures.
// ---------------------------------------------------------------------------

struct CekFrame {
  bool is_arg; // arg closure (unevaluated) vs fun closure (a value)
  ClosD c;
};

struct CekConfig {
  bool eval = true;
  TermDPtr term;      // eval mode
  List<ClosD> env;    // eval mode
  ClosD value;        // cont mode: the computed value closure
  List<CekFrame> stack;
};

StepResult<CekConfig> cek_step(const CekConfig& c);
std::string show(const CekConfig& c);
std::string key(const CekConfig& c);

// ---------------------------------------------------------------------------
// AB machine for call by value: argument generation on top of the CEK
// machine; the generated argument must be a lambda-abstraction before the
// machine may restart.
// ---------------------------------------------------------------------------

struct AbCbvInd {
  unsigned n;
  List<AbPair> rho;
  ClosD clos;
};
struct AbCbvTm {
  TermDPtr t;
  unsigned acc;
  List<AbPair> rho;
  ClosD clos;
};
using AbCbvConfig = std::variant<CekConfig, AbCbvInd, AbCbvTm>;

StepResult<AbCbvConfig> ab_cbv_step(const AbCbvConfig& c);
std::string show(const AbCbvConfig& c);
std::string key(const AbCbvConfig& c);

} // namespace lamflag
