#pragma once

#include <variant>

#include "lamflag/machines_cbn.hpp"

namespace lamflag {

// ---------------------------------------------------------------------------
// Substitution-based lambda-mu KAM. Stacks are named-term lists ended by a
// name; the distinguished toplevel name is the free name 0.
// ---------------------------------------------------------------------------

struct MuKamConfig {
  TermNPtr term;
  StackN stack;
};

StepResult<MuKamConfig> kam_mu_step(const MuKamConfig& c);
std::string show(const MuKamConfig& c);
std::string key(const MuKamConfig& c);

// ---------------------------------------------------------------------------
// NFB machine for the call-by-name lambda-mu calculus: two counters, n for
// fresh term variables and m for fresh names.
// ---------------------------------------------------------------------------

struct NfbMuConfig {
  bool eval = true;
  TermNPtr term; // eval mode
  StackN stack;
  unsigned n = 0;
  unsigned m = 0;
};

StepResult<NfbMuConfig> nfb_mu_step(const NfbMuConfig& c);
std::string show(const NfbMuConfig& c);
std::string key(const NfbMuConfig& c);

// ---------------------------------------------------------------------------
// Environment-based lambda-mu KAM (de Bruijn): separate environments for
// term variables (closures) and bound names (stacks). The applicative
// machine adds a free-names environment to closures and configurations.
// ---------------------------------------------------------------------------

struct StackMu;

struct ClosMu {
  TermDPtr t;
  List<ClosMu> e;
  List<StackMu> eb;
  List<StackMu> ef; // testing environment; unused by the plain machine
};

struct StackMu {
  List<ClosMu> items; // head = top
  NameD end;
};

bool equal(const ClosMu& a, const ClosMu& b);
bool equal(const StackMu& a, const StackMu& b);

struct MuEnvEv {
  TermDPtr t;
  List<ClosMu> e;
  List<StackMu> eb;
  StackMu stack;
};
struct MuEnvBn {
  unsigned b;
  List<StackMu> eb;
  ClosMu clos;
};
using MuEnvConfig = std::variant<MuEnvEv, MuEnvBn>;

StepResult<MuEnvConfig> kam_mu_env_step(const MuEnvConfig& c);
std::string show(const MuEnvConfig& c);
std::string key(const MuEnvConfig& c);

// ---------------------------------------------------------------------------
// AB machine for the call-by-name lambda-mu calculus.
// ---------------------------------------------------------------------------

struct AbMuPair {
  TermDPtr t;
  unsigned acc;
  unsigned accmu;
};

struct AbMuEv {
  TermDPtr t;
  List<ClosMu> e;
  List<StackMu> eb;
  List<StackMu> ef;
  StackMu stack;
};
struct AbMuBn {
  unsigned b;
  List<StackMu> eb;
  ClosMu clos;
  List<StackMu> ef; // the configuration-global testing environment
};
struct AbMuFn {
  unsigned a;          // index still to resolve
  List<StackMu> ef;    // remaining environment
  List<StackMu> rev;   // traversed prefix, reversed
  ClosMu clos;
  unsigned orig;       // the full index (rank when generation starts)
};
struct AbMuInd {
  unsigned n, acc, accmu;
  List<AbMuPair> rho;
  ClosMu clos;
  List<StackMu> rev;
  unsigned orig;
};
struct AbMuIndMu {
  unsigned b;
  TermDPtr t;
  unsigned acc, accmu;
  List<AbMuPair> rho;
  ClosMu clos;
  List<StackMu> rev;
  unsigned orig;
};
struct AbMuTm {
  TermDPtr t;
  unsigned acc, accmu;
  List<AbMuPair> rho;
  ClosMu clos;
  List<StackMu> rev;
  unsigned orig;
};
struct AbMuEfn {
  List<StackMu> rev; // still to replay
  List<StackMu> ef;  // rebuilt environment
  ClosMu clos;
  StackMu stack;     // the new bottom stack
};
using AbMuConfig =
    std::variant<AbMuEv, AbMuBn, AbMuFn, AbMuInd, AbMuIndMu, AbMuTm, AbMuEfn>;

StepResult<AbMuConfig> ab_mu_step(const AbMuConfig& c);
std::string show(const AbMuConfig& c);
std::string key(const AbMuConfig& c);

// A testing environment of rank m: entry i is (t_i, -, -, -) . (i+1) for a
// closed t_i.
List<StackMu> testing_env(const std::vector<TermDPtr>& terms);

} // namespace lamflag
