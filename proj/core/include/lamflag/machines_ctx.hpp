#pragma once

#include "lamflag/machines_cbv.hpp"

namespace lamflag {

// ---------------------------------------------------------------------------
// Contextual-equivalence machine: builds a closed context around a seed
// term (which sits inside the term under construction from the start), then
// runs the underlying evaluator and reports termination.
// ---------------------------------------------------------------------------

enum class CtxUnder { CbnEnv, Cek };

struct CtxInd {
  unsigned n, acc;
  List<AbPair> rho;
};
struct CtxTm {
  TermDPtr t;
  unsigned acc;
  List<AbPair> rho;
};
using CtxConfig = std::variant<CtxInd, CtxTm, EnvKamConfig, CekConfig>;

CtxConfig ctx_initial(const TermDPtr& seed);
StepResult<CtxConfig> ctx_step(const CtxConfig& c, CtxUnder under = CtxUnder::CbnEnv);
std::string show(const CtxConfig& c);
std::string key(const CtxConfig& c);

} // namespace lamflag
