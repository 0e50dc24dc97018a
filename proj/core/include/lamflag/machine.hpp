#pragma once

#include <variant>

#include "lamflag/machines_ctx.hpp"
#include "lamflag/machines_mu.hpp"

namespace lamflag {

enum class MachineKind {
  Kam, KamEnv, NfbCbn, Ab, Ctx,
  Ck, Cek, NfbCbv, AbCbv,
  KamMu, NfbMu, KamMuEnv, AbMu,
};

struct MachineOpts {
  bool eta_strict = false;       // nfb-cbv variant
  CtxUnder under = CtxUnder::CbnEnv; // ctx underlying evaluator
};

const char* machine_name(MachineKind k);
MachineKind machine_from_name(const std::string& name);
std::vector<MachineKind> all_machines();

// Which dialect a machine's input terms use.
Dialect machine_dialect(MachineKind k);

using MachineConfig =
    std::variant<KamConfig, NfbCbnConfig, EnvKamConfig, AbConfig, CtxConfig, CkConfig,
                 CekConfig, NfbCbvConfig, AbCbvConfig, MuKamConfig, NfbMuConfig,
                 MuEnvConfig, AbMuConfig>;

StepResult<MachineConfig> machine_step(MachineKind k, const MachineConfig& c,
                                       const MachineOpts& opts = {});
std::string show_config(const MachineConfig& c);
std::string config_key(const MachineConfig& c);

// Initial configuration for a machine. Named machines take named terms,
// de Bruijn machines take de Bruijn terms (closed where required).
MachineConfig initial_config(MachineKind k, const TermNPtr& t);
MachineConfig initial_config(MachineKind k, const TermDPtr& t);

// ---------------------------------------------------------------------------
// Fueled driver
// ---------------------------------------------------------------------------

enum class TraceStatus { Halt, Stuck, Fuel, Value, Error };
const char* to_string(TraceStatus s);

struct TraceStep {
  std::string rule;
  FlagSeq flags;
  std::string config; // printed configuration after the step ("-" for halt)
};

struct Trace {
  std::string machine;
  std::vector<TraceStep> steps;
  TraceStatus status = TraceStatus::Fuel;
  std::string detail;

  FlagSeq flag_word() const {
    FlagSeq w;
    for (const auto& s : steps) w.insert(w.end(), s.flags.begin(), s.flags.end());
    return w;
  }
};

enum class RunPolicy { FirstBranch, AllBranches };

// Runs a machine for at most `fuel` transitions per path. FirstBranch takes
// the first flagged alternative at each choice; AllBranches returns every
// maximal trace of the branching tree, in alternative order.
std::vector<Trace> run_machine(MachineKind k, MachineConfig c0, unsigned fuel,
                               RunPolicy policy = RunPolicy::FirstBranch,
                               const MachineOpts& opts = {});

std::string emit_trace_json(const std::vector<Trace>& traces);
std::string emit_trace_text(const std::vector<Trace>& traces);

} // namespace lamflag
