#include "lamflag/machine.hpp"

#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace lamflag {

std::string to_string(const Flag& f) {
  switch (f.k) {
    case Flag::K::Lam: return "lam";
    case Flag::K::Var: return "var:" + std::to_string(f.payload);
    case Flag::K::Name: return "name:" + std::to_string(f.payload);
    case Flag::K::Done: return "done";
    case Flag::K::Enter: return "enter";
    case Flag::K::Skip: return "skip";
    case Flag::K::Arg: return "arg";
    case Flag::K::Suc: return "suc";
    case Flag::K::AppFun: return "appfun";
    case Flag::K::App: return "app";
    case Flag::K::Push: return "push";
    case Flag::K::AppL: return "appl";
    case Flag::K::AppR: return "appr";
    case Flag::K::Start: return "start";
    case Flag::K::Val: return "val";
    case Flag::K::Ctx: return "ctx";
    case Flag::K::IndMu: return "indmu";
    case Flag::K::SucMu: return "sucmu";
    case Flag::K::Mu: return "mu";
    case Flag::K::Rev: return "rev";
  }
  return "?";
}

std::string to_string(const std::vector<Flag>& fs) {
  std::string out;
  for (size_t i = 0; i < fs.size(); i++) {
    if (i) out += ",";
    out += to_string(fs[i]);
  }
  return out;
}

const char* machine_name(MachineKind k) {
  switch (k) {
    case MachineKind::Kam: return "kam";
    case MachineKind::KamEnv: return "kam-env";
    case MachineKind::NfbCbn: return "nfb-cbn";
    case MachineKind::Ab: return "ab";
    case MachineKind::Ctx: return "ctx";
    case MachineKind::Ck: return "ck";
    case MachineKind::Cek: return "cek";
    case MachineKind::NfbCbv: return "nfb-cbv";
    case MachineKind::AbCbv: return "ab-cbv";
    case MachineKind::KamMu: return "kam-mu";
    case MachineKind::NfbMu: return "nfb-mu";
    case MachineKind::KamMuEnv: return "kam-mu-env";
    case MachineKind::AbMu: return "ab-mu";
  }
  return "?";
}

std::vector<MachineKind> all_machines() {
  return {MachineKind::Kam,    MachineKind::KamEnv, MachineKind::NfbCbn,
          MachineKind::Ab,     MachineKind::Ctx,    MachineKind::Ck,
          MachineKind::Cek,    MachineKind::NfbCbv, MachineKind::AbCbv,
          MachineKind::KamMu,  MachineKind::NfbMu,  MachineKind::KamMuEnv,
          MachineKind::AbMu};
}

MachineKind machine_from_name(const std::string& name) {
  for (auto k : all_machines())
    if (name == machine_name(k)) return k;
  throw std::runtime_error("unknown machine '" + name + "'");
}

Dialect machine_dialect(MachineKind k) {
  switch (k) {
    case MachineKind::Kam:
    case MachineKind::NfbCbn:
    case MachineKind::Ck:
    case MachineKind::NfbCbv: return Dialect::NamedCbn;
    case MachineKind::KamMu:
    case MachineKind::NfbMu: return Dialect::NamedMu;
    case MachineKind::KamEnv:
    case MachineKind::Ab:
    case MachineKind::Ctx:
    case MachineKind::Cek:
    case MachineKind::AbCbv: return Dialect::Db;
    case MachineKind::KamMuEnv:
    case MachineKind::AbMu: return Dialect::DbMu;
  }
  return Dialect::NamedCbn;
}

namespace {

template <typename C>
StepResult<MachineConfig> lift(const StepResult<C>& r) {
  StepResult<MachineConfig> out;
  out.k = static_cast<StepResult<MachineConfig>::K>(r.k);
  out.stuck = r.stuck;
  out.detail = r.detail;
  for (const auto& a : r.alts) {
    Alt<MachineConfig> la{a.rule, a.flags, std::nullopt};
    if (a.next) la.next = MachineConfig{*a.next};
    out.alts.push_back(std::move(la));
  }
  return out;
}

} // namespace

StepResult<MachineConfig> machine_step(MachineKind k, const MachineConfig& c,
                                       const MachineOpts& opts) {
  switch (k) {
    case MachineKind::Kam: return lift(kam_step(std::get<KamConfig>(c)));
    case MachineKind::KamEnv: return lift(kam_env_step(std::get<EnvKamConfig>(c)));
    case MachineKind::NfbCbn: return lift(nfb_cbn_step(std::get<NfbCbnConfig>(c)));
    case MachineKind::Ab: return lift(ab_step(std::get<AbConfig>(c)));
    case MachineKind::Ctx: return lift(ctx_step(std::get<CtxConfig>(c), opts.under));
    case MachineKind::Ck: return lift(ck_step(std::get<CkConfig>(c)));
    case MachineKind::Cek: return lift(cek_step(std::get<CekConfig>(c)));
    case MachineKind::NfbCbv:
      return lift(nfb_cbv_step(std::get<NfbCbvConfig>(c), opts.eta_strict));
    case MachineKind::AbCbv: return lift(ab_cbv_step(std::get<AbCbvConfig>(c)));
    case MachineKind::KamMu: return lift(kam_mu_step(std::get<MuKamConfig>(c)));
    case MachineKind::NfbMu: return lift(nfb_mu_step(std::get<NfbMuConfig>(c)));
    case MachineKind::KamMuEnv: return lift(kam_mu_env_step(std::get<MuEnvConfig>(c)));
    case MachineKind::AbMu: return lift(ab_mu_step(std::get<AbMuConfig>(c)));
  }
  throw std::runtime_error("unknown machine kind");
}

std::string show_config(const MachineConfig& c) {
  return std::visit([](const auto& x) { return show(x); }, c);
}
std::string config_key(const MachineConfig& c) {
  return std::visit([](const auto& x) { return key(x); }, c);
}

MachineConfig initial_config(MachineKind k, const TermNPtr& t) {
  TermStats st = term_stats(t);
  unsigned n = st.max_free_var ? *st.max_free_var + 1 : 0;
  unsigned m = st.max_free_name ? *st.max_free_name + 1 : 0;
  switch (k) {
    case MachineKind::Kam: return KamConfig{t, {}};
    case MachineKind::NfbCbn: return NfbCbnConfig{true, t, {}, std::max(n, 1u)};
    case MachineKind::Ck: return CkConfig{true, t, {}};
    case MachineKind::NfbCbv: return NfbCbvConfig{CkConfig{true, t, {}}, std::max(n, 1u)};
    case MachineKind::KamMu: return MuKamConfig{t, StackN{{}, NameRef::free(0)}};
    case MachineKind::NfbMu:
      // run in a fresh name, with both counters above everything free
      return NfbMuConfig{true, t, StackN{{}, NameRef::free(m)}, std::max(n, 1u), m + 1};
    default:
      return initial_config(k, to_de_bruijn(t));
  }
}

MachineConfig initial_config(MachineKind k, const TermDPtr& t) {
  switch (k) {
    case MachineKind::KamEnv: return EnvKamConfig{t, {}, {}};
    case MachineKind::Ab: return AbConfig{EnvKamConfig{t, {}, {}}};
    case MachineKind::Ctx: return ctx_initial(t);
    case MachineKind::Cek: return CekConfig{true, t, {}, {}, {}};
    case MachineKind::AbCbv: return AbCbvConfig{CekConfig{true, t, {}, {}, {}}};
    case MachineKind::KamMuEnv:
      return MuEnvConfig{MuEnvEv{t, {}, {}, StackMu{{}, NameD::free(0)}}};
    case MachineKind::AbMu:
      return AbMuConfig{AbMuEv{t, {}, {}, {}, StackMu{{}, NameD::free(0)}}};
    default:
      return initial_config(k, from_de_bruijn(t));
  }
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

const char* to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::Halt: return "halt";
    case TraceStatus::Stuck: return "stuck";
    case TraceStatus::Fuel: return "fuel";
    case TraceStatus::Value: return "value";
    case TraceStatus::Error: return "error";
  }
  return "?";
}

namespace {

void run_rec(MachineKind k, const MachineConfig& c, unsigned fuel, RunPolicy policy,
             const MachineOpts& opts, Trace prefix, std::vector<Trace>& out) {
  MachineConfig cur = c;
  for (;;) {
    if (fuel == 0) {
      prefix.status = TraceStatus::Fuel;
      out.push_back(std::move(prefix));
      return;
    }
    auto r = machine_step(k, cur, opts);
    using K = StepResult<MachineConfig>::K;
    if (r.k == K::Stuck) {
      switch (r.stuck) {
        case StuckKind::Value: prefix.status = TraceStatus::Value; break;
        case StuckKind::Dead: prefix.status = TraceStatus::Stuck; break;
        case StuckKind::InvariantBroken:
          prefix.status = TraceStatus::Error;
          prefix.detail = r.detail;
          break;
      }
      out.push_back(std::move(prefix));
      return;
    }
    if (r.k == K::Silent) {
      fuel--;
      cur = *r.alts[0].next;
      prefix.steps.push_back(TraceStep{r.alts[0].rule, {}, show_config(cur)});
      continue;
    }
    // flagged
    if (policy == RunPolicy::FirstBranch) {
      fuel--;
      const auto& a = r.alts[0];
      prefix.steps.push_back(
          TraceStep{a.rule, a.flags, a.next ? show_config(*a.next) : "-"});
      if (!a.next) {
        prefix.status = TraceStatus::Halt;
        out.push_back(std::move(prefix));
        return;
      }
      cur = *a.next;
      continue;
    }
    for (const auto& a : r.alts) {
      Trace branch = prefix;
      branch.steps.push_back(
          TraceStep{a.rule, a.flags, a.next ? show_config(*a.next) : "-"});
      if (!a.next) {
        branch.status = TraceStatus::Halt;
        out.push_back(std::move(branch));
      } else {
        run_rec(k, *a.next, fuel - 1, policy, opts, std::move(branch), out);
      }
    }
    return;
  }
}

} // namespace

std::vector<Trace> run_machine(MachineKind k, MachineConfig c0, unsigned fuel,
                               RunPolicy policy, const MachineOpts& opts) {
  std::vector<Trace> out;
  Trace start;
  start.machine = machine_name(k);
  run_rec(k, c0, fuel, policy, opts, std::move(start), out);
  return out;
}

std::string emit_trace_json(const std::vector<Trace>& traces) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : traces) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : t.steps) {
      nlohmann::json flags = nlohmann::json::array();
      for (const auto& f : s.flags) flags.push_back(to_string(f));
      steps.push_back({{"rule", s.rule}, {"flags", flags}, {"config", s.config}});
    }
    arr.push_back({{"machine", t.machine}, {"steps", steps}, {"status", to_string(t.status)}});
  }
  if (traces.size() == 1) return arr[0].dump(2) + "\n";
  return arr.dump(2) + "\n";
}

std::string emit_trace_text(const std::vector<Trace>& traces) {
  std::ostringstream out;
  for (size_t i = 0; i < traces.size(); i++) {
    if (traces.size() > 1) out << "trace " << i + 1 << ":\n";
    const auto& t = traces[i];
    for (const auto& s : t.steps) {
      out << s.rule << " [" << to_string(s.flags) << "] " << s.config << "\n";
    }
    out << "status: " << to_string(t.status);
    if (!t.detail.empty()) out << " (" << t.detail << ")";
    out << "\n";
  }
  return out.str();
}

} // namespace lamflag
