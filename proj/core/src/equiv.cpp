#include "lamflag/equiv.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lamflag {

std::string verdict_json(const Verdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case VerdictKind::Bisimilar: j["verdict"] = "bisimilar"; break;
    case VerdictKind::Distinguished: j["verdict"] = "distinguished"; break;
    case VerdictKind::Unknown: j["verdict"] = "unknown"; break;
  }
  j["depth"] = v.depth;
  j["witness"] = v.witness;
  j["up_to_fuel"] = v.up_to_fuel;
  return j.dump() + "\n";
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  switch (v.kind) {
    case VerdictKind::Bisimilar:
      out << "bisimilar (depth " << v.depth << (v.up_to_fuel ? ", up to fuel" : "") << ")";
      break;
    case VerdictKind::Distinguished: {
      out << "distinguished; witness:";
      for (const auto& w : v.witness) out << ' ' << w;
      break;
    }
    case VerdictKind::Unknown:
      out << "unknown (" << v.reason << ")";
      break;
  }
  out << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// machine_bisim
// ---------------------------------------------------------------------------

namespace {

struct TauEnd {
  enum class K { Flags, Silent, Fuel, Broken } k = K::Fuel;
  MachineConfig at;
  std::vector<Alt<MachineConfig>> alts;
  std::string detail;
};

// Advance through silent steps to the next flag point, terminal state, or
// fuel exhaustion. Silent means stuck-without-flag: terminal, definitely no
// flags ever (values of unflagged machines).
TauEnd tau_advance(MachineKind k, MachineConfig c, unsigned tau_fuel,
                   const MachineOpts& opts) {
  TauEnd e;
  for (unsigned i = 0; i <= tau_fuel; i++) {
    auto r = machine_step(k, c, opts);
    using K = StepResult<MachineConfig>::K;
    if (r.k == K::Silent) {
      if (i == tau_fuel) break;
      c = *r.alts[0].next;
      continue;
    }
    if (r.k == K::Flagged) {
      e.k = TauEnd::K::Flags;
      e.at = std::move(c);
      e.alts = std::move(r.alts);
      return e;
    }
    if (r.stuck == StuckKind::InvariantBroken) {
      e.k = TauEnd::K::Broken;
      e.detail = r.detail;
      return e;
    }
    e.k = TauEnd::K::Silent;
    e.at = std::move(c);
    return e;
  }
  e.k = TauEnd::K::Fuel;
  return e;
}

struct BisimCtx {
  MachineKind kind;
  unsigned tau_fuel;
  MachineOpts opts;
  std::map<std::tuple<std::string, std::string, unsigned>, Verdict> memo;
};

Verdict mb_go(BisimCtx& ctx, const MachineConfig& c1, const MachineConfig& c2,
              unsigned depth) {
  if (depth == 0) return Verdict::bisimilar(0);
  auto key = std::make_tuple(config_key(c1), config_key(c2), depth);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  // provisional entry breaks cycles: assume bisimilar while checking
  ctx.memo[key] = Verdict::bisimilar(depth);

  TauEnd e1 = tau_advance(ctx.kind, c1, ctx.tau_fuel, ctx.opts);
  TauEnd e2 = tau_advance(ctx.kind, c2, ctx.tau_fuel, ctx.opts);

  Verdict result = Verdict::bisimilar(depth);
  auto no_flags = [](const TauEnd& e) {
    return e.k == TauEnd::K::Fuel || e.k == TauEnd::K::Silent;
  };
  if (e1.k == TauEnd::K::Broken || e2.k == TauEnd::K::Broken) {
    result = Verdict::unknown("invariant broken: " +
                              (e1.k == TauEnd::K::Broken ? e1.detail : e2.detail));
  } else if (no_flags(e1) && no_flags(e2)) {
    bool upto = e1.k == TauEnd::K::Fuel || e2.k == TauEnd::K::Fuel;
    result = Verdict::bisimilar(depth, upto);
  } else if (no_flags(e1) || no_flags(e2)) {
    // one side offers a flag, the other went silent
    const TauEnd& silent = no_flags(e1) ? e1 : e2;
    const TauEnd& loud = no_flags(e1) ? e2 : e1;
    if (silent.k == TauEnd::K::Fuel) {
      result = Verdict::unknown("divergence-suspected");
    } else {
      // definitively flagless vs flagged
      result = Verdict::distinguished({to_string(loud.alts[0].flags)});
    }
  } else {
    bool upto = false;
    bool unknown = false;
    std::string why;
    auto match = [&](const std::vector<Alt<MachineConfig>>& from,
                     const std::vector<Alt<MachineConfig>>& to) -> Verdict {
      for (const auto& a : from) {
        const Alt<MachineConfig>* partner = nullptr;
        for (const auto& b : to)
          if (a.flags == b.flags) {
            partner = &b;
            break;
          }
        if (!partner) return Verdict::distinguished({to_string(a.flags)});
        if (a.next.has_value() != partner->next.has_value())
          return Verdict::distinguished({to_string(a.flags)});
        if (!a.next) continue; // both halt
        Verdict sub = mb_go(ctx, *a.next, *partner->next, depth - 1);
        if (sub.kind == VerdictKind::Distinguished) {
          sub.witness.insert(sub.witness.begin(), to_string(a.flags));
          return sub;
        }
        if (sub.kind == VerdictKind::Unknown) {
          unknown = true;
          why = sub.reason;
        }
        upto = upto || sub.up_to_fuel;
      }
      return Verdict::bisimilar(depth);
    };
    Verdict f = match(e1.alts, e2.alts);
    if (f.kind == VerdictKind::Distinguished) {
      result = f;
    } else {
      Verdict b = match(e2.alts, e1.alts);
      if (b.kind == VerdictKind::Distinguished) {
        result = b;
      } else if (unknown) {
        result = Verdict::unknown(why);
      } else {
        result = Verdict::bisimilar(depth, upto);
      }
    }
  }
  ctx.memo[key] = result;
  return result;
}

} // namespace

Verdict machine_bisim(MachineKind k, const MachineConfig& c1, const MachineConfig& c2,
                      unsigned depth, unsigned tau_fuel, const MachineOpts& opts) {
  BisimCtx ctx{k, tau_fuel, opts, {}};
  Verdict v = mb_go(ctx, c1, c2, depth);
  v.depth = depth;
  return v;
}

// ---------------------------------------------------------------------------
// hocore_bisim
// ---------------------------------------------------------------------------

namespace {

struct ProcHash {
  size_t operator()(const ho::Proc& p) const { return static_cast<size_t>(p->hash); }
};
struct ProcEq {
  bool operator()(const ho::Proc& a, const ho::Proc& b) const { return ho::equal(a, b); }
};

struct HoCtx {
  const TranslationProfile* profile;
  std::set<std::string> hidden;
  unsigned tau_fuel;
  std::string audit_error;
  std::map<std::tuple<uint64_t, uint64_t, unsigned>, Verdict> memo;
};

// All weak visible steps from p: labels with successors, plus exploration
// completeness. Inputs read "ch", outputs "ch!".
struct VisibleSet {
  std::map<std::string, std::vector<ho::Proc>> steps;
  bool complete = true;
};

VisibleSet weak_visible(HoCtx& ctx, const ho::Proc& p) {
  VisibleSet out;
  ho::TauClosure cl = ho::tau_closure(p, ctx.tau_fuel);
  out.complete = !cl.fuel_exhausted;
  for (const auto& q : cl.states) {
    for (auto& [l, r] : ho::visible_steps(q, ctx.hidden)) {
      std::string label = l.channel;
      if (l.k == ho::Label::K::Out) {
        label += "!";
        if (!ctx.profile->convergence_barb && ctx.profile->flag_channels.count(l.channel) &&
            ctx.audit_error.empty())
          ctx.audit_error = "output on flag channel " + l.channel;
      }
      auto& v = out.steps[label];
      bool dup = false;
      for (const auto& s : v)
        if (ho::equal(s, r)) {
          dup = true;
          break;
        }
      if (!dup) v.push_back(r);
    }
  }
  return out;
}

Verdict ho_go(HoCtx& ctx, const ho::Proc& p1, const ho::Proc& p2, unsigned depth) {
  if (depth == 0) return Verdict::bisimilar(0);
  auto key = std::make_tuple(p1->hash, p2->hash, depth);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  ctx.memo[key] = Verdict::bisimilar(depth);

  VisibleSet v1 = weak_visible(ctx, p1);
  VisibleSet v2 = weak_visible(ctx, p2);

  Verdict result = Verdict::bisimilar(depth);
  if (!v1.complete || !v2.complete) {
    if (v1.steps.empty() && v2.steps.empty())
      result = Verdict::bisimilar(depth, true);
    else
      result = Verdict::unknown("divergence-suspected");
  } else {
    bool upto = false, unknown = false;
    std::string why;
    auto match = [&](const VisibleSet& from, const VisibleSet& to) -> Verdict {
      for (const auto& [label, succs] : from.steps) {
        auto itl = to.steps.find(label);
        if (itl == to.steps.end()) return Verdict::distinguished({label});
        for (const auto& q1 : succs) {
          bool matched = false;
          bool sub_unknown = false;
          std::string sub_why;
          Verdict first_dist;
          for (const auto& q2 : itl->second) {
            Verdict sub = ho_go(ctx, q1, q2, depth - 1);
            if (sub.kind == VerdictKind::Bisimilar) {
              matched = true;
              upto = upto || sub.up_to_fuel;
              break;
            }
            if (sub.kind == VerdictKind::Unknown) {
              sub_unknown = true;
              sub_why = sub.reason;
            } else if (first_dist.witness.empty()) {
              first_dist = sub;
            }
          }
          if (!matched) {
            if (sub_unknown) {
              unknown = true;
              why = sub_why;
            } else {
              first_dist.witness.insert(first_dist.witness.begin(), label);
              return first_dist;
            }
          }
        }
      }
      return Verdict::bisimilar(depth);
    };
    Verdict f = match(v1, v2);
    if (f.kind == VerdictKind::Distinguished) {
      result = f;
    } else {
      Verdict b = match(v2, v1);
      if (b.kind == VerdictKind::Distinguished) {
        result = b;
      } else if (unknown) {
        result = Verdict::unknown(why);
      } else {
        result = Verdict::bisimilar(depth, upto);
      }
    }
  }
  ctx.memo[key] = result;
  return result;
}

} // namespace

Verdict hocore_bisim(const ho::Proc& p1, const ho::Proc& p2,
                     const TranslationProfile& profile, unsigned depth,
                     unsigned tau_fuel) {
  HoCtx ctx;
  ctx.profile = &profile;
  ctx.hidden = hidden_channels(profile, p1, p2);
  ctx.tau_fuel = tau_fuel;
  Verdict v = ho_go(ctx, p1, p2, depth);
  if (!ctx.audit_error.empty()) return Verdict::unknown("audit: " + ctx.audit_error);
  v.depth = depth;
  return v;
}

// ---------------------------------------------------------------------------
// Direct oracles
// ---------------------------------------------------------------------------

namespace {

// Weak-head evaluation of an open named term in the empty stack, by the
// call-by-name machine rules.
struct CbnNf {
  enum class K { Value, Head, Fuel } k = K::Fuel;
  TermNPtr lam_body;
  std::string binder;
  unsigned head_var = 0;
  std::vector<TermNPtr> stack;
};

CbnNf cbn_eval(TermNPtr t, unsigned fuel) {
  KamConfig c{std::move(t), {}};
  CbnNf out;
  for (unsigned i = 0; i < fuel; i++) {
    if (c.term->k == TermN::K::Lam && c.stack.empty()) {
      out.k = CbnNf::K::Value;
      out.binder = c.term->ident;
      out.lam_body = c.term->a;
      return out;
    }
    if (c.term->k == TermN::K::FVar) {
      out.k = CbnNf::K::Head;
      out.head_var = c.term->index;
      out.stack = c.stack.to_vector();
      return out;
    }
    auto r = kam_step(c);
    if (r.k != StepResult<KamConfig>::K::Silent) return out; // fuel kind
    c = *r.alts[0].next;
  }
  return out;
}

Verdict nf_cbn_go(const TermNPtr& t, const TermNPtr& s, unsigned depth, unsigned n,
                  unsigned fuel) {
  if (depth == 0) return Verdict::bisimilar(0);
  CbnNf a = cbn_eval(t, fuel);
  CbnNf b = cbn_eval(s, fuel);
  if (a.k == CbnNf::K::Fuel && b.k == CbnNf::K::Fuel)
    return Verdict::bisimilar(depth, true);
  if (a.k == CbnNf::K::Fuel || b.k == CbnNf::K::Fuel)
    return Verdict::unknown("divergence-suspected");
  if (a.k != b.k)
    return Verdict::distinguished({a.k == CbnNf::K::Value ? "lam" : "var"});
  if (a.k == CbnNf::K::Value) {
    Verdict sub = nf_cbn_go(subst(a.lam_body, a.binder, fvar(n)),
                            subst(b.lam_body, b.binder, fvar(n)), depth - 1, n + 1, fuel);
    if (sub.kind == VerdictKind::Distinguished)
      sub.witness.insert(sub.witness.begin(), "lam");
    return sub;
  }
  if (a.head_var != b.head_var)
    return Verdict::distinguished({"var:" + std::to_string(a.head_var),
                                   "var:" + std::to_string(b.head_var)});
  if (a.stack.size() != b.stack.size())
    return Verdict::distinguished({"stack-length"});
  bool upto = false;
  for (size_t i = 0; i < a.stack.size(); i++) {
    Verdict sub = nf_cbn_go(a.stack[i], b.stack[i], depth - 1, n, fuel);
    if (sub.kind != VerdictKind::Bisimilar) {
      if (sub.kind == VerdictKind::Distinguished)
        sub.witness.insert(sub.witness.begin(),
                           "var:" + std::to_string(a.head_var) + "@" + std::to_string(i));
      return sub;
    }
    upto = upto || sub.up_to_fuel;
  }
  return Verdict::bisimilar(depth, upto);
}

// Call-by-value evaluation outcome of a CK configuration.
struct CbvNf {
  enum class K { Value, StuckFun, Fuel } k = K::Fuel;
  TermNPtr value;
  unsigned fun_var = 0;
  List<CkFrame> rest;
};

CbvNf cbv_eval(CkConfig c, unsigned fuel) {
  CbvNf out;
  for (unsigned i = 0; i < fuel; i++) {
    if (!c.eval) {
      if (c.stack.empty()) {
        out.k = CbvNf::K::Value;
        out.value = c.term;
        return out;
      }
      CkFrame top = c.stack.head();
      if (!top.is_arg && top.t->k == TermN::K::FVar) {
        out.k = CbvNf::K::StuckFun;
        out.fun_var = top.t->index;
        out.value = c.term;
        out.rest = c.stack.tail();
        return out;
      }
    }
    auto r = ck_step(c);
    if (r.k != StepResult<CkConfig>::K::Silent) return out;
    c = *r.alts[0].next;
  }
  return out;
}

Verdict nf_cbv_go(const CkConfig& c1, const CkConfig& c2, unsigned depth, unsigned n,
                  unsigned fuel) {
  if (depth == 0) return Verdict::bisimilar(0);
  CbvNf a = cbv_eval(c1, fuel);
  CbvNf b = cbv_eval(c2, fuel);
  if (a.k == CbvNf::K::Fuel && b.k == CbvNf::K::Fuel)
    return Verdict::bisimilar(depth, true);
  if (a.k == CbvNf::K::Fuel || b.k == CbvNf::K::Fuel)
    return Verdict::unknown("divergence-suspected");
  if (a.k != b.k)
    return Verdict::distinguished({a.k == CbvNf::K::Value ? "value" : "stuck"});
  auto apply_to_fresh = [&](const TermNPtr& val) {
    return CkConfig{false, fvar(n), List<CkFrame>{}.push(CkFrame{false, val})};
  };
  if (a.k == CbvNf::K::Value) {
    Verdict sub =
        nf_cbv_go(apply_to_fresh(a.value), apply_to_fresh(b.value), depth - 1, n + 1, fuel);
    if (sub.kind == VerdictKind::Distinguished)
      sub.witness.insert(sub.witness.begin(), "lam");
    return sub;
  }
  if (a.fun_var != b.fun_var)
    return Verdict::distinguished({"var:" + std::to_string(a.fun_var),
                                   "var:" + std::to_string(b.fun_var)});
  Verdict sv =
      nf_cbv_go(apply_to_fresh(a.value), apply_to_fresh(b.value), depth - 1, n + 1, fuel);
  if (sv.kind != VerdictKind::Bisimilar) {
    if (sv.kind == VerdictKind::Distinguished)
      sv.witness.insert(sv.witness.begin(), "var:" + std::to_string(a.fun_var) + ",val");
    return sv;
  }
  Verdict sc = nf_cbv_go(CkConfig{false, fvar(n), a.rest},
                         CkConfig{false, fvar(n), b.rest}, depth - 1, n + 1, fuel);
  if (sc.kind == VerdictKind::Distinguished)
    sc.witness.insert(sc.witness.begin(), "var:" + std::to_string(a.fun_var) + ",ctx");
  if (sc.kind == VerdictKind::Bisimilar && (sc.up_to_fuel || sv.up_to_fuel))
    sc.up_to_fuel = true;
  return sc;
}

// Lambda-mu weak-head evaluation at a given free name.
struct MuNf {
  enum class K { Value, Head, Fuel } k = K::Fuel;
  TermNPtr lam_body;
  std::string binder;
  unsigned end_name = 0; // value: the name the value sits in
  unsigned head_var = 0;
  StackN stack;
};

MuNf mu_eval(TermNPtr t, unsigned name, unsigned fuel) {
  MuKamConfig c{std::move(t), StackN{{}, NameRef::free(name)}};
  MuNf out;
  for (unsigned i = 0; i < fuel; i++) {
    if (c.term->k == TermN::K::Lam && c.stack.items.empty() && !c.stack.end.is_bound) {
      out.k = MuNf::K::Value;
      out.binder = c.term->ident;
      out.lam_body = c.term->a;
      out.end_name = c.stack.end.index;
      return out;
    }
    if (c.term->k == TermN::K::FVar) {
      out.k = MuNf::K::Head;
      out.head_var = c.term->index;
      out.stack = c.stack;
      return out;
    }
    auto r = kam_mu_step(c);
    if (r.k != StepResult<MuKamConfig>::K::Silent) return out;
    c = *r.alts[0].next;
  }
  return out;
}

Verdict nf_mu_go(const TermNPtr& t, const TermNPtr& s, unsigned depth, unsigned n,
                 unsigned m, unsigned fuel) {
  if (depth == 0) return Verdict::bisimilar(0);
  MuNf a = mu_eval(t, m, fuel);
  MuNf b = mu_eval(s, m, fuel);
  if (a.k == MuNf::K::Fuel && b.k == MuNf::K::Fuel) return Verdict::bisimilar(depth, true);
  if (a.k == MuNf::K::Fuel || b.k == MuNf::K::Fuel)
    return Verdict::unknown("divergence-suspected");
  if (a.k != b.k)
    return Verdict::distinguished({a.k == MuNf::K::Value ? "lam" : "var"});
  if (a.k == MuNf::K::Value) {
    if (a.end_name != b.end_name)
      return Verdict::distinguished({"name:" + std::to_string(a.end_name),
                                     "name:" + std::to_string(b.end_name)});
    Verdict sub = nf_mu_go(subst(a.lam_body, a.binder, fvar(n)),
                           subst(b.lam_body, b.binder, fvar(n)), depth - 1, n + 1, m + 1,
                           fuel);
    if (sub.kind == VerdictKind::Distinguished)
      sub.witness.insert(sub.witness.begin(),
                         "name:" + std::to_string(a.end_name) + ",lam");
    return sub;
  }
  if (a.head_var != b.head_var)
    return Verdict::distinguished({"var:" + std::to_string(a.head_var),
                                   "var:" + std::to_string(b.head_var)});
  if (a.stack.items.size() != b.stack.items.size() || !(a.stack.end == b.stack.end))
    return Verdict::distinguished({"stack-shape"});
  bool upto = false;
  for (size_t i = 0; i < a.stack.items.size(); i++) {
    Verdict sub = nf_mu_go(a.stack.items[i], b.stack.items[i], depth - 1, n, m + 1, fuel);
    if (sub.kind != VerdictKind::Bisimilar) return sub;
    upto = upto || sub.up_to_fuel;
  }
  return Verdict::bisimilar(depth, upto);
}

} // namespace

Verdict nf_bisim_direct(const TermNPtr& t, const TermNPtr& s, EquivMode mode,
                        unsigned depth, unsigned fuel) {
  TermStats st = term_stats(t), ss = term_stats(s);
  unsigned n = 1 + std::max(st.max_free_var.value_or(0), ss.max_free_var.value_or(0));
  unsigned m = 1 + std::max(st.max_free_name.value_or(0), ss.max_free_name.value_or(0));
  Verdict v;
  switch (mode) {
    case EquivMode::Cbn: v = nf_cbn_go(t, s, depth, n, fuel); break;
    case EquivMode::Cbv:
      v = nf_cbv_go(CkConfig{true, t, {}}, CkConfig{true, s, {}}, depth, n, fuel);
      break;
    case EquivMode::Mu: v = nf_mu_go(t, s, depth, n, m, fuel); break;
  }
  v.depth = depth;
  return v;
}

// ---------------------------------------------------------------------------
// Term enumeration
// ---------------------------------------------------------------------------

namespace {

struct EnumKey {
  unsigned size, vars, mus;
  bool operator<(const EnumKey& o) const {
    return std::tie(size, vars, mus) < std::tie(o.size, o.vars, o.mus);
  }
};

void enum_terms(unsigned size, unsigned vars, unsigned mus, bool with_mu,
                std::map<EnumKey, std::vector<TermDPtr>>& memo,
                std::vector<TermDPtr>& out) {
  EnumKey key{size, vars, mus};
  auto it = memo.find(key);
  if (it != memo.end()) {
    out = it->second;
    return;
  }
  std::vector<TermDPtr> res;
  if (size == 1) {
    for (unsigned i = 0; i < vars; i++) res.push_back(didx(i));
  } else if (size >= 2) {
    std::vector<TermDPtr> bodies;
    enum_terms(size - 1, vars + 1, mus, with_mu, memo, bodies);
    for (auto& b : bodies) res.push_back(dlam(b));
    for (unsigned i = 1; i + 1 <= size - 1; i++) {
      std::vector<TermDPtr> funs, args;
      enum_terms(i, vars, mus, with_mu, memo, funs);
      enum_terms(size - 1 - i, vars, mus, with_mu, memo, args);
      for (auto& f : funs)
        for (auto& a : args) res.push_back(dapp(f, a));
    }
    if (with_mu) {
      std::vector<TermDPtr> bodies2;
      enum_terms(size - 1, vars, mus + 1, with_mu, memo, bodies2);
      for (unsigned b = 0; b <= mus; b++)
        for (auto& t : bodies2) res.push_back(dmu(NameD::bound(b), t));
    }
  }
  memo[key] = res;
  out = std::move(res);
}

} // namespace

std::vector<TermDPtr> enumerate_closed(unsigned max_size, bool with_mu,
                                       bool values_only) {
  std::map<EnumKey, std::vector<TermDPtr>> memo;
  std::vector<TermDPtr> all;
  for (unsigned n = 1; n <= max_size; n++) {
    std::vector<TermDPtr> batch;
    enum_terms(n, 0, 0, with_mu, memo, batch);
    for (auto& t : batch)
      if (!values_only || t->k == TermD::K::Lam) all.push_back(t);
  }
  return all;
}

// ---------------------------------------------------------------------------
// app_bisim_direct
// ---------------------------------------------------------------------------

namespace {

// Resolve a closed closure into a plain closed term (environment entries are
// closed, so no shifting is needed when substituting under binders).
TermDPtr flatten_clos(const TermDPtr& t, const std::vector<ClosD>& env, unsigned depth) {
  switch (t->k) {
    case TermD::K::Idx: {
      if (t->index < depth) return t;
      unsigned i = t->index - depth;
      if (i >= env.size()) throw std::runtime_error("open closure");
      const ClosD& c = env[i];
      return flatten_clos(c.t, c.env.to_vector(), 0);
    }
    case TermD::K::Lam: return dlam(flatten_clos(t->a, env, depth + 1));
    case TermD::K::App:
      return dapp(flatten_clos(t->a, env, depth), flatten_clos(t->b, env, depth));
    default: throw std::runtime_error("unexpected term in closure");
  }
}

std::string clos_canon(const ClosD& c) {
  return print_term(flatten_clos(c.t, c.env.to_vector(), 0));
}

struct EvalClos {
  enum class K { Value, Fuel, Broken } k = K::Fuel;
  ClosD value; // (body, env) of the lambda value
};

EvalClos eval_cbn_clos(const ClosD& c, unsigned fuel) {
  EnvKamConfig cfg{c.t, c.env, {}};
  EvalClos out;
  for (unsigned i = 0; i < fuel; i++) {
    if (cfg.term->k == TermD::K::Lam && cfg.stack.empty()) {
      out.k = EvalClos::K::Value;
      out.value = ClosD{cfg.term->a, cfg.env};
      return out;
    }
    auto r = kam_env_step(cfg);
    if (r.k != StepResult<EnvKamConfig>::K::Silent) {
      out.k = EvalClos::K::Broken;
      return out;
    }
    cfg = *r.alts[0].next;
  }
  return out;
}

EvalClos eval_cbv_clos(const ClosD& c, unsigned fuel) {
  CekConfig cfg{true, c.t, c.env, {}, {}};
  EvalClos out;
  for (unsigned i = 0; i < fuel; i++) {
    if (!cfg.eval && cfg.stack.empty()) {
      out.k = EvalClos::K::Value;
      out.value = ClosD{cfg.value.t->a, cfg.value.env};
      return out;
    }
    auto r = cek_step(cfg);
    if (r.k != StepResult<CekConfig>::K::Silent) {
      out.k = EvalClos::K::Broken;
      return out;
    }
    cfg = *r.alts[0].next;
  }
  return out;
}

struct AppCtxt {
  EquivMode mode;
  unsigned arg_size, fuel;
  std::vector<TermDPtr> args;
  std::map<std::tuple<std::string, std::string, unsigned>, Verdict> memo;
};

Verdict app_go(AppCtxt& ctx, const ClosD& c1, const ClosD& c2, unsigned depth) {
  if (depth == 0) return Verdict::bisimilar(0);
  std::string k1 = clos_canon(c1), k2 = clos_canon(c2);
  if (k1 == k2) return Verdict::bisimilar(depth);
  auto key = std::make_tuple(k1, k2, depth);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  ctx.memo[key] = Verdict::bisimilar(depth);

  EvalClos a = ctx.mode == EquivMode::Cbn ? eval_cbn_clos(c1, ctx.fuel)
                                          : eval_cbv_clos(c1, ctx.fuel);
  EvalClos b = ctx.mode == EquivMode::Cbn ? eval_cbn_clos(c2, ctx.fuel)
                                          : eval_cbv_clos(c2, ctx.fuel);
  Verdict result = Verdict::bisimilar(depth);
  if (a.k == EvalClos::K::Broken || b.k == EvalClos::K::Broken) {
    result = Verdict::unknown("invariant broken");
  } else if (a.k == EvalClos::K::Fuel && b.k == EvalClos::K::Fuel) {
    result = Verdict::bisimilar(depth, true);
  } else if (a.k == EvalClos::K::Fuel || b.k == EvalClos::K::Fuel) {
    result = Verdict::unknown("divergence-suspected");
  } else {
    bool upto = false, unknown = false;
    std::string why;
    for (const auto& arg : ctx.args) {
      ClosD argc{arg, {}};
      Verdict sub = app_go(ctx, ClosD{a.value.t, a.value.env.push(argc)},
                           ClosD{b.value.t, b.value.env.push(argc)}, depth - 1);
      if (sub.kind == VerdictKind::Distinguished) {
        sub.witness.insert(sub.witness.begin(), "arg " + print_term(arg));
        result = sub;
        break;
      }
      if (sub.kind == VerdictKind::Unknown) {
        unknown = true;
        why = sub.reason;
      }
      upto = upto || sub.up_to_fuel;
    }
    if (result.kind == VerdictKind::Bisimilar) {
      if (unknown)
        result = Verdict::unknown(why);
      else
        result = Verdict::bisimilar(depth, upto);
    }
  }
  ctx.memo[key] = result;
  return result;
}

} // namespace

Verdict app_bisim_direct(const ClosD& c1, const ClosD& c2, EquivMode mode,
                         unsigned depth, unsigned arg_size, unsigned fuel) {
  AppCtxt ctx;
  ctx.mode = mode;
  ctx.arg_size = arg_size;
  ctx.fuel = fuel;
  ctx.args = enumerate_closed(arg_size, false, mode == EquivMode::Cbv);
  Verdict v = app_go(ctx, c1, c2, depth);
  v.depth = depth;
  return v;
}

// ---------------------------------------------------------------------------
// app_bisim_direct for the lambda-mu calculus
// ---------------------------------------------------------------------------

namespace {

struct MuStop {
  enum class K { Value, Fuel, Broken } k = K::Fuel;
  ClosMu clos; // the lambda value closure at the unmapped free name
};

MuStop eval_mu_clos(const ClosMu& c, unsigned rank, unsigned fuel) {
  AbMuConfig cfg = AbMuEv{c.t, c.e, c.eb, c.ef, StackMu{{}, NameD::free(rank)}};
  MuStop out;
  for (unsigned i = 0; i < fuel; i++) {
    auto r = ab_mu_step(cfg);
    using K = StepResult<AbMuConfig>::K;
    if (r.k == K::Flagged) {
      // the only flag reachable from evaluation mode is the argument
      // request at the unmapped name
      const auto& fn = std::get<AbMuFn>(cfg);
      out.k = MuStop::K::Value;
      out.clos = fn.clos;
      return out;
    }
    if (r.k == K::Stuck) {
      out.k = MuStop::K::Broken;
      return out;
    }
    cfg = *r.alts[0].next;
  }
  return out;
}

List<StackMu> append_env(const List<StackMu>& env, const StackMu& st) {
  auto v = env.to_vector();
  v.push_back(st);
  return List<StackMu>::from_vector(v);
}

struct AppMuCtxt {
  unsigned fuel;
  std::vector<TermDPtr> args;
  std::map<std::tuple<std::string, std::string, unsigned>, Verdict> memo;
};

std::string closmu_key(const ClosMu& c) {
  std::ostringstream out;
  out << show(MuEnvConfig{MuEnvBn{0, {}, {c.t, c.e, c.eb, c.ef}}});
  return out.str();
}

Verdict app_mu_go(AppMuCtxt& ctx, const ClosMu& c1, const ClosMu& c2, unsigned rank,
                  unsigned depth) {
  if (depth == 0) return Verdict::bisimilar(0);
  if (equal(c1, c2)) return Verdict::bisimilar(depth);
  auto key = std::make_tuple(closmu_key(c1), closmu_key(c2), depth);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  ctx.memo[key] = Verdict::bisimilar(depth);

  MuStop a = eval_mu_clos(c1, rank, ctx.fuel);
  MuStop b = eval_mu_clos(c2, rank, ctx.fuel);
  Verdict result = Verdict::bisimilar(depth);
  if (a.k == MuStop::K::Broken || b.k == MuStop::K::Broken) {
    result = Verdict::unknown("invariant broken");
  } else if (a.k == MuStop::K::Fuel && b.k == MuStop::K::Fuel) {
    result = Verdict::bisimilar(depth, true);
  } else if (a.k == MuStop::K::Fuel || b.k == MuStop::K::Fuel) {
    result = Verdict::unknown("divergence-suspected");
  } else {
    bool upto = false, unknown = false;
    std::string why;
    for (const auto& arg : ctx.args) {
      ClosMu argc{arg, {}, {}, {}};
      StackMu bottom{List<ClosMu>{}.push(argc), NameD::free(rank + 1)};
      List<StackMu> eta1 = append_env(a.clos.ef, bottom);
      List<StackMu> eta2 = append_env(b.clos.ef, bottom);
      // the stored value is the whole lambda; the test conses the argument
      // onto its environment and runs the body
      ClosMu n1{a.clos.t->a, a.clos.e.push(argc), a.clos.eb, eta1};
      ClosMu n2{b.clos.t->a, b.clos.e.push(argc), b.clos.eb, eta2};
      Verdict sub = app_mu_go(ctx, n1, n2, rank + 1, depth - 1);
      if (sub.kind == VerdictKind::Distinguished) {
        sub.witness.insert(sub.witness.begin(), "arg " + print_term(arg));
        result = sub;
        break;
      }
      if (sub.kind == VerdictKind::Unknown) {
        unknown = true;
        why = sub.reason;
      }
      upto = upto || sub.up_to_fuel;
    }
    if (result.kind == VerdictKind::Bisimilar) {
      if (unknown)
        result = Verdict::unknown(why);
      else
        result = Verdict::bisimilar(depth, upto);
    }
  }
  ctx.memo[key] = result;
  return result;
}

} // namespace

Verdict app_bisim_direct_mu(const ClosMu& c1, const ClosMu& c2, unsigned rank,
                            unsigned depth, unsigned arg_size, unsigned fuel) {
  AppMuCtxt ctx;
  ctx.fuel = fuel;
  ctx.args = enumerate_closed(arg_size, true);
  Verdict v = app_mu_go(ctx, c1, c2, rank, depth);
  v.depth = depth;
  return v;
}

// ---------------------------------------------------------------------------
// ctx_equiv_bounded
// ---------------------------------------------------------------------------

namespace {

constexpr unsigned kHole = 0xfffffffe;

void enum_ctx(unsigned size, unsigned vars, bool with_hole,
              std::map<std::tuple<unsigned, unsigned, bool>, std::vector<TermDPtr>>& memo,
              std::vector<TermDPtr>& out) {
  auto key = std::make_tuple(size, vars, with_hole);
  auto it = memo.find(key);
  if (it != memo.end()) {
    out = it->second;
    return;
  }
  std::vector<TermDPtr> res;
  if (size == 1) {
    if (with_hole) {
      res.push_back(dfvar(kHole));
    } else {
      for (unsigned i = 0; i < vars; i++) res.push_back(didx(i));
    }
  } else if (size >= 2) {
    std::vector<TermDPtr> bodies;
    enum_ctx(size - 1, vars + 1, with_hole, memo, bodies);
    for (auto& b : bodies) res.push_back(dlam(b));
    for (unsigned i = 1; i + 1 <= size - 1; i++) {
      // the hole goes to exactly one side
      for (int hole_left = 0; hole_left < 2; hole_left++) {
        bool hl = hole_left == 0;
        if (!with_hole && !hl) continue; // avoid double enumeration
        std::vector<TermDPtr> funs, args;
        enum_ctx(i, vars, with_hole && hl, memo, funs);
        enum_ctx(size - 1 - i, vars, with_hole && !hl, memo, args);
        for (auto& f : funs)
          for (auto& a : args) res.push_back(dapp(f, a));
      }
    }
  }
  memo[key] = res;
  out = std::move(res);
}

TermDPtr plug_hole(const TermDPtr& c, const TermDPtr& t) {
  switch (c->k) {
    case TermD::K::FVar: return c->index == kHole ? t : c;
    case TermD::K::Idx: return c;
    case TermD::K::Lam: return dlam(plug_hole(c->a, t));
    case TermD::K::App: return dapp(plug_hole(c->a, t), plug_hole(c->b, t));
    default: return c;
  }
}

enum class Conv { Yes, Fuel, Broken };

Conv converges(const TermDPtr& t, unsigned fuel) {
  EnvKamConfig cfg{t, {}, {}};
  for (unsigned i = 0; i < fuel; i++) {
    auto r = kam_env_step(cfg);
    using K = StepResult<EnvKamConfig>::K;
    if (r.k == K::Stuck)
      return r.stuck == StuckKind::Value ? Conv::Yes : Conv::Broken;
    if (r.k != K::Silent) return Conv::Broken;
    cfg = *r.alts[0].next;
  }
  return Conv::Fuel;
}

} // namespace

Verdict ctx_equiv_bounded(const TermDPtr& t, const TermDPtr& s, unsigned ctx_size,
                          unsigned fuel) {
  std::map<std::tuple<unsigned, unsigned, bool>, std::vector<TermDPtr>> memo;
  bool upto = false, unknown = false;
  for (unsigned n = 1; n <= ctx_size; n++) {
    std::vector<TermDPtr> ctxs;
    enum_ctx(n, 0, true, memo, ctxs);
    for (const auto& c : ctxs) {
      Conv a = converges(plug_hole(c, t), fuel);
      Conv b = converges(plug_hole(c, s), fuel);
      if (a == Conv::Broken || b == Conv::Broken)
        return Verdict::unknown("invariant broken");
      if (a != b) {
        // one side converged within fuel, the other did not: under the
        // bounded policy this is divergence-suspected, not a proof
        unknown = true;
      }
      if (a == Conv::Fuel && b == Conv::Fuel) upto = true;
    }
  }
  if (unknown) return Verdict::unknown("divergence-suspected");
  Verdict v = Verdict::bisimilar(ctx_size, upto);
  return v;
}

// ---------------------------------------------------------------------------
// Correspondence
// ---------------------------------------------------------------------------

namespace {

struct CoCtx {
  MachineKind kind;
  MachineOpts opts;
  TranslationProfile profile;
  std::set<std::string> hidden;
  unsigned tau_fuel = 4000;
  Correspondence report;
  std::unordered_set<std::string> audited; // printed processes already audited
};

bool proc_matches(CoCtx& ctx, const ho::Proc& p, const ho::Proc& target) {
  return ho::equal(normalize_for_match(ctx.profile, p),
                   normalize_for_match(ctx.profile, target));
}

// Audits one process state: at most one tau successor unless the successors
// are label-distinguishable (a choice state), and no outputs on flag
// channels (unless the profile observes a convergence barb).
bool audit_state(CoCtx& ctx, const ho::Proc& p, unsigned wk_fuel = 600) {
  for (const auto& comp :
       (p->k == ho::Process::K::Par ? p->parts : std::vector<ho::Proc>{p})) {
    if (comp->k == ho::Process::K::Output && ctx.profile.flag_channels.count(comp->channel) &&
        !ctx.profile.convergence_barb) {
      ctx.report.ok = false;
      ctx.report.error = "output on flag channel " + comp->channel;
      return false;
    }
  }
  auto succs = ho::tau_successors(p);
  ctx.report.audited_states++;
  if (succs.size() <= 1) return true;
  std::vector<std::set<std::string>> obs;
  for (const auto& q : succs) {
    auto wb = ho::weak_barbs(q, ctx.hidden, wk_fuel);
    obs.push_back(wb.barbs);
  }
  for (size_t i = 0; i < succs.size(); i++)
    for (size_t j = i + 1; j < succs.size(); j++)
      if (obs[i] == obs[j]) {
        ctx.report.ok = false;
        ctx.report.error = "nondeterministic state with indistinguishable branches: " +
                           ho::print(p);
        return false;
      }
  return true;
}

ho::TauClosure closure_audited(CoCtx& ctx, const ho::Proc& p) {
  ho::TauClosure cl = ho::tau_closure(p, ctx.tau_fuel);
  for (const auto& q : cl.states) {
    if (!ctx.report.ok) break;
    if (ctx.audited.insert(ho::print(q)).second) {
      if (!audit_state(ctx, q)) break;
    }
  }
  return cl;
}

// Advance the machine silently to its next flag point / terminal state.
struct FlagPoint {
  enum class K { Flags, Terminal, Fuel, Broken } k = K::Fuel;
  MachineConfig at;
  std::vector<Alt<MachineConfig>> alts;
  StuckKind stuck = StuckKind::Dead;
  unsigned silent_steps = 0;
};

FlagPoint to_flag_point(CoCtx& ctx, MachineConfig c, unsigned fuel) {
  FlagPoint fp;
  for (unsigned i = 0; i < fuel; i++) {
    auto r = machine_step(ctx.kind, c, ctx.opts);
    using K = StepResult<MachineConfig>::K;
    if (r.k == K::Silent) {
      fp.silent_steps++;
      c = *r.alts[0].next;
      continue;
    }
    if (r.k == K::Flagged) {
      fp.k = FlagPoint::K::Flags;
      fp.at = std::move(c);
      fp.alts = std::move(r.alts);
      return fp;
    }
    fp.k = r.stuck == StuckKind::InvariantBroken ? FlagPoint::K::Broken
                                                 : FlagPoint::K::Terminal;
    fp.stuck = r.stuck;
    fp.at = std::move(c);
    return fp;
  }
  return fp;
}

// Consume one visible input label from any state of the set, then tau-close.
std::vector<ho::Proc> consume_label(CoCtx& ctx, const std::vector<ho::Proc>& states,
                                    const std::string& channel) {
  std::vector<ho::Proc> next;
  auto push_unique = [&](const ho::Proc& q) {
    for (const auto& r : next)
      if (ho::equal(r, q)) return;
    next.push_back(q);
  };
  for (const auto& st : states) {
    for (auto& [l, q] : ho::visible_steps(st, ctx.hidden)) {
      if (l.k == ho::Label::K::In && l.channel == channel) {
        ho::TauClosure cl = closure_audited(ctx, q);
        for (const auto& r : cl.states) push_unique(r);
      }
    }
  }
  return next;
}

void co_check(CoCtx& ctx, const MachineConfig& c, const ho::Proc& p, unsigned fuel,
              unsigned depth) {
  if (!ctx.report.ok || fuel == 0) return;
  FlagPoint fp = to_flag_point(ctx, c, fuel);
  ctx.report.machine_steps += fp.silent_steps;
  ho::TauClosure cl = closure_audited(ctx, p);
  if (!ctx.report.ok) return;
  if (fp.k == FlagPoint::K::Fuel) return; // bounded: nothing further to check
  if (fp.k == FlagPoint::K::Broken) {
    ctx.report.ok = false;
    ctx.report.error = "machine invariant broken";
    return;
  }
  if (fp.k == FlagPoint::K::Terminal) {
    // unflagged terminal: the closure must offer no visible inputs
    for (const auto& st : cl.states)
      for (auto& [l, q] : ho::visible_steps(st, ctx.hidden))
        if (l.k == ho::Label::K::In) {
          ctx.report.ok = false;
          ctx.report.error = "translation offers " + l.channel +
                             " at an unflagged terminal configuration";
          return;
        }
    return;
  }
  // flag point: the translation of the flag-point configuration must be
  // tau-reachable
  ho::Proc target = translate_config(ctx.kind, fp.at);
  bool found = false;
  for (const auto& st : cl.states)
    if (proc_matches(ctx, st, target)) {
      found = true;
      break;
    }
  if (!found) {
    if (cl.fuel_exhausted) return; // exploration truncated; cannot conclude
    ctx.report.ok = false;
    ctx.report.error = "translation never reaches the flag-point configuration " +
                       show_config(fp.at);
    return;
  }
  // offered visible labels match the first channels of the flag words
  std::set<std::string> offered;
  for (const auto& st : cl.states)
    for (auto& [l, q] : ho::visible_steps(st, ctx.hidden))
      if (l.k == ho::Label::K::In) offered.insert(l.channel);
  std::set<std::string> expected;
  for (const auto& a : fp.alts) expected.insert(flag_word(ctx.kind, a.flags)[0]);
  if (offered != expected) {
    ctx.report.ok = false;
    std::string o, e;
    for (auto& x : offered) o += x + " ";
    for (auto& x : expected) e += x + " ";
    ctx.report.error = "flag mismatch at " + show_config(fp.at) + ": translation {" + o +
                       "} vs machine {" + e + "}";
    return;
  }
  ctx.report.flag_points++;
  if (depth == 0) return;
  for (const auto& a : fp.alts) {
    if (!ctx.report.ok) return;
    std::vector<std::string> word = flag_word(ctx.kind, a.flags);
    std::vector<ho::Proc> states = cl.states;
    for (const auto& chan : word) {
      states = consume_label(ctx, states, chan);
      if (states.empty()) {
        ctx.report.ok = false;
        ctx.report.error = "translation cannot follow flag word at " + show_config(fp.at);
        return;
      }
    }
    if (!a.next) {
      // terminating flag: some residual state must have no observables
      bool quiet = false;
      for (const auto& st : states) {
        bool vis = false;
        for (auto& [l, q] : ho::visible_steps(st, ctx.hidden)) {
          (void)q;
          vis = true;
          break;
        }
        if (!vis) {
          quiet = true;
          break;
        }
      }
      if (!quiet) {
        ctx.report.ok = false;
        ctx.report.error = "translation still observable after terminating flag";
      }
      continue;
    }
    // align at the successor's flag point
    FlagPoint nfp = to_flag_point(ctx, *a.next, fuel - 1);
    if (nfp.k == FlagPoint::K::Flags || nfp.k == FlagPoint::K::Terminal) {
      // find the translated flag-point configuration among the reached states
      ho::Proc target2 = translate_config(ctx.kind, nfp.at);
      bool found2 = false;
      bool truncated = false;
      for (const auto& st : states) {
        ho::TauClosure cl2 = ho::tau_closure(st, ctx.tau_fuel);
        truncated = truncated || cl2.fuel_exhausted;
        for (const auto& r : cl2.states)
          if (proc_matches(ctx, r, target2)) {
            found2 = true;
            break;
          }
        if (found2) break;
      }
      if (!found2 && !truncated) {
        ctx.report.ok = false;
        ctx.report.error = "translation does not reach " + show_config(nfp.at) +
                           " after flags " + to_string(a.flags);
        return;
      }
      if (found2) co_check(ctx, nfp.at, target2, fuel - 1, depth - 1);
    }
  }
}

// KAM / CK: exact per-step tau tracking with cost accounting.
void lockstep_check(CoCtx& ctx, MachineConfig c, unsigned fuel) {
  ho::Proc p = translate_config(ctx.kind, c);
  for (unsigned i = 0; i < fuel; i++) {
    auto r = machine_step(ctx.kind, c, ctx.opts);
    using K = StepResult<MachineConfig>::K;
    if (r.k == K::Stuck) {
      ctx.report.converged = r.stuck == StuckKind::Value;
      auto wb = ho::weak_barbs(p, ctx.hidden, ctx.tau_fuel);
      ctx.report.barb_b = wb.barbs.count("b!") > 0;
      if (ctx.report.converged && !ctx.report.barb_b) {
        ctx.report.ok = false;
        ctx.report.error = "machine converged but translation shows no barb on b";
      }
      if (!ctx.report.converged && ctx.report.barb_b) {
        ctx.report.ok = false;
        ctx.report.error = "stuck machine run but translation shows a barb on b";
      }
      return;
    }
    if (r.k != K::Silent) {
      ctx.report.ok = false;
      ctx.report.error = "unexpected flagged step";
      return;
    }
    const std::string& rule = r.alts[0].rule;
    unsigned cost = 1;
    if (ctx.kind == MachineKind::Kam) {
      if (rule == "Push")
        ctx.report.pushes++;
      else
        ctx.report.grabs++;
      cost = rule == "Push" ? 1 : 2;
    }
    c = *r.alts[0].next;
    ho::Proc target = translate_config(ctx.kind, c);
    for (unsigned s = 0; s < cost; s++) {
      if (!audit_state(ctx, p)) return;
      auto succs = ho::tau_successors(p);
      if (succs.size() != 1) {
        ctx.report.ok = false;
        ctx.report.error = "expected a unique tau step, found " +
                           std::to_string(succs.size());
        return;
      }
      p = succs[0];
      ctx.report.tau_steps++;
    }
    if (!ho::equal(p, target)) {
      ctx.report.ok = false;
      ctx.report.error = "translation diverges from machine after " + rule + " at " +
                         show_config(c);
      return;
    }
    ctx.report.machine_steps++;
  }
  // fuel exhausted without a value: the translation must not show the barb
  auto wb = ho::weak_barbs(p, ctx.hidden, ctx.tau_fuel);
  ctx.report.barb_b = wb.barbs.count("b!") > 0;
  if (ctx.report.barb_b) {
    ctx.report.ok = false;
    ctx.report.error = "diverging run but the translation shows a barb on b";
  }
}

} // namespace

Correspondence correspondence(MachineKind k, const MachineConfig& c0, unsigned fuel,
                              const MachineOpts& opts) {
  CoCtx ctx;
  ctx.kind = k;
  ctx.opts = opts;
  ctx.profile = profile_for(k);
  ho::Proc p0 = translate_config(k, c0);
  ctx.hidden = hidden_channels(ctx.profile, p0);
  if (ctx.profile.convergence_barb) {
    lockstep_check(ctx, c0, fuel);
  } else {
    co_check(ctx, c0, p0, fuel, fuel);
  }
  return ctx.report;
}

std::string correspondence_text(const Correspondence& r) {
  std::ostringstream out;
  out << (r.ok ? "ok" : "MISMATCH") << "\n";
  if (!r.error.empty()) out << "error: " << r.error << "\n";
  out << "machine silent steps: " << r.machine_steps << "\n";
  out << "flag points checked: " << r.flag_points << "\n";
  if (r.tau_steps) {
    out << "translation tau steps: " << r.tau_steps << " (pushes " << r.pushes
        << ", grabs " << r.grabs << ")\n";
    out << "converged: " << (r.converged ? "yes" : "no") << ", barb on b: "
        << (r.barb_b ? "yes" : "no") << "\n";
  }
  out << "audited states: " << r.audited_states << "\n";
  return out.str();
}

AuditReport determinism_audit(const ho::Proc& p0, const TranslationProfile& profile,
                              unsigned fuel) {
  AuditReport rep;
  CoCtx ctx;
  ctx.kind = profile.machine;
  ctx.profile = profile;
  ctx.hidden = hidden_channels(profile, p0);
  ctx.tau_fuel = fuel;
  ho::TauClosure cl = ho::tau_closure(p0, fuel);
  for (const auto& q : cl.states) {
    if (!audit_state(ctx, q)) {
      rep.ok = false;
      rep.violation = ctx.report.error;
      break;
    }
  }
  rep.states = static_cast<unsigned>(cl.states.size());
  return rep;
}

} // namespace lamflag
