#include "lamflag/machines_cbv.hpp"

#include <sstream>

namespace lamflag {

bool is_value_n(const TermNPtr& t) {
  return t->k == TermN::K::FVar || t->k == TermN::K::Lam;
}

namespace {

std::string show_ck_stack(const List<CkFrame>& stack) {
  std::ostringstream out;
  for (auto s = stack; !s.empty(); s = s.tail())
    out << (s.head().is_arg ? "arg " : "fun ") << print_term(s.head().t) << " . ";
  out << "[]";
  return out.str();
}

std::string key_ck_stack(const List<CkFrame>& stack) {
  std::ostringstream out;
  for (auto s = stack; !s.empty(); s = s.tail())
    out << (s.head().is_arg ? "a:" : "f:") << canonical_key(s.head().t) << " . ";
  out << "[]";
  return out.str();
}

} // namespace

// ---------------------------------- CK -------------------------------------

StepResult<CkConfig> ck_step(const CkConfig& c) {
  using R = StepResult<CkConfig>;
  if (c.eval) {
    if (c.term->k == TermN::K::App)
      return R::silent("Fun", CkConfig{true, c.term->a,
                                       c.stack.push(CkFrame{true, c.term->b})});
    if (is_value_n(c.term))
      return R::silent("Switch", CkConfig{false, c.term, c.stack});
    if (c.term->k == TermN::K::BVar)
      return R::invariant_broken("unbound variable " + c.term->ident);
    return R::stuck_dead("mu term in call-by-value machine");
  }
  // continuation mode; c.term is the current value
  if (c.stack.empty()) return R::stuck_value();
  CkFrame top = c.stack.head();
  if (top.is_arg)
    return R::silent("Arg", CkConfig{true, top.t, c.stack.tail().push(CkFrame{false, c.term})});
  if (top.t->k == TermN::K::Lam)
    return R::silent("Beta", CkConfig{true, subst(top.t->a, top.t->ident, c.term),
                                      c.stack.tail()});
  return R::stuck_dead("free variable in function frame");
}

std::string show(const CkConfig& c) {
  std::ostringstream out;
  if (c.eval)
    out << "< " << print_term(c.term) << " | " << show_ck_stack(c.stack) << " >e";
  else
    out << "< " << show_ck_stack(c.stack) << " | " << print_term(c.term) << " >c";
  return out.str();
}
std::string key(const CkConfig& c) {
  std::ostringstream out;
  out << (c.eval ? "e|" : "c|") << canonical_key(c.term) << "|" << key_ck_stack(c.stack);
  return out.str();
}

// ------------------------------- NFB (cbv) ---------------------------------

StepResult<NfbCbvConfig> nfb_cbv_step(const NfbCbvConfig& c, bool eta_strict) {
  using R = StepResult<NfbCbvConfig>;
  const CkConfig& ck = c.ck;
  unsigned n = c.counter;

  if (ck.eval || (!ck.stack.empty() && (ck.stack.head().is_arg ||
                                        ck.stack.head().t->k == TermN::K::Lam))) {
    auto r = ck_step(ck);
    if (r.k == StepResult<CkConfig>::K::Silent)
      return R::silent(r.alts[0].rule, NfbCbvConfig{*r.alts[0].next, n});
    R out;
    out.k = R::K::Stuck;
    out.stuck = r.stuck;
    out.detail = r.detail;
    return out;
  }

  // continuation mode at a normal form
  if (ck.stack.empty()) {
    if (!eta_strict) {
      // Val: apply the value to a fresh variable
      return R::flagged({Alt<NfbCbvConfig>{
          "Val",
          {Flag::lam()},
          NfbCbvConfig{CkConfig{false, fvar(n), List<CkFrame>{}.push(CkFrame{false, ck.term})},
                       n + 1}}});
    }
    if (ck.term->k == TermN::K::FVar)
      return R::flagged({Alt<NfbCbvConfig>{
          "Done", {Flag::var(ck.term->index), Flag::done()}, std::nullopt}});
    return R::flagged({Alt<NfbCbvConfig>{
        "Lambda",
        {Flag::lam()},
        NfbCbvConfig{CkConfig{true, subst(ck.term->a, ck.term->ident, fvar(n)), {}},
                     n + 1}}});
  }

  // stuck term: free variable in function frame
  unsigned f = ck.stack.head().t->index;
  if (!eta_strict) {
    return R::flagged({
        Alt<NfbCbvConfig>{
            "Stuck-Context",
            {Flag::var(f), Flag::ctx()},
            NfbCbvConfig{CkConfig{false, fvar(n), ck.stack.tail()}, n + 1}},
        Alt<NfbCbvConfig>{
            "Stuck-Val",
            {Flag::var(f), Flag::val()},
            NfbCbvConfig{CkConfig{false, fvar(n),
                                  List<CkFrame>{}.push(CkFrame{false, ck.term})},
                         n + 1}},
    });
  }
  return R::flagged({
      Alt<NfbCbvConfig>{
          "Stuck-Context",
          {Flag::var(f), Flag::ctx()},
          NfbCbvConfig{CkConfig{false, fvar(n), ck.stack.tail()}, n + 1}},
      Alt<NfbCbvConfig>{
          "Stuck-Val",
          {Flag::var(f), Flag::val()},
          NfbCbvConfig{CkConfig{false, ck.term, {}}, n}},
  });
}

std::string show(const NfbCbvConfig& c) {
  std::ostringstream out;
  if (c.ck.eval)
    out << "< " << print_term(c.ck.term) << " | " << show_ck_stack(c.ck.stack) << " | "
        << c.counter << " >e";
  else
    out << "< " << show_ck_stack(c.ck.stack) << " | " << print_term(c.ck.term) << " | "
        << c.counter << " >c";
  return out.str();
}
std::string key(const NfbCbvConfig& c) {
  return key(c.ck) + "|" + std::to_string(c.counter);
}

// ---------------------------------- CEK ------------------------------------

namespace {

void show_closd_rec(const ClosD& c, std::ostringstream& out) {
  out << '(' << print_term(c.t) << ", [";
  bool first = true;
  for (auto e = c.env; !e.empty(); e = e.tail()) {
    if (!first) out << ", ";
    first = false;
    show_closd_rec(e.head(), out);
  }
  out << "])";
}

std::string show_cek_stack(const List<CekFrame>& stack) {
  std::ostringstream out;
  for (auto s = stack; !s.empty(); s = s.tail()) {
    out << (s.head().is_arg ? "arg " : "fun ");
    show_closd_rec(s.head().c, out);
    out << " . ";
  }
  out << "[]";
  return out.str();
}

} // namespace

StepResult<CekConfig> cek_step(const CekConfig& c) {
  using R = StepResult<CekConfig>;
  if (c.eval) {
    switch (c.term->k) {
      case TermD::K::App:
        return R::silent("Fun", CekConfig{true, c.term->a, c.env, {},
                                          c.stack.push(CekFrame{true, ClosD{c.term->b, c.env}})});
      case TermD::K::Idx: {
        if (c.env.empty())
          return R::invariant_broken("index " + std::to_string(c.term->index) +
                                     " with empty environment");
        if (c.term->index == 0) {
          ClosD hd = c.env.head();
          return R::silent("Zero", CekConfig{true, hd.t, hd.env, {}, c.stack});
        }
        return R::silent("Env",
                         CekConfig{true, didx(c.term->index - 1), c.env.tail(), {}, c.stack});
      }
      case TermD::K::Lam:
        return R::silent("Switch", CekConfig{false, nullptr, {}, ClosD{c.term, c.env}, c.stack});
      case TermD::K::FVar:
        return R::stuck_dead("free variable in environment machine");
      case TermD::K::Mu:
        return R::stuck_dead("mu term in call-by-value machine");
    }
    return R::stuck_dead("unreachable");
  }
  if (c.stack.empty()) return R::stuck_value();
  CekFrame top = c.stack.head();
  if (top.is_arg)
    return R::silent("Arg", CekConfig{true, top.c.t, top.c.env, {},
                                      c.stack.tail().push(CekFrame{false, c.value})});
  // Beta: top.c is a value closure (lam, env)
  return R::silent("Beta", CekConfig{true, top.c.t->a, top.c.env.push(c.value),
                                     {}, c.stack.tail()});
}

std::string show(const CekConfig& c) {
  std::ostringstream out;
  if (c.eval) {
    out << "< " << print_term(c.term) << " | [";
    bool first = true;
    for (auto e = c.env; !e.empty(); e = e.tail()) {
      if (!first) out << ", ";
      first = false;
      show_closd_rec(e.head(), out);
    }
    out << "] | " << show_cek_stack(c.stack) << " >e";
  } else {
    out << "< " << show_cek_stack(c.stack) << " | ";
    show_closd_rec(c.value, out);
    out << " >c";
  }
  return out.str();
}
std::string key(const CekConfig& c) { return show(c); }

// -------------------------------- AB (cbv) ---------------------------------

StepResult<AbCbvConfig> ab_cbv_step(const AbCbvConfig& c) {
  using R = StepResult<AbCbvConfig>;
  if (std::holds_alternative<CekConfig>(c)) {
    const auto& cek = std::get<CekConfig>(c);
    if (!cek.eval && cek.stack.empty())
      return R::flagged({Alt<AbCbvConfig>{
          "Arg", {Flag::arg()},
          AbCbvConfig{AbCbvInd{0, {}, ClosD{cek.value.t->a, cek.value.env}}}}});
    auto r = cek_step(cek);
    if (r.k == StepResult<CekConfig>::K::Silent)
      return R::silent(r.alts[0].rule, AbCbvConfig{*r.alts[0].next});
    R out;
    out.k = R::K::Stuck;
    out.stuck = r.stuck;
    out.detail = r.detail;
    return out;
  }
  if (std::holds_alternative<AbCbvInd>(c)) {
    const auto& ind = std::get<AbCbvInd>(c);
    return R::flagged({
        Alt<AbCbvConfig>{"Suc", {Flag::suc()},
                         AbCbvConfig{AbCbvInd{ind.n + 1, ind.rho, ind.clos}}},
        Alt<AbCbvConfig>{"Var", {Flag::var(ind.n)},
                         AbCbvConfig{AbCbvTm{didx(ind.n), ind.n + 1, ind.rho, ind.clos}}},
    });
  }
  const auto& tm = std::get<AbCbvTm>(c);
  std::vector<Alt<AbCbvConfig>> alts;
  if (!tm.rho.empty()) {
    AbPair hd = tm.rho.head();
    alts.push_back(Alt<AbCbvConfig>{
        "App", {Flag::app()},
        AbCbvConfig{AbCbvTm{dapp(hd.t, tm.t), std::max(tm.acc, hd.acc), tm.rho.tail(),
                            tm.clos}}});
  }
  alts.push_back(Alt<AbCbvConfig>{
      "AppFun", {Flag::appfun()},
      AbCbvConfig{AbCbvInd{0, tm.rho.push(AbPair{tm.t, tm.acc}), tm.clos}}});
  // restart requires the argument to be a value
  if (tm.acc == 0 && tm.rho.empty() && tm.t->k == TermD::K::Lam) {
    alts.push_back(Alt<AbCbvConfig>{
        "Restart", {Flag::done()},
        AbCbvConfig{CekConfig{true, tm.clos.t, tm.clos.env.push(ClosD{tm.t, {}}), {}, {}}}});
  }
  alts.push_back(Alt<AbCbvConfig>{
      "Lambda", {Flag::lam()},
      AbCbvConfig{AbCbvTm{dlam(tm.t), tm.acc == 0 ? 0 : tm.acc - 1, tm.rho, tm.clos}}});
  return R::flagged(std::move(alts));
}

std::string show(const AbCbvConfig& c) {
  std::ostringstream out;
  if (std::holds_alternative<CekConfig>(c)) return show(std::get<CekConfig>(c));
  if (std::holds_alternative<AbCbvInd>(c)) {
    const auto& i = std::get<AbCbvInd>(c);
    out << "< " << i.n << " | ... | ";
    show_closd_rec(i.clos, out);
    out << " >ind";
  } else {
    const auto& t = std::get<AbCbvTm>(c);
    out << "< " << print_term(t.t) << " | " << t.acc << " | ";
    for (auto r = t.rho; !r.empty(); r = r.tail())
      out << '(' << print_term(r.head().t) << ", " << r.head().acc << ") . ";
    out << "[] | ";
    show_closd_rec(t.clos, out);
    out << " >tm";
  }
  return out.str();
}
std::string key(const AbCbvConfig& c) { return show(c); }

} // namespace lamflag
