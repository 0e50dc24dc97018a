#include "lamflag/machines_cbn.hpp"

#include <sstream>
#include <stdexcept>

namespace lamflag {

namespace {

std::string show_stack(const List<TermNPtr>& stack) {
  std::ostringstream out;
  for (auto s = stack; !s.empty(); s = s.tail())
    out << (print_term(s.head())) << " . ";
  out << "[]";
  return out.str();
}

std::string key_stack(const List<TermNPtr>& stack) {
  std::ostringstream out;
  for (auto s = stack; !s.empty(); s = s.tail())
    out << canonical_key(s.head()) << " . ";
  out << "[]";
  return out.str();
}

} // namespace

// --------------------------------- KAM ------------------------------------

StepResult<KamConfig> kam_step(const KamConfig& c) {
  using R = StepResult<KamConfig>;
  switch (c.term->k) {
    case TermN::K::App:
      return R::silent("Push", KamConfig{c.term->a, c.stack.push(c.term->b)});
    case TermN::K::Lam:
      if (c.stack.empty()) return R::stuck_value();
      return R::silent("Grab", KamConfig{subst(c.term->a, c.term->ident, c.stack.head()),
                                         c.stack.tail()});
    case TermN::K::FVar:
      return R::stuck_dead("free variable in head position");
    case TermN::K::BVar:
      return R::invariant_broken("unbound variable " + c.term->ident);
    case TermN::K::Mu:
      return R::stuck_dead("mu term in plain call-by-name machine");
  }
  return R::stuck_dead("unreachable");
}

std::string show(const KamConfig& c) {
  return "< " + print_term(c.term) + " | " + show_stack(c.stack) + " >";
}
std::string key(const KamConfig& c) {
  return canonical_key(c.term) + "|" + key_stack(c.stack);
}

// ------------------------------- NFB (cbn) ---------------------------------

StepResult<NfbCbnConfig> nfb_cbn_step(const NfbCbnConfig& c) {
  using R = StepResult<NfbCbnConfig>;
  if (c.eval) {
    switch (c.term->k) {
      case TermN::K::App:
        return R::silent("Push",
                         NfbCbnConfig{true, c.term->a, c.stack.push(c.term->b), c.counter});
      case TermN::K::Lam:
        if (!c.stack.empty())
          return R::silent("Grab",
                           NfbCbnConfig{true, subst(c.term->a, c.term->ident, c.stack.head()),
                                        c.stack.tail(), c.counter});
        return R::flagged({Alt<NfbCbnConfig>{
            "Lambda",
            {Flag::lam()},
            NfbCbnConfig{true, subst(c.term->a, c.term->ident, fvar(c.counter)), {},
                         c.counter + 1}}});
      case TermN::K::FVar:
        return R::flagged({Alt<NfbCbnConfig>{
            "Var", {Flag::var(c.term->index)},
            NfbCbnConfig{false, nullptr, c.stack, c.counter}}});
      case TermN::K::BVar:
        return R::invariant_broken("unbound variable " + c.term->ident);
      case TermN::K::Mu:
        return R::stuck_dead("mu term in call-by-name machine");
    }
    return R::stuck_dead("unreachable");
  }
  // continuation mode
  if (c.stack.empty())
    return R::flagged({Alt<NfbCbnConfig>{"Done", {Flag::done()}, std::nullopt}});
  return R::flagged({
      Alt<NfbCbnConfig>{"Enter", {Flag::enter()},
                        NfbCbnConfig{true, c.stack.head(), {}, c.counter}},
      Alt<NfbCbnConfig>{"Skip", {Flag::skip()},
                        NfbCbnConfig{false, nullptr, c.stack.tail(), c.counter}},
  });
}

std::string show(const NfbCbnConfig& c) {
  std::ostringstream out;
  if (c.eval)
    out << "< " << print_term(c.term) << " | " << show_stack(c.stack) << " | "
        << c.counter << " >e";
  else
    out << "< " << show_stack(c.stack) << " | " << c.counter << " >c";
  return out.str();
}
std::string key(const NfbCbnConfig& c) {
  std::ostringstream out;
  out << (c.eval ? "e|" : "c|");
  if (c.eval) out << canonical_key(c.term) << "|";
  out << key_stack(c.stack) << "|" << c.counter;
  return out.str();
}

// ------------------------------ env-based KAM ------------------------------

bool equal(const ClosD& a, const ClosD& b) {
  if (!equal(a.t, b.t) || a.env.size() != b.env.size()) return false;
  auto ea = a.env, eb = b.env;
  while (!ea.empty()) {
    if (!equal(ea.head(), eb.head())) return false;
    ea = ea.tail();
    eb = eb.tail();
  }
  return true;
}

namespace {

void show_closd(const ClosD& c, std::ostringstream& out) {
  out << '(' << print_term(c.t) << ", [";
  bool first = true;
  for (auto e = c.env; !e.empty(); e = e.tail()) {
    if (!first) out << ", ";
    first = false;
    show_closd(e.head(), out);
  }
  out << "])";
}

std::string show_closd(const ClosD& c) {
  std::ostringstream out;
  show_closd(c, out);
  return out.str();
}

std::string show_clos_list(const List<ClosD>& l) {
  std::ostringstream out;
  bool first = true;
  out << '[';
  for (auto e = l; !e.empty(); e = e.tail()) {
    if (!first) out << ", ";
    first = false;
    show_closd(e.head(), out);
  }
  out << ']';
  return out.str();
}

} // namespace

StepResult<EnvKamConfig> kam_env_step(const EnvKamConfig& c) {
  using R = StepResult<EnvKamConfig>;
  switch (c.term->k) {
    case TermD::K::App:
      return R::silent("Push", EnvKamConfig{c.term->a, c.env,
                                            c.stack.push(ClosD{c.term->b, c.env})});
    case TermD::K::Idx: {
      if (c.env.empty())
        return R::invariant_broken("index " + std::to_string(c.term->index) +
                                   " with empty environment");
      if (c.term->index == 0) {
        ClosD hd = c.env.head();
        return R::silent("Zero", EnvKamConfig{hd.t, hd.env, c.stack});
      }
      return R::silent("Env", EnvKamConfig{didx(c.term->index - 1), c.env.tail(), c.stack});
    }
    case TermD::K::Lam:
      if (c.stack.empty()) return R::stuck_value();
      return R::silent("Grab",
                       EnvKamConfig{c.term->a, c.env.push(c.stack.head()), c.stack.tail()});
    case TermD::K::FVar:
      return R::stuck_dead("free variable in environment machine");
    case TermD::K::Mu:
      return R::stuck_dead("mu term in plain environment machine");
  }
  return R::stuck_dead("unreachable");
}

std::string show(const EnvKamConfig& c) {
  std::ostringstream out;
  out << "< " << print_term(c.term) << " | " << show_clos_list(c.env) << " | ";
  for (auto s = c.stack; !s.empty(); s = s.tail()) out << show_closd(s.head()) << " . ";
  out << "[] >";
  return out.str();
}
std::string key(const EnvKamConfig& c) { return show(c); }

// ------------------------------- AB machine --------------------------------

StepResult<AbConfig> ab_step(const AbConfig& c) {
  using R = StepResult<AbConfig>;
  if (std::holds_alternative<EnvKamConfig>(c)) {
    const auto& ev = std::get<EnvKamConfig>(c);
    if (ev.term->k == TermD::K::Lam && ev.stack.empty())
      return R::flagged({Alt<AbConfig>{
          "Arg", {Flag::arg()}, AbConfig{AbInd{0, {}, ClosD{ev.term->a, ev.env}}}}});
    auto r = kam_env_step(ev);
    switch (r.k) {
      case StepResult<EnvKamConfig>::K::Silent:
        return R::silent(r.alts[0].rule, AbConfig{*r.alts[0].next});
      case StepResult<EnvKamConfig>::K::Stuck: {
        R out;
        out.k = R::K::Stuck;
        out.stuck = r.stuck;
        out.detail = r.detail;
        return out;
      }
      default: return R::stuck_dead("unreachable");
    }
  }
  if (std::holds_alternative<AbInd>(c)) {
    const auto& ind = std::get<AbInd>(c);
    return R::flagged({
        Alt<AbConfig>{"Suc", {Flag::suc()}, AbConfig{AbInd{ind.n + 1, ind.rho, ind.clos}}},
        Alt<AbConfig>{"Var", {Flag::var(ind.n)},
                      AbConfig{AbTm{didx(ind.n), ind.n + 1, ind.rho, ind.clos}}},
    });
  }
  const auto& tm = std::get<AbTm>(c);
  std::vector<Alt<AbConfig>> alts;
  // alternatives ordered lexicographically by flag name:
  // app < appfun < done < lam < suc < var
  if (!tm.rho.empty()) {
    AbPair hd = tm.rho.head();
    alts.push_back(Alt<AbConfig>{
        "App", {Flag::app()},
        AbConfig{AbTm{dapp(hd.t, tm.t), std::max(tm.acc, hd.acc), tm.rho.tail(), tm.clos}}});
  }
  alts.push_back(Alt<AbConfig>{
      "AppFun", {Flag::appfun()},
      AbConfig{AbInd{0, tm.rho.push(AbPair{tm.t, tm.acc}), tm.clos}}});
  if (tm.acc == 0 && tm.rho.empty()) {
    alts.push_back(Alt<AbConfig>{
        "Restart", {Flag::done()},
        AbConfig{EnvKamConfig{tm.clos.t, tm.clos.env.push(ClosD{tm.t, {}}), {}}}});
  }
  alts.push_back(Alt<AbConfig>{
      "Lambda", {Flag::lam()},
      AbConfig{AbTm{dlam(tm.t), tm.acc == 0 ? 0 : tm.acc - 1, tm.rho, tm.clos}}});
  return R::flagged(std::move(alts));
}

namespace {

std::string show_rho(const List<AbPair>& rho) {
  std::ostringstream out;
  for (auto r = rho; !r.empty(); r = r.tail())
    out << '(' << print_term(r.head().t) << ", " << r.head().acc << ") . ";
  out << "[]";
  return out.str();
}

} // namespace

std::string show(const AbConfig& c) {
  std::ostringstream out;
  if (std::holds_alternative<EnvKamConfig>(c)) return show(std::get<EnvKamConfig>(c));
  if (std::holds_alternative<AbInd>(c)) {
    const auto& i = std::get<AbInd>(c);
    out << "< " << i.n << " | " << show_rho(i.rho) << " | " << show_closd(i.clos) << " >ind";
  } else {
    const auto& t = std::get<AbTm>(c);
    out << "< " << print_term(t.t) << " | " << t.acc << " | " << show_rho(t.rho) << " | "
        << show_closd(t.clos) << " >tm";
  }
  return out.str();
}
std::string key(const AbConfig& c) { return show(c); }

// -------------------------------- Seq --------------------------------------

namespace {

void seq_rec(const TermDPtr& t, bool with_mu, FlagSeq& out) {
  switch (t->k) {
    case TermD::K::Idx:
      for (unsigned i = 0; i < t->index; i++) out.push_back(Flag::suc());
      out.push_back(Flag::var(t->index));
      return;
    case TermD::K::Lam:
      seq_rec(t->a, with_mu, out);
      out.push_back(Flag::lam());
      return;
    case TermD::K::App:
      seq_rec(t->a, with_mu, out);
      out.push_back(Flag::appfun());
      seq_rec(t->b, with_mu, out);
      out.push_back(Flag::app());
      return;
    case TermD::K::Mu:
      if (!with_mu || !t->name.is_bound)
        throw std::runtime_error("seq_flags: mu only with with_mu and bound names");
      seq_rec(t->a, with_mu, out);
      out.push_back(Flag::indmu());
      for (unsigned i = 0; i < t->name.index; i++) out.push_back(Flag::sucmu());
      out.push_back(Flag::mu());
      return;
    case TermD::K::FVar:
      throw std::runtime_error("seq_flags: free variables cannot be generated");
  }
}

} // namespace

FlagSeq seq_flags(const TermDPtr& t, bool with_mu) {
  FlagSeq out;
  seq_rec(t, with_mu, out);
  out.push_back(Flag::done());
  return out;
}

} // namespace lamflag
