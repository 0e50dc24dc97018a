#include "lamflag/machines_mu.hpp"

#include <sstream>

namespace lamflag {

// ------------------------- substitution-based KAM --------------------------

StepResult<MuKamConfig> kam_mu_step(const MuKamConfig& c) {
  using R = StepResult<MuKamConfig>;
  switch (c.term->k) {
    case TermN::K::App: {
      StackN st = c.stack;
      st.items.insert(st.items.begin(), c.term->b);
      return R::silent("Push", MuKamConfig{c.term->a, std::move(st)});
    }
    case TermN::K::Lam: {
      if (c.stack.items.empty()) return R::stuck_value(); // value at a name
      StackN st = c.stack;
      TermNPtr arg = st.items.front();
      st.items.erase(st.items.begin());
      return R::silent("Grab",
                       MuKamConfig{subst(c.term->a, c.term->ident, arg), std::move(st)});
    }
    case TermN::K::Mu: {
      TermNPtr body = struct_subst(c.term->a, c.term->ident, c.stack);
      NameSubstResult ns = name_subst(c.term->name, c.term->ident, c.stack);
      StackN st = ns.replaced ? ns.stack : StackN{{}, ns.name};
      return R::silent("Capture", MuKamConfig{body, std::move(st)});
    }
    case TermN::K::FVar:
      return R::stuck_dead("free variable in head position");
    case TermN::K::BVar:
      return R::invariant_broken("unbound variable " + c.term->ident);
  }
  return R::stuck_dead("unreachable");
}

namespace {

std::string show_stackn(const StackN& st) {
  std::ostringstream out;
  for (const auto& t : st.items) out << print_term(t) << " . ";
  if (st.end.is_bound)
    out << st.end.ident;
  else
    out << '\'' << st.end.index;
  return out.str();
}

std::string key_stackn(const StackN& st) {
  std::ostringstream out;
  for (const auto& t : st.items) out << canonical_key(t) << " . ";
  if (st.end.is_bound)
    out << "b:" << st.end.ident;
  else
    out << '\'' << st.end.index;
  return out.str();
}

} // namespace

std::string show(const MuKamConfig& c) {
  return "< " + print_term(c.term) + " | " + show_stackn(c.stack) + " >";
}
std::string key(const MuKamConfig& c) {
  return canonical_key(c.term) + "|" + key_stackn(c.stack);
}

// ------------------------------ NFB (lambda-mu) ----------------------------

StepResult<NfbMuConfig> nfb_mu_step(const NfbMuConfig& c) {
  using R = StepResult<NfbMuConfig>;
  if (c.eval) {
    switch (c.term->k) {
      case TermN::K::App: {
        StackN st = c.stack;
        st.items.insert(st.items.begin(), c.term->b);
        return R::silent("Push", NfbMuConfig{true, c.term->a, std::move(st), c.n, c.m});
      }
      case TermN::K::Lam: {
        if (!c.stack.items.empty()) {
          StackN st = c.stack;
          TermNPtr arg = st.items.front();
          st.items.erase(st.items.begin());
          return R::silent("Grab", NfbMuConfig{true, subst(c.term->a, c.term->ident, arg),
                                               std::move(st), c.n, c.m});
        }
        if (c.stack.end.is_bound)
          return R::invariant_broken("value at unbound name " + c.stack.end.ident);
        return R::flagged({Alt<NfbMuConfig>{
            "Lambda",
            {Flag::name(c.stack.end.index), Flag::lam()},
            NfbMuConfig{true, subst(c.term->a, c.term->ident, fvar(c.n)),
                        StackN{{}, NameRef::free(c.m)}, c.n + 1, c.m + 1}}});
      }
      case TermN::K::Mu: {
        TermNPtr body = struct_subst(c.term->a, c.term->ident, c.stack);
        NameSubstResult ns = name_subst(c.term->name, c.term->ident, c.stack);
        StackN st = ns.replaced ? ns.stack : StackN{{}, ns.name};
        return R::silent("Capture", NfbMuConfig{true, body, std::move(st), c.n, c.m});
      }
      case TermN::K::FVar:
        return R::flagged({Alt<NfbMuConfig>{
            "Var", {Flag::var(c.term->index)},
            NfbMuConfig{false, nullptr, c.stack, c.n, c.m}}});
      case TermN::K::BVar:
        return R::invariant_broken("unbound variable " + c.term->ident);
    }
    return R::stuck_dead("unreachable");
  }
  // continuation mode
  if (c.stack.items.empty()) {
    if (c.stack.end.is_bound)
      return R::invariant_broken("continuation at unbound name " + c.stack.end.ident);
    return R::flagged({Alt<NfbMuConfig>{
        "Done", {Flag::name(c.stack.end.index), Flag::done()}, std::nullopt}});
  }
  StackN rest = c.stack;
  TermNPtr top = rest.items.front();
  rest.items.erase(rest.items.begin());
  return R::flagged({
      Alt<NfbMuConfig>{"Enter", {Flag::enter()},
                       NfbMuConfig{true, top, StackN{{}, NameRef::free(c.m)}, c.n, c.m + 1}},
      Alt<NfbMuConfig>{"Skip", {Flag::skip()},
                       NfbMuConfig{false, nullptr, std::move(rest), c.n, c.m}},
  });
}

std::string show(const NfbMuConfig& c) {
  std::ostringstream out;
  if (c.eval)
    out << "< " << print_term(c.term) << " | " << show_stackn(c.stack) << " | " << c.n
        << " | " << c.m << " >e";
  else
    out << "< " << show_stackn(c.stack) << " | " << c.n << " | " << c.m << " >c";
  return out.str();
}
std::string key(const NfbMuConfig& c) {
  std::ostringstream out;
  out << (c.eval ? "e|" : "c|");
  if (c.eval) out << canonical_key(c.term) << "|";
  out << key_stackn(c.stack) << "|" << c.n << "|" << c.m;
  return out.str();
}

// ------------------------- environment-based machines ----------------------

bool equal(const ClosMu& a, const ClosMu& b);

namespace {

template <typename T>
bool list_equal(const List<T>& a, const List<T>& b) {
  if (a.size() != b.size()) return false;
  auto x = a, y = b;
  while (!x.empty()) {
    if (!equal(x.head(), y.head())) return false;
    x = x.tail();
    y = y.tail();
  }
  return true;
}

} // namespace

bool equal(const StackMu& a, const StackMu& b) {
  return a.end == b.end && list_equal(a.items, b.items);
}

bool equal(const ClosMu& a, const ClosMu& b) {
  return equal(a.t, b.t) && list_equal(a.e, b.e) && list_equal(a.eb, b.eb) &&
         list_equal(a.ef, b.ef);
}

namespace {

void show_closmu(const ClosMu& c, std::ostringstream& out);

void show_stackmu(const StackMu& st, std::ostringstream& out) {
  for (auto it = st.items; !it.empty(); it = it.tail()) {
    show_closmu(it.head(), out);
    out << " . ";
  }
  if (st.end.is_bound)
    out << st.end.index;
  else
    out << '\'' << st.end.index;
}

template <typename T, typename F>
void show_list(const List<T>& l, std::ostringstream& out, F f) {
  out << '[';
  bool first = true;
  for (auto it = l; !it.empty(); it = it.tail()) {
    if (!first) out << ", ";
    first = false;
    f(it.head(), out);
  }
  out << ']';
}

void show_closmu(const ClosMu& c, std::ostringstream& out) {
  out << '(' << print_term(c.t) << ", ";
  show_list(c.e, out, [](const ClosMu& x, std::ostringstream& o) { show_closmu(x, o); });
  out << ", ";
  show_list(c.eb, out, [](const StackMu& x, std::ostringstream& o) { show_stackmu(x, o); });
  out << ", ";
  show_list(c.ef, out, [](const StackMu& x, std::ostringstream& o) { show_stackmu(x, o); });
  out << ')';
}

} // namespace

StepResult<MuEnvConfig> kam_mu_env_step(const MuEnvConfig& c) {
  using R = StepResult<MuEnvConfig>;
  if (std::holds_alternative<MuEnvEv>(c)) {
    const auto& ev = std::get<MuEnvEv>(c);
    switch (ev.t->k) {
      case TermD::K::App: {
        StackMu st = ev.stack;
        st.items = st.items.push(ClosMu{ev.t->b, ev.e, ev.eb, {}});
        return R::silent("Push", MuEnvEv{ev.t->a, ev.e, ev.eb, std::move(st)});
      }
      case TermD::K::Idx: {
        if (ev.e.empty()) return R::invariant_broken("term index with empty environment");
        if (ev.t->index == 0) {
          ClosMu hd = ev.e.head();
          return R::silent("Zero-Term", MuEnvEv{hd.t, hd.e, hd.eb, ev.stack});
        }
        return R::silent("Env-Term",
                         MuEnvEv{didx(ev.t->index - 1), ev.e.tail(), ev.eb, ev.stack});
      }
      case TermD::K::Lam: {
        if (!ev.stack.items.empty()) {
          StackMu st = ev.stack;
          ClosMu arg = st.items.head();
          st.items = st.items.tail();
          return R::silent("Grab", MuEnvEv{ev.t->a, ev.e.push(arg), ev.eb, std::move(st)});
        }
        if (ev.stack.end.is_bound)
          return R::silent("Restore",
                           MuEnvBn{ev.stack.end.index, ev.eb, ClosMu{ev.t, ev.e, ev.eb, {}}});
        return R::stuck_value(); // value at a free name
      }
      case TermD::K::Mu:
        return R::silent("Capture",
                         MuEnvEv{ev.t->a, ev.e, ev.eb.push(ev.stack), StackMu{{}, ev.t->name}});
      case TermD::K::FVar:
        return R::stuck_dead("free variable in environment machine");
    }
    return R::stuck_dead("unreachable");
  }
  const auto& bn = std::get<MuEnvBn>(c);
  if (bn.eb.empty()) return R::invariant_broken("name index with empty name environment");
  if (bn.b == 0) {
    StackMu st = bn.eb.head();
    return R::silent("Zero-BName", MuEnvEv{bn.clos.t, bn.clos.e, bn.clos.eb, std::move(st)});
  }
  return R::silent("Env-BName", MuEnvBn{bn.b - 1, bn.eb.tail(), bn.clos});
}

std::string show(const MuEnvConfig& c) {
  std::ostringstream out;
  if (std::holds_alternative<MuEnvEv>(c)) {
    const auto& ev = std::get<MuEnvEv>(c);
    out << "< " << print_term(ev.t) << " | ";
    show_list(ev.e, out, [](const ClosMu& x, std::ostringstream& o) { show_closmu(x, o); });
    out << " | ";
    show_list(ev.eb, out, [](const StackMu& x, std::ostringstream& o) { show_stackmu(x, o); });
    out << " | ";
    show_stackmu(ev.stack, out);
    out << " >";
  } else {
    const auto& bn = std::get<MuEnvBn>(c);
    out << "< " << bn.b << " | ";
    show_list(bn.eb, out, [](const StackMu& x, std::ostringstream& o) { show_stackmu(x, o); });
    out << " | ";
    show_closmu(bn.clos, out);
    out << " >bn";
  }
  return out.str();
}
std::string key(const MuEnvConfig& c) { return show(c); }

// ------------------------------- AB (lambda-mu) ----------------------------

List<StackMu> testing_env(const std::vector<TermDPtr>& terms) {
  // entry i maps name i to (t_i, -, -, -) . (i+1)
  List<StackMu> env;
  for (size_t i = terms.size(); i-- > 0;) {
    StackMu st{List<ClosMu>{}.push(ClosMu{terms[i], {}, {}, {}}),
               NameD::free(static_cast<unsigned>(i) + 1)};
    env = env.push(st);
  }
  return env;
}

StepResult<AbMuConfig> ab_mu_step(const AbMuConfig& c) {
  using R = StepResult<AbMuConfig>;
  if (std::holds_alternative<AbMuEv>(c)) {
    const auto& ev = std::get<AbMuEv>(c);
    switch (ev.t->k) {
      case TermD::K::App: {
        StackMu st = ev.stack;
        st.items = st.items.push(ClosMu{ev.t->b, ev.e, ev.eb, ev.ef});
        return R::silent("Push", AbMuEv{ev.t->a, ev.e, ev.eb, ev.ef, std::move(st)});
      }
      case TermD::K::Idx: {
        if (ev.e.empty()) return R::invariant_broken("term index with empty environment");
        if (ev.t->index == 0) {
          ClosMu hd = ev.e.head();
          // the configuration-global testing environment is kept
          return R::silent("Zero-Term", AbMuEv{hd.t, hd.e, hd.eb, ev.ef, ev.stack});
        }
        return R::silent("Env-Term",
                         AbMuEv{didx(ev.t->index - 1), ev.e.tail(), ev.eb, ev.ef, ev.stack});
      }
      case TermD::K::Lam: {
        if (!ev.stack.items.empty()) {
          StackMu st = ev.stack;
          ClosMu arg = st.items.head();
          st.items = st.items.tail();
          return R::silent("Grab",
                           AbMuEv{ev.t->a, ev.e.push(arg), ev.eb, ev.ef, std::move(st)});
        }
        if (ev.stack.end.is_bound)
          return R::silent("Restore",
                           AbMuBn{ev.stack.end.index, ev.eb,
                                  ClosMu{ev.t, ev.e, ev.eb, ev.ef}, ev.ef});
        return R::silent("Lookup-FName",
                         AbMuFn{ev.stack.end.index, ev.ef, {},
                                ClosMu{ev.t, ev.e, ev.eb, ev.ef}, ev.stack.end.index});
      }
      case TermD::K::Mu:
        return R::silent("Capture", AbMuEv{ev.t->a, ev.e, ev.eb.push(ev.stack), ev.ef,
                                           StackMu{{}, ev.t->name}});
      case TermD::K::FVar:
        return R::stuck_dead("free variable in environment machine");
    }
    return R::stuck_dead("unreachable");
  }
  if (std::holds_alternative<AbMuBn>(c)) {
    const auto& bn = std::get<AbMuBn>(c);
    if (bn.eb.empty()) return R::invariant_broken("name index with empty name environment");
    if (bn.b == 0) {
      StackMu st = bn.eb.head();
      return R::silent("Zero-BName",
                       AbMuEv{bn.clos.t, bn.clos.e, bn.clos.eb, bn.ef, std::move(st)});
    }
    return R::silent("Env-BName", AbMuBn{bn.b - 1, bn.eb.tail(), bn.clos, bn.ef});
  }
  if (std::holds_alternative<AbMuFn>(c)) {
    const auto& fn = std::get<AbMuFn>(c);
    if (fn.a == 0 && !fn.ef.empty()) {
      StackMu st = fn.ef.head();
      // the search residue is discarded; the closure's environment is the
      // one in force when the lookup started
      return R::silent("Zero-FName",
                       AbMuEv{fn.clos.t, fn.clos.e, fn.clos.eb, fn.clos.ef, std::move(st)});
    }
    if (fn.a > 0 && !fn.ef.empty())
      return R::silent("Env-FName", AbMuFn{fn.a - 1, fn.ef.tail(),
                                           fn.rev.push(fn.ef.head()), fn.clos, fn.orig});
    if (fn.a == 0 && fn.ef.empty())
      return R::flagged({Alt<AbMuConfig>{
          "Arg", {Flag::lam()},
          AbMuConfig{AbMuInd{0, 1, 0, {}, fn.clos, fn.rev, fn.orig}}}});
    return R::invariant_broken("free name beyond the testing environment rank");
  }
  if (std::holds_alternative<AbMuInd>(c)) {
    const auto& ind = std::get<AbMuInd>(c);
    return R::flagged({
        Alt<AbMuConfig>{"Suc", {Flag::suc()},
                        AbMuConfig{AbMuInd{ind.n + 1, ind.acc + 1, ind.accmu, ind.rho,
                                           ind.clos, ind.rev, ind.orig}}},
        Alt<AbMuConfig>{"Var", {Flag::var(ind.n)},
                        AbMuConfig{AbMuTm{didx(ind.n), ind.acc, ind.accmu, ind.rho,
                                          ind.clos, ind.rev, ind.orig}}},
    });
  }
  if (std::holds_alternative<AbMuIndMu>(c)) {
    const auto& im = std::get<AbMuIndMu>(c);
    // mu < sucmu
    return R::flagged({
        Alt<AbMuConfig>{
            "Mu", {Flag::mu()},
            AbMuConfig{AbMuTm{dmu(NameD::bound(im.b), im.t), im.acc,
                              std::max(im.b + 1, im.accmu) - 1, im.rho, im.clos, im.rev,
                              im.orig}}},
        Alt<AbMuConfig>{"Suc-Mu", {Flag::sucmu()},
                        AbMuConfig{AbMuIndMu{im.b + 1, im.t, im.acc, im.accmu, im.rho,
                                             im.clos, im.rev, im.orig}}},
    });
  }
  if (std::holds_alternative<AbMuTm>(c)) {
    const auto& tm = std::get<AbMuTm>(c);
    std::vector<Alt<AbMuConfig>> alts;
    // lexicographic: app < appfun < indmu < lam < rev
    if (!tm.rho.empty()) {
      AbMuPair hd = tm.rho.head();
      alts.push_back(Alt<AbMuConfig>{
          "App", {Flag::app()},
          AbMuConfig{AbMuTm{dapp(hd.t, tm.t), std::max(tm.acc, hd.acc),
                            std::max(tm.accmu, hd.accmu), tm.rho.tail(), tm.clos, tm.rev,
                            tm.orig}}});
    }
    alts.push_back(Alt<AbMuConfig>{
        "AppFun", {Flag::appfun()},
        AbMuConfig{AbMuInd{0, 1, 0, tm.rho.push(AbMuPair{tm.t, tm.acc, tm.accmu}),
                           tm.clos, tm.rev, tm.orig}}});
    alts.push_back(Alt<AbMuConfig>{
        "Ind-Mu", {Flag::indmu()},
        AbMuConfig{AbMuIndMu{0, tm.t, tm.acc, tm.accmu, tm.rho, tm.clos, tm.rev,
                             tm.orig}}});
    alts.push_back(Alt<AbMuConfig>{
        "Lambda", {Flag::lam()},
        AbMuConfig{AbMuTm{dlam(tm.t), tm.acc == 0 ? 0 : tm.acc - 1, tm.accmu, tm.rho,
                          tm.clos, tm.rev, tm.orig}}});
    if (tm.acc == 0 && tm.accmu == 0 && tm.rho.empty()) {
      StackMu bottom{List<ClosMu>{}.push(ClosMu{tm.t, {}, {}, {}}),
                     NameD::free(tm.orig + 1)};
      alts.push_back(Alt<AbMuConfig>{
          "Init-Rev", {Flag::rev()},
          AbMuConfig{AbMuEfn{tm.rev, List<StackMu>{}.push(bottom), tm.clos, bottom}}});
    }
    return R::flagged(std::move(alts));
  }
  const auto& efn = std::get<AbMuEfn>(c);
  if (!efn.rev.empty())
    return R::flagged({Alt<AbMuConfig>{
        "Rev", {Flag::rev()},
        AbMuConfig{AbMuEfn{efn.rev.tail(), efn.ef.push(efn.rev.head()), efn.clos,
                           efn.stack}}}});
  return R::flagged({Alt<AbMuConfig>{
      "Restart", {Flag::done()},
      AbMuConfig{AbMuEv{efn.clos.t, efn.clos.e, efn.clos.eb, efn.ef, efn.stack}}}});
}

std::string show(const AbMuConfig& c) {
  std::ostringstream out;
  auto rho_out = [&](const List<AbMuPair>& rho) {
    for (auto r = rho; !r.empty(); r = r.tail())
      out << '(' << print_term(r.head().t) << ", " << r.head().acc << ", "
          << r.head().accmu << ") . ";
    out << "[]";
  };
  auto efs = [&](const List<StackMu>& l) {
    show_list(l, out, [](const StackMu& x, std::ostringstream& o) { show_stackmu(x, o); });
  };
  if (std::holds_alternative<AbMuEv>(c)) {
    const auto& ev = std::get<AbMuEv>(c);
    out << "< " << print_term(ev.t) << " | ";
    show_list(ev.e, out, [](const ClosMu& x, std::ostringstream& o) { show_closmu(x, o); });
    out << " | ";
    efs(ev.eb);
    out << " | ";
    efs(ev.ef);
    out << " | ";
    show_stackmu(ev.stack, out);
    out << " >";
  } else if (std::holds_alternative<AbMuBn>(c)) {
    const auto& bn = std::get<AbMuBn>(c);
    out << "< " << bn.b << " | ";
    efs(bn.eb);
    out << " | ";
    show_closmu(bn.clos, out);
    out << " >bn";
  } else if (std::holds_alternative<AbMuFn>(c)) {
    const auto& fn = std::get<AbMuFn>(c);
    out << "< " << fn.a << " | ";
    efs(fn.ef);
    out << " | ";
    efs(fn.rev);
    out << " | ";
    show_closmu(fn.clos, out);
    out << " | " << fn.orig << " >fn";
  } else if (std::holds_alternative<AbMuInd>(c)) {
    const auto& i = std::get<AbMuInd>(c);
    out << "< " << i.n << " | " << i.acc << " | " << i.accmu << " | ";
    rho_out(i.rho);
    out << " | ";
    show_closmu(i.clos, out);
    out << " | ";
    efs(i.rev);
    out << " | " << i.orig << " >ind";
  } else if (std::holds_alternative<AbMuIndMu>(c)) {
    const auto& i = std::get<AbMuIndMu>(c);
    out << "< " << i.b << " | " << print_term(i.t) << " | " << i.acc << " | " << i.accmu
        << " | ";
    rho_out(i.rho);
    out << " | ";
    show_closmu(i.clos, out);
    out << " | ";
    efs(i.rev);
    out << " | " << i.orig << " >indmu";
  } else if (std::holds_alternative<AbMuTm>(c)) {
    const auto& t = std::get<AbMuTm>(c);
    out << "< " << print_term(t.t) << " | " << t.acc << " | " << t.accmu << " | ";
    rho_out(t.rho);
    out << " | ";
    show_closmu(t.clos, out);
    out << " | ";
    efs(t.rev);
    out << " | " << t.orig << " >tm";
  } else {
    const auto& e = std::get<AbMuEfn>(c);
    out << "< ";
    efs(e.rev);
    out << " | ";
    efs(e.ef);
    out << " | ";
    show_closmu(e.clos, out);
    out << " | ";
    show_stackmu(e.stack, out);
    out << " >efn";
  }
  return out.str();
}
std::string key(const AbMuConfig& c) { return show(c); }

} // namespace lamflag
