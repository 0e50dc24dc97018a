#include "lamflag/translate.hpp"

#include <stdexcept>

namespace lamflag {

using ho::Proc;

namespace {

// -- construction helpers ----------------------------------------------------

Proc in(const std::string& ch, const std::string& x, Proc p) {
  return ho::input(ch, x, std::move(p));
}
Proc in_(const std::string& ch, Proc p) { return ho::input(ch, "", std::move(p)); }
Proc out(const std::string& ch, Proc p) { return ho::output(ch, std::move(p)); }
Proc v(const std::string& x) { return ho::pvar(x); }
Proc P() { return ho::nil(); }
template <typename... Ts>
Proc P(Ts... ps) {
  return ho::par({std::move(ps)...});
}

std::string tvar(const std::string& ident) { return "v_" + ident; }
std::string nvar(const std::string& ident) { return "n_" + ident; }

} // namespace

Proc choice(std::vector<Proc> alternatives) {
  if (alternatives.size() == 1) return alternatives[0];
  Proc collector = v("x");
  for (size_t i = 1; i < alternatives.size(); i++) collector = in_("ch", collector);
  collector = in("ch", "x", collector);
  std::vector<Proc> ps;
  for (auto& a : alternatives) ps.push_back(out("ch", std::move(a)));
  ps.push_back(collector);
  return ho::par(std::move(ps));
}

Proc p_omega() {
  Proc half = in("c", "x", P(v("x"), out("c", v("x"))));
  return P(half, out("c", half));
}

// ===========================================================================
// KAM (substitution-based): stack head on hp, tail on c, termination barb b
// ===========================================================================

namespace kamtr {

Proc term(const TermNPtr& t) {
  switch (t->k) {
    case TermN::K::BVar: return v(tvar(t->ident));
    case TermN::K::App:
      return in("c", "p",
                P(term(t->a), out("c", P(out("hp", term(t->b)), out("c", v("p"))))));
    case TermN::K::Lam:
      return in("c", "p", P(in("hp", tvar(t->ident), term(t->a)), v("p")));
    default:
      throw std::runtime_error("kam translation needs a closed plain term");
  }
}

Proc stack(const List<TermNPtr>& st) {
  if (st.empty()) return out("b", P());
  return P(out("hp", term(st.head())), out("c", stack(st.tail())));
}

Proc config(const KamConfig& c) { return P(term(c.term), out("c", stack(c.stack))); }

} // namespace kamtr

// ===========================================================================
// NFB machine, call by name
// ===========================================================================

namespace nfbcbn {

Proc numeral(unsigned n) {
  Proc p = in_("f_z", out("init", P()));
  for (unsigned i = 0; i < n; i++) p = in_("f_suc", p);
  return p;
}

Proc term(const TermNPtr& t);

Proc restart() {
  return in_("f_lam",
             in("k", "x",
                P(out("hp", v("x")), out("k", in_("f_suc", v("x"))),
                  out("c", in("b", "x", v("x"))), out("b", P()))));
}

Proc term(const TermNPtr& t) {
  switch (t->k) {
    case TermN::K::BVar: return v(tvar(t->ident));
    case TermN::K::FVar: return numeral(t->index);
    case TermN::K::App:
      return in("c", "p",
                P(term(t->a), out("c", P(out("hp", term(t->b)), out("c", v("p"))))));
    case TermN::K::Lam:
      return in("c", "p",
                P(v("p"), out("b", restart()),
                  in("hp", tvar(t->ident), in_("b", term(t->a)))));
    default:
      throw std::runtime_error("nfb-cbn translation: mu term");
  }
}

Proc empty_stack() { return in("b", "x", v("x")); }

Proc stack(const List<TermNPtr>& st) {
  if (st.empty()) return empty_stack();
  return P(out("hp", term(st.head())), out("c", stack(st.tail())));
}

Proc ichoice(Proc pt) {
  return choice({in_("f_enter", in_("c", P(std::move(pt), out("c", empty_stack())))),
                 in_("f_skip", out("init", P()))});
}

Proc cont() {
  return in("c", "p",
            P(v("p"), out("b", in_("f_done", P())),
              in("hp", "x", in_("b", ichoice(v("x"))))));
}

Proc rec() { return in_("init", in("rec", "x", P(v("x"), out("rec", v("x")), cont()))); }

Proc config(const NfbCbnConfig& c) {
  Proc base = P(out("c", stack(c.stack)), out("k", numeral(c.counter)), rec(),
                out("rec", rec()));
  if (c.eval) return P(term(c.term), base);
  return P(cont(), base);
}

} // namespace nfbcbn

// ===========================================================================
// Environment-based machinery shared by the AB and CTX translations
// ===========================================================================

namespace envtr {

// counter acc: a case process on zero/suc, predecessor stacked on suk
Proc acc(unsigned a) {
  if (a == 0) return in("zero", "x", in_("suc", v("x")));
  return P(out("suk", acc(a - 1)), in_("zero", in("suc", "x", v("x"))));
}

Proc suk_wrap(Proc p) {
  return P(out("suk", std::move(p)), in_("zero", in("suc", "x", v("x"))));
}

Proc term(const TermDPtr& t);

Proc closure(const ClosD& c);

Proc env(const List<ClosD>& e) {
  if (e.empty()) return P();
  return P(out("he", closure(e.head())), out("env", env(e.tail())));
}

Proc closure(const ClosD& c) {
  return P(out("c1", term(c.t)), out("c2", env(c.env)));
}

Proc lam_wrap(Proc body) {
  return in("c", "x",
            P(v("x"), in("hp", "y", in("env", "z",
                                       P(std::move(body),
                                         out("env", P(out("he", v("y")),
                                                      out("env", v("z")))))))));
}

Proc app_wrap(Proc fun, Proc arg) {
  return in("c", "x",
             in("env", "y",
                P(std::move(fun),
                  out("c", P(out("hp", P(out("c1", std::move(arg)), out("c2", v("y")))),
                             out("c", v("x")))),
                  out("env", v("y")))));
}

Proc int_wrap(Proc p) { return in("env", "x", P(v("x"), in_("he", std::move(p)))); }

Proc term(const TermDPtr& t) {
  switch (t->k) {
    case TermD::K::Idx: {
      if (t->index == 0)
        return in("env", "x",
                  P(v("x"),
                    in("he", "y",
                       in_("env", P(v("y"), in("c1", "y1",
                                               in("c2", "y2",
                                                  P(v("y1"), out("env", v("y2"))))))))));
      return int_wrap(term(didx(t->index - 1)));
    }
    case TermD::K::Lam: return lam_wrap(term(t->a));
    case TermD::K::App: return app_wrap(term(t->a), term(t->b));
    default:
      throw std::runtime_error("environment translation: unsupported term form");
  }
}

Proc rho_empty() { return in("mt", "x", in_("cs", v("x"))); }

Proc pair(Proc t, Proc a) {
  return P(out("w1", std::move(t)), out("w2", std::move(a)));
}

Proc rho(const List<AbPair>& r) {
  if (r.empty()) return rho_empty();
  return P(out("hr", pair(term(r.head().t), acc(r.head().acc))),
           out("r", rho(r.tail())), in_("mt", in("cs", "x", v("x"))));
}

Proc stuck(const ClosD& c) {
  return in("hp", "z",
            P(term(c.t), out("env", P(out("he", v("z")), out("env", env(c.env))))));
}

// strips common successor layers; terminal cases consume both stored
// originals, discarding the loser's
Proc max_proc(Proc p1, Proc p2) {
  return P(std::move(p1), out("zero", in("max2", "x", in_("max1", out("resu", v("x"))))),
           out("suc",
               in("suk", "x1",
                  P(std::move(p2),
                    out("zero", in("max1", "x", in_("max2", out("resu", v("x"))))),
                    out("suc", in("suk", "x2", P(out("init1", v("x1")),
                                                 out("init2", v("x2")))))))));
}

Proc rec_max() {
  return in("init1", "x1",
            in("init2", "x2",
               in("recmax", "y",
                  P(v("y"), out("recmax", v("y")), max_proc(v("x1"), v("x2"))))));
}

} // namespace envtr

// ===========================================================================
// AB machine translation
// ===========================================================================

namespace abtr {

using namespace envtr;

Proc empty_stack() {
  return in_("f_arg", P(out("ind", term(didx(0))), out("k", acc(1)),
                        out("r", rho_empty()), out("initInd", P())));
}

Proc stack(const List<ClosD>& st) {
  if (st.empty()) return empty_stack();
  return P(out("hp", closure(st.head())), out("c", stack(st.tail())));
}

Proc succ() {
  return in_("f_suc",
             in("ind", "x",
                in("k", "y",
                   P(out("ind", int_wrap(v("x"))), out("k", suk_wrap(v("y"))),
                     out("initInd", P())))));
}

Proc var() {
  return in_("f_var", in("ind", "x", P(out("tm", v("x")), out("initTm", P()))));
}

Proc rec_int() {
  return in_("initInd",
             in("recind", "x", P(v("x"), out("recind", v("x")), choice({succ(), var()}))));
}

Proc lambda(Proc pacc) {
  return in_("f_lam",
             in("tm", "x",
                P(out("tm", lam_wrap(v("x"))), pacc,
                  out("zero", P(out("k", pacc), out("initTm", P()))),
                  out("suc", in("suk", "y", P(out("k", v("y")), out("initTm", P())))))));
}

Proc app_fun(Proc pacc, Proc prho) {
  return in_("f_appfun",
             in("tm", "x",
                P(out("r", P(out("hr", pair(v("x"), pacc)), out("r", std::move(prho)),
                             in_("mt", in("cs", "x2", v("x2"))))),
                  out("ind", term(didx(0))), out("k", acc(1)), out("initInd", P()))));
}

Proc app(Proc pacc, Proc phd, Proc prho) {
  return in_("f_app",
             in("tm", "x2",
                P(std::move(phd),
                  in("w2", "y",
                     in("w1", "x1",
                        P(out("max1", v("y")), out("max2", pacc), out("init1", v("y")),
                          out("init2", pacc),
                          in("resu", "u",
                             P(out("tm", app_wrap(v("x1"), v("x2"))),
                               out("r", std::move(prho)), out("k", v("u")),
                               out("initTm", P())))))))));
}

Proc done() {
  return in_("f_done",
             in("tm", "x",
                P(out("hp", P(out("c1", v("x")), out("c2", P()))),
                  out("c", empty_stack()))));
}

Proc rec_tm() {
  Proc cs_branch =
      in("k", "z",
         in("hr", "y1",
            in("r", "y2",
               choice({P(lambda(v("z")), out("r", v("y"))), app_fun(v("z"), v("y")),
                       app(v("z"), v("y1"), v("y2"))}))));
  Proc mt_branch =
      in("k", "z",
         P(v("z"),
           out("zero", choice({P(lambda(v("z")), out("r", rho_empty())),
                               app_fun(v("z"), rho_empty()), done()})),
           out("suc", in_("suk", choice({P(lambda(v("z")), out("r", rho_empty())),
                                         app_fun(v("z"), rho_empty())})))));
  return in_("initTm",
             in("rectm", "x",
                P(v("x"), out("rectm", v("x")),
                  in("r", "y",
                     P(v("y"), out("cs", cs_branch), out("mt", mt_branch))))));
}

Proc prec() {
  return P(rec_int(), out("recind", rec_int()), rec_tm(), out("rectm", rec_tm()),
           rec_max(), out("recmax", rec_max()));
}

Proc config(const AbConfig& c) {
  if (std::holds_alternative<EnvKamConfig>(c)) {
    const auto& ev = std::get<EnvKamConfig>(c);
    return P(term(ev.term), out("env", env(ev.env)), out("c", stack(ev.stack)), prec());
  }
  if (std::holds_alternative<AbInd>(c)) {
    const auto& i = std::get<AbInd>(c);
    return P(out("ind", term(didx(i.n))), out("k", acc(i.n + 1)), out("r", rho(i.rho)),
             out("initInd", P()), prec(), stuck(i.clos));
  }
  const auto& t = std::get<AbTm>(c);
  return P(out("tm", term(t.t)), out("k", acc(t.acc)), out("r", rho(t.rho)),
           out("initTm", P()), prec(), stuck(t.clos));
}

} // namespace abtr

// ===========================================================================
// CTX machine translation (call-by-name underlying evaluation)
// ===========================================================================

namespace ctxtr {

using namespace envtr;

Proc empty_stack() { return in_("f_done", P()); }

Proc stack(const List<ClosD>& st) {
  if (st.empty()) return empty_stack();
  return P(out("hp", closure(st.head())), out("c", stack(st.tail())));
}

Proc app_push(Proc pacc, Proc prho) {
  return in_("f_push",
             in("tm", "x",
                P(out("r", P(out("hr", pair(v("x"), pacc)), out("r", std::move(prho)),
                             in_("mt", in("cs", "x2", v("x2"))))),
                  out("ind", term(didx(0))), out("k", acc(1)), out("initInd", P()))));
}

// AppLeft builds current-applied-to-stored, AppRight the converse.
Proc app_lr(bool left, Proc pacc, Proc phd, Proc prho) {
  Proc build = left ? app_wrap(v("x2"), v("x1")) : app_wrap(v("x1"), v("x2"));
  return in_(left ? "f_appl" : "f_appr",
             in("tm", "x2",
                P(std::move(phd),
                  in("w2", "y",
                     in("w1", "x1",
                        P(out("max1", v("y")), out("max2", pacc), out("init1", v("y")),
                          out("init2", pacc),
                          in("resu", "u",
                             P(out("tm", std::move(build)), out("r", std::move(prho)),
                               out("k", v("u")), out("initTm", P())))))))));
}

Proc start() {
  return in_("f_start",
             in("tm", "x", P(v("x"), out("env", P()), out("c", empty_stack()))));
}

Proc rec_tm() {
  Proc cs_branch =
      in("k", "z",
         in("hr", "y1",
            in("r", "y2",
               choice({P(abtr::lambda(v("z")), out("r", v("y"))),
                       app_push(v("z"), v("y")),
                       app_lr(true, v("z"), v("y1"), v("y2")),
                       app_lr(false, v("z"), v("y1"), v("y2"))}))));
  Proc mt_branch =
      in("k", "z",
         P(v("z"),
           out("zero", choice({P(abtr::lambda(v("z")), out("r", rho_empty())),
                               app_push(v("z"), rho_empty()), start()})),
           out("suc", in_("suk", choice({P(abtr::lambda(v("z")), out("r", rho_empty())),
                                         app_push(v("z"), rho_empty())})))));
  return in_("initTm",
             in("rectm", "x",
                P(v("x"), out("rectm", v("x")),
                  in("r", "y",
                     P(v("y"), out("cs", cs_branch), out("mt", mt_branch))))));
}

Proc rec_int() {
  return in_("initInd",
             in("recind", "x",
                P(v("x"), out("recind", v("x")), choice({abtr::succ(), abtr::var()}))));
}

Proc prec() {
  return P(rec_int(), out("recind", rec_int()), rec_tm(), out("rectm", rec_tm()),
           rec_max(), out("recmax", rec_max()));
}

Proc config(const CtxConfig& c) {
  if (std::holds_alternative<CtxInd>(c)) {
    const auto& i = std::get<CtxInd>(c);
    return P(out("ind", term(didx(i.n))), out("k", acc(i.acc)), out("r", rho(i.rho)),
             out("initInd", P()), prec());
  }
  if (std::holds_alternative<CtxTm>(c)) {
    const auto& t = std::get<CtxTm>(c);
    return P(out("tm", term(t.t)), out("k", acc(t.acc)), out("r", rho(t.rho)),
             out("initTm", P()), prec());
  }
  if (std::holds_alternative<EnvKamConfig>(c)) {
    const auto& ev = std::get<EnvKamConfig>(c);
    return P(term(ev.term), out("env", env(ev.env)), out("c", stack(ev.stack)), prec());
  }
  throw std::runtime_error("ctx translation supports the call-by-name evaluator only");
}

} // namespace ctxtr

// ===========================================================================
// CK machine translation
// ===========================================================================

namespace cktr {

Proc term(const TermNPtr& t);

Proc value(const TermNPtr& t) {
  if (t->k == TermN::K::BVar) return v(tvar(t->ident));
  if (t->k == TermN::K::Lam) return in("v", tvar(t->ident), term(t->a));
  throw std::runtime_error("ck translation needs a closed term");
}

Proc arg_frame(Proc pt, Proc pstk) {
  return in("v", "x",
            P(std::move(pt), out("c", P(v("x"), out("c", std::move(pstk))))));
}

Proc term(const TermNPtr& t) {
  switch (t->k) {
    case TermN::K::App:
      return in("c", "p", P(term(t->a), out("c", arg_frame(term(t->b), v("p")))));
    case TermN::K::BVar:
    case TermN::K::Lam:
      return in("c", "p", P(v("p"), out("v", value(t))));
    default:
      throw std::runtime_error("ck translation needs a closed term");
  }
}

Proc stack(const List<CkFrame>& st) {
  if (st.empty()) return out("b", P());
  CkFrame f = st.head();
  if (f.is_arg) return arg_frame(term(f.t), stack(st.tail()));
  return P(value(f.t), out("c", stack(st.tail())));
}

Proc config(const CkConfig& c) {
  if (c.eval) return P(term(c.term), out("c", stack(c.stack)));
  return P(stack(c.stack), out("v", value(c.term)));
}

} // namespace cktr

// ===========================================================================
// NFB machine for call by value
// ===========================================================================

namespace nfbcbv {

Proc term(const TermNPtr& t);
Proc empty_stack() { return in("b", "x", v("x")); }

Proc fun_frame(Proc pv, Proc pstk) { return P(std::move(pv), out("c", std::move(pstk))); }

Proc restart() {
  return in_("f_lam",
             in("v", "x",
                in("k", "y",
                   P(fun_frame(v("x"), empty_stack()), out("v", v("y")),
                     out("k", in_("f_suc", v("y"))), out("b", P())))));
}

Proc ichoice(Proc pv, Proc pstk, Proc pn) {
  return choice({in_("f_enter", P(fun_frame(pv, empty_stack()), out("v", pn),
                                  out("k", in_("f_suc", pn)), out("b", restart()))),
                 in_("f_skip", P(std::move(pstk), out("v", pn),
                                 out("k", in_("f_suc", pn)), out("b", restart())))});
}

Proc numeral(unsigned n) {
  Proc p = in_("f_z",
               in("v", "x",
                  in("c", "p",
                     in("k", "y", in_("b", ichoice(v("x"), v("p"), v("y")))))));
  for (unsigned i = 0; i < n; i++) p = in_("f_suc", p);
  return p;
}

Proc value(const TermNPtr& t) {
  if (t->k == TermN::K::FVar) return numeral(t->index);
  if (t->k == TermN::K::BVar) return v(tvar(t->ident));
  if (t->k == TermN::K::Lam) return in("v", tvar(t->ident), in_("b", term(t->a)));
  throw std::runtime_error("nfb-cbv translation: not a value");
}

Proc arg_frame(Proc pt, Proc pstk) {
  return in("v", "x",
            in_("b", P(std::move(pt), out("c", P(v("x"), out("c", std::move(pstk)))))));
}

Proc term(const TermNPtr& t) {
  switch (t->k) {
    case TermN::K::App:
      return in("c", "p", P(term(t->a), out("c", arg_frame(term(t->b), v("p")))));
    case TermN::K::BVar:
    case TermN::K::FVar:
    case TermN::K::Lam:
      return in("c", "p", P(v("p"), out("v", value(t)), out("b", restart())));
    default:
      throw std::runtime_error("nfb-cbv translation: mu term");
  }
}

Proc stack(const List<CkFrame>& st) {
  if (st.empty()) return empty_stack();
  CkFrame f = st.head();
  if (f.is_arg) return arg_frame(term(f.t), stack(st.tail()));
  return fun_frame(value(f.t), stack(st.tail()));
}

Proc config(const NfbCbvConfig& c) {
  if (c.ck.eval)
    return P(term(c.ck.term), out("c", stack(c.ck.stack)), out("k", numeral(c.counter)));
  return P(stack(c.ck.stack), out("v", value(c.ck.term)), out("k", numeral(c.counter)),
           out("b", restart()));
}

} // namespace nfbcbv

// ===========================================================================
// NFB machine for the lambda-mu calculus
// ===========================================================================

namespace nfbmu {

Proc term(const TermNPtr& t);

Proc var_numeral(unsigned n) {
  Proc p = in_("f_vz", out("init", P()));
  for (unsigned i = 0; i < n; i++) p = in_("f_vsuc", p);
  return p;
}

Proc name_numeral(unsigned m) {
  Proc p = in_("f_nz", out("go", P()));
  for (unsigned i = 0; i < m; i++) p = in_("f_nsuc", p);
  return p;
}

// a stack that is only a name: signal the name word, then run the pending
// empty-stack behaviour received on b
Proc name_stack(Proc numeral) {
  return in("b", "x", P(std::move(numeral), in_("go", v("x"))));
}

Proc restart() {
  return in_("f_lam",
             in("k", "x",
                in("kn", "y",
                   P(out("hp", v("x")), out("k", in_("f_vsuc", v("x"))),
                     out("c", name_stack(v("y"))), out("kn", in_("f_nsuc", v("y"))),
                     out("b", P())))));
}

Proc term(const TermNPtr& t) {
  switch (t->k) {
    case TermN::K::BVar: return v(tvar(t->ident));
    case TermN::K::FVar: return var_numeral(t->index);
    case TermN::K::App:
      return in("c", "p",
                P(term(t->a), out("c", P(out("hp", term(t->b)), out("c", v("p"))))));
    case TermN::K::Lam:
      return in("c", "p",
                P(v("p"), out("b", restart()),
                  in("hp", tvar(t->ident), in_("b", term(t->a)))));
    case TermN::K::Mu: {
      Proc nameproc = t->name.is_bound ? v(nvar(t->name.ident))
                                       : name_stack(name_numeral(t->name.index));
      return in("c", nvar(t->ident), P(term(t->a), out("c", std::move(nameproc))));
    }
  }
  throw std::runtime_error("unreachable");
}

Proc stack(const StackN& st, size_t from = 0) {
  if (from >= st.items.size()) {
    if (st.end.is_bound)
      throw std::runtime_error("nfb-mu translation: stack ends in a bound name");
    return name_stack(name_numeral(st.end.index));
  }
  return P(out("hp", term(st.items[from])), out("c", stack(st, from + 1)));
}

Proc ichoice(Proc pt) {
  return choice(
      {in_("f_enter", in_("c", in("kn", "y",
                                  P(std::move(pt), out("c", name_stack(v("y"))),
                                    out("kn", in_("f_nsuc", v("y"))))))),
       in_("f_skip", out("init", P()))});
}

Proc cont() {
  return in("c", "p",
            P(v("p"), out("b", in_("f_done", P())),
              in("hp", "x", in_("b", ichoice(v("x"))))));
}

Proc rec() { return in_("init", in("rec", "x", P(v("x"), out("rec", v("x")), cont()))); }

Proc config(const NfbMuConfig& c) {
  Proc base = P(out("c", stack(c.stack)), out("k", var_numeral(c.n)),
                out("kn", name_numeral(c.m)), rec(), out("rec", rec()));
  if (c.eval) return P(term(c.term), base);
  return P(cont(), base);
}

} // namespace nfbmu

// ===========================================================================
// AB machine for the lambda-mu calculus
// ===========================================================================

namespace abmu {

Proc term(const TermDPtr& t);
Proc gen_start();

Proc accm(unsigned a) {
  if (a == 0) return in("zerom", "x", in_("sucm", v("x")));
  return P(out("sukm", accm(a - 1)), in_("zerom", in("sucm", "x", v("x"))));
}

Proc sukm_wrap(Proc p) {
  return P(out("sukm", std::move(p)), in_("zerom", in("sucm", "x", v("x"))));
}

Proc closure(const ClosMu& c);
Proc stackp(const StackMu& st);

Proc env_t(const List<ClosMu>& e) {
  if (e.empty()) return P();
  return P(out("he", closure(e.head())), out("env", env_t(e.tail())));
}
Proc env_b(const List<StackMu>& e) {
  if (e.empty()) return P();
  return P(out("hb", stackp(e.head())), out("eb", env_b(e.tail())));
}
Proc env_f(const List<StackMu>& e) {
  if (e.empty()) return gen_start();
  return P(out("hf", stackp(e.head())), out("ef", env_f(e.tail())));
}

Proc closure(const ClosMu& c) {
  return P(out("c1", term(c.t)), out("c2", env_t(c.e)), out("c3", env_b(c.eb)),
           out("c4", env_f(c.ef)));
}

// bound-name search: saves eb, walks it, restores the save on success
Proc bsearch(unsigned b) {
  if (b == 0)
    return in("eb", "x",
              P(v("x"), in("hb", "y",
                           in_("eb", in("svb", "z", P(v("y"), out("eb", v("z"))))))));
  return in("eb", "x", P(v("x"), in_("hb", bsearch(b - 1))));
}

Proc bound_name(Proc search) {
  return in("eb", "x", P(std::move(search), out("eb", v("x")), out("svb", v("x"))));
}

Proc mtrev() { return in("mtrev", "x", in_("csrev", v("x"))); }

Proc consrev(Proc pstk, Proc penv) {
  return P(out("hrev", std::move(pstk)), out("rev", std::move(penv)),
           in_("mtrev", in("csrev", "x", v("x"))));
}

// free-name search: saves ef and the index process, accumulates the
// traversed prefix in reverse on rev, restores the save on success
Proc fsearch(unsigned a) {
  if (a == 0)
    return in("ef", "x",
              P(v("x"),
                in("hf", "y",
                   in_("ef", in("svf", "z",
                                in_("svfn", in_("rev", P(v("y"), out("ef", v("z"))))))))));
  return in("ef", "x",
            in("rev", "y",
               P(v("x"), in("hf", "z", P(fsearch(a - 1),
                                         out("rev", consrev(v("z"), v("y"))))))));
}

Proc free_name(unsigned a) {
  return in("ef", "x",
            P(fsearch(a), out("ef", v("x")), out("svf", v("x")),
              out("svfn", fsearch(a)), out("rev", mtrev())));
}

Proc lam_wrap(Proc body) {
  return in("c", "x",
            P(v("x"), in("hp", "y",
                         in("env", "z",
                            P(std::move(body),
                              out("env", P(out("he", v("y")), out("env", v("z")))))))));
}

Proc app_wrap(Proc fun, Proc arg) {
  return in("c", "x",
            in("env", "y",
               in("eb", "z",
                  in("ef", "u",
                     P(std::move(fun),
                       out("c", P(out("hp", P(out("c1", std::move(arg)), out("c2", v("y")),
                                              out("c3", v("z")), out("c4", v("u")))),
                                  out("c", v("x")))),
                       out("env", v("y")), out("eb", v("z")), out("ef", v("u")))))));
}

Proc mu_wrap(Proc namep, Proc body) {
  return in("c", "x",
            in("eb", "y",
               P(std::move(body), out("eb", P(out("hb", v("x")), out("eb", v("y")))),
                 out("c", std::move(namep)))));
}

Proc term(const TermDPtr& t) {
  switch (t->k) {
    case TermD::K::Idx: {
      if (t->index == 0)
        return in("env", "x",
                  P(v("x"),
                    in("he", "y",
                       in_("env",
                           in_("eb",
                               P(v("y"),
                                 in("c1", "y1",
                                    in("c2", "y2",
                                       in("c3", "y3",
                                          in_("c4",
                                              P(v("y1"), out("env", v("y2")),
                                                out("eb", v("y3")))))))))))));
      return in("env", "x", P(v("x"), in_("he", term(didx(t->index - 1)))));
    }
    case TermD::K::Lam: return lam_wrap(term(t->a));
    case TermD::K::App: return app_wrap(term(t->a), term(t->b));
    case TermD::K::Mu: {
      Proc namep = t->name.is_bound ? bound_name(bsearch(t->name.index))
                                    : free_name(t->name.index);
      return mu_wrap(std::move(namep), term(t->a));
    }
    default:
      throw std::runtime_error("ab-mu translation: free term variable");
  }
}

Proc stackp(const StackMu& st) {
  std::vector<ClosMu> items;
  for (auto it = st.items; !it.empty(); it = it.tail()) items.push_back(it.head());
  Proc tail = st.end.is_bound ? bound_name(bsearch(st.end.index))
                              : free_name(st.end.index);
  for (size_t i = items.size(); i-- > 0;)
    tail = P(out("hp", closure(items[i])), out("c", tail));
  return tail;
}

Proc rho_triple(const AbMuPair& p) {
  return P(out("w1", term(p.t)), out("w2", envtr::acc(p.acc)),
           out("w3", accm(p.accmu)));
}

Proc rho(const List<AbMuPair>& r) {
  if (r.empty()) return envtr::rho_empty();
  return P(out("hr", rho_triple(r.head())), out("r", rho(r.tail())),
           in_("mt", in("cs", "x", v("x"))));
}

Proc gen_start() {
  return in_("f_lam",
             in_("svf", P(out("ind", term(didx(0))), out("k", envtr::acc(1)),
                          out("km", accm(0)), out("r", envtr::rho_empty()),
                          out("initInd", P()))));
}

Proc int_wrap(Proc p) { return in("env", "x", P(v("x"), in_("he", std::move(p)))); }

Proc succ() {
  return in_("f_suc",
             in("ind", "x",
                in("k", "y",
                   P(out("ind", int_wrap(v("x"))), out("k", envtr::suk_wrap(v("y"))),
                     out("initInd", P())))));
}

Proc var() {
  return in_("f_var", in("ind", "x", P(out("tm", v("x")), out("initTm", P()))));
}

Proc rec_int() {
  return in_("initInd",
             in("recind", "x", P(v("x"), out("recind", v("x")), choice({succ(), var()}))));
}

Proc lambda(Proc pacc) {
  return in_("f_lam",
             in("tm", "x",
                P(out("tm", lam_wrap(v("x"))), pacc,
                  out("zero", P(out("k", pacc), out("initTm", P()))),
                  out("suc", in("suk", "y", P(out("k", v("y")), out("initTm", P())))))));
}

Proc app_fun(Proc pacc, Proc paccmu, Proc prho) {
  return in_("f_appfun",
             in("tm", "x",
                P(out("r", P(out("hr", P(out("w1", v("x")), out("w2", pacc),
                                         out("w3", paccmu))),
                             out("r", std::move(prho)),
                             in_("mt", in("cs", "x2", v("x2"))))),
                  out("ind", term(didx(0))), out("k", envtr::acc(1)),
                  out("km", accm(0)), out("initInd", P()))));
}

Proc maxm_proc(Proc p1, Proc p2) {
  return P(std::move(p1),
           out("zerom", in("maxm2", "x", in_("maxm1", out("resum", v("x"))))),
           out("sucm",
               in("sukm", "x1",
                  P(std::move(p2),
                    out("zerom", in("maxm1", "x", in_("maxm2", out("resum", v("x"))))),
                    out("sucm", in("sukm", "x2", P(out("initm1", v("x1")),
                                                   out("initm2", v("x2")))))))));
}

Proc rec_maxm() {
  return in("initm1", "x1",
            in("initm2", "x2",
               in("recmaxm", "y",
                  P(v("y"), out("recmaxm", v("y")), maxm_proc(v("x1"), v("x2"))))));
}

Proc app(Proc pacc, Proc paccmu, Proc phd, Proc prho) {
  return in_("f_app",
             in("tm", "x2",
                P(std::move(phd),
                  in("w3", "u2",
                     in("w2", "y",
                        in("w1", "x1",
                           P(out("maxm1", v("u2")), out("maxm2", paccmu),
                             out("initm1", v("u2")), out("initm2", paccmu),
                             in("resum", "um",
                                P(out("max1", v("y")), out("max2", pacc),
                                  out("init1", v("y")), out("init2", pacc),
                                  in("resu", "ua",
                                     P(out("tm", app_wrap(v("x1"), v("x2"))),
                                       out("r", std::move(prho)), out("k", v("ua")),
                                       out("km", v("um")), out("initTm", P()))))))))))));
}

Proc mu_start() {
  return in_("f_indmu",
             P(out("indMu", bsearch(0)), out("km2", accm(1)), out("initIMu", P())));
}

Proc succ_mu() {
  return in_("f_sucmu",
             in("indMu", "x",
                in("km2", "y",
                   P(out("indMu", in("eb", "x2", P(v("x2"), in_("hb", v("x"))))),
                     out("km2", sukm_wrap(v("y"))), out("initIMu", P())))));
}

Proc mu_tm() {
  return in_("f_mu",
             in("tm", "x",
                in("km", "y1",
                   in("km2", "y2",
                      in("indMu", "z",
                         P(out("maxm1", v("y1")), out("maxm2", v("y2")),
                           out("initm1", v("y1")), out("initm2", v("y2")),
                           in("resum", "u",
                              P(out("tm", mu_wrap(bound_name(v("z")), v("x"))),
                                v("u"),
                                in("sukm", "y3",
                                   P(out("zerom", P()),
                                     out("sucm", P(out("km", v("y3")),
                                                   out("initTm", P())))))))))))));
}

Proc rec_imu() {
  return in_("initIMu",
             in("recimu", "x",
                P(v("x"), out("recimu", v("x")), choice({succ_mu(), mu_tm()}))));
}

// the bottom stack of the extended testing environment: (t, -, -, -).(a+1)
Proc stk_new(Proc pt, Proc pfn) {
  Proc succ_name = in("ef", "x",
                      in("rev", "y",
                         P(v("x"), in("hf", "z",
                                      P(pfn, out("rev", consrev(v("z"), v("y"))))))));
  Proc name_p = in("ef", "x",
                   P(succ_name, out("ef", v("x")), out("svf", v("x")),
                     out("svfn", succ_name), out("rev", mtrev())));
  return P(out("hp", P(out("c1", std::move(pt)), out("c2", P()), out("c3", P()),
                       out("c4", gen_start()))),
           out("c", std::move(name_p)));
}

Proc done_tm() {
  return in_("f_rev",
             in("tm", "x",
                in("svfn", "y",
                   P(out("newf", P(out("hf", stk_new(v("x"), v("y"))),
                                   out("ef", gen_start()))),
                     out("svstk", stk_new(v("x"), v("y"))), out("initRev", P())))));
}

Proc done_feed(Proc penv) {
  return in_("f_done",
             in("svstk", "x",
                P(out("hf", v("x")), out("ef", P()), out("svf", std::move(penv)),
                  out("svfn", P()), out("rev", P()))));
}

Proc rec_rev() {
  return in_("initRev",
             in("recrev", "x",
                P(v("x"), out("recrev", v("x")),
                  in("rev", "y",
                     in("newf", "z",
                        P(v("y"),
                          out("csrev",
                              in_("f_rev",
                                  in("hrev", "u",
                                     P(out("newf", P(out("hf", v("u")),
                                                     out("ef", v("z")))),
                                       out("initRev", P()))))),
                          out("mtrev", done_feed(v("z")))))))));
}

Proc rec_tm() {
  auto nodone = [&](Proc prho) {
    return std::vector<Proc>{
        P(lambda(v("z")), out("r", prho), out("km", v("u"))),
        app_fun(v("z"), v("u"), prho),
        P(mu_start(), out("r", prho), out("k", v("z")), out("km", v("u")))};
  };
  Proc cs_branch =
      in("k", "z",
         in("km", "u",
            in("hr", "y1",
               in("r", "y2",
                  choice({P(lambda(v("z")), out("r", v("y")), out("km", v("u"))),
                          app_fun(v("z"), v("u"), v("y")),
                          app(v("z"), v("u"), v("y1"), v("y2")),
                          P(mu_start(), out("r", v("y")), out("k", v("z")),
                            out("km", v("u")))})))));
  auto zero_alts = nodone(envtr::rho_empty());
  zero_alts.push_back(done_tm());
  Proc mt_zero = in("km", "u",
                    P(v("u"), out("zerom", choice(zero_alts)),
                      out("sucm", in_("sukm", choice(nodone(envtr::rho_empty()))))));
  Proc mt_branch =
      in("k", "z",
         P(v("z"), out("zero", mt_zero),
           out("suc", in_("suk", in("km", "u",
                                    choice(nodone(envtr::rho_empty())))))));
  return in_("initTm",
             in("rectm", "x",
                P(v("x"), out("rectm", v("x")),
                  in("r", "y",
                     P(v("y"), out("cs", cs_branch), out("mt", mt_branch))))));
}

Proc rec_max() {
  return in("init1", "x1",
            in("init2", "x2",
               in("recmax", "y",
                  P(v("y"), out("recmax", v("y")),
                    envtr::max_proc(v("x1"), v("x2"))))));
}

Proc prec() {
  return P(rec_int(), out("recind", rec_int()), rec_tm(), out("rectm", rec_tm()),
           rec_max(), out("recmax", rec_max()), rec_imu(), out("recimu", rec_imu()),
           rec_maxm(), out("recmaxm", rec_maxm()), rec_rev(), out("recrev", rec_rev()));
}

// the blocked residue of a lambda value, waiting for a stack head
Proc stuck_lam(const ClosMu& clos) {
  return in("hp", "y",
            in("env", "z",
               P(term(clos.t->a),
                 out("env", P(out("he", v("y")), out("env", v("z")))))));
}

Proc trf0_stuck() {
  return in("hf", "y",
            in_("ef", in("svf", "z",
                         in_("svfn", in_("rev", P(v("y"), out("ef", v("z"))))))));
}

Proc rev_proc(const List<StackMu>& rev) {
  Proc p = mtrev();
  std::vector<StackMu> sts;
  for (auto it = rev; !it.empty(); it = it.tail()) sts.push_back(it.head());
  for (size_t i = sts.size(); i-- > 0;) p = consrev(stackp(sts[i]), p);
  return p;
}

Proc gen_residue(const ClosMu& clos, const List<StackMu>& rev, unsigned orig) {
  return P(stuck_lam(clos), out("env", env_t(clos.e)), out("eb", env_b(clos.eb)),
           trf0_stuck(), out("svfn", fsearch(orig)), out("rev", rev_proc(rev)), prec());
}

Proc config(const AbMuConfig& c) {
  if (std::holds_alternative<AbMuEv>(c)) {
    const auto& ev = std::get<AbMuEv>(c);
    return P(term(ev.t), out("env", env_t(ev.e)), out("eb", env_b(ev.eb)),
             out("ef", env_f(ev.ef)), out("c", stackp(ev.stack)), prec());
  }
  if (std::holds_alternative<AbMuBn>(c)) {
    const auto& bn = std::get<AbMuBn>(c);
    return P(bsearch(bn.b), out("eb", env_b(bn.eb)), out("svb", env_b(bn.clos.eb)),
             stuck_lam(bn.clos), out("env", env_t(bn.clos.e)), out("ef", env_f(bn.ef)),
             prec());
  }
  if (std::holds_alternative<AbMuFn>(c)) {
    const auto& fn = std::get<AbMuFn>(c);
    return P(fsearch(fn.a), out("ef", env_f(fn.ef)), out("rev", rev_proc(fn.rev)),
             out("svf", env_f(fn.clos.ef)), out("svfn", fsearch(fn.orig)),
             stuck_lam(fn.clos), out("env", env_t(fn.clos.e)),
             out("eb", env_b(fn.clos.eb)), prec());
  }
  if (std::holds_alternative<AbMuInd>(c)) {
    const auto& i = std::get<AbMuInd>(c);
    return P(out("ind", term(didx(i.n))), out("k", envtr::acc(i.acc)),
             out("km", accm(i.accmu)), out("r", rho(i.rho)), out("initInd", P()),
             gen_residue(i.clos, i.rev, i.orig));
  }
  if (std::holds_alternative<AbMuIndMu>(c)) {
    const auto& i = std::get<AbMuIndMu>(c);
    return P(out("tm", term(i.t)), out("k", envtr::acc(i.acc)),
             out("km", accm(i.accmu)), out("r", rho(i.rho)),
             out("indMu", bsearch(i.b)), out("km2", accm(i.b + 1)),
             out("initIMu", P()), gen_residue(i.clos, i.rev, i.orig));
  }
  if (std::holds_alternative<AbMuTm>(c)) {
    const auto& t = std::get<AbMuTm>(c);
    return P(out("tm", term(t.t)), out("k", envtr::acc(t.acc)),
             out("km", accm(t.accmu)), out("r", rho(t.rho)), out("initTm", P()),
             gen_residue(t.clos, t.rev, t.orig));
  }
  const auto& e = std::get<AbMuEfn>(c);
  return P(out("rev", rev_proc(e.rev)), out("newf", env_f(e.ef)),
           out("svstk", stackp(e.stack)), out("initRev", P()), stuck_lam(e.clos),
           out("env", env_t(e.clos.e)), out("eb", env_b(e.clos.eb)), trf0_stuck(),
           prec());
}

} // namespace abmu

// ===========================================================================
// Profiles and dispatch
// ===========================================================================

bool has_translation(MachineKind k) {
  switch (k) {
    case MachineKind::Kam:
    case MachineKind::NfbCbn:
    case MachineKind::Ab:
    case MachineKind::Ctx:
    case MachineKind::Ck:
    case MachineKind::NfbCbv:
    case MachineKind::NfbMu:
    case MachineKind::AbMu: return true;
    default: return false;
  }
}

TranslationProfile profile_for(MachineKind k) {
  TranslationProfile p;
  p.machine = k;
  switch (k) {
    case MachineKind::Kam:
    case MachineKind::Ck:
      p.flag_channels = {"b"};
      p.convergence_barb = true;
      break;
    case MachineKind::NfbCbn:
      p.flag_channels = {"f_lam", "f_enter", "f_skip", "f_done", "f_suc", "f_z"};
      break;
    case MachineKind::Ab:
      p.flag_channels = {"f_arg", "f_suc", "f_var", "f_lam", "f_appfun", "f_app",
                         "f_done"};
      break;
    case MachineKind::Ctx:
      p.flag_channels = {"f_suc",  "f_var",  "f_lam",   "f_push",
                         "f_appl", "f_appr", "f_start", "f_done"};
      break;
    case MachineKind::NfbCbv:
      p.flag_channels = {"f_lam", "f_suc", "f_z", "f_enter", "f_skip", "f_done"};
      p.normalize_b_payloads = true;
      break;
    case MachineKind::NfbMu:
      p.flag_channels = {"f_vsuc", "f_vz",   "f_nsuc",  "f_nz",
                         "f_lam",  "f_done", "f_enter", "f_skip"};
      break;
    case MachineKind::AbMu:
      p.flag_channels = {"f_lam",   "f_suc",   "f_var", "f_appfun", "f_app",
                         "f_indmu", "f_sucmu", "f_mu",  "f_rev",    "f_done"};
      break;
    default:
      throw std::runtime_error(std::string("no translation for machine ") +
                               machine_name(k));
  }
  return p;
}

std::set<std::string> hidden_channels(const TranslationProfile& p, const ho::Proc& q) {
  std::set<std::string> hidden;
  for (const auto& ch : ho::channels(q))
    if (!p.flag_channels.count(ch)) hidden.insert(ch);
  return hidden;
}

std::set<std::string> hidden_channels(const TranslationProfile& p, const ho::Proc& q1,
                                      const ho::Proc& q2) {
  auto h = hidden_channels(p, q1);
  auto h2 = hidden_channels(p, q2);
  h.insert(h2.begin(), h2.end());
  return h;
}

std::vector<std::string> flag_word(MachineKind k, const Flag& f) {
  std::vector<std::string> w;
  switch (k) {
    case MachineKind::NfbCbn:
    case MachineKind::NfbCbv: {
      if (f.k == Flag::K::Var) {
        for (unsigned i = 0; i < f.payload; i++) w.push_back("f_suc");
        w.push_back("f_z");
        return w;
      }
      if (k == MachineKind::NfbCbv && f.k == Flag::K::Val) return {"f_enter"};
      if (k == MachineKind::NfbCbv && f.k == Flag::K::Ctx) return {"f_skip"};
      break;
    }
    case MachineKind::NfbMu: {
      if (f.k == Flag::K::Var) {
        for (unsigned i = 0; i < f.payload; i++) w.push_back("f_vsuc");
        w.push_back("f_vz");
        return w;
      }
      if (f.k == Flag::K::Name) {
        for (unsigned i = 0; i < f.payload; i++) w.push_back("f_nsuc");
        w.push_back("f_nz");
        return w;
      }
      break;
    }
    default: break;
  }
  // generation machines: one channel per flag; the index payload is already
  // conveyed by the preceding suc flags
  if (f.k == Flag::K::Var) return {"f_var"};
  return {"f_" + to_string(f)};
}

std::vector<std::string> flag_word(MachineKind k, const FlagSeq& fs) {
  std::vector<std::string> w;
  for (const auto& f : fs) {
    auto part = flag_word(k, f);
    w.insert(w.end(), part.begin(), part.end());
  }
  return w;
}

namespace {

ho::Proc strip_b_payloads(const ho::Proc& q) {
  using ho::Process;
  if (q->k == Process::K::Output && q->channel == "b") return out("b", P());
  if (q->k == Process::K::Par) {
    std::vector<Proc> parts;
    parts.reserve(q->parts.size());
    for (const auto& r : q->parts) parts.push_back(strip_b_payloads(r));
    return ho::par(std::move(parts));
  }
  return q;
}

} // namespace

ho::Proc normalize_for_match(const TranslationProfile& p, const ho::Proc& q) {
  if (p.normalize_b_payloads) return strip_b_payloads(q);
  return q;
}

ho::Proc translate_config(MachineKind k, const MachineConfig& c) {
  switch (k) {
    case MachineKind::Kam: return kamtr::config(std::get<KamConfig>(c));
    case MachineKind::NfbCbn: return nfbcbn::config(std::get<NfbCbnConfig>(c));
    case MachineKind::Ab: return abtr::config(std::get<AbConfig>(c));
    case MachineKind::Ctx: return ctxtr::config(std::get<CtxConfig>(c));
    case MachineKind::Ck: return cktr::config(std::get<CkConfig>(c));
    case MachineKind::NfbCbv: return nfbcbv::config(std::get<NfbCbvConfig>(c));
    case MachineKind::NfbMu: return nfbmu::config(std::get<NfbMuConfig>(c));
    case MachineKind::AbMu: return abmu::config(std::get<AbMuConfig>(c));
    default:
      throw std::runtime_error(std::string("no translation for machine ") +
                               machine_name(k));
  }
}

} // namespace lamflag
