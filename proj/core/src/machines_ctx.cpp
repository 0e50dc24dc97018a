#include "lamflag/machines_ctx.hpp"

#include <sstream>

namespace lamflag {

CtxConfig ctx_initial(const TermDPtr& seed) { return CtxTm{seed, 0, {}}; }

StepResult<CtxConfig> ctx_step(const CtxConfig& c, CtxUnder under) {
  using R = StepResult<CtxConfig>;
  if (std::holds_alternative<CtxInd>(c)) {
    const auto& ind = std::get<CtxInd>(c);
    return R::flagged({
        Alt<CtxConfig>{"Suc", {Flag::suc()},
                       CtxConfig{CtxInd{ind.n + 1, ind.acc + 1, ind.rho}}},
        Alt<CtxConfig>{"Var", {Flag::var(ind.n)},
                       CtxConfig{CtxTm{didx(ind.n), ind.acc, ind.rho}}},
    });
  }
  if (std::holds_alternative<CtxTm>(c)) {
    const auto& tm = std::get<CtxTm>(c);
    std::vector<Alt<CtxConfig>> alts;
    // lexicographic by flag: appl < appr < lam < push < start
    if (!tm.rho.empty()) {
      AbPair hd = tm.rho.head();
      unsigned m = std::max(tm.acc, hd.acc);
      alts.push_back(Alt<CtxConfig>{"AppLeft", {Flag::appl()},
                                    CtxConfig{CtxTm{dapp(tm.t, hd.t), m, tm.rho.tail()}}});
      alts.push_back(Alt<CtxConfig>{"AppRight", {Flag::appr()},
                                    CtxConfig{CtxTm{dapp(hd.t, tm.t), m, tm.rho.tail()}}});
    }
    alts.push_back(Alt<CtxConfig>{
        "Lambda", {Flag::lam()},
        CtxConfig{CtxTm{dlam(tm.t), tm.acc == 0 ? 0 : tm.acc - 1, tm.rho}}});
    alts.push_back(Alt<CtxConfig>{
        "AppPush", {Flag::push()},
        CtxConfig{CtxInd{0, 1, tm.rho.push(AbPair{tm.t, tm.acc})}}});
    if (tm.acc == 0 && tm.rho.empty()) {
      if (under == CtxUnder::CbnEnv)
        alts.push_back(Alt<CtxConfig>{"Start", {Flag::start()},
                                      CtxConfig{EnvKamConfig{tm.t, {}, {}}}});
      else
        alts.push_back(Alt<CtxConfig>{"Start", {Flag::start()},
                                      CtxConfig{CekConfig{true, tm.t, {}, {}, {}}}});
    }
    return R::flagged(std::move(alts));
  }
  if (std::holds_alternative<EnvKamConfig>(c)) {
    const auto& ev = std::get<EnvKamConfig>(c);
    if (ev.term->k == TermD::K::Lam && ev.stack.empty())
      return R::flagged({Alt<CtxConfig>{"Done", {Flag::done()}, std::nullopt}});
    auto r = kam_env_step(ev);
    if (r.k == StepResult<EnvKamConfig>::K::Silent)
      return R::silent(r.alts[0].rule, CtxConfig{*r.alts[0].next});
    R out;
    out.k = R::K::Stuck;
    out.stuck = r.stuck;
    out.detail = r.detail;
    return out;
  }
  const auto& cek = std::get<CekConfig>(c);
  if (!cek.eval && cek.stack.empty())
    return R::flagged({Alt<CtxConfig>{"Done", {Flag::done()}, std::nullopt}});
  auto r = cek_step(cek);
  if (r.k == StepResult<CekConfig>::K::Silent)
    return R::silent(r.alts[0].rule, CtxConfig{*r.alts[0].next});
  R out;
  out.k = R::K::Stuck;
  out.stuck = r.stuck;
  out.detail = r.detail;
  return out;
}

std::string show(const CtxConfig& c) {
  std::ostringstream out;
  if (std::holds_alternative<CtxInd>(c)) {
    const auto& i = std::get<CtxInd>(c);
    out << "< " << i.n << " | " << i.acc << " | ";
    for (auto r = i.rho; !r.empty(); r = r.tail())
      out << '(' << print_term(r.head().t) << ", " << r.head().acc << ") . ";
    out << "[] >ind";
    return out.str();
  }
  if (std::holds_alternative<CtxTm>(c)) {
    const auto& t = std::get<CtxTm>(c);
    out << "< " << print_term(t.t) << " | " << t.acc << " | ";
    for (auto r = t.rho; !r.empty(); r = r.tail())
      out << '(' << print_term(r.head().t) << ", " << r.head().acc << ") . ";
    out << "[] >tm";
    return out.str();
  }
  if (std::holds_alternative<EnvKamConfig>(c)) return show(std::get<EnvKamConfig>(c));
  return show(std::get<CekConfig>(c));
}
std::string key(const CtxConfig& c) { return show(c); }

} // namespace lamflag
