#include <doctest.h>

#include "helpers.hpp"
#include "lamflag/equiv.hpp"
#include "lamflag/machine.hpp"

using namespace lamflag;

namespace {

TermNPtr omega() { return parse_named("(\\x. x x) (\\x. x x)", Dialect::NamedCbn); }

std::vector<std::string> flag_strings(const Trace& t) {
  std::vector<std::string> out;
  for (const auto& f : t.flag_word()) out.push_back(to_string(f));
  return out;
}

} // namespace

TEST_CASE("kam evaluates identity application") {
  KamConfig c{parse_named("(\\x. x) (\\y. y)", Dialect::NamedCbn), {}};
  auto r1 = kam_step(c);
  REQUIRE(r1.k == StepResult<KamConfig>::K::Silent);
  CHECK(r1.alts[0].rule == "Push");
  auto r2 = kam_step(*r1.alts[0].next);
  REQUIRE(r2.k == StepResult<KamConfig>::K::Silent);
  CHECK(r2.alts[0].rule == "Grab");
  auto r3 = kam_step(*r2.alts[0].next);
  CHECK(r3.k == StepResult<KamConfig>::K::Stuck);
  CHECK(r3.stuck == StuckKind::Value);
}

TEST_CASE("kam push rule on random configurations") {
  testgen::Gen gen(3);
  for (int i = 0; i < 100; i++) {
    TermNPtr t = gen.closed_named(5), s = gen.closed_named(4);
    List<TermNPtr> pi;
    for (unsigned j = 0; j < gen.pick(3); j++) pi = pi.push(gen.closed_named(3));
    auto r = kam_step(KamConfig{app(t, s), pi});
    REQUIRE(r.k == StepResult<KamConfig>::K::Silent);
    CHECK(equal(r.alts[0].next->term, t));
    CHECK(equal(r.alts[0].next->stack.head(), s));
    CHECK(r.alts[0].next->stack.size() == pi.size() + 1);
  }
}

TEST_CASE("kam loops on omega") {
  auto traces = run_machine(MachineKind::Kam, KamConfig{omega(), {}}, 500);
  REQUIRE(traces.size() == 1);
  CHECK(traces[0].status == TraceStatus::Fuel);
  CHECK(traces[0].steps.size() == 500);
}

TEST_CASE("nfb-cbn reproduces the three-way example") {
  // (\x. x) (\y. y 0 Omega) explored exhaustively
  TermNPtr t = parse_named("(\\x. x) (\\y. y 0 ((\\x. x x) (\\x. x x)))",
                           Dialect::NamedCbn);
  auto traces = run_machine(MachineKind::NfbCbn, NfbCbnConfig{true, t, {}, 1}, 30,
                            RunPolicy::AllBranches);
  REQUIRE(traces.size() == 3);
  CHECK(flag_strings(traces[0]) ==
        std::vector<std::string>{"lam", "var:1", "enter", "var:0", "done"});
  CHECK(traces[0].status == TraceStatus::Halt);
  CHECK(flag_strings(traces[1]) == std::vector<std::string>{"lam", "var:1", "skip", "enter"});
  CHECK(traces[1].status == TraceStatus::Fuel);
  CHECK(flag_strings(traces[2]) ==
        std::vector<std::string>{"lam", "var:1", "skip", "skip", "done"});
  CHECK(traces[2].status == TraceStatus::Halt);
}

TEST_CASE("nfb-cbn single steps") {
  // done on the empty stack
  auto r = nfb_cbn_step(NfbCbnConfig{false, nullptr, {}, 7});
  REQUIRE(r.k == StepResult<NfbCbnConfig>::K::Flagged);
  REQUIRE(r.alts.size() == 1);
  CHECK(r.alts[0].flags == FlagSeq{Flag::done()});
  CHECK(!r.alts[0].next.has_value());

  // enter/skip alternatives in order
  auto r2 = nfb_cbn_step(NfbCbnConfig{false, nullptr, List<TermNPtr>{}.push(fvar(0)), 2});
  REQUIRE(r2.alts.size() == 2);
  CHECK(r2.alts[0].flags == FlagSeq{Flag::enter()});
  CHECK(r2.alts[1].flags == FlagSeq{Flag::skip()});
}

TEST_CASE("kam and nfb-cbn agree on silent steps") {
  testgen::Gen gen(17);
  for (int i = 0; i < 150; i++) {
    TermNPtr t = gen.closed_named(8);
    KamConfig kc{t, {}};
    NfbCbnConfig nc{true, t, {}, 1};
    for (int s = 0; s < 40; s++) {
      auto kr = kam_step(kc);
      auto nr = nfb_cbn_step(nc);
      bool ksil = kr.k == StepResult<KamConfig>::K::Silent;
      bool nsil = nr.k == StepResult<NfbCbnConfig>::K::Silent;
      CHECK(ksil == nsil);
      if (!ksil) break;
      kc = *kr.alts[0].next;
      nc = *nr.alts[0].next;
      CHECK(canonical_key(kc.term) == canonical_key(nc.term));
      CHECK(kc.stack.size() == nc.stack.size());
      CHECK(nc.counter == 1);
    }
  }
}

TEST_CASE("env kam runs the four rules") {
  // (\0)(\0): Push, Grab, Zero, value
  EnvKamConfig c{parse_db("(\\ 0) (\\ 0)", Dialect::Db), {}, {}};
  auto r1 = kam_env_step(c);
  CHECK(r1.alts[0].rule == "Push");
  auto r2 = kam_env_step(*r1.alts[0].next);
  CHECK(r2.alts[0].rule == "Grab");
  auto r3 = kam_env_step(*r2.alts[0].next);
  CHECK(r3.alts[0].rule == "Zero");
  auto r4 = kam_env_step(*r3.alts[0].next);
  CHECK(r4.k == StepResult<EnvKamConfig>::K::Stuck);
  CHECK(r4.stuck == StuckKind::Value);
}

TEST_CASE("env kam index rules") {
  ClosD c0{dlam(didx(0)), {}};
  ClosD c1{dlam(dlam(didx(1))), {}};
  // <n+1 | c . d | pi> -> <n | d | pi>
  EnvKamConfig c{didx(1), List<ClosD>{}.push(c1).push(c0), {}};
  auto r = kam_env_step(c);
  CHECK(r.alts[0].rule == "Env");
  CHECK(r.alts[0].next->term->index == 0);
  CHECK(r.alts[0].next->env.size() == 1);
  // <0 | (t,e) . d | pi> -> <t | e | pi>
  auto r2 = kam_env_step(*r.alts[0].next);
  CHECK(r2.alts[0].rule == "Zero");
  CHECK(equal(r2.alts[0].next->term, c1.t));
  // empty environment is an invariant violation
  auto r3 = kam_env_step(EnvKamConfig{didx(0), {}, {}});
  CHECK(r3.stuck == StuckKind::InvariantBroken);
}

TEST_CASE("env kam agrees with the substitution kam") {
  testgen::Gen gen(29);
  for (int i = 0; i < 200; i++) {
    TermNPtr t = gen.closed_named(10);
    auto named = run_machine(MachineKind::Kam, KamConfig{t, {}}, 300);
    auto env = run_machine(MachineKind::KamEnv, initial_config(MachineKind::KamEnv, t), 300);
    CHECK(named[0].status == env[0].status);
  }
}

TEST_CASE("ab machine argument generation rules") {
  // Arg from a value at the empty stack
  AbConfig ev{EnvKamConfig{dlam(didx(0)), {}, {}}};
  auto r = ab_step(ev);
  REQUIRE(r.k == StepResult<AbConfig>::K::Flagged);
  CHECK(r.alts[0].flags == FlagSeq{Flag::arg()});
  const auto& ind = std::get<AbInd>(*r.alts[0].next);
  CHECK(ind.n == 0);
  CHECK(ind.rho.empty());

  // Restart only at acc 0 with an empty application stack
  AbTm done_ok{dlam(didx(0)), 0, {}, ClosD{didx(0), List<ClosD>{}.push(ClosD{dlam(didx(0)), {}})}};
  auto rd = ab_step(AbConfig{done_ok});
  bool has_done = false;
  for (const auto& a : rd.alts)
    if (a.flags == FlagSeq{Flag::done()}) {
      has_done = true;
      const auto& next = std::get<EnvKamConfig>(*a.next);
      CHECK(equal(next.term, done_ok.clos.t));
      CHECK(next.env.size() == done_ok.clos.env.size() + 1);
      CHECK(next.stack.empty());
    }
  CHECK(has_done);

  AbTm no_done{dlam(didx(0)), 1, {}, done_ok.clos};
  for (const auto& a : ab_step(AbConfig{no_done}).alts)
    CHECK(a.flags != FlagSeq{Flag::done()});

  // App builds stored-function applied to current term
  AbTm app_tm{didx(1), 2, List<AbPair>{}.push(AbPair{dlam(didx(0)), 0}), done_ok.clos};
  for (const auto& a : ab_step(AbConfig{app_tm}).alts)
    if (a.flags == FlagSeq{Flag::app()}) {
      const auto& next = std::get<AbTm>(*a.next);
      CHECK(print_term(next.t) == "(\\ 0) 1");
      CHECK(next.acc == 2);
    }
}

TEST_CASE("seq flags") {
  CHECK(to_string(seq_flags(parse_db("\\ 0", Dialect::Db))) == "var:0,lam,done");
  CHECK(to_string(seq_flags(didx(0))) == "var:0,done");
  // the argument-generation example, 13 flags
  FlagSeq fs = seq_flags(parse_db("\\ \\ (\\ 0) (1 (\\ 0))", Dialect::Db));
  CHECK(to_string(fs) ==
        "var:0,lam,appfun,suc,var:1,appfun,var:0,lam,app,app,lam,lam,done");
  CHECK(fs.size() == 13);
}

namespace {

// Drives a generation machine by a scripted flag word; returns the final
// configuration or nothing when some flag is not offered.
template <typename Step, typename Config>
std::optional<Config> replay(Step step, Config c, const FlagSeq& script) {
  size_t i = 0;
  while (i < script.size()) {
    auto r = step(c);
    if (r.k == StepResult<Config>::K::Silent) {
      c = *r.alts[0].next;
      continue;
    }
    if (r.k != StepResult<Config>::K::Flagged) return std::nullopt;
    bool advanced = false;
    for (const auto& a : r.alts) {
      if (a.flags.size() == 1 && a.flags[0] == script[i]) {
        if (!a.next) return i + 1 == script.size() ? std::optional<Config>(c) : std::nullopt;
        c = *a.next;
        i++;
        advanced = true;
        break;
      }
    }
    if (!advanced) return std::nullopt;
  }
  return c;
}

} // namespace

TEST_CASE("seq replay reaches the restart configuration") {
  // replaying Seq(t') from the index mode applies the tested value to t'
  ClosD clos{didx(0), List<ClosD>{}.push(ClosD{dlam(didx(0)), {}})};
  for (const auto& arg : enumerate_closed(6, false)) {
    AbConfig c{AbInd{0, {}, clos}};
    auto endc = replay(ab_step, c, seq_flags(arg));
    REQUIRE(endc.has_value());
    const auto& ev = std::get<EnvKamConfig>(*endc);
    CHECK(equal(ev.term, clos.t));
    CHECK(ev.stack.empty());
    REQUIRE(ev.env.size() == clos.env.size() + 1);
    CHECK(equal(ev.env.head().t, arg));
    CHECK(ev.env.head().env.empty());
  }
}


TEST_CASE("ab machine tm counter tracks needed binders") {
  // along any Seq-driven generation the tm-mode counter equals the minimal
  // number of enclosing lambdas for the partial term
  ClosD clos{didx(0), List<ClosD>{}.push(ClosD{dlam(didx(0)), {}})};
  for (const auto& arg : enumerate_closed(6, false)) {
    AbConfig c{AbInd{0, {}, clos}};
    FlagSeq script = seq_flags(arg);
    size_t i = 0;
    while (i < script.size()) {
      if (std::holds_alternative<AbTm>(c)) {
        const auto& tm = std::get<AbTm>(c);
        CHECK(tm.acc == term_stats(tm.t).needed_lams);
      }
      auto r = ab_step(c);
      REQUIRE(r.k == StepResult<AbConfig>::K::Flagged);
      bool moved = false;
      for (const auto& a : r.alts)
        if (a.flags.size() == 1 && a.flags[0] == script[i]) {
          if (a.next) c = *a.next;
          i++;
          moved = true;
          break;
        }
      REQUIRE(moved);
    }
  }
}

TEST_CASE("ctx machine generates the example context") {
  TermDPtr seed = didx(9); // stands in for the plugged term; only flags matter
  CtxConfig c = ctx_initial(seed);
  FlagSeq script = {Flag::push(), Flag::var(0), Flag::appr(), Flag::push(), Flag::var(0),
                    Flag::push(), Flag::var(0), Flag::appr(), Flag::appl(), Flag::lam()};
  auto stepper = [](const CtxConfig& cc) { return ctx_step(cc, CtxUnder::CbnEnv); };
  auto endc = replay(stepper, c, script);
  REQUIRE(endc.has_value());
  const auto& tm = std::get<CtxTm>(*endc);
  CHECK(print_term(tm.t) == "\\ 0 0 (9 0)");
  CHECK(tm.acc == 0);
}

TEST_CASE("ctx start and done") {
  CtxConfig c = CtxTm{parse_db("\\ 0", Dialect::Db), 0, {}};
  auto r = ctx_step(c);
  bool has_start = false;
  for (const auto& a : r.alts)
    if (a.flags == FlagSeq{Flag::start()}) {
      has_start = true;
      auto cur = *a.next;
      // run the underlying machine to the done flag
      for (int i = 0; i < 10; i++) {
        auto rr = ctx_step(cur);
        if (rr.k == StepResult<CtxConfig>::K::Flagged) {
          CHECK(rr.alts[0].flags == FlagSeq{Flag::done()});
          CHECK(!rr.alts[0].next.has_value());
          return;
        }
        REQUIRE(rr.k == StepResult<CtxConfig>::K::Silent);
        cur = *rr.alts[0].next;
      }
      FAIL("no done flag reached");
    }
  CHECK(has_start);
}

TEST_CASE("generated contexts close the plugged term") {
  // any flag path accepted by the ctx machine that reaches Start carries a
  // closed term when the seed is closed
  testgen::Gen gen(5);
  TermDPtr seed = parse_db("\\ 0 0", Dialect::Db);
  for (int trial = 0; trial < 200; trial++) {
    CtxConfig c = ctx_initial(seed);
    for (int s = 0; s < 40; s++) {
      auto r = ctx_step(c);
      if (r.k != StepResult<CtxConfig>::K::Flagged) break;
      const auto& a = r.alts[gen.pick(static_cast<unsigned>(r.alts.size()))];
      if (a.flags == FlagSeq{Flag::start()}) {
        const auto& ev = std::get<EnvKamConfig>(*a.next);
        CHECK(term_stats(ev.term).is_closed);
        break;
      }
      if (!a.next) break;
      c = *a.next;
    }
  }
}

TEST_CASE("tau determinism across cbn machines") {
  testgen::Gen gen(31);
  for (int i = 0; i < 100; i++) {
    TermNPtr t = gen.closed_named(8);
    MachineConfig c = initial_config(MachineKind::NfbCbn, t);
    for (int s = 0; s < 60; s++) {
      auto r = machine_step(MachineKind::NfbCbn, c);
      if (r.k == StepResult<MachineConfig>::K::Silent) {
        CHECK(r.alts.size() == 1);
        c = *r.alts[0].next;
      } else if (r.k == StepResult<MachineConfig>::K::Flagged) {
        // distinct flag sequences per alternative
        for (size_t x = 0; x < r.alts.size(); x++)
          for (size_t y = x + 1; y < r.alts.size(); y++)
            CHECK(to_string(r.alts[x].flags) != to_string(r.alts[y].flags));
        if (!r.alts[0].next) break;
        c = *r.alts[0].next;
      } else {
        break;
      }
    }
  }
}
