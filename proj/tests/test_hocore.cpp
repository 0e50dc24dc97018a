#include <doctest.h>

#include "helpers.hpp"
#include "lamflag/translate.hpp"

using namespace lamflag;
using ho::Proc;

TEST_CASE("hocore parse and print") {
  Proc p = ho::parse("a(x).x | b<0>");
  CHECK(ho::print(p) == "a(x).x | b<0>");
  CHECK(ho::print(ho::parse("c(p).(p | d<x>)")) == "c(p).(d<x> | p)");
  CHECK(ho::equal(ho::parse("0 | 0"), ho::nil()));
  CHECK(ho::equal(ho::parse("(a<0> | b<0>) | c<0>"),
                  ho::parse("c<0> | (b<0> | a<0>)")));
}

TEST_CASE("normalization is idempotent and order-insensitive") {
  testgen::Gen gen(3);
  auto random_proc = [&](auto&& self, unsigned depth) -> Proc {
    if (depth == 0) return gen.pick(2) ? ho::nil() : ho::pvar("x");
    switch (gen.pick(4)) {
      case 0: return ho::input("a" + std::to_string(gen.pick(3)), "x", self(self, depth - 1));
      case 1: return ho::output("a" + std::to_string(gen.pick(3)), self(self, depth - 1));
      case 2: return ho::par2(self(self, depth - 1), self(self, depth - 1));
      default: return ho::pvar("y");
    }
  };
  for (int i = 0; i < 200; i++) {
    Proc a = random_proc(random_proc, 4);
    Proc b = random_proc(random_proc, 4);
    CHECK(ho::equal(ho::par2(a, b), ho::par2(b, a)));
    CHECK(ho::equal(ho::parse(ho::print(ho::par2(a, b))), ho::par2(a, b)));
  }
}

TEST_CASE("substitution") {
  Proc p = ho::parse("x");
  CHECK(ho::print(ho::substitute(p, "x", ho::parse("a<0>"))) == "a<0>");
  // copying: (x | x){P/x} = P | P
  Proc q = ho::substitute(ho::parse("x | x"), "x", ho::parse("a<0>"));
  CHECK(ho::print(q) == "a<0> | a<0>");
  // shadowed binder untouched
  Proc r = ho::substitute(ho::parse("a(x).x | x"), "x", ho::parse("b<0>"));
  CHECK(ho::equal(r, ho::parse("a(x).x | b<0>")));
}

TEST_CASE("substitution renames captured binders") {
  // receiving on y inside must not capture the free y of the payload
  Proc p = ho::parse("a(y).(x | y)");
  Proc q = ho::substitute(p, "x", ho::parse("y"));
  // transitions after feeding distinct payloads must differ only by payload
  auto succs = ho::transitions(q);
  REQUIRE(succs.size() == 1);
  CHECK(succs[0].first.k == ho::Label::K::In);
  // the free y stays free
  CHECK(ho::free_vars(q).count("y"));
}

TEST_CASE("transitions enumerate outputs, inputs, taus") {
  Proc p = ho::parse("a<b<0>> | a(x).x | d(y).y");
  auto ts = ho::transitions(p);
  int outs = 0, ins = 0, taus = 0;
  for (auto& [l, q] : ts) {
    if (l.k == ho::Label::K::Out) outs++;
    if (l.k == ho::Label::K::In) ins++;
    if (l.k == ho::Label::K::Tau) {
      taus++;
      CHECK(ho::print(q) == "b<0> | d(y).y");
    }
  }
  CHECK(outs == 1);
  CHECK(ins == 2);
  CHECK(taus == 1);
}

TEST_CASE("p_omega loops silently forever") {
  Proc p = p_omega();
  auto taus = ho::tau_successors(p);
  REQUIRE(taus.size() == 1);
  CHECK(ho::equal(taus[0], p));
  auto ts = ho::transitions(p);
  // inputs/outputs exist structurally but only on the hidden channel c
  for (auto& [l, q] : ts)
    if (l.k != ho::Label::K::Tau) CHECK(l.channel == "c");
  auto wb = ho::weak_barbs(p, {"c"}, 1000);
  CHECK(wb.barbs.empty());
}

TEST_CASE("barbs with hidden names") {
  Proc p = ho::parse("hd(x).x | b<0>");
  CHECK(ho::strong_barbs(p, {"hd"}) == std::set<std::string>{"b!"});
  CHECK(ho::strong_barbs(p, {}) == std::set<std::string>{"hd", "b!"});
}

TEST_CASE("translated kam term shows the convergence barb") {
  TermNPtr t = parse_named("(\\x. x) (\\y. y)", Dialect::NamedCbn);
  MachineConfig c = initial_config(MachineKind::Kam, t);
  Proc p = translate_config(MachineKind::Kam, c);
  auto profile = profile_for(MachineKind::Kam);
  auto wb = ho::weak_barbs(p, hidden_channels(profile, p), 200);
  CHECK(wb.barbs.count("b!"));
}

TEST_CASE("visible steps feed nil and drop payloads") {
  Proc p = ho::parse("done(z).(z | e<0>) | r<f<0>>");
  auto vs = ho::visible_steps(p, {});
  REQUIRE(vs.size() == 2);
  for (auto& [l, q] : vs) {
    if (l.k == ho::Label::K::In) {
      CHECK(l.channel == "done");
      CHECK(ho::print(q) == "e<0> | r<f<0>>");
    } else {
      CHECK(l.channel == "r");
      CHECK(ho::print(q) == "done(z).(e<0> | z)");
    }
  }
}

TEST_CASE("weak transitions close over tau") {
  // suc(_).suc(_).z(_).init<0>: the numeral 2 signals twice on suc then z
  Proc two = ho::parse("suc(u).suc(u).z(u).init<0>");
  std::set<std::string> hidden{"init"};
  auto v1 = ho::visible_steps(two, hidden);
  REQUIRE(v1.size() == 1);
  CHECK(v1[0].first.channel == "suc");
  auto v2 = ho::visible_steps(v1[0].second, hidden);
  CHECK(v2[0].first.channel == "suc");
  auto v3 = ho::visible_steps(v2[0].second, hidden);
  CHECK(v3[0].first.channel == "z");
}

TEST_CASE("choice consumes both messages and runs one branch") {
  Proc c = choice({ho::parse("a(u).0"), ho::parse("b(u).0")});
  auto taus = ho::tau_successors(c);
  REQUIRE(taus.size() == 2);
  // after both taus of either branch, exactly one of a/b is offered
  std::set<std::string> seen;
  for (auto& t1 : taus) {
    auto taus2 = ho::tau_successors(t1);
    REQUIRE(taus2.size() == 1);
    auto vs = ho::visible_steps(taus2[0], {});
    REQUIRE(vs.size() == 1);
    seen.insert(vs[0].first.channel);
  }
  CHECK(seen == std::set<std::string>{"a", "b"});
  // 3-way choice: collector consumes three messages
  Proc c3 = choice({ho::parse("a(u).0"), ho::parse("b(u).0"), ho::parse("d(u).0")});
  auto t3 = ho::tau_successors(c3);
  CHECK(t3.size() == 3);
}
