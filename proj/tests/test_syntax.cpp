#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "lamflag/machine.hpp"

using namespace lamflag;

TEST_CASE("parse named terms") {
  TermNPtr id = parse_named("\\x. x", Dialect::NamedCbn);
  REQUIRE(id->k == TermN::K::Lam);
  CHECK(id->ident == "x");
  CHECK(id->a->k == TermN::K::BVar);

  TermNPtr t = parse_named("(\\x. x) 2", Dialect::NamedCbn);
  CHECK(t->k == TermN::K::App);
  CHECK(t->b->k == TermN::K::FVar);
  CHECK(t->b->index == 2);

  TermNPtr m = parse_named("mu a.['0] 1", Dialect::NamedMu);
  REQUIRE(m->k == TermN::K::Mu);
  CHECK(m->ident == "a");
  CHECK(!m->name.is_bound);
  CHECK(m->name.index == 0);
  CHECK(m->a->k == TermN::K::FVar);
  CHECK(m->a->index == 1);

  CHECK(equal(parse_named("\\x y. x y", Dialect::NamedCbn),
              lam("x", lam("y", app(bvar("x"), bvar("y"))))));
}

TEST_CASE("parse de Bruijn terms") {
  TermDPtr t = parse_db("\\ 0", Dialect::Db);
  REQUIRE(t->k == TermD::K::Lam);
  CHECK(t->a->k == TermD::K::Idx);
  CHECK(t->a->index == 0);

  TermDPtr u = parse_db("mu.['0] \\ 0", Dialect::DbMu);
  REQUIRE(u->k == TermD::K::Mu);
  CHECK(!u->name.is_bound);

  CHECK(equal(parse_db("\\ \\ 1 0", Dialect::Db), dlam(dlam(dapp(didx(1), didx(0))))));
}

TEST_CASE("parse errors carry positions and dialect gates") {
  CHECK_THROWS_AS(parse_named("mu a.['0] 1", Dialect::NamedCbn), ParseError);
  CHECK_THROWS_AS(parse_named("(\\x. x", Dialect::NamedCbn), ParseError);
  CHECK_THROWS_AS(parse_db("mu.[0] 0", Dialect::Db), ParseError);
  CHECK_THROWS_AS(parse_named("", Dialect::NamedCbn), ParseError);
}

TEST_CASE("print inverts parse") {
  CHECK(print_term(dlam(didx(0))) == "\\ 0");
  CHECK(print_term(app(lam("x", bvar("x")), fvar(2))) == "(\\x. x) 2");
  CHECK(print_term(mu("a", NameRef::free(0), fvar(1))) == "mu a.['0] 1");
}

TEST_CASE("parse-print round trip on random terms") {
  testgen::Gen gen(42);
  for (int i = 0; i < 300; i++) {
    TermNPtr t = gen.open_named(1 + gen.pick(14), 3);
    CHECK(equal(parse_named(print_term(t), Dialect::NamedCbn), t));
  }
  for (int i = 0; i < 300; i++) {
    TermNPtr t = gen.mu_term(1 + gen.pick(12), 2);
    CHECK(equal(parse_named(print_term(t), Dialect::NamedMu), t));
    TermDPtr d = to_de_bruijn(t);
    CHECK(equal(parse_db(print_term(d), Dialect::DbMu), d));
  }
}

TEST_CASE("well-formedness") {
  CHECK(well_formed(lam("x", bvar("x"))));
  CHECK(!well_formed(bvar("x")));
  CHECK(!well_formed(mu("a", NameRef::bound("b"), fvar(0))));
  CHECK(well_formed(mu("a", NameRef::bound("a"), fvar(0))));
}

TEST_CASE("substitution basics") {
  // [x := \y.y] x
  CHECK(equal(subst(bvar("x"), "x", lam("y", bvar("y"))), lam("y", bvar("y"))));
  // free variables cannot be captured
  TermNPtr t = lam("y", app(bvar("x"), bvar("y")));
  CHECK(equal(subst(t, "x", fvar(3)), lam("y", app(fvar(3), bvar("y")))));
  // shadowed binder stops substitution
  TermNPtr sh = lam("x", bvar("x"));
  CHECK(equal(subst(sh, "x", fvar(0)), sh));
}

TEST_CASE("substitution avoids capture across alpha-variants") {
  // two alpha-variants of the same abstraction must behave identically
  // under the machine after substitution
  TermNPtr body1 = lam("y", app(bvar("f"), bvar("y")));
  TermNPtr body2 = lam("z", app(bvar("f"), bvar("z")));
  TermNPtr arg = lam("y", app(bvar("y"), fvar(7)));
  TermNPtr r1 = subst(body1, "f", arg);
  TermNPtr r2 = subst(body2, "f", arg);
  CHECK(canonical_key(r1) == canonical_key(r2));
  auto run = [](TermNPtr t) {
    auto tr =
        run_machine(MachineKind::Kam, KamConfig{app(t, lam("w", bvar("w"))), {}}, 100);
    return tr[0].steps.back().config;
  };
  CHECK(run(r1) == run(r2));
}

TEST_CASE("substitution keeps free variables of the argument") {
  testgen::Gen gen(7);
  for (int i = 0; i < 200; i++) {
    TermNPtr wrapped = lam("h", gen.open_named(8, 2, {"h"}));
    TermNPtr body = wrapped->a;
    TermNPtr s = gen.open_named(6, 4);
    TermNPtr res = subst(body, "h", s);
    auto st = term_stats(res);
    auto expect = term_stats(body).free_vars;
    std::function<bool(const TermNPtr&)> has_h = [&](const TermNPtr& u) {
      switch (u->k) {
        case TermN::K::BVar: return u->ident == "h";
        case TermN::K::FVar: return false;
        case TermN::K::Lam: return u->ident != "h" && has_h(u->a);
        case TermN::K::App: return has_h(u->a) || has_h(u->b);
        case TermN::K::Mu: return has_h(u->a);
      }
      return false;
    };
    if (has_h(body))
      for (unsigned fv : term_stats(s).free_vars) expect.insert(fv);
    CHECK(st.free_vars == expect);
  }
}

TEST_CASE("structural substitution") {
  StackN pi{{fvar(1), fvar(2)}, NameRef::free(0)};
  // no occurrence: identity
  TermNPtr t = lam("x", bvar("x"));
  CHECK(equal(struct_subst(t, "a", pi), t));

  // plugging rebuilds applications: plug(t'' . '1, t') = ('1, t' t'')
  StackN one{{fvar(5)}, NameRef::free(1)};
  auto [nm, plugged] = plug(one, fvar(9));
  CHECK(!nm.is_bound);
  CHECK(nm.index == 1);
  CHECK(equal(plugged, app(fvar(9), fvar(5))));

  // name position: [a := pi] keeps other names
  NameSubstResult keep = name_subst(NameRef::bound("b"), "a", pi);
  CHECK(!keep.replaced);
  NameSubstResult repl = name_subst(NameRef::bound("a"), "a", pi);
  CHECK(repl.replaced);
  CHECK(repl.stack == pi);
}

TEST_CASE("structural substitution satisfies the defining equations") {
  testgen::Gen gen(11);
  for (int i = 0; i < 150; i++) {
    StackN pi{{gen.mu_term(4, 1), gen.mu_term(3, 1)}, NameRef::free(gen.pick(2))};
    TermNPtr t = gen.mu_term(5, 1);
    TermNPtr s = gen.mu_term(4, 1);
    // application case
    CHECK(equal(struct_subst(app(t, s), "q", pi),
                app(struct_subst(t, "q", pi), struct_subst(s, "q", pi))));
    // lambda case
    CHECK(equal(struct_subst(lam("v", t), "q", pi), lam("v", struct_subst(t, "q", pi))));
    // variable case
    CHECK(equal(struct_subst(fvar(3), "q", pi), fvar(3)));
    // mu case with a distinct binder and a matching name
    TermNPtr m = mu("r", NameRef::bound("q"), t);
    TermNPtr got = struct_subst(m, "q", pi);
    auto [end, body] = plug(pi, struct_subst(t, "q", pi));
    CHECK(equal(got, mu("r", end, body)));
  }
}

TEST_CASE("term stats") {
  auto st = term_stats(lam("x", bvar("x")));
  CHECK(st.is_closed);
  CHECK(st.free_vars.empty());

  auto st2 = term_stats(app(lam("y", app(fvar(1), bvar("y"))), fvar(0)));
  CHECK(st2.free_vars == std::set<unsigned>{0, 1});
  CHECK(*st2.max_free_var == 1);

  auto st3 = term_stats(mu("a", NameRef::bound("a"), fvar(0)));
  CHECK(st3.free_names.empty());
  auto st4 = term_stats(mu("a", NameRef::free(2), fvar(0)));
  CHECK(st4.free_names == std::set<unsigned>{2});
}

TEST_CASE("de Bruijn conversion") {
  CHECK(print_term(to_de_bruijn(lam("x", lam("y", app(bvar("x"), bvar("y")))))) ==
        "\\ \\ 1 0");
  CHECK(to_de_bruijn(fvar(3))->k == TermD::K::FVar);
  CHECK(to_de_bruijn(fvar(3))->index == 3);
}

TEST_CASE("de Bruijn conversion identifies alpha-equivalent terms") {
  testgen::Gen gen(23);
  for (int i = 0; i < 200; i++) {
    TermNPtr t = gen.open_named(12, 3);
    TermDPtr d = to_de_bruijn(t);
    TermNPtr back = from_de_bruijn(d, 0);
    CHECK(equal(to_de_bruijn(back), d));
  }
  TermNPtr a = parse_named("\\x. \\y. x (\\z. z y)", Dialect::NamedCbn);
  TermNPtr b = parse_named("\\u. \\w. u (\\x. x w)", Dialect::NamedCbn);
  CHECK(canonical_key(a) == canonical_key(b));
}

TEST_CASE("term sizes") {
  CHECK(term_size(parse_db("(\\ 0 0) (\\ 0 0)", Dialect::Db)) == 9);
  CHECK(term_size(parse_db("\\ 0", Dialect::Db)) == 2);
}
