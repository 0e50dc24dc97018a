#include "lamflag/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lamflag {

TermNPtr bvar(std::string x) {
  auto t = std::make_shared<TermN>();
  t->k = TermN::K::BVar;
  t->ident = std::move(x);
  return t;
}
TermNPtr fvar(unsigned n) {
  auto t = std::make_shared<TermN>();
  t->k = TermN::K::FVar;
  t->index = n;
  return t;
}
TermNPtr lam(std::string x, TermNPtr body) {
  auto t = std::make_shared<TermN>();
  t->k = TermN::K::Lam;
  t->ident = std::move(x);
  t->a = std::move(body);
  return t;
}
TermNPtr app(TermNPtr fun, TermNPtr arg) {
  auto t = std::make_shared<TermN>();
  t->k = TermN::K::App;
  t->a = std::move(fun);
  t->b = std::move(arg);
  return t;
}
TermNPtr mu(std::string binder, NameRef name, TermNPtr body) {
  auto t = std::make_shared<TermN>();
  t->k = TermN::K::Mu;
  t->ident = std::move(binder);
  t->name = std::move(name);
  t->a = std::move(body);
  return t;
}

bool equal(const TermNPtr& a, const TermNPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->k != b->k) return false;
  switch (a->k) {
    case TermN::K::BVar: return a->ident == b->ident;
    case TermN::K::FVar: return a->index == b->index;
    case TermN::K::Lam: return a->ident == b->ident && equal(a->a, b->a);
    case TermN::K::App: return equal(a->a, b->a) && equal(a->b, b->b);
    case TermN::K::Mu:
      return a->ident == b->ident && a->name == b->name && equal(a->a, b->a);
  }
  return false;
}

TermDPtr didx(unsigned n) {
  auto t = std::make_shared<TermD>();
  t->k = TermD::K::Idx;
  t->index = n;
  return t;
}
TermDPtr dfvar(unsigned n) {
  auto t = std::make_shared<TermD>();
  t->k = TermD::K::FVar;
  t->index = n;
  return t;
}
TermDPtr dlam(TermDPtr body) {
  auto t = std::make_shared<TermD>();
  t->k = TermD::K::Lam;
  t->a = std::move(body);
  return t;
}
TermDPtr dapp(TermDPtr fun, TermDPtr arg) {
  auto t = std::make_shared<TermD>();
  t->k = TermD::K::App;
  t->a = std::move(fun);
  t->b = std::move(arg);
  return t;
}
TermDPtr dmu(NameD name, TermDPtr body) {
  auto t = std::make_shared<TermD>();
  t->k = TermD::K::Mu;
  t->name = name;
  t->a = std::move(body);
  return t;
}

bool equal(const TermDPtr& a, const TermDPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->k != b->k) return false;
  switch (a->k) {
    case TermD::K::Idx:
    case TermD::K::FVar: return a->index == b->index;
    case TermD::K::Lam: return equal(a->a, b->a);
    case TermD::K::App: return equal(a->a, b->a) && equal(a->b, b->b);
    case TermD::K::Mu: return a->name == b->name && equal(a->a, b->a);
  }
  return false;
}

bool dialect_is_named(Dialect d) { return d == Dialect::NamedCbn || d == Dialect::NamedMu; }
bool dialect_has_mu(Dialect d) { return d == Dialect::NamedMu || d == Dialect::DbMu; }

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;

  explicit Lexer(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) i++;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      i++;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "' " + what, i);
  }
  bool at_ident() {
    skip_ws();
    return i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]));
  }
  bool at_nat() {
    skip_ws();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  std::string ident() {
    skip_ws();
    size_t start = i;
    if (!at_ident()) throw ParseError("expected identifier", i);
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      i++;
    return s.substr(start, i - start);
  }
  unsigned nat() {
    skip_ws();
    if (!at_nat()) throw ParseError("expected natural number", i);
    unsigned long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) throw ParseError("number too large", i);
      i++;
    }
    return static_cast<unsigned>(v);
  }
};

// Named dialect grammar.
struct NamedParser {
  Lexer lx;
  Dialect d;

  NamedParser(const std::string& text, Dialect dd) : lx(text), d(dd) {}

  TermNPtr parse() {
    TermNPtr t = term();
    if (!lx.eof()) throw ParseError("trailing input", lx.i);
    return t;
  }

  NameRef nameref() {
    if (lx.eat('\'')) return NameRef::free(lx.nat());
    return NameRef::bound(lx.ident());
  }

  TermNPtr term() {
    if (lx.peek() == '\\') {
      lx.eat('\\');
      std::vector<std::string> binders;
      while (lx.at_ident()) binders.push_back(lx.ident());
      if (binders.empty()) throw ParseError("lambda needs at least one binder", lx.i);
      lx.expect('.', "after lambda binders");
      TermNPtr body = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = lam(*it, body);
      return body;
    }
    return apps();
  }

  TermNPtr apps() {
    TermNPtr t = atom();
    for (;;) {
      char c = lx.peek();
      if (c == '(' || c == '\'' || lx.at_ident() || lx.at_nat() || c == '\\') {
        if (c == '\\') {
          // lambda as argument must be parenthesized; treat as end of apps
          break;
        }
        t = app(t, atom());
      } else {
        break;
      }
    }
    return t;
  }

  TermNPtr atom() {
    if (lx.eat('(')) {
      TermNPtr t = term();
      lx.expect(')', "to close parenthesis");
      return t;
    }
    if (lx.at_nat()) return fvar(lx.nat());
    if (lx.at_ident()) {
      size_t at = lx.i;
      std::string id = lx.ident();
      if (id == "mu") {
        if (!dialect_has_mu(d))
          throw ParseError("'mu' not allowed in this dialect", at);
        std::string binder = lx.ident();
        lx.expect('.', "after mu binder");
        lx.expect('[', "to open mu name");
        NameRef nr = nameref();
        lx.expect(']', "to close mu name");
        return mu(binder, nr, term());
      }
      return bvar(id);
    }
    throw ParseError("expected term", lx.i);
  }
};

// De Bruijn dialect grammar.
struct DbParser {
  Lexer lx;
  Dialect d;

  DbParser(const std::string& text, Dialect dd) : lx(text), d(dd) {}

  TermDPtr parse() {
    TermDPtr t = term();
    if (!lx.eof()) throw ParseError("trailing input", lx.i);
    return t;
  }

  NameD nameref() {
    if (lx.eat('\'')) return NameD::free(lx.nat());
    return NameD::bound(lx.nat());
  }

  TermDPtr term() {
    if (lx.peek() == '\\') {
      lx.eat('\\');
      return dlam(term());
    }
    return apps();
  }

  TermDPtr apps() {
    TermDPtr t = atom();
    for (;;) {
      char c = lx.peek();
      if (c == '(' || lx.at_nat() || lx.at_ident()) {
        t = dapp(t, atom());
      } else {
        break;
      }
    }
    return t;
  }

  TermDPtr atom() {
    if (lx.eat('(')) {
      TermDPtr t = term();
      lx.expect(')', "to close parenthesis");
      return t;
    }
    if (lx.at_nat()) return didx(lx.nat());
    if (lx.at_ident()) {
      size_t at = lx.i;
      std::string id = lx.ident();
      if (id == "mu") {
        if (!dialect_has_mu(d))
          throw ParseError("'mu' not allowed in this dialect", at);
        lx.expect('.', "after mu");
        lx.expect('[', "to open mu name");
        NameD nr = nameref();
        lx.expect(']', "to close mu name");
        return dmu(nr, term());
      }
      // free term variables are written fN in the de Bruijn dialects
      if (id.size() > 1 && id[0] == 'f' &&
          std::all_of(id.begin() + 1, id.end(),
                      [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        return dfvar(static_cast<unsigned>(std::stoul(id.substr(1))));
      throw ParseError("unexpected identifier '" + id + "' in de Bruijn dialect", at);
    }
    throw ParseError("expected term", lx.i);
  }
};

} // namespace

TermNPtr parse_named(const std::string& text, Dialect d) {
  if (!dialect_is_named(d)) throw ParseError("named dialect expected", 0);
  return NamedParser(text, d).parse();
}

TermDPtr parse_db(const std::string& text, Dialect d) {
  if (dialect_is_named(d)) throw ParseError("de Bruijn dialect expected", 0);
  return DbParser(text, d).parse();
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

void print_n(const TermNPtr& t, std::ostringstream& out, bool fun_pos, bool arg_pos);

void print_n_atom(const TermNPtr& t, std::ostringstream& out, bool parens) {
  if (parens) out << '(';
  print_n(t, out, false, false);
  if (parens) out << ')';
}

void print_n(const TermNPtr& t, std::ostringstream& out, bool fun_pos, bool arg_pos) {
  switch (t->k) {
    case TermN::K::BVar: out << t->ident; return;
    case TermN::K::FVar: out << t->index; return;
    case TermN::K::Lam: {
      if (fun_pos || arg_pos) {
        print_n_atom(t, out, true);
        return;
      }
      out << '\\';
      const TermN* cur = t.get();
      while (true) {
        out << cur->ident;
        if (cur->a->k == TermN::K::Lam) {
          out << ' ';
          cur = cur->a.get();
        } else {
          break;
        }
      }
      out << ". ";
      print_n(cur->a, out, false, false);
      return;
    }
    case TermN::K::App: {
      if (arg_pos) {
        print_n_atom(t, out, true);
        return;
      }
      print_n(t->a, out, true, false);
      out << ' ';
      print_n(t->b, out, false, true);
      return;
    }
    case TermN::K::Mu: {
      if (fun_pos || arg_pos) {
        print_n_atom(t, out, true);
        return;
      }
      out << "mu " << t->ident << ".[";
      if (t->name.is_bound)
        out << t->name.ident;
      else
        out << '\'' << t->name.index;
      out << "] ";
      print_n(t->a, out, false, false);
      return;
    }
  }
}

void print_d(const TermDPtr& t, std::ostringstream& out, bool fun_pos, bool arg_pos) {
  auto atom = [&](const TermDPtr& u, bool parens) {
    if (parens) out << '(';
    print_d(u, out, false, false);
    if (parens) out << ')';
  };
  switch (t->k) {
    case TermD::K::Idx: out << t->index; return;
    case TermD::K::FVar: out << 'f' << t->index; return;
    case TermD::K::Lam:
      if (fun_pos || arg_pos) {
        atom(t, true);
        return;
      }
      out << "\\ ";
      print_d(t->a, out, false, false);
      return;
    case TermD::K::App:
      if (arg_pos) {
        atom(t, true);
        return;
      }
      print_d(t->a, out, true, false);
      out << ' ';
      print_d(t->b, out, false, true);
      return;
    case TermD::K::Mu:
      if (fun_pos || arg_pos) {
        atom(t, true);
        return;
      }
      out << "mu.[";
      if (t->name.is_bound)
        out << t->name.index;
      else
        out << '\'' << t->name.index;
      out << "] ";
      print_d(t->a, out, false, false);
      return;
  }
}

} // namespace

std::string print_term(const TermNPtr& t) {
  std::ostringstream out;
  print_n(t, out, false, false);
  return out.str();
}

std::string print_term(const TermDPtr& t) {
  std::ostringstream out;
  print_d(t, out, false, false);
  return out.str();
}

// ---------------------------------------------------------------------------
// Well-formedness, stats
// ---------------------------------------------------------------------------

namespace {

bool wf(const TermN* t, std::vector<const std::string*>& vars,
        std::vector<const std::string*>& names) {
  switch (t->k) {
    case TermN::K::BVar:
      for (auto* v : vars)
        if (*v == t->ident) return true;
      return false;
    case TermN::K::FVar: return true;
    case TermN::K::Lam: {
      vars.push_back(&t->ident);
      bool ok = wf(t->a.get(), vars, names);
      vars.pop_back();
      return ok;
    }
    case TermN::K::App:
      return wf(t->a.get(), vars, names) && wf(t->b.get(), vars, names);
    case TermN::K::Mu: {
      names.push_back(&t->ident);
      bool ok = true;
      if (t->name.is_bound) {
        ok = false;
        for (auto* n : names)
          if (*n == t->name.ident) ok = true;
      }
      ok = ok && wf(t->a.get(), vars, names);
      names.pop_back();
      return ok;
    }
  }
  return false;
}

void stats_n(const TermN* t, TermStats& st, bool& wf_bound) {
  switch (t->k) {
    case TermN::K::BVar: return;
    case TermN::K::FVar:
      st.free_vars.insert(t->index);
      return;
    case TermN::K::Lam:
      stats_n(t->a.get(), st, wf_bound);
      return;
    case TermN::K::App:
      stats_n(t->a.get(), st, wf_bound);
      stats_n(t->b.get(), st, wf_bound);
      return;
    case TermN::K::Mu:
      if (!t->name.is_bound) st.free_names.insert(t->name.index);
      stats_n(t->a.get(), st, wf_bound);
      return;
  }
}

void stats_d(const TermD* t, TermStats& st, unsigned lam_depth, unsigned mu_depth) {
  switch (t->k) {
    case TermD::K::Idx:
      if (t->index >= lam_depth)
        st.needed_lams = std::max(st.needed_lams, t->index - lam_depth + 1);
      return;
    case TermD::K::FVar:
      st.free_vars.insert(t->index);
      return;
    case TermD::K::Lam:
      stats_d(t->a.get(), st, lam_depth + 1, mu_depth);
      return;
    case TermD::K::App:
      stats_d(t->a.get(), st, lam_depth, mu_depth);
      stats_d(t->b.get(), st, lam_depth, mu_depth);
      return;
    case TermD::K::Mu:
      if (t->name.is_bound) {
        if (t->name.index >= mu_depth + 1)
          st.needed_mus = std::max(st.needed_mus, t->name.index - mu_depth);
      } else {
        st.free_names.insert(t->name.index);
      }
      stats_d(t->a.get(), st, lam_depth, mu_depth + 1);
      return;
  }
}

} // namespace

bool well_formed(const TermNPtr& t) {
  std::vector<const std::string*> vars, names;
  return wf(t.get(), vars, names);
}

TermStats term_stats(const TermNPtr& t) {
  TermStats st;
  bool dummy = true;
  stats_n(t.get(), st, dummy);
  if (!st.free_vars.empty()) st.max_free_var = *st.free_vars.rbegin();
  if (!st.free_names.empty()) st.max_free_name = *st.free_names.rbegin();
  st.is_closed = st.free_vars.empty() && st.free_names.empty();
  return st;
}

TermStats term_stats(const TermDPtr& t) {
  TermStats st;
  stats_d(t.get(), st, 0, 0);
  if (!st.free_vars.empty()) st.max_free_var = *st.free_vars.rbegin();
  if (!st.free_names.empty()) st.max_free_name = *st.free_names.rbegin();
  st.is_closed = st.free_vars.empty() && st.free_names.empty() &&
                 st.needed_lams == 0 && st.needed_mus == 0;
  return st;
}

unsigned term_size(const TermNPtr& t) {
  switch (t->k) {
    case TermN::K::BVar:
    case TermN::K::FVar: return 1;
    case TermN::K::Lam:
    case TermN::K::Mu: return 1 + term_size(t->a);
    case TermN::K::App: return 1 + term_size(t->a) + term_size(t->b);
  }
  return 1;
}

unsigned term_size(const TermDPtr& t) {
  switch (t->k) {
    case TermD::K::Idx:
    case TermD::K::FVar: return 1;
    case TermD::K::Lam:
    case TermD::K::Mu: return 1 + term_size(t->a);
    case TermD::K::App: return 1 + term_size(t->a) + term_size(t->b);
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

void collect_idents(const TermN* t, std::set<std::string>& out) {
  switch (t->k) {
    case TermN::K::BVar: out.insert(t->ident); return;
    case TermN::K::FVar: return;
    case TermN::K::Lam:
      out.insert(t->ident);
      collect_idents(t->a.get(), out);
      return;
    case TermN::K::App:
      collect_idents(t->a.get(), out);
      collect_idents(t->b.get(), out);
      return;
    case TermN::K::Mu:
      out.insert(t->ident);
      if (t->name.is_bound) out.insert(t->name.ident);
      collect_idents(t->a.get(), out);
      return;
  }
}

// Deterministic fresh-identifier supply: base name plus the smallest unused
// numeric suffix.
struct FreshSupply {
  std::set<std::string> used;
  std::string fresh(const std::string& base) {
    for (unsigned k = 1;; k++) {
      std::string cand = base + std::to_string(k);
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
  }
};

// Rename bound variable occurrences of `from` (as a term variable) to `to`;
// stops at shadowing binders.
TermNPtr rename_var(const TermNPtr& t, const std::string& from, const std::string& to) {
  switch (t->k) {
    case TermN::K::BVar: return t->ident == from ? bvar(to) : t;
    case TermN::K::FVar: return t;
    case TermN::K::Lam:
      if (t->ident == from) return t;
      return lam(t->ident, rename_var(t->a, from, to));
    case TermN::K::App:
      return app(rename_var(t->a, from, to), rename_var(t->b, from, to));
    case TermN::K::Mu:
      return mu(t->ident, t->name, rename_var(t->a, from, to));
  }
  return t;
}

TermNPtr rename_name(const TermNPtr& t, const std::string& from, const std::string& to) {
  switch (t->k) {
    case TermN::K::BVar:
    case TermN::K::FVar: return t;
    case TermN::K::Lam: return lam(t->ident, rename_name(t->a, from, to));
    case TermN::K::App:
      return app(rename_name(t->a, from, to), rename_name(t->b, from, to));
    case TermN::K::Mu: {
      if (t->ident == from) return t;
      NameRef n = t->name;
      if (n.is_bound && n.ident == from) n = NameRef::bound(to);
      return mu(t->ident, n, rename_name(t->a, from, to));
    }
  }
  return t;
}

TermNPtr subst_rec(const TermNPtr& t, const std::string& x, const TermNPtr& s,
                   const std::set<std::string>& avoid, FreshSupply& supply) {
  switch (t->k) {
    case TermN::K::BVar: return t->ident == x ? s : t;
    case TermN::K::FVar: return t;
    case TermN::K::Lam: {
      if (t->ident == x) return t; // shadowed
      if (avoid.count(t->ident)) {
        std::string y = supply.fresh(t->ident);
        return lam(y, subst_rec(rename_var(t->a, t->ident, y), x, s, avoid, supply));
      }
      return lam(t->ident, subst_rec(t->a, x, s, avoid, supply));
    }
    case TermN::K::App:
      return app(subst_rec(t->a, x, s, avoid, supply),
                 subst_rec(t->b, x, s, avoid, supply));
    case TermN::K::Mu: {
      if (avoid.count(t->ident)) {
        std::string y = supply.fresh(t->ident);
        NameRef nn = t->name;
        if (nn.is_bound && nn.ident == t->ident) nn = NameRef::bound(y);
        return mu(y, nn,
                  subst_rec(rename_name(t->a, t->ident, y), x, s, avoid, supply));
      }
      return mu(t->ident, t->name, subst_rec(t->a, x, s, avoid, supply));
    }
  }
  return t;
}

} // namespace

TermNPtr subst(const TermNPtr& t, const std::string& x, const TermNPtr& s) {
  // Identifiers bound inside s can never be free in a well-formed s, so the
  // avoid set below is usually empty; keeping it general costs little.
  std::set<std::string> in_t, in_s;
  collect_idents(t.get(), in_t);
  collect_idents(s.get(), in_s);
  FreshSupply supply;
  supply.used = in_t;
  supply.used.insert(in_s.begin(), in_s.end());
  // Only bound-in-s idents can be captured by binders in t; well-formed terms
  // have no free idents, so the avoid set is the idents appearing in s.
  return subst_rec(t, x, s, in_s, supply);
}

bool operator==(const StackN& a, const StackN& b) {
  if (!(a.end == b.end) || a.items.size() != b.items.size()) return false;
  for (size_t i = 0; i < a.items.size(); i++)
    if (!equal(a.items[i], b.items[i])) return false;
  return true;
}

NameSubstResult name_subst(const NameRef& beta, const std::string& alpha, const StackN& pi) {
  if (beta.is_bound && beta.ident == alpha) return NameSubstResult{true, pi, {}};
  return NameSubstResult{false, {}, beta};
}

std::pair<NameRef, TermNPtr> plug(const StackN& pi, const TermNPtr& t) {
  // plug((s . pi), t) = plug(pi, t s)
  TermNPtr cur = t;
  for (const auto& s : pi.items) cur = app(cur, s);
  return {pi.end, cur};
}

TermNPtr struct_subst(const TermNPtr& t, const std::string& alpha, const StackN& pi) {
  switch (t->k) {
    case TermN::K::BVar:
    case TermN::K::FVar: return t;
    case TermN::K::Lam: return lam(t->ident, struct_subst(t->a, alpha, pi));
    case TermN::K::App:
      return app(struct_subst(t->a, alpha, pi), struct_subst(t->b, alpha, pi));
    case TermN::K::Mu: {
      TermNPtr u = t;
      if (u->ident == alpha) return u; // shadowed binder: alpha cannot occur free
      // rename the inner binder if it collides with idents in pi
      std::set<std::string> in_pi;
      for (const auto& s : pi.items) collect_idents(s.get(), in_pi);
      if (pi.end.is_bound) in_pi.insert(pi.end.ident);
      if (in_pi.count(u->ident)) {
        std::set<std::string> used = in_pi;
        collect_idents(u.get(), used);
        used.insert(alpha);
        FreshSupply supply;
        supply.used = used;
        std::string y = supply.fresh(u->ident);
        NameRef nn = u->name;
        if (nn.is_bound && nn.ident == u->ident) nn = NameRef::bound(y);
        u = mu(y, nn, rename_name(u->a, u->ident, y));
      }
      TermNPtr body = struct_subst(u->a, alpha, pi);
      NameSubstResult ns = name_subst(u->name, alpha, pi);
      if (!ns.replaced) return mu(u->ident, ns.name, body);
      auto [endname, plugged] = plug(ns.stack, body);
      return mu(u->ident, endname, plugged);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

namespace {

TermDPtr to_db_rec(const TermN* t, std::vector<const std::string*>& vars,
                   std::vector<const std::string*>& names) {
  switch (t->k) {
    case TermN::K::BVar: {
      for (size_t i = vars.size(); i-- > 0;)
        if (*vars[i] == t->ident) return didx(static_cast<unsigned>(vars.size() - 1 - i));
      throw std::runtime_error("unbound variable '" + t->ident + "'");
    }
    case TermN::K::FVar: return dfvar(t->index);
    case TermN::K::Lam: {
      vars.push_back(&t->ident);
      TermDPtr body = to_db_rec(t->a.get(), vars, names);
      vars.pop_back();
      return dlam(body);
    }
    case TermN::K::App:
      return dapp(to_db_rec(t->a.get(), vars, names), to_db_rec(t->b.get(), vars, names));
    case TermN::K::Mu: {
      names.push_back(&t->ident);
      NameD nd;
      if (t->name.is_bound) {
        bool found = false;
        for (size_t i = names.size(); i-- > 0;)
          if (*names[i] == t->name.ident) {
            nd = NameD::bound(static_cast<unsigned>(names.size() - 1 - i));
            found = true;
            break;
          }
        if (!found) throw std::runtime_error("unbound name '" + t->name.ident + "'");
      } else {
        nd = NameD::free(t->name.index);
      }
      TermDPtr body = to_db_rec(t->a.get(), vars, names);
      names.pop_back();
      return dmu(nd, body);
    }
  }
  throw std::runtime_error("unreachable");
}

std::string var_name(unsigned depth) { return "x" + std::to_string(depth); }
std::string name_name(unsigned depth) { return "a" + std::to_string(depth); }

TermNPtr from_db_rec(const TermD* t, unsigned vdepth, unsigned ndepth, unsigned base) {
  switch (t->k) {
    case TermD::K::Idx:
      if (t->index >= vdepth) throw std::runtime_error("dangling de Bruijn index");
      return bvar(var_name(base + vdepth - 1 - t->index));
    case TermD::K::FVar: return fvar(t->index);
    case TermD::K::Lam:
      return lam(var_name(base + vdepth), from_db_rec(t->a.get(), vdepth + 1, ndepth, base));
    case TermD::K::App:
      return app(from_db_rec(t->a.get(), vdepth, ndepth, base),
                 from_db_rec(t->b.get(), vdepth, ndepth, base));
    case TermD::K::Mu: {
      NameRef nr;
      if (t->name.is_bound) {
        if (t->name.index >= ndepth + 1) throw std::runtime_error("dangling name index");
        nr = NameRef::bound(name_name(base + ndepth - t->name.index));
      } else {
        nr = NameRef::free(t->name.index);
      }
      return mu(name_name(base + ndepth), nr,
                from_db_rec(t->a.get(), vdepth, ndepth + 1, base));
    }
  }
  throw std::runtime_error("unreachable");
}

} // namespace

TermDPtr to_de_bruijn(const TermNPtr& t) {
  std::vector<const std::string*> vars, names;
  return to_db_rec(t.get(), vars, names);
}

TermNPtr from_de_bruijn(const TermDPtr& t, unsigned fresh_base) {
  return from_db_rec(t.get(), 0, 0, fresh_base);
}

std::string canonical_key(const TermNPtr& t) { return print_term(to_de_bruijn(t)); }
std::string canonical_key(const TermDPtr& t) { return print_term(t); }

} // namespace lamflag
