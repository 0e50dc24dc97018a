#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamflag {

// ---------------------------------------------------------------------------
// Named terms: bound variables are identifiers, free variables are naturals.
// Mu nodes only appear in the lambda-mu dialects.
// ---------------------------------------------------------------------------

struct TermN;
using TermNPtr = std::shared_ptr<const TermN>;

// A name position: either a bound identifier or a free name index ('n).
struct NameRef {
  bool is_bound = false;
  std::string ident;   // when bound
  unsigned index = 0;  // when free

  static NameRef bound(std::string id) { return NameRef{true, std::move(id), 0}; }
  static NameRef free(unsigned n) { return NameRef{false, {}, n}; }
  friend bool operator==(const NameRef& a, const NameRef& b) {
    return a.is_bound == b.is_bound && a.ident == b.ident && a.index == b.index;
  }
};

struct TermN {
  enum class K { BVar, FVar, Lam, App, Mu };
  K k;
  std::string ident;  // BVar name, Lam binder, Mu binder
  unsigned index = 0; // FVar payload
  NameRef name;       // Mu: the name in [name]
  TermNPtr a, b;      // Lam/Mu body in a; App: fun a, arg b
};

TermNPtr bvar(std::string x);
TermNPtr fvar(unsigned n);
TermNPtr lam(std::string x, TermNPtr body);
TermNPtr app(TermNPtr fun, TermNPtr arg);
TermNPtr mu(std::string binder, NameRef name, TermNPtr body);

bool equal(const TermNPtr& a, const TermNPtr& b);

// ---------------------------------------------------------------------------
// De Bruijn terms. FVar keeps free variables numeric (they are observable
// labels, not indices); NameD mirrors the split for mu-names.
// ---------------------------------------------------------------------------

struct TermD;
using TermDPtr = std::shared_ptr<const TermD>;

struct NameD {
  bool is_bound = false;
  unsigned index = 0;
  static NameD bound(unsigned i) { return NameD{true, i}; }
  static NameD free(unsigned i) { return NameD{false, i}; }
  friend bool operator==(const NameD& a, const NameD& b) {
    return a.is_bound == b.is_bound && a.index == b.index;
  }
};

struct TermD {
  enum class K { Idx, FVar, Lam, App, Mu };
  K k;
  unsigned index = 0; // Idx or FVar payload
  NameD name;         // Mu
  TermDPtr a, b;
};

TermDPtr didx(unsigned n);
TermDPtr dfvar(unsigned n);
TermDPtr dlam(TermDPtr body);
TermDPtr dapp(TermDPtr fun, TermDPtr arg);
TermDPtr dmu(NameD name, TermDPtr body);

bool equal(const TermDPtr& a, const TermDPtr& b);

// ---------------------------------------------------------------------------
// Dialects and parsing
// ---------------------------------------------------------------------------

enum class Dialect { NamedCbn, NamedMu, Db, DbMu };

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t at)
      : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

bool dialect_is_named(Dialect d);
bool dialect_has_mu(Dialect d);

TermNPtr parse_named(const std::string& text, Dialect d);
TermDPtr parse_db(const std::string& text, Dialect d);

std::string print_term(const TermNPtr& t);
std::string print_term(const TermDPtr& t);

// ---------------------------------------------------------------------------
// Well-formedness and statistics
// ---------------------------------------------------------------------------

// Every BVar/BoundName occurrence lies under a binder with that identifier.
bool well_formed(const TermNPtr& t);

struct TermStats {
  std::set<unsigned> free_vars;
  std::set<unsigned> free_names;
  bool is_closed = false;
  std::optional<unsigned> max_free_var;
  std::optional<unsigned> max_free_name;
  // De Bruijn only: minimal number of enclosing Lam / Mu binders needed to
  // bind every dangling index. 0 for named terms.
  unsigned needed_lams = 0;
  unsigned needed_mus = 0;
};

TermStats term_stats(const TermNPtr& t);
TermStats term_stats(const TermDPtr& t);

unsigned term_size(const TermNPtr& t);
unsigned term_size(const TermDPtr& t);

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

// Capture-avoiding substitution of BVar x by s in t. Binder renaming uses a
// deterministic per-call fresh supply, so outputs are reproducible.
TermNPtr subst(const TermNPtr& t, const std::string& x, const TermNPtr& s);

// A call-by-name lambda-mu stack: terms (top first) ended by a name.
struct StackN {
  std::vector<TermNPtr> items; // items[0] is the top
  NameRef end;
  friend bool operator==(const StackN& a, const StackN& b);
};

// Structural substitution of bound name alpha by stack pi, with the two
// auxiliaries: name_subst rewrites a name position, plug rebuilds the
// applications a stack represents around a term.
TermNPtr struct_subst(const TermNPtr& t, const std::string& alpha, const StackN& pi);
// Result of substituting into a name position: either the stack itself
// (when the name matches) or the untouched name.
struct NameSubstResult {
  bool replaced;
  StackN stack;  // when replaced
  NameRef name;  // otherwise
};
NameSubstResult name_subst(const NameRef& beta, const std::string& alpha, const StackN& pi);
std::pair<NameRef, TermNPtr> plug(const StackN& pi, const TermNPtr& t);

// ---------------------------------------------------------------------------
// Conversions: canonicalization to de Bruijn and back
// ---------------------------------------------------------------------------

TermDPtr to_de_bruijn(const TermNPtr& t);
TermNPtr from_de_bruijn(const TermDPtr& t, unsigned fresh_base = 0);

// Canonical printed form (named terms go through to_de_bruijn), used as a
// memoization key so configuration equality is alpha-insensitive.
std::string canonical_key(const TermNPtr& t);
std::string canonical_key(const TermDPtr& t);

} // namespace lamflag
