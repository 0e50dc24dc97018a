#pragma once

#include <random>
#include <string>
#include <vector>

#include "lamflag/machine.hpp"

namespace lamflag::testgen {

// Deterministic random term generators for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); }

  // Closed named term with at most `size` nodes and binders drawn from a
  // fixed alphabet.
  TermNPtr closed_named(unsigned size, std::vector<std::string> scope = {}) {
    static const char* names[] = {"x", "y", "z", "w", "u"};
    if (size <= 1 || (scope.empty() && size <= 2)) {
      if (scope.empty()) {
        std::string b = names[pick(5)];
        return lam(b, bvar(b));
      }
      return bvar(scope[pick(static_cast<unsigned>(scope.size()))]);
    }
    switch (pick(3)) {
      case 0: {
        std::string b = names[pick(5)];
        auto inner = scope;
        inner.push_back(b);
        return lam(b, closed_named(size - 1, inner));
      }
      case 1: {
        unsigned ls = 1 + pick(size - 2);
        return app(closed_named(ls, scope), closed_named(size - 1 - ls, scope));
      }
      default:
        if (!scope.empty()) return bvar(scope[pick(static_cast<unsigned>(scope.size()))]);
        return closed_named(size - 1, scope);
    }
  }

  // Possibly-open named term: free variables < free_vars.
  TermNPtr open_named(unsigned size, unsigned free_vars,
                      std::vector<std::string> scope = {}) {
    static const char* names[] = {"x", "y", "z"};
    if (size <= 1) {
      if (!scope.empty() && pick(2) == 0)
        return bvar(scope[pick(static_cast<unsigned>(scope.size()))]);
      return fvar(pick(free_vars));
    }
    switch (pick(3)) {
      case 0: {
        std::string b = names[pick(3)];
        auto inner = scope;
        inner.push_back(b);
        return lam(b, open_named(size - 1, free_vars, inner));
      }
      case 1: {
        unsigned ls = 1 + pick(size - 1);
        if (ls >= size) ls = size - 1;
        return app(open_named(ls, free_vars, scope),
                   open_named(size - ls, free_vars, scope));
      }
      default:
        if (!scope.empty()) return bvar(scope[pick(static_cast<unsigned>(scope.size()))]);
        return fvar(pick(free_vars));
    }
  }

  // Closed named lambda-mu term (free names < free_names allowed when > 0).
  TermNPtr mu_term(unsigned size, unsigned free_names,
                   std::vector<std::string> vscope = {},
                   std::vector<std::string> nscope = {}) {
    static const char* vn[] = {"x", "y", "z"};
    static const char* nn[] = {"a", "b", "d"};
    if (size <= 1) {
      if (!vscope.empty())
        return bvar(vscope[pick(static_cast<unsigned>(vscope.size()))]);
      std::string b = vn[pick(3)];
      return lam(b, bvar(b));
    }
    switch (pick(4)) {
      case 0: {
        std::string b = vn[pick(3)];
        auto inner = vscope;
        inner.push_back(b);
        return lam(b, mu_term(size - 1, free_names, inner, nscope));
      }
      case 1: {
        unsigned ls = 1 + pick(size - 1);
        if (ls >= size) ls = size - 1;
        return app(mu_term(ls, free_names, vscope, nscope),
                   mu_term(size - ls, free_names, vscope, nscope));
      }
      case 2: {
        std::string b = nn[pick(3)];
        auto inner = nscope;
        inner.push_back(b);
        NameRef out;
        unsigned total = static_cast<unsigned>(inner.size()) + free_names;
        unsigned sel = pick(total);
        if (sel < inner.size())
          out = NameRef::bound(inner[sel]);
        else
          out = NameRef::free(sel - static_cast<unsigned>(inner.size()));
        return mu(b, out, mu_term(size - 1, free_names, vscope, inner));
      }
      default:
        if (!vscope.empty())
          return bvar(vscope[pick(static_cast<unsigned>(vscope.size()))]);
        return mu_term(size - 1, free_names, vscope, nscope);
    }
  }
};

} // namespace lamflag::testgen
