#include "lamflag/hocore.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace lamflag::ho {

namespace {

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

uint64_t str_hash(const std::string& s) {
  return std::hash<std::string>{}(s);
}

Proc make(Process p) {
  uint64_t h = static_cast<uint64_t>(p.k) * 0x100000001b3ull;
  switch (p.k) {
    case Process::K::Input:
      h = mix(h, str_hash(p.channel));
      h = mix(h, str_hash(p.binder));
      h = mix(h, p.payload->hash);
      break;
    case Process::K::Output:
      h = mix(h, str_hash(p.channel));
      h = mix(h, p.payload->hash);
      break;
    case Process::K::Var:
      h = mix(h, str_hash(p.binder));
      break;
    case Process::K::Par:
      for (const auto& q : p.parts) h = mix(h, q->hash);
      break;
  }
  p.hash = h;
  return std::make_shared<const Process>(std::move(p));
}

} // namespace

Proc nil() {
  static Proc n = make(Process{Process::K::Par, "", "", nullptr, {}, 0});
  return n;
}

Proc input(std::string channel, std::string binder, Proc body) {
  Process p{Process::K::Input, std::move(channel), std::move(binder), std::move(body), {}, 0};
  return make(std::move(p));
}

Proc output(std::string channel, Proc payload) {
  Process p{Process::K::Output, std::move(channel), "", std::move(payload), {}, 0};
  return make(std::move(p));
}

Proc pvar(std::string name) {
  Process p{Process::K::Var, "", std::move(name), nullptr, {}, 0};
  return make(std::move(p));
}

int compare(const Proc& a, const Proc& b) {
  if (a.get() == b.get()) return 0;
  if (a->k != b->k) return a->k < b->k ? -1 : 1;
  switch (a->k) {
    case Process::K::Input: {
      if (int c = a->channel.compare(b->channel)) return c < 0 ? -1 : 1;
      if (int c = a->binder.compare(b->binder)) return c < 0 ? -1 : 1;
      return compare(a->payload, b->payload);
    }
    case Process::K::Output: {
      if (int c = a->channel.compare(b->channel)) return c < 0 ? -1 : 1;
      return compare(a->payload, b->payload);
    }
    case Process::K::Var:
      if (int c = a->binder.compare(b->binder)) return c < 0 ? -1 : 1;
      return 0;
    case Process::K::Par: {
      if (a->parts.size() != b->parts.size())
        return a->parts.size() < b->parts.size() ? -1 : 1;
      for (size_t i = 0; i < a->parts.size(); i++)
        if (int c = compare(a->parts[i], b->parts[i])) return c;
      return 0;
    }
  }
  return 0;
}

bool equal(const Proc& a, const Proc& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

Proc par(std::vector<Proc> ps) {
  std::vector<Proc> flat;
  for (auto& p : ps) {
    if (p->k == Process::K::Par) {
      for (const auto& q : p->parts) flat.push_back(q);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return flat[0];
  std::sort(flat.begin(), flat.end(),
            [](const Proc& a, const Proc& b) { return compare(a, b) < 0; });
  Process p{Process::K::Par, "", "", nullptr, std::move(flat), 0};
  return make(std::move(p));
}

Proc par2(Proc a, Proc b) { return par({std::move(a), std::move(b)}); }

// ---------------------------------------------------------------------------
// Printing / parsing
// ---------------------------------------------------------------------------

namespace {

void print_rec(const Proc& p, std::ostringstream& out, bool in_par) {
  switch (p->k) {
    case Process::K::Input:
      out << p->channel << '(' << (p->binder.empty() ? "_" : p->binder) << ").";
      if (p->payload->k == Process::K::Par && !p->payload->parts.empty()) {
        out << '(';
        print_rec(p->payload, out, false);
        out << ')';
      } else {
        print_rec(p->payload, out, false);
      }
      return;
    case Process::K::Output:
      out << p->channel << '<';
      print_rec(p->payload, out, false);
      out << '>';
      return;
    case Process::K::Var:
      out << p->binder;
      return;
    case Process::K::Par:
      if (p->parts.empty()) {
        out << '0';
        return;
      }
      if (in_par) out << '(';
      for (size_t i = 0; i < p->parts.size(); i++) {
        if (i) out << " | ";
        print_rec(p->parts[i], out, true);
      }
      if (in_par) out << ')';
      return;
  }
}

struct PParser {
  const std::string& s;
  size_t i = 0;

  explicit PParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) i++;
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
  void expect(char c) {
    if (!eat(c)) throw std::runtime_error(std::string("hocore parse: expected '") + c +
                                          "' at offset " + std::to_string(i));
  }
  std::string ident() {
    skip_ws();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      i++;
    if (start == i)
      throw std::runtime_error("hocore parse: expected name at offset " + std::to_string(i));
    return s.substr(start, i - start);
  }

  Proc parse() {
    Proc p = par_expr();
    skip_ws();
    if (i < s.size()) throw std::runtime_error("hocore parse: trailing input");
    return p;
  }

  Proc par_expr() {
    std::vector<Proc> ps;
    ps.push_back(prefix());
    while (eat('|')) ps.push_back(prefix());
    return par(std::move(ps));
  }

  Proc prefix() {
    skip_ws();
    if (eat('(')) {
      Proc p = par_expr();
      expect(')');
      return p;
    }
    if (eat('0')) return nil();
    std::string id = ident();
    skip_ws();
    if (peek() == '(') {
      eat('(');
      std::string binder = ident();
      expect(')');
      expect('.');
      Proc body = prefix();
      if (binder == "_") binder.clear();
      return input(std::move(id), std::move(binder), std::move(body));
    }
    if (peek() == '<') {
      eat('<');
      Proc payload = par_expr();
      expect('>');
      return output(std::move(id), std::move(payload));
    }
    return pvar(std::move(id));
  }
};

} // namespace

std::string print(const Proc& p) {
  std::ostringstream out;
  print_rec(p, out, false);
  return out.str();
}

Proc parse(const std::string& text) { return PParser(text).parse(); }

// ---------------------------------------------------------------------------
// Channels, variables, substitution
// ---------------------------------------------------------------------------

namespace {

void channels_rec(const Proc& p, std::set<std::string>& out) {
  switch (p->k) {
    case Process::K::Input:
      out.insert(p->channel);
      channels_rec(p->payload, out);
      return;
    case Process::K::Output:
      out.insert(p->channel);
      channels_rec(p->payload, out);
      return;
    case Process::K::Var: return;
    case Process::K::Par:
      for (const auto& q : p->parts) channels_rec(q, out);
      return;
  }
}

void free_vars_rec(const Proc& p, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (p->k) {
    case Process::K::Input: {
      bool added = false;
      if (!p->binder.empty() && !bound.count(p->binder)) {
        bound.insert(p->binder);
        added = true;
      }
      free_vars_rec(p->payload, bound, out);
      if (added) bound.erase(p->binder);
      return;
    }
    case Process::K::Output:
      free_vars_rec(p->payload, bound, out);
      return;
    case Process::K::Var:
      if (!bound.count(p->binder)) out.insert(p->binder);
      return;
    case Process::K::Par:
      for (const auto& q : p->parts) free_vars_rec(q, bound, out);
      return;
  }
}

Proc rename_var_rec(const Proc& p, const std::string& from, const std::string& to) {
  switch (p->k) {
    case Process::K::Input:
      if (p->binder == from) return p;
      return input(p->channel, p->binder, rename_var_rec(p->payload, from, to));
    case Process::K::Output:
      return output(p->channel, rename_var_rec(p->payload, from, to));
    case Process::K::Var:
      return p->binder == from ? pvar(to) : p;
    case Process::K::Par: {
      std::vector<Proc> ps;
      ps.reserve(p->parts.size());
      for (const auto& q : p->parts) ps.push_back(rename_var_rec(q, from, to));
      return par(std::move(ps));
    }
  }
  return p;
}

Proc subst_rec(const Proc& p, const std::string& x, const Proc& q,
               const std::set<std::string>& fv_q, unsigned& fresh) {
  switch (p->k) {
    case Process::K::Input: {
      if (p->binder == x) return p; // shadowed
      if (!p->binder.empty() && fv_q.count(p->binder)) {
        std::string y;
        do {
          y = p->binder + "_" + std::to_string(fresh++);
        } while (fv_q.count(y));
        Proc body = rename_var_rec(p->payload, p->binder, y);
        return input(p->channel, y, subst_rec(body, x, q, fv_q, fresh));
      }
      return input(p->channel, p->binder, subst_rec(p->payload, x, q, fv_q, fresh));
    }
    case Process::K::Output:
      return output(p->channel, subst_rec(p->payload, x, q, fv_q, fresh));
    case Process::K::Var:
      return p->binder == x ? q : p;
    case Process::K::Par: {
      std::vector<Proc> ps;
      ps.reserve(p->parts.size());
      for (const auto& r : p->parts) ps.push_back(subst_rec(r, x, q, fv_q, fresh));
      return par(std::move(ps));
    }
  }
  return p;
}

} // namespace

std::set<std::string> channels(const Proc& p) {
  std::set<std::string> out;
  channels_rec(p, out);
  return out;
}

std::set<std::string> free_vars(const Proc& p) {
  std::set<std::string> bound, out;
  free_vars_rec(p, bound, out);
  return out;
}

Proc substitute(const Proc& p, const std::string& x, const Proc& q) {
  std::set<std::string> fv_q = free_vars(q);
  unsigned fresh = 0;
  return subst_rec(p, x, q, fv_q, fresh);
}

// ---------------------------------------------------------------------------
// LTS
// ---------------------------------------------------------------------------

namespace {

std::vector<Proc> component_list(const Proc& p) {
  if (p->k == Process::K::Par) return p->parts;
  return {p};
}

Proc without(const std::vector<Proc>& parts, size_t skip) {
  std::vector<Proc> rest;
  rest.reserve(parts.size());
  for (size_t i = 0; i < parts.size(); i++)
    if (i != skip) rest.push_back(parts[i]);
  return par(std::move(rest));
}

Proc without2(const std::vector<Proc>& parts, size_t skip1, size_t skip2) {
  std::vector<Proc> rest;
  rest.reserve(parts.size());
  for (size_t i = 0; i < parts.size(); i++)
    if (i != skip1 && i != skip2) rest.push_back(parts[i]);
  return par(std::move(rest));
}

} // namespace

std::vector<std::pair<Label, Proc>> transitions(const Proc& p) {
  std::vector<std::pair<Label, Proc>> out;
  auto parts = component_list(p);
  for (size_t i = 0; i < parts.size(); i++) {
    const Proc& c = parts[i];
    if (c->k == Process::K::Output) {
      out.push_back({Label{Label::K::Out, c->channel}, without(parts, i)});
    } else if (c->k == Process::K::Input) {
      Proc body = c->binder.empty() ? c->payload : substitute(c->payload, c->binder, nil());
      out.push_back({Label{Label::K::In, c->channel}, par2(body, without(parts, i))});
    }
  }
  for (size_t i = 0; i < parts.size(); i++) {
    if (parts[i]->k != Process::K::Output) continue;
    for (size_t j = 0; j < parts.size(); j++) {
      if (i == j || parts[j]->k != Process::K::Input) continue;
      if (parts[i]->channel != parts[j]->channel) continue;
      Proc body = parts[j]->binder.empty()
                      ? parts[j]->payload
                      : substitute(parts[j]->payload, parts[j]->binder, parts[i]->payload);
      out.push_back({Label{Label::K::Tau, ""}, par2(body, without2(parts, i, j))});
    }
  }
  return out;
}

std::vector<Proc> tau_successors(const Proc& p) {
  std::vector<Proc> out;
  for (auto& [l, q] : transitions(p))
    if (l.k == Label::K::Tau) {
      bool dup = false;
      for (const auto& r : out)
        if (equal(r, q)) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(q);
    }
  return out;
}

std::set<std::string> strong_barbs(const Proc& p, const std::set<std::string>& hidden) {
  std::set<std::string> out;
  for (const auto& c : component_list(p)) {
    if (c->k == Process::K::Input && !hidden.count(c->channel)) out.insert(c->channel);
    if (c->k == Process::K::Output && !hidden.count(c->channel)) out.insert(c->channel + "!");
  }
  return out;
}

std::vector<std::pair<Label, Proc>> visible_steps(const Proc& p,
                                                  const std::set<std::string>& hidden) {
  std::vector<std::pair<Label, Proc>> out;
  auto parts = component_list(p);
  for (size_t i = 0; i < parts.size(); i++) {
    const Proc& c = parts[i];
    if (hidden.count(c->channel)) continue;
    if (c->k == Process::K::Input) {
      Proc body = c->binder.empty() ? c->payload : substitute(c->payload, c->binder, nil());
      out.push_back({Label{Label::K::In, c->channel}, par2(body, without(parts, i))});
    } else if (c->k == Process::K::Output) {
      out.push_back({Label{Label::K::Out, c->channel}, without(parts, i)});
    }
  }
  return out;
}

namespace {

struct ProcHash {
  size_t operator()(const Proc& p) const { return static_cast<size_t>(p->hash); }
};
struct ProcEq {
  bool operator()(const Proc& a, const Proc& b) const { return equal(a, b); }
};

} // namespace

TauClosure tau_closure(const Proc& p, unsigned fuel) {
  TauClosure result;
  std::unordered_set<Proc, ProcHash, ProcEq> seen{p};
  result.states.push_back(p);
  size_t next = 0;
  while (next < result.states.size()) {
    Proc cur = result.states[next++];
    for (auto& q : tau_successors(cur)) {
      if (seen.count(q)) continue;
      if (result.states.size() >= fuel) {
        result.fuel_exhausted = true;
        return result;
      }
      seen.insert(q);
      result.states.push_back(q);
    }
  }
  return result;
}

WeakBarbs weak_barbs(const Proc& p, const std::set<std::string>& hidden, unsigned fuel) {
  WeakBarbs out;
  TauClosure cl = tau_closure(p, fuel);
  out.fuel_exhausted = cl.fuel_exhausted;
  for (const auto& q : cl.states) {
    auto b = strong_barbs(q, hidden);
    out.barbs.insert(b.begin(), b.end());
  }
  return out;
}

} // namespace lamflag::ho
