#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace lamflag::ho {

// HOcore processes kept in parallel normal form: a Par is a flat, sorted
// multiset of non-Par components, and Nil is the empty Par. Values are
// immutable and shared; every node caches a structural hash.

struct Process;
using Proc = std::shared_ptr<const Process>;

struct Process {
  enum class K { Input, Output, Var, Par };
  K k;
  std::string channel;      // Input / Output
  std::string binder;       // Input
  Proc payload;             // Input continuation / Output payload
  std::vector<Proc> parts;  // Par components, each non-Par, sorted
  uint64_t hash = 0;
};

Proc nil();
Proc input(std::string channel, std::string binder, Proc body);
Proc output(std::string channel, Proc payload);
Proc pvar(std::string name);
Proc par(std::vector<Proc> ps);
Proc par2(Proc a, Proc b);

inline bool is_nil(const Proc& p) { return p->k == Process::K::Par && p->parts.empty(); }

bool equal(const Proc& a, const Proc& b);
// Total order used to canonicalize Par multisets.
int compare(const Proc& a, const Proc& b);

std::string print(const Proc& p);
Proc parse(const std::string& text);

std::set<std::string> channels(const Proc& p);
std::set<std::string> free_vars(const Proc& p);

// Capture-avoiding substitution of process variable x by q.
Proc substitute(const Proc& p, const std::string& x, const Proc& q);

// ---------------------------------------------------------------------------
// LTS
// ---------------------------------------------------------------------------

struct Label {
  enum class K { Tau, Out, In };
  K k;
  std::string channel; // Out / In
  friend bool operator==(const Label& a, const Label& b) {
    return a.k == b.k && a.channel == b.channel;
  }
};

// Complete transition enumeration: one Out per output component (successor
// drops it), one In per input component (payload instantiated to Nil), one
// Tau per communicating pair.
std::vector<std::pair<Label, Proc>> transitions(const Proc& p);

std::vector<Proc> tau_successors(const Proc& p);

// Strong barbs: "a" for an input on a, "a!" for an output on a, skipping
// hidden channels.
std::set<std::string> strong_barbs(const Proc& p, const std::set<std::string>& hidden);

struct WeakBarbs {
  std::set<std::string> barbs;
  bool fuel_exhausted = false;
};
WeakBarbs weak_barbs(const Proc& p, const std::set<std::string>& hidden, unsigned fuel);

// Visible steps for flag observation: inputs and outputs on non-hidden
// channels only; input successors feed Nil, output successors drop payloads.
std::vector<std::pair<Label, Proc>> visible_steps(const Proc& p,
                                                  const std::set<std::string>& hidden);

// Reflexive-transitive tau closure, bounded by fuel (number of distinct
// processes explored).
struct TauClosure {
  std::vector<Proc> states;
  bool fuel_exhausted = false;
};
TauClosure tau_closure(const Proc& p, unsigned fuel);

} // namespace lamflag::ho
