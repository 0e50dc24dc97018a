#pragma once

#include <string>
#include <vector>

namespace lamflag {

// The observable machine alphabet. Var and Name carry a numeric payload.
struct Flag {
  enum class K {
    Lam, Var, Name, Done, Enter, Skip, Arg, Suc, AppFun, App,
    Push, AppL, AppR, Start, Val, Ctx, IndMu, SucMu, Mu, Rev
  };
  K k;
  unsigned payload = 0;

  static Flag lam() { return {K::Lam}; }
  static Flag var(unsigned n) { return {K::Var, n}; }
  static Flag name(unsigned n) { return {K::Name, n}; }
  static Flag done() { return {K::Done}; }
  static Flag enter() { return {K::Enter}; }
  static Flag skip() { return {K::Skip}; }
  static Flag arg() { return {K::Arg}; }
  static Flag suc() { return {K::Suc}; }
  static Flag appfun() { return {K::AppFun}; }
  static Flag app() { return {K::App}; }
  static Flag push() { return {K::Push}; }
  static Flag appl() { return {K::AppL}; }
  static Flag appr() { return {K::AppR}; }
  static Flag start() { return {K::Start}; }
  static Flag val() { return {K::Val}; }
  static Flag ctx() { return {K::Ctx}; }
  static Flag indmu() { return {K::IndMu}; }
  static Flag sucmu() { return {K::SucMu}; }
  static Flag mu() { return {K::Mu}; }
  static Flag rev() { return {K::Rev}; }

  friend bool operator==(const Flag& a, const Flag& b) {
    if (a.k != b.k) return false;
    if (a.k == K::Var || a.k == K::Name) return a.payload == b.payload;
    return true;
  }
  friend bool operator!=(const Flag& a, const Flag& b) { return !(a == b); }
};

std::string to_string(const Flag& f);
std::string to_string(const std::vector<Flag>& fs);

using FlagSeq = std::vector<Flag>;

} // namespace lamflag
