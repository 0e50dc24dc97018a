#pragma once

#include <set>

#include "lamflag/hocore.hpp"
#include "lamflag/machine.hpp"

namespace lamflag {

// A translation's observation interface: which channels carry flags (all
// others are hidden), how machine flags serialize into channel words, and
// whether the machine's observable is a convergence output barb on b.
struct TranslationProfile {
  MachineKind machine;
  std::set<std::string> flag_channels;
  bool convergence_barb = false;
  bool normalize_b_payloads = false; // nfb-cbv: b messages carry dead payloads
};

bool has_translation(MachineKind k);
TranslationProfile profile_for(MachineKind k);

// Channels a process uses that are not flag channels.
std::set<std::string> hidden_channels(const TranslationProfile& p, const ho::Proc& q);
std::set<std::string> hidden_channels(const TranslationProfile& p, const ho::Proc& q1,
                                      const ho::Proc& q2);

// Serialization of machine flags into channel-name words.
std::vector<std::string> flag_word(MachineKind k, const Flag& f);
std::vector<std::string> flag_word(MachineKind k, const FlagSeq& fs);

// Structural normalization applied before comparing a reached process with
// a translated configuration (rewrites dead payloads the encoding cannot
// reproduce exactly).
ho::Proc normalize_for_match(const TranslationProfile& p, const ho::Proc& q);

// Compositional translation of a machine configuration. Throws for machines
// without a translation (kam-env, cek, ab-cbv, kam-mu, kam-mu-env).
ho::Proc translate_config(MachineKind k, const MachineConfig& c);

// Internal choice: n messages on ch plus a collector that consumes all of
// them and runs exactly one.
ho::Proc choice(std::vector<ho::Proc> alternatives);

// Test fixture: the process that loops on tau with no observable action.
ho::Proc p_omega();

} // namespace lamflag
