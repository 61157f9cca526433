#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stacky/invariants.hpp"
#include "stacky/sectors.hpp"

namespace stacky {

enum class Verdict { Breaking, WeaklyBreakingOnly, NotBreaking };

std::string verdict_name(Verdict v);

// Lexicographic comparison of (a_sub, b_sub) against the ambient (a, b).
Verdict classify(const std::pair<Rat, long long>& sub, const std::pair<Rat, long long>& ambient);

struct ThinVerdict {
    std::string source;  // subgroup generators, mu_m, or twist mode
    Rat a_sub;
    long long b_sub = 0;
    Verdict verdict = Verdict::NotBreaking;
};

// Restriction of a raising function on FConj(G) to FConj(H), H <= G: the
// value on the class of h in H is the value on the class of h in G.
RaisingFunction pullback_raising(const PermGroup& h, const StackDescriptor& bg,
                                 const RaisingFunction& c);

// One verdict per nontrivial proper sub-group-scheme: constant subgroups of a
// BG stack, or mu_m for m | l on a mu stack. The trivial subgroup is skipped.
std::vector<ThinVerdict> subgroup_scan(const StackDescriptor& x, const RaisingFunction& c);

// One verdict per correlation mode for the twisted forms of h. c_on_ambient
// maps each element of h (by index in h.elements()) to its c-value.
std::vector<ThinVerdict> twist_scan(const PermGroup& h, long long e, const Perm& involution,
                                    const std::vector<Rat>& c_on_elements,
                                    const std::pair<Rat, long long>& ambient);

struct ComprehensiveResult {
    bool comprehensive = false;
    // failing conjugacy class if not comprehensive
    std::optional<std::vector<Perm>> witness;
    std::string witness_label;
};

// True iff every minimal-c nontrivial conjugacy class generates the whole
// group. c is a function on ordinary conjugacy classes, keyed by the class
// representative's cycle string; it must vanish exactly on the identity class.
ComprehensiveResult is_comprehensive(const PermGroup& g,
                                     const std::map<std::string, Rat>& c);

struct KlunersReport {
    PermGroup group;                      // C3 wr C2 inside S6
    Rat a;                                // 1/2
    long long b = 0;                      // 1
    std::vector<ThinVerdict> subgroup_verdicts;
    std::vector<ThinVerdict> twist_verdicts;
    ComprehensiveResult comprehensiveness;
};

// The full analysis of Kluners' counterexample: invariants of BG over Q with
// the index raising function, constant-subgroup scan, twisted-form scan of
// the 3-Sylow subgroup, and the comprehensiveness check.
KlunersReport kluners_report();

}  // namespace stacky
