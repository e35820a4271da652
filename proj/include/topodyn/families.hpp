#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topodyn/limits.hpp"
#include "topodyn/systems.hpp"

namespace topodyn {

// A subset of {0, ..., H} together with its horizon.
struct WindowSet {
    std::int64_t horizon = 0;
    std::vector<std::int64_t> members; // sorted, duplicate-free, within [0, horizon]

    static WindowSet of(std::int64_t horizon, std::vector<std::int64_t> members);
    bool contains(std::int64_t n) const;
    bool empty() const { return members.empty(); }

    WindowSet intersect(const WindowSet& o) const;
    // Length of the trailing window segment that carries no information
    // (everything past the last member).
    std::int64_t censored_tail() const;
};

enum class Verdict { HoldsAtHorizon, FailsAtHorizon, Inconclusive };

std::string verdict_name(Verdict v);

struct FamilyVerdict {
    std::string family;
    Verdict verdict = Verdict::Inconclusive;
    std::int64_t statistic = 0;                 // max run, max gap, or tail start
    std::optional<std::vector<std::int64_t>> ip_basis;
    std::string detail;
};

// Longest block of consecutive integers in S.
std::int64_t max_run(const WindowSet& s);

// Largest gap between consecutive members, including the leading gap from 0;
// the censored trailing gap is excluded (query it via censored_tail).
std::int64_t max_gap(const WindowSet& s);

// max_gap of { i : [i, i+N) inside S }, over the window [0, H-N+1].
// Throws NoRuns when no length-N run exists.
std::int64_t thickly_syndetic_gap(const WindowSet& s, std::int64_t n);

// Smallest m with {m, ..., H} inside S, if any.
std::optional<std::int64_t> cofinite_from(const WindowSet& s);

// Basis {p_1 < ... < p_depth} whose nonempty subset sums all lie in S, or
// nullopt after an exhaustive search over candidates bounded by
// lim.ip_search_bound. Returned bases are re-verified.
std::optional<std::vector<std::int64_t>> ip_witness(const WindowSet& s, int depth,
                                                    const Limits& lim = default_limits());

// Named window-set family predicates usable in transitivity reports.
enum class FamilyKind { Thick, Syndetic, ThicklySyndetic, Cofinite, Ip };

std::string family_kind_name(FamilyKind k);

// Judge one window set against a family, with the three-valued semantics:
// fails-at-horizon only on an in-window certified counterexample. For hitting
// sets with uncertainty, pass the certain and possible sets separately;
// refutations are read off the possible set, positive evidence off the
// certain one. For tail families (cofinite) the sets may extend past the
// nominal horizon; a missing element at or beyond it certifies failure.
FamilyVerdict judge_family(const WindowSet& certain, const WindowSet& possible, FamilyKind kind,
                           std::int64_t nominal_horizon, std::int64_t param = 0,
                           const Limits& lim = default_limits());
FamilyVerdict judge_family(const WindowSet& s, FamilyKind kind, std::int64_t nominal_horizon,
                           std::int64_t param = 0, const Limits& lim = default_limits());

struct PairVerdict {
    std::string u;
    std::string v;
    FamilyVerdict verdict;
};

struct FamilyTransitivityReport {
    FamilyKind family;
    Verdict aggregate = Verdict::Inconclusive;
    std::vector<PairVerdict> pairs;
    std::int64_t depth = 0;
    std::int64_t horizon = 0;
    std::int64_t probe_horizon = 0;
};

// Applies the family predicate to N_T(U,V) for every ordered pair of
// depth-cells. Tail families (cofinite) are judged on a probe window of
// lim.mixing_probe_factor * H so that a gap beyond the candidate tail is a
// certified counterexample.
FamilyTransitivityReport family_transitivity(const SystemSpec& sys, FamilyKind kind, int depth,
                                             std::int64_t horizon, std::int64_t param = 0,
                                             const Limits& lim = default_limits());

} // namespace topodyn
