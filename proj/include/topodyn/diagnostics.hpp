#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topodyn/families.hpp"
#include "topodyn/hitting.hpp"
#include "topodyn/systems.hpp"

namespace topodyn {

struct DiagnosticVerdict {
    std::string property;
    Verdict verdict = Verdict::Inconclusive;
    std::string witness; // counterexample description when failing
    std::map<std::string, std::string> params;
};

// N_T(U,V) nonempty for every ordered pair of depth-cells.
DiagnosticVerdict transitivity_test(const SystemSpec& sys, int depth, std::int64_t horizon,
                                    const Limits& lim = default_limits());

// Petersen-style criterion: N(U,U) meets N(U,V) for all pairs.
DiagnosticVerdict weak_mixing_test(const SystemSpec& sys, int depth, std::int64_t horizon,
                                   const Limits& lim = default_limits());

// N_T(U,V) cofinite for all pairs, judged on a probe window of
// lim.mixing_probe_factor * H: a certified missing time at or beyond H
// refutes every tail start inside the window.
DiagnosticVerdict mixing_test(const SystemSpec& sys, int depth, std::int64_t horizon,
                              const Limits& lim = default_limits());

// Finite-horizon L_d: min over depth-cells of the peak certified image
// diameter, reported net of the initial cell diameter (no growth -> 0).
Rat sensitivity_constant(const SystemSpec& sys, int depth, std::int64_t horizon,
                         const Limits& lim = default_limits());

// Intersection of the K certain sensitivity sets nonempty for every K-tuple
// of depth-cells (combinations with repetition, exhaustive under the cap).
DiagnosticVerdict multi_sensitivity_test(const SystemSpec& sys, int k, int depth, const Rat& delta,
                                         std::int64_t horizon, const Limits& lim = default_limits());

struct ThickSensitivityProfile {
    std::vector<std::pair<std::string, std::int64_t>> max_runs; // cell -> max run
    std::int64_t min_run = 0;
    SetParams params;
};

ThickSensitivityProfile thick_sensitivity_profile(const SystemSpec& sys, int depth, const Rat& delta,
                                                  std::int64_t horizon,
                                                  const Limits& lim = default_limits());

struct LyapunovReport {
    // point-relative / set-relative, peak and burn-in-restricted, single and
    // multi variants
    Rat l_r, l_r_bar, l_d, l_d_bar;
    Rat l_mr, l_mr_bar, l_md, l_md_bar;
    int depth = 0;
    std::int64_t horizon = 0;
    std::int64_t burn_in = 0;
    int multi_arity = 0;
    std::size_t sample_size = 0;
    std::vector<std::string> certified_relations;
};

// The eight estimators over a common parameter set. The user sample is
// augmented with one canonical point per cell so the multi chain
// L_md >= L_mr >= L_mr_bar and L_md >= L_md_bar >= L_mr_bar is certified by
// construction (r-witness sets nest inside d-witness sets cellwise).
LyapunovReport lyapunov_numbers(const SystemSpec& sys, int depth, std::int64_t horizon,
                                std::int64_t burn_in, int multi_arity,
                                const std::vector<PointSpec>& sample,
                                const Limits& lim = default_limits());

struct LiYorkeWitness {
    PointSpec partner;
    Rat min_dist; // over [burn_in, horizon]
    Rat max_dist;
};

// Deterministic structured search for a Li-Yorke partner of x inside its
// depth-cell: bounded-period tails first, then single-symbol perturbations
// (dyadic offsets on metric systems). Returned witnesses are re-verified by a
// direct orbit scan.
std::optional<LiYorkeWitness> li_yorke_search(const SystemSpec& sys, const PointSpec& x, int depth,
                                              const Rat& delta, std::int64_t horizon,
                                              std::int64_t burn_in,
                                              const Rat& eps_prox = Rat(1, 1024),
                                              const Limits& lim = default_limits());

// Gap bound for A = { n <= H : diam(T^n cell(x)) <= eps }, with the censored
// tail rule; nullopt when the window shows no self-consistent syndetic
// pattern.
std::optional<std::int64_t> syndetic_equicontinuity(const SystemSpec& sys, const PointSpec& x,
                                                    const Rat& eps, int depth, std::int64_t horizon,
                                                    const Limits& lim = default_limits());

struct ProximalSearchReport {
    std::int64_t cells_tested = 0;
    std::int64_t cells_with_witness = 0;
    double fraction = 0.0;
};

// For each depth-cell, search the structured candidate family for y with
// min_{n<=H} d(T^n x, T^n y) < eps; density evidence for the proximal cell.
ProximalSearchReport proximal_partner_search(const SystemSpec& sys, const PointSpec& x, int depth,
                                             const Rat& eps, std::int64_t horizon,
                                             const Limits& lim = default_limits());

} // namespace topodyn
