#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topodyn/families.hpp"
#include "topodyn/limits.hpp"
#include "topodyn/systems.hpp"

namespace topodyn {

struct SetParams {
    std::int64_t horizon = 0;
    int depth = 0;
    std::optional<Rat> delta;
    std::int64_t pair_budget = 0;
};

// A window set with certainty bookkeeping: certain is a subset of possible.
// Every backend here decides membership exactly, so the two coincide; the
// split survives in the type so reports stay honest if an inexact backend
// ever feeds them.
struct TaggedWindowSet {
    WindowSet certain;
    WindowSet possible;
    SetParams params;
};

// Outer approximation of a limit set by depth-cells.
struct CellSetApprox {
    std::vector<Cell> cells;
    SetParams params;
};

// N_T(U, V) = { n : U meets T^-n V }, exactly, over [0, H].
TaggedWindowSet hitting_set(const SystemSpec& sys, const Cell& u, const Cell& v, std::int64_t horizon,
                            const Limits& lim = default_limits());

// N_T(x, G) = { n : T^n x in G } over [0, H].
WindowSet visit_set(const SystemSpec& sys, const PointSpec& x, const Cell& g, std::int64_t horizon,
                    const Limits& lim = default_limits());

// S_T(U, delta) = { n : two points of U are delta-separated at time n }.
TaggedWindowSet sensitivity_set(const SystemSpec& sys, const Cell& u, const Rat& delta,
                                std::int64_t horizon, const Limits& lim = default_limits());

// Cells visited during the second half of the window: an outer stand-in for
// the omega-limit set at this resolution.
CellSetApprox omega_limit_approx(const SystemSpec& sys, const PointSpec& x, int depth,
                                 std::int64_t horizon, const Limits& lim = default_limits());

// Cells whose visit set meets every tested hitting set (and which pass the
// omega-limit burn-in, keeping the approximation inside omega_T cellwise).
CellSetApprox omega_nt_approx(const SystemSpec& sys, const PointSpec& x, int depth, std::int64_t horizon,
                              std::int64_t pair_budget, const Limits& lim = default_limits());

struct TransitiveCompactPoint {
    std::size_t index = 0;
    bool nonempty = false;
    std::int64_t cell_count = 0;
};

struct TransitiveCompactReport {
    // "consistent-with-transitive-compact" or "refuted-at-parameters";
    // approximations are outer, so a refutation is evidence, not proof.
    std::string verdict;
    std::vector<TransitiveCompactPoint> points;
    SetParams params;
};

TransitiveCompactReport transitive_compact_evidence(const SystemSpec& sys,
                                                    const std::vector<PointSpec>& sample, int depth,
                                                    std::int64_t horizon, std::int64_t pair_budget,
                                                    const Limits& lim = default_limits());

} // namespace topodyn
