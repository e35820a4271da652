#pragma once

#include <cstdint>

namespace topodyn {

// Hard caps for every search and enumeration. Exceeding a cap is an error,
// never a silent truncation.
struct Limits {
    std::int64_t max_horizon = 200000;
    int max_depth = 12;
    std::int64_t max_cells = 8192;
    std::int64_t max_pairs = 20000;          // (U,V) pairs per report
    std::int64_t max_tuples = 200000;        // K-tuples in multi estimators
    std::int64_t max_window_positions = 4096; // union of windows in sep counting
    std::int64_t sep_count_budget = 50000000; // DFS node budget for exact counting
    std::int64_t ip_search_bound = 512;       // largest candidate basis element
    std::int64_t prefix_limit = 1 << 24;      // longest materializable prefix
    std::int64_t candidate_offset_max = 12;   // dyadic offset ladder 2^-1..2^-k
    std::int64_t mixing_probe_factor = 2;     // probe horizon = factor * H
};

inline const Limits& default_limits() {
    static const Limits l{};
    return l;
}

} // namespace topodyn
