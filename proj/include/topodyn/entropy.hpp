#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topodyn/limits.hpp"
#include "topodyn/rational.hpp"
#include "topodyn/systems.hpp"

namespace topodyn {

// Increasing time sequence with n_0 = 0 prepended.
class SequenceSpec {
public:
    static SequenceSpec full();                       // 0, 1, 2, 3, ...
    static SequenceSpec arithmetic(std::int64_t a, std::int64_t b); // 0, b, a+b, 2a+b, ...
    static SequenceSpec geometric(std::int64_t c);    // 0, c, c^2, c^3, ...
    static SequenceSpec explicit_list(std::vector<std::int64_t> raw); // 0, raw...

    // First k entries (throws WindowOverflow past the cap).
    std::vector<std::int64_t> times(int k, const Limits& lim = default_limits()) const;
    std::string describe() const;

private:
    enum class Kind { Full, Arithmetic, Geometric, Explicit } kind_;
    std::int64_t a_ = 0, b_ = 0, c_ = 0;
    std::vector<std::int64_t> raw_;
};

struct SepProfile {
    Rat eps;
    std::vector<std::int64_t> counts; // counts[k-1] = sep(k)
    double slope = 0.0;
    std::string method; // "exact" or "greedy"
};

struct SeqEntropyEstimate {
    double value = 0.0;
    std::string method;
    std::vector<SepProfile> profiles;
};

// Exact maximal (k,T,eps)-separated cardinality on a subshift: two points are
// separated iff they differ somewhere on the union of windows
// [n_j, n_j + L(eps)], so the count is the number of realizable symbol
// patterns on that union.
std::int64_t sep_count_exact(const SystemSpec& sys, const SequenceSpec& seq, int k, const Rat& eps,
                             const Limits& lim = default_limits());

// Greedy maximal separated subset of the sample under d_k; a lower bound.
// Insertion order is lexicographic on canonical point descriptions.
std::int64_t sep_greedy(const SystemSpec& sys, const std::vector<PointSpec>& sample,
                        const SequenceSpec& seq, int k, const Rat& eps,
                        const Limits& lim = default_limits());

// Slope of log sep(k) over the upper half of the k-range, maximized over the
// epsilon ladder. Exact on subshifts, a greedy lower bound elsewhere.
SeqEntropyEstimate seq_entropy_estimate(const SystemSpec& sys, const SequenceSpec& seq,
                                        const std::vector<Rat>& eps_list, int k_max,
                                        const Limits& lim = default_limits());

// Canonical string form of a point, used for deterministic orderings.
std::string point_key(const PointSpec& p);

} // namespace topodyn
