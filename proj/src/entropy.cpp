#include "topodyn/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace topodyn {

SequenceSpec SequenceSpec::full() {
    SequenceSpec s;
    s.kind_ = Kind::Full;
    return s;
}

SequenceSpec SequenceSpec::arithmetic(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1) throw ConfigError("arithmetic sequence needs a >= 1, b >= 1");
    SequenceSpec s;
    s.kind_ = Kind::Arithmetic;
    s.a_ = a;
    s.b_ = b;
    return s;
}

SequenceSpec SequenceSpec::geometric(std::int64_t c) {
    if (c < 2) throw ConfigError("geometric sequence needs ratio >= 2");
    SequenceSpec s;
    s.kind_ = Kind::Geometric;
    s.c_ = c;
    return s;
}

SequenceSpec SequenceSpec::explicit_list(std::vector<std::int64_t> raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] < 1 || (i > 0 && raw[i] <= raw[i - 1]))
            throw ConfigError("explicit sequence must be strictly increasing and positive");
    }
    SequenceSpec s;
    s.kind_ = Kind::Explicit;
    s.raw_ = std::move(raw);
    return s;
}

std::vector<std::int64_t> SequenceSpec::times(int k, const Limits& lim) const {
    if (k < 1) throw ConfigError("sequence length must be positive");
    std::vector<std::int64_t> t{0};
    for (int j = 0; static_cast<int>(t.size()) < k; ++j) {
        std::int64_t v = 0;
        switch (kind_) {
            case Kind::Full: v = j + 1; break;
            case Kind::Arithmetic: v = a_ * j + b_; break;
            case Kind::Geometric: {
                v = c_;
                for (int i = 0; i < j; ++i) {
                    v *= c_;
                    if (v > lim.max_horizon) throw WindowOverflow("geometric sequence entry exceeds horizon cap");
                }
                break;
            }
            case Kind::Explicit:
                if (j >= static_cast<int>(raw_.size())) throw WindowOverflow("explicit sequence too short");
                v = raw_[static_cast<std::size_t>(j)];
                break;
        }
        if (v > lim.max_horizon) throw WindowOverflow("sequence entry exceeds horizon cap");
        t.push_back(v);
    }
    return t;
}

std::string SequenceSpec::describe() const {
    switch (kind_) {
        case Kind::Full: return "full";
        case Kind::Arithmetic: return "arithmetic(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
        case Kind::Geometric: return "geometric(" + std::to_string(c_) + ")";
        case Kind::Explicit: {
            std::string s = "explicit(";
            for (std::size_t i = 0; i < raw_.size(); ++i) s += (i ? "," : "") + std::to_string(raw_[i]);
            return s + ")";
        }
    }
    return "?";
}

namespace {

// Sorted union of the windows [n_j, n_j + L].
std::vector<std::int64_t> window_union(const std::vector<std::int64_t>& times, int L) {
    std::set<std::int64_t> s;
    for (auto n : times)
        for (int d = 0; d <= L; ++d) s.insert(n + d);
    return std::vector<std::int64_t>(s.begin(), s.end());
}

// Count admissible 0/1 patterns on the union positions of a difference-set
// subshift (a pattern is realizable iff it is itself admissible).
std::int64_t count_diffset_patterns(const PSpec& p, const std::vector<std::int64_t>& positions,
                                    std::int64_t budget) {
    std::vector<std::int64_t> ones;
    std::int64_t nodes = 0;
    std::function<std::int64_t(std::size_t)> dfs = [&](std::size_t i) -> std::int64_t {
        if (++nodes > budget) throw BudgetExceeded("separated-set counting budget exhausted");
        if (i == positions.size()) return 1;
        std::int64_t total = dfs(i + 1); // symbol 0
        bool ok = true;
        for (auto o : ones)
            if (!p.member(positions[i] - o)) {
                ok = false;
                break;
            }
        if (ok) {
            ones.push_back(positions[i]);
            total += dfs(i + 1);
            ones.pop_back();
        }
        return total;
    };
    return dfs(0);
}

// Determinized projection counting for SFTs: walk all positions, branching
// only on union positions; the state is the set of reachable contexts.
std::int64_t count_sft_patterns(const SubshiftOracle& oracle, const SystemSpec& sys,
                                const std::vector<std::int64_t>& positions, std::int64_t budget) {
    (void)sys;
    std::int64_t maxpos = positions.back();
    std::set<std::int64_t> branch(positions.begin(), positions.end());
    std::int64_t nodes = 0;
    // states as explicit words (short near the start, context-length after)
    std::function<std::int64_t(std::int64_t, const std::set<Word>&)> dfs =
        [&](std::int64_t pos, const std::set<Word>& states) -> std::int64_t {
        if (++nodes > budget) throw BudgetExceeded("separated-set counting budget exhausted");
        if (states.empty()) return 0;
        if (pos > maxpos) {
            for (const auto& w : states)
                if (oracle.word_admissible(w)) return 1;
            return 0;
        }
        auto step = [&](Sym c) {
            std::set<Word> nxt;
            for (const auto& w : states) {
                Word e = w;
                e.push_back(c);
                Word probe = e;
                // keep a bounded context window
                int keep = std::max(oracle.context(), 1) * 2;
                if (static_cast<int>(e.size()) > keep)
                    e.erase(e.begin(), e.end() - keep);
                if (oracle.word_admissible(probe)) nxt.insert(e);
            }
            return nxt;
        };
        if (branch.count(pos)) {
            std::int64_t total = 0;
            for (Sym c = 0; c < oracle.alphabet(); ++c) {
                auto nxt = step(c);
                if (!nxt.empty()) total += dfs(pos + 1, nxt);
            }
            return total;
        }
        std::set<Word> merged;
        for (Sym c = 0; c < oracle.alphabet(); ++c) {
            auto nxt = step(c);
            merged.insert(nxt.begin(), nxt.end());
        }
        return dfs(pos + 1, merged);
    };
    return dfs(0, {Word{}});
}

} // namespace

std::int64_t sep_count_exact(const SystemSpec& sys, const SequenceSpec& seq, int k, const Rat& eps,
                             const Limits& lim) {
    if (!sys.is_subshift()) throw NotASubshift("exact separated counting needs a subshift");
    int L = separation_window(eps);
    auto times = seq.times(k, lim);
    auto positions = window_union(times, L);
    if (positions.back() > lim.max_window_positions) throw WindowOverflow("window union exceeds position cap");

    if (auto fs = sys.as<FullShiftSys>()) {
        // every pattern on the union positions is realizable
        std::int64_t count = 1;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (count > (std::int64_t(1) << 62) / fs->alphabet) throw BudgetExceeded("count overflow");
            count *= fs->alphabet;
        }
        return count;
    }
    if (auto ds = sys.as<DiffSetSys>()) return count_diffset_patterns(ds->p, positions, lim.sep_count_budget);
    SubshiftOracle oracle(sys);
    return count_sft_patterns(oracle, sys, positions, lim.sep_count_budget);
}

std::string point_key(const PointSpec& p) {
    if (auto ep = p.as<EventuallyPeriodicPoint>())
        return "ep:" + word_to_string(ep->preperiod) + "|" + word_to_string(ep->period);
    if (auto ps = p.as<PrefixStreamPoint>()) {
        std::string s = "px:";
        std::int64_t n = std::min<std::int64_t>(64, static_cast<std::int64_t>(ps->symbols->size()) - ps->offset);
        for (std::int64_t i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + p.symbol_at(i)));
        return s;
    }
    if (auto tp = p.as<TorusPoint>()) {
        std::string s = "t:";
        for (const auto& c : tp->coords) s += c.str() + ";";
        return s;
    }
    if (auto wp = p.as<WedgePoint>()) return "w" + std::to_string(wp->side) + ":" + point_key(*wp->inner);
    auto pp = p.as<ProductPoint>();
    return "(" + point_key(*pp->left) + "x" + point_key(*pp->right) + ")";
}

std::int64_t sep_greedy(const SystemSpec& sys, const std::vector<PointSpec>& sample,
                        const SequenceSpec& seq, int k, const Rat& eps, const Limits& lim) {
    auto times = seq.times(k, lim);
    std::vector<std::size_t> order(sample.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return point_key(sample[a]) < point_key(sample[b]);
    });
    // orbit snapshots at the sequence times
    std::vector<std::vector<PointSpec>> snaps;
    snaps.reserve(sample.size());
    for (const auto& x : sample) {
        std::vector<PointSpec> row;
        row.reserve(times.size());
        for (auto n : times) row.push_back(evaluate(sys, x, n));
        snaps.push_back(std::move(row));
    }
    std::vector<std::size_t> chosen;
    for (auto i : order) {
        bool separated = true;
        for (auto j : chosen) {
            Rat dk(0);
            for (std::size_t t = 0; t < times.size(); ++t)
                dk = max(dk, distance(sys, snaps[i][t], snaps[j][t]));
            if (!(dk > eps)) {
                separated = false;
                break;
            }
        }
        if (separated) chosen.push_back(i);
    }
    return static_cast<std::int64_t>(chosen.size());
}

namespace {

std::vector<PointSpec> metric_sample(const SystemSpec& sys) {
    std::vector<PointSpec> out;
    if (sys.as<SkewProductSys>()) {
        for (std::int64_t i = 0; i < 8; ++i)
            for (std::int64_t j = 0; j < 8; ++j)
                out.push_back(PointSpec::torus({Rat(i, 8), Rat(j, 8)}));
        return out;
    }
    for (std::int64_t i = 0; i < 64; ++i) out.push_back(PointSpec::torus({Rat(i, 64)}));
    return out;
}

double fit_slope(const std::vector<std::int64_t>& counts, int k_lo, int k_hi) {
    // least squares of log count against k over [k_lo, k_hi]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        double x = k;
        double y = std::log(static_cast<double>(counts[static_cast<std::size_t>(k - 1)]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

} // namespace

SeqEntropyEstimate seq_entropy_estimate(const SystemSpec& sys, const SequenceSpec& seq,
                                        const std::vector<Rat>& eps_list, int k_max, const Limits& lim) {
    if (eps_list.empty()) throw ConfigError("empty epsilon list");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1])) throw ConfigError("epsilon list must be strictly decreasing");
    if (k_max < 2) throw ConfigError("k_max must be at least 2");

    SeqEntropyEstimate est;
    est.method = sys.is_subshift() ? "exact" : "greedy";
    std::vector<PointSpec> sample;
    if (!sys.is_subshift()) sample = metric_sample(sys);

    int k_lo = std::max(1, (k_max + 1) / 2);
    for (const auto& eps : eps_list) {
        SepProfile prof;
        prof.eps = eps;
        prof.method = est.method;
        for (int k = 1; k <= k_max; ++k) {
            std::int64_t c = sys.is_subshift() ? sep_count_exact(sys, seq, k, eps, lim)
                                               : sep_greedy(sys, sample, seq, k, eps, lim);
            prof.counts.push_back(c);
        }
        prof.slope = fit_slope(prof.counts, k_lo, k_max);
        est.value = std::max(est.value, prof.slope);
        est.profiles.push_back(std::move(prof));
    }
    return est;
}

} // namespace topodyn
