#include "topodyn/families.hpp"

#include <algorithm>

#include "topodyn/hitting.hpp"

namespace topodyn {

WindowSet WindowSet::of(std::int64_t horizon, std::vector<std::int64_t> members) {
    if (horizon < 0) throw ConfigError("negative horizon");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && (members.front() < 0 || members.back() > horizon))
        throw ConfigError("window set member outside [0, horizon]");
    return WindowSet{horizon, std::move(members)};
}

bool WindowSet::contains(std::int64_t n) const {
    return std::binary_search(members.begin(), members.end(), n);
}

WindowSet WindowSet::intersect(const WindowSet& o) const {
    WindowSet r;
    r.horizon = std::min(horizon, o.horizon);
    std::set_intersection(members.begin(), members.end(), o.members.begin(), o.members.end(),
                          std::back_inserter(r.members));
    while (!r.members.empty() && r.members.back() > r.horizon) r.members.pop_back();
    return r;
}

std::int64_t WindowSet::censored_tail() const {
    if (members.empty()) return horizon + 1;
    return horizon - members.back();
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::HoldsAtHorizon: return "holds-at-horizon";
        case Verdict::FailsAtHorizon: return "fails-at-horizon";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Thick: return "thick";
        case FamilyKind::Syndetic: return "syndetic";
        case FamilyKind::ThicklySyndetic: return "thickly-syndetic";
        case FamilyKind::Cofinite: return "cofinite";
        case FamilyKind::Ip: return "ip";
    }
    return "?";
}

std::int64_t max_run(const WindowSet& s) {
    std::int64_t best = 0, cur = 0;
    std::int64_t prev = -2;
    for (auto m : s.members) {
        cur = (m == prev + 1) ? cur + 1 : 1;
        best = std::max(best, cur);
        prev = m;
    }
    return best;
}

std::int64_t max_gap(const WindowSet& s) {
    if (s.members.empty()) throw EmptySet("max_gap of an empty window set");
    std::int64_t best = s.members.front(); // leading gap from 0
    for (std::size_t i = 1; i < s.members.size(); ++i)
        best = std::max(best, s.members[i] - s.members[i - 1]);
    return best;
}

std::int64_t thickly_syndetic_gap(const WindowSet& s, std::int64_t n) {
    if (n < 1) throw ConfigError("run length must be positive");
    if (s.members.empty()) throw EmptySet("thickly_syndetic_gap of an empty window set");
    std::vector<std::int64_t> starts;
    std::int64_t run = 0;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        run = (i > 0 && s.members[i] == s.members[i - 1] + 1) ? run + 1 : 1;
        if (run >= n) starts.push_back(s.members[i] - n + 1);
    }
    if (starts.empty()) throw NoRuns("no run of length " + std::to_string(n) + " inside the window");
    return max_gap(WindowSet::of(std::max<std::int64_t>(0, s.horizon - n + 1), std::move(starts)));
}

std::optional<std::int64_t> cofinite_from(const WindowSet& s) {
    // start of the consecutive run ending at the horizon; a single-point tail
    // is not treated as evidence
    if (s.members.empty() || s.members.back() != s.horizon) return std::nullopt;
    std::size_t i = s.members.size() - 1;
    while (i > 0 && s.members[i - 1] == s.members[i] - 1) --i;
    std::int64_t m = s.members[i];
    if (s.horizon - m < 1) return std::nullopt;
    return m;
}

std::optional<std::vector<std::int64_t>> ip_witness(const WindowSet& s, int depth, const Limits& lim) {
    if (depth < 1) throw ConfigError("ip depth must be positive");
    if (depth > 20) throw BudgetExceeded("ip depth too large");
    std::int64_t bound = std::min(lim.ip_search_bound, s.horizon);
    std::vector<std::int64_t> basis;
    std::vector<std::int64_t> sums; // all nonempty subset sums so far
    std::int64_t budget = 5000000;

    std::function<bool(std::int64_t)> dfs = [&](std::int64_t from) -> bool {
        if (static_cast<int>(basis.size()) == depth) return true;
        for (std::int64_t p = from; p <= bound; ++p) {
            if (--budget < 0) throw BudgetExceeded("ip witness search budget exhausted");
            if (!s.contains(p)) continue;
            bool ok = true;
            for (auto q : sums) {
                if (p + q > s.horizon || !s.contains(p + q)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::size_t added = sums.size();
            basis.push_back(p);
            sums.push_back(p);
            for (std::size_t i = 0; i < added; ++i) sums.push_back(sums[i] + p);
            if (dfs(p + 1)) return true;
            basis.pop_back();
            sums.resize(added);
        }
        return false;
    };
    if (!dfs(1)) return std::nullopt;
    // self-validate
    for (std::size_t mask = 1; mask < (static_cast<std::size_t>(1) << basis.size()); ++mask) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (mask & (static_cast<std::size_t>(1) << i)) sum += basis[i];
        if (!s.contains(sum)) throw Error("ip witness failed self-validation");
    }
    return basis;
}

FamilyVerdict judge_family(const WindowSet& certain, const WindowSet& possible, FamilyKind kind,
                           std::int64_t nominal_horizon, std::int64_t param, const Limits& lim) {
    FamilyVerdict fv;
    fv.family = family_kind_name(kind);
    const std::int64_t H = nominal_horizon;
    switch (kind) {
        case FamilyKind::Thick: {
            std::int64_t target = param > 0 ? param : std::max<std::int64_t>(1, H / 4);
            fv.statistic = max_run(certain);
            if (fv.statistic >= target) {
                fv.verdict = Verdict::HoldsAtHorizon;
                fv.detail = "run of length " + std::to_string(fv.statistic) + " >= target " + std::to_string(target);
            } else {
                fv.verdict = Verdict::Inconclusive;
                fv.detail = "longest certified run " + std::to_string(fv.statistic) + " < target " +
                            std::to_string(target);
            }
            return fv;
        }
        case FamilyKind::Syndetic: {
            if (certain.members.empty()) {
                if (param > 0 && H >= param) {
                    // refutation needs certainty about absence
                    if (possible.members.empty()) {
                        fv.verdict = Verdict::FailsAtHorizon;
                        fv.statistic = H + 1;
                        fv.detail = "window [0," + std::to_string(H) + "] misses the set";
                        return fv;
                    }
                }
                fv.verdict = Verdict::Inconclusive;
                fv.detail = "no certified members";
                return fv;
            }
            std::int64_t gap = max_gap(certain);
            std::int64_t tail = certain.censored_tail();
            fv.statistic = gap;
            if (param > 0) {
                // gaps in the possible set refute the bounded claim
                std::int64_t pgap = possible.members.empty() ? H + 1 : max_gap(possible);
                std::int64_t ptail = possible.censored_tail();
                if (pgap > param || ptail > param) {
                    fv.verdict = Verdict::FailsAtHorizon;
                    fv.statistic = std::max(pgap, ptail);
                    fv.detail = "gap " + std::to_string(fv.statistic) + " exceeds bound " + std::to_string(param);
                    return fv;
                }
                if (gap <= param && tail <= param) {
                    fv.verdict = Verdict::HoldsAtHorizon;
                    fv.detail = "all gaps within bound " + std::to_string(param);
                    return fv;
                }
                fv.verdict = Verdict::Inconclusive;
                fv.detail = "uncertain gaps";
                return fv;
            }
            if (tail <= gap) {
                fv.verdict = Verdict::HoldsAtHorizon;
                fv.detail = "max gap " + std::to_string(gap) + ", censored tail " + std::to_string(tail);
            } else {
                fv.verdict = Verdict::Inconclusive;
                fv.detail = "censored tail " + std::to_string(tail) + " exceeds observed gap bound " +
                            std::to_string(gap);
            }
            return fv;
        }
        case FamilyKind::ThicklySyndetic: {
            std::int64_t nmax = param > 0 ? param : 3;
            std::int64_t worst = 0;
            for (std::int64_t n = 1; n <= nmax; ++n) {
                try {
                    worst = std::max(worst, thickly_syndetic_gap(certain, n));
                } catch (const NoRuns&) {
                    bool certified;
                    try {
                        thickly_syndetic_gap(possible, n);
                        certified = false; // possible has runs, certain does not
                    } catch (const NoRuns&) {
                        certified = true;
                    } catch (const EmptySet&) {
                        certified = true;
                    }
                    fv.verdict = certified ? Verdict::FailsAtHorizon : Verdict::Inconclusive;
                    fv.statistic = n;
                    fv.detail = "no run of length " + std::to_string(n) + " inside the window";
                    return fv;
                } catch (const EmptySet&) {
                    fv.verdict = possible.members.empty() ? Verdict::FailsAtHorizon : Verdict::Inconclusive;
                    fv.detail = "empty set";
                    return fv;
                }
            }
            fv.statistic = worst;
            fv.verdict = Verdict::HoldsAtHorizon;
            fv.detail = "run starts syndetic for N <= " + std::to_string(nmax) + ", worst gap " +
                        std::to_string(worst);
            return fv;
        }
        case FamilyKind::Cofinite: {
            auto m = cofinite_from(certain);
            if (m && *m <= H) {
                fv.verdict = Verdict::HoldsAtHorizon;
                fv.statistic = *m;
                fv.detail = "tail certified from " + std::to_string(*m) + " through " +
                            std::to_string(certain.horizon);
                return fv;
            }
            // a missing element at or beyond H refutes every tail start <= H
            for (std::int64_t n = possible.horizon; n >= H; --n) {
                if (!possible.contains(n)) {
                    fv.verdict = Verdict::FailsAtHorizon;
                    fv.statistic = n;
                    fv.detail = std::to_string(n) + " is certified absent, beyond any candidate tail";
                    return fv;
                }
            }
            fv.verdict = Verdict::Inconclusive;
            fv.detail = "no tail reaches back to the nominal horizon, no certified gap beyond it";
            return fv;
        }
        case FamilyKind::Ip: {
            int depth = param > 0 ? static_cast<int>(param) : 3;
            auto basis = ip_witness(certain, depth, lim);
            if (basis) {
                fv.verdict = Verdict::HoldsAtHorizon;
                fv.statistic = depth;
                fv.ip_basis = basis;
                fv.detail = "depth-" + std::to_string(depth) + " basis found";
            } else {
                fv.verdict = Verdict::Inconclusive;
                fv.statistic = depth;
                fv.detail = "no basis within search bound " + std::to_string(lim.ip_search_bound);
            }
            return fv;
        }
    }
    throw ConfigError("judge_family: unhandled family kind");
}

FamilyVerdict judge_family(const WindowSet& s, FamilyKind kind, std::int64_t nominal_horizon,
                           std::int64_t param, const Limits& lim) {
    return judge_family(s, s, kind, nominal_horizon, param, lim);
}

FamilyTransitivityReport family_transitivity(const SystemSpec& sys, FamilyKind kind, int depth,
                                             std::int64_t horizon, std::int64_t param, const Limits& lim) {
    if (horizon < 0 || horizon > lim.max_horizon) throw BudgetExceeded("horizon outside caps");
    FamilyTransitivityReport rep;
    rep.family = kind;
    rep.depth = depth;
    rep.horizon = horizon;
    rep.probe_horizon =
        kind == FamilyKind::Cofinite ? std::min(lim.max_horizon, horizon * lim.mixing_probe_factor) : horizon;
    auto cells = cell_family(sys, depth, lim);
    if (static_cast<std::int64_t>(cells.size()) * static_cast<std::int64_t>(cells.size()) > lim.max_pairs)
        throw BudgetExceeded("too many cell pairs");
    rep.aggregate = Verdict::HoldsAtHorizon;
    for (const auto& u : cells) {
        for (const auto& v : cells) {
            auto tagged = hitting_set(sys, u, v, rep.probe_horizon, lim);
            FamilyVerdict fv = judge_family(tagged.certain, tagged.possible, kind, horizon, param, lim);
            rep.pairs.push_back({u.describe(), v.describe(), fv});
            if (fv.verdict == Verdict::FailsAtHorizon)
                rep.aggregate = Verdict::FailsAtHorizon;
            else if (fv.verdict == Verdict::Inconclusive && rep.aggregate == Verdict::HoldsAtHorizon)
                rep.aggregate = Verdict::Inconclusive;
        }
    }
    return rep;
}

} // namespace topodyn
