#include "topodyn/hitting.hpp"

#include <algorithm>

namespace topodyn {

namespace {

// Overlap of the half-open circle interval [lo, lo+len) (len may exceed 1)
// with the half-open arc [v, v+s).
bool span_overlaps_arc(const Rat& lo, const Rat& len, const Rat& v, const Rat& s) {
    if (len <= Rat(0)) return false;
    if (len >= Rat(1)) return true;
    Rat rel = (lo - v).mod1();
    return rel < s || rel + len > Rat(1);
}

struct ProxArcImage {
    Rat lo;
    Rat hi;          // lift endpoints, lo <= hi
    bool closed_hi;  // right endpoint attained
};

Rat prox_step_lift(const Rat& x) {
    if (x <= Rat(1, 2)) {
        Rat y = x - Rat(1, 8);
        return y < Rat(0) ? Rat(0) : y;
    }
    return (x * Rat(5) - Rat(1)) / Rat(4);
}

// Forward image of a cell arc under n steps of the proximal circle map.
ProxArcImage prox_arc_image(Rat a, Rat b, std::int64_t n) {
    ProxArcImage img{a, b, false};
    for (std::int64_t i = 0; i < n; ++i) {
        Rat na = prox_step_lift(img.lo);
        Rat nb = prox_step_lift(img.hi);
        // right end attained when the map is constant just left of hi
        bool plateau = img.hi > Rat(0) && img.hi <= Rat(1, 8);
        img.closed_hi = img.closed_hi || plateau || na == nb;
        img.lo = na;
        img.hi = nb;
        if (na == nb) img.closed_hi = true;
    }
    return img;
}

bool subshift_hit_range(const SystemSpec& sys, const SubshiftOracle& oracle, const Word& u, const Word& v,
                        std::int64_t n) {
    (void)sys;
    return oracle.hit(u, v, n);
}

struct SkewCell {
    Rat a1, a2, s;
};

SkewCell skew_cell(const BoxCell& b) {
    Rat s = dyadic(b.resolution);
    std::int64_t den = static_cast<std::int64_t>(1) << b.resolution;
    return {Rat(b.corner[0], den), Rat(b.corner[1], den), s};
}

bool skew_hit(const Rat& alpha, const BoxCell& ub, const BoxCell& vb, std::int64_t n) {
    SkewCell u = skew_cell(ub), v = skew_cell(vb);
    // x-coordinate: t = x - u.a1 in [0, u.s) must satisfy x + n a in [v.a1, v.a1+v.s)
    Rat c = (v.a1 - alpha * Rat(n) - u.a1).mod1();
    // t-windows: [c, c+v.s) and its wrap [c-1, c-1+v.s), intersected with [0, u.s)
    struct Piece {
        Rat lo, hi;
    };
    std::vector<Piece> pieces;
    {
        Rat lo = c, hi = c + v.s;
        lo = max(lo, Rat(0));
        hi = min(hi, u.s);
        if (lo < hi) pieces.push_back({lo, hi});
    }
    {
        Rat lo = c - Rat(1), hi = c - Rat(1) + v.s;
        lo = max(lo, Rat(0));
        hi = min(hi, u.s);
        if (lo < hi) pieces.push_back({lo, hi});
    }
    if (pieces.empty()) return false;
    // y-coordinate: n(u.a1 + t) + n(n-1)/2 a + (u.a2 + [0, u.s)) mod 1 in [v.a2, v.a2+v.s)
    Rat k = Rat(n) * u.a1 + Rat(n) * Rat(n - 1) / Rat(2) * alpha + u.a2;
    for (const auto& piece : pieces) {
        Rat lo = Rat(n) * piece.lo + k;
        Rat len = Rat(n) * (piece.hi - piece.lo) + u.s;
        if (span_overlaps_arc(lo.mod1(), len, v.a2, v.s)) return true;
    }
    return false;
}

Arc box_arc(const BoxCell& b) {
    return Arc{Rat(b.corner[0], static_cast<std::int64_t>(1) << b.resolution), dyadic(b.resolution)};
}

} // namespace

// Decide n in N_T(U, V) for one n; exact for every supported system kind.
static bool hit_at(const SystemSpec& sys, const Cell& u, const Cell& v, std::int64_t n,
                   const SubshiftOracle* oracle) {
    if (sys.is_subshift()) {
        return subshift_hit_range(sys, *oracle, u.as<SubshiftCell>()->word, v.as<SubshiftCell>()->word, n);
    }
    if (auto rot = sys.as<RotationSys>()) {
        Arc ua = box_arc(*u.as<BoxCell>());
        Arc va = box_arc(*v.as<BoxCell>());
        Arc moved{(ua.lo + rot->alpha * Rat(n)).mod1(), ua.len};
        return arcs_overlap(moved, va);
    }
    if (auto sk = sys.as<SkewProductSys>()) {
        return skew_hit(sk->alpha, *u.as<BoxCell>(), *v.as<BoxCell>(), n);
    }
    if (sys.as<ProximalCircleSys>()) {
        Arc ua = box_arc(*u.as<BoxCell>());
        Arc va = box_arc(*v.as<BoxCell>());
        auto img = prox_arc_image(ua.lo, ua.lo + ua.len, n);
        if (span_overlaps_arc(img.lo.mod1(), img.hi - img.lo, va.lo, va.len)) return true;
        return img.closed_hi && va.contains(img.hi.mod1());
    }
    throw ConfigError("hit_at: unhandled system kind");
}

TaggedWindowSet hitting_set(const SystemSpec& sys, const Cell& u, const Cell& v, std::int64_t horizon,
                            const Limits& lim) {
    if (horizon < 0 || horizon > lim.max_horizon) throw BudgetExceeded("horizon outside caps");
    if (!cell_admissible(sys, u) || !cell_admissible(sys, v))
        throw InadmissibleCell("hitting set over an inadmissible cell");

    SetParams params;
    params.horizon = horizon;

    if (auto wg = sys.as<WedgeSys>()) {
        auto uw = u.as_wedge();
        auto vw = v.as_wedge();
        if (!uw || !vw) throw ConfigError("wedge hitting needs wedge cells");
        if (!wg->side->is_subshift())
            throw ConfigError("wedge hitting supported for subshift sides only");
        SubshiftOracle oracle(*wg->side);
        const Word& w1 = uw->inner.as<SubshiftCell>()->word;
        const Word& w2 = vw->inner.as<SubshiftCell>()->word;
        bool glue_in_v = point_in_cell(*wg->side, *wg->glue, vw->inner);
        // the glue-mediated route is decidable when the glue is the all-zero
        // point; other glues would need an unbounded constraint
        bool glue_is_zero = false;
        if (auto ep = wg->glue->as<EventuallyPeriodicPoint>()) {
            glue_is_zero = true;
            for (Sym s : ep->preperiod) glue_is_zero = glue_is_zero && s == 0;
            for (Sym s : ep->period) glue_is_zero = glue_is_zero && s == 0;
        }
        if (glue_in_v && !glue_is_zero)
            throw ConfigError("wedge hitting needs an all-zero glue when the target contains it");
        int want_parity = uw->side == vw->side ? 0 : 1;
        std::vector<std::int64_t> mem;
        for (std::int64_t n = 0; n <= horizon; ++n) {
            bool in = false;
            if (n % 2 == want_parity && oracle.hit(w1, w2, n)) in = true;
            if (!in && glue_in_v && oracle.hits_zero_tail(w1, n)) in = true;
            if (in) mem.push_back(n);
        }
        auto ws = WindowSet::of(horizon, std::move(mem));
        return {ws, ws, params};
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto up = u.as_product();
        auto vp = v.as_product();
        auto l = hitting_set(*pr->left, up->left, vp->left, horizon, lim);
        auto r = hitting_set(*pr->right, up->right, vp->right, horizon, lim);
        TaggedWindowSet out;
        out.certain = l.certain.intersect(r.certain);
        out.possible = l.possible.intersect(r.possible);
        out.params = params;
        return out;
    }

    std::optional<SubshiftOracle> oracle;
    if (sys.is_subshift()) oracle.emplace(sys);
    std::vector<std::int64_t> mem;
    for (std::int64_t n = 0; n <= horizon; ++n)
        if (hit_at(sys, u, v, n, oracle ? &*oracle : nullptr)) mem.push_back(n);
    auto ws = WindowSet::of(horizon, std::move(mem));
    return {ws, ws, params};
}

WindowSet visit_set(const SystemSpec& sys, const PointSpec& x, const Cell& g, std::int64_t horizon,
                    const Limits& lim) {
    if (horizon < 0 || horizon > lim.max_horizon) throw BudgetExceeded("horizon outside caps");
    if (!cell_admissible(sys, g)) throw InadmissibleCell("visit set into an inadmissible cell");
    std::vector<std::int64_t> mem;
    PointSpec cur = x;
    for (std::int64_t n = 0; n <= horizon; ++n) {
        if (point_in_cell(sys, cur, g)) mem.push_back(n);
        if (n < horizon) cur = evaluate(sys, cur, 1);
    }
    return WindowSet::of(horizon, std::move(mem));
}

TaggedWindowSet sensitivity_set(const SystemSpec& sys, const Cell& u, const Rat& delta,
                                std::int64_t horizon, const Limits& lim) {
    if (horizon < 0 || horizon > lim.max_horizon) throw BudgetExceeded("horizon outside caps");
    if (!(delta > Rat(0)) || !(delta < sys.metric().diameter))
        throw BadDelta("delta must lie in (0, diameter)");
    if (!cell_admissible(sys, u)) throw InadmissibleCell("sensitivity set over an inadmissible cell");

    SetParams params;
    params.horizon = horizon;
    params.delta = delta;

    if (auto wg = sys.as<WedgeSys>()) {
        // pairs inside a wedge cell evolve on a common side; the spread is the
        // side system's
        auto inner = sensitivity_set(*wg->side, u.as_wedge()->inner, delta, horizon, lim);
        inner.params = params;
        return inner;
    }

    std::vector<std::int64_t> certain, possible;
    if (sys.is_subshift()) {
        SubshiftOracle oracle(sys);
        const Word& w = u.as<SubshiftCell>()->word;
        int L = separation_window(delta);
        for (std::int64_t n = 0; n <= horizon; ++n) {
            bool in = false;
            for (std::int64_t j = n; j <= n + L && !in; ++j)
                if (oracle.branches_at(w, j)) in = true;
            if (in) {
                certain.push_back(n);
                possible.push_back(n);
            }
        }
    } else {
        for (std::int64_t n = 0; n <= horizon; ++n) {
            auto d = image_diameter_bounds(sys, u, n, lim);
            if (d.lower > delta) {
                certain.push_back(n);
                possible.push_back(n);
            } else if (d.upper > delta) {
                possible.push_back(n);
            }
        }
    }
    return {WindowSet::of(horizon, std::move(certain)), WindowSet::of(horizon, std::move(possible)), params};
}

CellSetApprox omega_limit_approx(const SystemSpec& sys, const PointSpec& x, int depth,
                                 std::int64_t horizon, const Limits& lim) {
    auto cells = cell_family(sys, depth, lim);
    std::int64_t burn = horizon / 2;
    std::vector<bool> seen(cells.size(), false);
    PointSpec cur = evaluate(sys, x, burn);
    for (std::int64_t n = burn; n <= horizon; ++n) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!seen[i] && point_in_cell(sys, cur, cells[i])) seen[i] = true;
        if (n < horizon) cur = evaluate(sys, cur, 1);
    }
    CellSetApprox out;
    out.params.horizon = horizon;
    out.params.depth = depth;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (seen[i]) out.cells.push_back(cells[i]);
    return out;
}

CellSetApprox omega_nt_approx(const SystemSpec& sys, const PointSpec& x, int depth, std::int64_t horizon,
                              std::int64_t pair_budget, const Limits& lim) {
    if (pair_budget < 1) throw ConfigError("pair budget must be positive");
    auto cells = cell_family(sys, depth, lim);
    auto omega_t = omega_limit_approx(sys, x, depth, horizon, lim);

    // visit sets for the omega_T survivors only: omega_NT sits inside omega_T
    std::vector<WindowSet> visits;
    visits.reserve(omega_t.cells.size());
    for (const auto& g : omega_t.cells) visits.push_back(visit_set(sys, x, g, horizon, lim));

    std::vector<bool> alive(omega_t.cells.size(), true);
    std::int64_t used = 0;
    for (const auto& u : cells) {
        for (const auto& v : cells) {
            if (used >= pair_budget) break;
            ++used;
            auto n_uv = hitting_set(sys, u, v, horizon, lim);
            for (std::size_t i = 0; i < omega_t.cells.size(); ++i) {
                if (!alive[i]) continue;
                if (visits[i].intersect(n_uv.certain).empty()) alive[i] = false;
            }
        }
        if (used >= pair_budget) break;
    }

    CellSetApprox out;
    out.params.horizon = horizon;
    out.params.depth = depth;
    out.params.pair_budget = used;
    for (std::size_t i = 0; i < omega_t.cells.size(); ++i)
        if (alive[i]) out.cells.push_back(omega_t.cells[i]);
    return out;
}

TransitiveCompactReport transitive_compact_evidence(const SystemSpec& sys,
                                                    const std::vector<PointSpec>& sample, int depth,
                                                    std::int64_t horizon, std::int64_t pair_budget,
                                                    const Limits& lim) {
    TransitiveCompactReport rep;
    rep.params.horizon = horizon;
    rep.params.depth = depth;
    rep.params.pair_budget = pair_budget;
    bool all_nonempty = true;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        auto approx = omega_nt_approx(sys, sample[i], depth, horizon, pair_budget, lim);
        bool nonempty = !approx.cells.empty();
        all_nonempty = all_nonempty && nonempty;
        rep.points.push_back({i, nonempty, static_cast<std::int64_t>(approx.cells.size())});
    }
    rep.verdict = all_nonempty ? "consistent-with-transitive-compact" : "refuted-at-parameters";
    return rep;
}

} // namespace topodyn
