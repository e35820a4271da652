#include "topodyn/diagnostics.hpp"

#include <algorithm>

namespace topodyn {

namespace {

std::string int_str(std::int64_t v) { return std::to_string(v); }

// Peak value reported net of its n=0 baseline: systems that never move a
// quantity above its initial value report 0.
Rat net_of_base(const Rat& raw, const Rat& base) { return raw > base ? raw : Rat(0); }

void set_common_params(DiagnosticVerdict& v, int depth, std::int64_t horizon) {
    v.params["depth"] = int_str(depth);
    v.params["horizon"] = int_str(horizon);
}

// Enumerate index tuples i_1 <= ... <= i_k over {0, ..., m-1}.
template <class F>
void for_each_multiset_tuple(std::size_t m, int k, std::int64_t cap, F&& body) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::int64_t count = 0;
    for (;;) {
        if (++count > cap) throw BudgetExceeded("tuple enumeration exceeds cap");
        body(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - 1) --pos;
        if (pos < 0) return;
        std::size_t v = idx[static_cast<std::size_t>(pos)] + 1;
        for (int i = pos; i < k; ++i) idx[static_cast<std::size_t>(i)] = v;
    }
}

} // namespace

DiagnosticVerdict transitivity_test(const SystemSpec& sys, int depth, std::int64_t horizon,
                                    const Limits& lim) {
    DiagnosticVerdict out;
    out.property = "transitivity";
    set_common_params(out, depth, horizon);
    auto cells = cell_family(sys, depth, lim);
    out.verdict = Verdict::HoldsAtHorizon;
    for (const auto& u : cells) {
        for (const auto& v : cells) {
            auto t = hitting_set(sys, u, v, horizon, lim);
            if (!t.certain.empty()) continue;
            if (t.possible.empty()) {
                out.verdict = Verdict::FailsAtHorizon;
                out.witness = "N(" + u.describe() + "," + v.describe() + ") empty on [0," + int_str(horizon) + "]";
                return out;
            }
            out.verdict = Verdict::Inconclusive;
            out.witness = "only possible hits for (" + u.describe() + "," + v.describe() + ")";
        }
    }
    return out;
}

DiagnosticVerdict weak_mixing_test(const SystemSpec& sys, int depth, std::int64_t horizon,
                                   const Limits& lim) {
    DiagnosticVerdict out;
    out.property = "weak-mixing";
    set_common_params(out, depth, horizon);
    auto cells = cell_family(sys, depth, lim);
    std::vector<TaggedWindowSet> self;
    self.reserve(cells.size());
    for (const auto& u : cells) self.push_back(hitting_set(sys, u, u, horizon, lim));
    out.verdict = Verdict::HoldsAtHorizon;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& v : cells) {
            auto uv = hitting_set(sys, cells[i], v, horizon, lim);
            if (!self[i].certain.intersect(uv.certain).empty()) continue;
            if (self[i].possible.intersect(uv.possible).empty()) {
                out.verdict = Verdict::FailsAtHorizon;
                out.witness = "N(" + cells[i].describe() + "," + cells[i].describe() + ") and N(" +
                              cells[i].describe() + "," + v.describe() + ") are disjoint on [0," +
                              int_str(horizon) + "]";
                return out;
            }
            out.verdict = Verdict::Inconclusive;
            out.witness = "uncertain intersection for U=" + cells[i].describe() + ", V=" + v.describe();
        }
    }
    return out;
}

DiagnosticVerdict mixing_test(const SystemSpec& sys, int depth, std::int64_t horizon, const Limits& lim) {
    DiagnosticVerdict out;
    out.property = "mixing";
    set_common_params(out, depth, horizon);
    auto rep = family_transitivity(sys, FamilyKind::Cofinite, depth, horizon, 0, lim);
    out.params["probe_horizon"] = int_str(rep.probe_horizon);
    out.verdict = rep.aggregate;
    for (const auto& pv : rep.pairs) {
        if (pv.verdict.verdict == Verdict::FailsAtHorizon) {
            out.witness = "N(" + pv.u + "," + pv.v + "): " + pv.verdict.detail;
            break;
        }
        if (pv.verdict.verdict == Verdict::Inconclusive && out.witness.empty())
            out.witness = "N(" + pv.u + "," + pv.v + "): " + pv.verdict.detail;
    }
    return out;
}

namespace {

// d-profile of one cell: certified image diameter at each time.
std::vector<Rat> cell_diam_profile(const SystemSpec& sys, const Cell& c, std::int64_t horizon,
                                   const Limits& lim) {
    std::vector<Rat> prof;
    prof.reserve(static_cast<std::size_t>(horizon + 1));
    for (std::int64_t n = 0; n <= horizon; ++n) prof.push_back(image_diameter_bounds(sys, c, n, lim).lower);
    return prof;
}

std::vector<Rat> point_spread_profile(const SystemSpec& sys, const PointSpec& x, const Cell& c,
                                      std::int64_t horizon) {
    std::vector<Rat> prof;
    prof.reserve(static_cast<std::size_t>(horizon + 1));
    for (std::int64_t n = 0; n <= horizon; ++n) prof.push_back(point_spread(sys, x, c, n));
    return prof;
}

Rat windowed_net_peak(const std::vector<Rat>& prof, std::int64_t lo, std::int64_t hi) {
    Rat raw(0);
    for (std::int64_t n = lo; n <= hi; ++n) raw = max(raw, prof[static_cast<std::size_t>(n)]);
    return net_of_base(raw, prof[0]);
}

// min over tuples of the net peak of the pointwise-min profile
Rat multi_estimate(const std::vector<std::vector<Rat>>& profs, int k, std::int64_t lo, std::int64_t hi,
                   std::int64_t cap) {
    if (profs.empty()) throw SampleTooSmall("no profiles for multi estimate");
    std::optional<Rat> best;
    for_each_multiset_tuple(profs.size(), k, cap, [&](const std::vector<std::size_t>& idx) {
        Rat raw(0);
        for (std::int64_t n = lo; n <= hi; ++n) {
            Rat v = profs[idx[0]][static_cast<std::size_t>(n)];
            for (int i = 1; i < k; ++i) v = min(v, profs[idx[static_cast<std::size_t>(i)]][static_cast<std::size_t>(n)]);
            raw = max(raw, v);
        }
        Rat base = profs[idx[0]][0];
        for (int i = 1; i < k; ++i) base = min(base, profs[idx[static_cast<std::size_t>(i)]][0]);
        Rat val = net_of_base(raw, base);
        if (!best || val < *best) best = val;
    });
    return *best;
}

} // namespace

Rat sensitivity_constant(const SystemSpec& sys, int depth, std::int64_t horizon, const Limits& lim) {
    auto cells = cell_family(sys, depth, lim);
    std::optional<Rat> best;
    for (const auto& c : cells) {
        auto prof = cell_diam_profile(sys, c, horizon, lim);
        Rat v = windowed_net_peak(prof, 0, horizon);
        if (!best || v < *best) best = v;
    }
    if (!best) throw SampleTooSmall("no cells at this depth");
    return *best;
}

DiagnosticVerdict multi_sensitivity_test(const SystemSpec& sys, int k, int depth, const Rat& delta,
                                         std::int64_t horizon, const Limits& lim) {
    if (k < 1) throw ConfigError("multi-sensitivity arity must be positive");
    DiagnosticVerdict out;
    out.property = "multi-sensitivity";
    set_common_params(out, depth, horizon);
    out.params["k"] = int_str(k);
    out.params["delta"] = delta.str();
    auto cells = cell_family(sys, depth, lim);
    std::vector<WindowSet> certain, possible;
    for (const auto& c : cells) {
        auto s = sensitivity_set(sys, c, delta, horizon, lim);
        certain.push_back(std::move(s.certain));
        possible.push_back(std::move(s.possible));
    }
    out.verdict = Verdict::HoldsAtHorizon;
    for_each_multiset_tuple(cells.size(), k, lim.max_tuples, [&](const std::vector<std::size_t>& idx) {
        if (out.verdict == Verdict::FailsAtHorizon) return;
        WindowSet c = certain[idx[0]];
        WindowSet p = possible[idx[0]];
        for (int i = 1; i < k; ++i) {
            c = c.intersect(certain[idx[static_cast<std::size_t>(i)]]);
            p = p.intersect(possible[idx[static_cast<std::size_t>(i)]]);
        }
        if (!c.empty()) return;
        std::string tuple;
        for (int i = 0; i < k; ++i)
            tuple += (i ? "," : "") + cells[idx[static_cast<std::size_t>(i)]].describe();
        if (p.empty()) {
            out.verdict = Verdict::FailsAtHorizon;
            out.witness = "S_T intersection empty for (" + tuple + ")";
        } else if (out.verdict == Verdict::HoldsAtHorizon) {
            out.verdict = Verdict::Inconclusive;
            out.witness = "uncertain intersection for (" + tuple + ")";
        }
    });
    return out;
}

ThickSensitivityProfile thick_sensitivity_profile(const SystemSpec& sys, int depth, const Rat& delta,
                                                  std::int64_t horizon, const Limits& lim) {
    ThickSensitivityProfile out;
    out.params.horizon = horizon;
    out.params.depth = depth;
    out.params.delta = delta;
    auto cells = cell_family(sys, depth, lim);
    bool first = true;
    for (const auto& c : cells) {
        auto s = sensitivity_set(sys, c, delta, horizon, lim);
        std::int64_t run = max_run(s.certain);
        out.max_runs.emplace_back(c.describe(), run);
        if (first || run < out.min_run) out.min_run = run;
        first = false;
    }
    return out;
}

LyapunovReport lyapunov_numbers(const SystemSpec& sys, int depth, std::int64_t horizon,
                                std::int64_t burn_in, int multi_arity,
                                const std::vector<PointSpec>& sample, const Limits& lim) {
    if (multi_arity < 2) throw ConfigError("multi estimates need arity >= 2");
    if (burn_in < 0 || burn_in > horizon) throw ConfigError("burn-in outside [0, horizon]");
    auto cells = cell_family(sys, depth, lim);
    if (cells.empty()) throw SampleTooSmall("no admissible cells");

    // augment the sample with one canonical point per cell: every d-witness
    // cell then carries an r-witness point, which is what certifies the chain
    std::vector<PointSpec> points = sample;
    for (const auto& c : cells) points.push_back(canonical_point(sys, c));

    std::vector<std::vector<Rat>> d_profs;
    for (const auto& c : cells) d_profs.push_back(cell_diam_profile(sys, c, horizon, lim));
    std::vector<std::vector<Rat>> r_profs;
    for (const auto& x : points) {
        Cell home = cell_of(sys, x, depth);
        r_profs.push_back(point_spread_profile(sys, x, home, horizon));
    }

    LyapunovReport rep;
    rep.depth = depth;
    rep.horizon = horizon;
    rep.burn_in = burn_in;
    rep.multi_arity = multi_arity;
    rep.sample_size = points.size();

    auto min_over = [&](const std::vector<std::vector<Rat>>& profs, std::int64_t lo, std::int64_t hi) {
        std::optional<Rat> best;
        for (const auto& p : profs) {
            Rat v = windowed_net_peak(p, lo, hi);
            if (!best || v < *best) best = v;
        }
        return *best;
    };

    rep.l_r = min_over(r_profs, 0, horizon);
    rep.l_r_bar = min_over(r_profs, burn_in, horizon);
    rep.l_d = min_over(d_profs, 0, horizon);
    rep.l_d_bar = min_over(d_profs, burn_in, horizon);
    rep.l_mr = multi_estimate(r_profs, multi_arity, 0, horizon, lim.max_tuples);
    rep.l_mr_bar = multi_estimate(r_profs, multi_arity, burn_in, horizon, lim.max_tuples);
    rep.l_md = multi_estimate(d_profs, multi_arity, 0, horizon, lim.max_tuples);
    rep.l_md_bar = multi_estimate(d_profs, multi_arity, burn_in, horizon, lim.max_tuples);

    struct Claim {
        const char* text;
        bool ok;
    };
    Claim claims[] = {
        {"L_md >= L_mr", rep.l_md >= rep.l_mr},
        {"L_mr >= L_mr_bar", rep.l_mr >= rep.l_mr_bar},
        {"L_md >= L_md_bar", rep.l_md >= rep.l_md_bar},
        {"L_md_bar >= L_mr_bar", rep.l_md_bar >= rep.l_mr_bar},
    };
    for (const auto& c : claims) {
        if (!c.ok) throw Error(std::string("estimator chain violated: ") + c.text);
        rep.certified_relations.push_back(c.text);
    }
    Rat diam = sys.metric().diameter;
    for (const Rat* v : {&rep.l_r, &rep.l_r_bar, &rep.l_d, &rep.l_d_bar, &rep.l_mr, &rep.l_mr_bar,
                         &rep.l_md, &rep.l_md_bar}) {
        if (*v < Rat(0) || *v > diam) throw Error("estimate outside [0, diameter]");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// structured candidate families

namespace {

// Admissibility of prefix + period^infinity in a subshift.
bool eventually_periodic_admissible(const SystemSpec& sys, const SubshiftOracle& oracle, const Word& pre,
                                    const Word& per) {
    if (sys.as<FullShiftSys>()) return true;
    if (sys.as<DiffSetSys>()) {
        // decidable only for an all-zero period (finitely many ones)
        for (Sym c : per)
            if (c != 0) return false;
        return oracle.word_admissible(pre);
    }
    // SFT: read the period until the transfer context stabilizes
    int ctx = std::max(1, oracle.context());
    Word w = pre;
    for (int i = 0; i < 2 * ctx + 4; ++i) w.insert(w.end(), per.begin(), per.end());
    return oracle.word_admissible(w);
}

// y = x with one symbol changed at j; admissible iff the difference-set or
// forbidden-word constraints around j survive.
std::optional<PointSpec> flipped_point(const SystemSpec& sys, const SubshiftOracle& oracle,
                                       const PointSpec& x, std::int64_t j, Sym c,
                                       std::int64_t materialize_to) {
    if (x.symbol_at(j) == c) return std::nullopt;
    Word w;
    for (std::int64_t i = 0; i <= std::max(j, materialize_to); ++i) w.push_back(x.symbol_at(i));
    w[static_cast<std::size_t>(j)] = c;

    if (sys.as<DiffSetSys>()) {
        // require an eventually-zero tail so the pair constraints stay finite
        auto ep = x.as<EventuallyPeriodicPoint>();
        if (!ep) return std::nullopt;
        for (Sym s : ep->period)
            if (s != 0) return std::nullopt;
        Word full = ep->preperiod;
        if (static_cast<std::int64_t>(full.size()) <= j) full.resize(static_cast<std::size_t>(j + 1), 0);
        full[static_cast<std::size_t>(j)] = c;
        if (!oracle.word_admissible(full)) return std::nullopt;
        return PointSpec::eventually_periodic(full, Word{0});
    }
    if (sys.as<SftSys>()) {
        if (!oracle.word_admissible(w)) return std::nullopt;
        // the tail beyond the materialized window is x's own, which is valid;
        // junction factors are inside w as long as j is far from its end
        auto ep = x.as<EventuallyPeriodicPoint>();
        if (!ep) return std::nullopt;
        Word pre = w;
        Word per = ep->period;
        std::int64_t pre_len = static_cast<std::int64_t>(pre.size());
        std::int64_t x_pre = static_cast<std::int64_t>(ep->preperiod.size());
        // align the period phase
        std::int64_t phase = pre_len >= x_pre ? (pre_len - x_pre) % static_cast<std::int64_t>(per.size()) : 0;
        Word rot;
        for (std::size_t i = 0; i < per.size(); ++i)
            rot.push_back(per[(static_cast<std::size_t>(phase) + i) % per.size()]);
        if (!eventually_periodic_admissible(sys, oracle, pre, rot)) return std::nullopt;
        return PointSpec::eventually_periodic(pre, rot);
    }
    // full shift
    auto ep = x.as<EventuallyPeriodicPoint>();
    if (ep) {
        Word pre = ep->preperiod;
        if (static_cast<std::int64_t>(pre.size()) <= j) {
            Word per = ep->period;
            std::int64_t x_pre = static_cast<std::int64_t>(pre.size());
            while (static_cast<std::int64_t>(pre.size()) <= j)
                pre.push_back(per[static_cast<std::size_t>((pre.size() - x_pre) % per.size())]);
            std::int64_t phase = (static_cast<std::int64_t>(pre.size()) - x_pre) % static_cast<std::int64_t>(per.size());
            Word rot;
            for (std::size_t i = 0; i < per.size(); ++i)
                rot.push_back(per[(static_cast<std::size_t>(phase) + i) % per.size()]);
            pre[static_cast<std::size_t>(j)] = c;
            return PointSpec::eventually_periodic(pre, rot);
        }
        pre[static_cast<std::size_t>(j)] = c;
        return PointSpec::eventually_periodic(pre, ep->period);
    }
    return std::nullopt;
}

// Deterministic candidate partners inside x's depth-cell.
std::vector<PointSpec> liyorke_candidates(const SystemSpec& sys, const PointSpec& x, int depth,
                                          std::int64_t horizon, std::int64_t burn_in, const Limits& lim) {
    std::vector<PointSpec> out;
    if (sys.is_subshift()) {
        SubshiftOracle oracle(sys);
        Word head;
        for (int i = 0; i < depth; ++i) head.push_back(x.symbol_at(i));
        // bounded-period tails
        for (int plen = 1; plen <= 2; ++plen) {
            Word per(static_cast<std::size_t>(plen), 0);
            for (;;) {
                if (eventually_periodic_admissible(sys, oracle, head, per))
                    out.push_back(PointSpec::eventually_periodic(head, per));
                // next period word
                int pos = plen - 1;
                while (pos >= 0 && per[static_cast<std::size_t>(pos)] == oracle.alphabet() - 1) --pos;
                if (pos < 0) break;
                ++per[static_cast<std::size_t>(pos)];
                for (int i = pos + 1; i < plen; ++i) per[static_cast<std::size_t>(i)] = 0;
            }
        }
        // single-site perturbations, late sites first reach the burn-in window
        std::int64_t lo = std::max<std::int64_t>(depth, burn_in);
        for (std::int64_t j = lo; j < horizon; ++j) {
            for (Sym c = 0; c < oracle.alphabet(); ++c) {
                auto y = flipped_point(sys, oracle, x, j, c, horizon + 2);
                if (y) out.push_back(std::move(*y));
            }
            if (static_cast<std::int64_t>(out.size()) > lim.max_cells) break;
        }
        return out;
    }
    if (sys.as<RotationSys>() || sys.as<SkewProductSys>() || sys.as<ProximalCircleSys>()) {
        auto tp = x.as<TorusPoint>();
        if (!tp) throw ConfigError("metric system expects a torus point");
        for (int k = 1; k <= lim.candidate_offset_max; ++k) {
            for (std::size_t axis = 0; axis < tp->coords.size(); ++axis) {
                for (int sign = 0; sign < 2; ++sign) {
                    auto coords = tp->coords;
                    Rat off = dyadic(depth + k);
                    coords[axis] = (coords[axis] + (sign ? -off : off)).mod1();
                    out.push_back(PointSpec::torus(coords));
                }
            }
        }
        return out;
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto wp = x.as<WedgePoint>();
        if (!wp) throw SideMismatch("wedge system expects a wedge point");
        auto inner = liyorke_candidates(*wg->side, *wp->inner, depth, horizon, burn_in, lim);
        for (auto& y : inner) out.push_back(PointSpec::wedge(wp->side, std::move(y)));
        return out;
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pp = x.as<ProductPoint>();
        if (!pp) throw ConfigError("product system expects a product point");
        auto lefts = liyorke_candidates(*pr->left, *pp->left, depth, horizon, burn_in, lim);
        for (auto& l : lefts) out.push_back(PointSpec::product(std::move(l), *pp->right));
        auto rights = liyorke_candidates(*pr->right, *pp->right, depth, horizon, burn_in, lim);
        for (auto& r : rights) out.push_back(PointSpec::product(*pp->left, std::move(r)));
        return out;
    }
    throw ConfigError("li_yorke candidates: unhandled system kind");
}

} // namespace

std::optional<LiYorkeWitness> li_yorke_search(const SystemSpec& sys, const PointSpec& x, int depth,
                                              const Rat& delta, std::int64_t horizon, std::int64_t burn_in,
                                              const Rat& eps_prox, const Limits& lim) {
    if (!(delta > Rat(0)) || !(delta < sys.metric().diameter)) throw BadDelta("delta outside (0, diameter)");
    Cell home = cell_of(sys, x, depth);
    for (const auto& y : liyorke_candidates(sys, x, depth, horizon, burn_in, lim)) {
        if (!point_in_cell(sys, y, home)) continue;
        if (points_equal(sys, x, y)) continue;
        // self-validating direct orbit scan
        PointSpec cx = evaluate(sys, x, burn_in);
        PointSpec cy = evaluate(sys, y, burn_in);
        Rat mind = sys.metric().diameter, maxd(0);
        for (std::int64_t n = burn_in; n <= horizon; ++n) {
            Rat d = distance(sys, cx, cy);
            mind = min(mind, d);
            maxd = max(maxd, d);
            if (n < horizon) {
                cx = evaluate(sys, cx, 1);
                cy = evaluate(sys, cy, 1);
            }
        }
        if (mind < eps_prox && maxd > delta) return LiYorkeWitness{y, mind, maxd};
    }
    return std::nullopt;
}

std::optional<std::int64_t> syndetic_equicontinuity(const SystemSpec& sys, const PointSpec& x,
                                                    const Rat& eps, int depth, std::int64_t horizon,
                                                    const Limits& lim) {
    Cell home = cell_of(sys, x, depth);
    std::vector<std::int64_t> a;
    for (std::int64_t n = 0; n <= horizon; ++n) {
        if (image_diameter_bounds(sys, home, n, lim).upper <= eps) a.push_back(n);
    }
    if (a.empty()) return std::nullopt;
    auto ws = WindowSet::of(horizon, std::move(a));
    std::int64_t gap = max_gap(ws);
    if (ws.censored_tail() > gap) return std::nullopt; // window edge breaks the evidence
    return gap;
}

ProximalSearchReport proximal_partner_search(const SystemSpec& sys, const PointSpec& x, int depth,
                                             const Rat& eps, std::int64_t horizon, const Limits& lim) {
    ProximalSearchReport rep;
    auto cells = cell_family(sys, depth, lim);
    auto children = cell_family(sys, depth + 1, lim);

    // shortlist per cell: the canonical point, canonical points of its
    // refinements (these differ from x inside x's own cell), plus (for
    // subshifts) the graft that copies x beyond the cell word
    for (const auto& c : cells) {
        ++rep.cells_tested;
        std::vector<PointSpec> cand;
        cand.push_back(canonical_point(sys, c));
        for (const auto& child : children) {
            auto pt = canonical_point(sys, child);
            if (point_in_cell(sys, pt, c)) cand.push_back(std::move(pt));
        }
        if (sys.is_subshift()) {
            if (auto ep = x.as<EventuallyPeriodicPoint>()) {
                const Word& w = c.as<SubshiftCell>()->word;
                Word pre = w;
                std::int64_t x_pre = static_cast<std::int64_t>(ep->preperiod.size());
                std::int64_t start = static_cast<std::int64_t>(w.size());
                Word per = ep->period;
                std::int64_t phase = start >= x_pre ? (start - x_pre) % static_cast<std::int64_t>(per.size()) : 0;
                if (start < x_pre)
                    pre.insert(pre.end(), ep->preperiod.begin() + static_cast<std::ptrdiff_t>(start),
                               ep->preperiod.end());
                Word rot;
                for (std::size_t i = 0; i < per.size(); ++i)
                    rot.push_back(per[(static_cast<std::size_t>(phase) + i) % per.size()]);
                SubshiftOracle oracle(sys);
                if (eventually_periodic_admissible(sys, oracle, pre, rot) &&
                    oracle.word_admissible(pre))
                    cand.push_back(PointSpec::eventually_periodic(pre, rot));
            }
        }
        bool found = false;
        for (const auto& y : cand) {
            if (!point_in_cell(sys, y, c)) continue;
            if (points_equal(sys, x, y)) continue;
            PointSpec cx = x, cy = y;
            for (std::int64_t n = 0; n <= horizon && !found; ++n) {
                if (distance(sys, cx, cy) < eps) found = true;
                if (n < horizon) {
                    cx = evaluate(sys, cx, 1);
                    cy = evaluate(sys, cy, 1);
                }
            }
            if (found) break;
        }
        if (found) ++rep.cells_with_witness;
    }
    rep.fraction = rep.cells_tested == 0
                       ? 0.0
                       : static_cast<double>(rep.cells_with_witness) / static_cast<double>(rep.cells_tested);
    return rep;
}

} // namespace topodyn
