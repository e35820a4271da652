// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "topodyn/constructions.hpp"
#include "topodyn/diagnostics.hpp"
#include "topodyn/entropy.hpp"
#include "topodyn/serialize.hpp"

using namespace topodyn;

namespace {

int failures = 0;
std::vector<std::string> notes;

void require(bool cond, const std::string& what) {
    if (!cond) {
        notes.push_back("  failed: " + what);
        ++failures;
    }
}

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<void()>& body) {
    int before = failures;
    notes.clear();
    auto t0 = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        ++failures;
        notes.push_back(std::string("  exception: ") + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    if (budget_seconds > 0 && secs >= budget_seconds) {
        ++failures;
        notes.push_back("  runtime " + std::to_string(secs) + "s exceeds budget " +
                        std::to_string(budget_seconds) + "s");
    }
    bool ok = failures == before;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " [" << secs << "s]";
    std::cout << line.str() << "\n";
    for (const auto& n : notes) std::cout << n << "\n";
}

struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 11;
    }
    std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n)); }
};

std::vector<Word> words_up_to(int maxlen) {
    std::vector<Word> out;
    for (int len = 1; len <= maxlen; ++len) {
        for (int mask = 0; mask < (1 << len); ++mask) {
            Word w;
            for (int i = len - 1; i >= 0; --i) w.push_back(static_cast<Sym>((mask >> i) & 1));
            out.push_back(w);
        }
    }
    return out;
}

// Brute-force full-shift oracles over bit-packed binary words
// (bit i = symbol at position i).
std::uint32_t pack(const Word& w) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) bits |= (1u << i);
    return bits;
}

bool brute_hit(const Word& u, const Word& v, std::int64_t n) {
    std::int64_t len = std::max<std::int64_t>(static_cast<std::int64_t>(u.size()),
                                              n + static_cast<std::int64_t>(v.size()));
    std::int64_t free_bits = len - static_cast<std::int64_t>(u.size());
    std::uint32_t ubits = pack(u);
    std::uint32_t vbits = pack(v);
    std::uint32_t vmask = (1u << v.size()) - 1;
    for (std::uint32_t mask = 0; mask < (1u << free_bits); ++mask) {
        std::uint32_t w = ubits | (mask << u.size());
        if (((w >> n) & vmask) == vbits) return true;
    }
    return false;
}

bool brute_sensitive(const Word& u, std::int64_t n, int L) {
    // two extensions of u, each of length n+L+1, differing inside [n, n+L]
    std::int64_t len = std::max<std::int64_t>(static_cast<std::int64_t>(u.size()), n + L + 1);
    std::int64_t free_bits = len - static_cast<std::int64_t>(u.size());
    std::uint32_t ubits = pack(u);
    std::uint32_t wmask = ((1u << (L + 1)) - 1) << n;
    bool have_first = false;
    std::uint32_t first = 0;
    for (std::uint32_t mask = 0; mask < (1u << free_bits); ++mask) {
        std::uint32_t win = (ubits | (mask << u.size())) & wmask;
        if (!have_first) {
            first = win;
            have_first = true;
        } else if (win != first) {
            return true;
        }
    }
    return false;
}

} // namespace

int main() {
    // 1. exact agreement of the set computations with brute-force word
    //    enumeration on the full 2-shift
    criterion(1, "hitting and sensitivity sets match brute force (depth <= 3, H <= 20)", 10.0, [] {
        auto fs = SystemSpec::full_shift(2);
        const std::int64_t H = 20;
        auto words = words_up_to(3);
        for (const auto& u : words) {
            for (const auto& v : words) {
                auto t = hitting_set(fs, Cell::cylinder(u), Cell::cylinder(v), H);
                require(t.certain.members == t.possible.members, "hitting certain == possible");
                for (std::int64_t n = 0; n <= H; ++n) {
                    if (t.certain.contains(n) != brute_hit(u, v, n)) {
                        require(false, "hitting mismatch at u=" + word_to_string(u) + " v=" + word_to_string(v) +
                                           " n=" + std::to_string(n));
                        return;
                    }
                }
            }
        }
        for (const auto& u : words) {
            for (const Rat& delta : {Rat(1, 2), Rat(3, 10)}) {
                int L = separation_window(delta);
                auto s = sensitivity_set(fs, Cell::cylinder(u), delta, H);
                for (std::int64_t n = 0; n <= H; ++n) {
                    if (s.certain.contains(n) != brute_sensitive(u, n, L)) {
                        require(false, "sensitivity mismatch at u=" + word_to_string(u) +
                                           " delta=" + delta.str() + " n=" + std::to_string(n));
                        return;
                    }
                }
            }
        }
    });

    // 2. the explicit construction verifies arithmetically, with exact traces
    criterion(2, "newprop verification with exact big-integer traces", 1.0, [] {
        auto v = verify_newprop(10, 5);
        require(v.verdict.verdict == Verdict::HoldsAtHorizon, "verify_newprop(10,5) holds");
        require(v.trace.size() == 5, "full trace recorded");
        require(v.trace[0].find("V=100000000000000000000012") != std::string::npos,
                "V(1) = 10^23 + 12 in trace");
        require(v.trace[0].find("I(m)=[100000000000000000000011, 100000000000000000000011]") !=
                    std::string::npos,
                "I(23) is the single point 10^23 + 11");
        auto bad = verify_newprop(10, 5, true);
        require(bad.verdict.verdict == Verdict::FailsAtHorizon, "mutated control fails");
    });

    // 3. the transitivity hierarchy separates the three fixtures
    criterion(3, "mixing / weak mixing / transitivity across fixtures", 60.0, [] {
        auto fs = SystemSpec::full_shift(2);
        require(mixing_test(fs, 2, 64).verdict == Verdict::HoldsAtHorizon, "full shift mixing");
        require(weak_mixing_test(fs, 2, 64).verdict == Verdict::HoldsAtHorizon, "full shift weak mixing");
        require(transitivity_test(fs, 2, 64).verdict == Verdict::HoldsAtHorizon, "full shift transitive");

        auto lp = lambda_p(pspec_squares());
        require(weak_mixing_test(lp, 2, 200).verdict == Verdict::HoldsAtHorizon,
                "thick difference set weakly mixing at depth 2, H=200");
        auto lpm = mixing_test(lp, 2, 200);
        require(lpm.verdict == Verdict::FailsAtHorizon, "thick difference set not mixing");
        require(!lpm.witness.empty(), "mixing failure carries a certified witness");

        auto rot = SystemSpec::rotation(Rat(610, 987));
        require(transitivity_test(rot, 3, 1000).verdict == Verdict::HoldsAtHorizon, "rotation transitive");
        require(weak_mixing_test(rot, 3, 1000).verdict == Verdict::FailsAtHorizon,
                "rotation not weakly mixing");
    });

    // 4. the eight estimators at the pinned parameters
    criterion(4, "lyapunov estimates: full shift all 1.0, rotation all 0", 30.0, [] {
        auto fs = SystemSpec::full_shift(2);
        auto rep = lyapunov_numbers(fs, 3, 16, 8, 3, {});
        for (const auto& [name, value] :
             std::vector<std::pair<std::string, Rat>>{{"L_r", rep.l_r},
                                                      {"L_r_bar", rep.l_r_bar},
                                                      {"L_d", rep.l_d},
                                                      {"L_d_bar", rep.l_d_bar},
                                                      {"L_mr", rep.l_mr},
                                                      {"L_mr_bar", rep.l_mr_bar},
                                                      {"L_md", rep.l_md},
                                                      {"L_md_bar", rep.l_md_bar}})
            require(value == Rat(1), "full shift " + name + " == 1.0 exactly");
        require(rep.certified_relations ==
                    std::vector<std::string>{"L_md >= L_mr", "L_mr >= L_mr_bar", "L_md >= L_md_bar",
                                             "L_md_bar >= L_mr_bar"},
                "certified relation chain present");

        auto rot = SystemSpec::rotation(Rat(610, 987));
        auto rr = lyapunov_numbers(rot, 3, 16, 8, 3, {PointSpec::torus({Rat(0)})});
        for (const Rat* v : {&rr.l_r, &rr.l_r_bar, &rr.l_d, &rr.l_d_bar, &rr.l_mr, &rr.l_mr_bar, &rr.l_md,
                             &rr.l_md_bar})
            require(*v == Rat(0), "rotation estimate == 0 exactly");
        require(rr.certified_relations.size() == 4, "relation chain in every report");
    });

    // 5. sequence entropy: exact counts and the log 2 slope
    criterion(5, "separated counts 2^(k+1) and entropy log 2 vs 0", 30.0, [] {
        auto fs = SystemSpec::full_shift(2);
        for (int k = 1; k <= 12; ++k)
            require(sep_count_exact(fs, SequenceSpec::full(), k, Rat(3, 10)) == (std::int64_t(1) << (k + 1)),
                    "sep(" + std::to_string(k) + ") == 2^" + std::to_string(k + 1));
        auto est = seq_entropy_estimate(fs, SequenceSpec::full(), {Rat(3, 10)}, 10);
        require(std::abs(est.value - std::log(2.0)) < 1e-6, "full shift estimate == log 2 within 1e-6");
        auto rot = SystemSpec::rotation(Rat(610, 987));
        auto rest = seq_entropy_estimate(rot, SequenceSpec::full(), {Rat(3, 10)}, 8);
        require(std::abs(rest.value) < 1e-6, "rotation estimate == 0 within 1e-6");
    });

    // 6. sensitivity forms on the metric fixtures
    criterion(6, "skew product cofinitely sensitive, rotation insensitive", 30.0, [] {
        auto sk = SystemSpec::skew_product(Rat(610, 987));
        auto cells = cell_family(sk, 5);
        for (const auto& c : cells) {
            auto s = sensitivity_set(sk, c, Rat(1, 5), 200);
            auto m = cofinite_from(s.certain);
            if (!m) {
                require(false, "certain sensitivity set not cofinite for " + c.describe());
                return;
            }
        }
        auto rot = SystemSpec::rotation(Rat(610, 987));
        for (const auto& c : cell_family(rot, 3)) {
            auto s = sensitivity_set(rot, c, Rat(1, 8), 200);
            require(s.possible.empty(), "rotation sensitivity empty at delta == cell size");
        }
    });

    // 7. Li-Yorke witness search
    criterion(7, "li-yorke witness on the full shift, none on the rotation", 30.0, [] {
        auto fs = SystemSpec::full_shift(2);
        auto zero = PointSpec::eventually_periodic("", "0");
        auto w = li_yorke_search(fs, zero, 4, Rat(2, 5), 300, 150);
        require(w.has_value(), "witness found from 0^inf");
        if (w) {
            // self-validation: rerun the orbit scan on the returned partner
            PointSpec cx = evaluate(fs, zero, 150), cy = evaluate(fs, w->partner, 150);
            Rat mind(1), maxd(0);
            for (std::int64_t n = 150; n <= 300; ++n) {
                Rat d = distance(fs, cx, cy);
                mind = min(mind, d);
                maxd = max(maxd, d);
                if (n < 300) {
                    cx = evaluate(fs, cx, 1);
                    cy = evaluate(fs, cy, 1);
                }
            }
            require(mind == w->min_dist && maxd == w->max_dist, "witness statistics reproduce");
            require(mind < Rat(1, 1024) && maxd > Rat(2, 5), "witness satisfies both thresholds");
        }
        auto rot = SystemSpec::rotation(Rat(610, 987));
        for (const Rat& delta : {Rat(2, 5), Rat(1, 5), Rat(1, 20), Rat(1, 100)})
            require(!li_yorke_search(rot, PointSpec::torus({Rat(1, 3)}), 3, delta, 300, 150).has_value(),
                    "no rotation witness at delta = " + delta.str());
    });

    // 8. property suites, >= 1000 generated cases each
    criterion(8, "property suites (1000 cases each)", 120.0, [] {
        auto fs = SystemSpec::full_shift(2);
        Lcg g(2026);
        // semigroup law
        for (int it = 0; it < 1000; ++it) {
            Word pre, per;
            for (int i = 0; i < g.below(5); ++i) pre.push_back(static_cast<Sym>(g.below(2)));
            for (int i = 0; i < 1 + g.below(4); ++i) per.push_back(static_cast<Sym>(g.below(2)));
            auto x = PointSpec::eventually_periodic(pre, per);
            std::int64_t m = g.below(50), n = g.below(50);
            if (!points_equal(fs, evaluate(fs, x, m + n), evaluate(fs, evaluate(fs, x, m), n))) {
                require(false, "semigroup law");
                return;
            }
        }
        // metric axioms
        auto rot = SystemSpec::rotation(Rat(610, 987));
        for (int it = 0; it < 1000; ++it) {
            PointSpec a = PointSpec::torus({Rat(g.below(987), 987)});
            PointSpec b = PointSpec::torus({Rat(g.below(987), 987)});
            PointSpec c = PointSpec::torus({Rat(g.below(987), 987)});
            bool ok = distance(rot, a, b) == distance(rot, b, a) &&
                      distance(rot, a, c) <= distance(rot, a, b) + distance(rot, b, c) &&
                      distance(rot, a, b) <= rot.metric().diameter;
            if (!ok) {
                require(false, "metric axioms");
                return;
            }
        }
        // omega_NT monotonicity in horizon and budget, and containment in omega_T
        for (int it = 0; it < 1000; ++it) {
            Word pre, per;
            for (int i = 0; i < g.below(4); ++i) pre.push_back(static_cast<Sym>(g.below(2)));
            for (int i = 0; i < 1 + g.below(3); ++i) per.push_back(static_cast<Sym>(g.below(2)));
            auto x = PointSpec::eventually_periodic(pre, per);
            std::int64_t b1 = 4 + g.below(8);
            auto base = omega_nt_approx(fs, x, 2, 60, b1);
            auto wider = omega_nt_approx(fs, x, 2, 92, b1);
            auto deeper = omega_nt_approx(fs, x, 2, 60, b1 + g.below(8));
            auto om = omega_limit_approx(fs, x, 2, 60);
            auto subset = [](const std::vector<Cell>& inner, const std::vector<Cell>& outer) {
                for (const auto& c : inner) {
                    bool found = false;
                    for (const auto& oc : outer)
                        if (oc == c) found = true;
                    if (!found) return false;
                }
                return true;
            };
            if (!subset(wider.cells, base.cells) || !subset(deeper.cells, base.cells) ||
                !subset(base.cells, om.cells)) {
                require(false, "omega_NT monotonicity / containment");
                return;
            }
        }
        // hereditary admissibility for the difference-set subshift
        auto lp = lambda_p(pspec_squares());
        SubshiftOracle oracle(lp);
        int done = 0;
        while (done < 1000) {
            std::uint64_t bits = g.next();
            int len = 3 + static_cast<int>(bits % 9);
            Word w;
            for (int i = 0; i < len; ++i) w.push_back(static_cast<Sym>((bits >> (5 + i)) & 1));
            if (!oracle.word_admissible(w)) continue;
            ++done;
            for (std::size_t a = 0; a < w.size(); ++a) {
                for (std::size_t b = a; b < w.size(); ++b) {
                    Word sub(w.begin() + static_cast<std::ptrdiff_t>(a),
                             w.begin() + static_cast<std::ptrdiff_t>(b) + 1);
                    if (!oracle.word_admissible(sub)) {
                        require(false, "hereditary admissibility");
                        return;
                    }
                }
            }
        }
        // families dual consistency
        for (int it = 0; it < 1000; ++it) {
            std::int64_t horizon = 60 + g.below(60);
            std::int64_t run_len = 3 + g.below(8);
            std::vector<std::int64_t> gm{0};
            while (gm.back() < horizon)
                gm.push_back(std::min<std::int64_t>(horizon, gm.back() + 1 + g.below(run_len)));
            auto gset = WindowSet::of(horizon, std::move(gm));
            std::int64_t gap = max_gap(gset);
            std::int64_t start = g.below(horizon - gap - 1);
            std::vector<std::int64_t> sm;
            for (std::int64_t n = start; n < start + gap && n <= horizon; ++n) sm.push_back(n);
            auto sset = WindowSet::of(horizon, std::move(sm));
            if (max_run(sset) < gap || sset.intersect(gset).empty()) {
                require(false, "dual consistency");
                return;
            }
        }
    });

    // 9. proximal and wedge fixtures
    criterion(9, "proximal visit sets thickly syndetic; wedge hits single-parity", 30.0, [] {
        auto f = standard_fixture("proximal-contraction");
        auto vs = visit_set(f.system, *f.point, Cell::box(3, {0}), 1000);
        for (std::int64_t n = 1; n <= 10; ++n) {
            try {
                thickly_syndetic_gap(vs, n);
            } catch (const Error&) {
                require(false, "thickly syndetic gap undefined for N=" + std::to_string(n));
            }
        }
        auto wf = standard_fixture("wedge-fullshift");
        auto cells = cell_family(wf.system, 1);
        // cross-side pairs avoiding the glue: all hits share one parity
        auto across = hitting_set(wf.system, cells[1], cells[3], 100);
        require(!across.certain.empty(), "cross-side hits exist");
        for (auto n : across.certain.members)
            if (n % 2 != 1) {
                require(false, "cross-side hit with even time");
                break;
            }
        auto same = hitting_set(wf.system, cells[3], cells[3], 100);
        require(!same.certain.empty(), "same-side hits exist");
        for (auto n : same.certain.members)
            if (n % 2 != 0) {
                require(false, "same-side hit with odd time");
                break;
            }
    });

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " failure(s)\n";
    return 1;
}
