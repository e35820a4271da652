#include "topodyn/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace topodyn {

// ---------------------------------------------------------------------------
// P predicates

PSpec pspec_all() {
    return {"all", "P = N (full-shift-equivalent admissibility)", [](std::int64_t n) { return n >= 1; }};
}

PSpec pspec_evens() {
    return {"evens", "P = positive even integers", [](std::int64_t n) { return n >= 1 && n % 2 == 0; }};
}

PSpec pspec_odds() {
    return {"odds", "P = positive odd integers", [](std::int64_t n) { return n >= 1 && n % 2 == 1; }};
}

PSpec pspec_squares() {
    return {"squares", "P = union of [m^2+1, m^2+m] (thick)", [](std::int64_t n) {
                if (n < 1) return false;
                std::int64_t m = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
                while (m * m > n) --m;
                while ((m + 1) * (m + 1) <= n) ++m;
                // m^2 <= n: member iff m^2+1 <= n <= m^2+m
                return n > m * m && n <= m * m + m;
            }};
}

PSpec pspec_powerblock(std::uint32_t base) {
    std::string name = "powerblock-" + std::to_string(base);
    return {name, "P = {" + std::to_string(base) + "^n + s : 1 <= s <= n}",
            [base](std::int64_t v) {
                if (v < 2) return false;
                // find n with base^n < v
                std::int64_t p = 1;
                std::int64_t n = 0;
                while (p <= (v - 1) / static_cast<std::int64_t>(base)) {
                    p *= base;
                    ++n;
                }
                // p = base^n <= v-1 < base^(n+1)
                return n >= 1 && v > p && v - p <= n;
            }};
}

PSpec pspec_by_name(const std::string& name) {
    if (name == "all") return pspec_all();
    if (name == "evens") return pspec_evens();
    if (name == "odds") return pspec_odds();
    if (name == "squares") return pspec_squares();
    const std::string pb = "powerblock-";
    if (name.rfind(pb, 0) == 0) {
        int base = std::stoi(name.substr(pb.size()));
        if (base < 2) throw ConfigError("powerblock base must be >= 2");
        return pspec_powerblock(static_cast<std::uint32_t>(base));
    }
    throw ConfigError("unknown P predicate: " + name);
}

// ---------------------------------------------------------------------------
// SystemSpec

SystemSpec SystemSpec::full_shift(int alphabet) {
    if (alphabet < 2) throw ConfigError("full shift needs alphabet size >= 2");
    return SystemSpec(FullShiftSys{alphabet}, {"subshift", Rat(1)});
}

SystemSpec SystemSpec::sft(int alphabet, std::vector<Word> forbidden) {
    if (alphabet < 2) throw ConfigError("SFT needs alphabet size >= 2");
    if (forbidden.empty()) throw ConfigError("SFT with no forbidden words; use a full shift");
    for (const auto& f : forbidden) {
        if (f.empty()) throw ConfigError("empty forbidden word");
        for (Sym c : f)
            if (c >= alphabet) throw ConfigError("forbidden word symbol outside alphabet");
    }
    return SystemSpec(SftSys{alphabet, std::move(forbidden)}, {"subshift", Rat(1)});
}

SystemSpec SystemSpec::diff_set(PSpec p) {
    return SystemSpec(DiffSetSys{std::move(p)}, {"subshift", Rat(1)});
}

SystemSpec SystemSpec::rotation(Rat alpha) {
    return SystemSpec(RotationSys{alpha.mod1()}, {"circle", Rat(1, 2)});
}

SystemSpec SystemSpec::skew_product(Rat alpha) {
    return SystemSpec(SkewProductSys{alpha.mod1()}, {"torus", Rat(1, 2)});
}

SystemSpec SystemSpec::proximal_circle() {
    return SystemSpec(ProximalCircleSys{}, {"circle", Rat(1, 2)});
}

SystemSpec SystemSpec::wedge(SystemSpec side, PointSpec glue) {
    auto side_ptr = std::make_shared<const SystemSpec>(std::move(side));
    auto glue_ptr = std::make_shared<const PointSpec>(std::move(glue));
    PointSpec image = evaluate(*side_ptr, *glue_ptr, 1);
    if (!points_equal(*side_ptr, image, *glue_ptr))
        throw ConfigError("wedge glue point is not fixed under the side map");
    Rat diam = side_ptr->metric().diameter + side_ptr->metric().diameter;
    return SystemSpec(WedgeSys{side_ptr, glue_ptr}, {"wedge", diam});
}

SystemSpec SystemSpec::product(SystemSpec left, SystemSpec right) {
    auto l = std::make_shared<const SystemSpec>(std::move(left));
    auto r = std::make_shared<const SystemSpec>(std::move(right));
    Rat diam = max(l->metric().diameter, r->metric().diameter);
    return SystemSpec(ProductSys{l, r}, {"product", diam});
}

bool SystemSpec::is_subshift() const {
    return as<FullShiftSys>() || as<SftSys>() || as<DiffSetSys>();
}

int SystemSpec::alphabet() const {
    if (auto f = as<FullShiftSys>()) return f->alphabet;
    if (auto s = as<SftSys>()) return s->alphabet;
    if (as<DiffSetSys>()) return 2;
    throw NotASubshift("alphabet requested from a non-subshift system");
}

// ---------------------------------------------------------------------------
// PointSpec

PointSpec PointSpec::eventually_periodic(Word preperiod, Word period) {
    if (period.empty()) throw ConfigError("eventually periodic point needs a nonempty period");
    return PointSpec(EventuallyPeriodicPoint{std::move(preperiod), std::move(period)});
}

PointSpec PointSpec::eventually_periodic(const std::string& pre, const std::string& per) {
    return eventually_periodic(word_from_string(pre), word_from_string(per));
}

PointSpec PointSpec::prefix_stream(std::vector<Sym> symbols) {
    return PointSpec(PrefixStreamPoint{std::make_shared<const std::vector<Sym>>(std::move(symbols)), 0});
}

PointSpec PointSpec::prefix_stream_shared(std::shared_ptr<const std::vector<Sym>> symbols,
                                          std::int64_t offset) {
    if (offset < 0 || offset > static_cast<std::int64_t>(symbols->size()))
        throw PrefixExhausted("prefix stream offset out of range");
    return PointSpec(PrefixStreamPoint{std::move(symbols), offset});
}

PointSpec PointSpec::torus(std::vector<Rat> coords) {
    for (const auto& c : coords)
        if (c < Rat(0) || c >= Rat(1)) throw ConfigError("torus coordinates must lie in [0,1)");
    return PointSpec(TorusPoint{std::move(coords)});
}

PointSpec PointSpec::wedge(int side, PointSpec inner) {
    if (side != 0 && side != 1) throw SideMismatch("wedge side tag must be 0 or 1");
    return PointSpec(WedgePoint{side, std::make_shared<const PointSpec>(std::move(inner))});
}

PointSpec PointSpec::product(PointSpec left, PointSpec right) {
    return PointSpec(ProductPoint{std::make_shared<const PointSpec>(std::move(left)),
                                  std::make_shared<const PointSpec>(std::move(right))});
}

Sym PointSpec::symbol_at(std::int64_t i) const {
    if (auto ep = as<EventuallyPeriodicPoint>()) {
        std::int64_t p = static_cast<std::int64_t>(ep->preperiod.size());
        if (i < p) return ep->preperiod[static_cast<std::size_t>(i)];
        return ep->period[static_cast<std::size_t>((i - p) % static_cast<std::int64_t>(ep->period.size()))];
    }
    if (auto ps = as<PrefixStreamPoint>()) {
        std::int64_t idx = ps->offset + i;
        if (idx < 0 || idx >= static_cast<std::int64_t>(ps->symbols->size()))
            throw PrefixExhausted("prefix stream exhausted at index " + std::to_string(idx));
        return (*ps->symbols)[static_cast<std::size_t>(idx)];
    }
    throw ConfigError("symbol_at on a non-symbolic point");
}

std::optional<std::int64_t> PointSpec::available_symbols() const {
    if (auto ps = as<PrefixStreamPoint>())
        return static_cast<std::int64_t>(ps->symbols->size()) - ps->offset;
    if (as<EventuallyPeriodicPoint>()) return std::nullopt;
    throw ConfigError("available_symbols on a non-symbolic point");
}

// ---------------------------------------------------------------------------
// Cells

Cell Cell::cylinder(Word w) { return Cell(SubshiftCell{std::move(w)}); }
Cell Cell::cylinder(const std::string& w) { return cylinder(word_from_string(w)); }

Cell Cell::box(int resolution, std::vector<std::int64_t> corner) {
    if (resolution < 1 || resolution > 62) throw ConfigError("box resolution out of range");
    std::int64_t side = static_cast<std::int64_t>(1) << resolution;
    for (auto i : corner)
        if (i < 0 || i >= side) throw ConfigError("box corner outside phase space");
    return Cell(BoxCell{resolution, std::move(corner)});
}

Cell Cell::wedge(int side, Cell inner) {
    return Cell(std::make_shared<WedgeCell>(WedgeCell{side, std::move(inner)}));
}

Cell Cell::product(Cell left, Cell right) {
    return Cell(std::make_shared<ProductCell>(ProductCell{std::move(left), std::move(right)}));
}

const WedgeCell* Cell::as_wedge() const {
    if (auto p = std::get_if<std::shared_ptr<WedgeCell>>(&kind_)) return p->get();
    return nullptr;
}

const ProductCell* Cell::as_product() const {
    if (auto p = std::get_if<std::shared_ptr<ProductCell>>(&kind_)) return p->get();
    return nullptr;
}

std::string Cell::describe() const {
    if (auto s = as<SubshiftCell>()) return "C[" + word_to_string(s->word) + "]";
    if (auto b = as<BoxCell>()) {
        std::string s = "B" + std::to_string(b->resolution) + ":(";
        for (std::size_t i = 0; i < b->corner.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(b->corner[i]);
        }
        return s + ")";
    }
    if (auto w = as_wedge()) return std::string(w->side == 0 ? "L:" : "R:") + w->inner.describe();
    auto p = as_product();
    return "(" + p->left.describe() + "x" + p->right.describe() + ")";
}

// ---------------------------------------------------------------------------
// SubshiftOracle

SubshiftOracle::SubshiftOracle(const SystemSpec& sys) {
    if (auto f = sys.as<FullShiftSys>()) {
        kind_ = KindTag::Full;
        alphabet_ = f->alphabet;
        return;
    }
    if (auto d = sys.as<DiffSetSys>()) {
        kind_ = KindTag::DiffSet;
        alphabet_ = 2;
        p_ = d->p;
        return;
    }
    auto s = sys.as<SftSys>();
    if (!s) throw NotASubshift("subshift oracle over a non-subshift system");
    kind_ = KindTag::Sft;
    alphabet_ = s->alphabet;
    forbidden_ = s->forbidden;
    std::size_t maxlen = 0;
    for (const auto& f : forbidden_) maxlen = std::max(maxlen, f.size());
    context_ = static_cast<int>(maxlen) - 1;

    // states: clean words of length context_
    Word cur(static_cast<std::size_t>(context_), 0);
    std::map<Word, int> index;
    std::function<void(std::size_t)> gen = [&](std::size_t pos) {
        if (pos == cur.size()) {
            if (word_clean(cur)) {
                index[cur] = static_cast<int>(states_.size());
                states_.push_back(cur);
            }
            return;
        }
        for (Sym c = 0; c < alphabet_; ++c) {
            cur[pos] = c;
            gen(pos + 1);
        }
    };
    gen(0);

    next_.assign(states_.size(), std::vector<int>(static_cast<std::size_t>(alphabet_), -1));
    for (std::size_t i = 0; i < states_.size(); ++i) {
        for (Sym c = 0; c < alphabet_; ++c) {
            Word ext = states_[i];
            ext.push_back(c);
            if (!word_clean(ext)) continue;
            Word suf(ext.end() - context_, ext.end());
            auto it = index.find(suf);
            if (it != index.end()) next_[i][c] = it->second;
        }
    }

    // prune states that cannot be extended forever
    alive_.assign(states_.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (!alive_[i]) continue;
            bool out = false;
            for (Sym c = 0; c < alphabet_ && !out; ++c) {
                int t = next_[i][c];
                if (t >= 0 && alive_[static_cast<std::size_t>(t)]) out = true;
            }
            if (!out) {
                alive_[i] = false;
                changed = true;
            }
        }
    }
}

bool SubshiftOracle::word_clean(const Word& w) const {
    for (const auto& f : forbidden_) {
        if (f.size() > w.size()) continue;
        for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
            if (std::equal(f.begin(), f.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) return false;
        }
    }
    return true;
}

int SubshiftOracle::state_of(const Word& suffix) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), suffix);
    if (it == states_.end() || *it != suffix) return -1;
    return static_cast<int>(it - states_.begin());
}

namespace {

bool pairwise_in_p(const std::vector<std::int64_t>& ones, const PSpec& p) {
    for (std::size_t i = 0; i < ones.size(); ++i)
        for (std::size_t j = i + 1; j < ones.size(); ++j)
            if (!p.member(ones[j] - ones[i])) return false;
    return true;
}

} // namespace

bool SubshiftOracle::word_admissible(const Word& w) const {
    for (Sym c : w)
        if (c >= alphabet_) return false;
    switch (kind_) {
        case KindTag::Full:
            return true;
        case KindTag::DiffSet:
            return pairwise_in_p(one_positions(w), p_);
        case KindTag::Sft: {
            if (!word_clean(w)) return false;
            if (static_cast<int>(w.size()) < context_) {
                // some alive state must extend w
                for (std::size_t i = 0; i < states_.size(); ++i) {
                    if (!alive_[i]) continue;
                    if (std::equal(w.begin(), w.end(), states_[i].begin())) return true;
                }
                return false;
            }
            if (context_ == 0) return true;
            Word suf(w.end() - context_, w.end());
            int s = state_of(suf);
            return s >= 0 && alive_[static_cast<std::size_t>(s)];
        }
    }
    return false;
}

// Reachable transfer states after reading `w` padded freely out to
// |w| + steps symbols. Requires SFT kind.
std::vector<bool> SubshiftOracle::reach_after(const Word& w, std::int64_t steps) const {
    // simulate with forced symbols for w, free afterwards
    std::int64_t total = static_cast<std::int64_t>(w.size()) + steps;
    // partial words until context_ reached
    std::set<Word> partial;
    partial.insert(Word{});
    std::vector<bool> reach(states_.size(), false);
    bool in_states = (context_ == 0);
    if (in_states) reach[0] = true;
    for (std::int64_t pos = 0; pos < total; ++pos) {
        bool forced = pos < static_cast<std::int64_t>(w.size());
        if (!in_states) {
            std::set<Word> nxt;
            for (const auto& pw : partial) {
                for (Sym c = 0; c < alphabet_; ++c) {
                    if (forced && c != w[static_cast<std::size_t>(pos)]) continue;
                    Word e = pw;
                    e.push_back(c);
                    if (!word_clean(e)) continue;
                    nxt.insert(e);
                }
            }
            partial = std::move(nxt);
            if (pos + 1 >= context_) {
                in_states = true;
                for (const auto& pw : partial) {
                    int s = state_of(pw);
                    if (s >= 0) reach[static_cast<std::size_t>(s)] = true;
                }
            }
            continue;
        }
        std::vector<bool> nxt(states_.size(), false);
        for (std::size_t s = 0; s < states_.size(); ++s) {
            if (!reach[s]) continue;
            for (Sym c = 0; c < alphabet_; ++c) {
                if (forced && c != w[static_cast<std::size_t>(pos)]) continue;
                int t = next_[s][c];
                if (t >= 0) nxt[static_cast<std::size_t>(t)] = true;
            }
        }
        reach = std::move(nxt);
    }
    if (!in_states) {
        // total < context_: map compatible alive states
        for (std::size_t i = 0; i < states_.size(); ++i) {
            for (const auto& pw : partial) {
                if (std::equal(pw.begin(), pw.end(), states_[i].begin())) {
                    reach[i] = true;
                    break;
                }
            }
        }
    }
    return reach;
}

bool SubshiftOracle::hit(const Word& u, const Word& v, std::int64_t n) const {
    const std::int64_t lu = static_cast<std::int64_t>(u.size());
    const std::int64_t lv = static_cast<std::int64_t>(v.size());
    // merged constraint word on [0, max(lu, n+lv))
    std::int64_t total = std::max(lu, n + lv);
    // overlap consistency
    for (std::int64_t i = std::max<std::int64_t>(n, 0); i < std::min(lu, n + lv); ++i) {
        if (u[static_cast<std::size_t>(i)] != v[static_cast<std::size_t>(i - n)]) return false;
    }
    switch (kind_) {
        case KindTag::Full:
            return true;
        case KindTag::DiffSet: {
            std::vector<std::int64_t> ones;
            for (auto i : one_positions(u)) ones.push_back(i);
            for (auto i : one_positions(v)) ones.push_back(i + n);
            std::sort(ones.begin(), ones.end());
            ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
            return pairwise_in_p(ones, p_);
        }
        case KindTag::Sft: {
            // set-simulation over the merged constraints
            std::vector<std::optional<Sym>> cons(static_cast<std::size_t>(total));
            for (std::int64_t i = 0; i < lu; ++i) cons[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)];
            for (std::int64_t i = 0; i < lv; ++i) cons[static_cast<std::size_t>(n + i)] = v[static_cast<std::size_t>(i)];
            std::set<Word> partial;
            partial.insert(Word{});
            std::vector<bool> reach(states_.size(), false);
            bool in_states = (context_ == 0);
            if (in_states) reach[0] = true;
            for (std::int64_t pos = 0; pos < total; ++pos) {
                auto want = cons[static_cast<std::size_t>(pos)];
                if (!in_states) {
                    std::set<Word> nxt;
                    for (const auto& pw : partial) {
                        for (Sym c = 0; c < alphabet_; ++c) {
                            if (want && c != *want) continue;
                            Word e = pw;
                            e.push_back(c);
                            if (word_clean(e)) nxt.insert(e);
                        }
                    }
                    partial = std::move(nxt);
                    if (partial.empty()) return false;
                    if (pos + 1 >= context_) {
                        in_states = true;
                        for (const auto& pw : partial) {
                            int s = state_of(pw);
                            if (s >= 0) reach[static_cast<std::size_t>(s)] = true;
                        }
                    }
                    continue;
                }
                std::vector<bool> nxt(states_.size(), false);
                bool any = false;
                for (std::size_t s = 0; s < states_.size(); ++s) {
                    if (!reach[s]) continue;
                    for (Sym c = 0; c < alphabet_; ++c) {
                        if (want && c != *want) continue;
                        int t = next_[s][c];
                        if (t >= 0) {
                            nxt[static_cast<std::size_t>(t)] = true;
                            any = true;
                        }
                    }
                }
                if (!any) return false;
                reach = std::move(nxt);
            }
            if (!in_states) {
                for (std::size_t i = 0; i < states_.size(); ++i) {
                    if (!alive_[i]) continue;
                    for (const auto& pw : partial) {
                        if (std::equal(pw.begin(), pw.end(), states_[i].begin())) return true;
                    }
                }
                return false;
            }
            for (std::size_t s = 0; s < states_.size(); ++s)
                if (reach[s] && alive_[s]) return true;
            return false;
        }
    }
    return false;
}

std::vector<Sym> SubshiftOracle::symbol_options(const Word& w, std::int64_t j) const {
    if (j < static_cast<std::int64_t>(w.size())) return {w[static_cast<std::size_t>(j)]};
    switch (kind_) {
        case KindTag::Full: {
            std::vector<Sym> all;
            for (Sym c = 0; c < alphabet_; ++c) all.push_back(c);
            return all;
        }
        case KindTag::DiffSet: {
            std::vector<Sym> opts{0};
            auto ones = one_positions(w);
            bool ok = true;
            for (auto i : ones)
                if (!p_.member(j - i)) {
                    ok = false;
                    break;
                }
            if (ok) opts.push_back(1);
            return opts;
        }
        case KindTag::Sft: {
            auto reach = reach_after(w, j - static_cast<std::int64_t>(w.size()));
            std::set<Sym> opts;
            for (std::size_t s = 0; s < states_.size(); ++s) {
                if (!reach[s]) continue;
                for (Sym c = 0; c < alphabet_; ++c) {
                    int t = next_[s][c];
                    if (t >= 0 && alive_[static_cast<std::size_t>(t)]) opts.insert(c);
                }
            }
            return std::vector<Sym>(opts.begin(), opts.end());
        }
    }
    return {};
}

bool SubshiftOracle::branches_at(const Word& w, std::int64_t j) const {
    return symbol_options(w, j).size() >= 2;
}

std::optional<std::int64_t> SubshiftOracle::first_branch_at_or_after(const Word& w, std::int64_t from,
                                                                     std::int64_t scan_bound) const {
    std::int64_t start = std::max(from, static_cast<std::int64_t>(w.size()));
    if (kind_ == KindTag::Full) return start;
    if (kind_ == KindTag::DiffSet) {
        for (std::int64_t j = start; j <= scan_bound; ++j)
            if (branches_at(w, j)) return j;
        return std::nullopt; // not found within the scan bound (inexact)
    }
    // SFT: walk reach sets; a repeated set without branching proves none exists
    auto reach = reach_after(w, start - static_cast<std::int64_t>(w.size()));
    std::set<std::vector<bool>> seen;
    for (std::int64_t j = start;; ++j) {
        std::set<Sym> opts;
        std::vector<bool> nxt(states_.size(), false);
        for (std::size_t s = 0; s < states_.size(); ++s) {
            if (!reach[s]) continue;
            for (Sym c = 0; c < alphabet_; ++c) {
                int t = next_[s][c];
                if (t >= 0 && alive_[static_cast<std::size_t>(t)]) {
                    opts.insert(c);
                    nxt[static_cast<std::size_t>(t)] = true;
                }
            }
        }
        if (opts.size() >= 2) return j;
        if (!seen.insert(reach).second) return std::nullopt; // cycle, never branches
        reach = std::move(nxt);
        if (j > scan_bound + static_cast<std::int64_t>(states_.size()) + 4) return std::nullopt;
    }
}

bool SubshiftOracle::hits_zero_tail(const Word& w, std::int64_t n) const {
    const std::int64_t lw = static_cast<std::int64_t>(w.size());
    for (std::int64_t i = n; i < lw; ++i)
        if (w[static_cast<std::size_t>(i)] != 0) return false;
    switch (kind_) {
        case KindTag::Full:
            return true;
        case KindTag::DiffSet:
            return word_admissible(w);
        case KindTag::Sft: {
            if (!word_admissible(w)) return false;
            // read zeros from the end of w (or from n) and require a 0-cycle
            Word zeros(static_cast<std::size_t>(context_), 0);
            int z = context_ == 0 ? 0 : state_of(zeros);
            if (z < 0 || next_[static_cast<std::size_t>(z)][0] != z) return false;
            // can we reach the zero state reading only zeros after w?
            auto reach = reach_after(w, 0);
            for (int step = 0; step <= context_ + static_cast<int>(states_.size()); ++step) {
                if (reach[static_cast<std::size_t>(z)]) return true;
                std::vector<bool> nxt(states_.size(), false);
                for (std::size_t s = 0; s < states_.size(); ++s) {
                    if (!reach[s]) continue;
                    int t = next_[s][0];
                    if (t >= 0) nxt[static_cast<std::size_t>(t)] = true;
                }
                reach = std::move(nxt);
            }
            return false;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// evaluate

namespace {

Rat proximal_step(const Rat& x) {
    // lift on [0,1]: max(0, x - 1/8) left of 1/2, (5x-1)/4 right of it
    if (x <= Rat(1, 2)) {
        Rat y = x - Rat(1, 8);
        return y < Rat(0) ? Rat(0) : y;
    }
    return (x * Rat(5) - Rat(1)) / Rat(4);
}

Rat proximal_iterate(Rat x, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) {
        Rat nx = proximal_step(x);
        if (nx == x) return x; // fixed from here on
        x = nx;
    }
    return x;
}

Word rotate_word(const Word& w, std::int64_t k) {
    Word r(w.size());
    std::int64_t m = static_cast<std::int64_t>(w.size());
    for (std::int64_t i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>((i + k) % m)];
    return r;
}

} // namespace

PointSpec evaluate(const SystemSpec& sys, const PointSpec& x, std::int64_t n) {
    if (n < 0) throw ConfigError("evaluate with negative time");
    if (sys.is_subshift()) {
        if (auto ep = x.as<EventuallyPeriodicPoint>()) {
            std::int64_t p = static_cast<std::int64_t>(ep->preperiod.size());
            if (n <= p) {
                Word pre(ep->preperiod.begin() + static_cast<std::ptrdiff_t>(n), ep->preperiod.end());
                return PointSpec::eventually_periodic(std::move(pre), ep->period);
            }
            std::int64_t k = (n - p) % static_cast<std::int64_t>(ep->period.size());
            return PointSpec::eventually_periodic(Word{}, rotate_word(ep->period, k));
        }
        if (auto ps = x.as<PrefixStreamPoint>()) {
            return PointSpec::prefix_stream_shared(ps->symbols, ps->offset + n);
        }
        throw ConfigError("subshift point of unexpected kind");
    }
    if (auto rot = sys.as<RotationSys>()) {
        auto tp = x.as<TorusPoint>();
        if (!tp || tp->coords.size() != 1) throw ConfigError("rotation expects a 1-coordinate torus point");
        return PointSpec::torus({(tp->coords[0] + rot->alpha * Rat(n)).mod1()});
    }
    if (auto sk = sys.as<SkewProductSys>()) {
        auto tp = x.as<TorusPoint>();
        if (!tp || tp->coords.size() != 2) throw ConfigError("skew product expects a 2-coordinate torus point");
        // T^n (x, y) = (x + n a, n x + n(n-1)/2 a + y)
        Rat nx = (tp->coords[0] + sk->alpha * Rat(n)).mod1();
        Rat binom = Rat(n) * Rat(n - 1) / Rat(2);
        Rat ny = (Rat(n) * tp->coords[0] + binom * sk->alpha + tp->coords[1]).mod1();
        return PointSpec::torus({nx, ny});
    }
    if (sys.as<ProximalCircleSys>()) {
        auto tp = x.as<TorusPoint>();
        if (!tp || tp->coords.size() != 1) throw ConfigError("circle map expects a 1-coordinate point");
        return PointSpec::torus({proximal_iterate(tp->coords[0], n).mod1()});
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto wp = x.as<WedgePoint>();
        if (!wp) throw SideMismatch("wedge system expects a wedge point");
        PointSpec inner = evaluate(*wg->side, *wp->inner, n);
        return PointSpec::wedge(static_cast<int>((wp->side + n) % 2), std::move(inner));
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pp = x.as<ProductPoint>();
        if (!pp) throw ConfigError("product system expects a product point");
        return PointSpec::product(evaluate(*pr->left, *pp->left, n), evaluate(*pr->right, *pp->right, n));
    }
    throw ConfigError("evaluate: unhandled system kind");
}

// ---------------------------------------------------------------------------
// distance / equality

namespace {

// First index where two symbol streams disagree; nullopt = provably equal.
// Throws Undecidable when the available window is exhausted inconclusively.
std::optional<std::int64_t> first_disagreement(const PointSpec& p, const PointSpec& q) {
    auto ap = p.available_symbols();
    auto aq = q.available_symbols();
    std::int64_t window;
    bool certified;
    if (!ap && !aq) {
        auto* e1 = p.as<EventuallyPeriodicPoint>();
        auto* e2 = q.as<EventuallyPeriodicPoint>();
        std::int64_t p1 = static_cast<std::int64_t>(e1->preperiod.size());
        std::int64_t p2 = static_cast<std::int64_t>(e2->preperiod.size());
        std::int64_t q1 = static_cast<std::int64_t>(e1->period.size());
        std::int64_t q2 = static_cast<std::int64_t>(e2->period.size());
        std::int64_t l = std::lcm(q1, q2);
        if (l > 1 << 20) throw Undecidable("period lcm too large to certify equality");
        window = std::max(p1, p2) + l;
        certified = true;
    } else {
        window = std::min(ap.value_or(std::numeric_limits<std::int64_t>::max()),
                          aq.value_or(std::numeric_limits<std::int64_t>::max()));
        certified = false;
    }
    for (std::int64_t i = 0; i < window; ++i) {
        if (p.symbol_at(i) != q.symbol_at(i)) return i;
    }
    if (certified) return std::nullopt;
    throw Undecidable("points agree on all available symbols without an equality certificate");
}

Rat dyadic_clamped(std::int64_t j) {
    if (j >= 62) return Rat(0); // below representable resolution
    return dyadic(static_cast<int>(j));
}

const RotationSys* rot_or_null(const SystemSpec& s) { return s.as<RotationSys>(); }

} // namespace

bool points_equal(const SystemSpec& sys, const PointSpec& p, const PointSpec& q) {
    if (sys.is_subshift()) return !first_disagreement(p, q).has_value();
    if (rot_or_null(sys) || sys.as<SkewProductSys>() || sys.as<ProximalCircleSys>()) {
        auto a = p.as<TorusPoint>();
        auto b = q.as<TorusPoint>();
        if (!a || !b || a->coords.size() != b->coords.size()) throw ConfigError("point kind mismatch");
        for (std::size_t i = 0; i < a->coords.size(); ++i)
            if (a->coords[i] != b->coords[i]) return false;
        return true;
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto a = p.as<WedgePoint>();
        auto b = q.as<WedgePoint>();
        if (!a || !b) throw SideMismatch("wedge system expects wedge points");
        if (a->side == b->side) return points_equal(*wg->side, *a->inner, *b->inner);
        return points_equal(*wg->side, *a->inner, *wg->glue) &&
               points_equal(*wg->side, *b->inner, *wg->glue);
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto a = p.as<ProductPoint>();
        auto b = q.as<ProductPoint>();
        if (!a || !b) throw ConfigError("product system expects product points");
        return points_equal(*pr->left, *a->left, *b->left) && points_equal(*pr->right, *a->right, *b->right);
    }
    throw ConfigError("points_equal: unhandled system kind");
}

Rat distance(const SystemSpec& sys, const PointSpec& p, const PointSpec& q) {
    if (sys.is_subshift()) {
        auto j = first_disagreement(p, q);
        if (!j) return Rat(0);
        return dyadic_clamped(*j);
    }
    if (rot_or_null(sys) || sys.as<ProximalCircleSys>()) {
        auto a = p.as<TorusPoint>();
        auto b = q.as<TorusPoint>();
        if (!a || !b) throw ConfigError("circle system expects torus points");
        return circle_dist(a->coords[0], b->coords[0]);
    }
    if (sys.as<SkewProductSys>()) {
        auto a = p.as<TorusPoint>();
        auto b = q.as<TorusPoint>();
        if (!a || !b) throw ConfigError("torus system expects torus points");
        return max(circle_dist(a->coords[0], b->coords[0]), circle_dist(a->coords[1], b->coords[1]));
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto a = p.as<WedgePoint>();
        auto b = q.as<WedgePoint>();
        if (!a || !b) throw SideMismatch("wedge system expects wedge points");
        if (a->side == b->side) return distance(*wg->side, *a->inner, *b->inner);
        return distance(*wg->side, *a->inner, *wg->glue) + distance(*wg->side, *wg->glue, *b->inner);
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto a = p.as<ProductPoint>();
        auto b = q.as<ProductPoint>();
        if (!a || !b) throw ConfigError("product system expects product points");
        return max(distance(*pr->left, *a->left, *b->left), distance(*pr->right, *a->right, *b->right));
    }
    throw ConfigError("distance: unhandled system kind");
}

// ---------------------------------------------------------------------------
// cells

bool cell_admissible(const SystemSpec& sys, const Cell& c) {
    if (sys.is_subshift()) {
        auto sc = c.as<SubshiftCell>();
        if (!sc) throw ConfigError("subshift expects cylinder cells");
        SubshiftOracle oracle(sys);
        return oracle.word_admissible(sc->word);
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto wc = c.as_wedge();
        if (!wc) throw ConfigError("wedge expects wedge cells");
        return cell_admissible(*wg->side, wc->inner);
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pc = c.as_product();
        if (!pc) throw ConfigError("product expects product cells");
        return cell_admissible(*pr->left, pc->left) && cell_admissible(*pr->right, pc->right);
    }
    auto bc = c.as<BoxCell>();
    if (!bc) throw ConfigError("metric system expects box cells");
    std::size_t want = sys.as<SkewProductSys>() ? 2 : 1;
    return bc->corner.size() == want;
}

std::vector<Cell> cell_family(const SystemSpec& sys, int depth, const Limits& lim) {
    if (depth < 1) throw ConfigError("cell depth must be positive");
    if (depth > lim.max_depth) throw BudgetExceeded("cell depth exceeds cap");
    std::vector<Cell> out;
    if (sys.is_subshift()) {
        SubshiftOracle oracle(sys);
        int a = oracle.alphabet();
        Word cur(static_cast<std::size_t>(depth), 0);
        std::function<void(int)> gen = [&](int pos) {
            if (pos == depth) {
                if (oracle.word_admissible(cur)) out.push_back(Cell::cylinder(cur));
                return;
            }
            for (Sym c = 0; c < a; ++c) {
                cur[static_cast<std::size_t>(pos)] = c;
                gen(pos + 1);
            }
        };
        gen(0);
    } else if (rot_or_null(sys) || sys.as<ProximalCircleSys>()) {
        std::int64_t n = static_cast<std::int64_t>(1) << depth;
        for (std::int64_t i = 0; i < n; ++i) out.push_back(Cell::box(depth, {i}));
    } else if (sys.as<SkewProductSys>()) {
        std::int64_t n = static_cast<std::int64_t>(1) << depth;
        if (n * n > lim.max_cells) throw BudgetExceeded("too many torus cells at this resolution");
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < n; ++j) out.push_back(Cell::box(depth, {i, j}));
    } else if (auto wg = sys.as<WedgeSys>()) {
        for (int side = 0; side < 2; ++side)
            for (auto& inner : cell_family(*wg->side, depth, lim)) out.push_back(Cell::wedge(side, inner));
    } else if (auto pr = sys.as<ProductSys>()) {
        auto ls = cell_family(*pr->left, depth, lim);
        auto rs = cell_family(*pr->right, depth, lim);
        if (static_cast<std::int64_t>(ls.size() * rs.size()) > lim.max_cells)
            throw BudgetExceeded("too many product cells at this depth");
        for (const auto& l : ls)
            for (const auto& r : rs) out.push_back(Cell::product(l, r));
    } else {
        throw ConfigError("cell_family: unhandled system kind");
    }
    if (static_cast<std::int64_t>(out.size()) > lim.max_cells)
        throw BudgetExceeded("cell count exceeds cap");
    return out;
}

bool point_in_cell(const SystemSpec& sys, const PointSpec& x, const Cell& c) {
    if (sys.is_subshift()) {
        auto sc = c.as<SubshiftCell>();
        if (!sc) throw ConfigError("subshift expects cylinder cells");
        for (std::size_t i = 0; i < sc->word.size(); ++i)
            if (x.symbol_at(static_cast<std::int64_t>(i)) != sc->word[i]) return false;
        return true;
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto wc = c.as_wedge();
        auto wp = x.as<WedgePoint>();
        if (!wc || !wp) throw SideMismatch("wedge membership needs wedge cell and point");
        if (points_equal(*wg->side, *wp->inner, *wg->glue))
            return point_in_cell(*wg->side, *wg->glue, wc->inner);
        return wp->side == wc->side && point_in_cell(*wg->side, *wp->inner, wc->inner);
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pc = c.as_product();
        auto pp = x.as<ProductPoint>();
        if (!pc || !pp) throw ConfigError("product membership needs product cell and point");
        return point_in_cell(*pr->left, *pp->left, pc->left) && point_in_cell(*pr->right, *pp->right, pc->right);
    }
    auto bc = c.as<BoxCell>();
    auto tp = x.as<TorusPoint>();
    if (!bc || !tp) throw ConfigError("metric membership needs box cell and torus point");
    if (bc->corner.size() != tp->coords.size()) throw ConfigError("cell/point dimension mismatch");
    for (std::size_t i = 0; i < bc->corner.size(); ++i) {
        std::int64_t idx = (tp->coords[i] * Rat(static_cast<std::int64_t>(1) << bc->resolution)).floor();
        if (idx != bc->corner[i]) return false;
    }
    return true;
}

Cell cell_of(const SystemSpec& sys, const PointSpec& x, int depth) {
    if (depth < 1) throw ConfigError("cell depth must be positive");
    if (sys.is_subshift()) {
        Word w;
        for (int i = 0; i < depth; ++i) w.push_back(x.symbol_at(i));
        return Cell::cylinder(std::move(w));
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto wp = x.as<WedgePoint>();
        if (!wp) throw SideMismatch("wedge system expects a wedge point");
        return Cell::wedge(wp->side, cell_of(*wg->side, *wp->inner, depth));
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pp = x.as<ProductPoint>();
        if (!pp) throw ConfigError("product system expects a product point");
        return Cell::product(cell_of(*pr->left, *pp->left, depth), cell_of(*pr->right, *pp->right, depth));
    }
    auto tp = x.as<TorusPoint>();
    if (!tp) throw ConfigError("metric system expects a torus point");
    std::vector<std::int64_t> corner;
    for (const auto& coord : tp->coords)
        corner.push_back((coord * Rat(static_cast<std::int64_t>(1) << depth)).floor());
    return Cell::box(depth, std::move(corner));
}

PointSpec canonical_point(const SystemSpec& sys, const Cell& c) {
    if (!cell_admissible(sys, c)) throw InadmissibleCell("canonical point of an inadmissible cell");
    if (sys.is_subshift()) {
        const Word& w = c.as<SubshiftCell>()->word;
        if (sys.as<FullShiftSys>() || sys.as<DiffSetSys>())
            return PointSpec::eventually_periodic(w, Word{0});
        // SFT: greedy minimal-symbol tail until a transfer state repeats
        SubshiftOracle oracle(sys);
        Word prefix = w;
        std::vector<Word> contexts;
        for (;;) {
            auto opts = oracle.symbol_options(prefix, static_cast<std::int64_t>(prefix.size()));
            if (opts.empty()) throw InadmissibleCell("admissible cell with no extension");
            prefix.push_back(opts.front());
            // the transfer state is the last context() symbols; a repeat means
            // the greedy tail has entered its cycle
            std::size_t ctx = std::min(prefix.size(), static_cast<std::size_t>(oracle.context()));
            Word tail(prefix.end() - static_cast<std::ptrdiff_t>(ctx), prefix.end());
            for (std::size_t i = 0; i < contexts.size(); ++i) {
                if (contexts[i] == tail && prefix.size() - w.size() > i + 1) {
                    std::size_t cycle_start = w.size() + i + 1;
                    Word pre(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(cycle_start));
                    Word per(prefix.begin() + static_cast<std::ptrdiff_t>(cycle_start), prefix.end());
                    return PointSpec::eventually_periodic(std::move(pre), std::move(per));
                }
            }
            contexts.push_back(tail);
            if (prefix.size() > w.size() + 4096) throw BudgetExceeded("no periodic tail found");
        }
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto wc = c.as_wedge();
        return PointSpec::wedge(wc->side, canonical_point(*wg->side, wc->inner));
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pc = c.as_product();
        return PointSpec::product(canonical_point(*pr->left, pc->left), canonical_point(*pr->right, pc->right));
    }
    auto bc = c.as<BoxCell>();
    std::vector<Rat> coords;
    for (auto idx : bc->corner) coords.push_back(Rat(idx, static_cast<std::int64_t>(1) << bc->resolution));
    return PointSpec::torus(std::move(coords));
}

// ---------------------------------------------------------------------------
// image diameters and point spreads

DiamBounds image_diameter_bounds(const SystemSpec& sys, const Cell& c, std::int64_t n, const Limits& lim) {
    if (sys.is_subshift()) {
        auto sc = c.as<SubshiftCell>();
        if (!sc) throw ConfigError("subshift expects cylinder cells");
        SubshiftOracle oracle(sys);
        if (!oracle.word_admissible(sc->word)) throw InadmissibleCell("diameter of an inadmissible cell");
        std::int64_t scan_bound = n + 512;
        auto j = oracle.first_branch_at_or_after(sc->word, n, scan_bound);
        if (j) {
            Rat d = dyadic_clamped(*j - n);
            return {d, d};
        }
        if (oracle.branch_scan_exact()) return {Rat(0), Rat(0)};
        return {Rat(0), dyadic_clamped(scan_bound - n)};
    }
    if (rot_or_null(sys)) {
        Rat len = dyadic(c.as<BoxCell>()->resolution);
        Rat d = min(len, Rat(1, 2));
        return {d, d};
    }
    if (sys.as<SkewProductSys>()) {
        auto bc = c.as<BoxCell>();
        Rat s = dyadic(bc->resolution);
        // first coordinate translates; second shears by n * (x-range)
        Rat second = Rat(n + 1) * s;
        Rat d = max(min(s, Rat(1, 2)), min(second, Rat(1, 2)));
        return {d, d};
    }
    if (sys.as<ProximalCircleSys>()) {
        auto bc = c.as<BoxCell>();
        Rat a = Rat(bc->corner[0], static_cast<std::int64_t>(1) << bc->resolution);
        Rat b = a + dyadic(bc->resolution);
        Rat ia = proximal_iterate(a, n);
        Rat ib = proximal_iterate(b, n);
        Rat d = min(ib - ia, Rat(1, 2));
        return {d, d};
    }
    if (auto wg = sys.as<WedgeSys>()) {
        return image_diameter_bounds(*wg->side, c.as_wedge()->inner, n, lim);
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pc = c.as_product();
        auto l = image_diameter_bounds(*pr->left, pc->left, n, lim);
        auto r = image_diameter_bounds(*pr->right, pc->right, n, lim);
        return {max(l.lower, r.lower), max(l.upper, r.upper)};
    }
    throw ConfigError("image_diameter_bounds: unhandled system kind");
}

Rat point_spread(const SystemSpec& sys, const PointSpec& x, const Cell& c, std::int64_t n) {
    if (sys.is_subshift()) {
        auto sc = c.as<SubshiftCell>();
        if (!sc) throw ConfigError("subshift expects cylinder cells");
        SubshiftOracle oracle(sys);
        const Word& w = sc->word;
        std::int64_t start = std::max(n, static_cast<std::int64_t>(w.size()));
        std::int64_t bound = start + 512;
        for (std::int64_t j = start; j <= bound; ++j) {
            Sym xj = x.symbol_at(j);
            for (Sym o : oracle.symbol_options(w, j))
                if (o != xj) return dyadic_clamped(j - n);
        }
        return Rat(0); // no separation found within the scan bound
    }
    if (rot_or_null(sys) || sys.as<ProximalCircleSys>()) {
        auto bc = c.as<BoxCell>();
        auto tp = x.as<TorusPoint>();
        Rat a = Rat(bc->corner[0], static_cast<std::int64_t>(1) << bc->resolution);
        Rat b = a + dyadic(bc->resolution);
        if (sys.as<ProximalCircleSys>()) {
            Rat xn = proximal_iterate(tp->coords[0], n);
            Rat ia = proximal_iterate(a, n);
            Rat ib = proximal_iterate(b, n);
            return interval_circle_sup(xn - ib, xn - ia);
        }
        // rotation: isometry, offsets constant
        return interval_circle_sup(tp->coords[0] - b, tp->coords[0] - a);
    }
    if (sys.as<SkewProductSys>()) {
        auto bc = c.as<BoxCell>();
        auto tp = x.as<TorusPoint>();
        Rat s = dyadic(bc->resolution);
        Rat a1 = Rat(bc->corner[0], static_cast<std::int64_t>(1) << bc->resolution);
        Rat a2 = Rat(bc->corner[1], static_cast<std::int64_t>(1) << bc->resolution);
        Rat d1lo = tp->coords[0] - (a1 + s), d1hi = tp->coords[0] - a1;
        Rat d2lo = tp->coords[1] - (a2 + s), d2hi = tp->coords[1] - a2;
        Rat first = interval_circle_sup(d1lo, d1hi);
        Rat second = interval_circle_sup(Rat(n) * d1lo + d2lo, Rat(n) * d1hi + d2hi);
        return max(first, second);
    }
    if (auto wg = sys.as<WedgeSys>()) {
        auto wp = x.as<WedgePoint>();
        auto wc = c.as_wedge();
        if (!wp || !wc) throw SideMismatch("wedge spread needs wedge point and cell");
        return point_spread(*wg->side, *wp->inner, wc->inner, n);
    }
    if (auto pr = sys.as<ProductSys>()) {
        auto pp = x.as<ProductPoint>();
        auto pc = c.as_product();
        return max(point_spread(*pr->left, *pp->left, pc->left, n),
                   point_spread(*pr->right, *pp->right, pc->right, n));
    }
    throw ConfigError("point_spread: unhandled system kind");
}

} // namespace topodyn
