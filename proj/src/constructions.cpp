#include "topodyn/constructions.hpp"

#include <algorithm>
#include <cmath>

namespace topodyn {

SystemSpec lambda_p(const PSpec& p) { return SystemSpec::diff_set(p); }

NewpropBundle::NewpropBundle(std::uint32_t base) : base_(base) {
    if (base < 2) throw ConfigError("newprop base must be >= 2");
    marker_.push_back(1);
    for (int i = 0; i < 10; ++i) marker_.push_back(0);
    marker_.push_back(1);
    // the marker is admissible: its single gap 11 = B^n + s for some n needs
    // checking per base; 11 = 10^1 + 1 = 2^3 + 3
    PSpec ps = pspec_powerblock(base_);
    if (!ps.member(11))
        throw ConfigError("marker gap 11 is not in the difference set for base " + std::to_string(base));
}

NewpropBundle newprop_bundle(std::uint32_t base) { return NewpropBundle(base); }

TowerNat NewpropBundle::b(int n) const {
    if (n < 0) throw ConfigError("negative block index");
    TowerNat cur(BigNat(11));
    for (int i = 1; i <= n; ++i) {
        TowerNat m = cur.add(BigNat(12));
        cur = TowerNat::power(base_, m).add(m);
    }
    return cur;
}

TowerNat NewpropBundle::exponent(int n) const {
    if (n < 1) throw ConfigError("exponent index starts at 1");
    return b(n - 1).add(BigNat(12));
}

TowerNat NewpropBundle::a(int n) const { return TowerNat::power(base_, exponent(n)); }

TowerNat NewpropBundle::visit(int n) const { return b(n).sub_tail(BigNat(11)); }

std::optional<std::pair<TowerNat, TowerNat>> NewpropBundle::interval(const TowerNat& m) const {
    // nonempty iff m - 12 >= 11, i.e. m >= 23
    if (m.compare(TowerNat(BigNat(23))) < 0) return std::nullopt;
    TowerNat lo = TowerNat::power(base_, m).add(BigNat(11));
    TowerNat hi = TowerNat::power(base_, m).add(m.sub_tail(BigNat(12)));
    return std::make_pair(lo, hi);
}

std::vector<Sym> NewpropBundle::prefix(std::int64_t length, const Limits& lim) const {
    if (length < 1) throw ConfigError("prefix length must be positive");
    if (length > lim.prefix_limit) throw PrefixLimit("prefix request exceeds cap");
    std::vector<Sym> out(static_cast<std::size_t>(length), 0);
    auto place_marker = [&](std::int64_t at) {
        for (std::size_t i = 0; i < marker_.size(); ++i) {
            std::int64_t pos = at + static_cast<std::int64_t>(i);
            if (pos < length) out[static_cast<std::size_t>(pos)] = marker_[i];
        }
    };
    place_marker(0);
    for (int n = 1;; ++n) {
        auto v = visit(n).materialize(base_, 64);
        if (!v) break; // visit times beyond this are astronomically far
        auto v64 = v->to_u64();
        if (!v64 || static_cast<std::int64_t>(*v64) >= length) break;
        place_marker(static_cast<std::int64_t>(*v64));
    }
    return out;
}

namespace {

// a > 2b for tower naturals, decided structurally: with canonical forms,
// exponent dominance by two certifies the doubling.
bool exceeds_double(const TowerNat& a, const TowerNat& b, std::uint32_t base) {
    if (a.is_plain() && b.is_plain()) return a.tail() > b.tail() + b.tail();
    if (!a.is_plain() && b.is_plain()) {
        const TowerNat& ea = a.exponent(0);
        auto e_mat = ea.materialize(base, 64);
        auto e64 = e_mat ? e_mat->to_u64() : std::nullopt;
        if (!e64) return true; // exponent beyond u64: the power dwarfs any plain value
        BigNat twice = b.tail() + b.tail();
        long double digits = static_cast<long double>(*e64) * std::log10(static_cast<long double>(base));
        if (digits > static_cast<long double>(twice.decimal_digits() + 2)) return true;
        return BigNat::pow(base, *e64) > twice;
    }
    if (!a.is_plain() && !b.is_plain()) {
        // B^{e_a} >= B^{e_b + 2} > 4 B^{e_b} > 2b for canonical b
        return a.exponent(0).compare(b.exponent(0).add(BigNat(2))) >= 0;
    }
    return false; // plain a against a tower b
}

} // namespace

NewpropVerification verify_newprop(std::uint32_t base, int n_max, bool mutated) {
    if (n_max < 1) throw ConfigError("n_max must be positive");
    NewpropBundle bundle(base);
    NewpropVerification out;
    out.verdict.property = mutated ? "newprop-visits-avoid-return-intervals (mutated control)"
                                   : "newprop-visits-avoid-return-intervals";
    out.verdict.params["base"] = std::to_string(base);
    out.verdict.params["n_max"] = std::to_string(n_max);
    out.verdict.verdict = Verdict::HoldsAtHorizon;

    const std::uint64_t digit_cap = 4096;
    for (int n = 1; n <= n_max; ++n) {
        TowerNat m = bundle.exponent(n);
        TowerNat v = bundle.visit(n);
        if (mutated) v = v.sub_tail(BigNat(12));

        // certify the candidate: B^m <= V(n) < B^{m+1}
        TowerNat pw = TowerNat::power(base, m);
        TowerNat pw_next = TowerNat::power(base, m.add(BigNat(1)));
        if (!(pw.compare(v) <= 0 && v.compare(pw_next) < 0))
            throw Error("newprop: candidate exponent failed certification");

        // growth invariant a_n > 2 b_{n-1}
        if (!exceeds_double(bundle.a(n), bundle.b(n - 1), base))
            throw Error("newprop: gap growth invariant failed");

        std::string line = "n=" + std::to_string(n) + ": V=" + v.str(base, digit_cap) +
                           ", m=" + m.str(base, digit_cap);
        bool inside_any = false;
        for (int d = -1; d <= 1; ++d) {
            TowerNat mm = d == 0 ? m : (d < 0 ? m.sub_tail(BigNat(1)) : m.add(BigNat(1)));
            auto iv = bundle.interval(mm);
            if (!iv) continue;
            bool inside = v.compare(iv->first) >= 0 && v.compare(iv->second) <= 0;
            if (d == 0)
                line += ", I(m)=[" + iv->first.str(base, digit_cap) + ", " + iv->second.str(base, digit_cap) + "]";
            if (inside) {
                inside_any = true;
                line += d == 0 ? ": INSIDE" : ": INSIDE neighbor";
            }
        }
        line += inside_any ? "" : ": disjoint";
        out.trace.push_back(line);
        if (inside_any) {
            out.verdict.verdict = Verdict::FailsAtHorizon;
            out.verdict.witness = "V(" + std::to_string(n) + ") lands in a return interval";
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// fixtures

namespace {

PointSpec de_bruijn_point() {
    // (0011)^infty visits every 2-cylinder of the full 2-shift each period
    return PointSpec::eventually_periodic("", "0011");
}

} // namespace

std::vector<std::pair<std::string, std::string>> fixture_registry() {
    return {
        {"full-2-shift", "full shift on two symbols; point (0011)^inf"},
        {"full-3-shift", "full shift on three symbols; point (012)^inf"},
        {"golden-rotation", "circle rotation by 610/987 (golden-mean convergent); point 0"},
        {"skew-product", "torus map (x,y) -> (x+a, x+y), a = 610/987; point (0,0)"},
        {"lambda-squares", "difference-set subshift over the thick set U[m^2+1, m^2+m]; point 0^inf"},
        {"newprop-10", "difference-set subshift over {10^n+s : s <= n} with the marker-block point"},
        {"newprop-2", "base-2 scaled variant with a materializable second block"},
        {"wedge-fullshift", "two copies of the full 2-shift glued at 0^inf with side-swapping dynamics"},
        {"proximal-contraction", "degree-one circle map collapsing every orbit to the fixed point 0"},
        {"product-fullshift", "product of two full 2-shifts"},
    };
}

Fixture standard_fixture(const std::string& name, const Limits& lim) {
    if (name == "full-2-shift")
        return {name, fixture_registry()[0].second, SystemSpec::full_shift(2), de_bruijn_point()};
    if (name == "full-3-shift")
        return {name, fixture_registry()[1].second, SystemSpec::full_shift(3),
                PointSpec::eventually_periodic("", "012")};
    if (name == "golden-rotation")
        return {name, fixture_registry()[2].second, SystemSpec::rotation(Rat(610, 987)),
                PointSpec::torus({Rat(0)})};
    if (name == "skew-product")
        return {name, fixture_registry()[3].second, SystemSpec::skew_product(Rat(610, 987)),
                PointSpec::torus({Rat(0), Rat(0)})};
    if (name == "lambda-squares")
        return {name, fixture_registry()[4].second, lambda_p(pspec_squares()),
                PointSpec::eventually_periodic("", "0")};
    if (name == "newprop-10") {
        NewpropBundle b(10);
        std::int64_t len = std::min<std::int64_t>(lim.prefix_limit, 1 << 20);
        return {name, fixture_registry()[5].second, b.system(), PointSpec::prefix_stream(b.prefix(len, lim))};
    }
    if (name == "newprop-2") {
        NewpropBundle b(2);
        std::int64_t len = std::min<std::int64_t>(lim.prefix_limit, (1 << 23) + 4096);
        return {name, fixture_registry()[6].second, b.system(), PointSpec::prefix_stream(b.prefix(len, lim))};
    }
    if (name == "wedge-fullshift") {
        auto side = SystemSpec::full_shift(2);
        auto glue = PointSpec::eventually_periodic("", "0");
        return {name, fixture_registry()[7].second, SystemSpec::wedge(side, glue),
                PointSpec::wedge(0, de_bruijn_point())};
    }
    if (name == "proximal-contraction")
        return {name, fixture_registry()[8].second, SystemSpec::proximal_circle(),
                PointSpec::torus({Rat(5, 8)})};
    if (name == "product-fullshift")
        return {name, fixture_registry()[9].second,
                SystemSpec::product(SystemSpec::full_shift(2), SystemSpec::full_shift(2)),
                PointSpec::product(de_bruijn_point(), PointSpec::eventually_periodic("", "0110"))};
    throw UnknownFixture("no fixture named '" + name + "'");
}

} // namespace topodyn
