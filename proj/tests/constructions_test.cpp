#include <doctest.h>

#include "topodyn/constructions.hpp"
#include "topodyn/hitting.hpp"

using namespace topodyn;

TEST_CASE("difference-set admissibility") {
    // P = N: everything admissible
    auto all = lambda_p(pspec_all());
    SubshiftOracle oa(all);
    CHECK(oa.word_admissible(word_from_string("110101")));

    // P = odds: 101 has gap 2, not odd
    auto odds = lambda_p(pspec_odds());
    SubshiftOracle oo(odds);
    CHECK_FALSE(oo.word_admissible(word_from_string("101")));
    CHECK(oo.word_admissible(word_from_string("1001"))); // gap 3

    // newprop P: the marker word has gap 11 = 10^1 + 1
    auto np = lambda_p(pspec_powerblock(10));
    SubshiftOracle on(np);
    Word marker = word_from_string("101");
    marker.clear();
    marker = NewpropBundle(10).marker();
    CHECK(on.word_admissible(marker));
}

TEST_CASE("subword-hereditary admissibility, generated") {
    auto lp = lambda_p(pspec_squares());
    SubshiftOracle oracle(lp);
    std::uint64_t s = 99;
    int cases = 0;
    while (cases < 1000) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        std::uint64_t bits = s >> 11;
        int len = 3 + static_cast<int>(bits % 10);
        Word w;
        for (int i = 0; i < len; ++i) w.push_back(static_cast<Sym>((bits >> (4 + i)) & 1));
        if (!oracle.word_admissible(w)) continue;
        ++cases;
        // every subword of an admissible word is admissible
        for (std::size_t a = 0; a < w.size(); ++a) {
            for (std::size_t b = a; b < w.size(); ++b) {
                Word sub(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b) + 1);
                CHECK(oracle.word_admissible(sub));
            }
        }
    }
}

TEST_CASE("newprop bundle closed forms, base 10") {
    NewpropBundle b(10);
    CHECK(b.b(0).str(10) == "11");
    CHECK(b.exponent(1).str(10) == "23");
    CHECK(b.a(1).str(10) == "100000000000000000000000");
    CHECK(b.visit(1).str(10) == "100000000000000000000012");
    // I(23) is the single point 10^23 + 11
    auto iv = b.interval(TowerNat(BigNat(23)));
    REQUIRE(iv.has_value());
    CHECK(iv->first.str(10) == "100000000000000000000011");
    CHECK(iv->second.str(10) == "100000000000000000000011");
    // intervals below m = 23 are empty
    CHECK_FALSE(b.interval(TowerNat(BigNat(22))).has_value());
    // the next visit is structurally huge
    CHECK(b.visit(2).str(10) == "10^(100000000000000000000035) + 100000000000000000000000 + 24");
}

TEST_CASE("verify_newprop holds through n=5 and the mutated control fails") {
    auto v1 = verify_newprop(10, 1);
    CHECK(v1.verdict.verdict == Verdict::HoldsAtHorizon);
    REQUIRE(v1.trace.size() == 1);
    CHECK(v1.trace[0].find("100000000000000000000012") != std::string::npos);
    CHECK(v1.trace[0].find("disjoint") != std::string::npos);

    auto v5 = verify_newprop(10, 5);
    CHECK(v5.verdict.verdict == Verdict::HoldsAtHorizon);
    CHECK(v5.trace.size() == 5);
    // monotone: every smaller n also holds
    for (int n = 1; n <= 4; ++n) CHECK(verify_newprop(10, n).verdict.verdict == Verdict::HoldsAtHorizon);

    auto bad = verify_newprop(10, 5, true);
    CHECK(bad.verdict.verdict == Verdict::FailsAtHorizon);

    // base-2 variant: same structure, materializable first block
    auto v2 = verify_newprop(2, 4);
    CHECK(v2.verdict.verdict == Verdict::HoldsAtHorizon);
    CHECK(verify_newprop(2, 4, true).verdict.verdict == Verdict::FailsAtHorizon);
}

TEST_CASE("newprop base-2 prefix materializes and is admissible") {
    NewpropBundle b(2);
    CHECK(b.a(1).str(2) == "8388608"); // 2^23
    Limits lim;
    lim.prefix_limit = (1 << 24);
    std::int64_t len = (std::int64_t(1) << 23) + 40;
    auto prefix = b.prefix(len, lim);
    REQUIRE(static_cast<std::int64_t>(prefix.size()) == len);

    // re-derive the 1-positions and check every pairwise gap against P
    std::vector<std::int64_t> ones;
    for (std::int64_t i = 0; i < len; ++i)
        if (prefix[static_cast<std::size_t>(i)] != 0) ones.push_back(i);
    std::vector<std::int64_t> expect{0, 11, (std::int64_t(1) << 23) + 12, (std::int64_t(1) << 23) + 23};
    CHECK(ones == expect);
    auto p = pspec_powerblock(2);
    for (std::size_t i = 0; i < ones.size(); ++i)
        for (std::size_t j = i + 1; j < ones.size(); ++j) CHECK(p.member(ones[j] - ones[i]));

    CHECK_THROWS_AS(b.prefix((std::int64_t(1) << 24) + 1, lim), PrefixLimit);
}

TEST_CASE("newprop visit formula matches a direct scan of the materialized prefix") {
    NewpropBundle b(2);
    Limits lim;
    lim.prefix_limit = 1 << 24;
    lim.max_horizon = 1 << 24;
    std::int64_t v1 = (std::int64_t(1) << 23) + 12;
    std::int64_t horizon = v1 + 8;
    auto x = PointSpec::prefix_stream(b.prefix(horizon + 16, lim));
    auto sys = b.system();
    auto marker_cell = Cell::cylinder(b.marker());
    auto visits = visit_set(sys, x, marker_cell, horizon, lim);
    CHECK(visits.members == std::vector<std::int64_t>{0, v1});
}

TEST_CASE("newprop base-10 point: desk-scale visits are decided by the formula") {
    // V(1) = 10^23 + 12 dwarfs any materializable horizon, so within the
    // window the marker cylinder is visited exactly once, at n = 0
    auto f = standard_fixture("newprop-10");
    NewpropBundle b(10);
    auto visits = visit_set(f.system, *f.point, Cell::cylinder(b.marker()), 2000);
    CHECK(visits.members == std::vector<std::int64_t>{0});
}

TEST_CASE("newprop visits avoid the hitting intervals arithmetically") {
    // the omega_NT exclusion at the heart of the construction: the visit
    // times V(n) of C[W] and the N(C[W], C[0W]) interval envelope I(m) are
    // disjoint for every candidate m
    NewpropBundle b(10);
    for (int n = 1; n <= 4; ++n) {
        TowerNat v = b.visit(n);
        TowerNat m = b.exponent(n);
        auto iv = b.interval(m);
        REQUIRE(iv.has_value());
        CHECK((v.compare(iv->first) < 0 || v.compare(iv->second) > 0));
        // V(n) sits exactly one past the interval top
        CHECK(v.compare(iv->second.add(BigNat(1))) == 0);
    }
}

TEST_CASE("fixture registry") {
    auto names = fixture_registry();
    std::vector<std::string> expect{"full-2-shift", "newprop-10", "wedge-fullshift", "golden-rotation",
                                    "proximal-contraction"};
    for (const auto& want : expect) {
        bool found = false;
        for (const auto& [name, desc] : names) found = found || name == want;
        CHECK(found);
    }
    CHECK_THROWS_AS(standard_fixture("no-such-fixture"), UnknownFixture);

    auto f = standard_fixture("full-2-shift");
    CHECK(f.system.is_subshift());
    REQUIRE(f.point.has_value());
    CHECK(point_in_cell(f.system, *f.point, Cell::cylinder("00")));
}

TEST_CASE("proximal fixture: visits to a fixed-point neighborhood are thickly syndetic") {
    auto f = standard_fixture("proximal-contraction");
    REQUIRE(f.point.has_value());
    auto up = Cell::box(3, {0}); // neighborhood of the fixed point 0
    auto vs = visit_set(f.system, *f.point, up, 1000);
    for (std::int64_t n = 1; n <= 10; ++n) {
        auto gap = thickly_syndetic_gap(vs, n);
        CHECK(gap >= 1);
        CHECK(gap <= 64);
    }
}
