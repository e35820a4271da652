#include <doctest.h>

#include "topodyn/serialize.hpp"

using namespace topodyn;

namespace {

SystemSpec wedge_fixture_system() {
    return SystemSpec::wedge(SystemSpec::full_shift(2), PointSpec::eventually_periodic("", "0"));
}

} // namespace

TEST_CASE("config text round trip is canonical") {
    for (const auto& sys :
         {SystemSpec::full_shift(3), SystemSpec::sft(2, {word_from_string("11")}),
          SystemSpec::diff_set(pspec_squares()), SystemSpec::rotation(Rat(610, 987)),
          SystemSpec::skew_product(Rat(1, 8)), SystemSpec::proximal_circle(), wedge_fixture_system(),
          SystemSpec::product(SystemSpec::full_shift(2), SystemSpec::rotation(Rat(1, 4)))}) {
        std::string text = system_to_text(sys);
        SystemSpec back = system_from_text(text);
        CHECK(system_to_text(back) == text); // write(parse(write(x))) == write(x)
    }
}

TEST_CASE("point config round trip") {
    ConfigTable t;
    auto p = PointSpec::wedge(1, PointSpec::eventually_periodic("01", "10"));
    point_to_config(p, "point", t);
    auto back = point_from_config(t, "point");
    ConfigTable t2;
    point_to_config(back, "point", t2);
    CHECK(write_config(t) == write_config(t2));

    ConfigTable t3;
    point_to_config(PointSpec::torus({Rat(1, 8), Rat(3, 4)}), "point", t3);
    auto torus = point_from_config(t3, "point");
    CHECK(torus.as<TorusPoint>()->coords[1] == Rat(3, 4));
}

TEST_CASE("config parser rejects malformed input") {
    CHECK_THROWS_AS(parse_config("key = 1\n"), ConfigError);           // key outside section
    CHECK_THROWS_AS(parse_config("[a\nk = 1\n"), ConfigError);         // unterminated header
    CHECK_THROWS_AS(parse_config("[a]\nk = 1\nk = 2\n"), ConfigError); // duplicate key
    CHECK_THROWS_AS(parse_config("[a]\nnoequals\n"), ConfigError);
    auto t = parse_config("[a]\nk = \"v w\" # comment\n");
    CHECK(t.at("a").at("k") == "v w");
    CHECK_THROWS_AS(system_from_text("[system]\nkind = banana\n"), ConfigError);
}

TEST_CASE("window set CSV and RLE round trips") {
    std::uint64_t s = 7;
    for (int it = 0; it < 200; ++it) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        std::int64_t horizon = 20 + static_cast<std::int64_t>((s >> 20) % 200);
        std::vector<std::int64_t> m;
        for (std::int64_t n = 0; n <= horizon; ++n) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            if ((s >> 33) % 3 == 0) m.push_back(n);
        }
        auto ws = WindowSet::of(horizon, std::move(m));
        auto csv_back = windowset_from_csv(windowset_to_csv(ws));
        CHECK(csv_back.horizon == ws.horizon);
        CHECK(csv_back.members == ws.members);
        auto rle_back = windowset_from_rle(windowset_to_rle(ws));
        CHECK(rle_back.horizon == ws.horizon);
        CHECK(rle_back.members == ws.members);
    }
}

TEST_CASE("json integer lists switch to run encoding when large") {
    std::vector<std::int64_t> small{1, 2, 3};
    auto ws_small = WindowSet::of(10, small);
    CHECK(to_json(ws_small)["members"]["encoding"] == "plain");

    std::vector<std::int64_t> big;
    for (std::int64_t n = 0; n <= 20000; ++n) big.push_back(n);
    auto ws_big = WindowSet::of(20000, std::move(big));
    auto j = to_json(ws_big);
    CHECK(j["members"]["encoding"] == "rle");
    CHECK(j["members"]["runs"].size() == 1);
}

TEST_CASE("plot extraction") {
    nlohmann::json report;
    report["result"]["profiles"] = nlohmann::json::array();
    report["result"]["profiles"].push_back({{"counts", {2, 4, 8}}, {"eps", "3/10"}});
    auto csv = emit_plot_data(report, "sep");
    CHECK(csv.rfind("k,log_sep\n", 0) == 0);
    CHECK_THROWS_AS(emit_plot_data(report, "thick-profile"), MissingSeries);
    CHECK_THROWS_AS(emit_plot_data(report, "nope"), MissingSeries);
}
