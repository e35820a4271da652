#include <doctest.h>

#include <cmath>
#include <set>

#include "topodyn/entropy.hpp"

using namespace topodyn;

namespace {

// Window-union counting oracle for the full 2-shift: enumerate all words up
// to the last window position and count distinct tuples on the union.
std::int64_t brute_tuple_count(const std::vector<std::int64_t>& times, int L) {
    std::set<std::int64_t> posset;
    for (auto n : times)
        for (int d = 0; d <= L; ++d) posset.insert(n + d);
    std::vector<std::int64_t> pos(posset.begin(), posset.end());
    std::int64_t len = pos.back() + 1;
    std::set<std::vector<int>> tuples;
    for (std::int64_t mask = 0; mask < (std::int64_t(1) << len); ++mask) {
        std::vector<int> t;
        for (auto p : pos) t.push_back(static_cast<int>((mask >> p) & 1));
        tuples.insert(t);
    }
    return static_cast<std::int64_t>(tuples.size());
}

} // namespace

TEST_CASE("sequence specs prepend zero and stay increasing") {
    CHECK(SequenceSpec::full().times(4) == std::vector<std::int64_t>{0, 1, 2, 3});
    CHECK(SequenceSpec::geometric(2).times(4) == std::vector<std::int64_t>{0, 2, 4, 8});
    CHECK(SequenceSpec::arithmetic(3, 2).times(4) == std::vector<std::int64_t>{0, 2, 5, 8});
    CHECK(SequenceSpec::explicit_list({5, 9}).times(3) == std::vector<std::int64_t>{0, 5, 9});
    CHECK_THROWS_AS(SequenceSpec::explicit_list({3, 3}), ConfigError);
    CHECK_THROWS_AS(SequenceSpec::explicit_list({2}).times(12), WindowOverflow);
}

TEST_CASE("exact separated counts on the full shift") {
    auto fs = SystemSpec::full_shift(2);
    // eps = 3/10 has window length L = 1; the union for the full sequence is
    // [0, k], so the count is 2^(k+1)
    for (int k = 1; k <= 12; ++k) {
        CHECK(sep_count_exact(fs, SequenceSpec::full(), k, Rat(3, 10)) == (std::int64_t(1) << (k + 1)));
    }
    // small cross-check against the brute-force tuple oracle
    for (int k = 1; k <= 4; ++k) {
        auto times = SequenceSpec::full().times(k);
        CHECK(sep_count_exact(fs, SequenceSpec::full(), k, Rat(3, 10)) == brute_tuple_count(times, 1));
    }
    // geometric windows are disjoint: product over windows
    CHECK(sep_count_exact(fs, SequenceSpec::geometric(2), 4, Rat(3, 10)) == 256);
    CHECK(sep_count_exact(fs, SequenceSpec::geometric(2), 4, Rat(3, 10)) ==
          brute_tuple_count(SequenceSpec::geometric(2).times(4), 1));
}

TEST_CASE("sep counts: k = 1 near eps = 1 counts admissible blocks") {
    auto lp = SystemSpec::diff_set(pspec_squares());
    // L(0.6) = 0: separated iff the first symbols differ
    CHECK(sep_count_exact(lp, SequenceSpec::full(), 1, Rat(3, 5)) == 2);
    auto fs3 = SystemSpec::full_shift(3);
    CHECK(sep_count_exact(fs3, SequenceSpec::full(), 1, Rat(3, 5)) == 3);
}

TEST_CASE("sep counts on SFTs and monotonicity in k") {
    auto gm = SystemSpec::sft(2, {word_from_string("11")});
    std::int64_t prev = 0;
    for (int k = 1; k <= 8; ++k) {
        auto c = sep_count_exact(gm, SequenceSpec::full(), k, Rat(3, 10));
        CHECK(c >= prev);
        prev = c;
    }
    // relabeling the alphabet leaves counts unchanged
    auto gm_relabeled = SystemSpec::sft(2, {word_from_string("00")});
    for (int k = 1; k <= 6; ++k) {
        CHECK(sep_count_exact(gm, SequenceSpec::full(), k, Rat(3, 10)) ==
              sep_count_exact(gm_relabeled, SequenceSpec::full(), k, Rat(3, 10)));
    }
    // golden-mean counts for L=1 windows: distinct admissible words of
    // length k+1, i.e. Fibonacci growth; brute-force cross-check
    SubshiftOracle oracle(gm);
    for (int k = 1; k <= 6; ++k) {
        std::int64_t cnt = 0;
        for (int mask = 0; mask < (1 << (k + 1)); ++mask) {
            Word w;
            for (int i = 0; i <= k; ++i) w.push_back(static_cast<Sym>((mask >> i) & 1));
            if (oracle.word_admissible(w)) ++cnt;
        }
        CHECK(sep_count_exact(gm, SequenceSpec::full(), k, Rat(3, 10)) == cnt);
    }
}

TEST_CASE("greedy separated sets") {
    auto rot = SystemSpec::rotation(Rat(610, 987));
    std::vector<PointSpec> sample;
    for (int i = 0; i < 16; ++i) sample.push_back(PointSpec::torus({Rat(i, 16)}));
    // eps below the sample spacing: everything is separated, isometry keeps it
    CHECK(sep_greedy(rot, sample, SequenceSpec::full(), 5, Rat(1, 32)) == 16);
    CHECK(sep_greedy(rot, {sample[3]}, SequenceSpec::full(), 5, Rat(1, 32)) == 1);

    // full shift: the 512 length-9-determined points match the exact count
    auto fs = SystemSpec::full_shift(2);
    std::vector<PointSpec> pts;
    for (int mask = 0; mask < 512; ++mask) {
        Word w;
        for (int i = 8; i >= 0; --i) w.push_back(static_cast<Sym>((mask >> i) & 1));
        pts.push_back(PointSpec::eventually_periodic(w, Word{0}));
    }
    CHECK(sep_greedy(fs, pts, SequenceSpec::full(), 8, Rat(3, 10)) == 512);
    CHECK(sep_greedy(fs, pts, SequenceSpec::full(), 8, Rat(3, 10)) <=
          sep_count_exact(fs, SequenceSpec::full(), 8, Rat(3, 10)));
}

TEST_CASE("sequence entropy estimates") {
    auto fs = SystemSpec::full_shift(2);
    auto est = seq_entropy_estimate(fs, SequenceSpec::full(), {Rat(3, 10)}, 10);
    CHECK(est.method == "exact");
    CHECK(std::abs(est.value - std::log(2.0)) < 1e-6);

    auto rot = SystemSpec::rotation(Rat(610, 987));
    auto rest = seq_entropy_estimate(rot, SequenceSpec::full(), {Rat(3, 10)}, 8);
    CHECK(rest.method == "greedy");
    CHECK(std::abs(rest.value) < 1e-6);

    CHECK_THROWS_AS(seq_entropy_estimate(fs, SequenceSpec::full(), {Rat(1, 10), Rat(1, 5)}, 8), ConfigError);
}

TEST_CASE("window overflow guard") {
    auto fs = SystemSpec::full_shift(2);
    CHECK_THROWS_AS(sep_count_exact(fs, SequenceSpec::geometric(2), 14, Rat(3, 10), Limits{}), WindowOverflow);
    CHECK_THROWS_AS(sep_count_exact(SystemSpec::rotation(Rat(1, 3)), SequenceSpec::full(), 3, Rat(3, 10)),
                    NotASubshift);
}
