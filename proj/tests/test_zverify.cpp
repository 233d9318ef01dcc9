#include "hadex/golden.hpp"
#include "hadex/search.hpp"
#include "hadex/zverify.hpp"

#include "doctest.h"

#include <Eigen/Dense>

#include <algorithm>
#include <random>
#include <set>

using namespace hadex;

namespace {

const std::vector<BitMatrix4>& gf2_counterexamples() {
    static const std::vector<BitMatrix4> list = [] {
        const auto table = build_rank_table();
        return counterexamples(run_search(table, {}).map, table);
    }();
    return list;
}

int svd_rank(const SignedMatrix& s) {
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = s.entries[r][c];
    const Eigen::JacobiSVD<Eigen::Matrix4d> svd(m);
    int rank = 0;
    for (int i = 0; i < 4; ++i) rank += svd.singularValues()[i] > 1e-9;
    return rank;
}

SignedMatrix random_rank2_signed(std::mt19937& rng) {
    // (u1 v1^T + u2 v2^T) / 2 with +-1 vectors: entries in {-1, 0, 1}, rank <= 2.
    auto sign = [&] { return (rng() & 1) ? -1 : 1; };
    int u[2][4], v[2][4];
    for (auto& vec : u)
        for (int& x : vec) x = sign();
    for (auto& vec : v)
        for (int& x : vec) x = sign();
    SignedMatrix s;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s.entries[r][c] = std::int8_t((u[0][r] * v[0][c] + u[1][r] * v[1][c]) / 2);
    return s;
}

}  // namespace

TEST_CASE("signed candidates") {
    const auto one = signed_candidates(BitMatrix4(0x0001));
    REQUIRE(one.size() == 2);
    std::set<int> corner;
    for (const SignedMatrix& s : one) {
        corner.insert(s.entries[0][0]);
        CHECK(s.pattern() == BitMatrix4(0x0001));
    }
    CHECK(corner == std::set<int>{-1, 1});

    const auto none = signed_candidates(BitMatrix4(0x0000));
    CHECK(none.size() == 1);
    CHECK(none[0] == SignedMatrix{});

    const auto example = signed_candidates(BitMatrix4(golden::kExampleCounterexample));
    CHECK(example.size() == 512);
    std::set<std::array<std::array<std::int8_t, 4>, 4>> distinct;
    for (const SignedMatrix& s : example) {
        REQUIRE(s.pattern() == BitMatrix4(golden::kExampleCounterexample));
        distinct.insert(s.entries);
    }
    CHECK(distinct.size() == 512);
}

TEST_CASE("rank_z on fixed matrices") {
    CHECK(rank_z(SignedMatrix{}) == 0);
    SignedMatrix ones;
    for (auto& row : ones.entries) row.fill(1);
    CHECK(rank_z(ones) == 1);
    SignedMatrix diag;
    diag.entries[0][0] = 1;
    diag.entries[1][1] = -1;
    diag.entries[2][2] = -1;
    diag.entries[3][3] = 1;
    CHECK(rank_z(diag) == 4);
    // Rank 2 with entries that would defeat a naive float pivot.
    CHECK(rank_z({{{1, 2, 3, 4}, {2, 4, 6, 8}, {1, 0, 1, 0}, {3, 4, 7, 8}}}) == 2);
    CHECK(rank_z({{{0, 0, 0, 5}, {0, 0, 7, 0}, {0, 3, 0, 0}, {2, 0, 0, 0}}}) == 4);
    // Needs a row swap in the middle of elimination.
    CHECK(rank_z({{{1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 0, 0}}}) == 3);
}

TEST_CASE("rank_z agrees with an SVD rank on random signed matrices") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> entry(-1, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        SignedMatrix s;
        // Mix dense random matrices with planted low-rank ones.
        if (trial % 3 == 0) {
            s = random_rank2_signed(rng);
        } else {
            for (auto& row : s.entries)
                for (auto& x : row) x = std::int8_t(entry(rng));
        }
        REQUIRE(rank_z(s) == svd_rank(s));
    }
}

TEST_CASE("rank_z is invariant under row and column negation") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> entry(-1, 1);
    for (int trial = 0; trial < 300; ++trial) {
        SignedMatrix s;
        for (auto& row : s.entries)
            for (auto& x : row) x = std::int8_t(entry(rng));
        SignedMatrix t = s;
        const unsigned flips = rng();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const bool neg = ((flips >> r) ^ (flips >> (4 + c))) & 1;
                if (neg) t.entries[r][c] = std::int8_t(-t.entries[r][c]);
            }
        REQUIRE(rank_z(t) == rank_z(s));
    }
}

TEST_CASE("the example counterexample survives every sign assignment") {
    const auto v = verify_counterexample_z(BitMatrix4(golden::kExampleCounterexample));
    CHECK(v.verified);
    CHECK(v.ones == 9);
    CHECK(v.assignments_checked == 512);
    CHECK(v.representatives == 512);
    CHECK(v.min_rank_found >= 3);
}

TEST_CASE("a sign pattern with a rank-2 signing is not verified") {
    std::mt19937 rng(31);
    int tested = 0;
    while (tested < 50) {
        const SignedMatrix s = random_rank2_signed(rng);
        const BitMatrix4 m = s.pattern();
        if (m.bits() == 0) continue;
        // s o s is the pattern itself, with s of rank <= 2.
        for (auto mode : {ZMode::Full, ZMode::OrbitReduced}) {
            const auto v = verify_counterexample_z(m, mode);
            REQUIRE(v.min_rank_found <= 2);
            REQUIRE_FALSE(v.verified);
        }
        ++tested;
    }
}

TEST_CASE("orbit-reduced verdicts match full enumeration") {
    const auto& list = gf2_counterexamples();
    std::mt19937 rng(50);
    std::vector<BitMatrix4> sample;
    std::sample(list.begin(), list.end(), std::back_inserter(sample), 50, rng);
    for (const auto m : sample) {
        const auto full = verify_counterexample_z(m, ZMode::Full);
        const auto reduced = verify_counterexample_z(m, ZMode::OrbitReduced);
        REQUIRE(full.verified == reduced.verified);
        REQUIRE(full.min_rank_found == reduced.min_rank_found);
        REQUIRE(full.assignments_checked == (std::uint64_t{1} << full.ones));
        REQUIRE(reduced.assignments_checked == full.assignments_checked);
        REQUIRE(reduced.representatives < full.representatives);
    }
    // Also on patterns that do have low-rank signings.
    for (std::uint16_t w : {std::uint16_t(0x0001), std::uint16_t(0x0033), std::uint16_t(0xFFFF),
                            std::uint16_t(0x9669), std::uint16_t(0x0000)}) {
        const auto full = verify_counterexample_z(BitMatrix4(w), ZMode::Full);
        const auto reduced = verify_counterexample_z(BitMatrix4(w), ZMode::OrbitReduced);
        CHECK(full.min_rank_found == reduced.min_rank_found);
        CHECK(full.assignments_checked == reduced.assignments_checked);
    }
}

TEST_CASE("verify_all_z preserves order and handles edge cases") {
    CHECK(verify_all_z({}).empty());
    const std::vector<BitMatrix4> single{BitMatrix4(golden::kExampleCounterexample)};
    const auto one = verify_all_z(single);
    REQUIRE(one.size() == 1);
    CHECK(one[0].verified);

    const auto& list = gf2_counterexamples();
    const std::vector<BitMatrix4> head(list.begin(), list.begin() + 64);
    const auto serial = verify_all_z(head, ZMode::Full, 1);
    const auto parallel = verify_all_z(head, ZMode::Full, 4);
    for (std::size_t i = 0; i < head.size(); ++i) {
        CHECK(serial[i].matrix == head[i]);
        CHECK(parallel[i].matrix == head[i]);
        CHECK(parallel[i].min_rank_found == serial[i].min_rank_found);
    }
}
