#include "hadex/kernels.hpp"
#include "hadex/search.hpp"

#include "doctest.h"

#include <random>
#include <vector>

using namespace hadex;

namespace {

const RankTable& table() {
    static const RankTable t = build_rank_table();
    return t;
}

std::vector<std::uint16_t> all_words() {
    std::vector<std::uint16_t> words(kMatrixCount);
    for (std::size_t w = 0; w < kMatrixCount; ++w) words[w] = std::uint16_t(w);
    return words;
}

}  // namespace

TEST_CASE("scalar determinant test matches the rank table on every word") {
    int mismatches = 0;
    for (std::uint32_t w = 0; w < kMatrixCount; ++w)
        mismatches += kernels::scalar::is_full_rank(std::uint16_t(w)) !=
                      (table()[BitMatrix4(std::uint16_t(w))].value == 4);
    CHECK(mismatches == 0);
}

TEST_CASE("backend names and parsing") {
    CHECK(kernels::name(kernels::Backend::Scalar) == "scalar");
    CHECK(kernels::parse_backend("scalar") == kernels::Backend::Scalar);
    CHECK(kernels::parse_backend("auto") == kernels::best_available());
    CHECK_THROWS_AS((void)kernels::parse_backend("sse9"), std::invalid_argument);
    CHECK(kernels::is_available(kernels::Backend::Scalar));
}

TEST_CASE("scalar kernel marks exactly the full-rank products") {
    const auto words = all_words();
    for (std::uint16_t a : {std::uint16_t(0xFFFF), std::uint16_t(0x7BDE), std::uint16_t(0x127F)}) {
        ExpressibilityMap marks;
        const auto hits = kernels::scalar::mark_full_rank_products(a, words, table().data(), marks.words());
        ExpressibilityMap expected;
        std::size_t expected_hits = 0;
        for (auto b : words) {
            const BitMatrix4 p(std::uint16_t(a & b));
            if (rank_gf2(p).value == 4) {
                expected.set(p);
                ++expected_hits;
            }
        }
        CHECK(marks == expected);
        CHECK(hits == expected_hits);
    }
}

#if defined(HADEX_HAVE_AVX2)
TEST_CASE("avx2 full-rank flags agree with the rank table on every word") {
    if (!kernels::is_available(kernels::Backend::Avx2)) return;
    const auto words = all_words();
    std::vector<std::uint8_t> flags(words.size());
    kernels::avx2::full_rank_flags(words, flags);
    int mismatches = 0;
    for (std::size_t w = 0; w < words.size(); ++w)
        mismatches += flags[w] != (table()[BitMatrix4(std::uint16_t(w))].value == 4 ? 1 : 0);
    CHECK(mismatches == 0);
}

TEST_CASE("avx2 and scalar kernels produce identical marks and hit counts") {
    if (!kernels::is_available(kernels::Backend::Avx2)) return;
    std::mt19937 rng(11);
    const auto rank2 = table().words_of_rank(2);
    // Odd lengths exercise the scalar tail of the vector loop.
    for (std::size_t len : {std::size_t(0), std::size_t(1), std::size_t(15), std::size_t(16),
                            std::size_t(17), std::size_t(333), rank2.size()}) {
        std::vector<std::uint16_t> factors(rank2.begin(), rank2.begin() + static_cast<std::ptrdiff_t>(len));
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = std::uint16_t(rng());
            ExpressibilityMap s, v;
            const auto hs = kernels::scalar::mark_full_rank_products(a, factors, table().data(), s.words());
            const auto hv = kernels::avx2::mark_full_rank_products(a, factors, table().data(), v.words());
            REQUIRE(s == v);
            REQUIRE(hs == hv);
        }
    }
}

TEST_CASE("full searches agree across backends") {
    if (!kernels::is_available(kernels::Backend::Avx2)) return;
    SearchOptions scalar_opts, simd_opts;
    scalar_opts.backend = kernels::Backend::Scalar;
    simd_opts.backend = kernels::Backend::Avx2;
    const auto s = run_search(table(), scalar_opts);
    const auto v = run_search(table(), simd_opts);
    CHECK(s.map == v.map);
    CHECK(s.report.full_rank_products == v.report.full_rank_products);
}
#endif
