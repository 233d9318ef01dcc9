#include "hadex/search.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hadex {

NotFullRank::NotFullRank(BitMatrix4 m)
    : std::domain_error("matrix " + to_hex(m) + " has rank " +
                        std::to_string(rank_gf2(m).value) + " < 4") {}

RankTable RankTable::build() {
    RankTable t;
    for (std::size_t w = 0; w < kMatrixCount; ++w)
        t.ranks_[w] = static_cast<std::uint8_t>(rank_gf2(BitMatrix4(std::uint16_t(w))).value);
    return t;
}

std::array<std::size_t, 5> RankTable::histogram() const {
    std::array<std::size_t, 5> h{};
    for (const auto r : ranks_) ++h[r];
    return h;
}

std::vector<std::uint16_t> RankTable::words_of_rank(int rank) const {
    std::vector<std::uint16_t> out;
    for (std::size_t w = 0; w < kMatrixCount; ++w)
        if (ranks_[w] == rank) out.push_back(static_cast<std::uint16_t>(w));
    return out;
}

std::size_t ExpressibilityMap::count() const {
    std::size_t n = 0;
    for (const auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

ExpressibilityMap& ExpressibilityMap::operator|=(const ExpressibilityMap& other) {
    for (std::size_t i = 0; i < kWords; ++i) bits_[i] |= other.bits_[i];
    return *this;
}

RankTable build_rank_table() { return RankTable::build(); }

namespace {

constexpr std::uint32_t kNoWitness = std::numeric_limits<std::uint32_t>::max();

struct Worker {
    ExpressibilityMap map;
    std::vector<std::uint32_t> witness;  // (a << 16 | b) per product, kNoWitness if none
    std::size_t pairs = 0;
    std::size_t hits = 0;
};

void scan_with_witnesses(std::uint16_t a, std::span<const std::uint16_t> factors,
                         const std::uint8_t* ranks, Worker& w) {
    for (const std::uint16_t b : factors) {
        const std::uint16_t p = a & b;
        if (ranks[p] != 4) continue;
        ++w.hits;
        const BitMatrix4 m(p);
        if (!w.map.test(m)) {
            w.map.set(m);
            w.witness[p] = (std::uint32_t{a} << 16) | b;
        }
    }
}

}  // namespace

SearchResult run_search(const RankTable& table, const SearchOptions& options) {
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::uint16_t> factors = table.words_of_rank(2);
    if (options.all_low_rank_factors) {
        for (int r : {0, 1})
            for (auto w : table.words_of_rank(r)) factors.push_back(w);
        std::sort(factors.begin(), factors.end());
    }

    const int threads = std::max(1, options.threads);
    const std::size_t n = factors.size();
    std::vector<Worker> workers(static_cast<std::size_t>(threads));
    const auto mark = kernels::mark_full_rank_products(options.backend);

    // Contiguous outer-factor chunks; each worker owns a private map, merged by OR.
#pragma omp parallel for num_threads(threads) schedule(static, 1)
    for (int t = 0; t < threads; ++t) {
        Worker& w = workers[static_cast<std::size_t>(t)];
        if (options.record_witnesses) w.witness.assign(kMatrixCount, kNoWitness);
        const std::size_t begin = n * static_cast<std::size_t>(t) / static_cast<std::size_t>(threads);
        const std::size_t end = n * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(threads);
        for (std::size_t i = begin; i < end; ++i) {
            if (options.record_witnesses)
                scan_with_witnesses(factors[i], factors, table.data(), w);
            else
                w.hits += mark(factors[i], factors, table.data(), w.map.words());
            w.pairs += n;
        }
    }

    SearchResult result;
    std::vector<std::uint32_t> best;
    if (options.record_witnesses) best.assign(kMatrixCount, kNoWitness);
    for (const Worker& w : workers) {
        result.map |= w.map;
        result.report.pairs_checked += w.pairs;
        result.report.full_rank_products += w.hits;
        if (options.record_witnesses)
            for (std::size_t p = 0; p < kMatrixCount; ++p) best[p] = std::min(best[p], w.witness[p]);
    }
    if (options.record_witnesses) {
        for (std::size_t p = 0; p < kMatrixCount; ++p) {
            if (best[p] == kNoWitness) continue;
            result.witnesses.push_back({BitMatrix4(static_cast<std::uint16_t>(p)),
                                        BitMatrix4(static_cast<std::uint16_t>(best[p] >> 16)),
                                        BitMatrix4(static_cast<std::uint16_t>(best[p] & 0xFFFF))});
        }
    }

    auto& report = result.report;
    report.rank_histogram = table.histogram();
    report.expressible_count = result.map.count();
    report.counterexample_count = report.rank_histogram[4] - report.expressible_count;
    report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
}

std::vector<BitMatrix4> counterexamples(const ExpressibilityMap& map, const RankTable& table) {
    std::vector<BitMatrix4> out;
    for (std::size_t w = 0; w < kMatrixCount; ++w) {
        const BitMatrix4 m(static_cast<std::uint16_t>(w));
        if (table[m].value == 4 && !map.test(m)) out.push_back(m);
    }
    return out;
}

std::vector<BitMatrix4> expressible_matrices(const ExpressibilityMap& map, const RankTable& table) {
    std::vector<BitMatrix4> out;
    for (std::size_t w = 0; w < kMatrixCount; ++w) {
        const BitMatrix4 m(static_cast<std::uint16_t>(w));
        if (table[m].value == 4 && map.test(m)) out.push_back(m);
    }
    return out;
}

bool is_expressible(BitMatrix4 m, const ExpressibilityMap& map) {
    if (rank_gf2(m).value != 4) throw NotFullRank(m);
    return map.test(m);
}

WitnessReplay replay_witnesses(const std::vector<Witness>& witnesses, const ExpressibilityMap& map,
                               const RankTable& table) {
    WitnessReplay replay;
    ExpressibilityMap covered;
    for (const Witness& w : witnesses) {
        ++replay.checked;
        const bool ok = table[w.factor_a].value == 2 && table[w.factor_b].value == 2 &&
                        hadamard(w.factor_a, w.factor_b) == w.product &&
                        rank_gf2(w.product).value == 4;
        if (!ok) continue;
        ++replay.valid;
        if (map.test(w.product) && !covered.test(w.product)) {
            covered.set(w.product);
            ++replay.map_covered;
        }
    }
    return replay;
}

}  // namespace hadex
