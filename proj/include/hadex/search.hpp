#pragma once

// Exhaustive (2,2) Hadamard product search over GF(2).
//
// Phase 1 tabulates the rank of every 4x4 binary matrix. Phase 2 ANDs every
// ordered pair of rank-2 matrices and marks the full-rank products. Phase 3
// reads the counterexamples off as the unmarked full-rank matrices.
//
// Factors of rank <= 1 are skipped: rank(a & b) <= rank(a) * rank(b) < 4.
// The `all_low_rank_factors` option re-includes them so tests can confirm
// that the restriction loses nothing.

#include "hadex/bitmatrix.hpp"
#include "hadex/kernels.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hadex {

class NotFullRank : public std::domain_error {
public:
    explicit NotFullRank(BitMatrix4 m);
};

class RankTable {
public:
    /// Rank of every one of the 65,536 words.
    static RankTable build();

    [[nodiscard]] Rank operator[](BitMatrix4 m) const { return Rank{ranks_[m.bits()]}; }
    [[nodiscard]] const std::uint8_t* data() const { return ranks_.data(); }

    /// Counts per rank 0..4.
    [[nodiscard]] std::array<std::size_t, 5> histogram() const;

    /// Ascending list of words with the given rank.
    [[nodiscard]] std::vector<std::uint16_t> words_of_rank(int rank) const;

private:
    std::array<std::uint8_t, kMatrixCount> ranks_{};
};

/// One bit per 16-bit word.
class ExpressibilityMap {
public:
    static constexpr std::size_t kWords = kMatrixCount / 64;

    [[nodiscard]] bool test(BitMatrix4 m) const {
        return (bits_[m.bits() >> 6] >> (m.bits() & 63)) & 1;
    }
    void set(BitMatrix4 m) { bits_[m.bits() >> 6] |= std::uint64_t{1} << (m.bits() & 63); }
    [[nodiscard]] std::size_t count() const;

    ExpressibilityMap& operator|=(const ExpressibilityMap& other);
    friend bool operator==(const ExpressibilityMap&, const ExpressibilityMap&) = default;

    [[nodiscard]] std::uint64_t* words() { return bits_.data(); }
    [[nodiscard]] const std::uint64_t* words() const { return bits_.data(); }

private:
    std::array<std::uint64_t, kWords> bits_{};
};

struct Witness {
    BitMatrix4 product;
    BitMatrix4 factor_a;
    BitMatrix4 factor_b;
    friend bool operator==(const Witness&, const Witness&) = default;
};

struct SearchOptions {
    int threads = 1;
    bool record_witnesses = false;
    bool all_low_rank_factors = false;
    kernels::Backend backend = kernels::best_available();
};

struct SearchReport {
    std::array<std::size_t, 5> rank_histogram{};
    std::size_t expressible_count = 0;
    std::size_t counterexample_count = 0;
    std::size_t pairs_checked = 0;
    std::size_t full_rank_products = 0;
    std::chrono::milliseconds elapsed{0};
};

struct SearchResult {
    ExpressibilityMap map;
    SearchReport report;
    /// One witness per expressible matrix, ascending by product; the
    /// lexicographically smallest (a, b) pair is kept. Empty unless requested.
    std::vector<Witness> witnesses;
};

[[nodiscard]] RankTable build_rank_table();

[[nodiscard]] SearchResult run_search(const RankTable& table, const SearchOptions& options = {});

/// Full-rank words whose map bit is clear, ascending.
[[nodiscard]] std::vector<BitMatrix4> counterexamples(const ExpressibilityMap& map,
                                                      const RankTable& table);

/// Full-rank words whose map bit is set, ascending.
[[nodiscard]] std::vector<BitMatrix4> expressible_matrices(const ExpressibilityMap& map,
                                                           const RankTable& table);

/// Throws NotFullRank when rank(m) < 4.
[[nodiscard]] bool is_expressible(BitMatrix4 m, const ExpressibilityMap& map);

struct WitnessReplay {
    std::size_t checked = 0;
    std::size_t valid = 0;
    std::size_t map_covered = 0;  // expressible matrices that have a valid witness
};

/// Replays every witness: both factors must have rank exactly 2 and AND to the product.
[[nodiscard]] WitnessReplay replay_witnesses(const std::vector<Witness>& witnesses,
                                             const ExpressibilityMap& map,
                                             const RankTable& table);

}  // namespace hadex
