#pragma once

// Density and zero-count statistics of the two classes of full-rank matrices.

#include "hadex/search.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hadex {

enum class MatrixClass { Expressible = 0, Counterexample = 1 };

[[nodiscard]] std::string_view label(MatrixClass c);

class DegenerateSample : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct DensityTable {
    /// counts[ones][class]
    std::array<std::array<std::size_t, 2>, 17> counts{};

    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] std::size_t class_total(MatrixClass c) const;
    [[nodiscard]] std::size_t bin_total(int ones) const;
    /// NaN for an empty bin.
    [[nodiscard]] double fraction(int ones, MatrixClass c) const;
};

struct ClassStats {
    MatrixClass label = MatrixClass::Expressible;
    std::size_t n = 0;
    double mean_zeros = 0;
    double variance_zeros = 0;  // sample variance, n - 1 denominator
    double mean_ones() const { return 16.0 - mean_zeros; }
};

[[nodiscard]] DensityTable density_table(const ExpressibilityMap& map, const RankTable& table);

/// Accuracy of "expressible iff ones <= cutoff" over every full-rank matrix.
/// Throws std::invalid_argument unless 0 <= cutoff <= 16.
[[nodiscard]] double threshold_accuracy(const DensityTable& table, int cutoff);

/// Cutoff with the highest accuracy; the smallest one on ties.
[[nodiscard]] int best_cutoff(const DensityTable& table);

/// Builds class statistics from exact integer sums of zero counts.
[[nodiscard]] ClassStats class_stats_from_sums(MatrixClass label, std::size_t n, std::uint64_t sum,
                                               std::uint64_t sum_squares);

/// (expressible, counterexample)
[[nodiscard]] std::pair<ClassStats, ClassStats> zero_stats(const ExpressibilityMap& map,
                                                           const RankTable& table);

/// Unequal-variance t statistic. Throws DegenerateSample when n < 2 on either
/// side or both variances are zero.
[[nodiscard]] double welch_t(const ClassStats& a, const ClassStats& b);

/// Student's t with pooled variance. Same preconditions as welch_t.
[[nodiscard]] double pooled_t(const ClassStats& a, const ClassStats& b);

}  // namespace hadex
