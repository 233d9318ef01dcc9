#include "hadex/stats.hpp"

#include <cmath>
#include <limits>

namespace hadex {

std::string_view label(MatrixClass c) {
    return c == MatrixClass::Expressible ? "expressible" : "counterexample";
}

std::size_t DensityTable::total() const {
    std::size_t n = 0;
    for (const auto& bin : counts) n += bin[0] + bin[1];
    return n;
}

std::size_t DensityTable::class_total(MatrixClass c) const {
    std::size_t n = 0;
    for (const auto& bin : counts) n += bin[static_cast<int>(c)];
    return n;
}

std::size_t DensityTable::bin_total(int ones) const { return counts.at(ones)[0] + counts.at(ones)[1]; }

double DensityTable::fraction(int ones, MatrixClass c) const {
    const std::size_t n = bin_total(ones);
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    return double(counts[ones][static_cast<int>(c)]) / double(n);
}

DensityTable density_table(const ExpressibilityMap& map, const RankTable& table) {
    DensityTable t;
    for (std::size_t w = 0; w < kMatrixCount; ++w) {
        const BitMatrix4 m(static_cast<std::uint16_t>(w));
        if (table[m].value != 4) continue;
        ++t.counts[count_ones(m)][map.test(m) ? 0 : 1];
    }
    return t;
}

double threshold_accuracy(const DensityTable& table, int cutoff) {
    if (cutoff < 0 || cutoff > 16)
        throw std::invalid_argument("cutoff must be in 0..16, got " + std::to_string(cutoff));
    std::size_t correct = 0;
    for (int k = 0; k <= 16; ++k)
        correct += k <= cutoff ? table.counts[k][0] : table.counts[k][1];
    return double(correct) / double(table.total());
}

int best_cutoff(const DensityTable& table) {
    int best = 0;
    for (int k = 1; k <= 16; ++k)
        if (threshold_accuracy(table, k) > threshold_accuracy(table, best)) best = k;
    return best;
}

ClassStats class_stats_from_sums(MatrixClass label, std::size_t n, std::uint64_t sum,
                                 std::uint64_t sum_squares) {
    ClassStats s;
    s.label = label;
    s.n = n;
    if (n == 0) return s;
    s.mean_zeros = double(sum) / double(n);
    if (n >= 2) {
        // n * sum(x^2) - (sum x)^2 is exact in 64 bits for these magnitudes.
        const auto num = static_cast<std::int64_t>(n * sum_squares) - static_cast<std::int64_t>(sum * sum);
        s.variance_zeros = double(num) / (double(n) * double(n - 1));
    }
    return s;
}

std::pair<ClassStats, ClassStats> zero_stats(const ExpressibilityMap& map, const RankTable& table) {
    std::array<std::size_t, 2> n{};
    std::array<std::uint64_t, 2> sum{}, sq{};
    for (std::size_t w = 0; w < kMatrixCount; ++w) {
        const BitMatrix4 m(static_cast<std::uint16_t>(w));
        if (table[m].value != 4) continue;
        const int c = map.test(m) ? 0 : 1;
        const std::uint64_t zeros = 16 - static_cast<std::uint64_t>(count_ones(m));
        ++n[c];
        sum[c] += zeros;
        sq[c] += zeros * zeros;
    }
    return {class_stats_from_sums(MatrixClass::Expressible, n[0], sum[0], sq[0]),
            class_stats_from_sums(MatrixClass::Counterexample, n[1], sum[1], sq[1])};
}

namespace {

void require_testable(const ClassStats& a, const ClassStats& b) {
    if (a.n < 2 || b.n < 2) throw DegenerateSample("t-test needs at least two samples per class");
    if (a.variance_zeros == 0 && b.variance_zeros == 0)
        throw DegenerateSample("t-test undefined: both samples have zero variance");
}

}  // namespace

double welch_t(const ClassStats& a, const ClassStats& b) {
    require_testable(a, b);
    return (a.mean_zeros - b.mean_zeros) /
           std::sqrt(a.variance_zeros / double(a.n) + b.variance_zeros / double(b.n));
}

double pooled_t(const ClassStats& a, const ClassStats& b) {
    require_testable(a, b);
    const double na = double(a.n), nb = double(b.n);
    const double pooled = ((na - 1) * a.variance_zeros + (nb - 1) * b.variance_zeros) / (na + nb - 2);
    return (a.mean_zeros - b.mean_zeros) / std::sqrt(pooled * (1 / na + 1 / nb));
}

}  // namespace hadex
