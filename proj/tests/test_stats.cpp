#include "hadex/golden.hpp"
#include "hadex/stats.hpp"

#include "doctest.h"

#include <cmath>

using namespace hadex;

namespace {

struct Fixture {
    RankTable table = build_rank_table();
    ExpressibilityMap map = run_search(table, {}).map;
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

}  // namespace

TEST_CASE("density table totals") {
    const auto t = density_table(fx().map, fx().table);
    CHECK(t.total() == 20160);
    CHECK(t.class_total(MatrixClass::Expressible) == golden::kExpressible);
    CHECK(t.class_total(MatrixClass::Counterexample) == golden::kCounterexamples);
    // A full-rank matrix has at least 4 ones and at most 13 (no two equal rows).
    for (int k : {0, 1, 2, 3, 14, 15, 16}) CHECK(t.bin_total(k) == 0);
    CHECK(std::isnan(t.fraction(0, MatrixClass::Expressible)));
}

TEST_CASE("density bins agree with the class ranges at printed precision") {
    const auto t = density_table(fx().map, fx().table);
    for (int k = 0; k <= 16; ++k) {
        if (t.bin_total(k) == 0) continue;
        if (k <= 9) {
            const double pct = std::round(1000 * t.fraction(k, MatrixClass::Expressible)) / 10;
            CHECK(pct >= golden::kLowDensityMinExpressiblePercent);
        } else {
            const double pct = std::round(100 * t.fraction(k, MatrixClass::Counterexample));
            CHECK(pct >= golden::kHighDensityMinCounterexamplePercent);
        }
    }
    // The boundary bins, frozen from the search.
    CHECK(t.counts[9][0] == 4416);
    CHECK(t.counts[9][1] == 576);
    CHECK(t.counts[10][0] == 288);
    CHECK(t.counts[10][1] == 2304);
}

TEST_CASE("threshold accuracy") {
    const auto t = density_table(fx().map, fx().table);
    CHECK(std::abs(threshold_accuracy(t, golden::kDensityCutoff) - golden::kDensityAccuracy) <=
          golden::kDensityAccuracyTolerance);
    CHECK(threshold_accuracy(t, 16) == doctest::Approx(14856.0 / 20160.0));
    CHECK(threshold_accuracy(t, 0) == doctest::Approx(5304.0 / 20160.0));
    CHECK(best_cutoff(t) == golden::kDensityCutoff);
    CHECK_THROWS_AS((void)threshold_accuracy(t, -1), std::invalid_argument);
    CHECK_THROWS_AS((void)threshold_accuracy(t, 17), std::invalid_argument);
}

TEST_CASE("zero statistics") {
    const auto [e, c] = zero_stats(fx().map, fx().table);
    CHECK(e.n == golden::kExpressible);
    CHECK(c.n == golden::kCounterexamples);
    CHECK(std::abs(e.mean_zeros - golden::kMeanZerosExpressible) <= golden::kMeanZerosTolerance);
    CHECK(std::abs(c.mean_zeros - golden::kMeanZerosCounterexample) <= golden::kMeanZerosTolerance);
    CHECK(std::abs(e.mean_zeros - c.mean_zeros - golden::kMeanZerosDifference) <=
          golden::kMeanZerosDifferenceTolerance);
    CHECK(e.mean_ones() + e.mean_zeros == 16.0);
    CHECK(c.mean_ones() + c.mean_zeros == 16.0);

    // Means agree with the density table marginals.
    const auto t = density_table(fx().map, fx().table);
    double ones_e = 0, ones_c = 0;
    for (int k = 0; k <= 16; ++k) {
        ones_e += k * double(t.counts[k][0]);
        ones_c += k * double(t.counts[k][1]);
    }
    CHECK(e.mean_ones() == doctest::Approx(ones_e / double(e.n)));
    CHECK(c.mean_ones() == doctest::Approx(ones_c / double(c.n)));
}

TEST_CASE("t statistics") {
    const auto [e, c] = zero_stats(fx().map, fx().table);
    const double pooled = pooled_t(e, c);
    const double welch = welch_t(e, c);
    CHECK(std::abs(pooled - golden::kTStatistic) <= golden::kTStatisticTolerance);
    CHECK(welch > pooled);  // the smaller class has the larger variance here

    CHECK(welch_t(e, e) == 0.0);
    CHECK(pooled_t(c, c) == 0.0);

    const ClassStats a{MatrixClass::Expressible, 2, 1.0, 0.0};
    const ClassStats b{MatrixClass::Counterexample, 2, 0.0, 2.0};
    CHECK(welch_t(a, b) == doctest::Approx(1.0));
    // Pooled: s_p^2 = (0 + 2) / 2 = 1, t = 1 / sqrt(1 * (1/2 + 1/2)) = 1.
    CHECK(pooled_t(a, b) == doctest::Approx(1.0));

    const ClassStats flat{MatrixClass::Expressible, 5, 3.0, 0.0};
    CHECK_THROWS_AS((void)welch_t(flat, flat), DegenerateSample);
    CHECK_THROWS_AS((void)pooled_t(flat, flat), DegenerateSample);
    const ClassStats tiny{MatrixClass::Expressible, 1, 3.0, 1.0};
    CHECK_THROWS_AS((void)welch_t(tiny, b), DegenerateSample);
}

TEST_CASE("class stats from integer sums") {
    // Samples {1, 2, 3, 6}: mean 3, sample variance 14/3.
    const auto s = class_stats_from_sums(MatrixClass::Expressible, 4, 12, 50);
    CHECK(s.mean_zeros == 3.0);
    CHECK(s.variance_zeros == doctest::Approx(14.0 / 3.0));
}
