#pragma once

// Reference numbers the `--check` mode and the acceptance suite compare against.

#include <array>
#include <cstddef>
#include <cstdint>

namespace hadex::golden {

// Number of 4x4 binary matrices of each GF(2) rank 0..4.
inline constexpr std::array<std::size_t, 5> kRankHistogram{1, 225, 7350, 37800, 20160};

// Probability that a random 4x4 binary matrix is invertible: prod (1 - 2^-i), i = 1..4.
inline constexpr std::size_t kFullRankNumerator = 315;
inline constexpr std::size_t kFullRankDenominator = 1024;

// Full-rank matrices that are / are not a product of two rank-2 matrices.
inline constexpr std::size_t kExpressible = 14856;
inline constexpr std::size_t kCounterexamples = 5304;

// Rows 1111 / 1110 / 0100 / 1000: full rank, not a rank-2 o rank-2 product over GF(2).
inline constexpr std::uint16_t kExampleCounterexample = 0x127f;

// Frozen from a full search.
inline constexpr std::uint16_t kIdentity = 0x8421;
inline constexpr bool kIdentityExpressible = true;

// "Expressible iff ones <= 9" classifier.
inline constexpr int kDensityCutoff = 9;
inline constexpr double kDensityAccuracy = 0.957;
inline constexpr double kDensityAccuracyTolerance = 0.001;

// Zero-count means per class and their difference.
inline constexpr double kMeanZerosExpressible = 8.17;
inline constexpr double kMeanZerosCounterexample = 5.50;
inline constexpr double kMeanZerosTolerance = 0.005;
inline constexpr double kMeanZerosDifference = 2.67;
inline constexpr double kMeanZerosDifferenceTolerance = 0.01;

// Two-sample t statistic on zero counts (at least one convention must match).
inline constexpr double kTStatistic = 160.31;
inline constexpr double kTStatisticTolerance = 0.5;

// Bin-level ranges, at the printed precision (percent, one decimal / integer).
inline constexpr double kLowDensityMinExpressiblePercent = 88.5;
inline constexpr int kHighDensityMinCounterexamplePercent = 89;

// Real-optimization evidence settings.
inline constexpr int kControls = 100;
inline constexpr std::uint64_t kControlSeed = 42;
inline constexpr double kControlMinConvergedFraction = 0.90;
inline constexpr double kControlResidual = 1e-6;
inline constexpr int kCounterexampleSample = 200;
inline constexpr double kEvidenceThreshold = 1e-3;
inline constexpr int kRestarts = 20;
inline constexpr int kIterations = 5000;

}  // namespace hadex::golden
