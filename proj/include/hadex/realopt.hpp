#pragma once

// Numerical search for real rank-2 o rank-2 factorizations of binary targets.
//
// A = ua * va^T and B = ub * vb^T with 4x2 blocks, so both factors have rank
// at most 2 by construction. We minimize ||A o B - C||_F^2 with multi-start
// gradient descent. Failing to converge is evidence, not proof, that no such
// factorization exists.

#include "hadex/bitmatrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace hadex {

using Mat42 = Eigen::Matrix<double, 4, 2>;
using Mat4 = Eigen::Matrix4d;

class NonFinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FactorPair {
    static constexpr int kParameters = 32;
    using Vector = Eigen::Matrix<double, kParameters, 1>;

    Mat42 ua = Mat42::Zero();
    Mat42 va = Mat42::Zero();
    Mat42 ub = Mat42::Zero();
    Mat42 vb = Mat42::Zero();

    [[nodiscard]] Mat4 a() const { return ua * va.transpose(); }
    [[nodiscard]] Mat4 b() const { return ub * vb.transpose(); }
    [[nodiscard]] Mat4 product() const { return a().cwiseProduct(b()); }

    [[nodiscard]] Vector flatten() const;
    [[nodiscard]] static FactorPair unflatten(const Vector& v);

    friend bool operator==(const FactorPair&, const FactorPair&) = default;
};

[[nodiscard]] Mat4 to_real(BitMatrix4 m);

/// Positions with |entry| > cutoff.
[[nodiscard]] BitMatrix4 support_pattern(const Mat4& m, double cutoff = 0.5);

/// ||(ua va^T) o (ub vb^T) - c||_F^2
[[nodiscard]] double objective(const FactorPair& p, const Mat4& c);

/// Analytic gradient of `objective`; with R = A o B - C,
/// d/dua = 2 (R o B) va, d/dva = 2 (R o B)^T ua, and symmetrically for B.
[[nodiscard]] FactorPair gradient(const FactorPair& p, const Mat4& c);

/// Gradient from an explicit residual; exposed for the linearity check.
[[nodiscard]] FactorPair gradient_from_residual(const FactorPair& p, const Mat4& residual);

/// Objective-preserving rescaling that equalizes block norms:
/// (ua, va) -> (s ua, va / s) and (A, B) -> (t A, B / t).
void balance(FactorPair& p);

enum class Method { GradientDescent, DifferentialEvolution };

[[nodiscard]] std::string_view name(Method m);

struct OptConfig {
    Method method = Method::GradientDescent;
    int restarts = 20;
    int max_iterations = 5000;
    /// Converged when the Frobenius residual drops below this.
    double success_tolerance = 1e-6;
    /// Counterexample runs are expected to stay above this residual.
    double evidence_threshold = 1e-3;
    std::uint64_t seed = 0;
    /// Entries start i.i.d. uniform in [-init_scale, init_scale].
    double init_scale = 0.70710678118654752;  // 1/sqrt(2)
    // Gradient descent: Armijo backtracking, step grows after each accepted step.
    double initial_step = 0.1;
    double step_growth = 2.0;
    double step_shrink = 0.5;
    double armijo = 1e-4;
    double min_step = 1e-18;
    // Differential evolution (rand/1/bin).
    int population = 64;
    double de_weight = 0.5;
    double de_crossover = 0.9;
    /// Stop each run once the restart budget converges; remaining restarts are skipped.
    bool stop_on_success = true;
};

struct OptReport {
    BitMatrix4 target;
    int restarts = 0;  // restarts actually run
    double best_residual = 0;
    FactorPair best_pair;
    long iterations_used = 0;  // summed over restarts
    bool converged = false;
};

/// Deterministic starting point for the given restart.
[[nodiscard]] FactorPair initial_point(const OptConfig& config, BitMatrix4 target, int restart);

/// One trajectory from `start`. Returns the final pair; `iterations` receives
/// the steps taken, `trace` (if non-null) the objective after every accepted step.
[[nodiscard]] FactorPair descend(const FactorPair& start, const Mat4& c, const OptConfig& config,
                                 long& iterations, std::vector<double>* trace = nullptr);

/// Throws std::invalid_argument on a malformed config, NonFinite if the
/// objective stops being finite.
[[nodiscard]] OptReport optimize_single(BitMatrix4 c, const OptConfig& config);

/// One report per target, in input order.
[[nodiscard]] std::vector<OptReport> evidence_batch(std::span<const BitMatrix4> targets,
                                                    const OptConfig& config, int jobs = 1);

struct PositiveControl {
    BitMatrix4 target;
    /// A = B = signs, entries in {-1, 0, +1}; signs o signs equals the target.
    FactorPair planted;
    OptReport report;
};

/// Planted factorization for control `index` under `seed`: S = (u1 v1^T + u2 v2^T) / 2
/// with u, v in {-1, +1}^4, so S has rank <= 2 and entries in {-1, 0, +1}.
[[nodiscard]] FactorPair planted_control(std::uint64_t seed, int index);

/// Runs the optimizer on `count` planted controls.
[[nodiscard]] std::vector<PositiveControl> positive_controls(int count, std::uint64_t seed,
                                                             const OptConfig& config, int jobs = 1);

/// sigma_3 / sigma_1 of a 4x4 matrix (0 for the zero matrix).
[[nodiscard]] double third_singular_ratio(const Mat4& m);

}  // namespace hadex
