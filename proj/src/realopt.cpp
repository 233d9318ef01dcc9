#include "hadex/realopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hadex {

namespace {

// splitmix64; also used to derive independent per-restart streams.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    SplitMix mix(seed ^ (a * 0xD1B54A32D192ED03ull) ^ (b * 0x8CB92BA72F3D8DD7ull));
    return mix.next();
}

void validate(const OptConfig& config) {
    if (config.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(config.success_tolerance > 0)) throw std::invalid_argument("success_tolerance must be > 0");
    if (!(config.initial_step > 0) || !(config.step_shrink > 0 && config.step_shrink < 1) ||
        !(config.step_growth >= 1))
        throw std::invalid_argument("bad step-size schedule");
    if (config.method == Method::DifferentialEvolution && config.population < 4)
        throw std::invalid_argument("differential evolution needs a population of at least 4");
}

double residual_of(double objective_value) { return std::sqrt(std::max(0.0, objective_value)); }

}  // namespace

FactorPair::Vector FactorPair::flatten() const {
    Vector v;
    v << Eigen::Map<const Eigen::Matrix<double, 8, 1>>(ua.data()),
        Eigen::Map<const Eigen::Matrix<double, 8, 1>>(va.data()),
        Eigen::Map<const Eigen::Matrix<double, 8, 1>>(ub.data()),
        Eigen::Map<const Eigen::Matrix<double, 8, 1>>(vb.data());
    return v;
}

FactorPair FactorPair::unflatten(const Vector& v) {
    FactorPair p;
    p.ua = Eigen::Map<const Mat42>(v.data());
    p.va = Eigen::Map<const Mat42>(v.data() + 8);
    p.ub = Eigen::Map<const Mat42>(v.data() + 16);
    p.vb = Eigen::Map<const Mat42>(v.data() + 24);
    return p;
}

Mat4 to_real(BitMatrix4 m) {
    Mat4 c;
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col) c(r, col) = m.entry(r, col);
    return c;
}

BitMatrix4 support_pattern(const Mat4& m, double cutoff) {
    std::uint16_t bits = 0;
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col)
            if (std::abs(m(r, col)) > cutoff) bits |= std::uint16_t(1u << (4 * r + col));
    return BitMatrix4(bits);
}

double objective(const FactorPair& p, const Mat4& c) {
    return (p.product() - c).squaredNorm();
}

FactorPair gradient_from_residual(const FactorPair& p, const Mat4& residual) {
    const Mat4 ga = 2.0 * residual.cwiseProduct(p.b());  // df/dA
    const Mat4 gb = 2.0 * residual.cwiseProduct(p.a());  // df/dB
    FactorPair g;
    g.ua = ga * p.va;
    g.va = ga.transpose() * p.ua;
    g.ub = gb * p.vb;
    g.vb = gb.transpose() * p.ub;
    return g;
}

FactorPair gradient(const FactorPair& p, const Mat4& c) {
    return gradient_from_residual(p, p.product() - c);
}

void balance(FactorPair& p) {
    auto even_out = [](Mat42& u, Mat42& v) {
        const double nu = u.norm(), nv = v.norm();
        if (nu == 0 || nv == 0) return;
        const double s = std::sqrt(nv / nu);
        u *= s;
        v /= s;
    };
    even_out(p.ua, p.va);
    even_out(p.ub, p.vb);
    // Each factor is ua va^T; scaling both of its blocks by sqrt(t) scales it by t.
    const double na = p.ua.norm() * p.va.norm(), nb = p.ub.norm() * p.vb.norm();
    if (na == 0 || nb == 0) return;
    const double t = std::sqrt(std::sqrt(nb / na));
    p.ua *= t;
    p.va *= t;
    p.ub /= t;
    p.vb /= t;
}

std::string_view name(Method m) {
    return m == Method::GradientDescent ? "gradient-descent" : "differential-evolution";
}

FactorPair initial_point(const OptConfig& config, BitMatrix4 target, int restart) {
    SplitMix rng(stream_seed(config.seed, target.bits(), static_cast<std::uint64_t>(restart)));
    FactorPair::Vector v;
    for (int i = 0; i < FactorPair::kParameters; ++i)
        v[i] = rng.uniform(-config.init_scale, config.init_scale);
    return FactorPair::unflatten(v);
}

FactorPair descend(const FactorPair& start, const Mat4& c, const OptConfig& config, long& iterations,
                   std::vector<double>* trace) {
    FactorPair p = start;
    double f = objective(p, c);
    double step = config.initial_step;
    const double target = config.success_tolerance * config.success_tolerance;
    iterations = 0;
    if (trace) trace->push_back(f);
    while (iterations < config.max_iterations && f >= target) {
        if (!std::isfinite(f)) throw NonFinite("objective became non-finite");
        ++iterations;
        const FactorPair::Vector x = p.flatten();
        const FactorPair::Vector g = gradient(p, c).flatten();
        const double g2 = g.squaredNorm();
        if (g2 == 0) break;

        bool accepted = false;
        while (step >= config.min_step) {
            FactorPair trial = FactorPair::unflatten(x - step * g);
            const double ft = objective(trial, c);
            if (std::isfinite(ft) && ft <= f - config.armijo * step * g2) {
                p = trial;
                f = ft;
                accepted = true;
                step *= config.step_growth;
                break;
            }
            step *= config.step_shrink;
        }
        if (!accepted) break;  // no descent at machine precision: stationary
        balance(p);
        if (trace) trace->push_back(f);
    }
    if (!std::isfinite(f)) throw NonFinite("objective became non-finite");
    return p;
}

namespace {

FactorPair differential_evolution(BitMatrix4 target, const Mat4& c, const OptConfig& config,
                                  int restart, long& iterations) {
    SplitMix rng(stream_seed(config.seed ^ 0xDEDEDEDEull, target.bits(),
                             static_cast<std::uint64_t>(restart)));
    const int np = config.population;
    std::vector<FactorPair::Vector> pop(static_cast<std::size_t>(np));
    std::vector<double> fit(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
        for (int d = 0; d < FactorPair::kParameters; ++d)
            pop[i][d] = rng.uniform(-config.init_scale, config.init_scale);
        fit[i] = objective(FactorPair::unflatten(pop[i]), c);
    }
    const double target_f = config.success_tolerance * config.success_tolerance;
    iterations = 0;
    for (int gen = 0; gen < config.max_iterations; ++gen) {
        ++iterations;
        for (int i = 0; i < np; ++i) {
            int r1, r2, r3;
            do r1 = int(rng.below(std::uint64_t(np))); while (r1 == i);
            do r2 = int(rng.below(std::uint64_t(np))); while (r2 == i || r2 == r1);
            do r3 = int(rng.below(std::uint64_t(np))); while (r3 == i || r3 == r1 || r3 == r2);
            const int forced = int(rng.below(FactorPair::kParameters));
            FactorPair::Vector trial = pop[i];
            for (int d = 0; d < FactorPair::kParameters; ++d)
                if (d == forced || rng.uniform() < config.de_crossover)
                    trial[d] = pop[r1][d] + config.de_weight * (pop[r2][d] - pop[r3][d]);
            const double ft = objective(FactorPair::unflatten(trial), c);
            if (ft <= fit[i]) {
                pop[i] = trial;
                fit[i] = ft;
            }
        }
        if (*std::min_element(fit.begin(), fit.end()) < target_f) break;
    }
    const auto best = std::min_element(fit.begin(), fit.end()) - fit.begin();
    // Polish the best member with gradient descent.
    long polish = 0;
    FactorPair p = descend(FactorPair::unflatten(pop[static_cast<std::size_t>(best)]), c, config, polish);
    iterations += polish;
    return p;
}

}  // namespace

OptReport optimize_single(BitMatrix4 target, const OptConfig& config) {
    validate(config);
    const Mat4 c = to_real(target);
    OptReport report;
    report.target = target;
    report.best_residual = std::numeric_limits<double>::infinity();
    for (int r = 0; r < config.restarts; ++r) {
        long iters = 0;
        FactorPair p = config.method == Method::GradientDescent
                           ? descend(initial_point(config, target, r), c, config, iters)
                           : differential_evolution(target, c, config, r, iters);
        const double residual = residual_of(objective(p, c));
        if (!std::isfinite(residual)) throw NonFinite("objective became non-finite");
        ++report.restarts;
        report.iterations_used += iters;
        if (residual < report.best_residual) {
            report.best_residual = residual;
            report.best_pair = p;
        }
        if (report.best_residual < config.success_tolerance) {
            report.converged = true;
            if (config.stop_on_success) break;
        }
    }
    return report;
}

std::vector<OptReport> evidence_batch(std::span<const BitMatrix4> targets, const OptConfig& config,
                                      int jobs) {
    validate(config);
    std::vector<OptReport> out(targets.size());
    const auto n = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = optimize_single(targets[static_cast<std::size_t>(i)], config);
    return out;
}

FactorPair planted_control(std::uint64_t seed, int index) {
    SplitMix rng(stream_seed(seed, 0xC0117201ull, static_cast<std::uint64_t>(index)));
    auto sign = [&] { return (rng.next() >> 63) ? -1.0 : 1.0; };
    Mat42 u, v;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 4; ++i) {
            u(i, k) = sign();
            v(i, k) = sign();
        }
    FactorPair p;
    p.ua = p.ub = u / std::sqrt(2.0);
    p.va = p.vb = v / std::sqrt(2.0);
    return p;
}

std::vector<PositiveControl> positive_controls(int count, std::uint64_t seed, const OptConfig& config,
                                               int jobs) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    std::vector<PositiveControl> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        auto& ctl = out[static_cast<std::size_t>(i)];
        ctl.planted = planted_control(seed, i);
        ctl.target = support_pattern(ctl.planted.product());
    }
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
        auto& ctl = out[static_cast<std::size_t>(i)];
        ctl.report = optimize_single(ctl.target, config);
    }
    return out;
}

double third_singular_ratio(const Mat4& m) {
    const Eigen::JacobiSVD<Mat4> svd(m);
    const auto& s = svd.singularValues();
    return s[0] == 0 ? 0.0 : s[2] / s[0];
}

}  // namespace hadex
