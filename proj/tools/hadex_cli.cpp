// hadex: command-line driver for the search, the integer and real checks,
// the statistics and the dataset export.
//
// Exit codes: 0 success, 1 a --check comparison failed, 2 bad input or I/O.

#include "hadex/artifacts.hpp"
#include "hadex/golden.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace hadex;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct RunConfig {
    int jobs = 1;
    std::uint64_t seed = 0;
    fs::path out_dir = ".";
    bool check = false;
    std::string kernel = "auto";

    // search
    bool witnesses = false;
    // counterexamples
    std::string format = "hex";
    // verify-z
    bool orbit_reduced = false;
    // optimize-r
    int restarts = golden::kRestarts;
    int iterations = golden::kIterations;
    double tolerance = golden::kControlResidual;
    double threshold = golden::kEvidenceThreshold;
    bool de = false;
    int sample = 0;  // 0 = every counterexample
    int controls = golden::kControls;
    std::uint64_t control_seed = golden::kControlSeed;
};

class Checks {
public:
    void expect(bool ok, const std::string& what) {
        std::printf("  [%s] %s\n", ok ? "ok" : "MISMATCH", what.c_str());
        failed_ |= !ok;
    }
    [[nodiscard]] int exit_code() const { return failed_ ? kMismatch : kOk; }

private:
    bool failed_ = false;
};

void write_json(const fs::path& path, const nlohmann::ordered_json& j) { save_text(path, j.dump(2) + "\n"); }

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
    std::ostringstream out;
    writer(out);
    save_text(path, out.str());
}

void write_meta(const RunConfig& cfg, const std::string& command, nlohmann::ordered_json extra) {
    extra["command"] = command;
    extra["jobs"] = cfg.jobs;
    extra["seed"] = cfg.seed;
    write_json(cfg.out_dir / (command + ".meta.json"), extra);
}

std::vector<BitMatrix4> load_or_search(const RunConfig& cfg, const RankTable& table) {
    const fs::path path = cfg.out_dir / "counterexamples.txt";
    if (fs::exists(path)) return load_counterexamples(path);
    SearchOptions o;
    o.threads = cfg.jobs;
    o.backend = kernels::parse_backend(cfg.kernel);
    return counterexamples(run_search(table, o).map, table);
}

int cmd_ranks(const RunConfig& cfg) {
    const RankTable table = build_rank_table();
    const auto h = table.histogram();
    std::printf("rank count\n");
    for (int r = 0; r <= 4; ++r) std::printf("%d %zu\n", r, h[static_cast<std::size_t>(r)]);
    const std::size_t g = std::gcd(h[4], kMatrixCount);
    const std::size_t num = h[4] / g, den = kMatrixCount / g;
    std::printf("full-rank probability %zu/%zu = %.6f\n", num, den, double(num) / double(den));
    if (!cfg.check) return kOk;
    Checks checks;
    checks.expect(h == golden::kRankHistogram, "rank histogram {1, 225, 7350, 37800, 20160}");
    checks.expect(num == golden::kFullRankNumerator && den == golden::kFullRankDenominator,
                  "full-rank probability 315/1024");
    return checks.exit_code();
}

int cmd_search(const RunConfig& cfg) {
    const RankTable table = build_rank_table();
    SearchOptions o;
    o.threads = cfg.jobs;
    o.record_witnesses = cfg.witnesses;
    o.backend = kernels::parse_backend(cfg.kernel);
    const SearchResult result = run_search(table, o);
    const auto list = counterexamples(result.map, table);

    write_file(cfg.out_dir / "counterexamples.txt", [&](std::ostream& out) { write_counterexamples(out, list); });
    write_json(cfg.out_dir / "report.json", report_json(result.report));
    if (cfg.witnesses)
        write_file(cfg.out_dir / "witnesses.csv", [&](std::ostream& out) { write_witnesses(out, result.witnesses); });
    write_meta(cfg, "search", {{"kernel", kernels::name(o.backend)},
                               {"elapsed_ms", result.report.elapsed.count()},
                               {"pairs_checked", result.report.pairs_checked}});

    const auto& r = result.report;
    std::printf("full rank       %zu\n", r.rank_histogram[4]);
    std::printf("expressible     %zu (%.1f%%)\n", r.expressible_count,
                100.0 * double(r.expressible_count) / double(r.rank_histogram[4]));
    std::printf("counterexamples %zu (%.1f%%)\n", r.counterexample_count,
                100.0 * double(r.counterexample_count) / double(r.rank_histogram[4]));
    std::printf("pairs %zu, kernel %s, %d thread(s), %lld ms\n", r.pairs_checked,
                std::string(kernels::name(o.backend)).c_str(), o.threads,
                static_cast<long long>(r.elapsed.count()));
    if (!cfg.check) return kOk;

    Checks checks;
    checks.expect(r.rank_histogram == golden::kRankHistogram, "rank histogram");
    checks.expect(r.expressible_count == golden::kExpressible, "14856 expressible");
    checks.expect(r.counterexample_count == golden::kCounterexamples, "5304 counterexamples");
    checks.expect(std::binary_search(list.begin(), list.end(), BitMatrix4(golden::kExampleCounterexample)),
                  "127f is a counterexample");
    if (cfg.witnesses) {
        const auto replay = replay_witnesses(result.witnesses, result.map, table);
        checks.expect(replay.valid == replay.checked && replay.map_covered == golden::kExpressible,
                      "every witness replays (" + std::to_string(replay.valid) + "/" +
                          std::to_string(replay.checked) + ")");
    }
    return checks.exit_code();
}

int cmd_counterexamples(const RunConfig& cfg) {
    const RankTable table = build_rank_table();
    const auto list = load_or_search(cfg, table);
    for (const auto m : list) {
        if (cfg.format == "rows") std::printf("%s\n", to_row_string(m).c_str());
        else if (cfg.format == "csv") std::printf("%s,%d\n", to_hex(m).c_str(), count_ones(m));
        else std::printf("%s\n", to_hex(m).c_str());
    }
    return kOk;
}

int cmd_verify_z(const RunConfig& cfg) {
    const auto list = load_counterexamples(cfg.out_dir / "counterexamples.txt");
    const ZMode mode = cfg.orbit_reduced ? ZMode::OrbitReduced : ZMode::Full;
    const auto start = std::chrono::steady_clock::now();
    const auto verdicts = verify_all_z(list, mode, cfg.jobs);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    write_file(cfg.out_dir / "zverdicts.csv", [&](std::ostream& out) { write_zverdicts(out, verdicts); });
    std::int64_t slowest_us = 0;
    std::uint64_t assignments = 0, ranks = 0;
    std::size_t verified = 0;
    int min_rank = 4;
    for (const auto& v : verdicts) {
        slowest_us = std::max<std::int64_t>(slowest_us, v.elapsed.count());
        assignments += v.assignments_checked;
        ranks += v.representatives;
        verified += v.verified;
        min_rank = std::min(min_rank, v.min_rank_found);
    }
    write_meta(cfg, "verify-z", {{"mode", mode == ZMode::Full ? "full" : "orbit-reduced"},
                                 {"elapsed_ms", ms.count()},
                                 {"slowest_matrix_us", slowest_us},
                                 {"rank_computations", ranks}});

    std::printf("mode %s: %zu/%zu verified, %llu sign assignments (%llu exact ranks), min rank %d, %lld ms\n",
                mode == ZMode::Full ? "full" : "orbit-reduced", verified, verdicts.size(),
                static_cast<unsigned long long>(assignments), static_cast<unsigned long long>(ranks), min_rank,
                static_cast<long long>(ms.count()));
    if (!cfg.check) return kOk;
    Checks checks;
    checks.expect(verdicts.size() == golden::kCounterexamples, "5304 verdicts");
    checks.expect(verified == verdicts.size(), "every counterexample verified over Z");
    return checks.exit_code();
}

int cmd_optimize_r(const RunConfig& cfg) {
    auto list = load_counterexamples(cfg.out_dir / "counterexamples.txt");
    if (cfg.sample > 0 && static_cast<std::size_t>(cfg.sample) < list.size()) {
        std::mt19937_64 rng(cfg.seed);
        std::vector<BitMatrix4> subset;
        std::sample(list.begin(), list.end(), std::back_inserter(subset), cfg.sample, rng);
        list = std::move(subset);
    }
    OptConfig oc;
    oc.method = cfg.de ? Method::DifferentialEvolution : Method::GradientDescent;
    oc.restarts = cfg.restarts;
    oc.max_iterations = cfg.iterations;
    oc.success_tolerance = cfg.tolerance;
    oc.evidence_threshold = cfg.threshold;
    oc.seed = cfg.seed;

    const auto start = std::chrono::steady_clock::now();
    std::size_t controls_converged = 0;
    if (cfg.controls > 0) {
        for (const auto& ctl : positive_controls(cfg.controls, cfg.control_seed, oc, cfg.jobs))
            controls_converged += ctl.report.converged;
    }
    const auto reports = evidence_batch(list, oc, cfg.jobs);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    std::size_t converged = 0, below_threshold = 0;
    for (const auto& r : reports) {
        converged += r.converged;
        below_threshold += r.best_residual < oc.evidence_threshold;
    }
    write_file(cfg.out_dir / "ropt.csv", [&](std::ostream& out) { write_ropt(out, reports); });
    nlohmann::ordered_json summary;
    summary["claim"] = "evidence only";
    summary["method"] = name(oc.method);
    summary["restarts"] = oc.restarts;
    summary["iterations"] = oc.max_iterations;
    summary["success_tolerance"] = oc.success_tolerance;
    summary["evidence_threshold"] = oc.evidence_threshold;
    summary["seed"] = oc.seed;
    summary["targets"] = reports.size();
    summary["converged"] = converged;
    summary["below_evidence_threshold"] = below_threshold;
    summary["controls"] = cfg.controls;
    summary["controls_converged"] = controls_converged;
    write_json(cfg.out_dir / "ropt_summary.json", summary);
    write_meta(cfg, "optimize-r", {{"elapsed_ms", ms.count()}});

    std::printf("evidence only: %s, %d restarts x %d iterations\n", std::string(name(oc.method)).c_str(),
                oc.restarts, oc.max_iterations);
    if (cfg.controls > 0)
        std::printf("positive controls converged: %zu/%d\n", controls_converged, cfg.controls);
    std::printf("targets %zu: converged (< %g) %zu, below threshold (< %g) %zu, %lld ms\n", reports.size(),
                oc.success_tolerance, converged, oc.evidence_threshold, below_threshold,
                static_cast<long long>(ms.count()));
    if (!cfg.check) return kOk;
    Checks checks;
    if (cfg.controls > 0)
        checks.expect(double(controls_converged) >= golden::kControlMinConvergedFraction * cfg.controls,
                      ">= 90% of positive controls converge");
    checks.expect(below_threshold == 0, "no counterexample reaches the evidence threshold");
    return checks.exit_code();
}

int cmd_stats(const RunConfig& cfg) {
    const RankTable table = build_rank_table();
    const auto map = map_from_counterexamples(load_or_search(cfg, table), table);
    const auto density = density_table(map, table);
    const auto [e, c] = zero_stats(map, table);
    write_json(cfg.out_dir / "stats.json", stats_json(density, e, c));

    std::printf("ones  expressible  counterexample  expressible%%\n");
    for (int k = 0; k <= 16; ++k) {
        if (density.bin_total(k) == 0) continue;
        std::printf("%4d  %11zu  %14zu  %11.2f\n", k, density.counts[k][0], density.counts[k][1],
                    100 * density.fraction(k, MatrixClass::Expressible));
    }
    const int cutoff = best_cutoff(density);
    const double acc = threshold_accuracy(density, golden::kDensityCutoff);
    std::printf("accuracy of 'expressible iff ones <= %d': %.4f (best cutoff %d)\n", golden::kDensityCutoff, acc,
                cutoff);
    std::printf("mean zeros: expressible %.4f, counterexample %.4f, difference %.4f\n", e.mean_zeros, c.mean_zeros,
                e.mean_zeros - c.mean_zeros);
    const double tw = welch_t(e, c), tp = pooled_t(e, c);
    std::printf("t statistic: welch %.2f, pooled %.2f\n", tw, tp);
    if (!cfg.check) return kOk;
    Checks checks;
    checks.expect(std::abs(acc - golden::kDensityAccuracy) <= golden::kDensityAccuracyTolerance,
                  "cutoff-9 accuracy 95.7% +- 0.1pp");
    checks.expect(cutoff == golden::kDensityCutoff, "cutoff 9 is the best cutoff");
    checks.expect(std::abs(e.mean_zeros - golden::kMeanZerosExpressible) <= golden::kMeanZerosTolerance,
                  "expressible mean zeros 8.17");
    checks.expect(std::abs(c.mean_zeros - golden::kMeanZerosCounterexample) <= golden::kMeanZerosTolerance,
                  "counterexample mean zeros 5.50");
    checks.expect(std::abs(e.mean_zeros - c.mean_zeros - golden::kMeanZerosDifference) <=
                      golden::kMeanZerosDifferenceTolerance,
                  "difference 2.67");
    checks.expect(std::abs(tw - golden::kTStatistic) <= golden::kTStatisticTolerance ||
                      std::abs(tp - golden::kTStatistic) <= golden::kTStatisticTolerance,
                  "t = 160.31 under welch or pooled");
    return checks.exit_code();
}

int cmd_export_dataset(const RunConfig& cfg) {
    const RankTable table = build_rank_table();
    const auto map = map_from_counterexamples(load_or_search(cfg, table), table);
    write_file(cfg.out_dir / "dataset.csv", [&](std::ostream& out) { write_dataset(out, map, table); });
    std::printf("wrote %s (%zu rows)\n", (cfg.out_dir / "dataset.csv").string().c_str(),
                density_table(map, table).total());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-2 o rank-2 Hadamard expressibility of 4x4 binary matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string out_dir = ".";
    app.add_option("--jobs,-j", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for every random choice");
    app.add_option("--out-dir,-o", out_dir, "Directory for artifacts");
    app.add_flag("--check", cfg.check, "Compare against reference numbers; exit 1 on mismatch");
    app.add_option("--kernel", cfg.kernel, "Search kernel: auto, scalar, avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto* ranks = app.add_subcommand("ranks", "Rank census of all 65,536 matrices");
    auto* search = app.add_subcommand("search", "Exhaustive rank-2 o rank-2 product search");
    search->add_flag("--witnesses", cfg.witnesses, "Record and write one witness pair per expressible matrix");
    auto* list = app.add_subcommand("counterexamples", "Print the counterexample list");
    list->add_option("--format", cfg.format, "hex, rows or csv")->check(CLI::IsMember({"hex", "rows", "csv"}));
    auto* verify = app.add_subcommand("verify-z", "Check every sign assignment over the integers");
    auto* full_flag = verify->add_flag("--full", "Enumerate all 2^k sign assignments (default)");
    verify->add_flag("--orbit-reduced", cfg.orbit_reduced, "Enumerate one assignment per row/column-negation orbit")
        ->excludes(full_flag);
    auto* optimize = app.add_subcommand("optimize-r", "Numerical real factorization attempts (evidence only)");
    optimize->add_option("--restarts", cfg.restarts)->check(CLI::PositiveNumber);
    optimize->add_option("--iters", cfg.iterations)->check(CLI::PositiveNumber);
    optimize->add_option("--tol", cfg.tolerance, "Residual counted as converged");
    optimize->add_option("--threshold", cfg.threshold, "Residual a counterexample must stay above");
    optimize->add_flag("--de", cfg.de, "Differential evolution instead of gradient descent");
    optimize->add_option("--sample", cfg.sample, "Random subset of counterexamples (0 = all)");
    optimize->add_option("--controls", cfg.controls, "Number of planted positive controls (0 = none)");
    optimize->add_option("--control-seed", cfg.control_seed);
    auto* stats = app.add_subcommand("stats", "Density and zero-count statistics");
    auto* dataset = app.add_subcommand("export-dataset", "Write dataset.csv for downstream analysis");

    CLI11_PARSE(app, argc, argv);
    cfg.out_dir = out_dir;

    try {
        fs::create_directories(cfg.out_dir);
        if (*ranks) return cmd_ranks(cfg);
        if (*search) return cmd_search(cfg);
        if (*list) return cmd_counterexamples(cfg);
        if (*verify) return cmd_verify_z(cfg);
        if (*optimize) return cmd_optimize_r(cfg);
        if (*stats) return cmd_stats(cfg);
        if (*dataset) return cmd_export_dataset(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }
    return kInputError;
}
