#pragma once

// On-disk formats. Every matrix is written as its 4-digit lowercase hex word.
//
//   counterexamples.txt  one word per line, ascending
//   report.json          rank_histogram, expressible, counterexamples, elapsed_ms
//   witnesses.csv        product,factor_a,factor_b
//   zverdicts.csv        matrix,ones,assignments,min_rank,verified
//   ropt.csv             matrix,restarts,best_residual,converged,iters
//   stats.json           density table, cutoff accuracies, class stats, t statistics
//   dataset.csv          m00,...,m33,label; one row per full-rank matrix

#include "hadex/realopt.hpp"
#include "hadex/search.hpp"
#include "hadex/stats.hpp"
#include "hadex/zverify.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadex {

class MissingInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_counterexamples(std::ostream& out, std::span<const BitMatrix4> list);
[[nodiscard]] std::vector<BitMatrix4> read_counterexamples(std::istream& in);

[[nodiscard]] nlohmann::ordered_json report_json(const SearchReport& report);

void write_witnesses(std::ostream& out, std::span<const Witness> witnesses);
[[nodiscard]] std::vector<Witness> read_witnesses(std::istream& in);

void write_zverdicts(std::ostream& out, std::span<const ZVerdict> verdicts);

void write_ropt(std::ostream& out, std::span<const OptReport> reports);

[[nodiscard]] nlohmann::ordered_json stats_json(const DensityTable& density, const ClassStats& expressible,
                                        const ClassStats& counterexample);

/// Header plus one row per full-rank matrix, ascending by word.
void write_dataset(std::ostream& out, const ExpressibilityMap& map, const RankTable& table);

/// Inverse of the counterexample list: every full-rank word not listed is expressible.
[[nodiscard]] ExpressibilityMap map_from_counterexamples(std::span<const BitMatrix4> list,
                                                         const RankTable& table);

/// Round-trip-exact decimal for a double.
[[nodiscard]] std::string format_double(double x);

// File helpers; throw MissingInput / std::runtime_error with the path in the message.
[[nodiscard]] std::vector<BitMatrix4> load_counterexamples(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& contents);

}  // namespace hadex
