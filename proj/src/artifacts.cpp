#include "hadex/artifacts.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hadex {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_counterexamples(std::ostream& out, std::span<const BitMatrix4> list) {
    for (const BitMatrix4 m : list) out << to_hex(m) << '\n';
}

std::vector<BitMatrix4> read_counterexamples(std::istream& in) {
    std::vector<BitMatrix4> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trimmed(line);
        if (line.empty()) continue;
        try {
            out.push_back(parse_hex(line));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

nlohmann::ordered_json report_json(const SearchReport& report) {
    nlohmann::ordered_json j;
    j["rank_histogram"] = report.rank_histogram;
    j["expressible"] = report.expressible_count;
    j["counterexamples"] = report.counterexample_count;
    j["elapsed_ms"] = report.elapsed.count();
    return j;
}

void write_witnesses(std::ostream& out, std::span<const Witness> witnesses) {
    out << "product,factor_a,factor_b\n";
    for (const Witness& w : witnesses)
        out << to_hex(w.product) << ',' << to_hex(w.factor_a) << ',' << to_hex(w.factor_b) << '\n';
}

std::vector<Witness> read_witnesses(std::istream& in) {
    std::vector<Witness> out;
    std::string line;
    if (!std::getline(in, line) || trimmed(line) != "product,factor_a,factor_b")
        throw std::runtime_error("witnesses.csv: bad header");
    while (std::getline(in, line)) {
        line = trimmed(line);
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 3) throw std::runtime_error("witnesses.csv: expected 3 columns: " + line);
        out.push_back({parse_hex(f[0]), parse_hex(f[1]), parse_hex(f[2])});
    }
    return out;
}

void write_zverdicts(std::ostream& out, std::span<const ZVerdict> verdicts) {
    out << "matrix,ones,assignments,min_rank,verified\n";
    for (const ZVerdict& v : verdicts)
        out << to_hex(v.matrix) << ',' << v.ones << ',' << v.assignments_checked << ','
            << v.min_rank_found << ',' << (v.verified ? "true" : "false") << '\n';
}

void write_ropt(std::ostream& out, std::span<const OptReport> reports) {
    out << "matrix,restarts,best_residual,converged,iters\n";
    for (const OptReport& r : reports)
        out << to_hex(r.target) << ',' << r.restarts << ',' << format_double(r.best_residual) << ','
            << (r.converged ? "true" : "false") << ',' << r.iterations_used << '\n';
}

nlohmann::ordered_json stats_json(const DensityTable& density, const ClassStats& expressible,
                          const ClassStats& counterexample) {
    nlohmann::ordered_json j;
    auto& bins = j["density"] = nlohmann::ordered_json::array();
    for (int k = 0; k <= 16; ++k) {
        nlohmann::ordered_json bin;
        bin["ones"] = k;
        bin["expressible"] = density.counts[k][0];
        bin["counterexample"] = density.counts[k][1];
        if (density.bin_total(k) > 0)
            bin["expressible_fraction"] = density.fraction(k, MatrixClass::Expressible);
        else
            bin["expressible_fraction"] = nullptr;
        bins.push_back(bin);
    }
    auto& acc = j["cutoff_accuracy"] = nlohmann::ordered_json::array();
    for (int k = 0; k <= 16; ++k) acc.push_back({{"cutoff", k}, {"accuracy", threshold_accuracy(density, k)}});
    j["best_cutoff"] = best_cutoff(density);

    auto class_json = [](const ClassStats& s) {
        nlohmann::ordered_json c;
        c["label"] = label(s.label);
        c["n"] = s.n;
        c["mean_zeros"] = s.mean_zeros;
        c["variance_zeros"] = s.variance_zeros;
        c["mean_ones"] = s.mean_ones();
        return c;
    };
    j["classes"] = {class_json(expressible), class_json(counterexample)};
    j["mean_zeros_difference"] = expressible.mean_zeros - counterexample.mean_zeros;
    j["t_statistic"] = {{"welch", welch_t(expressible, counterexample)},
                        {"pooled", pooled_t(expressible, counterexample)}};
    j["p_value"] = "p < 1e-15 regime";
    return j;
}

void write_dataset(std::ostream& out, const ExpressibilityMap& map, const RankTable& table) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out << 'm' << r << c << ',';
    out << "label\n";
    for (std::size_t w = 0; w < kMatrixCount; ++w) {
        const BitMatrix4 m(static_cast<std::uint16_t>(w));
        if (table[m].value != 4) continue;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) out << m.entry(r, c) << ',';
        out << label(map.test(m) ? MatrixClass::Expressible : MatrixClass::Counterexample) << '\n';
    }
}

ExpressibilityMap map_from_counterexamples(std::span<const BitMatrix4> list, const RankTable& table) {
    ExpressibilityMap excluded;
    for (const BitMatrix4 m : list) {
        if (table[m].value != 4) throw NotFullRank(m);
        excluded.set(m);
    }
    ExpressibilityMap map;
    for (std::size_t w = 0; w < kMatrixCount; ++w) {
        const BitMatrix4 m(static_cast<std::uint16_t>(w));
        if (table[m].value == 4 && !excluded.test(m)) map.set(m);
    }
    return map;
}

std::vector<BitMatrix4> load_counterexamples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingInput("cannot open " + path.string() + " (run `search` first)");
    try {
        return read_counterexamples(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void save_text(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hadex
