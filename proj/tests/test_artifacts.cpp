#include "hadex/artifacts.hpp"
#include "hadex/golden.hpp"

#include "doctest.h"

#include <sstream>

using namespace hadex;

namespace {

struct Fixture {
    RankTable table = build_rank_table();
    SearchResult result = [this] {
        SearchOptions o;
        o.record_witnesses = true;
        return run_search(table, o);
    }();
    std::vector<BitMatrix4> list = counterexamples(result.map, table);
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("counterexamples.txt round-trips and rebuilds the map") {
    std::ostringstream out;
    write_counterexamples(out, fx().list);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == golden::kCounterexamples);
    for (const auto& l : lines) CHECK(l.size() == 4);
    CHECK(std::find(lines.begin(), lines.end(), "127f") != lines.end());

    std::istringstream in(out.str());
    const auto back = read_counterexamples(in);
    CHECK(back == fx().list);
    CHECK(map_from_counterexamples(back, fx().table) == fx().result.map);

    std::istringstream bad("127f\nzzzz\n");
    CHECK_THROWS_AS((void)read_counterexamples(bad), std::runtime_error);
    const std::vector<BitMatrix4> low_rank{BitMatrix4(0xffff)};
    CHECK_THROWS_AS((void)map_from_counterexamples(low_rank, fx().table), NotFullRank);
}

TEST_CASE("report.json keys") {
    const auto j = report_json(fx().result.report);
    CHECK(j["rank_histogram"].get<std::vector<std::size_t>>() ==
          std::vector<std::size_t>(golden::kRankHistogram.begin(), golden::kRankHistogram.end()));
    CHECK(j["expressible"] == golden::kExpressible);
    CHECK(j["counterexamples"] == golden::kCounterexamples);
    CHECK(j.contains("elapsed_ms"));
}

TEST_CASE("witnesses.csv round-trips") {
    std::ostringstream out;
    write_witnesses(out, fx().result.witnesses);
    const auto lines = lines_of(out.str());
    CHECK(lines.front() == "product,factor_a,factor_b");
    CHECK(lines.size() == golden::kExpressible + 1);
    std::istringstream in(out.str());
    CHECK(read_witnesses(in) == fx().result.witnesses);
    std::istringstream bad("a,b\n");
    CHECK_THROWS_AS((void)read_witnesses(bad), std::runtime_error);
}

TEST_CASE("zverdicts.csv and ropt.csv rows") {
    const auto v = verify_counterexample_z(BitMatrix4(0x127f));
    std::ostringstream z;
    write_zverdicts(z, std::vector<ZVerdict>{v});
    CHECK(z.str() == "matrix,ones,assignments,min_rank,verified\n127f,9,512," +
                         std::to_string(v.min_rank_found) + ",true\n");

    OptReport r;
    r.target = BitMatrix4(0x00ff);
    r.restarts = 20;
    r.best_residual = 0.125;
    r.iterations_used = 1234;
    std::ostringstream o;
    write_ropt(o, std::vector<OptReport>{r});
    CHECK(o.str() == "matrix,restarts,best_residual,converged,iters\n00ff,20,0.125,false,1234\n");
}

TEST_CASE("format_double round-trips") {
    for (double x : {0.0, 1.0, 1e-300, 0.1, 9.97634e-07, 160.30822}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("stats.json content") {
    const auto density = density_table(fx().result.map, fx().table);
    const auto [e, c] = zero_stats(fx().result.map, fx().table);
    const auto j = stats_json(density, e, c);
    CHECK(j["density"].size() == 17);
    CHECK(j["cutoff_accuracy"].size() == 17);
    CHECK(j["best_cutoff"] == 9);
    CHECK(j["classes"][0]["label"] == "expressible");
    CHECK(j["classes"][1]["n"] == golden::kCounterexamples);
    CHECK(j["t_statistic"].contains("welch"));
    CHECK(j["t_statistic"].contains("pooled"));
}

TEST_CASE("dataset.csv schema") {
    std::ostringstream out;
    write_dataset(out, fx().result.map, fx().table);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 20161);
    CHECK(lines[0] == "m00,m01,m02,m03,m10,m11,m12,m13,m20,m21,m22,m23,m30,m31,m32,m33,label");
    std::size_t expressible = 0, counter = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        REQUIRE(l.size() > 32);
        for (int k = 0; k < 16; ++k) {
            REQUIRE((l[2 * k] == '0' || l[2 * k] == '1'));
            REQUIRE(l[2 * k + 1] == ',');
        }
        const auto tag = l.substr(32);
        if (tag == "expressible") ++expressible;
        else if (tag == "counterexample") ++counter;
        else FAIL("bad label " << tag);
    }
    CHECK(expressible == golden::kExpressible);
    CHECK(counter == golden::kCounterexamples);
    // 127f: rows 1111/1110/0100/1000.
    const std::string row127f = "1,1,1,1,1,1,1,0,0,1,0,0,1,0,0,0,counterexample";
    CHECK(std::find(lines.begin(), lines.end(), row127f) != lines.end());
}
