#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"
#include "surp/metrics.hpp"
#include "surp/tuning.hpp"

using namespace surp;
using testutil::TempDir;

namespace {

std::vector<TokenStats> labeled_set(oracle::Gen& g, std::size_t n) {
    std::vector<TokenStats> out;
    for (std::size_t i = 0; i < n; ++i) {
        auto s = oracle::random_stats(g, g.size(1, 40));
        s.label = i % 2 ? Label::Seen : Label::Unseen;
        if (s.label == Label::Seen)
            for (auto& l : s.gt_logprob) l *= 0.8;
        out.push_back(s);
    }
    return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("default grid") {
    const auto g = default_grid();
    REQUIRE(g.eps_values.size() == 20);
    REQUIRE(g.k_values.size() == 10);
    CHECK(g.size() == 200);
    for (std::size_t i = 0; i < 20; ++i) CHECK(g.eps_values[i] == 0.5 * static_cast<double>(i + 1));
    for (std::size_t i = 0; i < 10; ++i) CHECK(g.k_values[i] == 10 * static_cast<int>(i + 1));
    CHECK_THROWS_AS((GridSpec{{1.0, 0.5}, {10}}).validate(), Error);
    CHECK_THROWS_AS((GridSpec{{1.0}, {}}).validate(), Error);
    CHECK_THROWS_AS((GridSpec{{1.0}, {110}}).validate(), Error);
}

TEST_CASE("grid search cells are the AUCs of each configuration") {
    oracle::Gen g(17);
    const auto data = labeled_set(g, 40);
    const GridSpec grid{{0.5, 1.5, 3.0}, {20, 50, 100}};
    const auto r = grid_search(data, grid);
    REQUIRE(r.cells.size() == 9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const auto& c = r.cells[i * 3 + j];
            CHECK(c.eps == grid.eps_values[i]);
            CHECK(c.k == grid.k_values[j]);
            std::vector<double> seen, unseen;
            for (const auto& s : data)
                (s.label == Label::Seen ? seen : unseen).push_back(oracle::brute_surp(s, c.eps, c.k).score);
            CHECK(std::abs(c.auc - oracle::pairwise_auc(seen, unseen).value()) < 1e-12);
        }
    for (const auto& c : r.cells) CHECK(r.best.auc >= c.auc);
}

TEST_CASE("best cell tie-breaking prefers smaller eps then smaller k") {
    const std::vector<HeatmapCell> cells{{0.5, 10, 0.7}, {0.5, 20, 0.9}, {1.0, 10, 0.9}, {1.0, 20, 0.9}};
    CHECK(best_cell(cells) == HeatmapCell{0.5, 20, 0.9});
}

TEST_CASE("heatmap layout and round trip") {
    TempDir dir;
    const auto grid = default_grid();
    std::vector<HeatmapCell> cells;
    oracle::Gen g(3);
    for (double e : grid.eps_values)
        for (int k : grid.k_values) cells.push_back({e, k, g.real(0, 1)});
    export_heatmap(cells, dir / "h.csv");
    const auto rows = csv_rows(testutil::read_file(dir / "h.csv"));
    REQUIRE(rows.size() == 21);
    for (const auto& r : rows) CHECK(r.size() == 11);
    CHECK(rows[0][0] == "eps\\k");
    CHECK(rows[0][1] == "10");
    CHECK(rows[0][10] == "100");
    CHECK(rows[1][0] == "10");
    CHECK(rows[20][0] == "0.5");
    // eps = 2.0, k = 30 sits in the row for 2 (rows descend from 10) and column 3.
    const std::size_t row = 1 + (20 - 4);
    CHECK(std::stod(rows[row][0]) == 2.0);
    CHECK(std::stod(rows[row][3]) == cells[3 * 10 + 2].auc);
    CHECK(read_heatmap(dir / "h.csv") == cells);

    auto ragged = cells;
    ragged.pop_back();
    CHECK_THROWS_AS(export_heatmap(ragged, dir / "r.csv"), Error);
}

TEST_CASE("scatter export applies both caps per sequence") {
    TempDir dir;
    oracle::Gen g(5);
    const auto data = labeled_set(g, 30);
    for (int t = 0; t < 20; ++t) {
        const double eps = g.real(0.1, 4.0);
        const int k = g.integer(0, 100);
        const auto n = export_scatter(data, eps, k, dir / "s.csv");
        std::size_t expected = 0;
        for (const auto& s : data) expected += oracle::brute_surp(s, eps, k).selected.size();
        CHECK(n == expected);
        CHECK(csv_rows(testutil::read_file(dir / "s.csv")).size() == expected + 1);
    }
    std::size_t all = 0;
    for (const auto& s : data) all += s.size();
    CHECK(export_scatter(data, std::nullopt, std::nullopt, dir / "s.csv") == all);
}
