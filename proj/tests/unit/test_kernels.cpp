#include <cstring>

#include "doctest.h"
#include "support/oracles.hpp"
#include "surp/kernels.hpp"

using namespace surp;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("serial and parallel kernels agree bit for bit") {
    oracle::Gen g(123);
    std::vector<std::u32string> corpus;
    for (int i = 0; i < 30; ++i) {
        std::u32string s;
        for (std::size_t j = g.size(10, 80); j > 0; --j) s.push_back(U"abcde "[g.size(0, 5)]);
        corpus.push_back(s);
    }
    const auto model = NGramModel::train(corpus, {3, 0.2, std::nullopt});
    std::vector<std::vector<TokenId>> texts;
    for (const auto& s : corpus) texts.push_back(model.encode(s));

    for (int workers : {1, 2, 4}) {
        set_workers(workers);
        const auto a = serial::score_texts(model, texts);
        const auto b = parallel::score_texts(model, texts);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            REQUIRE(a[i].size() == b[i].size());
            for (std::size_t j = 0; j < a[i].size(); ++j) {
                CHECK(same_bits(a[i].entropy[j], b[i].entropy[j]));
                CHECK(same_bits(a[i].gt_logprob[j], b[i].gt_logprob[j]));
            }
        }

        std::vector<TokenStats> stats;
        for (std::size_t i = 0; i < 60; ++i) {
            auto s = oracle::random_stats(g, g.size(1, 50));
            s.label = i % 2 ? Label::Seen : Label::Unseen;
            stats.push_back(s);
        }
        const SurpParams p{1.5, 40, PercentileMode::MinMaxInterp};
        const auto sv = serial::surp_values(stats, p);
        const auto pv = parallel::surp_values(stats, p);
        REQUIRE(sv.size() == pv.size());
        for (std::size_t i = 0; i < sv.size(); ++i) {
            CHECK(same_bits(sv[i].score, pv[i].score));
            CHECK(sv[i].fallback == pv[i].fallback);
        }
        const auto grid = default_grid();
        for (auto mode : {PercentileMode::MinMaxInterp, PercentileMode::RankLinear})
            CHECK(serial::grid_cells(stats, grid, mode) == parallel::grid_cells(stats, grid, mode));
    }
    set_workers(0);
}
