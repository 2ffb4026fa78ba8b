#include <cmath>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"
#include "surp/metrics.hpp"

using namespace surp;

namespace {

std::vector<LabeledScore> labeled(const std::vector<double>& seen, const std::vector<double>& unseen) {
    std::vector<LabeledScore> out;
    for (double s : seen) out.push_back({s, Label::Seen});
    for (double u : unseen) out.push_back({u, Label::Unseen});
    return out;
}

struct Instance {
    std::vector<double> seen, unseen;
};

Instance random_instance(oracle::Gen& g) {
    Instance in;
    const bool coarse = g.coin(0.4);
    auto draw = [&] { return coarse ? static_cast<double>(g.integer(0, 6)) : g.real(-3.0, 3.0); };
    for (std::size_t i = g.size(1, 60); i > 0; --i) in.seen.push_back(draw() + (coarse ? 0 : 0.3));
    for (std::size_t i = g.size(1, 60); i > 0; --i) in.unseen.push_back(draw());
    return in;
}

}  // namespace

TEST_CASE("auc hand example and curve") {
    const auto sc = labeled({0.6, 0.4}, {0.5, 0.3});
    CHECK(auc_roc(sc) == 0.75);
    const auto curve = roc_curve(sc);
    const std::vector<RocPoint> expected{{0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1}, {1, 1}};
    CHECK(curve == expected);
    CHECK(trapezoid_area(curve) == 0.75);
    const auto r = evaluate("x", json::object(), sc);
    CHECK(r.auc == 0.75);
    CHECK(r.n_seen == 2);
    CHECK(r.n_unseen == 2);
}

TEST_CASE("tpr at a low false-positive budget") {
    const auto sc = labeled({0.9, 0.8, 0.2}, {0.7, 0.1});
    CHECK(tpr_at_fpr(sc, 0.01) == 2.0 / 3.0);
    CHECK(tpr_at_fpr(sc, 0.5) == 1.0);
    const auto ties = labeled({0.5}, {0.5});
    CHECK(tpr_at_fpr(ties, 0.01) == 0.0);
    CHECK(auc_roc(ties) == 0.5);
}

TEST_CASE("single-class input is rejected") {
    CHECK_THROWS_AS(auc_roc(labeled({1.0}, {})), Error);
    CHECK_THROWS_AS(roc_curve(labeled({}, {1.0})), Error);
}

TEST_CASE("metrics properties on random instances") {
    oracle::Gen g(99);
    for (int t = 0; t < 1000; ++t) {
        const auto in = random_instance(g);
        const auto sc = labeled(in.seen, in.unseen);
        const auto mw = mann_whitney(sc);
        const auto pw = oracle::pairwise_auc(in.seen, in.unseen);
        CHECK(mw.twice_u == pw.twice_wins);
        CHECK(mw.pairs == pw.pairs);
        const double auc = auc_roc(sc);
        CHECK(std::abs(trapezoid_area(roc_curve(sc)) - auc) <= 1e-9);

        auto transformed = sc;
        for (auto& s : transformed) s.score = std::exp(2.0 * s.score) + 1.0;
        CHECK(auc_roc(transformed) == auc);

        auto flipped = sc;
        for (auto& s : flipped) s.label = flip(s.label);
        const auto fm = mann_whitney(flipped);
        CHECK(fm.pairs == mw.pairs);
        CHECK(fm.twice_u == 2 * mw.pairs - mw.twice_u);
        CHECK(std::abs(fm.auc() - (1.0 - auc)) <= 1e-15);

        for (double cap : kReportedFprCaps)
            CHECK(tpr_at_fpr(sc, cap) == oracle::brute_tpr_at_fpr(in.seen, in.unseen, cap));

        const auto curve = roc_curve(sc);
        CHECK(curve.front() == RocPoint{0, 0});
        CHECK(curve.back() == RocPoint{1, 1});
        for (std::size_t i = 1; i < curve.size(); ++i) {
            CHECK(curve[i].fpr >= curve[i - 1].fpr);
            CHECK(curve[i].tpr >= curve[i - 1].tpr);
        }
    }
}

TEST_CASE("grouped evaluation and report serialization") {
    std::vector<MethodScore> rows;
    auto add = [&](const char* id, Method m, json params, double score, Label l) {
        rows.push_back({id, m, std::move(params), score, std::nullopt, l});
    };
    add("a", Method::Ppl, json::object(), 0.6, Label::Seen);
    add("a", Method::MinK, {{"k", 20}}, 0.1, Label::Seen);
    add("b", Method::Ppl, json::object(), 0.4, Label::Seen);
    add("b", Method::MinK, {{"k", 20}}, 0.2, Label::Seen);
    add("c", Method::Ppl, json::object(), 0.5, Label::Unseen);
    add("c", Method::MinK, {{"k", 20}}, 0.3, Label::Unseen);
    add("d", Method::Ppl, json::object(), 0.3, Label::Unseen);
    add("d", Method::MinK, {{"k", 20}}, 0.4, Label::Unseen);
    const auto reps = evaluate_scores(rows);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].method == "ppl");
    CHECK(reps[0].auc == 0.75);
    CHECK(reps[1].method == "mink");
    CHECK(reps[1].auc == 0.0);
    const auto j = to_json(reps[0]);
    CHECK(j["tpr_at_fpr"].contains("0.01"));
    const auto back = eval_report_from_json(j);
    CHECK(back.auc == reps[0].auc);
    CHECK(back.roc_points == reps[0].roc_points);
    CHECK(back.tpr_at_10 == reps[0].tpr_at_10);

    rows.push_back({"e", Method::Ppl, json::object(), 0.1, std::nullopt, std::nullopt});
    CHECK_THROWS_AS(evaluate_scores(rows), Error);

    testutil::TempDir dir;
    write_roc_csv(reps[0].roc_points, dir / "roc.csv");
    CHECK(testutil::read_file(dir / "roc.csv").rfind("fpr,tpr\n", 0) == 0);
}
