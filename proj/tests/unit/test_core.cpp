#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"
#include "surp/core.hpp"
#include "surp/token_stats_io.hpp"

using namespace surp;
using testutil::TempDir;

TEST_CASE("entropy of closed-form distributions") {
    CHECK(entropy_of(ProbVector({1.0, 0.0, 0.0})) == 0.0);
    CHECK(entropy_of(ProbVector({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(entropy_of(ProbVector({0.5, 0.25, 0.125, 0.125})) ==
          doctest::Approx(1.75 * std::numbers::ln2).epsilon(1e-15));
    CHECK(std::abs(entropy_of(ProbVector({0.25, 0.25, 0.25, 0.25})) - 1.386294) < 1e-6);
    CHECK(std::abs(entropy_of(ProbVector({0.5, 0.25, 0.125, 0.125})) - 1.213008) < 1e-6);
}

TEST_CASE("entropy is permutation invariant and bounded by ln|V|") {
    oracle::Gen g(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = g.size(1, 40);
        std::vector<double> p(n);
        double sum = 0.0;
        for (auto& v : p) sum += (v = g.real(0.0, 1.0));
        for (auto& v : p) v /= sum;
        const double h = entropy_of(std::span<const double>(p));
        std::shuffle(p.begin(), p.end(), g.engine());
        CHECK(std::abs(entropy_of(std::span<const double>(p)) - h) < 1e-12);
        CHECK(h >= 0.0);
        CHECK(h <= std::log(static_cast<double>(n)) + 1e-9);
    }
}

TEST_CASE("probability vectors are validated") {
    CHECK_THROWS_AS(ProbVector({}), Error);
    CHECK_THROWS_AS(ProbVector({0.5, 0.6}), Error);
    CHECK_THROWS_AS(ProbVector({1.5, -0.5}), Error);
}

TEST_CASE("token stats invariants") {
    TokenStats ok{"a", {0.1, 0.2}, {-0.5, -1.0}, std::nullopt};
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_WITH_AS((TokenStats{"a", {0.1}, {-0.5, -1.0}, {}}).validate(), doctest::Contains("length mismatch"),
                         Error);
    CHECK_THROWS_AS((TokenStats{"a", {}, {}, {}}).validate(), Error);
    CHECK_THROWS_AS((TokenStats{"a", {-0.1}, {-0.5}, {}}).validate(), Error);
    CHECK_THROWS_AS((TokenStats{"a", {0.1}, {0.5}, {}}).validate(), Error);
    CHECK_THROWS_AS((TokenStats{"a", {2.0}, {-0.5}, {}}).validate(4), Error);
    CHECK_NOTHROW((TokenStats{"a", {std::log(4.0)}, {-0.5}, {}}).validate(4));
}

TEST_CASE("labels and methods") {
    CHECK(label_from_int(1) == Label::Seen);
    CHECK(label_from_int(0) == Label::Unseen);
    CHECK_FALSE(label_from_int(2).has_value());
    CHECK(flip(Label::Seen) == Label::Unseen);
    for (Method m : all_methods()) CHECK(method_from_string(to_string(m)) == m);
    CHECK(all_methods().size() == 7);
    CHECK_THROWS_AS(method_from_string("nope"), Error);
}

TEST_CASE("method score json round trip") {
    MethodScore s{"doc", Method::Surp, json{{"eps", 2.0}, {"k", 50}}, -3.25, true, Label::Seen};
    const MethodScore r = method_score_from_json(to_json(s));
    CHECK(r.seq_id == s.seq_id);
    CHECK(r.method == s.method);
    CHECK(r.params == s.params);
    CHECK(r.score == s.score);
    CHECK(r.fallback == s.fallback);
    CHECK(r.label == s.label);
    CHECK_THROWS_AS(method_score_from_json(json{{"id", "x"}, {"method", "ppl"}}), Error);
}

TEST_CASE("token stats file round trip on fuzzed records") {
    TempDir dir;
    oracle::Gen g(5);
    for (int t = 0; t < 50; ++t) {
        std::vector<TokenStats> recs;
        const std::size_t n = g.size(1, 6);
        for (std::size_t i = 0; i < n; ++i) {
            auto s = oracle::random_stats(g, g.size(1, 30));
            s.seq_id = "id \"" + std::to_string(i) + "\" \xC3\xA9";
            if (g.coin(0.2)) s.label.reset();
            recs.push_back(s);
        }
        const auto path = dir / "s.jsonl";
        const std::optional<std::size_t> vocab = g.coin() ? std::optional<std::size_t>(50) : std::nullopt;
        write_token_stats(recs, path, vocab);
        const auto back = read_token_stats(path);
        CHECK(back.records == recs);
        CHECK(back.vocab_size == vocab);
    }
}

TEST_CASE("token stats reader reports the offending line") {
    TempDir dir;
    const auto path = dir / "bad.jsonl";
    auto line_of = [&](const std::string& content) -> std::size_t {
        testutil::write_file(path, content);
        try {
            read_token_stats(path);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    const std::string good = R"({"id":"a","entropy":[0.1],"gt_logprob":[-1]})" "\n";
    CHECK(line_of(good + R"({"id":"b","entropy":[0.1,0.2],"gt_logprob":[-1]})" "\n") == 2);
    CHECK(line_of(good + good + R"({"id":"c","entropy":[-0.1],"gt_logprob":[-1]})" "\n") == 3);
    CHECK(line_of(R"({"id":"d","entropy":[0.1],"gt_logprob":[0.5]})" "\n") == 1);
    CHECK(line_of(good + "{not json\n") == 2);
    CHECK(line_of(good + R"({"$schema":"token-stats/v1","vocab_size":4})" "\n") == 2);
    CHECK(line_of(R"({"$schema":"token-stats/v1","vocab_size":4})" "\n" R"({"id":"e","entropy":[3.0],"gt_logprob":[-1]})" "\n") == 2);
    CHECK(line_of(good + "\n" + good) == 0);
}
