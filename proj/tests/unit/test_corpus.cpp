#include <cmath>
#include <fstream>
#include <set>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"
#include "surp/corpus.hpp"
#include "surp/ngram.hpp"

using namespace surp;
using testutil::TempDir;

namespace {

std::string words(std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += "w" + std::to_string(i) + (i % 10 == 9 ? "\n" : " ");
    return s;
}

}  // namespace

TEST_CASE("header stripping") {
    const auto book = testutil::read_file(testutil::fixture("books/variant_asterisks.txt"));
    const auto r = strip_gutenberg_header(book);
    CHECK(r.found_start);
    CHECK(r.found_end);
    CHECK_FALSE(r.warning);
    CHECK(r.text == "alpha body line one\nmentions *** END OF nothing inline\nalpha body line two\n");

    const auto plain = testutil::read_file(testutil::fixture("books/no_markers.txt"));
    const auto p = strip_gutenberg_header(plain);
    CHECK(p.text == plain);
    CHECK(p.warning);

    const auto start_only = strip_gutenberg_header(testutil::read_file(testutil::fixture("books/start_only.txt")));
    CHECK(start_only.warning);
    CHECK(start_only.found_start);
    CHECK(start_only.text == "body\n");

    const auto crlf = strip_gutenberg_header(testutil::read_file(testutil::fixture("books/book_4096.txt")));
    CHECK_FALSE(crlf.warning);
    CHECK(crlf.text.find("START OF") == std::string::npos);
    CHECK(crlf.text.find("END OF") == std::string::npos);
    CHECK(crlf.text.find("General Terms") == std::string::npos);
}

TEST_CASE("segmentation of the 4096-word fixture") {
    const auto raw = testutil::read_file(testutil::fixture("books/book_4096.txt"));
    const auto seg = segment_book(strip_gutenberg_header(raw).text, {});
    REQUIRE(seg.segments.size() == 4);
    CHECK(seg.parts.at(BookPart::Head) == std::vector<std::size_t>{0});
    CHECK(seg.parts.at(BookPart::Middle) == std::vector<std::size_t>{2});
    CHECK(seg.parts.at(BookPart::Tail) == std::vector<std::size_t>{2, 3});
    REQUIRE(seg.warnings.size() == 1);
    CHECK(seg.warnings[0].find("also a tail segment") != std::string::npos);

    std::ifstream in(testutil::fixture("books/book_4096.words"));
    std::string w, expected;
    while (in >> w) expected += (expected.empty() ? "" : " ") + w;
    std::string joined;
    for (const auto& s : seg.segments) joined += (joined.empty() ? "" : " ") + s;
    CHECK(joined == expected);
    for (const auto& s : seg.segments) CHECK(split_words(s).size() == 1024);
}

TEST_CASE("segmentation edge cases") {
    const auto five = segment_book(words(5000), {});
    CHECK(five.segments.size() == 4);
    CHECK_THROWS_AS(segment_book(words(1000), {}), Error);
    const auto one = segment_book(words(1500), {});
    CHECK(one.segments.size() == 1);
    CHECK(one.parts.at(BookPart::Tail) == std::vector<std::size_t>{0});
    CHECK_FALSE(one.warnings.empty());
    const auto only_head = segment_book(words(300), {100, {BookPart::Head}});
    CHECK(only_head.parts.size() == 1);
    std::string first100 = "w0";
    for (int i = 1; i < 100; ++i) first100 += " w" + std::to_string(i);
    CHECK(only_head.part_texts(BookPart::Head).at(0) == first100);
    // Unicode whitespace (NBSP, ideographic space) separates words.
    const auto uni = segment_book("a\u00A0b\u3000c\u2028d", {2, {BookPart::Head}});
    CHECK(uni.segments == std::vector<std::string>{"a b", "c d"});
}

TEST_CASE("dataset round trip and errors") {
    TempDir dir;
    oracle::Gen g(31);
    for (int t = 0; t < 30; ++t) {
        std::vector<LabeledText> recs;
        for (std::size_t i = g.size(1, 8); i > 0; --i) {
            LabeledText r;
            r.id = "doc\t" + std::to_string(g.size(0, 1000));
            r.text = "text \"" + std::to_string(i) + "\"\n\xE2\x82\xAC";
            if (g.coin()) r.label = g.coin() ? Label::Seen : Label::Unseen;
            if (g.coin()) r.meta["source"] = "s" + std::to_string(i);
            recs.push_back(r);
        }
        save_dataset(recs, dir / "d.jsonl");
        CHECK(load_dataset(dir / "d.jsonl") == recs);
    }
    testutil::write_file(dir / "two.jsonl", "{\"text\":\"a\",\"label\":1}\n{\"id\":7,\"text\":\"b\"}\n");
    const auto two = load_dataset(dir / "two.jsonl");
    REQUIRE(two.size() == 2);
    CHECK(two[0].id == "1");
    CHECK(two[1].id == "7");
    testutil::write_file(dir / "bad.jsonl", "{\"text\":\"a\"}\n{\"label\":1}\n");
    try {
        load_dataset(dir / "bad.jsonl");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    testutil::write_file(dir / "bad2.jsonl", "{\"text\":\"a\",\"label\":3}\n");
    CHECK_THROWS_AS(load_dataset(dir / "bad2.jsonl"), ParseError);
}

TEST_CASE("catalog filtering") {
    TempDir dir;
    testutil::write_file(dir / "c.csv", "id,date\n10,2019-05-01\n11,2023-01-15\n12,2024-07-30\n");
    const auto cat = read_catalog(dir / "c.csv");
    REQUIRE(cat.size() == 3);
    CHECK(filter_catalog(cat, "2023-01-15", true) == std::vector<std::uint64_t>{12});
    CHECK(filter_catalog(cat, "2023-01-15", false) == std::vector<std::uint64_t>{10, 11});
    testutil::write_file(dir / "bad.csv", "id,date\nx,2019\n");
    CHECK_THROWS_AS(read_catalog(dir / "bad.csv"), Error);
}

TEST_CASE("synthetic benchmark structure") {
    SyntheticConfig cfg;
    cfg.n_seen = 60;
    cfg.n_unseen = 60;
    cfg.background_noise_chars = 5000;
    const auto a = build_synthetic_benchmark(7, cfg);
    const auto b = build_synthetic_benchmark(7, cfg);
    CHECK(a.seen == b.seen);
    CHECK(a.unseen == b.unseen);
    CHECK(a.train_corpus == b.train_corpus);
    CHECK(build_synthetic_benchmark(8, cfg).seen != a.seen);

    const std::set<std::string> train(a.train_corpus.begin(), a.train_corpus.end());
    for (std::size_t i = 0; i < a.seen.size(); ++i) {
        CHECK(a.seen[i].label == Label::Seen);
        CHECK(a.seen[i].text.size() == 256);
        CHECK(a.seen[i].text.substr(0, 128) == a.seen_templates[i]);
        CHECK(train.count(a.seen_templates[i]) == 1);
    }
    for (std::size_t i = 0; i < a.unseen.size(); ++i) {
        CHECK(a.unseen[i].label == Label::Unseen);
        CHECK(a.unseen[i].text.size() == 256);
        CHECK(train.count(a.unseen_templates[i]) == 0);
    }
    // Every character fits the fixed vocabulary.
    std::vector<std::u32string> corpus;
    for (const auto& s : a.train_corpus) corpus.push_back(decode_utf8(s));
    const auto m = NGramModel::train(corpus, {4, 0.01, synthetic_vocabulary()});
    for (const auto& d : a.unseen) CHECK_NOTHROW(m.encode_utf8(d.text));
}

TEST_CASE("noise region is uniform over its alphabet") {
    SyntheticConfig cfg;
    cfg.n_seen = 200;
    cfg.n_unseen = 200;
    cfg.background_noise_chars = 1000;
    const auto b = build_synthetic_benchmark(42, cfg);
    const std::string alphabet = encode_utf8(synthetic_noise_alphabet());
    std::vector<double> counts(alphabet.size(), 0.0);
    double total = 0.0;
    for (const auto* set : {&b.seen, &b.unseen})
        for (const auto& d : *set)
            for (char c : d.text.substr(128)) {
                const auto at = alphabet.find(c);
                REQUIRE(at != std::string::npos);
                counts[at] += 1.0;
                total += 1.0;
            }
    double chi2 = 0.0;
    const double expected = total / static_cast<double>(alphabet.size());
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 15 degrees of freedom; the 0.999 quantile is about 37.7.
    CHECK(chi2 < 37.7);
}

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
