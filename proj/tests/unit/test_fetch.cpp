#include <atomic>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "support/tempdir.hpp"
#include "surp/corpus.hpp"
#include "surp/fetch.hpp"

using namespace surp;
using testutil::TempDir;

namespace {

// Local HTTP server: /books/1.txt is a fixture book, /books/2.txt is binary,
// every other id is 404. Counts requests per path.
class MockServer {
public:
    MockServer() {
        book_ = testutil::read_file(testutil::fixture("books/book_4096.txt"));
        server_.Get(R"(/books/(\d+)\.txt)", [this](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            ++hits_;
            if (id == "1") {
                res.set_content(book_, "text/plain; charset=utf-8");
            } else if (id == "2") {
                res.set_content(std::string("\x89PNG\0\0", 6), "image/png");
            } else {
                res.status = 404;
            }
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~MockServer() {
        server_.stop();
        thread_.join();
    }
    FetchOptions options(const std::filesystem::path& cache) const {
        FetchOptions o;
        o.endpoint = "http://127.0.0.1:" + std::to_string(port_) + "/books/{id}.txt";
        o.cache_dir = cache;
        o.base_delay = std::chrono::milliseconds(1);
        o.timeout = std::chrono::seconds(5);
        return o;
    }
    int hits() const { return hits_; }
    const std::string& book() const { return book_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> hits_{0};
    std::string book_;
};

}  // namespace

TEST_CASE("endpoint expansion") {
    const auto u = expand_endpoint(kDefaultBookEndpoint, 84);
    CHECK(u.scheme_host_port == "https://www.gutenberg.org");
    CHECK(u.path == "/cache/epub/84/pg84.txt");
    CHECK_THROWS_AS(expand_endpoint("no-scheme/{id}", 1), FetchError);
    CHECK_THROWS_AS(expand_endpoint(kDefaultBookEndpoint, 0), FetchError);
}

TEST_CASE("missing book fails after three attempts") {
    MockServer server;
    TempDir dir;
    auto opts = server.options(dir.path());
    CHECK_THROWS_WITH_AS(fetch_book(404, opts), doctest::Contains("after 3 attempts"), FetchError);
    CHECK(server.hits() == 3);
}

TEST_CASE("non-text payload is rejected and not cached") {
    MockServer server;
    TempDir dir;
    CHECK_THROWS_WITH_AS(fetch_book(2, server.options(dir.path())), doctest::Contains("not plain text"), FetchError);
    CHECK_FALSE(std::filesystem::exists(dir / "2.txt"));
}

TEST_CASE("cache hit avoids the network") {
    MockServer server;
    TempDir dir;
    const auto opts = server.options(dir.path());
    CHECK(fetch_book(1, opts) == server.book());
    CHECK(server.hits() == 1);
    CHECK(fetch_book(1, opts) == server.book());
    CHECK(server.hits() == 1);

    auto offline = opts;
    offline.endpoint = "http://127.0.0.1:1/{id}";
    CHECK(fetch_book(1, offline) == server.book());
}

TEST_CASE("fetch, strip and segment end to end") {
    MockServer server;
    TempDir dir;
    const std::vector<std::uint64_t> ids{1, 1, 404};
    const auto outcomes = fetch_books(ids, server.options(dir.path()), 2);
    REQUIRE(outcomes.size() == 3);
    CHECK(outcomes[0].ok);
    CHECK(outcomes[1].ok);
    CHECK_FALSE(outcomes[2].ok);
    CHECK(outcomes[2].id == 404);

    const auto stripped = strip_gutenberg_header(testutil::read_file(dir / "1.txt"));
    CHECK_FALSE(stripped.warning);
    const auto seg = segment_book(stripped.text, {});
    CHECK(seg.segments.size() == 4);
    CHECK(seg.parts.at(BookPart::Tail) == std::vector<std::size_t>{2, 3});
}
