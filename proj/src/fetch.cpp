#include "surp/fetch.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "httplib.h"

namespace surp {

namespace {

std::mutex& cache_lock(std::uint64_t id) {
    static std::mutex registry_mutex;
    static std::map<std::uint64_t, std::unique_ptr<std::mutex>> registry;
    std::lock_guard<std::mutex> g(registry_mutex);
    auto& slot = registry[id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

std::filesystem::path cache_path(const FetchOptions& o, std::uint64_t id) {
    return o.cache_dir / (std::to_string(id) + ".txt");
}

std::optional<std::string> read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomically(const std::filesystem::path& p, const std::string& body) {
    std::filesystem::create_directories(p.parent_path());
    auto tmp = p;
    tmp += ".part";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FetchError("cannot write cache file " + tmp.string());
        out << body;
        if (!out) throw FetchError("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

bool looks_like_text(const httplib::Result& res) {
    const auto type = res->get_header_value("Content-Type");
    if (!type.empty() && type.rfind("text/", 0) != 0) return false;
    return res->body.find('\0') == std::string::npos;
}

}  // namespace

ParsedUrl expand_endpoint(const std::string& endpoint, std::uint64_t id) {
    if (id == 0) throw FetchError("book id must be >= 1");
    std::string url = endpoint;
    const std::string needle = "{id}";
    const std::string value = std::to_string(id);
    for (auto pos = url.find(needle); pos != std::string::npos; pos = url.find(needle, pos + value.size()))
        url.replace(pos, needle.size(), value);
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw FetchError("endpoint is not an absolute URL: " + endpoint);
    const auto path_start = url.find('/', scheme_end + 3);
    ParsedUrl out;
    out.scheme_host_port = url.substr(0, path_start);
    out.path = path_start == std::string::npos ? "/" : url.substr(path_start);
    return out;
}

std::string fetch_book(std::uint64_t id, const FetchOptions& options) {
    const ParsedUrl url = expand_endpoint(options.endpoint, id);
    const auto path = cache_path(options, id);
    std::lock_guard<std::mutex> guard(cache_lock(id));
    if (auto cached = read_file(path)) return *cached;

    httplib::Client client(url.scheme_host_port);
    client.set_follow_location(true);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);

    std::string last_error;
    const int attempts = std::max(options.attempts, 1);
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        if (attempt > 1) std::this_thread::sleep_for(options.base_delay * (1 << (attempt - 2)));
        auto res = client.Get(url.path);
        if (!res) {
            last_error = "request failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP status " + std::to_string(res->status);
            continue;
        }
        if (!looks_like_text(res))
            throw FetchError("book " + std::to_string(id) + ": payload is not plain text");
        write_atomically(path, res->body);
        return res->body;
    }
    throw FetchError("book " + std::to_string(id) + ": " + last_error + " after " + std::to_string(attempts) +
                     " attempts");
}

std::vector<FetchOutcome> fetch_books(std::span<const std::uint64_t> ids, const FetchOptions& options,
                                      std::size_t concurrency) {
    std::vector<FetchOutcome> out(ids.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ids.size(); i = next++) {
            out[i].id = ids[i];
            out[i].from_cache = std::filesystem::exists(cache_path(options, ids[i]));
            try {
                fetch_book(ids[i], options);
                out[i].ok = true;
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    const std::size_t n = std::max<std::size_t>(1, std::min(concurrency, ids.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace surp
