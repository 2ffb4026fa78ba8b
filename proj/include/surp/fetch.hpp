#pragma once

// Minimal fetch-by-identifier client for plain-text books.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surp/core.hpp"

namespace surp {

inline constexpr const char* kDefaultBookEndpoint = "https://www.gutenberg.org/cache/epub/{id}/pg{id}.txt";

struct FetchOptions {
    /// URL with one or more `{id}` placeholders.
    std::string endpoint = kDefaultBookEndpoint;
    /// Books are cached as <cache_dir>/<id>.txt.
    std::filesystem::path cache_dir = "cache";
    int attempts = 3;
    /// Delay before retry r (1-based) is base_delay * 2^(r-1).
    std::chrono::milliseconds base_delay{500};
    std::chrono::seconds timeout{30};
};

class FetchError : public Error {
public:
    using Error::Error;
};

struct ParsedUrl {
    std::string scheme_host_port;  // e.g. "https://example.org:8443"
    std::string path;              // starts with '/'
};

/// Substitutes `{id}` and splits the result into origin and path.
ParsedUrl expand_endpoint(const std::string& endpoint, std::uint64_t id);

/// Returns the cached copy when present; otherwise GETs the asset with up to
/// `attempts` tries and exponential backoff, rejects non-text payloads and
/// stores the body in the cache.
std::string fetch_book(std::uint64_t id, const FetchOptions& options);

struct FetchOutcome {
    std::uint64_t id = 0;
    bool ok = false;
    bool from_cache = false;
    std::string error;
};

/// Fetches many ids with at most `concurrency` requests in flight. Results
/// are in input order.
std::vector<FetchOutcome> fetch_books(std::span<const std::uint64_t> ids, const FetchOptions& options,
                                      std::size_t concurrency = 4);

}  // namespace surp
