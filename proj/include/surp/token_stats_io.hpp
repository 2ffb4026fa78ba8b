#pragma once

// Token-statistics interchange file (JSON Lines).
//
//   {"$schema":"token-stats/v1","vocab_size":50277}          <- optional header
//   {"id":"doc-1","label":1,"entropy":[...],"gt_logprob":[...]}
//
// Any external scorer that can emit per-token entropy (nats) and
// ground-truth log-probabilities (natural log) can feed the engine through
// this format. Reals are written with 17 significant digits.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surp/core.hpp"

namespace surp {

inline constexpr const char* kTokenStatsSchema = "token-stats/v1";

struct TokenStatsFile {
    std::optional<std::size_t> vocab_size;
    std::vector<TokenStats> records;
};

/// Throws ParseError (with line number) on malformed lines or records that
/// violate the TokenStats invariants.
TokenStatsFile read_token_stats(const std::filesystem::path& path);

/// Writes one record per line; emits the schema header only when
/// vocab_size is given.
void write_token_stats(std::span<const TokenStats> records, const std::filesystem::path& path,
                       std::optional<std::size_t> vocab_size = std::nullopt);

/// `%.17g` formatting used by every text writer in the project.
std::string format_real(double v);

}  // namespace surp
