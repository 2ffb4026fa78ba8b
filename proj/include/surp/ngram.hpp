#pragma once

// Add-lambda (Lidstone) smoothed character n-gram model.
//
// Tokens are Unicode code points plus a reserved begin-of-sequence token
// (id 0). Every sequence is left-padded with order-1 BOS tokens, so each
// position has a full-length context. For a context c and vocabulary V
// (BOS included):
//
//   P(v | c) = (count(c -> v) + lambda) / (total(c) + lambda * |V|)
//
// which is strictly positive for every v.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "surp/core.hpp"

namespace surp {

using TokenId = std::uint32_t;
inline constexpr TokenId kBos = 0;
inline constexpr const char* kModelFormat = "surp-ngram/v1";

struct TrainConfig {
    int order = 3;
    double smoothing_lambda = 1.0;
    /// Fixed vocabulary (in index order); when empty the vocabulary is
    /// every code point of the corpus sorted ascending.
    std::optional<std::u32string> fixed_vocab;

    void validate() const;
};

class OutOfVocabulary : public Error {
public:
    OutOfVocabulary(char32_t symbol, std::size_t position);
    char32_t symbol() const noexcept { return symbol_; }
    std::size_t position() const noexcept { return position_; }

private:
    char32_t symbol_;
    std::size_t position_;
};

class NGramModel {
public:
    /// Throws Error on an empty corpus, OutOfVocabulary under a fixed
    /// vocabulary.
    static NGramModel train(std::span<const std::u32string> corpus, const TrainConfig& config);

    int order() const noexcept { return order_; }
    std::size_t context_length() const noexcept { return static_cast<std::size_t>(order_ - 1); }
    double lambda() const noexcept { return lambda_; }
    /// Includes BOS.
    std::size_t vocab_size() const noexcept { return symbols_.size() + 1; }
    /// Code point of a non-BOS token.
    char32_t symbol(TokenId id) const;
    std::optional<TokenId> find(char32_t symbol) const;

    std::vector<TokenId> encode(std::u32string_view text) const;
    std::vector<TokenId> encode_utf8(std::string_view text) const;
    std::u32string decode(std::span<const TokenId> tokens) const;

    /// Only the last order-1 tokens of `context` are used; shorter contexts
    /// are left-padded with BOS.
    ProbVector next_distribution(std::span<const TokenId> context) const;
    /// Same values as next_distribution, written into `out` (size
    /// vocab_size()) without the ProbVector validation pass.
    void fill_distribution(std::span<const TokenId> context, std::span<double> out) const;

    std::uint64_t count(std::span<const TokenId> context, TokenId next) const;
    std::uint64_t context_total(std::span<const TokenId> context) const;
    std::size_t num_contexts() const noexcept { return table_.size(); }
    std::uint64_t total_count() const noexcept { return total_count_; }

    json to_json() const;
    static NGramModel from_json(const json& j);
    void save(const std::filesystem::path& path) const;
    static NGramModel load(const std::filesystem::path& path);

    bool operator==(const NGramModel& other) const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<TokenId>& k) const noexcept;
    };
    struct Row {
        std::uint64_t total = 0;
        std::vector<std::uint64_t> counts;
    };

    NGramModel() = default;
    std::vector<TokenId> key_of(std::span<const TokenId> context) const;
    void check_id(TokenId id) const;
    void rebuild_index();

    int order_ = 1;
    double lambda_ = 1.0;
    std::vector<char32_t> symbols_;  // symbols_[id - 1]
    std::unordered_map<char32_t, TokenId> index_;
    std::unordered_map<std::vector<TokenId>, Row, KeyHash> table_;
    std::uint64_t total_count_ = 0;
};

/// Per-position entropy of the model's next-token distribution and the log
/// probability of the observed token. Throws on empty input or ids outside
/// the vocabulary.
TokenStats score_text(const NGramModel& model, std::span<const TokenId> tokens,
                      std::string seq_id = {});

/// Samples `length` tokens by inverse CDF over the vocabulary order using
/// Lcg64(seed). BOS is never emitted: sampling is restricted to the non-BOS
/// tokens, renormalized.
std::vector<TokenId> generate(const NGramModel& model, std::size_t length, std::uint64_t seed);

}  // namespace surp
