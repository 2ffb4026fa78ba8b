#pragma once

// Detection scores. Every score is oriented so that larger means "more
// likely Seen".

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "surp/core.hpp"
#include "surp/ngram.hpp"

namespace surp {

/// How the k-th percentile cut of the log-probabilities is located.
///  - MinMaxInterp: min + k/100 * (max - min)  (default)
///  - RankLinear:   linear interpolation between order statistics at
///                  position k/100 * (N - 1) of the sorted values
enum class PercentileMode { MinMaxInterp, RankLinear };

std::string_view to_string(PercentileMode m);
PercentileMode percentile_mode_from_string(std::string_view s);

double percentile_cut(std::span<const double> values, int k,
                      PercentileMode mode = PercentileMode::MinMaxInterp);

struct SurpParams {
    double entropy_threshold = 2.0;  // nats
    int percentile_k = 50;
    PercentileMode percentile_mode = PercentileMode::MinMaxInterp;

    void validate() const;
    json to_json() const;
};

/// Comparison used when filtering indices. Detection always uses Strict;
/// NonStrict exists so test harnesses can widen the selection.
enum class Comparison { Strict, NonStrict };

/// Which tokens were selected. Indices are 0-based and ascending.
struct SelectionTrace {
    std::vector<std::size_t> low_entropy;  // E_i < eps
    std::vector<std::size_t> low_prob;     // L_i < cut
    std::vector<std::size_t> selected;     // intersection
    double cut = 0.0;
    bool fallback_used = false;
};

SelectionTrace select_surprising(const TokenStats& stats, const SurpParams& params,
                                 Comparison cmp = Comparison::Strict);

/// Mean log-probability over the surprising tokens (low entropy and low
/// ground-truth probability). When no token passes both filters the mean
/// over all tokens is returned and `fallback` is set.
MethodScore surp_score(const TokenStats& stats, const SurpParams& params,
                       Comparison cmp = Comparison::Strict);

/// Plain value of surp_score, without building a MethodScore.
struct SurpValue {
    double score;
    bool fallback;
};
SurpValue surp_value(const TokenStats& stats, const SurpParams& params,
                     Comparison cmp = Comparison::Strict);

struct DecisionThreshold {
    double lambda = 0.0;
};

/// Seen iff score >= lambda.
Label decide(const MethodScore& score, DecisionThreshold thr);

MethodScore ppl_score(const TokenStats& stats);
/// Mean of the ceil(k*N/100) smallest log-probabilities, 1 <= k <= 100.
MethodScore mink_score(const TokenStats& stats, int k);
MethodScore ref_score(const TokenStats& target, const TokenStats& reference);
MethodScore lowercase_score(const TokenStats& original, const TokenStats& lowercased);

/// Compression level used for the zlib baseline.
inline constexpr int kZlibLevel = 6;

/// Length in bytes of the zlib (RFC 1950) stream produced by compress2 at
/// kZlibLevel.
std::size_t zlib_compressed_size(std::string_view bytes);

/// Sum of log-probabilities divided by the compressed size in bits.
MethodScore zlib_score(const TokenStats& stats, std::string_view text);

/// Mean log-prob of x minus the average of the neighbors' mean log-probs.
MethodScore neighbor_score(const TokenStats& stats, std::span<const TokenStats> neighbors);

/// Each neighbor replaces exactly one position of `text` with a token drawn
/// from the model's next-token distribution at that position, excluding the
/// original token and BOS. Throws when the model has a single non-BOS token.
std::vector<std::vector<TokenId>> generate_neighbors(std::span<const TokenId> text,
                                                     const NGramModel& model, std::size_t n,
                                                     std::uint64_t seed);

}  // namespace surp
