#include "surp/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <zlib.h>

#include "surp/rng.hpp"

namespace surp {

std::string_view to_string(PercentileMode m) {
    return m == PercentileMode::MinMaxInterp ? "minmax" : "rank";
}

PercentileMode percentile_mode_from_string(std::string_view s) {
    if (s == "minmax") return PercentileMode::MinMaxInterp;
    if (s == "rank") return PercentileMode::RankLinear;
    throw Error("unknown percentile mode '" + std::string(s) + "' (expected minmax or rank)");
}

double percentile_cut(std::span<const double> values, int k, PercentileMode mode) {
    if (values.empty()) throw Error("percentile of an empty array");
    if (k < 0 || k > 100) throw Error("percentile k must be in [0, 100]");
    if (mode == PercentileMode::MinMaxInterp) {
        auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        if (k == 100) return *hi;
        return *lo + (static_cast<double>(k) / 100.0) * (*hi - *lo);
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = static_cast<double>(k) / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto below = static_cast<std::size_t>(std::floor(pos));
    const std::size_t above = std::min(below + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(below);
    if (frac == 0.0) return sorted[below];
    return sorted[below] + frac * (sorted[above] - sorted[below]);
}

void SurpParams::validate() const {
    if (!(entropy_threshold > 0.0)) throw Error("entropy threshold must be > 0");
    if (percentile_k < 0 || percentile_k > 100) throw Error("percentile k must be in [0, 100]");
}

json SurpParams::to_json() const {
    return {{"eps", entropy_threshold},
            {"k", percentile_k},
            {"percentile", std::string(to_string(percentile_mode))}};
}

namespace {

bool passes(double value, double bound, Comparison cmp) {
    return cmp == Comparison::Strict ? value < bound : value <= bound;
}

double mean_at(std::span<const double> xs, std::span<const std::size_t> idx) {
    double sum = 0.0;
    for (std::size_t i : idx) sum += xs[i];
    return sum / static_cast<double>(idx.size());
}

double sum_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
}

}  // namespace

SelectionTrace select_surprising(const TokenStats& stats, const SurpParams& params, Comparison cmp) {
    params.validate();
    const auto& e = stats.entropy;
    const auto& l = stats.gt_logprob;
    SelectionTrace t;
    t.cut = percentile_cut(l, params.percentile_k, params.percentile_mode);
    for (std::size_t i = 0; i < l.size(); ++i) {
        const bool low_e = passes(e[i], params.entropy_threshold, cmp);
        const bool low_p = passes(l[i], t.cut, cmp);
        if (low_e) t.low_entropy.push_back(i);
        if (low_p) t.low_prob.push_back(i);
        if (low_e && low_p) t.selected.push_back(i);
    }
    t.fallback_used = t.selected.empty();
    return t;
}

SurpValue surp_value(const TokenStats& stats, const SurpParams& params, Comparison cmp) {
    params.validate();
    const auto& e = stats.entropy;
    const auto& l = stats.gt_logprob;
    const double cut = percentile_cut(l, params.percentile_k, params.percentile_mode);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (passes(e[i], params.entropy_threshold, cmp) && passes(l[i], cut, cmp)) {
            sum += l[i];
            ++n;
        }
    }
    if (n == 0) return {mean(l), true};
    return {sum / static_cast<double>(n), false};
}

MethodScore surp_score(const TokenStats& stats, const SurpParams& params, Comparison cmp) {
    const SurpValue v = surp_value(stats, params, cmp);
    MethodScore s;
    s.seq_id = stats.seq_id;
    s.method = Method::Surp;
    s.params = params.to_json();
    s.score = v.score;
    s.fallback = v.fallback;
    s.label = stats.label;
    return s;
}

Label decide(const MethodScore& score, DecisionThreshold thr) {
    return score.score >= thr.lambda ? Label::Seen : Label::Unseen;
}

namespace {

MethodScore make_score(const TokenStats& stats, Method m, double value, json params = json::object()) {
    MethodScore s;
    s.seq_id = stats.seq_id;
    s.method = m;
    s.params = std::move(params);
    s.score = value;
    s.label = stats.label;
    return s;
}

}  // namespace

MethodScore ppl_score(const TokenStats& stats) {
    return make_score(stats, Method::Ppl, mean(stats.gt_logprob));
}

MethodScore mink_score(const TokenStats& stats, int k) {
    if (k < 1 || k > 100) throw Error("MinK k must be in [1, 100]");
    const auto& l = stats.gt_logprob;
    const std::size_t n = l.size();
    const std::size_t take = std::max<std::size_t>(1, (static_cast<std::size_t>(k) * n + 99) / 100);
    // Pick the `take` smallest by (value, index), then sum in index order so
    // the k = 100 case is bit-identical to the plain mean.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return l[a] < l[b]; });
    idx.resize(take);
    std::sort(idx.begin(), idx.end());
    return make_score(stats, Method::MinK, mean_at(l, idx), {{"k", k}});
}

MethodScore ref_score(const TokenStats& target, const TokenStats& reference) {
    if (target.size() != reference.size())
        throw Error("reference stats length " + std::to_string(reference.size()) +
                    " does not match target length " + std::to_string(target.size()));
    return make_score(target, Method::Ref, mean(target.gt_logprob) - mean(reference.gt_logprob));
}

MethodScore lowercase_score(const TokenStats& original, const TokenStats& lowercased) {
    return make_score(original, Method::Lowercase,
                      mean(original.gt_logprob) - mean(lowercased.gt_logprob));
}

std::size_t zlib_compressed_size(std::string_view bytes) {
    uLongf len = compressBound(static_cast<uLong>(bytes.size()));
    std::vector<Bytef> buf(len);
    const int rc = compress2(buf.data(), &len, reinterpret_cast<const Bytef*>(bytes.data()),
                             static_cast<uLong>(bytes.size()), kZlibLevel);
    if (rc != Z_OK) throw Error("zlib compression failed with code " + std::to_string(rc));
    return static_cast<std::size_t>(len);
}

MethodScore zlib_score(const TokenStats& stats, std::string_view text) {
    if (text.empty()) throw Error("zlib score needs non-empty text");
    const double bits = 8.0 * static_cast<double>(zlib_compressed_size(text));
    return make_score(stats, Method::Zlib, sum_of(stats.gt_logprob) / bits, {{"level", kZlibLevel}});
}

MethodScore neighbor_score(const TokenStats& stats, std::span<const TokenStats> neighbors) {
    if (neighbors.empty()) throw Error("neighbor score needs at least one neighbor");
    double acc = 0.0;
    for (const auto& nb : neighbors) acc += mean(nb.gt_logprob);
    const double neighbor_mean = acc / static_cast<double>(neighbors.size());
    return make_score(stats, Method::Neighbor, mean(stats.gt_logprob) - neighbor_mean,
                      {{"n", neighbors.size()}});
}

std::vector<std::vector<TokenId>> generate_neighbors(std::span<const TokenId> text,
                                                     const NGramModel& model, std::size_t n,
                                                     std::uint64_t seed) {
    if (n == 0) throw Error("number of neighbors must be >= 1");
    if (text.empty()) throw Error("cannot build neighbors of an empty sequence");
    const std::size_t v = model.vocab_size();
    if (v <= 2) throw Error("vocabulary has a single token; no substitute exists");
    const std::size_t ctx = model.context_length();
    std::vector<TokenId> padded(ctx, kBos);
    padded.insert(padded.end(), text.begin(), text.end());

    Lcg64 rng(seed);
    std::vector<double> dist(v);
    std::vector<std::vector<TokenId>> out;
    out.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto pos = static_cast<std::size_t>(rng.below(text.size()));
        const TokenId original = text[pos];
        model.fill_distribution(std::span<const TokenId>(padded).subspan(pos, ctx), dist);
        double mass = 0.0;
        for (std::size_t j = 1; j < v; ++j)
            if (j != original) mass += dist[j];
        const double u = rng.uniform() * mass;
        double cum = 0.0;
        TokenId pick = kBos;
        for (std::size_t j = 1; j < v; ++j) {
            if (j == original) continue;
            cum += dist[j];
            pick = static_cast<TokenId>(j);
            if (u < cum) break;
        }
        std::vector<TokenId> nb(text.begin(), text.end());
        nb[pos] = pick;
        out.push_back(std::move(nb));
    }
    return out;
}

}  // namespace surp
