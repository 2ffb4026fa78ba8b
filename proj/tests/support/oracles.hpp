#pragma once

// Independent reference implementations and random-instance generators
// shared by the unit tests and the acceptance driver. Nothing here calls
// into the library's scoring or metrics code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "surp/core.hpp"

namespace oracle {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}
    std::size_t size(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

// Random valid stats. About a third of the instances draw values from a
// small pool so ties (and ties with the percentile cut) are common.
inline surp::TokenStats random_stats(Gen& g, std::size_t n, double max_entropy = std::log(50.0)) {
    surp::TokenStats s;
    s.seq_id = "r" + std::to_string(g.size(0, 1u << 30));
    const bool pooled = g.coin(0.35);
    std::vector<double> pool_l, pool_e;
    for (int i = 0; i < 4; ++i) {
        pool_l.push_back(-static_cast<double>(g.integer(0, 12)) / 2.0);
        pool_e.push_back(static_cast<double>(g.integer(0, 8)) / 2.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (pooled) {
            s.gt_logprob.push_back(pool_l[g.size(0, 3)]);
            s.entropy.push_back(std::min(pool_e[g.size(0, 3)], max_entropy));
        } else {
            s.gt_logprob.push_back(-g.real(0.0, 15.0));
            s.entropy.push_back(g.real(0.0, max_entropy));
        }
    }
    s.label = g.coin() ? surp::Label::Seen : surp::Label::Unseen;
    return s;
}

// The cut exactly as written: min + (k/100)(max - min), with k = 100 giving
// the maximum itself.
inline double minmax_cut(const std::vector<double>& l, int k) {
    double lo = l[0], hi = l[0];
    for (double v : l) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    if (k == 100) return hi;
    return lo + (k / 100.0) * (hi - lo);
}

// Linear interpolation between order statistics at k/100 * (n - 1).
inline double rank_cut(std::vector<double> l, int k) {
    std::sort(l.begin(), l.end());
    const double pos = k / 100.0 * static_cast<double>(l.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= l.size()) return l.back();
    const double f = pos - static_cast<double>(i);
    return f == 0.0 ? l[i] : l[i] + f * (l[i + 1] - l[i]);
}

struct BruteSelection {
    std::vector<std::size_t> low_entropy, low_prob, selected;
    double cut;
    double score;
    bool fallback;
};

inline BruteSelection brute_surp(const surp::TokenStats& s, double eps, int k, bool strict = true,
                                 bool rank = false) {
    BruteSelection b;
    b.cut = rank ? rank_cut(s.gt_logprob, k) : minmax_cut(s.gt_logprob, k);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool e = strict ? s.entropy[i] < eps : s.entropy[i] <= eps;
        const bool p = strict ? s.gt_logprob[i] < b.cut : s.gt_logprob[i] <= b.cut;
        if (e) b.low_entropy.push_back(i);
        if (p) b.low_prob.push_back(i);
        if (e && p) b.selected.push_back(i);
    }
    b.fallback = b.selected.empty();
    double sum = 0.0;
    if (b.fallback) {
        for (double v : s.gt_logprob) sum += v;
        b.score = sum / static_cast<double>(s.size());
    } else {
        for (std::size_t i : b.selected) sum += s.gt_logprob[i];
        b.score = sum / static_cast<double>(b.selected.size());
    }
    return b;
}

// Pairwise AUC with half credit for ties, O(n_seen * n_unseen). Returned as
// the exact rational twice_wins / (2 * pairs).
struct PairwiseAuc {
    std::uint64_t twice_wins = 0;
    std::uint64_t pairs = 0;
    double value() const { return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(pairs)); }
};

inline PairwiseAuc pairwise_auc(const std::vector<double>& seen, const std::vector<double>& unseen) {
    PairwiseAuc a;
    for (double s : seen)
        for (double u : unseen) {
            a.twice_wins += s > u ? 2 : (s == u ? 1 : 0);
            ++a.pairs;
        }
    return a;
}

// Largest TPR among thresholds t (score >= t predicts Seen) with FPR <= cap,
// trying every observed score plus +infinity.
inline double brute_tpr_at_fpr(const std::vector<double>& seen, const std::vector<double>& unseen, double cap) {
    std::vector<double> thresholds(seen);
    thresholds.insert(thresholds.end(), unseen.begin(), unseen.end());
    thresholds.push_back(INFINITY);
    double best = 0.0;
    for (double t : thresholds) {
        std::size_t tp = 0, fp = 0;
        for (double s : seen) tp += s >= t;
        for (double u : unseen) fp += u >= t;
        const double fpr = static_cast<double>(fp) / static_cast<double>(unseen.size());
        if (fpr <= cap + 1e-12) best = std::max(best, static_cast<double>(tp) / static_cast<double>(seen.size()));
    }
    return best;
}

}  // namespace oracle
