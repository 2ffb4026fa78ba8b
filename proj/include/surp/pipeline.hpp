#pragma once

// Text-level orchestration: turn labeled documents into the token
// statistics each method needs, score them, and run the seeded synthetic
// end-to-end benchmark.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surp/corpus.hpp"
#include "surp/metrics.hpp"
#include "surp/ngram.hpp"
#include "surp/scoring.hpp"
#include "surp/tuning.hpp"

namespace surp {

struct MethodConfig {
    std::vector<Method> methods{all_methods().begin(), all_methods().end()};
    SurpParams surp;
    int mink_k = 20;
    std::size_t neighbors = 5;
    std::uint64_t seed = 0;
};

/// Everything needed to score one document under any method.
struct DocumentStats {
    TokenStats target;
    std::optional<TokenStats> reference;
    std::optional<TokenStats> lowercased;
    std::vector<TokenStats> neighbors;
    std::string text;
};

bool needs(const MethodConfig& cfg, Method m);

/// Runs in parallel across documents; output order follows input order.
/// Throws when `ref` is requested without a reference model.
std::vector<DocumentStats> compute_document_stats(std::span<const LabeledText> docs, const NGramModel& target,
                                                  const NGramModel* reference, const MethodConfig& cfg);

/// One row per (document, method), document-major, methods in cfg order.
std::vector<MethodScore> score_documents(std::span<const DocumentStats> docs, const MethodConfig& cfg);

/// Scores precomputed stats. Only surp, ppl and mink are available, plus ref
/// when `reference` stats (matched by position and id) are given.
std::vector<MethodScore> score_stats(std::span<const TokenStats> stats, const MethodConfig& cfg,
                                     std::span<const TokenStats> reference = {});

/// MinK k with the best AUC on a labeled set (ties -> smaller k).
int tune_mink(std::span<const TokenStats> stats, std::span<const int> k_values);

// ---------------------------------------------------------------------------

struct DemoConfig {
    std::uint64_t seed = 42;
    SyntheticConfig bench;
    int order = 4;
    double lambda = 0.01;
    std::size_t neighbors = 5;
    GridSpec grid = default_grid();
    std::vector<int> mink_grid{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
};

struct DemoResult {
    std::size_t n_tune = 0;
    std::size_t n_eval = 0;
    GridResult tuning;          // SURP grid on the tune split
    std::vector<HeatmapCell> eval_cells;  // SURP grid on the eval split
    SurpParams surp;            // chosen on the tune split
    int mink_k = 0;             // chosen on the tune split
    std::vector<EvalReport> reports;  // eval split, one per method

    const EvalReport& report(Method m) const;
    json to_json() const;
    std::string table() const;
};

/// Tune/eval split: documents whose FNV-1a id hash is even go to tuning.
bool in_tune_split(const std::string& id);

DemoResult run_demo(const DemoConfig& cfg);

}  // namespace surp
