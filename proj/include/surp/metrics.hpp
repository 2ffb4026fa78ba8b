#pragma once

// Threshold-free evaluation of labeled scores: ROC curve, AUC and TPR at a
// fixed false-positive budget.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "surp/core.hpp"

namespace surp {

struct LabeledScore {
    double score;
    Label label;
};

struct RocPoint {
    double fpr;
    double tpr;
    bool operator==(const RocPoint&) const = default;
};

/// Mann-Whitney U with half credit for ties, kept as an exact rational:
/// auc = twice_u / (2 * pairs).
struct MannWhitney {
    std::uint64_t twice_u = 0;
    std::uint64_t pairs = 0;
    std::size_t n_seen = 0;
    std::size_t n_unseen = 0;

    double auc() const { return static_cast<double>(twice_u) / (2.0 * static_cast<double>(pairs)); }
};

/// O(n log n) via sorting and tie groups. Throws when a class is missing.
MannWhitney mann_whitney(std::span<const LabeledScore> scores);
double auc_roc(std::span<const LabeledScore> scores);

/// Step curve over every distinct threshold, descending; starts at (0,0)
/// and ends at (1,1). Tied scores of both classes form a diagonal segment.
std::vector<RocPoint> roc_curve(std::span<const LabeledScore> scores);
double trapezoid_area(std::span<const RocPoint> curve);

/// Largest TPR over thresholds whose empirical FPR is <= fpr_cap. No
/// interpolation between ROC points.
double tpr_at_fpr(std::span<const LabeledScore> scores, double fpr_cap);

inline constexpr double kReportedFprCaps[] = {0.01, 0.05, 0.10};

struct EvalReport {
    std::string method;
    json params = json::object();
    double auc = 0.0;
    std::vector<RocPoint> roc_points;
    double tpr_at_1 = 0.0;
    double tpr_at_5 = 0.0;
    double tpr_at_10 = 0.0;
    std::size_t n_seen = 0;
    std::size_t n_unseen = 0;
    std::size_t n_fallback = 0;
};

EvalReport evaluate(std::string method, json params, std::span<const LabeledScore> scores);

json to_json(const EvalReport& r);
EvalReport eval_report_from_json(const json& j);

/// Two-column CSV `fpr,tpr`.
void write_roc_csv(std::span<const RocPoint> curve, const std::filesystem::path& path);

/// Groups labeled MethodScores by (method, params) in first-seen order and
/// evaluates each group. Rows without a label are rejected.
std::vector<EvalReport> evaluate_scores(std::span<const MethodScore> scores);

}  // namespace surp
