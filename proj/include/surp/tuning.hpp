#pragma once

// Grid search over (entropy threshold, percentile k) and the CSV exports
// used for plotting.

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "surp/core.hpp"
#include "surp/scoring.hpp"

namespace surp {

struct GridSpec {
    std::vector<double> eps_values;
    std::vector<int> k_values;

    /// Both lists nonempty and strictly increasing; k in [0, 100], eps > 0.
    void validate() const;
    std::size_t size() const noexcept { return eps_values.size() * k_values.size(); }
};

struct HeatmapCell {
    double eps = 0.0;
    int k = 0;
    double auc = 0.0;
    bool operator==(const HeatmapCell&) const = default;
};

/// eps = 0.5, 1.0, ..., 10.0 and k = 10, 20, ..., 100.
GridSpec default_grid();

struct GridResult {
    HeatmapCell best;
    std::vector<HeatmapCell> cells;  // row-major: eps outer, k inner
};

/// AUC of surp_score for every grid cell. Best cell = highest AUC, ties
/// broken by smaller eps, then smaller k. Requires labeled stats with both
/// classes present.
GridResult grid_search(std::span<const TokenStats> dataset, const GridSpec& grid,
                       PercentileMode mode = PercentileMode::MinMaxInterp);

/// Picks the best cell from a row-major cell list.
HeatmapCell best_cell(std::span<const HeatmapCell> cells);

/// CSV matrix: header row `eps\k,<k ascending...>`, then one row per eps in
/// descending order with AUC values (17 significant digits).
void export_heatmap(std::span<const HeatmapCell> cells, const std::filesystem::path& path);
/// Inverse of export_heatmap; cells come back in row-major grid order.
std::vector<HeatmapCell> read_heatmap(const std::filesystem::path& path);

/// CSV `entropy,gt_logprob,label`, one row per token. With caps, keeps only
/// tokens with E_i < eps_cap and L_i < percentile_cut(L, pct_cap) of their
/// own sequence. Returns the number of rows written.
std::size_t export_scatter(std::span<const TokenStats> dataset, std::optional<double> eps_cap,
                           std::optional<int> pct_cap, const std::filesystem::path& path,
                           PercentileMode mode = PercentileMode::MinMaxInterp);

}  // namespace surp
