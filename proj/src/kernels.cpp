#include "surp/kernels.hpp"

#include <exception>

#include <omp.h>

#include "surp/metrics.hpp"

namespace surp {

namespace {

std::vector<LabeledScore> labeled(std::span<const TokenStats> stats, std::span<const SurpValue> values) {
    std::vector<LabeledScore> out;
    out.reserve(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (!stats[i].label) throw Error("sequence '" + stats[i].seq_id + "' has no label");
        out.push_back({values[i].score, *stats[i].label});
    }
    return out;
}

HeatmapCell cell_at(std::span<const TokenStats> stats, const GridSpec& grid, PercentileMode mode,
                    std::size_t c) {
    const std::size_t nk = grid.k_values.size();
    const SurpParams p{grid.eps_values[c / nk], grid.k_values[c % nk], mode};
    std::vector<SurpValue> values;
    values.reserve(stats.size());
    for (const auto& s : stats) values.push_back(surp_value(s, p));
    return {p.entropy_threshold, p.percentile_k, auc_roc(labeled(stats, values))};
}

// Runs body(i) for i in [0, n) across OpenMP threads and rethrows the first
// exception on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    std::exception_ptr error;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(surp_kernel_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

namespace serial {

std::vector<TokenStats> score_texts(const NGramModel& model, std::span<const std::vector<TokenId>> texts) {
    std::vector<TokenStats> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(score_text(model, t));
    return out;
}

std::vector<SurpValue> surp_values(std::span<const TokenStats> stats, const SurpParams& params) {
    std::vector<SurpValue> out;
    out.reserve(stats.size());
    for (const auto& s : stats) out.push_back(surp_value(s, params));
    return out;
}

std::vector<HeatmapCell> grid_cells(std::span<const TokenStats> stats, const GridSpec& grid,
                                    PercentileMode mode) {
    grid.validate();
    std::vector<HeatmapCell> cells;
    cells.reserve(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) cells.push_back(cell_at(stats, grid, mode, c));
    return cells;
}

}  // namespace serial

namespace parallel {

std::vector<TokenStats> score_texts(const NGramModel& model, std::span<const std::vector<TokenId>> texts) {
    std::vector<TokenStats> out(texts.size());
    parallel_for(texts.size(), [&](std::size_t i) { out[i] = score_text(model, texts[i]); });
    return out;
}

std::vector<SurpValue> surp_values(std::span<const TokenStats> stats, const SurpParams& params) {
    params.validate();
    std::vector<SurpValue> out(stats.size());
    parallel_for(stats.size(), [&](std::size_t i) { out[i] = surp_value(stats[i], params); });
    return out;
}

std::vector<HeatmapCell> grid_cells(std::span<const TokenStats> stats, const GridSpec& grid,
                                    PercentileMode mode) {
    grid.validate();
    std::vector<HeatmapCell> cells(grid.size());
    parallel_for(grid.size(), [&](std::size_t c) { cells[c] = cell_at(stats, grid, mode, c); });
    return cells;
}

}  // namespace parallel

void set_workers(int workers) {
    if (workers > 0) omp_set_num_threads(workers);
}

int max_workers() { return omp_get_max_threads(); }

}  // namespace surp
