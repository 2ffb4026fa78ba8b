#pragma once

// Batch kernels over many sequences. Each kernel has a serial reference
// version and an OpenMP version with identical results (bit for bit); the
// parallel versions write to preallocated slots so output order never
// depends on scheduling.

#include <span>
#include <vector>

#include "surp/ngram.hpp"
#include "surp/scoring.hpp"
#include "surp/tuning.hpp"

namespace surp {

namespace serial {

std::vector<TokenStats> score_texts(const NGramModel& model,
                                    std::span<const std::vector<TokenId>> texts);
std::vector<SurpValue> surp_values(std::span<const TokenStats> stats, const SurpParams& params);
std::vector<HeatmapCell> grid_cells(std::span<const TokenStats> stats, const GridSpec& grid,
                                    PercentileMode mode);

}  // namespace serial

namespace parallel {

std::vector<TokenStats> score_texts(const NGramModel& model,
                                    std::span<const std::vector<TokenId>> texts);
std::vector<SurpValue> surp_values(std::span<const TokenStats> stats, const SurpParams& params);
std::vector<HeatmapCell> grid_cells(std::span<const TokenStats> stats, const GridSpec& grid,
                                    PercentileMode mode);

}  // namespace parallel

/// Sets the OpenMP worker count; 0 keeps the runtime default.
void set_workers(int workers);
int max_workers();

}  // namespace surp
