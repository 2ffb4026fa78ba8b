// Serial reference kernels vs their OpenMP counterparts on the synthetic
// benchmark corpus. Run with --benchmark_filter to pick one kernel.

#include <benchmark/benchmark.h>

#include "surp/corpus.hpp"
#include "surp/kernels.hpp"

using namespace surp;

namespace {

struct Fixture {
    NGramModel model;
    std::vector<std::vector<TokenId>> texts;
    std::vector<TokenStats> stats;

    static const Fixture& get() {
        static const Fixture f = [] {
            const auto bench = build_synthetic_benchmark(42);
            std::vector<std::u32string> corpus;
            for (const auto& s : bench.train_corpus) corpus.push_back(decode_utf8(s));
            Fixture f{NGramModel::train(corpus, {4, 0.01, synthetic_vocabulary()}), {}, {}};
            for (const auto* set : {&bench.seen, &bench.unseen})
                for (const auto& d : *set) f.texts.push_back(f.model.encode_utf8(d.text));
            f.stats = serial::score_texts(f.model, f.texts);
            for (std::size_t i = 0; i < f.stats.size(); ++i)
                f.stats[i].label = i < bench.seen.size() ? Label::Seen : Label::Unseen;
            return f;
        }();
        return f;
    }
};

template <auto Kernel>
void score_texts(benchmark::State& state) {
    const auto& f = Fixture::get();
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.model, f.texts));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.texts.size()));
}

template <auto Kernel>
void surp_values(benchmark::State& state) {
    const auto& f = Fixture::get();
    const SurpParams p{2.0, 50, PercentileMode::MinMaxInterp};
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.stats, p));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.stats.size()));
}

template <auto Kernel>
void grid_cells(benchmark::State& state) {
    const auto& f = Fixture::get();
    const auto grid = default_grid();
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.stats, grid, PercentileMode::MinMaxInterp));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

}  // namespace

BENCHMARK(score_texts<serial::score_texts>)->Name("score_texts/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(score_texts<parallel::score_texts>)->Name("score_texts/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(surp_values<serial::surp_values>)->Name("surp_values/serial")->Unit(benchmark::kMicrosecond);
BENCHMARK(surp_values<parallel::surp_values>)->Name("surp_values/parallel")->Unit(benchmark::kMicrosecond);
BENCHMARK(grid_cells<serial::grid_cells>)->Name("grid_cells/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(grid_cells<parallel::grid_cells>)->Name("grid_cells/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
