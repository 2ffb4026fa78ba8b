#include "surp/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "surp/kernels.hpp"
#include "surp/token_stats_io.hpp"

namespace surp {

void GridSpec::validate() const {
    if (eps_values.empty() || k_values.empty()) throw Error("grid axes must be nonempty");
    for (std::size_t i = 0; i < eps_values.size(); ++i) {
        if (!(eps_values[i] > 0.0) || !std::isfinite(eps_values[i])) throw Error("grid eps values must be > 0");
        if (i && !(eps_values[i] > eps_values[i - 1])) throw Error("grid eps values must be strictly increasing");
    }
    for (std::size_t i = 0; i < k_values.size(); ++i) {
        if (k_values[i] < 0 || k_values[i] > 100) throw Error("grid k values must be in [0, 100]");
        if (i && k_values[i] <= k_values[i - 1]) throw Error("grid k values must be strictly increasing");
    }
}

GridSpec default_grid() {
    GridSpec g;
    for (int i = 1; i <= 20; ++i) g.eps_values.push_back(0.5 * i);
    for (int k = 10; k <= 100; k += 10) g.k_values.push_back(k);
    return g;
}

HeatmapCell best_cell(std::span<const HeatmapCell> cells) {
    if (cells.empty()) throw Error("no grid cells");
    const HeatmapCell* best = &cells[0];
    for (const auto& c : cells) {
        if (c.auc > best->auc || (c.auc == best->auc && (c.eps < best->eps || (c.eps == best->eps && c.k < best->k))))
            best = &c;
    }
    return *best;
}

GridResult grid_search(std::span<const TokenStats> dataset, const GridSpec& grid, PercentileMode mode) {
    GridResult r;
    r.cells = parallel::grid_cells(dataset, grid, mode);
    r.best = best_cell(r.cells);
    return r;
}

void export_heatmap(std::span<const HeatmapCell> cells, const std::filesystem::path& path) {
    std::set<double> eps_set;
    std::set<int> k_set;
    std::map<std::pair<double, int>, double> grid;
    for (const auto& c : cells) {
        eps_set.insert(c.eps);
        k_set.insert(c.k);
        if (!grid.emplace(std::pair{c.eps, c.k}, c.auc).second) throw Error("duplicate heatmap cell");
    }
    if (cells.empty() || grid.size() != eps_set.size() * k_set.size())
        throw Error("heatmap cells do not cover a full rectangular grid");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "eps\\k";
    for (int k : k_set) out << ',' << k;
    out << '\n';
    for (auto it = eps_set.rbegin(); it != eps_set.rend(); ++it) {
        out << format_real(*it);
        for (int k : k_set) out << ',' << format_real(grid.at({*it, k}));
        out << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
}

}  // namespace

std::vector<HeatmapCell> read_heatmap(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty heatmap file");
    auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "eps\\k") throw ParseError(path.string(), 1, "missing eps\\k header");
    std::vector<int> ks;
    try {
        for (std::size_t i = 1; i < header.size(); ++i) ks.push_back(std::stoi(header[i]));
    } catch (const std::exception&) {
        throw ParseError(path.string(), 1, "bad k value in header");
    }
    std::vector<std::vector<HeatmapCell>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != header.size()) throw ParseError(path.string(), lineno, "ragged heatmap row");
        std::vector<HeatmapCell> row;
        try {
            const double eps = parse_real(f[0]);
            for (std::size_t i = 1; i < f.size(); ++i) row.push_back({eps, ks[i - 1], parse_real(f[i])});
        } catch (const std::exception&) {
            throw ParseError(path.string(), lineno, "non-numeric heatmap value");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path.string(), lineno, "heatmap has no rows");
    std::vector<HeatmapCell> cells;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) cells.insert(cells.end(), it->begin(), it->end());
    return cells;
}

std::size_t export_scatter(std::span<const TokenStats> dataset, std::optional<double> eps_cap,
                           std::optional<int> pct_cap, const std::filesystem::path& path,
                           PercentileMode mode) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "entropy,gt_logprob,label\n";
    std::size_t rows = 0;
    for (const auto& s : dataset) {
        const double cut = pct_cap ? percentile_cut(s.gt_logprob, *pct_cap, mode) : 0.0;
        const std::string label = s.label ? std::to_string(to_int(*s.label)) : std::string();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (eps_cap && !(s.entropy[i] < *eps_cap)) continue;
            if (pct_cap && !(s.gt_logprob[i] < cut)) continue;
            out << format_real(s.entropy[i]) << ',' << format_real(s.gt_logprob[i]) << ',' << label << '\n';
            ++rows;
        }
    }
    if (!out) throw Error("write failed for " + path.string());
    return rows;
}

}  // namespace surp
