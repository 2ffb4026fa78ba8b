#include "surp/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <sstream>

#include "surp/kernels.hpp"
#include "surp/rng.hpp"

namespace surp {

bool needs(const MethodConfig& cfg, Method m) {
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
}

std::vector<DocumentStats> compute_document_stats(std::span<const LabeledText> docs, const NGramModel& target,
                                                  const NGramModel* reference, const MethodConfig& cfg) {
    if (needs(cfg, Method::Ref) && !reference) throw Error("method 'ref' requires a reference model");
    if (needs(cfg, Method::Neighbor) && cfg.neighbors == 0) throw Error("method 'neighbor' needs >= 1 neighbor");
    std::vector<DocumentStats> out(docs.size());
    std::exception_ptr error;
    const auto n = static_cast<long long>(docs.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < n; ++i) {
        try {
            const LabeledText& d = docs[static_cast<std::size_t>(i)];
            DocumentStats& ds = out[static_cast<std::size_t>(i)];
            auto tag = [&](TokenStats ts) {
                ts.seq_id = d.id;
                ts.label = d.label;
                return ts;
            };
            std::vector<TokenId> tokens;
            try {
                tokens = target.encode_utf8(d.text);
            } catch (const Error& e) {
                throw Error("document '" + d.id + "': " + e.what());
            }
            ds.text = d.text;
            ds.target = tag(score_text(target, tokens));
            if (needs(cfg, Method::Ref)) ds.reference = tag(score_text(*reference, reference->encode_utf8(d.text)));
            if (needs(cfg, Method::Lowercase)) {
                try {
                    ds.lowercased = tag(score_text(target, target.encode_utf8(lowercase_text(d.text))));
                } catch (const Error& e) {
                    throw Error("document '" + d.id + "' (lowercased): " + e.what());
                }
            }
            if (needs(cfg, Method::Neighbor)) {
                const auto seed = derive_seed(cfg.seed, fnv1a64(d.id));
                for (const auto& nb : generate_neighbors(tokens, target, cfg.neighbors, seed))
                    ds.neighbors.push_back(tag(score_text(target, nb)));
            }
        } catch (...) {
#pragma omp critical(surp_pipeline_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<MethodScore> score_documents(std::span<const DocumentStats> docs, const MethodConfig& cfg) {
    std::vector<MethodScore> rows;
    rows.reserve(docs.size() * cfg.methods.size());
    for (const auto& d : docs) {
        for (Method m : cfg.methods) {
            switch (m) {
                case Method::Surp: rows.push_back(surp_score(d.target, cfg.surp)); break;
                case Method::Ppl: rows.push_back(ppl_score(d.target)); break;
                case Method::MinK: rows.push_back(mink_score(d.target, cfg.mink_k)); break;
                case Method::Ref:
                    if (!d.reference) throw Error("missing reference stats for '" + d.target.seq_id + "'");
                    rows.push_back(ref_score(d.target, *d.reference));
                    break;
                case Method::Lowercase:
                    if (!d.lowercased) throw Error("missing lowercase stats for '" + d.target.seq_id + "'");
                    rows.push_back(lowercase_score(d.target, *d.lowercased));
                    break;
                case Method::Zlib: rows.push_back(zlib_score(d.target, d.text)); break;
                case Method::Neighbor: rows.push_back(neighbor_score(d.target, d.neighbors)); break;
            }
        }
    }
    return rows;
}

std::vector<MethodScore> score_stats(std::span<const TokenStats> stats, const MethodConfig& cfg,
                                     std::span<const TokenStats> reference) {
    for (Method m : cfg.methods) {
        if (m == Method::Ref && reference.empty()) throw Error("method 'ref' requires reference stats");
        if (m == Method::Lowercase || m == Method::Zlib || m == Method::Neighbor)
            throw Error("method '" + std::string(to_string(m)) + "' needs raw text and a model");
    }
    if (!reference.empty() && reference.size() != stats.size())
        throw Error("reference stats file has a different number of records");
    std::vector<MethodScore> rows;
    rows.reserve(stats.size() * cfg.methods.size());
    for (std::size_t i = 0; i < stats.size(); ++i) {
        const auto& s = stats[i];
        for (Method m : cfg.methods) {
            switch (m) {
                case Method::Surp: rows.push_back(surp_score(s, cfg.surp)); break;
                case Method::Ppl: rows.push_back(ppl_score(s)); break;
                case Method::MinK: rows.push_back(mink_score(s, cfg.mink_k)); break;
                case Method::Ref:
                    if (reference[i].seq_id != s.seq_id)
                        throw Error("reference record " + std::to_string(i + 1) + " has id '" + reference[i].seq_id +
                                    "', expected '" + s.seq_id + "'");
                    rows.push_back(ref_score(s, reference[i]));
                    break;
                default: break;
            }
        }
    }
    return rows;
}

namespace {

std::vector<LabeledScore> as_labeled(std::span<const MethodScore> rows) {
    std::vector<LabeledScore> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back({r.score, r.label.value()});
    return out;
}

}  // namespace

int tune_mink(std::span<const TokenStats> stats, std::span<const int> k_values) {
    if (k_values.empty()) throw Error("empty MinK grid");
    int best_k = k_values[0];
    double best_auc = -1.0;
    for (int k : k_values) {
        std::vector<MethodScore> rows;
        rows.reserve(stats.size());
        for (const auto& s : stats) rows.push_back(mink_score(s, k));
        const double auc = auc_roc(as_labeled(rows));
        if (auc > best_auc) {
            best_auc = auc;
            best_k = k;
        }
    }
    return best_k;
}

bool in_tune_split(const std::string& id) { return fnv1a64(id) % 2 == 0; }

const EvalReport& DemoResult::report(Method m) const {
    for (const auto& r : reports)
        if (r.method == to_string(m)) return r;
    throw Error("no report for method " + std::string(to_string(m)));
}

json DemoResult::to_json() const {
    json cells = json::array();
    for (const auto& c : tuning.cells) cells.push_back({{"eps", c.eps}, {"k", c.k}, {"auc", c.auc}});
    json eval_cells_json = json::array();
    for (const auto& c : eval_cells) eval_cells_json.push_back({{"eps", c.eps}, {"k", c.k}, {"auc", c.auc}});
    json reps = json::array();
    for (const auto& r : reports) reps.push_back(surp::to_json(r));
    return {{"n_tune", n_tune},
            {"n_eval", n_eval},
            {"tuning",
             {{"split", "tune"},
              {"surp", surp.to_json()},
              {"surp_tune_auc", tuning.best.auc},
              {"mink_k", mink_k},
              {"cells", std::move(cells)}}},
            {"eval_grid", std::move(eval_cells_json)},
            {"reports", std::move(reps)}};
}

std::string DemoResult::table() const {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %-44s %6s %8s %8s %8s %9s\n", "method", "params", "AUC", "TPR@1%",
                  "TPR@5%", "TPR@10%", "fallback");
    os << buf;
    for (const auto& r : reports) {
        std::string params = r.params.dump();
        std::snprintf(buf, sizeof buf, "%-10s %-44s %6.3f %8.3f %8.3f %8.3f %9zu\n", r.method.c_str(),
                      params.c_str(), r.auc, r.tpr_at_1, r.tpr_at_5, r.tpr_at_10, r.n_fallback);
        os << buf;
    }
    os << "split: " << n_tune << " tune / " << n_eval << " eval documents\n";
    return os.str();
}

DemoResult run_demo(const DemoConfig& cfg) {
    const SyntheticBenchmark bench = build_synthetic_benchmark(cfg.seed, cfg.bench);

    std::vector<std::u32string> corpus;
    corpus.reserve(bench.train_corpus.size());
    for (const auto& s : bench.train_corpus) corpus.push_back(decode_utf8(s));
    const std::u32string vocab = synthetic_vocabulary();
    const NGramModel target = NGramModel::train(corpus, {cfg.order, cfg.lambda, vocab});
    const NGramModel reference = NGramModel::train(corpus, {std::max(1, cfg.order - 1), cfg.lambda, vocab});

    std::vector<LabeledText> tune_docs, eval_docs;
    for (const auto* set : {&bench.seen, &bench.unseen})
        for (const auto& d : *set) (in_tune_split(d.id) ? tune_docs : eval_docs).push_back(d);

    MethodConfig mc;
    mc.neighbors = cfg.neighbors;
    mc.seed = cfg.seed;
    const auto tune_stats = compute_document_stats(tune_docs, target, &reference, mc);
    const auto eval_stats = compute_document_stats(eval_docs, target, &reference, mc);

    std::vector<TokenStats> tune_target, eval_target;
    for (const auto& d : tune_stats) tune_target.push_back(d.target);
    for (const auto& d : eval_stats) eval_target.push_back(d.target);

    DemoResult res;
    res.n_tune = tune_docs.size();
    res.n_eval = eval_docs.size();
    res.tuning = grid_search(tune_target, cfg.grid);
    res.eval_cells = parallel::grid_cells(eval_target, cfg.grid, PercentileMode::MinMaxInterp);
    res.surp = {res.tuning.best.eps, res.tuning.best.k, PercentileMode::MinMaxInterp};
    res.mink_k = tune_mink(tune_target, cfg.mink_grid);

    mc.surp = res.surp;
    mc.mink_k = res.mink_k;
    const auto rows = score_documents(eval_stats, mc);
    res.reports = evaluate_scores(rows);
    return res;
}

}  // namespace surp
