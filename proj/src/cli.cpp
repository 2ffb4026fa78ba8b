#include "surp/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "surp/corpus.hpp"
#include "surp/fetch.hpp"
#include "surp/kernels.hpp"
#include "surp/metrics.hpp"
#include "surp/pipeline.hpp"
#include "surp/provenance.hpp"
#include "surp/token_stats_io.hpp"
#include "surp/tuning.hpp"

namespace surp {

namespace {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

class Log {
public:
    explicit Log(std::ostream& sink) : sink_(sink) {}
    void set_level(LogLevel l) { level_ = l; }
    void error(const std::string& m) { emit(LogLevel::Error, "error", m); }
    void warn(const std::string& m) { emit(LogLevel::Warn, "warn", m); }
    void info(const std::string& m) { emit(LogLevel::Info, "info", m); }
    void debug(const std::string& m) { emit(LogLevel::Debug, "debug", m); }

private:
    void emit(LogLevel l, const char* tag, const std::string& m) {
        if (l <= level_) sink_ << "[" << tag << "] " << m << '\n';
    }
    std::ostream& sink_;
    LogLevel level_ = LogLevel::Info;
};

struct Globals {
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = 0;
    std::string log_level = "info";
    std::string command_line;
};

struct GridOptions {
    std::vector<double> eps;
    std::vector<int> k;
    std::string percentile = "minmax";

    GridSpec spec() const {
        GridSpec g = default_grid();
        if (!eps.empty()) g.eps_values = eps;
        if (!k.empty()) g.k_values = k;
        g.validate();
        return g;
    }
};

void add_grid_options(CLI::App* cmd, GridOptions& g) {
    cmd->add_option("--eps", g.eps, "Entropy thresholds (default 0.5..10 step 0.5)")->delimiter(',');
    cmd->add_option("--k", g.k, "Percentile values (default 10..100 step 10)")->delimiter(',');
    cmd->add_option("--percentile", g.percentile, "Percentile mode")->check(CLI::IsMember({"minmax", "rank"}));
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<Method> out;
    for (const auto& n : names) out.push_back(method_from_string(n));
    return out;
}

std::vector<std::u32string> to_corpus(std::span<const LabeledText> docs) {
    std::vector<std::u32string> out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.push_back(decode_utf8(d.text));
    return out;
}

std::vector<LabeledText> read_corpus(const std::filesystem::path& path, const std::string& format) {
    if (format == "jsonl") return load_dataset(path);
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<LabeledText> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back({std::to_string(out.size() + 1), line, std::nullopt, {}});
    }
    return out;
}

void write_jsonl(std::span<const MethodScore> rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    for (const auto& r : rows) out << to_json(r).dump() << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

std::vector<MethodScore> read_scores(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<MethodScore> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            rows.push_back(method_score_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw ParseError(path.string(), lineno, e.what());
        }
    }
    return rows;
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

std::string report_table(std::span<const EvalReport> reports) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-10s %-44s %6s %8s %8s %8s\n", "method", "params", "AUC", "TPR@1%", "TPR@5%",
                  "TPR@10%");
    os << buf;
    for (const auto& r : reports) {
        const std::string params = r.params.dump();
        std::snprintf(buf, sizeof buf, "%-10s %-44s %6.3f %8.3f %8.3f %8.3f\n", r.method.c_str(), params.c_str(),
                      r.auc, r.tpr_at_1, r.tpr_at_5, r.tpr_at_10);
        os << buf;
    }
    return os.str();
}

bool same_file(const std::filesystem::path& a, const std::filesystem::path& b) {
    std::error_code ec;
    return std::filesystem::equivalent(a, b, ec) || (!ec && a == b);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Log log(err);
    Globals g;
    for (std::size_t i = 0; i < args.size(); ++i) g.command_line += (i ? " " : "") + args[i];

    CLI::App app{"Pre-training data detection via surprising tokens", "surp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    app.add_option("--seed", g.seed, "Seed for every random step (recorded in outputs)")
        ->each([&](const std::string&) { g.seed_given = true; });
    app.add_option("--workers", g.workers, "Worker threads (default: logical CPUs)")->check(CLI::NonNegativeNumber);
    app.add_option("--log-level", g.log_level, "error, warn, info or debug")
        ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

    // train
    std::string train_corpus, train_format = "jsonl", train_out, train_vocab;
    int train_order = 3;
    double train_lambda = 1.0;
    auto* train = app.add_subcommand("train", "Train the character n-gram model");
    train->add_option("--corpus", train_corpus, "Training corpus")->required()->check(CLI::ExistingFile);
    train->add_option("--format", train_format, "jsonl (dataset) or lines (one document per line)")
        ->check(CLI::IsMember({"jsonl", "lines"}));
    train->add_option("--out", train_out, "Model file to write")->required();
    train->add_option("--order", train_order, "n-gram order")->check(CLI::PositiveNumber);
    train->add_option("--lambda", train_lambda, "Add-lambda smoothing constant");
    train->add_option("--vocab", train_vocab, "Fixed vocabulary (UTF-8 characters); default: from corpus");

    // export-stats
    std::string es_dataset, es_model, es_out;
    auto* export_stats = app.add_subcommand("export-stats", "Write per-token statistics of a dataset");
    export_stats->add_option("--dataset", es_dataset)->required()->check(CLI::ExistingFile);
    export_stats->add_option("--model", es_model)->required()->check(CLI::ExistingFile);
    export_stats->add_option("--out", es_out)->required();

    // score
    std::string sc_dataset, sc_model, sc_ref_model, sc_stats, sc_ref_stats, sc_out, sc_percentile = "minmax";
    std::vector<std::string> sc_methods;
    SurpParams sc_surp;
    int sc_mink_k = 20;
    std::size_t sc_neighbors = 5;
    auto* score = app.add_subcommand("score", "Score sequences with one or more detection methods");
    score->add_option("--dataset", sc_dataset, "Labeled text dataset (JSONL)")->check(CLI::ExistingFile);
    score->add_option("--model", sc_model, "Target model")->check(CLI::ExistingFile);
    score->add_option("--ref-model", sc_ref_model, "Reference model for 'ref'")->check(CLI::ExistingFile);
    score->add_option("--stats", sc_stats, "Precomputed token statistics")->check(CLI::ExistingFile);
    score->add_option("--ref-stats", sc_ref_stats, "Reference-model token statistics for 'ref'")
        ->check(CLI::ExistingFile);
    score->add_option("--methods", sc_methods, "Comma-separated method ids")->delimiter(',');
    score->add_option("--eps", sc_surp.entropy_threshold, "SURP entropy threshold (nats)");
    score->add_option("--k", sc_surp.percentile_k, "SURP percentile k")->check(CLI::Range(0, 100));
    score->add_option("--percentile", sc_percentile)->check(CLI::IsMember({"minmax", "rank"}));
    score->add_option("--mink-k", sc_mink_k, "MinK percentage")->check(CLI::Range(1, 100));
    score->add_option("--neighbors", sc_neighbors, "Neighbors per sequence")->check(CLI::PositiveNumber);
    score->add_option("--out", sc_out)->required();

    // evaluate
    std::string ev_scores, ev_out, ev_roc_dir;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "AUC and TPR@FPR per (method, params)");
    evaluate_cmd->add_option("--scores", ev_scores)->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--out", ev_out)->required();
    evaluate_cmd->add_option("--roc-dir", ev_roc_dir, "Directory for per-configuration ROC CSVs");

    // tune
    std::string tu_tune, tu_eval, tu_out;
    bool tu_same = false;
    GridOptions tu_grid;
    auto* tune = app.add_subcommand("tune", "Grid-search SURP on a tuning split, report on an eval split");
    tune->add_option("--tune", tu_tune, "Labeled token statistics used for tuning")->required()->check(CLI::ExistingFile);
    tune->add_option("--eval", tu_eval, "Labeled token statistics used for evaluation")->required()->check(CLI::ExistingFile);
    tune->add_flag("--allow-same-split", tu_same, "Permit tuning and evaluating on the same file");
    tune->add_option("--out", tu_out)->required();
    add_grid_options(tune, tu_grid);

    // heatmap
    std::string hm_stats, hm_out;
    GridOptions hm_grid;
    auto* heatmap = app.add_subcommand("heatmap", "AUC heatmap CSV over the (eps, k) grid");
    heatmap->add_option("--stats", hm_stats)->required()->check(CLI::ExistingFile);
    heatmap->add_option("--out", hm_out)->required();
    add_grid_options(heatmap, hm_grid);

    // scatter
    std::string sp_stats, sp_out, sp_percentile = "minmax";
    std::optional<double> sp_eps_cap;
    std::optional<int> sp_pct_cap;
    auto* scatter = app.add_subcommand("scatter", "Per-token (entropy, log-prob, label) CSV");
    scatter->add_option("--stats", sp_stats)->required()->check(CLI::ExistingFile);
    scatter->add_option("--out", sp_out)->required();
    scatter->add_option("--eps-cap", sp_eps_cap, "Keep tokens with entropy below this");
    scatter->add_option("--pct-cap", sp_pct_cap, "Keep tokens below this percentile of their sequence")
        ->check(CLI::Range(0, 100));
    scatter->add_option("--percentile", sp_percentile)->check(CLI::IsMember({"minmax", "rank"}));

    // segment
    std::vector<std::string> sg_books, sg_parts{"head", "middle", "tail"};
    std::size_t sg_words = 1024;
    std::optional<int> sg_label;
    std::string sg_out;
    auto* segment = app.add_subcommand("segment", "Strip book headers and cut head/middle/tail segments");
    segment->add_option("--book", sg_books, "Raw book text file(s)")->required()->check(CLI::ExistingFile);
    segment->add_option("--words", sg_words, "Words per segment")->check(CLI::PositiveNumber);
    segment->add_option("--parts", sg_parts, "head,middle,tail")->delimiter(',');
    segment->add_option("--label", sg_label, "Label attached to every segment")->check(CLI::Range(0, 1));
    segment->add_option("--out", sg_out, "Dataset JSONL to write")->required();

    // fetch
    std::vector<std::uint64_t> fe_ids;
    std::string fe_catalog, fe_after, fe_before;
    FetchOptions fe_opts;
    std::string fe_cache = fe_opts.cache_dir.string();
    long fe_backoff_ms = fe_opts.base_delay.count();
    std::size_t fe_concurrency = 4;
    auto* fetch = app.add_subcommand("fetch", "Download plain-text books by id into the cache");
    fetch->add_option("--ids", fe_ids, "Book ids")->delimiter(',');
    fetch->add_option("--catalog", fe_catalog, "Catalog CSV (id,date)")->check(CLI::ExistingFile);
    auto* fe_after_opt = fetch->add_option("--after", fe_after, "Keep catalog entries dated after YYYY-MM-DD");
    fetch->add_option("--before", fe_before, "Keep catalog entries dated on/before YYYY-MM-DD")->excludes(fe_after_opt);
    fetch->add_option("--endpoint", fe_opts.endpoint, "URL template with {id}");
    fetch->add_option("--cache-dir", fe_cache);
    fetch->add_option("--attempts", fe_opts.attempts)->check(CLI::PositiveNumber);
    fetch->add_option("--backoff-ms", fe_backoff_ms, "Initial retry delay")->check(CLI::NonNegativeNumber);
    fetch->add_option("--concurrency", fe_concurrency)->check(CLI::PositiveNumber);

    // demo
    std::string dm_out, dm_heatmap;
    auto* demo = app.add_subcommand("demo", "Seeded end-to-end run on the synthetic benchmark");
    demo->add_option("--out", dm_out, "JSON report");
    demo->add_option("--heatmap", dm_heatmap, "Tune-split SURP heatmap CSV");

    try {
        std::vector<std::string> rest(args.rbegin(), args.rend());
        if (!rest.empty()) rest.pop_back();  // program name
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int rc = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return rc == 0 ? 0 : 2;
    }

    log.set_level(g.log_level == "error"  ? LogLevel::Error
                  : g.log_level == "warn" ? LogLevel::Warn
                  : g.log_level == "debug" ? LogLevel::Debug
                                           : LogLevel::Info);
    set_workers(g.workers);
    Provenance prov;
    prov.command_line = g.command_line;

    try {
        if (*train) {
            prov.seed = g.seed;
            prov.add_input(train_corpus);
            const auto docs = read_corpus(train_corpus, train_format);
            TrainConfig cfg{train_order, train_lambda, std::nullopt};
            if (!train_vocab.empty()) cfg.fixed_vocab = decode_utf8(train_vocab);
            const auto model = NGramModel::train(to_corpus(docs), cfg);
            model.save(train_out);
            write_provenance(train_out, prov);
            out << "vocab_size " << model.vocab_size() << "\ncontexts " << model.num_contexts() << "\ntotal_count "
                << model.total_count() << '\n';
            return 0;
        }

        if (*export_stats) {
            prov.seed = g.seed;
            prov.add_input(es_dataset);
            prov.add_input(es_model);
            const auto docs = load_dataset(es_dataset);
            const auto model = NGramModel::load(es_model);
            MethodConfig mc;
            mc.methods = {Method::Ppl};
            const auto ds = compute_document_stats(docs, model, nullptr, mc);
            std::vector<TokenStats> stats;
            for (const auto& d : ds) stats.push_back(d.target);
            write_token_stats(stats, es_out, model.vocab_size());
            write_provenance(es_out, prov);
            log.info("wrote " + std::to_string(stats.size()) + " records to " + es_out);
            return 0;
        }

        if (*score) {
            const bool text_mode = !sc_dataset.empty() || !sc_model.empty();
            const bool stats_mode = !sc_stats.empty();
            if (text_mode == stats_mode)
                throw Error("provide either --dataset with --model, or --stats (exactly one input kind)");
            if (text_mode && (sc_dataset.empty() || sc_model.empty()))
                throw Error("--dataset and --model must be given together");
            MethodConfig mc;
            mc.surp = sc_surp;
            mc.surp.percentile_mode = percentile_mode_from_string(sc_percentile);
            mc.surp.validate();
            mc.mink_k = sc_mink_k;
            mc.neighbors = sc_neighbors;
            mc.seed = g.seed;
            if (!sc_methods.empty()) mc.methods = parse_methods(sc_methods);
            else if (stats_mode) mc.methods = {Method::Surp, Method::Ppl, Method::MinK};
            if (sc_methods.empty() && text_mode && sc_ref_model.empty())
                std::erase(mc.methods, Method::Ref);
            prov.seed = g.seed;

            std::vector<MethodScore> rows;
            if (text_mode) {
                if (needs(mc, Method::Ref) && sc_ref_model.empty())
                    throw Error("method 'ref' requires --ref-model");
                prov.add_input(sc_dataset);
                prov.add_input(sc_model);
                const auto docs = load_dataset(sc_dataset);
                const auto model = NGramModel::load(sc_model);
                std::optional<NGramModel> ref;
                if (!sc_ref_model.empty()) {
                    prov.add_input(sc_ref_model);
                    ref = NGramModel::load(sc_ref_model);
                }
                const auto ds = compute_document_stats(docs, model, ref ? &*ref : nullptr, mc);
                rows = score_documents(ds, mc);
            } else {
                if (needs(mc, Method::Ref) && sc_ref_stats.empty()) throw Error("method 'ref' requires --ref-stats");
                prov.add_input(sc_stats);
                const auto stats = read_token_stats(sc_stats).records;
                std::vector<TokenStats> ref;
                if (!sc_ref_stats.empty()) {
                    prov.add_input(sc_ref_stats);
                    ref = read_token_stats(sc_ref_stats).records;
                }
                rows = score_stats(stats, mc, ref);
            }
            write_jsonl(rows, sc_out);
            write_provenance(sc_out, prov);
            std::size_t fallbacks = 0;
            for (const auto& r : rows) fallbacks += r.fallback.value_or(false);
            log.info("wrote " + std::to_string(rows.size()) + " scores to " + sc_out);
            if (fallbacks) log.warn(std::to_string(fallbacks) + " surp scores fell back to the all-token mean");
            return 0;
        }

        if (*evaluate_cmd) {
            prov.seed = g.seed;
            prov.add_input(ev_scores);
            const auto rows = read_scores(ev_scores);
            if (rows.empty()) throw Error("no scores in " + ev_scores);
            const auto reports = evaluate_scores(rows);
            json reps = json::array();
            for (const auto& r : reports) reps.push_back(to_json(r));
            write_json({{"provenance", prov.to_json()}, {"reports", std::move(reps)}}, ev_out);
            if (!ev_roc_dir.empty()) {
                std::filesystem::create_directories(ev_roc_dir);
                for (std::size_t i = 0; i < reports.size(); ++i)
                    write_roc_csv(reports[i].roc_points, std::filesystem::path(ev_roc_dir) /
                                                             (std::to_string(i) + "_" + reports[i].method + ".csv"));
            }
            out << report_table(reports);
            return 0;
        }

        if (*tune) {
            if (same_file(tu_tune, tu_eval) && !tu_same)
                throw Error("--tune and --eval are the same file; pass --allow-same-split to permit this");
            prov.seed = g.seed;
            prov.add_input(tu_tune);
            prov.add_input(tu_eval);
            const GridSpec grid = tu_grid.spec();
            const auto mode = percentile_mode_from_string(tu_grid.percentile);
            const auto tune_stats = read_token_stats(tu_tune).records;
            const auto eval_stats = read_token_stats(tu_eval).records;
            const GridResult gr = grid_search(tune_stats, grid, mode);
            const SurpParams best{gr.best.eps, gr.best.k, mode};
            std::vector<MethodScore> rows;
            for (const auto& s : eval_stats) rows.push_back(surp_score(s, best));
            const auto reports = evaluate_scores(rows);
            json cells = json::array();
            for (const auto& c : gr.cells) cells.push_back({{"eps", c.eps}, {"k", c.k}, {"auc", c.auc}});
            write_json({{"provenance", prov.to_json()},
                        {"tuned_on", tu_tune},
                        {"same_split", same_file(tu_tune, tu_eval)},
                        {"best", {{"eps", gr.best.eps}, {"k", gr.best.k}, {"tune_auc", gr.best.auc}}},
                        {"params", best.to_json()},
                        {"eval", to_json(reports.at(0))},
                        {"cells", std::move(cells)}},
                       tu_out);
            char buf[160];
            std::snprintf(buf, sizeof buf, "best eps=%g k=%d tune AUC %.3f eval AUC %.3f\n", gr.best.eps, gr.best.k,
                          gr.best.auc, reports.at(0).auc);
            out << buf;
            return 0;
        }

        if (*heatmap) {
            prov.seed = g.seed;
            prov.add_input(hm_stats);
            const auto stats = read_token_stats(hm_stats).records;
            const GridResult gr = grid_search(stats, hm_grid.spec(), percentile_mode_from_string(hm_grid.percentile));
            export_heatmap(gr.cells, hm_out);
            write_provenance(hm_out, prov);
            char buf[128];
            std::snprintf(buf, sizeof buf, "best eps=%g k=%d AUC %.3f\n", gr.best.eps, gr.best.k, gr.best.auc);
            out << buf;
            return 0;
        }

        if (*scatter) {
            prov.seed = g.seed;
            prov.add_input(sp_stats);
            const auto stats = read_token_stats(sp_stats).records;
            const auto n = export_scatter(stats, sp_eps_cap, sp_pct_cap, sp_out,
                                          percentile_mode_from_string(sp_percentile));
            write_provenance(sp_out, prov);
            out << "rows " << n << '\n';
            return 0;
        }

        if (*segment) {
            prov.seed = g.seed;
            SegmentationSpec spec;
            spec.words_per_segment = sg_words;
            spec.parts.clear();
            for (const auto& p : sg_parts) spec.parts.push_back(book_part_from_string(p));
            std::vector<LabeledText> records;
            for (const auto& book : sg_books) {
                prov.add_input(book);
                std::ifstream in(book, std::ios::binary);
                std::ostringstream ss;
                ss << in.rdbuf();
                const auto stripped = strip_gutenberg_header(ss.str());
                if (stripped.warning) log.warn(book + ": start or end marker missing; only the side found was stripped");
                const auto seg = segment_book(stripped.text, spec);
                for (const auto& w : seg.warnings) log.warn(book + ": " + w);
                const std::string stem = std::filesystem::path(book).stem().string();
                for (BookPart p : spec.parts) {
                    for (std::size_t idx : seg.parts.at(p)) {
                        LabeledText t;
                        t.id = stem + "-" + std::string(to_string(p)) + "-" + std::to_string(idx);
                        t.text = seg.segments[idx];
                        if (sg_label) t.label = label_from_int(*sg_label);
                        t.meta = {{"source", book},
                                  {"part", std::string(to_string(p))},
                                  {"segment", std::to_string(idx)},
                                  {"segments", std::to_string(seg.segments.size())},
                                  {"words", std::to_string(sg_words)}};
                        records.push_back(std::move(t));
                    }
                }
            }
            save_dataset(records, sg_out);
            write_provenance(sg_out, prov);
            out << "segments " << records.size() << '\n';
            return 0;
        }

        if (*fetch) {
            std::vector<std::uint64_t> ids = fe_ids;
            if (!fe_catalog.empty()) {
                const auto catalog = read_catalog(fe_catalog);
                if (!fe_after.empty()) ids = filter_catalog(catalog, fe_after, true);
                else if (!fe_before.empty()) ids = filter_catalog(catalog, fe_before, false);
                else for (const auto& e : catalog) ids.push_back(e.id);
            }
            if (ids.empty()) throw Error("no book ids to fetch (use --ids or --catalog)");
            fe_opts.cache_dir = fe_cache;
            fe_opts.base_delay = std::chrono::milliseconds(fe_backoff_ms);
            const auto outcomes = fetch_books(ids, fe_opts, fe_concurrency);
            std::size_t failed = 0;
            for (const auto& o : outcomes) {
                if (o.ok) out << o.id << (o.from_cache ? " cached\n" : " fetched\n");
                else {
                    ++failed;
                    log.error(o.error);
                }
            }
            return failed ? 1 : 0;
        }

        if (*demo) {
            DemoConfig cfg;
            cfg.seed = g.seed_given ? g.seed : 42;
            prov.seed = cfg.seed;
            const auto t0 = std::chrono::steady_clock::now();
            const DemoResult res = run_demo(cfg);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            out << res.table();
            if (!dm_out.empty()) {
                json j = res.to_json();
                j["provenance"] = prov.to_json();
                write_json(j, dm_out);
            }
            if (!dm_heatmap.empty()) {
                export_heatmap(res.tuning.cells, dm_heatmap);
                write_provenance(dm_heatmap, prov);
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f s", secs);
            log.info(std::string("demo finished in ") + buf);
            return 0;
        }
    } catch (const std::exception& e) {
        log.error(e.what());
        return 1;
    }
    return 2;
}

}  // namespace surp
