#include "surp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "surp/token_stats_io.hpp"

namespace surp {

namespace {

struct Counts {
    std::size_t seen = 0;
    std::size_t unseen = 0;
};

Counts count_classes(std::span<const LabeledScore> scores) {
    Counts c;
    for (const auto& s : scores) {
        if (!std::isfinite(s.score)) throw Error("non-finite score");
        (s.label == Label::Seen ? c.seen : c.unseen)++;
    }
    if (c.seen == 0 || c.unseen == 0) throw Error("evaluation needs both Seen and Unseen examples");
    return c;
}

std::vector<LabeledScore> sorted_desc(std::span<const LabeledScore> scores) {
    std::vector<LabeledScore> v(scores.begin(), scores.end());
    std::sort(v.begin(), v.end(), [](const LabeledScore& a, const LabeledScore& b) { return a.score > b.score; });
    return v;
}

}  // namespace

MannWhitney mann_whitney(std::span<const LabeledScore> scores) {
    const Counts c = count_classes(scores);
    auto v = sorted_desc(scores);
    MannWhitney mw;
    mw.n_seen = c.seen;
    mw.n_unseen = c.unseen;
    mw.pairs = static_cast<std::uint64_t>(c.seen) * c.unseen;
    // Walk tie groups from the highest score down; every seen score beats the
    // unseen scores strictly below its group and ties with those inside it.
    std::uint64_t unseen_below = c.unseen;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        std::uint64_t gs = 0, gu = 0;
        while (j < v.size() && v[j].score == v[i].score) {
            (v[j].label == Label::Seen ? gs : gu)++;
            ++j;
        }
        unseen_below -= gu;
        mw.twice_u += gs * (2 * unseen_below + gu);
        i = j;
    }
    return mw;
}

double auc_roc(std::span<const LabeledScore> scores) { return mann_whitney(scores).auc(); }

std::vector<RocPoint> roc_curve(std::span<const LabeledScore> scores) {
    const Counts c = count_classes(scores);
    auto v = sorted_desc(scores);
    std::vector<RocPoint> curve{{0.0, 0.0}};
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j].score == v[i].score) {
            (v[j].label == Label::Seen ? tp : fp)++;
            ++j;
        }
        curve.push_back({static_cast<double>(fp) / static_cast<double>(c.unseen),
                         static_cast<double>(tp) / static_cast<double>(c.seen)});
        i = j;
    }
    return curve;
}

double trapezoid_area(std::span<const RocPoint> curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    return area;
}

double tpr_at_fpr(std::span<const LabeledScore> scores, double fpr_cap) {
    if (!(fpr_cap >= 0.0 && fpr_cap <= 1.0)) throw Error("FPR cap must be in [0, 1]");
    const Counts c = count_classes(scores);
    auto v = sorted_desc(scores);
    // Largest false-positive count allowed, guarding against cap*n landing a
    // hair below an integer.
    const double max_fp = std::floor(fpr_cap * static_cast<double>(c.unseen) + 1e-9);
    std::size_t tp = 0, fp = 0, best_tp = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j].score == v[i].score) {
            (v[j].label == Label::Seen ? tp : fp)++;
            ++j;
        }
        if (static_cast<double>(fp) > max_fp) break;
        best_tp = tp;
        i = j;
    }
    return static_cast<double>(best_tp) / static_cast<double>(c.seen);
}

EvalReport evaluate(std::string method, json params, std::span<const LabeledScore> scores) {
    EvalReport r;
    r.method = std::move(method);
    r.params = std::move(params);
    const MannWhitney mw = mann_whitney(scores);
    r.auc = mw.auc();
    r.n_seen = mw.n_seen;
    r.n_unseen = mw.n_unseen;
    r.roc_points = roc_curve(scores);
    r.tpr_at_1 = tpr_at_fpr(scores, 0.01);
    r.tpr_at_5 = tpr_at_fpr(scores, 0.05);
    r.tpr_at_10 = tpr_at_fpr(scores, 0.10);
    return r;
}

json to_json(const EvalReport& r) {
    json pts = json::array();
    for (const auto& p : r.roc_points) pts.push_back({p.fpr, p.tpr});
    return {{"method", r.method},
            {"params", r.params},
            {"auc", r.auc},
            {"tpr_at_fpr", {{"0.01", r.tpr_at_1}, {"0.05", r.tpr_at_5}, {"0.10", r.tpr_at_10}}},
            {"n_seen", r.n_seen},
            {"n_unseen", r.n_unseen},
            {"n_fallback", r.n_fallback},
            {"roc_points", std::move(pts)}};
}

EvalReport eval_report_from_json(const json& j) {
    EvalReport r;
    r.method = j.at("method").get<std::string>();
    r.params = j.at("params");
    r.auc = j.at("auc").get<double>();
    const auto& t = j.at("tpr_at_fpr");
    r.tpr_at_1 = t.at("0.01").get<double>();
    r.tpr_at_5 = t.at("0.05").get<double>();
    r.tpr_at_10 = t.at("0.10").get<double>();
    r.n_seen = j.at("n_seen").get<std::size_t>();
    r.n_unseen = j.at("n_unseen").get<std::size_t>();
    r.n_fallback = j.value("n_fallback", std::size_t{0});
    for (const auto& p : j.at("roc_points")) r.roc_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return r;
}

void write_roc_csv(std::span<const RocPoint> curve, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "fpr,tpr\n";
    for (const auto& p : curve) out << format_real(p.fpr) << ',' << format_real(p.tpr) << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

std::vector<EvalReport> evaluate_scores(std::span<const MethodScore> scores) {
    struct Group {
        std::string method;
        json params;
        std::vector<LabeledScore> rows;
        std::size_t fallback = 0;
    };
    std::vector<Group> groups;
    std::map<std::string, std::size_t> index;
    for (const auto& s : scores) {
        if (!s.label) throw Error("score row '" + s.seq_id + "' has no label");
        const std::string key = std::string(to_string(s.method)) + '\x1f' + s.params.dump();
        auto [it, inserted] = index.emplace(key, groups.size());
        if (inserted) groups.push_back({std::string(to_string(s.method)), s.params, {}, 0});
        Group& g = groups[it->second];
        g.rows.push_back({s.score, *s.label});
        if (s.fallback.value_or(false)) ++g.fallback;
    }
    std::vector<EvalReport> reports;
    reports.reserve(groups.size());
    for (auto& g : groups) {
        try {
            reports.push_back(evaluate(g.method, g.params, g.rows));
        } catch (const Error& e) {
            throw Error(g.method + " " + g.params.dump() + ": " + e.what());
        }
        reports.back().n_fallback = g.fallback;
    }
    return reports;
}

}  // namespace surp
