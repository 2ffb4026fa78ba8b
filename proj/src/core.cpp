#include "surp/core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace surp {

ParseError::ParseError(std::string path, std::size_t line, const std::string& what)
    : Error(path + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
      path_(std::move(path)),
      line_(line) {}

std::optional<Label> label_from_int(long long v) {
    if (v == 0) return Label::Unseen;
    if (v == 1) return Label::Seen;
    return std::nullopt;
}

Label flip(Label l) { return l == Label::Seen ? Label::Unseen : Label::Seen; }

void TokenStats::validate(std::optional<std::size_t> vocab_size) const {
    if (entropy.size() != gt_logprob.size()) {
        std::ostringstream os;
        os << "length mismatch: entropy has " << entropy.size() << " entries, gt_logprob has "
           << gt_logprob.size();
        throw Error(os.str());
    }
    if (entropy.empty()) throw Error("empty token arrays");
    const double upper = vocab_size ? std::log(static_cast<double>(*vocab_size)) + 1e-9
                                    : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < entropy.size(); ++i) {
        const double e = entropy[i];
        const double l = gt_logprob[i];
        if (!std::isfinite(e) || e < 0.0)
            throw Error("entropy[" + std::to_string(i) + "] is negative or not finite");
        if (e > upper)
            throw Error("entropy[" + std::to_string(i) + "] exceeds ln(vocab_size)");
        if (!std::isfinite(l) || l > 0.0)
            throw Error("gt_logprob[" + std::to_string(i) + "] is positive or not finite");
    }
}

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error("empty probability vector");
    double sum = 0.0;
    for (double p : values_) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw Error("probability entry is negative or not finite");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) throw Error("probabilities do not sum to 1");
}

double entropy_of(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log(p);
    return h < 0.0 ? 0.0 : h;
}

double entropy_of(const ProbVector& dist) { return entropy_of(dist.values()); }

namespace {
constexpr std::array<Method, 7> kMethods{Method::Surp,      Method::Ppl,  Method::Ref,
                                         Method::Lowercase, Method::Zlib, Method::Neighbor,
                                         Method::MinK};
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::Surp: return "surp";
        case Method::Ppl: return "ppl";
        case Method::Ref: return "ref";
        case Method::Lowercase: return "lowercase";
        case Method::Zlib: return "zlib";
        case Method::Neighbor: return "neighbor";
        case Method::MinK: return "mink";
    }
    return "?";
}

Method method_from_string(std::string_view s) {
    for (Method m : kMethods)
        if (to_string(m) == s) return m;
    throw Error("unknown method id '" + std::string(s) + "'");
}

std::span<const Method> all_methods() { return kMethods; }

json to_json(const MethodScore& s) {
    json j;
    j["id"] = s.seq_id;
    j["method"] = std::string(to_string(s.method));
    j["params"] = s.params;
    j["score"] = s.score;
    if (s.fallback) j["fallback"] = *s.fallback;
    if (s.label) j["label"] = to_int(*s.label);
    return j;
}

MethodScore method_score_from_json(const json& j) {
    MethodScore s;
    if (!j.is_object()) throw Error("score record is not an object");
    if (!j.contains("id") || !j["id"].is_string()) throw Error("missing string 'id'");
    if (!j.contains("method") || !j["method"].is_string()) throw Error("missing string 'method'");
    if (!j.contains("score") || !j["score"].is_number()) throw Error("missing numeric 'score'");
    s.seq_id = j["id"].get<std::string>();
    s.method = method_from_string(j["method"].get<std::string>());
    s.score = j["score"].get<double>();
    if (!std::isfinite(s.score)) throw Error("score is not finite");
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw Error("'params' is not an object");
        s.params = j["params"];
    }
    if (j.contains("fallback")) s.fallback = j["fallback"].get<bool>();
    if (j.contains("label") && !j["label"].is_null()) {
        if (!j["label"].is_number_integer()) throw Error("'label' must be 0 or 1");
        s.label = label_from_int(j["label"].get<long long>());
        if (!s.label) throw Error("'label' must be 0 or 1");
    }
    return s;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw Error("mean of empty range");
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace surp
