#pragma once

// Domain types shared by every module: per-token statistics, next-token
// distributions, labels and method scores.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace surp {

using json = nlohmann::json;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed input file. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
public:
    ParseError(std::string path, std::size_t line, const std::string& what);
    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

enum class Label : int { Unseen = 0, Seen = 1 };

std::optional<Label> label_from_int(long long v);
inline int to_int(Label l) { return static_cast<int>(l); }
Label flip(Label l);

/// Per-token entropy (nats) and ground-truth log-probability for one
/// sequence. Both arrays have the same length N >= 1.
struct TokenStats {
    std::string seq_id;
    std::vector<double> entropy;
    std::vector<double> gt_logprob;
    std::optional<Label> label;

    std::size_t size() const noexcept { return gt_logprob.size(); }

    /// Throws Error on any invariant violation. The entropy upper bound
    /// ln(vocab_size) is only enforced when vocab_size is given.
    void validate(std::optional<std::size_t> vocab_size = std::nullopt) const;

    bool operator==(const TokenStats&) const = default;
};

/// A validated probability distribution over a vocabulary.
class ProbVector {
public:
    static constexpr double kSumTolerance = 1e-9;

    explicit ProbVector(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Shannon entropy in nats, 0 ln 0 := 0. Summation runs in index order.
double entropy_of(const ProbVector& dist);
double entropy_of(std::span<const double> probs);

enum class Method { Surp, Ppl, Ref, Lowercase, Zlib, Neighbor, MinK };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);
std::span<const Method> all_methods();

/// Score of one sequence under one method. Larger means "more likely Seen"
/// for every method.
struct MethodScore {
    std::string seq_id;
    Method method = Method::Ppl;
    json params = json::object();
    double score = 0.0;
    std::optional<bool> fallback;
    std::optional<Label> label;
};

json to_json(const MethodScore& s);
MethodScore method_score_from_json(const json& j);

/// Arithmetic mean summed in index order.
double mean(std::span<const double> xs);

}  // namespace surp
