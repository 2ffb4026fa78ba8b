#include "surp/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "surp/rng.hpp"
#include "surp/text.hpp"

namespace surp {

void TrainConfig::validate() const {
    if (order < 1) throw Error("n-gram order must be >= 1");
    if (!(smoothing_lambda > 0.0) || !std::isfinite(smoothing_lambda))
        throw Error("smoothing lambda must be a positive finite number");
    if (fixed_vocab) {
        std::set<char32_t> seen;
        for (char32_t c : *fixed_vocab)
            if (!seen.insert(c).second) throw Error("duplicate symbol in fixed vocabulary");
        if (fixed_vocab->empty()) throw Error("fixed vocabulary is empty");
    }
}

OutOfVocabulary::OutOfVocabulary(char32_t symbol, std::size_t position)
    : Error("out-of-vocabulary token U+" +
            [&] {
                std::ostringstream os;
                os << std::hex << std::uppercase << static_cast<std::uint32_t>(symbol);
                return os.str();
            }() + " at position " + std::to_string(position)),
      symbol_(symbol),
      position_(position) {}

std::size_t NGramModel::KeyHash::operator()(const std::vector<TokenId>& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (TokenId t : k) {
        h ^= t;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

void NGramModel::rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < symbols_.size(); ++i) index_.emplace(symbols_[i], static_cast<TokenId>(i + 1));
}

NGramModel NGramModel::train(std::span<const std::u32string> corpus, const TrainConfig& config) {
    config.validate();
    if (corpus.empty()) throw Error("empty training corpus");
    NGramModel m;
    m.order_ = config.order;
    m.lambda_ = config.smoothing_lambda;
    if (config.fixed_vocab) {
        m.symbols_.assign(config.fixed_vocab->begin(), config.fixed_vocab->end());
    } else {
        std::set<char32_t> all;
        for (const auto& doc : corpus) all.insert(doc.begin(), doc.end());
        m.symbols_.assign(all.begin(), all.end());
    }
    m.rebuild_index();

    const std::size_t ctx_len = m.context_length();
    const std::size_t vocab = m.vocab_size();
    bool any_token = false;
    std::vector<TokenId> padded;
    for (const auto& doc : corpus) {
        padded.assign(ctx_len, kBos);
        padded.reserve(ctx_len + doc.size());
        for (std::size_t i = 0; i < doc.size(); ++i) {
            auto id = m.find(doc[i]);
            if (!id) throw OutOfVocabulary(doc[i], i);
            padded.push_back(*id);
        }
        for (std::size_t i = ctx_len; i < padded.size(); ++i) {
            std::vector<TokenId> key(padded.begin() + static_cast<std::ptrdiff_t>(i - ctx_len),
                                     padded.begin() + static_cast<std::ptrdiff_t>(i));
            Row& row = m.table_[std::move(key)];
            if (row.counts.empty()) row.counts.assign(vocab, 0);
            ++row.counts[padded[i]];
            ++row.total;
            ++m.total_count_;
            any_token = true;
        }
    }
    if (!any_token) throw Error("training corpus contains no tokens");
    return m;
}

char32_t NGramModel::symbol(TokenId id) const {
    if (id == kBos || id >= vocab_size()) throw Error("token id has no symbol: " + std::to_string(id));
    return symbols_[id - 1];
}

std::optional<TokenId> NGramModel::find(char32_t symbol) const {
    auto it = index_.find(symbol);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<TokenId> NGramModel::encode(std::u32string_view text) const {
    std::vector<TokenId> out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto id = find(text[i]);
        if (!id) throw OutOfVocabulary(text[i], i);
        out.push_back(*id);
    }
    return out;
}

std::vector<TokenId> NGramModel::encode_utf8(std::string_view text) const {
    return encode(decode_utf8(text));
}

std::u32string NGramModel::decode(std::span<const TokenId> tokens) const {
    std::u32string out;
    out.reserve(tokens.size());
    for (TokenId t : tokens) out.push_back(symbol(t));
    return out;
}

void NGramModel::check_id(TokenId id) const {
    if (id >= vocab_size()) throw Error("token id out of range: " + std::to_string(id));
}

std::vector<TokenId> NGramModel::key_of(std::span<const TokenId> context) const {
    const std::size_t n = context_length();
    std::vector<TokenId> key(n, kBos);
    const std::size_t take = std::min(n, context.size());
    for (std::size_t i = 0; i < take; ++i) {
        TokenId t = context[context.size() - take + i];
        check_id(t);
        key[n - take + i] = t;
    }
    return key;
}

void NGramModel::fill_distribution(std::span<const TokenId> context, std::span<double> out) const {
    if (out.size() != vocab_size()) throw Error("distribution buffer has wrong size");
    auto it = table_.find(key_of(context));
    const double v = static_cast<double>(vocab_size());
    if (it == table_.end()) {
        std::fill(out.begin(), out.end(), 1.0 / v);
        return;
    }
    const Row& row = it->second;
    const double denom = static_cast<double>(row.total) + lambda_ * v;
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = (static_cast<double>(row.counts[j]) + lambda_) / denom;
}

ProbVector NGramModel::next_distribution(std::span<const TokenId> context) const {
    std::vector<double> p(vocab_size());
    fill_distribution(context, p);
    return ProbVector(std::move(p));
}

std::uint64_t NGramModel::count(std::span<const TokenId> context, TokenId next) const {
    check_id(next);
    auto it = table_.find(key_of(context));
    return it == table_.end() ? 0 : it->second.counts[next];
}

std::uint64_t NGramModel::context_total(std::span<const TokenId> context) const {
    auto it = table_.find(key_of(context));
    return it == table_.end() ? 0 : it->second.total;
}

// {"format":"surp-ngram/v1","order":n,"lambda":x,"vocab":["a",...],
//  "counts":[[[ctx ids...], next id, count], ...]}
// Vocabulary entries are listed in id order starting at 1 (BOS is implicit
// id 0); count entries are sorted by (context, next).
json NGramModel::to_json() const {
    json j;
    j["format"] = kModelFormat;
    j["order"] = order_;
    j["lambda"] = lambda_;
    json vocab = json::array();
    for (char32_t c : symbols_) vocab.push_back(surp::encode_utf8(c));
    j["vocab"] = std::move(vocab);

    std::vector<const std::vector<TokenId>*> keys;
    keys.reserve(table_.size());
    for (const auto& [k, _] : table_) keys.push_back(&k);
    std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return *a < *b; });
    json counts = json::array();
    for (const auto* k : keys) {
        const Row& row = table_.at(*k);
        for (std::size_t t = 0; t < row.counts.size(); ++t)
            if (row.counts[t]) counts.push_back(json::array({*k, t, row.counts[t]}));
    }
    j["counts"] = std::move(counts);
    return j;
}

NGramModel NGramModel::from_json(const json& j) {
    try {
        if (!j.is_object() || j.value("format", "") != kModelFormat)
            throw Error(std::string("not a ") + kModelFormat + " document");
        NGramModel m;
        m.order_ = j.at("order").get<int>();
        m.lambda_ = j.at("lambda").get<double>();
        TrainConfig{m.order_, m.lambda_, std::nullopt}.validate();
        std::set<char32_t> seen;
        for (const auto& s : j.at("vocab")) {
            std::u32string cp = decode_utf8(s.get<std::string>());
            if (cp.size() != 1) throw Error("vocabulary entry must be a single code point");
            if (!seen.insert(cp[0]).second) throw Error("duplicate vocabulary entry");
            m.symbols_.push_back(cp[0]);
        }
        m.rebuild_index();
        const std::size_t vocab = m.vocab_size();
        for (const auto& e : j.at("counts")) {
            if (!e.is_array() || e.size() != 3) throw Error("count entry must be [context, next, count]");
            auto key = e[0].get<std::vector<TokenId>>();
            auto next = e[1].get<TokenId>();
            auto c = e[2].get<std::uint64_t>();
            if (key.size() != m.context_length()) throw Error("context length does not match order");
            for (TokenId t : key)
                if (t >= vocab) throw Error("context id out of range");
            if (next == kBos || next >= vocab) throw Error("next-token id out of range");
            if (c == 0) throw Error("zero count entry");
            Row& row = m.table_[std::move(key)];
            if (row.counts.empty()) row.counts.assign(vocab, 0);
            if (row.counts[next]) throw Error("duplicate count entry");
            row.counts[next] = c;
            row.total += c;
            m.total_count_ += c;
        }
        return m;
    } catch (const json::exception& e) {
        throw Error(std::string("invalid model document: ") + e.what());
    }
}

void NGramModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << to_json().dump() << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

NGramModel NGramModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), 0, std::string("malformed model JSON: ") + e.what());
    }
    return from_json(j);
}

bool NGramModel::operator==(const NGramModel& o) const {
    if (order_ != o.order_ || lambda_ != o.lambda_ || symbols_ != o.symbols_ ||
        total_count_ != o.total_count_ || table_.size() != o.table_.size())
        return false;
    for (const auto& [k, row] : table_) {
        auto it = o.table_.find(k);
        if (it == o.table_.end() || it->second.total != row.total || it->second.counts != row.counts)
            return false;
    }
    return true;
}

TokenStats score_text(const NGramModel& model, std::span<const TokenId> tokens, std::string seq_id) {
    if (tokens.empty()) throw Error("cannot score an empty token sequence");
    const std::size_t ctx = model.context_length();
    const std::size_t v = model.vocab_size();
    std::vector<TokenId> padded(ctx, kBos);
    padded.insert(padded.end(), tokens.begin(), tokens.end());
    TokenStats ts;
    ts.seq_id = std::move(seq_id);
    ts.entropy.resize(tokens.size());
    ts.gt_logprob.resize(tokens.size());
    std::vector<double> dist(v);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const TokenId target = tokens[i];
        if (target == kBos || target >= v)
            throw Error("token id " + std::to_string(target) + " at position " + std::to_string(i) +
                        " is not a scorable vocabulary entry");
        model.fill_distribution(std::span<const TokenId>(padded).subspan(i, ctx), dist);
        ts.entropy[i] = entropy_of(dist);
        ts.gt_logprob[i] = std::log(dist[target]);
    }
    return ts;
}

std::vector<TokenId> generate(const NGramModel& model, std::size_t length, std::uint64_t seed) {
    const std::size_t ctx = model.context_length();
    const std::size_t v = model.vocab_size();
    Lcg64 rng(seed);
    std::vector<TokenId> seq(ctx, kBos);
    seq.reserve(ctx + length);
    std::vector<double> dist(v);
    for (std::size_t n = 0; n < length; ++n) {
        model.fill_distribution(std::span<const TokenId>(seq).subspan(seq.size() - ctx, ctx), dist);
        double mass = 0.0;
        for (std::size_t j = 1; j < v; ++j) mass += dist[j];
        const double u = rng.uniform() * mass;
        double cum = 0.0;
        auto pick = static_cast<TokenId>(v - 1);
        for (std::size_t j = 1; j < v; ++j) {
            cum += dist[j];
            if (u < cum) {
                pick = static_cast<TokenId>(j);
                break;
            }
        }
        seq.push_back(pick);
    }
    return {seq.begin() + static_cast<std::ptrdiff_t>(ctx), seq.end()};
}

}  // namespace surp
