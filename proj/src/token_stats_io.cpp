#include "surp/token_stats_io.hpp"

#include <cstdio>
#include <fstream>

namespace surp {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<double> read_reals(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) throw Error(std::string("missing array '") + key + "'");
    std::vector<double> out;
    out.reserve(j[key].size());
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw Error(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

void append_array(std::string& line, std::span<const double> xs) {
    line += '[';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) line += ',';
        line += format_real(xs[i]);
    }
    line += ']';
}

}  // namespace

TokenStatsFile read_token_stats(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    TokenStatsFile file;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(path.string(), lineno, std::string("malformed JSON: ") + e.what());
        }
        try {
            if (!j.is_object()) throw Error("record is not an object");
            if (j.contains("$schema")) {
                if (lineno != 1 || !file.records.empty()) throw Error("schema header must be the first line");
                if (j["$schema"] != kTokenStatsSchema)
                    throw Error("unsupported schema " + j["$schema"].dump());
                if (j.contains("vocab_size")) {
                    if (!j["vocab_size"].is_number_integer() || j["vocab_size"].get<long long>() < 1)
                        throw Error("vocab_size must be a positive integer");
                    file.vocab_size = j["vocab_size"].get<std::size_t>();
                }
                continue;
            }
            TokenStats ts;
            if (!j.contains("id") || !j["id"].is_string()) throw Error("missing string 'id'");
            ts.seq_id = j["id"].get<std::string>();
            ts.entropy = read_reals(j, "entropy");
            ts.gt_logprob = read_reals(j, "gt_logprob");
            if (j.contains("label") && !j["label"].is_null()) {
                if (!j["label"].is_number_integer()) throw Error("'label' must be 0 or 1");
                ts.label = label_from_int(j["label"].get<long long>());
                if (!ts.label) throw Error("'label' must be 0 or 1");
            }
            ts.validate(file.vocab_size);
            file.records.push_back(std::move(ts));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(path.string(), lineno, e.what());
        }
    }
    return file;
}

void write_token_stats(std::span<const TokenStats> records, const std::filesystem::path& path,
                       std::optional<std::size_t> vocab_size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    if (vocab_size) {
        json header;
        header["$schema"] = kTokenStatsSchema;
        header["vocab_size"] = *vocab_size;
        out << header.dump() << '\n';
    }
    std::string line;
    for (const auto& r : records) {
        line = "{\"id\":" + json(r.seq_id).dump();
        if (r.label) line += ",\"label\":" + std::to_string(to_int(*r.label));
        line += ",\"entropy\":";
        append_array(line, r.entropy);
        line += ",\"gt_logprob\":";
        append_array(line, r.gt_logprob);
        line += "}\n";
        out << line;
    }
    out.flush();
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace surp
