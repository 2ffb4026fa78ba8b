#include "surp/corpus.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace surp {

std::vector<LabeledText> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<LabeledText> out;
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
            LabeledText r;
            if (!j.contains("text") || !j["text"].is_string()) throw Error("missing string 'text'");
            r.text = j["text"].get<std::string>();
            if (r.text.empty()) throw Error("'text' is empty");
            if (j.contains("id")) {
                if (j["id"].is_string()) r.id = j["id"].get<std::string>();
                else if (j["id"].is_number_integer()) r.id = std::to_string(j["id"].get<long long>());
                else throw Error("'id' must be a string or integer");
            } else {
                r.id = std::to_string(lineno);
            }
            if (j.contains("label") && !j["label"].is_null()) {
                if (!j["label"].is_number_integer()) throw Error("'label' must be 0 or 1");
                r.label = label_from_int(j["label"].get<long long>());
                if (!r.label) throw Error("'label' must be 0 or 1");
            }
            if (j.contains("meta")) {
                if (!j["meta"].is_object()) throw Error("'meta' must be an object");
                for (const auto& [k, v] : j["meta"].items())
                    r.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
            }
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw ParseError(path.string(), lineno, e.what());
        }
    }
    return out;
}

void save_dataset(std::span<const LabeledText> records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    for (const auto& r : records) {
        json j;
        j["id"] = r.id;
        j["text"] = r.text;
        if (r.label) j["label"] = to_int(*r.label);
        if (!r.meta.empty()) j["meta"] = r.meta;
        out << j.dump() << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

StrippedBook strip_gutenberg_header(std::string_view raw) {
    static const std::regex start_re(R"(^\s*\*{2,}\s*START OF .*$)", std::regex::icase);
    static const std::regex end_re(R"(^\s*\*{2,}\s*END OF .*$)", std::regex::icase);

    StrippedBook r;
    std::size_t body_begin = 0;
    std::size_t body_end = raw.size();
    std::size_t pos = 0;
    while (pos < raw.size()) {
        std::size_t nl = raw.find('\n', pos);
        const std::size_t line_end = nl == std::string_view::npos ? raw.size() : nl;
        const std::size_t next = nl == std::string_view::npos ? raw.size() : nl + 1;
        std::string line(raw.substr(pos, line_end - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!r.found_start && !r.found_end && std::regex_match(line, start_re)) {
            r.found_start = true;
            body_begin = next;
        } else if (!r.found_end && std::regex_match(line, end_re)) {
            r.found_end = true;
            body_end = pos;
            break;
        }
        pos = next;
    }
    r.warning = !(r.found_start && r.found_end);
    r.text = std::string(raw.substr(body_begin, body_end - body_begin));
    return r;
}

std::string_view to_string(BookPart p) {
    switch (p) {
        case BookPart::Head: return "head";
        case BookPart::Middle: return "middle";
        case BookPart::Tail: return "tail";
    }
    return "?";
}

BookPart book_part_from_string(std::string_view s) {
    if (s == "head") return BookPart::Head;
    if (s == "middle") return BookPart::Middle;
    if (s == "tail") return BookPart::Tail;
    throw Error("unknown book part '" + std::string(s) + "' (expected head, middle or tail)");
}

std::vector<std::string> Segmentation::part_texts(BookPart p) const {
    std::vector<std::string> out;
    auto it = parts.find(p);
    if (it == parts.end()) return out;
    for (std::size_t i : it->second) out.push_back(segments.at(i));
    return out;
}

Segmentation segment_book(std::string_view book_text, const SegmentationSpec& spec) {
    if (spec.words_per_segment == 0) throw Error("words per segment must be >= 1");
    const auto words = split_words(book_text);
    const std::size_t m = words.size() / spec.words_per_segment;
    if (m == 0)
        throw Error("book has " + std::to_string(words.size()) + " words, fewer than one segment of " +
                    std::to_string(spec.words_per_segment));
    Segmentation seg;
    seg.segments.reserve(m);
    for (std::size_t s = 0; s < m; ++s) {
        std::string text;
        for (std::size_t w = 0; w < spec.words_per_segment; ++w) {
            if (w) text += ' ';
            text += words[s * spec.words_per_segment + w];
        }
        seg.segments.push_back(std::move(text));
    }
    const std::vector<std::size_t> tail = m >= 2 ? std::vector<std::size_t>{m - 2, m - 1}
                                                 : std::vector<std::size_t>{0};
    for (BookPart p : spec.parts) {
        switch (p) {
            case BookPart::Head: seg.parts[p] = {0}; break;
            case BookPart::Middle: seg.parts[p] = {m / 2}; break;
            case BookPart::Tail: seg.parts[p] = tail; break;
        }
    }
    if (m == 1) seg.warnings.push_back("book has a single segment; head, middle and tail coincide");
    else if (m == 2) seg.warnings.push_back("book has two segments; head is part of tail");
    if (m >= 2 && (m / 2 == m - 2 || m / 2 == m - 1))
        seg.warnings.push_back("middle segment " + std::to_string(m / 2) + " is also a tail segment");
    return seg;
}

std::vector<CatalogEntry> read_catalog(const std::filesystem::path& path) {
    static const std::regex date_re(R"(\d{4}-\d{2}-\d{2}.*)");
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    std::vector<CatalogEntry> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "id,date") throw ParseError(path.string(), 1, "expected header 'id,date'");
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(path.string(), lineno, "expected 'id,date'");
        CatalogEntry e;
        try {
            std::size_t used = 0;
            const std::string id = line.substr(0, comma);
            e.id = std::stoull(id, &used);
            if (used != id.size() || e.id == 0) throw std::invalid_argument(id);
        } catch (const std::exception&) {
            throw ParseError(path.string(), lineno, "book id must be a positive integer");
        }
        e.date = line.substr(comma + 1);
        if (!std::regex_match(e.date, date_re)) throw ParseError(path.string(), lineno, "date must be ISO-8601");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<std::uint64_t> filter_catalog(std::span<const CatalogEntry> catalog, std::string_view cutoff,
                                          bool after) {
    std::vector<std::uint64_t> ids;
    for (const auto& e : catalog) {
        // ISO-8601 dates order lexicographically.
        const bool is_after = std::string_view(e.date).substr(0, cutoff.size()) > cutoff;
        if (is_after == after) ids.push_back(e.id);
    }
    return ids;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace surp
