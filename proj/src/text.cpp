#include "surp/text.hpp"

#include <cwctype>
#include <locale>
#include <optional>

#include "surp/core.hpp"

namespace surp {

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    auto bad = [&](std::size_t at) {
        throw Error("invalid UTF-8 at byte offset " + std::to_string(at));
    };
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        char32_t cp;
        std::size_t len;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            bad(i);
        }
        if (i + len > s.size()) bad(i);
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) bad(i);
            cp = (cp << 6) | (b & 0x3F);
        }
        // Reject overlong forms, surrogates and out-of-range values.
        static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) bad(i);
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(char32_t c) {
    std::string out;
    if (c < 0x80) {
        out += static_cast<char>(c);
    } else if (c < 0x800) {
        out += static_cast<char>(0xC0 | (c >> 6));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
        out += static_cast<char>(0xE0 | (c >> 12));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (c >> 18));
        out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    }
    return out;
}

std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) out += encode_utf8(c);
    return out;
}

bool is_unicode_space(char32_t c) {
    switch (c) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return c >= 0x2000 && c <= 0x200A;
    }
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::u32string cur;
    for (char32_t c : decode_utf8(text)) {
        if (is_unicode_space(c)) {
            if (!cur.empty()) {
                words.push_back(encode_utf8(cur));
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) words.push_back(encode_utf8(cur));
    return words;
}

namespace {

std::optional<std::locale> utf8_locale() {
    for (const char* name : {"C.UTF-8", "C.utf8", "en_US.UTF-8"}) {
        try {
            return std::locale(name);
        } catch (const std::runtime_error&) {
        }
    }
    return std::nullopt;
}

const std::ctype<wchar_t>* utf8_ctype() {
    static const std::optional<std::locale> loc = utf8_locale();
    return loc ? &std::use_facet<std::ctype<wchar_t>>(*loc) : nullptr;
}

}  // namespace

char32_t simple_lower(char32_t c) {
    if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
    static_assert(sizeof(wchar_t) == 4, "wchar_t must hold a code point");
    if (const auto* f = utf8_ctype()) return static_cast<char32_t>(f->tolower(static_cast<wchar_t>(c)));
    // Latin-1 fallback when no UTF-8 locale is installed.
    if ((c >= 0xC0 && c <= 0xDE) && c != 0xD7) return c + 32;
    return c;
}

std::string lowercase_text(std::string_view text) {
    std::u32string cps = decode_utf8(text);
    for (auto& c : cps) c = simple_lower(c);
    return encode_utf8(cps);
}

}  // namespace surp
