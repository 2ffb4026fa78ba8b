#include <algorithm>
#include <array>
#include <cstdio>

#include "surp/corpus.hpp"
#include "surp/rng.hpp"

namespace surp {

namespace {

constexpr std::string_view kTemplateAlphabet = "abcdefghijklmnopqrstuvwxyz ,.";
constexpr std::string_view kNoiseAlphabet = "0123456789ABCDEF";

// Eight slots with four interchangeable phrases each. A template walks the
// slots cyclically, separated by spaces, until it reaches the target length.
constexpr std::array<std::array<std::string_view, 4>, 8> kSlots{{
    {"the old keeper", "a quiet sailor", "my elder cousin", "the young baker"},
    {"walked slowly", "rowed quietly", "hurried home", "wandered north"},
    {"past the mill", "along the river", "across the bridge", "through the field"},
    {"before dawn,", "after supper,", "during the storm,", "at first light,"},
    {"carrying bread", "holding a lamp", "humming a tune", "counting coins"},
    {"for his mother", "for the village", "for the harbor", "for her friend"},
    {"and never spoke", "and rarely smiled", "and always waved", "and often sang"},
    {"of the winter.", "of the fire.", "of the sea.", "of the road."},
}};

struct Placed {
    std::size_t slot;
    std::size_t option;
    std::size_t offset;  // character offset of the phrase in the template
};

// Draws slot options until the text is at least `length` characters long.
std::vector<Placed> draw_layout(Lcg64& rng, std::size_t length) {
    std::vector<Placed> out;
    std::size_t pos = 0;
    // `pos` runs one past the trailing separator, so the text is pos - 1 long.
    for (std::size_t s = 0; pos < length + 1; ++s) {
        const std::size_t slot = s % kSlots.size();
        const std::size_t opt = rng.below(kSlots[slot].size());
        out.push_back({slot, opt, pos});
        pos += kSlots[slot][opt].size() + 1;
    }
    return out;
}

std::string render(const std::vector<Placed>& layout, std::size_t length,
                   const std::vector<std::vector<std::string>>& phrases,
                   const std::vector<bool>& use_variant,
                   const std::vector<std::vector<std::string>>& variants) {
    std::string text;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (i) text += ' ';
        const auto& p = layout[i];
        text += use_variant[i] ? variants[p.slot][p.option] : phrases[p.slot][p.option];
    }
    text.resize(length);
    return text;
}

// Held-out variant: one letter at least three characters into the phrase is
// replaced by a different letter.
std::string make_variant(std::string_view phrase, Lcg64& rng) {
    std::vector<std::size_t> letters;
    for (std::size_t i = 3; i < phrase.size(); ++i)
        if (phrase[i] >= 'a' && phrase[i] <= 'z') letters.push_back(i);
    std::string v(phrase);
    const std::size_t at = letters[rng.below(letters.size())];
    char c;
    do {
        c = static_cast<char>('a' + rng.below(26));
    } while (c == v[at]);
    v[at] = c;
    return v;
}

std::string noise(Lcg64& rng, std::size_t n) {
    std::string s(n, ' ');
    for (auto& c : s) c = kNoiseAlphabet[rng.below(kNoiseAlphabet.size())];
    return s;
}

}  // namespace

std::u32string synthetic_template_alphabet() { return decode_utf8(kTemplateAlphabet); }
std::u32string synthetic_noise_alphabet() { return decode_utf8(kNoiseAlphabet); }

std::u32string synthetic_vocabulary() {
    std::u32string v = synthetic_template_alphabet() + synthetic_noise_alphabet();
    for (char32_t c : synthetic_noise_alphabet()) {
        const char32_t lo = simple_lower(c);
        if (v.find(lo) == std::u32string::npos) v.push_back(lo);
    }
    return v;
}

SyntheticBenchmark build_synthetic_benchmark(std::uint64_t seed, const SyntheticConfig& cfg) {
    if (cfg.n_seen == 0 || cfg.n_unseen == 0 || cfg.template_chars == 0 || cfg.noise_chars == 0)
        throw Error("synthetic benchmark sizes must be >= 1");

    std::vector<std::vector<std::string>> phrases(kSlots.size());
    std::vector<std::vector<std::string>> variants(kSlots.size());
    Lcg64 variant_rng(derive_seed(seed, 0));
    for (std::size_t s = 0; s < kSlots.size(); ++s) {
        for (auto p : kSlots[s]) {
            phrases[s].emplace_back(p);
            variants[s].push_back(make_variant(p, variant_rng));
        }
    }

    SyntheticBenchmark b;
    Lcg64 seen_rng(derive_seed(seed, 1));
    Lcg64 unseen_rng(derive_seed(seed, 2));
    Lcg64 noise_rng(derive_seed(seed, 3));
    Lcg64 background_rng(derive_seed(seed, 4));

    for (std::size_t i = 0; i < cfg.n_seen; ++i) {
        auto layout = draw_layout(seen_rng, cfg.template_chars);
        b.seen_templates.push_back(
            render(layout, cfg.template_chars, phrases, std::vector<bool>(layout.size(), false), variants));
    }
    for (std::size_t i = 0; i < cfg.n_unseen; ++i) {
        auto layout = draw_layout(unseen_rng, cfg.template_chars);
        // Only phrases that end inside the template can carry a variant.
        std::vector<std::size_t> eligible;
        for (std::size_t j = 0; j < layout.size(); ++j) {
            const auto& p = layout[j];
            if (p.offset + phrases[p.slot][p.option].size() <= cfg.template_chars) eligible.push_back(j);
        }
        std::vector<bool> use_variant(layout.size(), false);
        const std::size_t want = std::min(std::max<std::size_t>(cfg.unseen_mutations, 1), eligible.size());
        for (std::size_t m = 0; m < want; ++m) {
            const std::size_t pick = m + unseen_rng.below(eligible.size() - m);
            std::swap(eligible[m], eligible[pick]);
            use_variant[eligible[m]] = true;
        }
        b.unseen_templates.push_back(render(layout, cfg.template_chars, phrases, use_variant, variants));
    }

    auto make_doc = [&](const std::string& tmpl, const char* prefix, std::size_t i, Label label) {
        LabeledText t;
        char id[32];
        std::snprintf(id, sizeof id, "%s-%04zu", prefix, i);
        t.id = id;
        t.text = tmpl + noise(noise_rng, cfg.noise_chars);
        t.label = label;
        t.meta["source"] = "synthetic";
        return t;
    };
    for (std::size_t i = 0; i < cfg.n_seen; ++i)
        b.seen.push_back(make_doc(b.seen_templates[i], "seen", i, Label::Seen));
    for (std::size_t i = 0; i < cfg.n_unseen; ++i)
        b.unseen.push_back(make_doc(b.unseen_templates[i], "unseen", i, Label::Unseen));

    b.train_corpus = b.seen_templates;
    constexpr std::size_t kBackgroundDoc = 1000;
    for (std::size_t left = cfg.background_noise_chars; left > 0;) {
        const std::size_t n = std::min(left, kBackgroundDoc);
        b.train_corpus.push_back(noise(background_rng, n));
        left -= n;
    }
    return b;
}

}  // namespace surp
