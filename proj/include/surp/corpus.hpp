#pragma once

// Labeled text datasets, book cleanup and segmentation, and the synthetic
// membership benchmark.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surp/core.hpp"
#include "surp/text.hpp"

namespace surp {

struct LabeledText {
    std::string id;
    std::string text;
    std::optional<Label> label;
    std::map<std::string, std::string> meta;

    bool operator==(const LabeledText&) const = default;
};

/// JSONL with keys `id` (string, defaults to the 1-based line number),
/// `text` (required, non-empty string), `label` (0/1, optional) and `meta`
/// (object of strings, optional).
std::vector<LabeledText> load_dataset(const std::filesystem::path& path);
void save_dataset(std::span<const LabeledText> records, const std::filesystem::path& path);

struct StrippedBook {
    std::string text;
    bool found_start = false;
    bool found_end = false;
    /// Set when either marker is missing.
    bool warning = false;
};

/// Removes the header up to and including the start-marker line and the
/// footer from the end-marker line on. Marker lines match (case-insensitive,
/// whole line):
///
///   ^\s*\*{2,}\s*START OF .*$
///   ^\s*\*{2,}\s*END OF .*$
///
/// so asterisk counts and the "THE/THIS PROJECT GUTENBERG EBOOK" wording
/// may vary. Marker text in the middle of a line is never a marker.
StrippedBook strip_gutenberg_header(std::string_view raw);

enum class BookPart { Head, Middle, Tail };
std::string_view to_string(BookPart p);
BookPart book_part_from_string(std::string_view s);

struct SegmentationSpec {
    std::size_t words_per_segment = 1024;
    std::vector<BookPart> parts{BookPart::Head, BookPart::Middle, BookPart::Tail};
};

struct Segmentation {
    /// Every full segment, words joined by a single space.
    std::vector<std::string> segments;
    /// Segment indices per requested part: Head = {0}, Middle = {M/2},
    /// Tail = {M-2, M-1} (or {0} when M == 1).
    std::map<BookPart, std::vector<std::size_t>> parts;
    std::vector<std::string> warnings;

    std::vector<std::string> part_texts(BookPart p) const;
};

/// Splits on Unicode whitespace and groups words into consecutive full
/// segments; the trailing partial segment is dropped. Throws when the book
/// has no full segment.
Segmentation segment_book(std::string_view book_text, const SegmentationSpec& spec);

struct CatalogEntry {
    std::uint64_t id;
    std::string date;  // ISO-8601, YYYY-MM-DD
};

/// CSV with header `id,date`.
std::vector<CatalogEntry> read_catalog(const std::filesystem::path& path);
/// Entries strictly after (or on/before) the cutoff date.
std::vector<std::uint64_t> filter_catalog(std::span<const CatalogEntry> catalog, std::string_view cutoff,
                                          bool after);

// ---------------------------------------------------------------------------
// Synthetic benchmark

struct SyntheticConfig {
    std::size_t n_seen = 400;
    std::size_t n_unseen = 400;
    std::size_t template_chars = 128;
    std::size_t noise_chars = 128;
    /// Held-out phrase variants substituted into each unseen template.
    std::size_t unseen_mutations = 1;
    /// Characters of background noise text added to the training corpus.
    std::size_t background_noise_chars = 120000;
};

struct SyntheticBenchmark {
    std::vector<std::string> train_corpus;
    std::vector<LabeledText> seen;
    std::vector<LabeledText> unseen;
    /// The template region of each seen / unseen document, in order.
    std::vector<std::string> seen_templates;
    std::vector<std::string> unseen_templates;
};

/// Characters used by the template grammar (lowercase letters, space and a
/// little punctuation) and by the noise region (digits and uppercase).
std::u32string synthetic_template_alphabet();
std::u32string synthetic_noise_alphabet();
/// Union of both alphabets plus lowercased noise characters, in a fixed order.
std::u32string synthetic_vocabulary();

/// Each document is a template region drawn from a phrase grammar followed
/// by a region of uniform random noise characters. Seen templates are part
/// of the training corpus; unseen templates swap in held-out phrase variants
/// and never occur there. The training corpus also holds independent noise
/// text from the same distribution, so noise positions get high entropy
/// under the model for both classes.
SyntheticBenchmark build_synthetic_benchmark(std::uint64_t seed, const SyntheticConfig& config = {});

/// FNV-1a 64 of a string; used for hash-based splits.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace surp
