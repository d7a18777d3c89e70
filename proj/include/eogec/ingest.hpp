#ifndef EOGEC_INGEST_HPP
#define EOGEC_INGEST_HPP

#include "eogec/morph.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eogec::ingest {

struct UnreadableDocument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LanguageGuess {
    std::string tag;       // BCP-47-ish primary tag, "und" when unknown
    double confidence = 0; // 1.0 for declared metadata, heuristic ratio otherwise
};

struct IngestOptions {
    bool fetch = false;             // allow http(s) inputs
    int rate_limit_ms = 500;        // delay between live fetches
    double lang_threshold = 0.6;    // heuristic Esperanto-token ratio
    std::size_t heuristic_tokens = 2000;
    std::vector<std::string> boilerplate_markers = {
        "\\*\\*\\*\\s*(START|END) OF", "Project Gutenberg", "PROJECT GUTENBERG"};
};

/// Declared language metadata near the head wins; otherwise the fraction of
/// tokens passing the Esperanto word-ending check decides.
LanguageGuess detect_language(std::string_view html,
                              const IngestOptions& opts = {},
                              const morph::Lexicon& lexicon = morph::Lexicon::builtin());

/// Text of <p> elements in document order; entities decoded, whitespace
/// collapsed, boilerplate paragraphs dropped. Tolerant of unclosed markup.
std::vector<std::string> extract_paragraphs(std::string_view html,
                                            const IngestOptions& opts = {});

struct BookRecord {
    std::string id;
    std::string title;
    std::string source;
    std::string language;
    bool accepted = false;
    std::size_t paragraph_count = 0;
    std::size_t byte_count = 0;
    std::string error; // nonempty when this book failed
};

struct CorpusManifest {
    std::vector<BookRecord> books;
    std::string created_at;
    std::string toolkit_version;

    std::size_t accepted_count() const;
    std::size_t rejected_count() const;
    std::size_t failed_count() const;
};

std::string manifest_to_json(const CorpusManifest& manifest);
CorpusManifest manifest_from_json(const std::string& json_text);

/// One UTF-8 txt per accepted book (one paragraph per line) plus
/// manifest.json under out_dir. Deterministic for identical inputs;
/// per-book failures go into the manifest instead of aborting.
CorpusManifest build_corpus(const std::vector<std::string>& inputs,
                            const std::string& out_dir,
                            const IngestOptions& opts = {},
                            const morph::Lexicon& lexicon = morph::Lexicon::builtin());

std::string decode_entities(std::string_view s);
std::optional<std::string> extract_title(std::string_view html);

} // namespace eogec::ingest

#endif
