#ifndef EOGEC_CLASSIFY_HPP
#define EOGEC_CLASSIFY_HPP

#include "eogec/align.hpp"
#include "eogec/morph.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eogec::classify {

enum class Operation { Missing, Unnecessary, Replace };

enum class Category {
    Adj,
    Adv,
    Conj,
    Det,
    Noun,
    Prep,
    Pron,
    Punct,
    Verb,
    Table,
    Morph,
    Orth,
    Spell,
    WordOrder,
    Other
};

enum class Subtype { None, Case, Num, Fix, Form, Sva, Tense };

struct ErrorCode {
    Operation op = Operation::Replace;
    Category category = Category::Other;
    Subtype subtype = Subtype::None;

    bool is_legal() const;
    std::string str() const; // "R:VERB:SVA"
    static std::optional<ErrorCode> parse(std::string_view s);

    friend bool operator==(const ErrorCode&, const ErrorCode&) = default;
};

struct IllegalCombination : std::logic_error {
    using std::logic_error::logic_error;
};
struct EmptyDataset : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Category category_of(morph::Pos pos);

struct ClassifyContext {
    bool subject_precedes = false; // overt nominative subject before the edit
    const morph::Lexicon* lexicon = &morph::Lexicon::builtin();
    double spell_threshold = 0.5;  // normalized char distance bound for R:SPELL
    double other_overlap = 0.5;    // below this token overlap, R:OTHER
};

/// Deterministic rule cascade from edit + analyses to a legal error code.
ErrorCode classify_edit(const align::Edit& edit,
                        const std::vector<morph::MorphAnalysis>& src_an,
                        const std::vector<morph::MorphAnalysis>& tgt_an,
                        const ClassifyContext& ctx = {});

struct Annotation {
    align::Edit edit;
    ErrorCode code;
};

enum class Provenance { TyceTextbook, Pmeg, UserWriting, NiveloAlNivelo, Other };
enum class Quality { Good, Acceptable, Poor };

const char* to_string(Provenance p);
const char* to_string(Quality q);
std::optional<Provenance> parse_provenance(std::string_view s);

struct AnnotatedSentence {
    std::vector<text::Token> source;
    std::vector<text::Token> target;
    std::vector<Annotation> annotations; // Replace first, then U, then M
    Provenance provenance = Provenance::Other;
    std::optional<Quality> quality;
};

AnnotatedSentence annotate(std::string_view source, std::string_view target,
                           const morph::Lexicon& lexicon = morph::Lexicon::builtin());

// --- serialization -------------------------------------------------------

/// Canonical M2-style record:
///   S <source tokens>
///   A <start> <end>|||<CODE>|||<correction>|||REQUIRED|||-NONE-|||0
void write_m2(std::ostream& out, const std::vector<AnnotatedSentence>& sentences);
std::vector<AnnotatedSentence> read_m2(std::istream& in);

/// Compact paper-style record: S/T lines plus "<i> <CODE>" pairs
/// (two indices for R:WO and R:ORTH).
void write_paper_style(std::ostream& out,
                       const std::vector<AnnotatedSentence>& sentences);
std::vector<AnnotatedSentence> read_paper_style(
    std::istream& in, const morph::Lexicon& lexicon = morph::Lexicon::builtin());

// --- dataset statistics ---------------------------------------------------

struct DatasetReport {
    double mean_source_length = 0.0; // word + number tokens
    double mean_target_length = 0.0;
    std::vector<std::pair<std::string, std::size_t>> provenance_histogram;
    std::vector<std::pair<std::string, std::size_t>> code_histogram; // by count desc
    double replace_share = 0.0;
    double missing_share = 0.0;
    double unnecessary_share = 0.0;
    std::vector<std::pair<std::string, std::size_t>> pos_category_histogram;
};

DatasetReport dataset_report(const std::vector<AnnotatedSentence>& sentences);
void write_report_csv(std::ostream& out, const DatasetReport& report);

} // namespace eogec::classify

#endif
