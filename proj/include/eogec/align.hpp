#ifndef EOGEC_ALIGN_HPP
#define EOGEC_ALIGN_HPP

#include "eogec/morph.hpp"
#include "eogec/text.hpp"

#include <stdexcept>
#include <vector>

namespace eogec::align {

enum class EditOp { Missing, Unnecessary, Replace, Transpose, Merge };

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0; // half-open token interval
    std::size_t size() const { return end - begin; }
    bool empty() const { return begin == end; }
};

struct Edit {
    Span src;
    Span tgt;
    EditOp op = EditOp::Replace;
    std::vector<text::Token> src_tokens;
    std::vector<text::Token> tgt_tokens;
};

struct SpanOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct OverlappingEdits : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Alignment cost model. Substitution is graded by linguistic similarity so
/// that edits land on the tokens a human annotator would pick.
struct AlignCosts {
    double insert_cost = 1.0;
    double delete_cost = 1.0;
    double sub_same_root = 0.4;
    double sub_similar = 0.6;       // normalized char edit distance <= similar_threshold
    double sub_other = 1.1;
    double similar_threshold = 0.5;
    double transpose = 0.9;
    double merge = 0.7;
    std::size_t max_merge = 4;
};

double substitution_cost(const text::Token& src, const text::Token& tgt,
                         const morph::Lexicon& lexicon, const AlignCosts& costs);

/// Levenshtein distance over code points, normalized by the longer length.
double normalized_char_distance(std::string_view a, std::string_view b);

struct EditScript {
    std::vector<Edit> edits;
    double cost = 0.0;
};

EditScript extract_edit_script(const std::vector<text::Token>& src,
                               const std::vector<text::Token>& tgt,
                               const morph::Lexicon& lexicon = morph::Lexicon::builtin(),
                               const AlignCosts& costs = {});

std::vector<Edit> extract_edits(const std::vector<text::Token>& src,
                                const std::vector<text::Token>& tgt,
                                const morph::Lexicon& lexicon = morph::Lexicon::builtin(),
                                const AlignCosts& costs = {});

/// Deterministic reconstruction of the target sequence. Edits must be ordered
/// by source span and non-overlapping.
std::vector<text::Token> apply_edits(const std::vector<text::Token>& src,
                                     const std::vector<Edit>& edits);

} // namespace eogec::align

#endif
