#ifndef EOGEC_SCORE_HPP
#define EOGEC_SCORE_HPP

#include "eogec/classify.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace eogec::score {

struct SourceMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// (1+b^2)PR / (b^2 P + R); 0 when the denominator vanishes.
double fbeta(double precision, double recall, double beta);

struct Counts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    Counts& operator+=(const Counts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
};

struct ScoreReport {
    Counts counts;
    std::map<std::string, Counts> per_category;

    // Vacuous precision/recall are 1.0: no proposals means nothing wrong.
    double precision() const;
    double recall() const;
    double f_half() const;
};

enum class ErrantMode { Span, SpanAndType };

/// Span(+type) matching of hypothesis edits against gold edits; sentences
/// must be aligned 1:1 on identical sources.
ScoreReport errant_score(const std::vector<classify::AnnotatedSentence>& hyp,
                         const std::vector<classify::AnnotatedSentence>& gold,
                         ErrantMode mode = ErrantMode::Span);

struct M2Options {
    std::size_t max_gold_span = 4; // longer gold phrases are unmatched
};

/// Lattice-based M2 matching for one sentence: gold edits are zero-penalty
/// transitions; the hypothesis edit set maximizing matches (ties: fewest
/// edits) is selected.
Counts m2_score(const std::vector<text::Token>& src,
                const std::vector<text::Token>& hyp,
                const std::vector<classify::Annotation>& gold_edits,
                const M2Options& opts = {});

ScoreReport m2_score_corpus(const std::vector<std::vector<text::Token>>& srcs,
                            const std::vector<std::vector<text::Token>>& hyps,
                            const std::vector<classify::AnnotatedSentence>& gold,
                            const M2Options& opts = {});

struct MethodScores {
    std::string method;
    ScoreReport errant;
    ScoreReport m2;
};

/// CSV with per-method P/R/F0.5 columns for both scorers, values x100.
void write_scores_csv(std::ostream& out, const std::vector<MethodScores>& rows);
void write_score_report(std::ostream& out, const std::string& name,
                        const ScoreReport& report);

} // namespace eogec::score

#endif
