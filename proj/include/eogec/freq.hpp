#ifndef EOGEC_FREQ_HPP
#define EOGEC_FREQ_HPP

#include "eogec/morph.hpp"
#include "eogec/text.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace eogec::freq {

struct EmptyDistribution : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FreqTable {
    struct Entry {
        std::string key;
        std::uint64_t count = 0;
        std::size_t rank = 0; // 1-based, descending count, ties lexicographic
    };
    std::vector<Entry> items;
    std::uint64_t total = 0;

    static FreqTable from_counts(const std::map<std::string, std::uint64_t>& counts);
    double relative(std::size_t index) const {
        return total == 0 ? 0.0
                          : static_cast<double>(items[index].count) / total;
    }
};

enum class LetterSet { Esperanto, LatinAZ, Union };

FreqTable letter_frequencies(std::string_view text,
                             LetterSet set = LetterSet::Esperanto);

struct WordFreqOptions {
    bool esperanto_only = false;
    bool include_numbers = false;
    bool lowercase = true; // counting is over token.norm either way
};

FreqTable word_frequencies(std::istream& corpus, const WordFreqOptions& opts = {},
                           const morph::Lexicon& lexicon = morph::Lexicon::builtin());
FreqTable word_frequencies(std::string_view corpus, const WordFreqOptions& opts = {},
                           const morph::Lexicon& lexicon = morph::Lexicon::builtin());

FreqTable filter_stopwords(const FreqTable& table,
                           const std::unordered_set<std::string>& stoplist);

/// Shannon entropy in bits over the table's relative frequencies.
double entropy(const FreqTable& table);

struct ZipfFit {
    double log_k = 0.0;   // natural-log intercept
    double slope_a = 0.0; // negated slope of log f over log r
    double r_squared = 0.0;
    double std_err = 0.0; // standard error of the slope
    std::size_t n_points = 0;
};

/// OLS of ln(frequency) on ln(rank) over ranks 1..top_n.
ZipfFit zipf_fit(const FreqTable& table, std::size_t top_n = 100);

struct LetterComparison {
    std::string letter;
    double rel_a = 0.0;
    double rel_b = 0.0;
};

std::vector<LetterComparison> compare_letter_frequencies(std::string_view corpus_a,
                                                         std::string_view corpus_b);

void write_freq_csv(std::ostream& out, const FreqTable& table);
void write_letter_comparison_csv(std::ostream& out,
                                 const std::vector<LetterComparison>& rows);
void write_zipf_csv(std::ostream& out, const ZipfFit& fit);
FreqTable read_freq_csv(std::istream& in);

} // namespace eogec::freq

#endif
