#ifndef EOGEC_MORPH_HPP
#define EOGEC_MORPH_HPP

#include "eogec/text.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace eogec::morph {

enum class Pos {
    Noun,
    Adjective,
    Adverb,
    Verb,
    Pronoun,
    Preposition,
    Conjunction,
    Determiner,
    Number,
    Punct,
    Table,
    Other
};

enum class Case { None, Nominative, Accusative };
enum class Plurality { None, Singular, Plural };

enum class VerbForm {
    None,
    Infinitive,
    Present,
    Past,
    Future,
    Conditional,
    Volitive
};

enum class Participle {
    None,
    ActivePresent,
    ActivePast,
    ActiveFuture,
    PassivePresent,
    PassivePast,
    PassiveFuture
};

struct TableWord {
    std::string prefix; // i, ki, ti, ĉi, neni
    std::string ending; // a, al, am, e, el, es, o, om, u
    bool plural = false;
    bool accusative = false;
};

struct MorphAnalysis {
    std::string root;
    Pos pos = Pos::Other;
    Case gram_case = Case::None;
    Plurality number = Plurality::None;
    VerbForm verb_form = VerbForm::None;
    Participle participle = Participle::None;
    std::vector<std::string> prefixes; // outermost first
    std::vector<std::string> suffixes; // innermost first
    std::optional<TableWord> table;
};

const char* to_string(Pos pos);

/// Closed-class word lists plus the open affix/root/stopword inventories.
/// The word lists are fixed by the grammar; affixes, roots and stopwords
/// are data-file driven (UTF-8, one entry per line, # comments).
class Lexicon {
public:
    static const Lexicon& builtin();

    /// Loads stopwords.txt / roots.txt / prefixes.txt / suffixes.txt from
    /// dir on top of the builtin closed-class lists. Missing files keep
    /// the builtin inventory.
    static Lexicon load(const std::string& dir);

    const std::set<std::string>& pronouns() const { return pronouns_; }
    const std::set<std::string>& prepositions() const { return prepositions_; }
    const std::set<std::string>& conjunctions() const { return conjunctions_; }
    const std::set<std::string>& determiners() const { return determiners_; }
    const std::set<std::string>& numerals() const { return numerals_; }
    const std::unordered_set<std::string>& stopwords() const { return stopwords_; }
    const std::unordered_set<std::string>& roots() const { return roots_; }
    const std::vector<std::string>& prefixes() const { return prefixes_; }
    const std::vector<std::string>& suffixes() const { return suffixes_; }

    bool is_closed_class(std::string_view norm) const;
    bool is_known_root(std::string_view root) const {
        return roots_.count(std::string(root)) > 0;
    }

    void set_stopwords(std::unordered_set<std::string> sw) { stopwords_ = std::move(sw); }

private:
    Lexicon();
    std::set<std::string> pronouns_, prepositions_, conjunctions_, determiners_,
        numerals_;
    std::unordered_set<std::string> stopwords_, roots_;
    std::vector<std::string> prefixes_, suffixes_;
};

std::unordered_set<std::string> load_word_list(const std::string& path);

/// Rule-based analysis, ordered by plausibility; closed-class readings come
/// first and pos=Other is the total-function fallback.
std::vector<MorphAnalysis> analyze(const text::Token& token,
                                   const Lexicon& lexicon = Lexicon::builtin());

MorphAnalysis top_analysis(const text::Token& token,
                           const Lexicon& lexicon = Lexicon::builtin());

/// prefix+ending(+j)(+n) decomposition; j only after a/u, n only after a/e/o/u.
std::optional<TableWord> analyze_table_word(std::string_view norm);

/// The 45 base correlative forms, 5 prefixes x 9 endings.
std::vector<std::string> enumerate_table_words();

/// True iff the token, after stripping -n then -j, carries a valid open-class
/// ending, is closed-class, or decomposes as a table word.
bool is_esperanto_word(const text::Token& token,
                       const Lexicon& lexicon = Lexicon::builtin());

} // namespace eogec::morph

#endif
