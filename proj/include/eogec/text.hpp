#ifndef EOGEC_TEXT_HPP
#define EOGEC_TEXT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace eogec::text {

/// The 28-letter Esperanto alphabet plus the x-convention digraph map.
class Alphabet {
public:
    static const Alphabet& instance();

    const std::vector<std::string>& letters() const { return letters_; }

    bool is_letter(char32_t cp) const;        // any case, incl. a-z without q/w/x/y? see impl
    bool is_eo_letter_lower(char32_t cp) const;
    char32_t to_lower(char32_t cp) const;

    // x-digraph base letters (c g h j s u), lowercase.
    bool is_digraph_base(char32_t cp) const;
    char32_t digraph_target(char32_t base) const; // base must pass is_digraph_base (case kept)

    // Composition of base + combining circumflex/breve into the precomposed letter,
    // 0 if the pair does not compose.
    char32_t compose(char32_t base, char32_t mark) const;

private:
    Alphabet();
    std::vector<std::string> letters_;
};

enum class Convention { Auto, XSystem, Unicode };

/// Render diacritic letters as single code points; convert x-digraphs
/// (cx -> ĉ etc.) unless convention is Unicode. Idempotent, total.
std::string normalize_orthography(std::string_view text,
                                  Convention convention = Convention::Auto);

enum class TokenKind { Word, Punctuation, Number };

struct Token {
    std::string surface;
    std::size_t begin = 0; // byte offsets into the source text, half-open
    std::size_t end = 0;
    std::string norm;      // lowercased, orthography-normalized
    TokenKind kind = TokenKind::Word;
};

struct TokenizeOptions {
    bool split_hyphens = true; // "vort-ludo" -> three tokens when set
};

/// Lossless tokenization: surfaces plus the skipped separators reconstruct
/// the input exactly. Punctuation is one token per code point; the elision
/// apostrophe stays attached to its word.
std::vector<Token> tokenize(std::string_view text, const TokenizeOptions& opts = {});

std::vector<Token> tokens_from_words(const std::vector<std::string>& words);
std::string join_surfaces(const std::vector<Token>& tokens);

/// Counts over lowercase alphabet letters; everything else is ignored.
std::map<std::string, std::uint64_t> letter_counts(std::string_view text);

std::string fold_case(std::string_view s); // lowercase, eo-aware

} // namespace eogec::text

#endif
