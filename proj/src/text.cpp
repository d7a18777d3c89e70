#include "eogec/text.hpp"

#include "eogec/unicode.hpp"

#include <array>
#include <cctype>

namespace eogec::text {

namespace {

constexpr char32_t C_HAT = U'Ĉ', c_hat = U'ĉ';
constexpr char32_t G_HAT = U'Ĝ', g_hat = U'ĝ';
constexpr char32_t H_HAT = U'Ĥ', h_hat = U'ĥ';
constexpr char32_t J_HAT = U'Ĵ', j_hat = U'ĵ';
constexpr char32_t S_HAT = U'Ŝ', s_hat = U'ŝ';
constexpr char32_t U_BREVE = U'Ŭ', u_breve = U'ŭ';
constexpr char32_t COMBINING_CIRCUMFLEX = U'̂';
constexpr char32_t COMBINING_BREVE = U'̆';

bool is_diacritic_lower(char32_t cp) {
    return cp == c_hat || cp == g_hat || cp == h_hat || cp == j_hat ||
           cp == s_hat || cp == u_breve;
}

bool is_diacritic_upper(char32_t cp) {
    return cp == C_HAT || cp == G_HAT || cp == H_HAT || cp == J_HAT ||
           cp == S_HAT || cp == U_BREVE;
}

} // namespace

Alphabet::Alphabet() {
    for (const char* l : {"a", "b", "c", "ĉ", "d", "e", "f", "g", "ĝ",
                          "h", "ĥ", "i", "j", "ĵ", "k", "l", "m", "n",
                          "o", "p", "r", "s", "ŝ", "t", "u", "ŭ", "v",
                          "z"})
        letters_.push_back(l);
}

const Alphabet& Alphabet::instance() {
    static const Alphabet a;
    return a;
}

bool Alphabet::is_eo_letter_lower(char32_t cp) const {
    if (cp >= U'a' && cp <= U'z')
        return cp != U'q' && cp != U'w' && cp != U'x' && cp != U'y';
    return is_diacritic_lower(cp);
}

bool Alphabet::is_letter(char32_t cp) const {
    return is_eo_letter_lower(to_lower(cp));
}

char32_t Alphabet::to_lower(char32_t cp) const {
    if (cp >= U'A' && cp <= U'Z') return cp + 32;
    if (is_diacritic_upper(cp)) return cp + 1; // each pair is adjacent in Unicode
    return cp;
}

bool Alphabet::is_digraph_base(char32_t cp) const {
    char32_t l = to_lower(cp);
    return l == U'c' || l == U'g' || l == U'h' || l == U'j' || l == U's' ||
           l == U'u';
}

char32_t Alphabet::digraph_target(char32_t base) const {
    bool upper = base >= U'A' && base <= U'Z';
    switch (to_lower(base)) {
    case U'c': return upper ? C_HAT : c_hat;
    case U'g': return upper ? G_HAT : g_hat;
    case U'h': return upper ? H_HAT : h_hat;
    case U'j': return upper ? J_HAT : j_hat;
    case U's': return upper ? S_HAT : s_hat;
    case U'u': return upper ? U_BREVE : u_breve;
    default: return 0;
    }
}

char32_t Alphabet::compose(char32_t base, char32_t mark) const {
    if (mark == COMBINING_CIRCUMFLEX) {
        switch (base) {
        case U'c': return c_hat;
        case U'C': return C_HAT;
        case U'g': return g_hat;
        case U'G': return G_HAT;
        case U'h': return h_hat;
        case U'H': return H_HAT;
        case U'j': return j_hat;
        case U'J': return J_HAT;
        case U's': return s_hat;
        case U'S': return S_HAT;
        }
    } else if (mark == COMBINING_BREVE) {
        if (base == U'u') return u_breve;
        if (base == U'U') return U_BREVE;
    }
    return 0;
}

std::string normalize_orthography(std::string_view text, Convention convention) {
    const Alphabet& ab = Alphabet::instance();
    std::vector<char32_t> in = uni::decode(text);

    // Pass 1: compose combining marks into precomposed letters.
    std::vector<char32_t> composed;
    composed.reserve(in.size());
    for (char32_t cp : in) {
        if (!composed.empty()) {
            char32_t c = ab.compose(composed.back(), cp);
            if (c) {
                composed.back() = c;
                continue;
            }
        }
        composed.push_back(cp);
    }

    if (convention == Convention::Unicode) return uni::encode(composed);

    // Pass 2: x-digraphs. "cx"/"cX"/"Cx"/"CX" -> ĉ/ĉ/Ĉ/Ĉ; a literal "x"
    // after a non-base letter is left alone.
    std::vector<char32_t> out;
    out.reserve(composed.size());
    for (std::size_t i = 0; i < composed.size(); ++i) {
        char32_t cp = composed[i];
        if (i + 1 < composed.size() && ab.is_digraph_base(cp)) {
            char32_t next = composed[i + 1];
            if (next == U'x' || next == U'X') {
                out.push_back(ab.digraph_target(cp));
                ++i;
                continue;
            }
        }
        out.push_back(cp);
    }
    return uni::encode(out);
}

std::string fold_case(std::string_view s) {
    const Alphabet& ab = Alphabet::instance();
    std::vector<char32_t> cps = uni::decode(s);
    for (char32_t& cp : cps) cp = ab.to_lower(cp);
    return uni::encode(cps);
}

namespace {

bool is_word_char(char32_t cp) {
    // Foreign Latin letters stay word characters so "the" is one token.
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
    return is_diacritic_lower(cp) || is_diacritic_upper(cp) ||
           cp == COMBINING_CIRCUMFLEX || cp == COMBINING_BREVE;
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_space(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
           cp == U' ';
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

std::size_t cp_len(char32_t cp) {
    if (cp < 0x80) return 1;
    if (cp < 0x800) return 2;
    if (cp < 0x10000) return 3;
    return 4;
}

} // namespace

std::vector<Token> tokenize(std::string_view text, const TokenizeOptions& opts) {
    std::vector<char32_t> cps = uni::decode(text);
    std::vector<std::size_t> off(cps.size() + 1);
    for (std::size_t i = 0; i < cps.size(); ++i) off[i + 1] = off[i] + cp_len(cps[i]);

    std::vector<Token> out;
    auto push = [&](std::size_t b, std::size_t e, TokenKind kind) {
        Token t;
        t.begin = off[b];
        t.end = off[e];
        t.surface = std::string(text.substr(t.begin, t.end - t.begin));
        t.norm = fold_case(normalize_orthography(t.surface));
        t.kind = kind;
        out.push_back(std::move(t));
    };

    std::size_t i = 0;
    const std::size_t n = cps.size();
    while (i < n) {
        char32_t cp = cps[i];
        if (is_space(cp)) {
            ++i;
        } else if (is_word_char(cp)) {
            std::size_t b = i;
            ++i;
            while (i < n) {
                if (is_word_char(cps[i])) { ++i; continue; }
                if (is_apostrophe(cps[i])) { ++i; continue; } // "l'" stays attached
                if (cps[i] == U'-' && !opts.split_hyphens && i + 1 < n &&
                    is_word_char(cps[i + 1])) { ++i; continue; }
                break;
            }
            push(b, i, TokenKind::Word);
        } else if (is_digit(cp)) {
            std::size_t b = i;
            while (i < n && is_digit(cps[i])) ++i;
            push(b, i, TokenKind::Number);
        } else {
            push(i, i + 1, TokenKind::Punctuation);
            ++i;
        }
    }
    return out;
}

std::vector<Token> tokens_from_words(const std::vector<std::string>& words) {
    std::vector<Token> out;
    std::size_t pos = 0;
    for (const std::string& w : words) {
        Token t;
        t.surface = w;
        t.begin = pos;
        t.end = pos + w.size();
        t.norm = fold_case(normalize_orthography(w));
        std::vector<char32_t> cps = uni::decode(w);
        if (!cps.empty() && is_digit(cps[0]))
            t.kind = TokenKind::Number;
        else if (cps.size() == 1 && !is_word_char(cps[0]))
            t.kind = TokenKind::Punctuation;
        else
            t.kind = TokenKind::Word;
        out.push_back(std::move(t));
        pos += w.size() + 1;
    }
    return out;
}

std::string join_surfaces(const std::vector<Token>& tokens) {
    std::string s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) s += ' ';
        s += tokens[i].surface;
    }
    return s;
}

std::map<std::string, std::uint64_t> letter_counts(std::string_view text) {
    const Alphabet& ab = Alphabet::instance();
    std::map<std::string, std::uint64_t> counts;
    for (char32_t cp : uni::decode(text)) {
        char32_t l = ab.to_lower(cp);
        if (ab.is_eo_letter_lower(l)) {
            std::string key;
            uni::encode(l, key);
            ++counts[key];
        }
    }
    return counts;
}

} // namespace eogec::text
