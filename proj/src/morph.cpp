#include "eogec/morph.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>

namespace eogec::morph {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

bool has_vowel(std::string_view s) {
    for (char c : s)
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    return s.find("ŭ") != std::string_view::npos;
}

const std::array<std::string_view, 5> kTablePrefixes = {"neni", "ĉi", "ki",
                                                        "ti", "i"};
const std::array<std::string_view, 9> kTableEndings = {"a", "al", "am", "e",
                                                       "el", "es", "o", "om",
                                                       "u"};

} // namespace

const char* to_string(Pos pos) {
    switch (pos) {
    case Pos::Noun: return "Noun";
    case Pos::Adjective: return "Adjective";
    case Pos::Adverb: return "Adverb";
    case Pos::Verb: return "Verb";
    case Pos::Pronoun: return "Pronoun";
    case Pos::Preposition: return "Preposition";
    case Pos::Conjunction: return "Conjunction";
    case Pos::Determiner: return "Determiner";
    case Pos::Number: return "Number";
    case Pos::Punct: return "Punct";
    case Pos::Table: return "Table";
    case Pos::Other: return "Other";
    }
    return "Other";
}

Lexicon::Lexicon() {
    pronouns_ = {"mi", "ni", "vi", "ci", "li", "ŝi", "ĝi", "ili", "oni", "si"};
    prepositions_ = {"al",    "en",       "de",    "pri",    "por",  "pro",
                     "po",    "post",     "antaŭ", "malantaŭ", "kun", "sen",
                     "sur",   "sub",      "super", "ĉe",     "el",   "ĝis",
                     "inter", "per",      "preter", "tra",   "trans", "dum",
                     "laŭ",   "apud",     "anstataŭ", "krom", "kontraŭ",
                     "ekster", "je",      "da"};
    conjunctions_ = {"kaj", "aŭ", "sed", "nek", "ke", "ĉar", "se", "do",
                     "tamen"};
    determiners_ = {"la"};
    numerals_ = {"nul", "unu", "du",  "tri", "kvar", "kvin", "ses",
                 "sep", "ok",  "naŭ", "dek", "cent", "mil"};
    prefixes_ = {"ĉef", "mal", "mis", "pra", "vic", "bo",
                 "dis", "eks", "ek",  "fi",  "ge",  "re"};
    suffixes_ = {"estr", "ism", "ing", "ind", "end", "ebl", "obl", "aĉ", "ad",
                 "aĵ",  "an",  "ar",  "ĉj", "ec",  "eg",  "ej",  "em", "er",
                 "et",  "id",  "ig",  "iĝ", "il",  "in",  "ist", "nj", "on",
                 "op",  "uj",  "ul",  "um"};
    roots_ = {"leon",   "san",    "fil",    "jar",    "tag",    "region",
              "trink",  "loĝ",   "est",    "vid",    "vizit",  "frat",
              "hund",   "kat",    "dom",    "libr",   "amik",   "urb",
              "man",    "akv",    "pan",    "knab",   "vir",    "bel",
              "grand",  "bon",    "nov",    "rapid",  "ven",    "ir",
              "far",    "dir",    "pov",    "dev",    "vol",    "sci",
              "pluv",   "lud",    "tenis",  "lern",   "labor",  "skrib",
              "leg",    "parol",  "manĝ",  "konstru", "ferm",  "mur",
              "help",   "vort",   "lingv",  "land",   "mond",   "princ",
              "reĝ",   "flor",   "arb",    "best",   "patr",   "infan",
              "instru", "demand", "respond", "uz",    "don",    "pren",
              "met",    "port",   "am",     "long",   "alt",    "varm",
              "jun",    "fort",   "feliĉ", "ĝoj",   "program", "komput",
              "teatr",  "muzik",  "kant",   "danc",   "naĝ",   "kur",
              "dorm",   "pens",   "kred",   "esper",  "atend",  "aĉet",
              "vend",   "pag",    "kost",   "temp",   "hor",    "maten",
              "vesper", "nokt",   "semajn", "monat",  "somer",  "vintr",
              "aŭtun", "printemp", "sun",  "lun",    "stel",   "ĉiel",
              "ter",    "mar",    "river",  "mont",   "voj",    "strat",
              "pont",   "pord",   "fenestr", "ĉambr", "tabl",  "seĝ",
              "lit",    "te",     "kaf",    "lakt",   "pom",    "estr"};
}

const Lexicon& Lexicon::builtin() {
    static const Lexicon lex;
    return lex;
}

std::unordered_set<std::string> load_word_list(const std::string& path) {
    std::unordered_set<std::string> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t");
        out.insert(line.substr(start, end - start + 1));
    }
    return out;
}

Lexicon Lexicon::load(const std::string& dir) {
    Lexicon lex = builtin();
    auto merge_set = [&](const std::string& file,
                         std::unordered_set<std::string>& into, bool replace) {
        auto words = load_word_list(dir + "/" + file);
        if (words.empty()) return;
        if (replace) into.clear();
        into.insert(words.begin(), words.end());
    };
    merge_set("stopwords.txt", lex.stopwords_, true);
    merge_set("roots.txt", lex.roots_, false);
    auto load_vec = [&](const std::string& file, std::vector<std::string>& into) {
        auto words = load_word_list(dir + "/" + file);
        if (words.empty()) return;
        into.assign(words.begin(), words.end());
        // longest first so peeling is greedy on the longer affix
        std::sort(into.begin(), into.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() > b.size() : a < b;
        });
    };
    load_vec("prefixes.txt", lex.prefixes_);
    load_vec("suffixes.txt", lex.suffixes_);
    return lex;
}

bool Lexicon::is_closed_class(std::string_view norm) const {
    std::string s(norm);
    return pronouns_.count(s) || prepositions_.count(s) ||
           conjunctions_.count(s) || determiners_.count(s) || numerals_.count(s);
}

std::optional<TableWord> analyze_table_word(std::string_view norm) {
    for (std::string_view prefix : kTablePrefixes) {
        if (!starts_with(norm, prefix)) continue;
        std::string rest(norm.substr(prefix.size()));
        TableWord tw;
        tw.prefix = std::string(prefix);
        if (ends_with(rest, "n")) {
            tw.accusative = true;
            rest.pop_back();
        }
        if (ends_with(rest, "j")) {
            tw.plural = true;
            rest.pop_back();
        }
        bool is_ending = std::find(kTableEndings.begin(), kTableEndings.end(),
                                   rest) != kTableEndings.end();
        if (!is_ending) continue;
        if (tw.plural && rest != "a" && rest != "u") continue;
        if (tw.accusative && rest != "a" && rest != "e" && rest != "o" &&
            rest != "u")
            continue;
        tw.ending = rest;
        return tw;
    }
    return std::nullopt;
}

std::vector<std::string> enumerate_table_words() {
    std::vector<std::string> out;
    for (std::string_view p : {"i", "ki", "ti", "ĉi", "neni"})
        for (std::string_view e : kTableEndings)
            out.push_back(std::string(p) + std::string(e));
    return out;
}

namespace {

void peel_affixes(MorphAnalysis& an, const Lexicon& lex) {
    // Known roots stop peeling; otherwise peel while a plausible stem remains.
    auto done = [&] { return lex.is_known_root(an.root); };
    for (int round = 0; round < 2 && !done(); ++round) {
        bool peeled = false;
        for (const std::string& p : lex.prefixes()) {
            if (!starts_with(an.root, p)) continue;
            std::string rest = an.root.substr(p.size());
            if (lex.is_known_root(rest) ||
                (rest.size() >= 3 && has_vowel(rest))) {
                an.prefixes.push_back(p);
                an.root = rest;
                peeled = true;
                break;
            }
        }
        if (!peeled) break;
    }
    for (int round = 0; round < 3 && !done(); ++round) {
        bool peeled = false;
        for (const std::string& s : lex.suffixes()) {
            if (!ends_with(an.root, s)) continue;
            std::string rest = an.root.substr(0, an.root.size() - s.size());
            if (lex.is_known_root(rest) ||
                (rest.size() >= 3 && has_vowel(rest))) {
                an.suffixes.insert(an.suffixes.begin(), s);
                an.root = rest;
                peeled = true;
                break;
            }
        }
        if (!peeled) break;
    }
}

void peel_participle(MorphAnalysis& an, const Lexicon& lex) {
    if (lex.is_known_root(an.root)) return;
    static const std::pair<const char*, Participle> kParticiples[] = {
        {"int", Participle::ActivePast},   {"ant", Participle::ActivePresent},
        {"ont", Participle::ActiveFuture}, {"it", Participle::PassivePast},
        {"at", Participle::PassivePresent}, {"ot", Participle::PassiveFuture}};
    for (const auto& [suffix, kind] : kParticiples) {
        if (!ends_with(an.root, suffix)) continue;
        std::string rest = an.root.substr(0, an.root.size() - std::strlen(suffix));
        if (rest.size() >= 2 && has_vowel(rest)) {
            an.participle = kind;
            an.root = rest;
            return;
        }
    }
}

std::optional<MorphAnalysis> ending_analysis(const std::string& norm,
                                             const Lexicon& lex) {
    std::string s = norm;
    if (!s.empty() && s.back() == '\'') s.pop_back(); // elision: root as written
    if (s.empty()) return std::nullopt;

    MorphAnalysis an;
    bool acc = false, plur = false;
    if (s.size() >= 2 && s.back() == 'n') {
        acc = true;
        s.pop_back();
    }
    if (s.size() >= 2 && s.back() == 'j') {
        plur = true;
        s.pop_back();
    }

    if (!acc && !plur) {
        static const std::pair<const char*, VerbForm> kVerbEndings[] = {
            {"as", VerbForm::Present}, {"is", VerbForm::Past},
            {"os", VerbForm::Future},  {"us", VerbForm::Conditional}};
        for (const auto& [ending, form] : kVerbEndings) {
            if (ends_with(s, ending) && s.size() > 2) {
                an.pos = Pos::Verb;
                an.verb_form = form;
                an.root = s.substr(0, s.size() - 2);
                peel_affixes(an, lex);
                return an;
            }
        }
        if (s.size() >= 2 && (s.back() == 'i' || s.back() == 'u')) {
            an.pos = Pos::Verb;
            an.verb_form = s.back() == 'i' ? VerbForm::Infinitive : VerbForm::Volitive;
            an.root = s.substr(0, s.size() - 1);
            peel_affixes(an, lex);
            return an;
        }
    }

    if (s.size() >= 2) {
        char last = s.back();
        if (last == 'o' || last == 'a' || (last == 'e' && !plur)) {
            an.pos = last == 'o'   ? Pos::Noun
                     : last == 'a' ? Pos::Adjective
                                   : Pos::Adverb;
            an.gram_case = acc ? Case::Accusative : Case::Nominative;
            an.number = last == 'e' ? Plurality::None
                                    : (plur ? Plurality::Plural : Plurality::Singular);
            an.root = s.substr(0, s.size() - 1);
            peel_participle(an, lex);
            peel_affixes(an, lex);
            return an;
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<MorphAnalysis> analyze(const text::Token& token, const Lexicon& lex) {
    std::vector<MorphAnalysis> out;
    const std::string& norm = token.norm;

    if (token.kind == text::TokenKind::Punctuation) {
        MorphAnalysis an;
        an.pos = Pos::Punct;
        an.root = norm;
        return {an};
    }
    if (token.kind == text::TokenKind::Number) {
        MorphAnalysis an;
        an.pos = Pos::Number;
        an.root = norm;
        return {an};
    }

    auto closed = [&](Pos pos, const std::string& root) {
        MorphAnalysis an;
        an.pos = pos;
        an.root = root;
        if (pos == Pos::Pronoun) an.gram_case = Case::Nominative;
        return an;
    };

    if (lex.determiners().count(norm)) out.push_back(closed(Pos::Determiner, norm));
    if (norm == "l'" || norm == "l") out.push_back(closed(Pos::Determiner, "la"));
    if (lex.pronouns().count(norm)) out.push_back(closed(Pos::Pronoun, norm));
    if (lex.prepositions().count(norm)) out.push_back(closed(Pos::Preposition, norm));
    if (lex.conjunctions().count(norm)) out.push_back(closed(Pos::Conjunction, norm));
    if (lex.numerals().count(norm)) out.push_back(closed(Pos::Number, norm));

    // Inflected personal pronouns: min, vin, ...; possessives: mia(j)(n), sia...
    if (out.empty()) {
        std::string s = norm;
        bool acc = false, plur = false;
        if (ends_with(s, "n") && s.size() >= 2) {
            acc = true;
            s.pop_back();
        }
        if (lex.pronouns().count(s)) {
            MorphAnalysis an = closed(Pos::Pronoun, s);
            an.gram_case = acc ? Case::Accusative : Case::Nominative;
            out.push_back(an);
        } else {
            if (ends_with(s, "j") && s.size() >= 2) {
                plur = true;
                s.pop_back();
            }
            if (ends_with(s, "a") && lex.pronouns().count(s.substr(0, s.size() - 1))) {
                MorphAnalysis an = closed(Pos::Pronoun, s.substr(0, s.size() - 1));
                an.gram_case = acc ? Case::Accusative : Case::Nominative;
                an.number = plur ? Plurality::Plural : Plurality::Singular;
                out.push_back(an);
            }
        }
    }

    if (auto tw = analyze_table_word(norm)) {
        MorphAnalysis an;
        an.pos = Pos::Table;
        an.root = tw->prefix + tw->ending;
        an.table = tw;
        if (tw->ending == "a" || tw->ending == "e" || tw->ending == "o" ||
            tw->ending == "u") {
            an.gram_case = tw->accusative ? Case::Accusative : Case::Nominative;
            if (tw->ending == "a" || tw->ending == "u")
                an.number = tw->plural ? Plurality::Plural : Plurality::Singular;
        }
        out.push_back(an);
    }

    if (auto an = ending_analysis(norm, lex)) out.push_back(*an);

    if (out.empty()) {
        MorphAnalysis an;
        an.pos = Pos::Other;
        an.root = norm;
        out.push_back(an);
    }
    return out;
}

MorphAnalysis top_analysis(const text::Token& token, const Lexicon& lex) {
    return analyze(token, lex).front();
}

bool is_esperanto_word(const text::Token& token, const Lexicon& lex) {
    if (token.kind != text::TokenKind::Word) return false;
    const std::string& norm = token.norm;
    if (norm.empty()) return false;
    if (lex.is_closed_class(norm)) return true;
    if (analyze_table_word(norm)) return true;

    std::string s = norm;
    if (ends_with(s, "n") && s.size() >= 2) s.pop_back();
    if (ends_with(s, "j") && s.size() >= 2) s.pop_back();
    for (std::string_view ending : {"as", "is", "os", "us"})
        if (ends_with(s, ending) && s.size() > ending.size()) return true;
    for (char ending : {'o', 'a', 'e', 'i', 'u'})
        if (s.size() >= 2 && s.back() == ending) return true;
    return false;
}

} // namespace eogec::morph
