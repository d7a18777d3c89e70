#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eogec/morph.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <set>

using namespace eogec;
using namespace eogec::morph;

namespace {

text::Token word(const std::string& w) {
    return text::tokens_from_words({w}).front();
}

MorphAnalysis top(const std::string& w) { return top_analysis(word(w)); }

} // namespace

TEST_CASE("closed-class analyses come first") {
    CHECK(top("la").pos == Pos::Determiner);
    CHECK(top("mi").pos == Pos::Pronoun);
    CHECK(top("ŝi").pos == Pos::Pronoun);
    CHECK(top("al").pos == Pos::Preposition);
    CHECK(top("kaj").pos == Pos::Conjunction);
    CHECK(top("du").pos == Pos::Number);
    CHECK(top("l'").pos == Pos::Determiner);
}

TEST_CASE("inflected pronouns and possessives") {
    MorphAnalysis min = top("min");
    CHECK(min.pos == Pos::Pronoun);
    CHECK(min.gram_case == Case::Accusative);
    MorphAnalysis sian = top("sian");
    CHECK(sian.pos == Pos::Pronoun);
    CHECK(sian.root == "si");
    CHECK(sian.gram_case == Case::Accusative);
    MorphAnalysis liaj = top("liaj");
    CHECK(liaj.pos == Pos::Pronoun);
    CHECK(liaj.number == Plurality::Plural);
}

TEST_CASE("open-class endings") {
    MorphAnalysis n = top("hundojn");
    CHECK(n.pos == Pos::Noun);
    CHECK(n.root == "hund");
    CHECK(n.gram_case == Case::Accusative);
    CHECK(n.number == Plurality::Plural);

    MorphAnalysis adj = top("belaj");
    CHECK(adj.pos == Pos::Adjective);
    CHECK(adj.number == Plurality::Plural);

    MorphAnalysis adv = top("rapide");
    CHECK(adv.pos == Pos::Adverb);

    CHECK(top("loĝas").verb_form == VerbForm::Present);
    CHECK(top("loĝis").verb_form == VerbForm::Past);
    CHECK(top("loĝos").verb_form == VerbForm::Future);
    CHECK(top("loĝus").verb_form == VerbForm::Conditional);
    CHECK(top("loĝu").verb_form == VerbForm::Volitive);
    CHECK(top("loĝi").verb_form == VerbForm::Infinitive);
}

TEST_CASE("affix peeling stops at known roots") {
    // "region" is a known root: it must not be peeled into re+gi-on pieces.
    MorphAnalysis regiono = top("regiono");
    CHECK(regiono.root == "region");
    CHECK(regiono.prefixes.empty());

    MorphAnalysis gefiloj = top("gefiloj");
    CHECK(gefiloj.root == "fil");
    REQUIRE(gefiloj.prefixes.size() == 1);
    CHECK(gefiloj.prefixes[0] == "ge");

    MorphAnalysis lernejo = top("lernejo");
    CHECK(lernejo.root == "lern");
    REQUIRE(lernejo.suffixes.size() == 1);
    CHECK(lernejo.suffixes[0] == "ej");

    MorphAnalysis malsanulejo = top("malsanulejo");
    CHECK(malsanulejo.root == "san");
    CHECK(malsanulejo.prefixes == std::vector<std::string>{"mal"});
    CHECK(malsanulejo.suffixes == std::vector<std::string>{"ul", "ej"});
}

TEST_CASE("participles") {
    MorphAnalysis a = top("vidinta");
    CHECK(a.participle == Participle::ActivePast);
    CHECK(a.root == "vid");
    MorphAnalysis b = top("konstruata");
    CHECK(b.participle == Participle::PassivePresent);
    CHECK(b.root == "konstru");
}

TEST_CASE("table word enumeration yields exactly 45 distinct forms") {
    auto words = enumerate_table_words();
    CHECK(words.size() == 45);
    std::set<std::string> uniq(words.begin(), words.end());
    CHECK(uniq.size() == 45);
    for (const std::string& w : words) {
        auto tw = analyze_table_word(w);
        REQUIRE(tw.has_value());
        CHECK_FALSE(tw->plural);
        CHECK_FALSE(tw->accusative);
    }
}

TEST_CASE("accepted table-word inflections equal the brute-force generator") {
    // Oracle: legal inflections are base(+j if ending in a/u)(+n if ending in
    // a/e/o/u), built independently of analyze_table_word.
    std::set<std::string> legal;
    for (std::string_view p : {"i", "ki", "ti", "ĉi", "neni"}) {
        for (std::string_view e :
             {"a", "al", "am", "e", "el", "es", "o", "om", "u"}) {
            std::string base = std::string(p) + std::string(e);
            legal.insert(base);
            bool can_j = e == "a" || e == "u";
            bool can_n = e == "a" || e == "e" || e == "o" || e == "u";
            if (can_j) legal.insert(base + "j");
            if (can_n) legal.insert(base + "n");
            if (can_j && can_n) legal.insert(base + "jn");
        }
    }
    // Probe every candidate base+j?+n? string, legal or not.
    std::size_t accepted = 0;
    for (std::string_view p : {"i", "ki", "ti", "ĉi", "neni"}) {
        for (std::string_view e :
             {"a", "al", "am", "e", "el", "es", "o", "om", "u"}) {
            for (const char* infl : {"", "j", "n", "jn", "nj"}) {
                std::string cand = std::string(p) + std::string(e) + infl;
                bool ok = analyze_table_word(cand).has_value();
                CHECK(ok == (legal.count(cand) > 0));
                accepted += ok;
            }
        }
    }
    CHECK(accepted == legal.size());
    CHECK_FALSE(analyze_table_word("kiun").has_value() == false); // kiun is legal
    CHECK_FALSE(analyze_table_word("kialn").has_value());
    CHECK_FALSE(analyze_table_word("kiomj").has_value());
    CHECK_FALSE(analyze_table_word("domo").has_value());
}

TEST_CASE("is_esperanto_word matches a brute-force ending oracle") {
    const Lexicon& lex = Lexicon::builtin();
    auto oracle = [&](const std::string& w) {
        if (lex.is_closed_class(w)) return true;
        if (analyze_table_word(w)) return true;
        std::string s = w;
        if (s.size() >= 2 && s.back() == 'n') s.pop_back();
        if (s.size() >= 2 && s.back() == 'j') s.pop_back();
        for (const char* v : {"as", "is", "os", "us"}) {
            std::string e(v);
            if (s.size() > e.size() &&
                s.compare(s.size() - e.size(), e.size(), e) == 0)
                return true;
        }
        if (s.size() >= 2) {
            char c = s.back();
            if (c == 'o' || c == 'a' || c == 'e' || c == 'i' || c == 'u')
                return true;
        }
        return false;
    };
    std::vector<std::string> probes = {
        "domo",  "domojn", "kato",  "katon", "belaj", "rapide", "iri",
        "iras",  "irus",   "kiu",   "kiujn", "mi",    "la",     "kaj",
        "the",   "and",    "xyz",   "n",     "j",     "o",      "trinkos",
        "akvon", "hundz",  "tablq", "ĝi",   "ĉevalo"};
    for (const std::string& w : probes)
        CHECK(is_esperanto_word(word(w), lex) == oracle(w));
    CHECK_FALSE(is_esperanto_word(text::tokens_from_words({"42"}).front(), lex));
    CHECK_FALSE(is_esperanto_word(text::tokens_from_words({"."}).front(), lex));
}

TEST_CASE("lexicon loads data directory on top of builtin") {
    Lexicon lex = Lexicon::load(testutil::source_dir() + "/data");
    CHECK(lex.is_known_root("region"));
    CHECK(lex.is_known_root("ĝarden")); // only in data/roots.txt
    CHECK(lex.stopwords().count("la") == 1);
    CHECK(lex.pronouns().count("mi") == 1); // closed classes unchanged
}

TEST_CASE("total function: every token gets at least one analysis") {
    for (const std::string& w : {"zzz", "x", "qwerty", "'", "ĥ"}) {
        auto analyses = analyze(word(w));
        REQUIRE_FALSE(analyses.empty());
    }
}
