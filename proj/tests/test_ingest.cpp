#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eogec/ingest.hpp"
#include "test_util.hpp"

#include <cstdlib>
#include <filesystem>

using namespace eogec;
using namespace eogec::ingest;
namespace fs = std::filesystem;

TEST_CASE("language detection: declared metadata wins") {
    LanguageGuess eo = detect_language(testutil::slurp(testutil::fixture("book_eo1.html")));
    CHECK(eo.tag == "eo");
    CHECK(eo.confidence == doctest::Approx(1.0));
    LanguageGuess en = detect_language(testutil::slurp(testutil::fixture("book_en.html")));
    CHECK(en.tag == "en");
    CHECK(en.confidence == doctest::Approx(1.0));
}

TEST_CASE("language detection: Esperanto word-shape heuristic fallback") {
    // book_eo2.html declares no language at all.
    std::string html = testutil::slurp(testutil::fixture("book_eo2.html"));
    LanguageGuess g = detect_language(html);
    CHECK(g.tag == "eo");
    CHECK(g.confidence >= 0.6);
    CHECK(g.confidence <= 1.0);

    LanguageGuess none = detect_language("<html><body><p>xyz qrst zzz</p></body></html>");
    CHECK(none.tag != "eo");
}

TEST_CASE("conflicting declarations give 'mul'") {
    std::string html =
        "<html lang=\"eo\"><head><meta http-equiv=\"content-language\" "
        "content=\"en\"></head><body><p>ia</p></body></html>";
    CHECK(detect_language(html).tag == "mul");
}

TEST_CASE("paragraph extraction is tolerant and strips boilerplate") {
    std::string html = testutil::slurp(testutil::fixture("book_eo1.html"));
    auto paras = extract_paragraphs(html);
    REQUIRE(paras.size() == 5);
    // Entities decoded, whitespace collapsed.
    CHECK(paras[0].find("nomiĝis") != std::string::npos);
    CHECK(paras[0].find("«Travivitaj Rakontoj»") != std::string::npos);
    CHECK(paras[2].find("sian kaptitan") != std::string::npos); // "  " collapsed
    // Unclosed <p> before a block tag still terminates.
    CHECK(paras[3].find("digestado") != std::string::npos);
    for (const std::string& p : paras) {
        CHECK(p.find("Gutenberg") == std::string::npos);
        CHECK(p.find("*** START") == std::string::npos);
        CHECK(p.find("ne paragrafo") == std::string::npos); // script content skipped
        CHECK(p.find('<') == std::string::npos);
    }
}

TEST_CASE("entity decoding") {
    CHECK(decode_entities("a&amp;b &laquo;x&raquo; &#265; &#x109;") ==
          "a&b «x» ĉ ĉ");
    CHECK(decode_entities("&unknown; &") == "&unknown; &");
}

TEST_CASE("title extraction") {
    auto t = extract_title(testutil::slurp(testutil::fixture("book_eo2.html")));
    REQUIRE(t.has_value());
    CHECK(*t == "Fabeloj");
    CHECK_FALSE(extract_title("<html><body></body></html>").has_value());
}

TEST_CASE("manifest JSON round-trip") {
    CorpusManifest m;
    m.created_at = "2026-01-01T00:00:00Z";
    m.toolkit_version = "0.1.0";
    BookRecord ok{"b1", "Titolo", "b1.html", "eo", true, 3, 123, ""};
    BookRecord rej{"b2", "Title", "b2.html", "en", false, 0, 0, ""};
    BookRecord bad{"b3", "", "missing.html", "", false, 0, 0, "cannot open"};
    m.books = {ok, rej, bad};
    CHECK(m.accepted_count() == 1);
    CHECK(m.rejected_count() == 1);
    CHECK(m.failed_count() == 1);

    std::string json = manifest_to_json(m);
    CorpusManifest back = manifest_from_json(json);
    REQUIRE(back.books.size() == 3);
    CHECK(back.books[0].id == "b1");
    CHECK(back.books[0].paragraph_count == 3);
    CHECK(back.books[2].error == "cannot open");
    CHECK(manifest_to_json(back) == json);
}

TEST_CASE("build_corpus writes deterministic output and isolates failures") {
    setenv("SOURCE_DATE_EPOCH", "1756000000", 1);
    fs::path dir = fs::temp_directory_path() / "eogec_ingest_test";
    fs::remove_all(dir);

    std::vector<std::string> inputs = {
        testutil::fixture("book_eo1.html"), testutil::fixture("book_eo2.html"),
        testutil::fixture("book_en.html"), testutil::fixture("no_such_book.html")};
    CorpusManifest m = build_corpus(inputs, dir.string());
    CHECK(m.accepted_count() == 2);
    CHECK(m.rejected_count() == 1);
    CHECK(m.failed_count() == 1);
    CHECK(fs::exists(dir / "book_eo1.txt"));
    CHECK(fs::exists(dir / "book_eo2.txt"));
    CHECK_FALSE(fs::exists(dir / "book_en.txt"));
    CHECK(fs::exists(dir / "manifest.json"));

    std::string book1 = testutil::slurp((dir / "book_eo1.txt").string());
    CHECK(std::count(book1.begin(), book1.end(), '\n') == 5); // one paragraph per line
    std::string manifest1 = testutil::slurp((dir / "manifest.json").string());

    // Rerun into a fresh directory: byte-identical outputs.
    fs::path dir2 = fs::temp_directory_path() / "eogec_ingest_test2";
    fs::remove_all(dir2);
    build_corpus(inputs, dir2.string());
    CHECK(testutil::slurp((dir2 / "book_eo1.txt").string()) == book1);
    // Manifests differ only in recorded source paths, which are equal here.
    CHECK(testutil::slurp((dir2 / "manifest.json").string()) == manifest1);

    fs::remove_all(dir);
    fs::remove_all(dir2);
    unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("URL inputs are refused without fetch") {
    fs::path dir = fs::temp_directory_path() / "eogec_ingest_nofetch";
    fs::remove_all(dir);
    CorpusManifest m = build_corpus({"https://example.org/book.html"}, dir.string());
    REQUIRE(m.books.size() == 1);
    CHECK(m.failed_count() == 1);
    CHECK(m.books[0].error.find("--fetch") != std::string::npos);
    fs::remove_all(dir);
}
