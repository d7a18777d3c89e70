#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eogec/freq.hpp"

#include <cmath>
#include <sstream>

using namespace eogec;
using namespace eogec::freq;

TEST_CASE("FreqTable invariants: ranks, totals, ordering") {
    std::map<std::string, std::uint64_t> counts = {
        {"la", 10}, {"kaj", 10}, {"mi", 3}, {"hundo", 1}};
    FreqTable t = FreqTable::from_counts(counts);
    REQUIRE(t.items.size() == 4);
    CHECK(t.total == 24);
    CHECK(t.items[0].rank == 1);
    // ties broken lexicographically
    CHECK(t.items[0].key == "kaj");
    CHECK(t.items[1].key == "la");
    double sum = 0;
    for (std::size_t i = 0; i < t.items.size(); ++i) {
        CHECK(t.items[i].rank == i + 1);
        if (i) CHECK(t.items[i - 1].count >= t.items[i].count);
        sum += t.relative(i);
    }
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("letter frequency sets") {
    std::string text = "ĉu la knabo what?";
    FreqTable eo = letter_frequencies(text, LetterSet::Esperanto);
    for (const auto& e : eo.items) CHECK(e.key != "w");
    FreqTable latin = letter_frequencies(text, LetterSet::LatinAZ);
    bool has_w = false, has_hat = false;
    for (const auto& e : latin.items) {
        if (e.key == "w") has_w = true;
        if (e.key == "ĉ") has_hat = true;
    }
    CHECK(has_w);
    CHECK_FALSE(has_hat);
    FreqTable both = letter_frequencies(text, LetterSet::Union);
    std::uint64_t w = 0, hat = 0;
    for (const auto& e : both.items) {
        if (e.key == "w") w = e.count;
        if (e.key == "ĉ") hat = e.count;
    }
    CHECK(w == 1);
    CHECK(hat == 1);
}

TEST_CASE("word frequencies respect options") {
    std::string corpus = "La hundo kaj la kato kaj la 7 hundoj the dog";
    FreqTable all = word_frequencies(corpus);
    std::uint64_t la = 0, the = 0, seven = 0;
    for (const auto& e : all.items) {
        if (e.key == "la") la = e.count;
        if (e.key == "the") the = e.count;
        if (e.key == "7") seven = e.count;
    }
    CHECK(la == 3); // case-folded
    CHECK(the == 1);
    CHECK(seven == 0); // numbers excluded by default

    WordFreqOptions eo_only;
    eo_only.esperanto_only = true;
    FreqTable eo = word_frequencies(corpus, eo_only);
    // "the" happens to look like an e-adverb, so only shape-violating words
    // ("dog" has no Esperanto ending) are guaranteed to drop out.
    for (const auto& e : eo.items) CHECK(e.key != "dog");

    WordFreqOptions with_numbers;
    with_numbers.include_numbers = true;
    FreqTable num = word_frequencies(corpus, with_numbers);
    bool found7 = false;
    for (const auto& e : num.items) found7 |= e.key == "7";
    CHECK(found7);
}

TEST_CASE("stopword filtering") {
    FreqTable t = word_frequencies("la hundo la kato la");
    FreqTable f = filter_stopwords(t, {"la"});
    for (const auto& e : f.items) CHECK(e.key != "la");
    CHECK(f.total == 2);
    CHECK(f.items[0].rank == 1); // ranks recomputed
}

TEST_CASE("entropy of a uniform 28-way distribution is log2 28") {
    std::map<std::string, std::uint64_t> counts;
    for (int i = 0; i < 28; ++i) counts["l" + std::to_string(i)] = 5;
    double h = entropy(FreqTable::from_counts(counts));
    CHECK(std::abs(h - std::log2(28.0)) < 1e-12);

    // Degenerate distribution has zero entropy.
    double h1 = entropy(FreqTable::from_counts({{"a", 99}}));
    CHECK(h1 == doctest::Approx(0.0));

    CHECK_THROWS_AS(entropy(FreqTable{}), EmptyDistribution);
}

TEST_CASE("zipf fit recovers the exponent from synthetic data") {
    // [DERIVED] counts = round(1e6 * r^-0.88), r = 1..100
    std::map<std::string, std::uint64_t> counts;
    for (int r = 1; r <= 100; ++r) {
        char key[16];
        std::snprintf(key, sizeof key, "w%03d", r);
        counts[key] = static_cast<std::uint64_t>(
            std::llround(1e6 * std::pow(static_cast<double>(r), -0.88)));
    }
    ZipfFit fit = zipf_fit(FreqTable::from_counts(counts), 100);
    CHECK(fit.n_points == 100);
    CHECK(fit.slope_a >= 0.86);
    CHECK(fit.slope_a <= 0.90);
    CHECK(fit.r_squared >= 0.99);
    CHECK(fit.std_err >= 0.0);

    // Exact power law: the fit must be numerically perfect.
    std::vector<double> exact_f;
    std::map<std::string, std::uint64_t> big;
    for (int r = 1; r <= 100; ++r) {
        char key[16];
        std::snprintf(key, sizeof key, "w%03d", r);
        // Scale so rounding error is far below 1e-9 in log space.
        big[key] = static_cast<std::uint64_t>(
            std::llround(1e15 * std::pow(static_cast<double>(r), -0.88)));
    }
    ZipfFit exact = zipf_fit(FreqTable::from_counts(big), 100);
    CHECK(std::abs(exact.slope_a - 0.88) <= 1e-6);
    CHECK(exact.r_squared >= 1.0 - 1e-9);

    CHECK_THROWS_AS(zipf_fit(FreqTable::from_counts({{"a", 1}}), 10),
                    InsufficientData);
}

TEST_CASE("letter comparison uses the union letter set on both corpora") {
    auto rows = compare_letter_frequencies("ĉapelo kaj vorto", "the wicked witch");
    double sum_a = 0, sum_b = 0;
    bool hat = false, w = false;
    for (const auto& r : rows) {
        sum_a += r.rel_a;
        sum_b += r.rel_b;
        hat |= r.letter == "ĉ";
        w |= r.letter == "w";
    }
    CHECK(hat);
    CHECK(w);
    CHECK(sum_a == doctest::Approx(1.0));
    CHECK(sum_b == doctest::Approx(1.0));
}

TEST_CASE("frequency CSV round-trips") {
    FreqTable t = word_frequencies("la hundo la kato");
    std::ostringstream csv;
    write_freq_csv(csv, t);
    std::istringstream in(csv.str());
    FreqTable back = read_freq_csv(in);
    REQUIRE(back.items.size() == t.items.size());
    CHECK(back.total == t.total);
    for (std::size_t i = 0; i < t.items.size(); ++i) {
        CHECK(back.items[i].key == t.items[i].key);
        CHECK(back.items[i].count == t.items[i].count);
        CHECK(back.items[i].rank == t.items[i].rank);
    }
    std::ostringstream zipf_csv;
    write_zipf_csv(zipf_csv, ZipfFit{1.0, 0.88, 0.99, 0.01, 100});
    CHECK(zipf_csv.str().find("0.88") != std::string::npos);
}
