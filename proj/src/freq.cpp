#include "eogec/freq.hpp"

#include "eogec/unicode.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace eogec::freq {

FreqTable FreqTable::from_counts(const std::map<std::string, std::uint64_t>& counts) {
    FreqTable table;
    for (const auto& [key, count] : counts) {
        if (count == 0) continue;
        table.items.push_back({key, count, 0});
        table.total += count;
    }
    std::sort(table.items.begin(), table.items.end(),
              [](const Entry& a, const Entry& b) {
                  return a.count != b.count ? a.count > b.count : a.key < b.key;
              });
    for (std::size_t i = 0; i < table.items.size(); ++i)
        table.items[i].rank = i + 1;
    return table;
}

FreqTable letter_frequencies(std::string_view input, LetterSet set) {
    const text::Alphabet& ab = text::Alphabet::instance();
    std::map<std::string, std::uint64_t> counts;
    for (char32_t cp : uni::decode(input)) {
        char32_t l = ab.to_lower(cp);
        bool az = l >= U'a' && l <= U'z';
        bool keep = set == LetterSet::Esperanto ? ab.is_eo_letter_lower(l)
                    : set == LetterSet::LatinAZ ? az
                                                : (az || ab.is_eo_letter_lower(l));
        if (!keep) continue;
        std::string key;
        uni::encode(l, key);
        ++counts[key];
    }
    return FreqTable::from_counts(counts);
}

namespace {

void count_words(std::string_view line, std::map<std::string, std::uint64_t>& counts,
                 const WordFreqOptions& opts, const morph::Lexicon& lexicon) {
    for (const text::Token& tok : text::tokenize(line)) {
        if (tok.kind == text::TokenKind::Punctuation) continue;
        if (tok.kind == text::TokenKind::Number && !opts.include_numbers) continue;
        if (opts.esperanto_only && tok.kind == text::TokenKind::Word &&
            !morph::is_esperanto_word(tok, lexicon))
            continue;
        ++counts[opts.lowercase ? tok.norm
                                : text::normalize_orthography(tok.surface)];
    }
}

} // namespace

FreqTable word_frequencies(std::istream& corpus, const WordFreqOptions& opts,
                           const morph::Lexicon& lexicon) {
    std::map<std::string, std::uint64_t> counts;
    std::string line;
    while (std::getline(corpus, line)) count_words(line, counts, opts, lexicon);
    return FreqTable::from_counts(counts);
}

FreqTable word_frequencies(std::string_view corpus, const WordFreqOptions& opts,
                           const morph::Lexicon& lexicon) {
    std::istringstream in{std::string(corpus)};
    return word_frequencies(in, opts, lexicon);
}

FreqTable filter_stopwords(const FreqTable& table,
                           const std::unordered_set<std::string>& stoplist) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& e : table.items)
        if (!stoplist.count(e.key)) counts[e.key] = e.count;
    return FreqTable::from_counts(counts);
}

double entropy(const FreqTable& table) {
    if (table.total == 0) throw EmptyDistribution("entropy of empty distribution");
    double h = 0.0;
    for (std::size_t i = 0; i < table.items.size(); ++i) {
        double p = table.relative(i);
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

ZipfFit zipf_fit(const FreqTable& table, std::size_t top_n) {
    if (top_n < 3) throw InsufficientData("zipf_fit needs top_n >= 3");
    if (table.items.size() < top_n)
        throw InsufficientData("zipf_fit: table has fewer than top_n entries");

    ZipfFit fit;
    fit.n_points = top_n;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs(top_n), ys(top_n);
    for (std::size_t i = 0; i < top_n; ++i) {
        xs[i] = std::log(static_cast<double>(table.items[i].rank));
        ys[i] = std::log(static_cast<double>(table.items[i].count));
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double n = static_cast<double>(top_n);
    double sxx_c = sxx - sx * sx / n;
    double sxy_c = sxy - sx * sy / n;
    if (sxx_c <= 0.0) throw InsufficientData("zipf_fit: degenerate rank axis");
    double slope = sxy_c / sxx_c;
    fit.log_k = (sy - slope * sx) / n;
    fit.slope_a = -slope;

    double ss_res = 0, ss_tot = 0, ymean = sy / n;
    for (std::size_t i = 0; i < top_n; ++i) {
        double pred = fit.log_k + slope * xs[i];
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }
    // All frequencies equal: slope 0 and r^2 defined as 0.
    fit.r_squared = ss_tot <= 0.0 ? 0.0 : 1.0 - ss_res / ss_tot;
    fit.std_err = top_n > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx_c) : 0.0;
    return fit;
}

std::vector<LetterComparison> compare_letter_frequencies(std::string_view corpus_a,
                                                         std::string_view corpus_b) {
    FreqTable a = letter_frequencies(corpus_a, LetterSet::Union);
    FreqTable b = letter_frequencies(corpus_b, LetterSet::Union);

    std::map<std::string, LetterComparison> merged;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        merged[a.items[i].key].letter = a.items[i].key;
        merged[a.items[i].key].rel_a = a.relative(i);
    }
    for (std::size_t i = 0; i < b.items.size(); ++i) {
        merged[b.items[i].key].letter = b.items[i].key;
        merged[b.items[i].key].rel_b = b.relative(i);
    }
    std::vector<LetterComparison> out;
    for (auto& [key, row] : merged) out.push_back(row);
    return out;
}

void write_freq_csv(std::ostream& out, const FreqTable& table) {
    out << "rank,key,count\n";
    for (const auto& e : table.items)
        out << e.rank << "," << e.key << "," << e.count << "\n";
}

void write_letter_comparison_csv(std::ostream& out,
                                 const std::vector<LetterComparison>& rows) {
    out << "letter,relfreq_a,relfreq_b\n";
    for (const auto& r : rows)
        out << r.letter << "," << r.rel_a << "," << r.rel_b << "\n";
}

void write_zipf_csv(std::ostream& out, const ZipfFit& fit) {
    // log_k is a natural-log intercept.
    out << "log_k,a,r2,stderr,n\n";
    out << fit.log_k << "," << fit.slope_a << "," << fit.r_squared << ","
        << fit.std_err << "," << fit.n_points << "\n";
}

FreqTable read_freq_csv(std::istream& in) {
    std::map<std::string, std::uint64_t> counts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("rank,", 0) == 0) continue;
        }
        std::size_t c1 = line.find(',');
        std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("malformed frequency CSV line: " + line);
        std::string key = line.substr(c1 + 1, c2 - c1 - 1);
        counts[key] += std::stoull(line.substr(c2 + 1));
    }
    return FreqTable::from_counts(counts);
}

} // namespace eogec::freq
