#include "eogec/score.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>

namespace eogec::score {

double fbeta(double precision, double recall, double beta) {
    double b2 = beta * beta;
    double denom = b2 * precision + recall;
    if (denom <= 0.0) return 0.0;
    return (1.0 + b2) * precision * recall / denom;
}

double ScoreReport::precision() const {
    std::size_t denom = counts.tp + counts.fp;
    return denom == 0 ? 1.0 : static_cast<double>(counts.tp) / denom;
}

double ScoreReport::recall() const {
    std::size_t denom = counts.tp + counts.fn;
    return denom == 0 ? 1.0 : static_cast<double>(counts.tp) / denom;
}

double ScoreReport::f_half() const { return fbeta(precision(), recall(), 0.5); }

namespace {

std::string edit_key(const classify::Annotation& a, ErrantMode mode) {
    std::string key = std::to_string(a.edit.src.begin) + ":" +
                      std::to_string(a.edit.src.end) + ":";
    for (const auto& t : a.edit.tgt_tokens) {
        key += t.norm;
        key += ' ';
    }
    if (mode == ErrantMode::SpanAndType) {
        key += '|';
        key += a.code.str();
    }
    return key;
}

bool same_source(const std::vector<text::Token>& a,
                 const std::vector<text::Token>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].norm != b[i].norm) return false;
    return true;
}

} // namespace

ScoreReport errant_score(const std::vector<classify::AnnotatedSentence>& hyp,
                         const std::vector<classify::AnnotatedSentence>& gold,
                         ErrantMode mode) {
    if (hyp.size() != gold.size())
        throw SourceMismatch("hypothesis and gold corpus sizes differ");
    ScoreReport report;
    for (std::size_t i = 0; i < hyp.size(); ++i) {
        if (!same_source(hyp[i].source, gold[i].source))
            throw SourceMismatch("source sentence " + std::to_string(i) +
                                 " differs between hypothesis and gold");
        std::multimap<std::string, const classify::Annotation*> gold_edits;
        for (const auto& a : gold[i].annotations)
            gold_edits.emplace(edit_key(a, mode), &a);
        for (const auto& a : hyp[i].annotations) {
            auto it = gold_edits.find(edit_key(a, mode));
            if (it != gold_edits.end()) {
                ++report.counts.tp;
                ++report.per_category[it->second->code.str()].tp;
                gold_edits.erase(it);
            } else {
                ++report.counts.fp;
                ++report.per_category[a.code.str()].fp;
            }
        }
        for (const auto& [key, a] : gold_edits) {
            ++report.counts.fn;
            ++report.per_category[a->code.str()].fn;
        }
    }
    return report;
}

namespace {

struct LatticeValue {
    long matches = -1;
    long edits = std::numeric_limits<long>::max();

    bool better_than(const LatticeValue& o) const {
        if (matches != o.matches) return matches > o.matches;
        return edits < o.edits;
    }
    bool reachable() const { return matches >= 0; }
};

} // namespace

Counts m2_score(const std::vector<text::Token>& src,
                const std::vector<text::Token>& hyp,
                const std::vector<classify::Annotation>& gold_edits,
                const M2Options& opts) {
    const std::size_t n = src.size(), m = hyp.size();
    // v[i][j][g]: best (matches, hyp-edit count) aligning src[0..i) with
    // hyp[0..j); g flags whether the previous move extended a generic edit
    // phrase (adjacent generic ops fuse into one hypothesis edit).
    std::vector<LatticeValue> v((n + 1) * (m + 1) * 2);
    auto at = [&](std::size_t i, std::size_t j, int g) -> LatticeValue& {
        return v[(i * (m + 1) + j) * 2 + g];
    };
    at(0, 0, 0) = {0, 0};

    std::vector<std::vector<const classify::Annotation*>> gold_at(n + 1);
    for (const auto& a : gold_edits) {
        if (a.edit.src.size() > opts.max_gold_span) continue;
        if (a.edit.src.begin <= n && a.edit.src.end <= n)
            gold_at[a.edit.src.begin].push_back(&a);
    }

    auto relax = [&](std::size_t i, std::size_t j, int g, LatticeValue cand) {
        if (cand.better_than(at(i, j, g))) at(i, j, g) = cand;
    };

    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) {
            for (int g = 0; g < 2; ++g) {
                LatticeValue cur = at(i, j, g);
                if (!cur.reachable()) continue;
                if (i < n && j < m && src[i].norm == hyp[j].norm)
                    relax(i + 1, j + 1, 0, cur);
                for (const classify::Annotation* a : gold_at[i]) {
                    std::size_t ls = a->edit.src.size();
                    std::size_t lr = a->edit.tgt_tokens.size();
                    if (ls == 0 && lr == 0) continue;
                    if (j + lr > m) continue;
                    bool ok = true;
                    for (std::size_t k = 0; k < lr; ++k)
                        if (hyp[j + k].norm != a->edit.tgt_tokens[k].norm) {
                            ok = false;
                            break;
                        }
                    if (ok && i + ls <= n)
                        relax(i + ls, j + lr, 0,
                              {cur.matches + 1, cur.edits + 1});
                }
                long extra = g ? 0 : 1;
                if (i < n && j < m)
                    relax(i + 1, j + 1, 1, {cur.matches, cur.edits + extra});
                if (i < n) relax(i + 1, j, 1, {cur.matches, cur.edits + extra});
                if (j < m) relax(i, j + 1, 1, {cur.matches, cur.edits + extra});
            }
        }
    }

    LatticeValue best = at(n, m, 0);
    if (at(n, m, 1).better_than(best)) best = at(n, m, 1);
    Counts c;
    if (best.reachable()) {
        c.tp = static_cast<std::size_t>(best.matches);
        c.fp = static_cast<std::size_t>(best.edits - best.matches);
    }
    c.fn = gold_edits.size() - c.tp;
    return c;
}

ScoreReport m2_score_corpus(const std::vector<std::vector<text::Token>>& srcs,
                            const std::vector<std::vector<text::Token>>& hyps,
                            const std::vector<classify::AnnotatedSentence>& gold,
                            const M2Options& opts) {
    if (srcs.size() != gold.size() || hyps.size() != gold.size())
        throw SourceMismatch("corpus sizes differ");
    ScoreReport report;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (!same_source(srcs[i], gold[i].source))
            throw SourceMismatch("source sentence " + std::to_string(i) +
                                 " differs between hypothesis and gold");
        report.counts += m2_score(srcs[i], hyps[i], gold[i].annotations, opts);
    }
    return report;
}

void write_scores_csv(std::ostream& out, const std::vector<MethodScores>& rows) {
    out << "method,errant_p,errant_r,errant_f05,m2_p,m2_r,m2_f05\n";
    out << std::fixed << std::setprecision(2);
    for (const MethodScores& r : rows) {
        out << r.method << "," << r.errant.precision() * 100.0 << ","
            << r.errant.recall() * 100.0 << "," << r.errant.f_half() * 100.0
            << "," << r.m2.precision() * 100.0 << "," << r.m2.recall() * 100.0
            << "," << r.m2.f_half() * 100.0 << "\n";
    }
}

void write_score_report(std::ostream& out, const std::string& name,
                        const ScoreReport& report) {
    out << name << ": TP=" << report.counts.tp << " FP=" << report.counts.fp
        << " FN=" << report.counts.fn << std::fixed << std::setprecision(2)
        << " P=" << report.precision() * 100.0 << " R=" << report.recall() * 100.0
        << " F0.5=" << report.f_half() * 100.0 << "\n";
    for (const auto& [cat, c] : report.per_category) {
        ScoreReport sub;
        sub.counts = c;
        out << "  " << cat << ": TP=" << c.tp << " FP=" << c.fp
            << " FN=" << c.fn << " P=" << sub.precision() * 100.0
            << " R=" << sub.recall() * 100.0 << " F0.5=" << sub.f_half() * 100.0
            << "\n";
    }
}

} // namespace eogec::score
