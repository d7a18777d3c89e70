#include "eogec/align.hpp"

#include "eogec/unicode.hpp"

#include <algorithm>
#include <limits>

namespace eogec::align {

namespace {

constexpr double kEps = 1e-9;

enum class Move : unsigned char { None, Match, Substitute, Transpose, Merge, Delete, Insert };

} // namespace

double normalized_char_distance(std::string_view a, std::string_view b) {
    std::vector<char32_t> ca = uni::decode(a), cb = uni::decode(b);
    const std::size_t n = ca.size(), m = cb.size();
    if (n == 0 && m == 0) return 0.0;
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return static_cast<double>(prev[m]) / static_cast<double>(std::max(n, m));
}

double substitution_cost(const text::Token& src, const text::Token& tgt,
                         const morph::Lexicon& lexicon, const AlignCosts& costs) {
    if (src.norm == tgt.norm) return 0.0;
    morph::MorphAnalysis sa = morph::top_analysis(src, lexicon);
    morph::MorphAnalysis ta = morph::top_analysis(tgt, lexicon);
    if (!sa.root.empty() && sa.root == ta.root) return costs.sub_same_root;
    if (normalized_char_distance(src.norm, tgt.norm) <= costs.similar_threshold)
        return costs.sub_similar;
    return costs.sub_other;
}

EditScript extract_edit_script(const std::vector<text::Token>& src,
                               const std::vector<text::Token>& tgt,
                               const morph::Lexicon& lexicon,
                               const AlignCosts& costs) {
    const std::size_t n = src.size(), m = tgt.size();
    std::vector<std::vector<double>> d(n + 1, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 1; i <= n; ++i) d[i][0] = d[i - 1][0] + costs.delete_cost;
    for (std::size_t j = 1; j <= m; ++j) d[0][j] = d[0][j - 1] + costs.insert_cost;

    std::vector<std::vector<double>> sub(n + 1, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            sub[i][j] = substitution_cost(src[i - 1], tgt[j - 1], lexicon, costs);

    auto merge_len = [&](std::size_t i, std::size_t j) -> std::size_t {
        // longest k >= 2 with concat(src[i-k..i)) == tgt[j-1]
        if (j == 0) return 0;
        std::string concat;
        for (std::size_t k = 1; k <= costs.max_merge && k <= i; ++k) {
            concat = src[i - k].norm + concat;
            if (k >= 2 && concat == tgt[j - 1].norm) return k;
            if (concat.size() > tgt[j - 1].norm.size()) break;
        }
        return 0;
    };

    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            double best = d[i - 1][j - 1] + sub[i][j];
            best = std::min(best, d[i - 1][j] + costs.delete_cost);
            best = std::min(best, d[i][j - 1] + costs.insert_cost);
            if (i >= 2 && j >= 2 && src[i - 2].norm == tgt[j - 1].norm &&
                src[i - 1].norm == tgt[j - 2].norm &&
                src[i - 2].norm != src[i - 1].norm)
                best = std::min(best, d[i - 2][j - 2] + costs.transpose);
            if (std::size_t k = merge_len(i, j))
                best = std::min(best, d[i - k][j - 1] + costs.merge);
            d[i][j] = best;
        }
    }

    // Backtrace with a fixed preference order for deterministic output.
    std::vector<Edit> edits;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        auto is = [&](double via) {
            return d[i][j] >= via - kEps && d[i][j] <= via + kEps;
        };
        Move move = Move::None;
        std::size_t k = 0;
        if (i > 0 && j > 0 && src[i - 1].norm == tgt[j - 1].norm &&
            is(d[i - 1][j - 1])) {
            move = Move::Match;
        } else if (i > 0 && j > 0 && is(d[i - 1][j - 1] + sub[i][j])) {
            move = Move::Substitute;
        } else if (i >= 2 && j >= 2 && src[i - 2].norm == tgt[j - 1].norm &&
                   src[i - 1].norm == tgt[j - 2].norm &&
                   src[i - 2].norm != src[i - 1].norm &&
                   is(d[i - 2][j - 2] + costs.transpose)) {
            move = Move::Transpose;
        } else if ((k = merge_len(i, j)) != 0 &&
                   is(d[i - k][j - 1] + costs.merge)) {
            move = Move::Merge;
        } else if (i > 0 && is(d[i - 1][j] + costs.delete_cost)) {
            move = Move::Delete;
        } else {
            move = Move::Insert;
        }

        Edit e;
        switch (move) {
        case Move::Match:
            --i;
            --j;
            continue;
        case Move::Substitute:
            e.op = EditOp::Replace;
            e.src = {i - 1, i};
            e.tgt = {j - 1, j};
            e.src_tokens = {src[i - 1]};
            e.tgt_tokens = {tgt[j - 1]};
            --i;
            --j;
            break;
        case Move::Transpose:
            e.op = EditOp::Transpose;
            e.src = {i - 2, i};
            e.tgt = {j - 2, j};
            e.src_tokens = {src[i - 2], src[i - 1]};
            e.tgt_tokens = {tgt[j - 2], tgt[j - 1]};
            i -= 2;
            j -= 2;
            break;
        case Move::Merge:
            e.op = EditOp::Merge;
            e.src = {i - k, i};
            e.tgt = {j - 1, j};
            e.src_tokens.assign(src.begin() + (i - k), src.begin() + i);
            e.tgt_tokens = {tgt[j - 1]};
            i -= k;
            --j;
            break;
        case Move::Delete:
            e.op = EditOp::Unnecessary;
            e.src = {i - 1, i};
            e.tgt = {j, j};
            e.src_tokens = {src[i - 1]};
            --i;
            break;
        case Move::Insert:
            e.op = EditOp::Missing;
            e.src = {i, i}; // index of the following source token
            e.tgt = {j - 1, j};
            e.tgt_tokens = {tgt[j - 1]};
            --j;
            break;
        case Move::None:
            break;
        }
        edits.push_back(std::move(e));
    }
    std::reverse(edits.begin(), edits.end());
    return {std::move(edits), d[n][m]};
}

std::vector<Edit> extract_edits(const std::vector<text::Token>& src,
                                const std::vector<text::Token>& tgt,
                                const morph::Lexicon& lexicon,
                                const AlignCosts& costs) {
    return extract_edit_script(src, tgt, lexicon, costs).edits;
}

std::vector<text::Token> apply_edits(const std::vector<text::Token>& src,
                                     const std::vector<Edit>& edits) {
    std::vector<text::Token> out;
    std::size_t pos = 0;
    for (const Edit& e : edits) {
        if (e.src.end > src.size() || e.src.begin > e.src.end)
            throw SpanOutOfRange("edit span outside source sequence");
        if (e.src.begin < pos)
            throw OverlappingEdits("edits overlap or are out of order");
        for (; pos < e.src.begin; ++pos) out.push_back(src[pos]);
        if (e.op == EditOp::Transpose) {
            out.push_back(src[e.src.begin + 1]);
            out.push_back(src[e.src.begin]);
        } else {
            out.insert(out.end(), e.tgt_tokens.begin(), e.tgt_tokens.end());
        }
        pos = e.src.end;
    }
    for (; pos < src.size(); ++pos) out.push_back(src[pos]);
    return out;
}

} // namespace eogec::align
