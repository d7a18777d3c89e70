#include "eogec/classify.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace eogec::classify {

namespace {

const char* category_name(Category c) {
    switch (c) {
    case Category::Adj: return "ADJ";
    case Category::Adv: return "ADV";
    case Category::Conj: return "CONJ";
    case Category::Det: return "DET";
    case Category::Noun: return "NOUN";
    case Category::Prep: return "PREP";
    case Category::Pron: return "PRON";
    case Category::Punct: return "PUNCT";
    case Category::Verb: return "VERB";
    case Category::Table: return "TABLE";
    case Category::Morph: return "MORPH";
    case Category::Orth: return "ORTH";
    case Category::Spell: return "SPELL";
    case Category::WordOrder: return "WO";
    case Category::Other: return "OTHER";
    }
    return "OTHER";
}

const char* subtype_name(Subtype s) {
    switch (s) {
    case Subtype::Case: return "CASE";
    case Subtype::Num: return "NUM";
    case Subtype::Fix: return "FIX";
    case Subtype::Form: return "FORM";
    case Subtype::Sva: return "SVA";
    case Subtype::Tense: return "TENSE";
    case Subtype::None: return "";
    }
    return "";
}

bool subtype_legal(Category c, Subtype s) {
    switch (c) {
    case Category::Adj:
    case Category::Noun:
        return s == Subtype::Case || s == Subtype::Num || s == Subtype::Fix;
    case Category::Verb:
        return s == Subtype::Form || s == Subtype::Sva || s == Subtype::Tense;
    case Category::Adv:
        return s == Subtype::Case;
    case Category::Pron:
    case Category::Table:
        return s == Subtype::Case || s == Subtype::Num;
    default:
        return false;
    }
}

} // namespace

bool ErrorCode::is_legal() const {
    if (subtype != Subtype::None) {
        if (op != Operation::Replace) return false;
        return subtype_legal(category, subtype);
    }
    if (category == Category::Morph || category == Category::Orth ||
        category == Category::Spell || category == Category::WordOrder)
        return op == Operation::Replace;
    return true;
}

std::string ErrorCode::str() const {
    std::string s;
    s += op == Operation::Missing ? 'M' : op == Operation::Unnecessary ? 'U' : 'R';
    s += ':';
    s += category_name(category);
    if (subtype != Subtype::None) {
        s += ':';
        s += subtype_name(subtype);
    }
    return s;
}

std::optional<ErrorCode> ErrorCode::parse(std::string_view s) {
    ErrorCode code;
    std::size_t p1 = s.find(':');
    if (p1 == std::string_view::npos || p1 != 1) return std::nullopt;
    switch (s[0]) {
    case 'M': code.op = Operation::Missing; break;
    case 'U': code.op = Operation::Unnecessary; break;
    case 'R': code.op = Operation::Replace; break;
    default: return std::nullopt;
    }
    std::size_t p2 = s.find(':', p1 + 1);
    std::string_view cat = s.substr(p1 + 1, p2 == std::string_view::npos
                                                ? std::string_view::npos
                                                : p2 - p1 - 1);
    bool found = false;
    for (int c = 0; c <= static_cast<int>(Category::Other); ++c) {
        if (cat == category_name(static_cast<Category>(c))) {
            code.category = static_cast<Category>(c);
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;
    if (p2 != std::string_view::npos) {
        std::string_view sub = s.substr(p2 + 1);
        found = false;
        for (int t = 1; t <= static_cast<int>(Subtype::Tense); ++t) {
            if (sub == subtype_name(static_cast<Subtype>(t))) {
                code.subtype = static_cast<Subtype>(t);
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return code.is_legal() ? std::optional<ErrorCode>(code) : std::nullopt;
}

Category category_of(morph::Pos pos) {
    using morph::Pos;
    switch (pos) {
    case Pos::Noun: return Category::Noun;
    case Pos::Adjective: return Category::Adj;
    case Pos::Adverb: return Category::Adv;
    case Pos::Verb: return Category::Verb;
    case Pos::Pronoun: return Category::Pron;
    case Pos::Preposition: return Category::Prep;
    case Pos::Conjunction: return Category::Conj;
    case Pos::Determiner: return Category::Det;
    case Pos::Punct: return Category::Punct;
    case Pos::Table: return Category::Table;
    case Pos::Number: return Category::Other; // no numeral category in the scheme
    case Pos::Other: return Category::Other;
    }
    return Category::Other;
}

namespace {

bool is_finite(morph::VerbForm f) {
    return f == morph::VerbForm::Present || f == morph::VerbForm::Past ||
           f == morph::VerbForm::Future || f == morph::VerbForm::Conditional ||
           f == morph::VerbForm::Volitive;
}

bool affixes_differ(const morph::MorphAnalysis& a, const morph::MorphAnalysis& b) {
    return a.prefixes != b.prefixes || a.suffixes != b.suffixes ||
           a.participle != b.participle;
}

// A word whose analysis is backed by a closed system; such tokens are never
// spelling candidates.
bool closed_system_pos(morph::Pos pos) {
    using morph::Pos;
    return pos == Pos::Pronoun || pos == Pos::Preposition ||
           pos == Pos::Conjunction || pos == Pos::Determiner ||
           pos == Pos::Table || pos == Pos::Number || pos == Pos::Punct;
}

double token_overlap(const std::vector<text::Token>& a,
                     const std::vector<text::Token>& b) {
    if (a.empty() || b.empty()) return 0.0;
    std::multiset<std::string> bs;
    for (const auto& t : b) bs.insert(t.norm);
    std::size_t shared = 0;
    for (const auto& t : a) {
        auto it = bs.find(t.norm);
        if (it != bs.end()) {
            bs.erase(it);
            ++shared;
        }
    }
    return static_cast<double>(shared) /
           static_cast<double>(std::max(a.size(), b.size()));
}

std::optional<ErrorCode> replace_subtype(const morph::MorphAnalysis& sa,
                                         const morph::MorphAnalysis& ta,
                                         const ClassifyContext& ctx) {
    using morph::Pos;
    auto code = [](Category c, Subtype s) {
        return ErrorCode{Operation::Replace, c, s};
    };

    if (sa.pos == Pos::Table) {
        if (sa.table && ta.table && sa.table->prefix == ta.table->prefix &&
            sa.table->ending == ta.table->ending) {
            bool case_diff = sa.gram_case != ta.gram_case;
            bool num_diff = sa.number != ta.number;
            if (case_diff && !num_diff) return code(Category::Table, Subtype::Case);
            if (num_diff && !case_diff) return code(Category::Table, Subtype::Num);
            return code(Category::Table, Subtype::None);
        }
        return code(Category::Table, Subtype::None); // prefix/ending change
    }

    if (sa.root != ta.root || sa.root.empty()) return std::nullopt;

    if (sa.pos == Pos::Verb) {
        if (sa.verb_form != ta.verb_form) {
            if (sa.verb_form == morph::VerbForm::Infinitive &&
                ta.verb_form == morph::VerbForm::Present && ctx.subject_precedes)
                return code(Category::Verb, Subtype::Sva);
            if (is_finite(sa.verb_form) && is_finite(ta.verb_form))
                return code(Category::Verb, Subtype::Tense);
            return code(Category::Verb, Subtype::Form);
        }
        if (affixes_differ(sa, ta)) return code(Category::Verb, Subtype::None);
        return std::nullopt;
    }

    bool case_diff = sa.gram_case != ta.gram_case;
    bool num_diff = sa.number != ta.number;
    Category cat = category_of(sa.pos);
    if (case_diff && num_diff) return code(cat, Subtype::None); // compound change
    if (case_diff && subtype_legal(cat, Subtype::Case))
        return code(cat, Subtype::Case);
    if (num_diff && subtype_legal(cat, Subtype::Num))
        return code(cat, Subtype::Num);
    if (affixes_differ(sa, ta) && subtype_legal(cat, Subtype::Fix))
        return code(cat, Subtype::Fix);
    return std::nullopt;
}

} // namespace

ErrorCode classify_edit(const align::Edit& edit,
                        const std::vector<morph::MorphAnalysis>& src_an,
                        const std::vector<morph::MorphAnalysis>& tgt_an,
                        const ClassifyContext& ctx) {
    ErrorCode result{Operation::Replace, Category::Other, Subtype::None};

    switch (edit.op) {
    case align::EditOp::Transpose:
        result = {Operation::Replace, Category::WordOrder, Subtype::None};
        break;
    case align::EditOp::Merge:
        result = {Operation::Replace, Category::Orth, Subtype::None};
        break;
    case align::EditOp::Missing:
        result = {Operation::Missing,
                  tgt_an.empty() ? Category::Other : category_of(tgt_an.front().pos),
                  Subtype::None};
        break;
    case align::EditOp::Unnecessary:
        result = {Operation::Unnecessary,
                  src_an.empty() ? Category::Other : category_of(src_an.front().pos),
                  Subtype::None};
        break;
    case align::EditOp::Replace: {
        if (edit.src_tokens.size() != 1 || edit.tgt_tokens.size() != 1) {
            double overlap = token_overlap(edit.src_tokens, edit.tgt_tokens);
            if (overlap < ctx.other_overlap || tgt_an.empty()) {
                result = {Operation::Replace, Category::Other, Subtype::None};
            } else {
                result = {Operation::Replace, category_of(tgt_an.front().pos),
                          Subtype::None};
            }
            break;
        }
        const morph::MorphAnalysis& sa = src_an.front();
        const morph::MorphAnalysis& ta = tgt_an.front();
        if (sa.pos == ta.pos) {
            if (auto sub = replace_subtype(sa, ta, ctx)) {
                result = *sub;
                break;
            }
        }
        if (sa.pos != ta.pos && !sa.root.empty() && sa.root == ta.root) {
            result = {Operation::Replace, Category::Morph, Subtype::None};
            break;
        }
        bool src_known = closed_system_pos(sa.pos) ||
                         (sa.pos != morph::Pos::Other &&
                          ctx.lexicon->is_known_root(sa.root));
        if (!src_known &&
            align::normalized_char_distance(edit.src_tokens[0].norm,
                                            edit.tgt_tokens[0].norm) <=
                ctx.spell_threshold) {
            result = {Operation::Replace, Category::Spell, Subtype::None};
            break;
        }
        if (sa.pos == ta.pos) {
            result = {Operation::Replace, category_of(sa.pos), Subtype::None};
        } else {
            result = {Operation::Replace, category_of(ta.pos), Subtype::None};
        }
        break;
    }
    }

    if (!result.is_legal())
        throw IllegalCombination("classify_edit produced " + result.str());
    return result;
}

const char* to_string(Provenance p) {
    switch (p) {
    case Provenance::TyceTextbook: return "TYCE";
    case Provenance::Pmeg: return "PMEG";
    case Provenance::UserWriting: return "UserWriting";
    case Provenance::NiveloAlNivelo: return "NiveloAlNivelo";
    case Provenance::Other: return "Other";
    }
    return "Other";
}

const char* to_string(Quality q) {
    switch (q) {
    case Quality::Good: return "GOOD";
    case Quality::Acceptable: return "ACCEPTABLE";
    case Quality::Poor: return "POOR";
    }
    return "POOR";
}

std::optional<Provenance> parse_provenance(std::string_view s) {
    for (Provenance p : {Provenance::TyceTextbook, Provenance::Pmeg,
                         Provenance::UserWriting, Provenance::NiveloAlNivelo,
                         Provenance::Other})
        if (s == to_string(p)) return p;
    return std::nullopt;
}

namespace {

bool subject_before(const std::vector<text::Token>& tokens,
                    const std::vector<morph::MorphAnalysis>& analyses,
                    std::size_t index) {
    using morph::Pos;
    for (std::size_t i = index; i-- > 0;) {
        const morph::MorphAnalysis& an = analyses[i];
        if (an.pos == Pos::Punct || an.pos == Pos::Conjunction) return false;
        bool nominal = (an.pos == Pos::Pronoun && an.root == tokens[i].norm) ||
                       an.pos == Pos::Noun ||
                       (an.pos == Pos::Table && an.table &&
                        (an.table->ending == "o" || an.table->ending == "u"));
        if (nominal && an.gram_case == morph::Case::Nominative) return true;
    }
    return false;
}

std::vector<Annotation> order_annotations(std::vector<Annotation> annotations) {
    std::stable_sort(annotations.begin(), annotations.end(),
                     [](const Annotation& a, const Annotation& b) {
                         auto group = [](const Annotation& x) {
                             switch (x.code.op) {
                             case Operation::Replace: return 0;
                             case Operation::Unnecessary: return 1;
                             case Operation::Missing: return 2;
                             }
                             return 2;
                         };
                         int ga = group(a), gb = group(b);
                         if (ga != gb) return ga < gb;
                         return a.edit.src.begin < b.edit.src.begin;
                     });
    return annotations;
}

} // namespace

AnnotatedSentence annotate(std::string_view source, std::string_view target,
                           const morph::Lexicon& lexicon) {
    AnnotatedSentence out;
    out.source = text::tokenize(text::normalize_orthography(source));
    out.target = text::tokenize(text::normalize_orthography(target));

    std::vector<morph::MorphAnalysis> src_an, tgt_an;
    src_an.reserve(out.source.size());
    for (const auto& t : out.source) src_an.push_back(morph::top_analysis(t, lexicon));
    tgt_an.reserve(out.target.size());
    for (const auto& t : out.target) tgt_an.push_back(morph::top_analysis(t, lexicon));

    for (const align::Edit& e :
         align::extract_edits(out.source, out.target, lexicon)) {
        std::vector<morph::MorphAnalysis> es(src_an.begin() + e.src.begin,
                                             src_an.begin() + e.src.end);
        std::vector<morph::MorphAnalysis> et(tgt_an.begin() + e.tgt.begin,
                                             tgt_an.begin() + e.tgt.end);
        ClassifyContext ctx;
        ctx.lexicon = &lexicon;
        ctx.subject_precedes = subject_before(out.source, src_an, e.src.begin);
        out.annotations.push_back({e, classify_edit(e, es, et, ctx)});
    }
    out.annotations = order_annotations(std::move(out.annotations));
    return out;
}

// --- serialization --------------------------------------------------------

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream iss{std::string(line)};
    std::string w;
    while (iss >> w) out.push_back(w);
    return out;
}

std::string join_tokens(const std::vector<text::Token>& tokens) {
    return text::join_surfaces(tokens);
}

} // namespace

void write_m2(std::ostream& out, const std::vector<AnnotatedSentence>& sentences) {
    for (const AnnotatedSentence& s : sentences) {
        out << "S " << join_tokens(s.source) << "\n";
        for (const Annotation& a : s.annotations) {
            out << "A " << a.edit.src.begin << " " << a.edit.src.end << "|||"
                << a.code.str() << "|||" << join_tokens(a.edit.tgt_tokens)
                << "|||REQUIRED|||-NONE-|||0\n";
        }
        out << "\n";
    }
}

std::vector<AnnotatedSentence> read_m2(std::istream& in) {
    std::vector<AnnotatedSentence> out;
    AnnotatedSentence cur;
    bool have = false;
    std::string line;
    auto flush = [&] {
        if (have) {
            if (cur.target.empty()) {
                std::vector<align::Edit> edits;
                for (const Annotation& a : cur.annotations) edits.push_back(a.edit);
                std::stable_sort(edits.begin(), edits.end(),
                                 [](const align::Edit& a, const align::Edit& b) {
                                     return a.src.begin < b.src.begin;
                                 });
                cur.target = align::apply_edits(cur.source, edits);
            }
            out.push_back(std::move(cur));
        }
        cur = {};
        have = false;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        if (line.rfind("S ", 0) == 0) {
            flush();
            cur.source = text::tokens_from_words(split_ws(line.substr(2)));
            have = true;
        } else if (line.rfind("A ", 0) == 0) {
            std::string body = line.substr(2);
            std::vector<std::string> fields;
            std::size_t pos = 0;
            while (true) {
                std::size_t next = body.find("|||", pos);
                fields.push_back(body.substr(
                    pos, next == std::string::npos ? std::string::npos : next - pos));
                if (next == std::string::npos) break;
                pos = next + 3;
            }
            if (fields.size() < 3)
                throw std::runtime_error("malformed M2 annotation line: " + line);
            std::istringstream span(fields[0]);
            Annotation a;
            span >> a.edit.src.begin >> a.edit.src.end;
            if (span.fail())
                throw std::runtime_error("malformed M2 span: " + line);
            auto code = ErrorCode::parse(fields[1]);
            if (!code)
                throw std::runtime_error("unknown error code: " + fields[1]);
            a.code = *code;
            a.edit.tgt_tokens = text::tokens_from_words(split_ws(fields[2]));
            a.edit.src_tokens.assign(cur.source.begin() + a.edit.src.begin,
                                     cur.source.begin() +
                                         std::min(a.edit.src.end, cur.source.size()));
            if (a.edit.src.begin == a.edit.src.end)
                a.edit.op = align::EditOp::Missing;
            else if (a.edit.tgt_tokens.empty())
                a.edit.op = align::EditOp::Unnecessary;
            else if (a.code.category == Category::WordOrder)
                a.edit.op = align::EditOp::Transpose;
            else if (a.code.category == Category::Orth &&
                     a.edit.src.size() >= 2 && a.edit.tgt_tokens.size() == 1)
                a.edit.op = align::EditOp::Merge;
            else
                a.edit.op = align::EditOp::Replace;
            cur.annotations.push_back(std::move(a));
        }
    }
    flush();
    return out;
}

void write_paper_style(std::ostream& out,
                       const std::vector<AnnotatedSentence>& sentences) {
    for (const AnnotatedSentence& s : sentences) {
        out << "S " << join_tokens(s.source) << "\n";
        out << "T " << join_tokens(s.target) << "\n";
        for (const Annotation& a : s.annotations) {
            if (a.code.category == Category::WordOrder ||
                a.code.category == Category::Orth) {
                out << a.edit.src.begin << " " << (a.edit.src.end - 1) << " "
                    << a.code.str() << "\n";
            } else {
                out << a.edit.src.begin << " " << a.code.str() << "\n";
            }
        }
        out << "\n";
    }
}

std::vector<AnnotatedSentence> read_paper_style(std::istream& in,
                                                const morph::Lexicon& lexicon) {
    std::vector<AnnotatedSentence> out;
    std::string line;
    std::vector<std::string> block;
    auto flush = [&] {
        if (block.empty()) return;
        if (block.size() < 2 || block[0].rfind("S ", 0) != 0 ||
            block[1].rfind("T ", 0) != 0)
            throw std::runtime_error("malformed paper-style record");
        AnnotatedSentence s;
        s.source = text::tokens_from_words(split_ws(block[0].substr(2)));
        s.target = text::tokens_from_words(split_ws(block[1].substr(2)));
        std::vector<align::Edit> edits = align::extract_edits(s.source, s.target, lexicon);
        std::vector<Annotation> annotations;
        for (align::Edit& e : edits) annotations.push_back({std::move(e), {}});
        // Same R/U/M ordering as annotate(), so file lines match positionally.
        std::stable_sort(annotations.begin(), annotations.end(),
                         [](const Annotation& a, const Annotation& b) {
                             auto group = [](const align::Edit& e) {
                                 switch (e.op) {
                                 case align::EditOp::Unnecessary: return 1;
                                 case align::EditOp::Missing: return 2;
                                 default: return 0;
                                 }
                             };
                             int ga = group(a.edit), gb = group(b.edit);
                             if (ga != gb) return ga < gb;
                             return a.edit.src.begin < b.edit.src.begin;
                         });
        if (annotations.size() != block.size() - 2)
            throw std::runtime_error(
                "paper-style annotation count does not match the extracted edits");
        for (std::size_t i = 0; i < annotations.size(); ++i) {
            std::vector<std::string> fields = split_ws(block[i + 2]);
            if (fields.size() < 2)
                throw std::runtime_error("malformed paper-style annotation");
            auto code = ErrorCode::parse(fields.back());
            if (!code)
                throw std::runtime_error("unknown error code: " + fields.back());
            annotations[i].code = *code;
        }
        s.annotations = std::move(annotations);
        out.push_back(std::move(s));
        block.clear();
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty())
            flush();
        else
            block.push_back(line);
    }
    flush();
    return out;
}

// --- dataset statistics ---------------------------------------------------

namespace {

std::size_t word_count(const std::vector<text::Token>& tokens) {
    std::size_t n = 0;
    for (const auto& t : tokens)
        if (t.kind != text::TokenKind::Punctuation) ++n;
    return n;
}

std::vector<std::pair<std::string, std::size_t>>
sorted_histogram(const std::map<std::string, std::size_t>& counts) {
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(),
                                                         counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return out;
}

} // namespace

DatasetReport dataset_report(const std::vector<AnnotatedSentence>& sentences) {
    if (sentences.empty()) throw EmptyDataset("dataset_report on empty dataset");
    DatasetReport r;
    std::map<std::string, std::size_t> prov, codes, pos;
    std::size_t n_replace = 0, n_missing = 0, n_unnecessary = 0;
    double src_len = 0, tgt_len = 0;
    for (const AnnotatedSentence& s : sentences) {
        src_len += static_cast<double>(word_count(s.source));
        tgt_len += static_cast<double>(word_count(s.target));
        ++prov[to_string(s.provenance)];
        for (const Annotation& a : s.annotations) {
            ++codes[a.code.str()];
            switch (a.code.op) {
            case Operation::Replace: ++n_replace; break;
            case Operation::Missing: ++n_missing; break;
            case Operation::Unnecessary: ++n_unnecessary; break;
            }
            switch (a.code.category) {
            case Category::Morph:
            case Category::Orth:
            case Category::Spell:
            case Category::WordOrder:
            case Category::Other:
                break;
            default:
                ++pos[category_name(a.code.category)];
            }
        }
    }
    r.mean_source_length = src_len / static_cast<double>(sentences.size());
    r.mean_target_length = tgt_len / static_cast<double>(sentences.size());
    r.provenance_histogram = sorted_histogram(prov);
    r.code_histogram = sorted_histogram(codes);
    r.pos_category_histogram = sorted_histogram(pos);
    std::size_t total = n_replace + n_missing + n_unnecessary;
    if (total > 0) {
        r.replace_share = static_cast<double>(n_replace) / total;
        r.missing_share = static_cast<double>(n_missing) / total;
        r.unnecessary_share = static_cast<double>(n_unnecessary) / total;
    }
    return r;
}

void write_report_csv(std::ostream& out, const DatasetReport& r) {
    out << "section,key,value\n";
    out << "length,mean_source_length," << r.mean_source_length << "\n";
    out << "length,mean_target_length," << r.mean_target_length << "\n";
    out << "rmu,replace_share," << r.replace_share << "\n";
    out << "rmu,missing_share," << r.missing_share << "\n";
    out << "rmu,unnecessary_share," << r.unnecessary_share << "\n";
    for (const auto& [k, v] : r.provenance_histogram)
        out << "provenance," << k << "," << v << "\n";
    for (const auto& [k, v] : r.code_histogram)
        out << "code," << k << "," << v << "\n";
    for (const auto& [k, v] : r.pos_category_histogram)
        out << "pos," << k << "," << v << "\n";
}

} // namespace eogec::classify
