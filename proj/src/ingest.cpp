#include "eogec/ingest.hpp"

#include "eogec/text.hpp"
#include "eogec/unicode.hpp"
#include "eogec/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

namespace eogec::ingest {

namespace {

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    bool in_ws = true;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!in_ws) out.push_back(' ');
            in_ws = true;
        } else {
            out.push_back(c);
            in_ws = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

struct Tag {
    std::string name;   // lowercase
    bool closing = false;
    std::string raw;    // full tag body without angle brackets
};

// Tolerant tag scan: returns the position past the tag, or npos on a bare '<'.
std::size_t read_tag(std::string_view html, std::size_t pos, Tag& tag) {
    std::size_t end = html.find('>', pos + 1);
    if (end == std::string_view::npos) return std::string_view::npos;
    std::string_view body = html.substr(pos + 1, end - pos - 1);
    tag.raw = std::string(body);
    tag.closing = !body.empty() && body[0] == '/';
    if (tag.closing) body.remove_prefix(1);
    std::size_t name_end = 0;
    while (name_end < body.size() && !std::isspace(static_cast<unsigned char>(body[name_end])) &&
           body[name_end] != '/')
        ++name_end;
    tag.name = lower_ascii(body.substr(0, name_end));
    return end + 1;
}

std::optional<std::string> attr_value(const std::string& raw_lower,
                                      const std::string& attr) {
    std::size_t pos = raw_lower.find(attr + "=");
    if (pos == std::string::npos) return std::nullopt;
    pos += attr.size() + 1;
    if (pos >= raw_lower.size()) return std::nullopt;
    char quote = raw_lower[pos];
    if (quote == '"' || quote == '\'') {
        std::size_t end = raw_lower.find(quote, pos + 1);
        if (end == std::string::npos) return std::nullopt;
        return raw_lower.substr(pos + 1, end - pos - 1);
    }
    std::size_t end = pos;
    while (end < raw_lower.size() && !std::isspace(static_cast<unsigned char>(raw_lower[end])))
        ++end;
    return raw_lower.substr(pos, end - pos);
}

std::string primary_tag(std::string lang) {
    std::size_t dash = lang.find_first_of("-_");
    if (dash != std::string::npos) lang = lang.substr(0, dash);
    return lang;
}

} // namespace

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view name = s.substr(i + 1, semi - i - 1);
        if (!name.empty() && name[0] == '#') {
            char32_t cp = 0;
            bool ok = false;
            if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
                for (char c : name.substr(2)) {
                    if (!std::isxdigit(static_cast<unsigned char>(c))) { ok = false; break; }
                    cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(c))
                                        ? c - '0'
                                        : std::tolower(c) - 'a' + 10);
                    ok = true;
                }
            } else {
                for (char c : name.substr(1)) {
                    if (!std::isdigit(static_cast<unsigned char>(c))) { ok = false; break; }
                    cp = cp * 10 + (c - '0');
                    ok = true;
                }
            }
            if (ok && cp > 0) {
                uni::encode(cp, out);
                i = semi + 1;
                continue;
            }
        } else {
            static const std::pair<const char*, const char*> kEntities[] = {
                {"amp", "&"},   {"lt", "<"},     {"gt", ">"},    {"quot", "\""},
                {"apos", "'"},  {"nbsp", " "},   {"mdash", "—"}, {"ndash", "–"},
                {"laquo", "«"}, {"raquo", "»"},  {"hellip", "…"},
                {"hellip", "…"}, {"ldquo", "“"}, {"rdquo", "”"}, {"lsquo", "‘"},
                {"rsquo", "’"}, {"circ", "ˆ"},   {"uuml", "ü"},  {"eacute", "é"}};
            bool done = false;
            for (const auto& [n, repl] : kEntities) {
                if (name == n) {
                    out += repl;
                    i = semi + 1;
                    done = true;
                    break;
                }
            }
            if (done) continue;
        }
        out.push_back(s[i++]);
    }
    return out;
}

std::vector<std::string> extract_paragraphs(std::string_view html,
                                            const IngestOptions& opts) {
    if (html.empty()) throw UnreadableDocument("empty document");
    std::vector<std::regex> boiler;
    for (const std::string& pattern : opts.boilerplate_markers)
        boiler.emplace_back(pattern, std::regex::icase);

    std::vector<std::string> out;
    std::string current;
    bool in_p = false;

    auto flush = [&] {
        if (!in_p) return;
        std::string para = collapse_ws(decode_entities(current));
        current.clear();
        in_p = false;
        if (para.empty()) return;
        for (const std::regex& re : boiler)
            if (std::regex_search(para, re)) return;
        out.push_back(std::move(para));
    };

    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<') {
            if (in_p) current.push_back(html[i]);
            ++i;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            std::size_t end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        Tag tag;
        std::size_t next = read_tag(html, i, tag);
        if (next == std::string_view::npos) {
            if (in_p) current.push_back(html[i]);
            ++i;
            continue;
        }
        if (tag.name == "script" || tag.name == "style") {
            if (!tag.closing) {
                std::string close = "</" + tag.name;
                std::size_t end = lower_ascii(html.substr(next)).find(close);
                if (end == std::string::npos) {
                    i = html.size();
                    continue;
                }
                std::size_t gt = html.find('>', next + end);
                next = gt == std::string_view::npos ? html.size() : gt + 1;
            }
        } else if (tag.name == "p") {
            flush();
            if (!tag.closing) in_p = true;
        } else if (in_p && (tag.name == "div" || tag.name == "table" ||
                            tag.name == "h1" || tag.name == "h2" ||
                            tag.name == "h3" || tag.name == "body" ||
                            tag.name == "html")) {
            flush(); // block element implies the paragraph ended (unclosed <p>)
        } else if (in_p && (tag.name == "br")) {
            current.push_back(' ');
        }
        i = next;
    }
    flush();
    return out;
}

std::optional<std::string> extract_title(std::string_view html) {
    std::string lower = lower_ascii(html.substr(0, std::min<std::size_t>(html.size(), 8192)));
    std::size_t start = lower.find("<title");
    if (start == std::string::npos) return std::nullopt;
    start = lower.find('>', start);
    if (start == std::string::npos) return std::nullopt;
    std::size_t end = lower.find("</title", start);
    if (end == std::string::npos) return std::nullopt;
    return collapse_ws(decode_entities(html.substr(start + 1, end - start - 1)));
}

LanguageGuess detect_language(std::string_view html, const IngestOptions& opts,
                              const morph::Lexicon& lexicon) {
    if (html.empty()) throw UnreadableDocument("empty document");

    // Declared metadata near the head.
    std::string_view head = html.substr(0, std::min<std::size_t>(html.size(), 8192));
    std::vector<std::string> declared;
    std::size_t i = 0;
    while (i < head.size()) {
        if (head[i] != '<') {
            ++i;
            continue;
        }
        Tag tag;
        std::size_t next = read_tag(head, i, tag);
        if (next == std::string_view::npos) break;
        std::string raw = lower_ascii(tag.raw);
        if (!tag.closing) {
            if (auto v = attr_value(raw, "xml:lang"))
                declared.push_back(primary_tag(*v));
            else if (auto v2 = attr_value(raw, "lang"))
                declared.push_back(primary_tag(*v2));
            if (tag.name == "meta") {
                auto name = attr_value(raw, "name");
                auto equiv = attr_value(raw, "http-equiv");
                if ((name && (*name == "dc.language" || *name == "language")) ||
                    (equiv && *equiv == "content-language")) {
                    if (auto v = attr_value(raw, "content"))
                        declared.push_back(primary_tag(*v));
                }
            }
        }
        i = next;
    }
    if (!declared.empty()) {
        bool uniform = std::all_of(declared.begin(), declared.end(),
                                   [&](const std::string& t) { return t == declared[0]; });
        if (uniform) return {declared[0], 1.0};
        return {"mul", 1.0}; // conflicting declarations: mixed-language document
    }

    // Heuristic: share of valid Esperanto word endings in the body.
    std::size_t words = 0, eo_words = 0;
    for (const std::string& para : extract_paragraphs(html, opts)) {
        for (const text::Token& tok :
             text::tokenize(text::normalize_orthography(para))) {
            if (tok.kind != text::TokenKind::Word) continue;
            ++words;
            if (morph::is_esperanto_word(tok, lexicon)) ++eo_words;
            if (words >= opts.heuristic_tokens) break;
        }
        if (words >= opts.heuristic_tokens) break;
    }
    if (words == 0) return {"und", 0.0};
    double ratio = static_cast<double>(eo_words) / static_cast<double>(words);
    return {ratio >= opts.lang_threshold ? "eo" : "und", ratio};
}

std::size_t CorpusManifest::accepted_count() const {
    return static_cast<std::size_t>(
        std::count_if(books.begin(), books.end(),
                      [](const BookRecord& b) { return b.accepted && b.error.empty(); }));
}

std::size_t CorpusManifest::rejected_count() const {
    return static_cast<std::size_t>(
        std::count_if(books.begin(), books.end(),
                      [](const BookRecord& b) { return !b.accepted && b.error.empty(); }));
}

std::size_t CorpusManifest::failed_count() const {
    return static_cast<std::size_t>(
        std::count_if(books.begin(), books.end(),
                      [](const BookRecord& b) { return !b.error.empty(); }));
}

std::string manifest_to_json(const CorpusManifest& manifest) {
    nlohmann::json j;
    j["created_at"] = manifest.created_at;
    j["toolkit_version"] = manifest.toolkit_version;
    j["accepted"] = manifest.accepted_count();
    j["rejected"] = manifest.rejected_count();
    j["failed"] = manifest.failed_count();
    j["books"] = nlohmann::json::array();
    for (const BookRecord& b : manifest.books) {
        nlohmann::json jb;
        jb["id"] = b.id;
        jb["title"] = b.title;
        jb["source"] = b.source;
        jb["language"] = b.language;
        jb["accepted"] = b.accepted;
        jb["paragraph_count"] = b.paragraph_count;
        jb["byte_count"] = b.byte_count;
        if (!b.error.empty()) jb["error"] = b.error;
        j["books"].push_back(std::move(jb));
    }
    return j.dump(2) + "\n";
}

CorpusManifest manifest_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    CorpusManifest m;
    m.created_at = j.value("created_at", "");
    m.toolkit_version = j.value("toolkit_version", "");
    for (const auto& jb : j.value("books", nlohmann::json::array())) {
        BookRecord b;
        b.id = jb.value("id", "");
        b.title = jb.value("title", "");
        b.source = jb.value("source", "");
        b.language = jb.value("language", "");
        b.accepted = jb.value("accepted", false);
        b.paragraph_count = jb.value("paragraph_count", std::size_t{0});
        b.byte_count = jb.value("byte_count", std::size_t{0});
        b.error = jb.value("error", "");
        m.books.push_back(std::move(b));
    }
    return m;
}

namespace {

std::string book_id(const std::string& input) {
    std::string name = input;
    std::size_t slash = name.find_last_of("/\\");
    if (slash != std::string::npos) name = name.substr(slash + 1);
    std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    if (name.empty()) name = "book";
    return name;
}

std::string iso_timestamp() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    }
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

bool is_url(const std::string& input) {
    return input.rfind("http://", 0) == 0 || input.rfind("https://", 0) == 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnreadableDocument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fetch_url(const std::string& url, const std::string& cache_dir,
                      int rate_limit_ms);

} // namespace

CorpusManifest build_corpus(const std::vector<std::string>& inputs,
                            const std::string& out_dir, const IngestOptions& opts,
                            const morph::Lexicon& lexicon) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    CorpusManifest manifest;
    manifest.created_at = iso_timestamp();
    manifest.toolkit_version = kVersion;

    for (const std::string& input : inputs) {
        BookRecord rec;
        rec.id = book_id(input);
        rec.source = input;
        try {
            std::string html;
            if (is_url(input)) {
                if (!opts.fetch)
                    throw UnreadableDocument("URL input without --fetch: " + input);
                html = fetch_url(input, out_dir + "/.cache", opts.rate_limit_ms);
            } else {
                html = read_file(input);
            }
            if (auto title = extract_title(html)) rec.title = *title;
            LanguageGuess guess = detect_language(html, opts, lexicon);
            rec.language = guess.tag;
            rec.accepted = guess.tag == "eo";
            if (rec.accepted) {
                std::vector<std::string> paragraphs = extract_paragraphs(html, opts);
                if (paragraphs.empty()) {
                    rec.accepted = false;
                } else {
                    std::string body;
                    for (const std::string& p : paragraphs) {
                        body += p;
                        body += '\n';
                    }
                    std::ofstream out(fs::path(out_dir) / (rec.id + ".txt"),
                                      std::ios::binary);
                    out << body;
                    rec.paragraph_count = paragraphs.size();
                    rec.byte_count = body.size();
                }
            }
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        manifest.books.push_back(std::move(rec));
    }

    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    mf << manifest_to_json(manifest);
    return manifest;
}

} // namespace eogec::ingest

// httplib drags in a lot; keep it out of the common path above.
#include <httplib.h>

namespace eogec::ingest {
namespace {

std::string fetch_url(const std::string& url, const std::string& cache_dir,
                      int rate_limit_ms) {
    namespace fs = std::filesystem;
    fs::create_directories(cache_dir);
    std::size_t h = std::hash<std::string>{}(url);
    std::ostringstream name;
    name << std::hex << h << ".html";
    fs::path cached = fs::path(cache_dir) / name.str();
    if (fs::exists(cached)) return read_file(cached.string());

    std::size_t scheme_end = url.find("://") + 3;
    std::size_t path_start = url.find('/', scheme_end);
    std::string origin = url.substr(0, path_start == std::string::npos
                                           ? std::string::npos
                                           : path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    static std::chrono::steady_clock::time_point last_fetch;
    auto since = std::chrono::steady_clock::now() - last_fetch;
    auto wait = std::chrono::milliseconds(rate_limit_ms) - since;
    if (wait.count() > 0) std::this_thread::sleep_for(wait);
    last_fetch = std::chrono::steady_clock::now();

    httplib::Client client(origin);
    client.set_follow_location(true);
    auto res = client.Get(path);
    if (!res || res->status != 200)
        throw UnreadableDocument("fetch failed for " + url);

    fs::path tmp = cached;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << res->body;
    }
    fs::rename(tmp, cached);
    return res->body;
}

} // namespace
} // namespace eogec::ingest
