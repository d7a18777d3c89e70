#include "eogec/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

namespace eogec::harness {

PromptTemplate PromptTemplate::defaults(int shots) {
    PromptTemplate t;
    t.shots = shots;
    // Editable best-effort wording; see data/prompt_template.json.
    t.instruction =
        "You are an Esperanto grammar error correction tool. Correct the "
        "grammatical errors in the following sentence and output only the "
        "corrected sentence.";
    static const ExamplePair kExamples[] = {
        {"Mi loĝi en Romo .", "Mi loĝas en Romo ."},
        {"Ĉiunj jaroj ni vizitas nian fratinon en Aŭstralio .",
         "Ĉiun jaron ni vizitas nian fratinon en Aŭstralio ."},
        {"Li devas estas hejme .", "Li devas esti hejme ."},
        {"Mi vidas la filoj .", "Mi vidas la filojn ."},
        {"Ŝi iras al la lernejo ĉiu tago .", "Ŝi iras al la lernejo ĉiun tagon ."}};
    for (int i = 0; i < shots && i < 5; ++i) t.examples.push_back(kExamples[i]);
    return t;
}

PromptTemplate PromptTemplate::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prompt template " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    PromptTemplate t;
    t.shots = j.value("shots", 0);
    t.instruction = j.value("instruction", "");
    for (const auto& e : j.value("examples", nlohmann::json::array()))
        t.examples.push_back({e.value("source", ""), e.value("target", "")});
    return t;
}

void PromptTemplate::save(const std::string& path) const {
    nlohmann::json j;
    j["shots"] = shots;
    j["instruction"] = instruction;
    j["examples"] = nlohmann::json::array();
    for (const auto& e : examples)
        j["examples"].push_back({{"source", e.source}, {"target", e.target}});
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

std::string build_prompt(const PromptTemplate& tmpl, const std::string& input) {
    if (static_cast<int>(tmpl.examples.size()) < tmpl.shots)
        throw MissingExamples("template provides " +
                              std::to_string(tmpl.examples.size()) +
                              " example pairs for " + std::to_string(tmpl.shots) +
                              " shots");
    std::string prompt = tmpl.instruction;
    prompt += "\n";
    for (int i = 0; i < tmpl.shots; ++i) {
        prompt += "\nSource: " + tmpl.examples[i].source;
        prompt += "\nTarget: " + tmpl.examples[i].target;
    }
    prompt += "\nSource: " + input;
    prompt += "\nTarget:";
    return prompt;
}

void EndpointConfig::apply_environment() {
    if (url.empty())
        if (const char* v = std::getenv("EOG_API_URL")) url = v;
    if (api_key.empty())
        if (const char* v = std::getenv("EOG_API_KEY")) api_key = v;
}

EndpointConfig EndpointConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open endpoint config " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    EndpointConfig c;
    c.url = j.value("url", "");
    c.model = j.value("model", c.model);
    c.temperature = j.value("temperature", c.temperature);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
    c.concurrency = j.value("concurrency", c.concurrency);
    c.cache_dir = j.value("cache_dir", c.cache_dir);
    c.strict_single_line = j.value("strict_single_line", c.strict_single_line);
    c.apply_environment();
    return c;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string extract_correction(std::string_view raw, bool strict_single_line) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : raw) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);

    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        if (b == std::string::npos) return std::string();
        std::size_t e = s.find_last_not_of(" \t");
        s = s.substr(b, e - b + 1);
        while (s.size() >= 2 &&
               ((s.front() == '"' && s.back() == '"') ||
                (s.front() == '\'' && s.back() == '\'') ||
                (s.front() == '`' && s.back() == '`')))
            s = s.substr(1, s.size() - 2);
        return s;
    };

    std::string first;
    std::size_t nonempty = 0;
    for (const std::string& line : lines) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (++nonempty == 1) first = t;
    }
    if (strict_single_line && nonempty > 1)
        throw MalformedResponse("multi-line response in strict mode");
    return first;
}

namespace {

struct ParsedUrl {
    std::string origin;
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        throw EndpointUnreachable("malformed endpoint URL: " + url);
    std::size_t path_start = url.find('/', scheme + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string cache_path(const EndpointConfig& config, const std::string& key) {
    std::ostringstream name;
    name << std::hex << fnv1a64(key) << ".json";
    return (std::filesystem::path(config.cache_dir) / name.str()).string();
}

nlohmann::json record_to_json(const RunRecord& r) {
    nlohmann::json j;
    j["model"] = r.model;
    j["shots"] = r.shots;
    j["input"] = r.input;
    j["prompt_hash"] = r.prompt_hash;
    j["raw_response"] = r.raw_response;
    j["correction"] = r.correction;
    j["latency_ms"] = r.latency_ms;
    j["retries"] = r.retries;
    j["ok"] = r.ok;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.model = j.value("model", "");
    r.shots = j.value("shots", 0);
    r.input = j.value("input", "");
    r.prompt_hash = j.value("prompt_hash", "");
    r.raw_response = j.value("raw_response", "");
    r.correction = j.value("correction", "");
    r.latency_ms = j.value("latency_ms", 0.0);
    r.retries = j.value("retries", 0);
    r.ok = j.value("ok", false);
    r.error = j.value("error", "");
    return r;
}

void run_one(const std::string& sentence, const PromptTemplate& tmpl,
             const EndpointConfig& config, RunRecord& rec) {
    std::string prompt = build_prompt(tmpl, sentence);
    std::ostringstream hash;
    hash << std::hex << fnv1a64(prompt);
    rec.model = config.model;
    rec.shots = tmpl.shots;
    rec.input = sentence;
    rec.prompt_hash = hash.str();

    std::string key = config.model + ":" + rec.prompt_hash;
    if (!config.cache_dir.empty()) {
        std::ifstream cached(cache_path(config, key));
        if (cached) {
            RunRecord hit = record_from_json(nlohmann::json::parse(cached));
            if (hit.ok) {
                rec = hit;
                return;
            }
        }
    }

    nlohmann::json payload;
    payload["model"] = config.model;
    payload["temperature"] = config.temperature;
    payload["messages"] = nlohmann::json::array(
        {{{"role", "user"}, {"content", prompt}}});
    std::string body = payload.dump();

    ParsedUrl url = parse_url(config.url);
    auto start = std::chrono::steady_clock::now();
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        rec.retries = attempt;
        if (attempt > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(config.backoff_ms * (1 << (attempt - 1))));
        httplib::Client client(url.origin);
        httplib::Headers headers;
        if (!config.api_key.empty())
            headers.emplace("Authorization", "Bearer " + config.api_key);
        auto res = client.Post(url.path, headers, body, "application/json");
        if (!res) {
            rec.error = "endpoint unreachable";
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            rec.error = "http status " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            rec.error = "http status " + std::to_string(res->status);
            break; // quota/auth errors are not retried
        }
        try {
            nlohmann::json reply = nlohmann::json::parse(res->body);
            rec.raw_response =
                reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception&) {
            rec.error = "malformed response payload";
            break;
        }
        rec.correction = extract_correction(rec.raw_response,
                                            config.strict_single_line);
        rec.ok = true;
        rec.error.clear();
        break;
    }
    rec.latency_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();

    if (rec.ok && !config.cache_dir.empty()) {
        std::filesystem::create_directories(config.cache_dir);
        std::string path = cache_path(config, key);
        std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            out << record_to_json(rec).dump() << "\n";
        }
        std::filesystem::rename(tmp, path);
    }
}

} // namespace

std::vector<RunRecord> run_batch(const std::vector<std::string>& sentences,
                                 const PromptTemplate& tmpl,
                                 const EndpointConfig& config) {
    std::vector<RunRecord> records(sentences.size());
    std::atomic<std::size_t> next{0};
    int workers = std::max(1, std::min<int>(config.concurrency,
                                            static_cast<int>(sentences.size())));
    auto work = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= sentences.size()) break;
            run_one(sentences[i], tmpl, config, records[i]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return records;
}

void write_records_jsonl(std::ostream& out, const std::vector<RunRecord>& records) {
    for (const RunRecord& r : records) out << record_to_json(r).dump() << "\n";
}

std::vector<RunRecord> read_records_jsonl(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(record_from_json(nlohmann::json::parse(line)));
    }
    return out;
}

EvaluationResult evaluate_run(const std::vector<RunRecord>& records,
                              const std::vector<classify::AnnotatedSentence>& gold,
                              const morph::Lexicon& lexicon) {
    if (records.size() != gold.size())
        throw score::SourceMismatch("record count does not match gold corpus");

    std::vector<classify::AnnotatedSentence> hyp;
    std::vector<std::vector<text::Token>> srcs, hyps;
    hyp.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::string src_text = text::join_surfaces(gold[i].source);
        // A failed record counts as "no correction proposed".
        std::string hyp_text = records[i].ok ? records[i].correction : src_text;
        hyp.push_back(classify::annotate(src_text, hyp_text, lexicon));
        srcs.push_back(gold[i].source);
        hyps.push_back(hyp.back().target);
    }
    EvaluationResult result;
    result.errant = score::errant_score(hyp, gold, score::ErrantMode::Span);
    result.m2 = score::m2_score_corpus(srcs, hyps, gold);
    return result;
}

} // namespace eogec::harness
