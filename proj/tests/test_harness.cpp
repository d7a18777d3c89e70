#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eogec/harness.hpp"
#include "test_util.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <sstream>
#include <thread>

using namespace eogec;
using namespace eogec::harness;
namespace fs = std::filesystem;

namespace {

// Last "Source: ..." line of the prompt is the sentence under correction.
std::string last_source(const std::string& prompt) {
    std::size_t pos = prompt.rfind("\nSource: ");
    REQUIRE(pos != std::string::npos);
    std::size_t start = pos + 9;
    std::size_t end = prompt.find('\n', start);
    return prompt.substr(start, end - start);
}

class MockEndpoint {
public:
    // transform maps the incoming sentence to the mock "correction".
    explicit MockEndpoint(std::function<std::string(const std::string&)> transform,
                          int fail_first = 0)
        : transform_(std::move(transform)), fail_first_(fail_first) {
        server_.Post("/v1/chat/completions",
                     [this](const httplib::Request& req, httplib::Response& res) {
                         ++requests_;
                         if (fail_first_ > 0) {
                             --fail_first_;
                             res.status = 500;
                             return;
                         }
                         auto body = nlohmann::json::parse(req.body);
                         std::string prompt =
                             body.at("messages").at(0).at("content").get<std::string>();
                         nlohmann::json reply = {
                             {"choices",
                              {{{"message",
                                 {{"role", "assistant"},
                                  {"content", transform_(last_source(prompt))}}}}}}};
                         res.set_content(reply.dump(), "application/json");
                         if (body.contains("model")) last_auth_ = req.get_header_value("Authorization");
                     });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~MockEndpoint() {
        server_.stop();
        thread_.join();
    }

    std::string url() const {
        return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
    }
    int requests() const { return requests_.load(); }
    std::string last_auth() const { return last_auth_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
    std::function<std::string(const std::string&)> transform_;
    std::atomic<int> fail_first_;
    std::string last_auth_;
};

} // namespace

TEST_CASE("prompt template defaults and rendering") {
    PromptTemplate t0 = PromptTemplate::defaults(0);
    std::string p0 = build_prompt(t0, "Mi loĝi en Romo .");
    CHECK(p0.find("Source: Mi loĝi en Romo .") != std::string::npos);
    CHECK(p0.rfind("Target:") == p0.size() - 7);
    CHECK(p0.find("Mi loĝas") == std::string::npos); // no examples at 0-shot

    PromptTemplate t3 = PromptTemplate::defaults(3);
    std::string p3 = build_prompt(t3, "x");
    // exactly 4 Source lines: 3 examples + the input
    std::size_t n = 0;
    for (std::size_t pos = 0; (pos = p3.find("Source: ", pos)) != std::string::npos; ++pos) ++n;
    CHECK(n == 4);

    PromptTemplate starved = t3;
    starved.examples.resize(1);
    CHECK_THROWS_AS(build_prompt(starved, "x"), MissingExamples);
}

TEST_CASE("prompt template JSON round-trip") {
    PromptTemplate t = PromptTemplate::defaults(5);
    fs::path p = fs::temp_directory_path() / "eogec_tmpl.json";
    t.save(p.string());
    PromptTemplate back = PromptTemplate::load(p.string());
    CHECK(back.shots == t.shots);
    CHECK(back.instruction == t.instruction);
    REQUIRE(back.examples.size() == t.examples.size());
    CHECK(back.examples[0].source == t.examples[0].source);
    fs::remove(p);
    CHECK(build_prompt(back, "x") == build_prompt(t, "x"));
}

TEST_CASE("data/prompt_template.json matches the builtin defaults") {
    PromptTemplate shipped =
        PromptTemplate::load(testutil::source_dir() + "/data/prompt_template.json");
    CHECK(shipped.shots == 5);
    PromptTemplate builtin = PromptTemplate::defaults(5);
    CHECK(build_prompt(shipped, "x") == build_prompt(builtin, "x"));
}

TEST_CASE("fnv1a64 reference values") {
    // [DERIVED] standard FNV-1a test vectors
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("extract_correction") {
    CHECK(extract_correction("Mi loĝas en Romo .") == "Mi loĝas en Romo .");
    CHECK(extract_correction("\n\n  Mi loĝas .  \n") == "Mi loĝas .");
    CHECK(extract_correction("\"Mi loĝas .\"") == "Mi loĝas .");
    CHECK(extract_correction("`Mi loĝas .`") == "Mi loĝas .");
    CHECK(extract_correction("Line one\nLine two") == "Line one");
    CHECK_THROWS_AS(extract_correction("a\nb", true), MalformedResponse);
    CHECK(extract_correction("") == "");
}

TEST_CASE("run_batch with a mock endpoint, cache and retries") {
    MockEndpoint mock([](const std::string& s) { return "OK " + s; });
    fs::path cache = fs::temp_directory_path() / "eogec_cache_test";
    fs::remove_all(cache);

    EndpointConfig cfg;
    cfg.url = mock.url();
    cfg.api_key = "secret-key-123";
    cfg.model = "mock-model";
    cfg.cache_dir = cache.string();
    cfg.concurrency = 3;

    PromptTemplate tmpl = PromptTemplate::defaults(1);
    std::vector<std::string> inputs = {"unu .", "du .", "tri .", "kvar ."};
    auto records = run_batch(inputs, tmpl, cfg);
    REQUIRE(records.size() == 4);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].ok);
        CHECK(records[i].input == inputs[i]); // order preserved
        CHECK(records[i].correction == "OK " + inputs[i]);
        CHECK(records[i].retries == 0);
    }
    CHECK(mock.requests() == 4);
    CHECK(mock.last_auth() == "Bearer secret-key-123");

    // Warm cache: zero network calls, same corrections.
    auto again = run_batch(inputs, tmpl, cfg);
    CHECK(mock.requests() == 4);
    for (std::size_t i = 0; i < again.size(); ++i)
        CHECK(again[i].correction == records[i].correction);

    // The API key never reaches serialized records.
    std::ostringstream jsonl;
    write_records_jsonl(jsonl, records);
    CHECK(jsonl.str().find("secret") == std::string::npos);
    for (const auto& entry : fs::recursive_directory_iterator(cache))
        if (entry.is_regular_file())
            CHECK(testutil::slurp(entry.path().string()).find("secret") ==
                  std::string::npos);

    std::istringstream in(jsonl.str());
    auto back = read_records_jsonl(in);
    REQUIRE(back.size() == records.size());
    CHECK(back[2].correction == records[2].correction);
    CHECK(back[2].prompt_hash == records[2].prompt_hash);
    fs::remove_all(cache);
}

TEST_CASE("transient server errors are retried with backoff") {
    MockEndpoint mock([](const std::string& s) { return s; }, /*fail_first=*/2);
    EndpointConfig cfg;
    cfg.url = mock.url();
    cfg.backoff_ms = 1;
    auto records = run_batch({"saluton ."}, PromptTemplate::defaults(0), cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].ok);
    CHECK(records[0].retries == 2);
    CHECK(mock.requests() == 3);
}

TEST_CASE("unreachable endpoint fails after retries without throwing") {
    EndpointConfig cfg;
    cfg.url = "http://127.0.0.1:1/v1/chat/completions";
    cfg.max_retries = 1;
    cfg.backoff_ms = 1;
    auto records = run_batch({"x"}, PromptTemplate::defaults(0), cfg);
    REQUIRE(records.size() == 1);
    CHECK_FALSE(records[0].ok);
    CHECK_FALSE(records[0].error.empty());
}

TEST_CASE("evaluate_run: echo-target scores 100, echo-source scores 0") {
    auto srcs = testutil::read_lines(testutil::fixture("pairs20_src.txt"));
    auto tgts = testutil::read_lines(testutil::fixture("pairs20_tgt.txt"));
    std::vector<classify::AnnotatedSentence> gold;
    for (std::size_t i = 0; i < srcs.size(); ++i)
        gold.push_back(classify::annotate(srcs[i], tgts[i]));

    auto run_against = [&](bool echo_target) {
        std::vector<RunRecord> records(srcs.size());
        for (std::size_t i = 0; i < srcs.size(); ++i) {
            records[i].ok = true;
            records[i].input = srcs[i];
            records[i].correction = echo_target ? tgts[i] : srcs[i];
        }
        return evaluate_run(records, gold);
    };

    EvaluationResult perfect = run_against(true);
    CHECK(perfect.errant.f_half() == doctest::Approx(1.0));
    CHECK(perfect.m2.f_half() == doctest::Approx(1.0));

    EvaluationResult idle = run_against(false);
    CHECK(idle.errant.counts.tp == 0);
    CHECK(idle.errant.recall() < 0.01);
    CHECK(idle.m2.counts.tp == 0);

    std::vector<RunRecord> short_run(3);
    CHECK_THROWS_AS(evaluate_run(short_run, gold), score::SourceMismatch);
}
