#ifndef EOGEC_HARNESS_HPP
#define EOGEC_HARNESS_HPP

#include "eogec/score.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eogec::harness {

struct MissingExamples : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EndpointUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedResponse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExamplePair {
    std::string source;
    std::string target;
};

struct PromptTemplate {
    int shots = 0; // 0, 1, 3 or 5
    std::string instruction;
    std::vector<ExamplePair> examples;

    static PromptTemplate defaults(int shots);
    static PromptTemplate load(const std::string& path); // JSON
    void save(const std::string& path) const;
};

/// Deterministic rendering: instruction, then `shots` Source/Target example
/// pairs, then the input sentence in the final Source slot.
std::string build_prompt(const PromptTemplate& tmpl, const std::string& input);

struct EndpointConfig {
    std::string url;      // full chat-completion endpoint URL
    std::string api_key;  // never serialized or logged
    std::string model = "gpt-4";
    double temperature = 0.0;
    int max_retries = 3;
    int backoff_ms = 250;
    int concurrency = 4;
    std::string cache_dir; // empty disables the disk cache
    bool strict_single_line = false;

    /// Fills url/api_key from EOG_API_URL / EOG_API_KEY when unset.
    void apply_environment();
    static EndpointConfig from_json_file(const std::string& path);
};

struct RunRecord {
    std::string model;
    int shots = 0;
    std::string input;
    std::string prompt_hash; // cache key is (model, prompt hash)
    std::string raw_response;
    std::string correction;
    double latency_ms = 0.0;
    int retries = 0;
    bool ok = false;
    std::string error;
};

std::uint64_t fnv1a64(std::string_view s);

/// First non-empty line, surrounding quotes and whitespace stripped.
std::string extract_correction(std::string_view raw, bool strict_single_line = false);

/// One record per sentence, in input order. Cache hits skip the network;
/// failures are retried with exponential backoff, then recorded.
std::vector<RunRecord> run_batch(const std::vector<std::string>& sentences,
                                 const PromptTemplate& tmpl,
                                 const EndpointConfig& config);

void write_records_jsonl(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_jsonl(std::istream& in);

struct EvaluationResult {
    score::ScoreReport errant;
    score::ScoreReport m2;
};

/// Edits are re-extracted from each correction against the gold source, then
/// scored with both scorers.
EvaluationResult evaluate_run(const std::vector<RunRecord>& records,
                              const std::vector<classify::AnnotatedSentence>& gold,
                              const morph::Lexicon& lexicon = morph::Lexicon::builtin());

} // namespace eogec::harness

#endif
