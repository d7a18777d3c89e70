// eogec: Esperanto grammar-error-correction toolkit, command line front end.
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include "eogec/classify.hpp"
#include "eogec/freq.hpp"
#include "eogec/harness.hpp"
#include "eogec/ingest.hpp"
#include "eogec/score.hpp"
#include "eogec/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    return out;
}

std::vector<eogec::classify::AnnotatedSentence> read_annotated(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    // Sniff the format: canonical files start with "S " and carry "A " lines,
    // compact files pair "S " with "T " lines.
    std::string head;
    std::getline(in, head);
    std::string second;
    std::getline(in, second);
    in.clear();
    in.seekg(0);
    if (second.rfind("T ", 0) == 0) return eogec::classify::read_paper_style(in);
    return eogec::classify::read_m2(in);
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_ingest(const std::vector<std::string>& inputs, const std::string& out,
               bool fetch, int rate_limit, double lang_threshold, bool quiet) {
    eogec::ingest::IngestOptions opts;
    opts.fetch = fetch;
    opts.rate_limit_ms = rate_limit;
    opts.lang_threshold = lang_threshold;
    std::vector<std::string> expanded;
    for (const std::string& item : inputs) {
        if (item.size() > 4 && item.rfind(".txt") == item.size() - 4 &&
            item.rfind("http", 0) != 0) {
            // URL list file: one source per line.
            for (const std::string& line : read_lines(item))
                if (!line.empty() && line[0] != '#') expanded.push_back(line);
        } else {
            expanded.push_back(item);
        }
    }
    auto manifest = eogec::ingest::build_corpus(expanded, out, opts);
    if (!quiet)
        std::cerr << "ingest: " << manifest.accepted_count() << " accepted, "
                  << manifest.rejected_count() << " rejected, "
                  << manifest.failed_count() << " failed\n";
    return 0;
}

int cmd_letterfreq(const std::string& in, const std::string& out,
                   const std::string& set_name) {
    eogec::freq::LetterSet set = eogec::freq::LetterSet::Esperanto;
    if (set_name == "latin") set = eogec::freq::LetterSet::LatinAZ;
    else if (set_name == "union") set = eogec::freq::LetterSet::Union;
    else if (set_name != "eo") throw InputError("unknown letter set " + set_name);
    auto table = eogec::freq::letter_frequencies(slurp(in), set);
    auto os = open_out(out);
    eogec::freq::write_freq_csv(os, table);
    return 0;
}

int cmd_wordfreq(const std::string& in, const std::string& out,
                 bool esperanto_only, bool include_numbers,
                 const std::string& stoplist) {
    eogec::freq::WordFreqOptions opts;
    opts.esperanto_only = esperanto_only;
    opts.include_numbers = include_numbers;
    std::ifstream is(in);
    if (!is) throw InputError("cannot open " + in);
    auto table = eogec::freq::word_frequencies(is, opts);
    if (!stoplist.empty()) {
        auto words = eogec::morph::load_word_list(stoplist);
        table = eogec::freq::filter_stopwords(table, words);
    }
    auto os = open_out(out);
    eogec::freq::write_freq_csv(os, table);
    return 0;
}

int cmd_entropy(const std::string& in, const std::string& out) {
    std::ifstream is(in);
    if (!is) throw InputError("cannot open " + in);
    auto table = eogec::freq::read_freq_csv(is);
    double h = eogec::freq::entropy(table);
    if (out.empty()) {
        std::cout << h << "\n";
    } else {
        auto os = open_out(out);
        os << "entropy_bits\n" << h << "\n";
    }
    return 0;
}

int cmd_zipf(const std::string& in, const std::string& out, std::size_t top) {
    std::ifstream is(in);
    if (!is) throw InputError("cannot open " + in);
    auto table = eogec::freq::read_freq_csv(is);
    auto fit = eogec::freq::zipf_fit(table, top);
    auto os = open_out(out);
    eogec::freq::write_zipf_csv(os, fit);
    return 0;
}

int cmd_annotate(const std::string& src, const std::string& tgt,
                 const std::string& out, const std::string& format,
                 const std::string& data_dir) {
    auto srcs = read_lines(src);
    auto tgts = read_lines(tgt);
    if (srcs.size() != tgts.size())
        throw InputError("source and target line counts differ");
    const eogec::morph::Lexicon lex = data_dir.empty()
                                          ? eogec::morph::Lexicon::builtin()
                                          : eogec::morph::Lexicon::load(data_dir);
    std::vector<eogec::classify::AnnotatedSentence> annotated;
    for (std::size_t i = 0; i < srcs.size(); ++i)
        annotated.push_back(eogec::classify::annotate(srcs[i], tgts[i], lex));
    auto os = open_out(out);
    if (format == "compact") eogec::classify::write_paper_style(os, annotated);
    else if (format == "m2") eogec::classify::write_m2(os, annotated);
    else throw InputError("unknown format " + format);
    return 0;
}

int cmd_convert(const std::string& in, const std::string& out,
                const std::string& to) {
    auto sentences = read_annotated(in);
    auto os = open_out(out);
    if (to == "compact") eogec::classify::write_paper_style(os, sentences);
    else if (to == "m2") eogec::classify::write_m2(os, sentences);
    else throw InputError("unknown target format " + to);
    return 0;
}

int cmd_score(const std::string& hyp, const std::string& gold,
              const std::string& scorer, const std::string& mode,
              const std::string& out, const std::string& method) {
    auto hyp_s = read_annotated(hyp);
    auto gold_s = read_annotated(gold);

    eogec::score::MethodScores row;
    row.method = method;
    if (scorer == "errant" || scorer == "both") {
        auto m = mode == "type" ? eogec::score::ErrantMode::SpanAndType
                                : eogec::score::ErrantMode::Span;
        row.errant = eogec::score::errant_score(hyp_s, gold_s, m);
    }
    if (scorer == "m2" || scorer == "both") {
        std::vector<std::vector<eogec::text::Token>> srcs, hyps;
        for (std::size_t i = 0; i < gold_s.size(); ++i) {
            srcs.push_back(gold_s[i].source);
            hyps.push_back(hyp_s[i].target);
        }
        row.m2 = eogec::score::m2_score_corpus(srcs, hyps, gold_s);
    }
    if (scorer != "errant" && scorer != "m2" && scorer != "both")
        throw InputError("unknown scorer " + scorer);

    if (out.empty()) {
        if (scorer != "m2") eogec::score::write_score_report(std::cout, "errant", row.errant);
        if (scorer != "errant") eogec::score::write_score_report(std::cout, "m2", row.m2);
    } else {
        auto os = open_out(out);
        eogec::score::write_scores_csv(os, {row});
    }
    return 0;
}

int cmd_correct(const std::string& in, const std::string& out, int shots,
                const std::string& template_path, const std::string& url,
                const std::string& model, const std::string& cache_dir,
                int concurrency, bool quiet) {
    auto sentences = read_lines(in);
    eogec::harness::PromptTemplate tmpl =
        template_path.empty() ? eogec::harness::PromptTemplate::defaults(shots)
                              : eogec::harness::PromptTemplate::load(template_path);
    tmpl.shots = shots;
    eogec::harness::EndpointConfig config;
    config.url = url;
    if (!model.empty()) config.model = model;
    config.cache_dir = cache_dir;
    config.concurrency = concurrency;
    config.apply_environment();
    if (config.url.empty())
        throw InputError("no endpoint: pass --url or set EOG_API_URL");
    auto records = eogec::harness::run_batch(sentences, tmpl, config);
    auto os = open_out(out);
    eogec::harness::write_records_jsonl(os, records);
    if (!quiet) {
        std::size_t ok = 0;
        for (const auto& r : records) ok += r.ok;
        std::cerr << "correct: " << ok << "/" << records.size() << " ok\n";
    }
    return 0;
}

int cmd_report(const std::string& in, const std::string& out) {
    auto sentences = read_annotated(in);
    auto report = eogec::classify::dataset_report(sentences);
    if (out.empty()) {
        eogec::classify::write_report_csv(std::cout, report);
    } else {
        auto os = open_out(out);
        eogec::classify::write_report_csv(os, report);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Esperanto grammar error correction toolkit"};
    app.set_version_flag("--version", eogec::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    bool quiet = false;
    unsigned seed = 0;
    app.add_option("--config", config_path, "JSON config file (harness endpoint)");
    app.add_flag("--quiet", quiet, "suppress progress output");
    app.add_option("--seed", seed, "seed for randomized generation");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "build a plain-text corpus from HTML");
    std::vector<std::string> ingest_in;
    std::string ingest_out;
    bool ingest_fetch = false;
    int ingest_rate = 500;
    double ingest_lang = 0.6;
    ingest->add_option("--in", ingest_in, "HTML files or URL list file")->required();
    ingest->add_option("--out", ingest_out, "output corpus directory")->required();
    ingest->add_flag("--fetch", ingest_fetch, "allow http(s) inputs");
    ingest->add_option("--rate-limit", ingest_rate, "ms between live fetches");
    ingest->add_option("--lang-threshold", ingest_lang, "Esperanto token ratio bound");

    // letterfreq
    auto* letterfreq = app.add_subcommand("letterfreq", "letter frequency CSV");
    std::string lf_in, lf_out, lf_set = "eo";
    letterfreq->add_option("--in", lf_in, "UTF-8 text file")->required();
    letterfreq->add_option("--out", lf_out, "output CSV")->required();
    letterfreq->add_option("--set", lf_set, "letter set: eo|latin|union");

    // wordfreq
    auto* wordfreq = app.add_subcommand("wordfreq", "word frequency CSV");
    std::string wf_in, wf_out, wf_stop;
    bool wf_eo = false, wf_num = false;
    wordfreq->add_option("--in", wf_in, "UTF-8 text file")->required();
    wordfreq->add_option("--out", wf_out, "output CSV")->required();
    wordfreq->add_flag("--esperanto-only", wf_eo, "keep only Esperanto-shaped words");
    wordfreq->add_flag("--include-numbers", wf_num, "count number tokens too");
    wordfreq->add_option("--stoplist", wf_stop, "stopword file to filter out");

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Shannon entropy of a frequency CSV");
    std::string en_in, en_out;
    entropy->add_option("--in", en_in, "frequency CSV")->required();
    entropy->add_option("--out", en_out, "output CSV (default: stdout)");

    // zipf
    auto* zipf = app.add_subcommand("zipf", "Zipf-Mandelbrot fit of a word frequency CSV");
    std::string zf_in, zf_out;
    std::size_t zf_top = 100;
    zipf->add_option("--in", zf_in, "word frequency CSV")->required();
    zipf->add_option("--out", zf_out, "output CSV")->required();
    zipf->add_option("--top", zf_top, "number of top ranks to fit");

    // annotate
    auto* annotate = app.add_subcommand("annotate", "extract and classify edits");
    std::string an_src, an_tgt, an_out, an_fmt = "m2", an_data;
    annotate->add_option("--src", an_src, "source sentences, one per line")->required();
    annotate->add_option("--tgt", an_tgt, "target sentences, one per line")->required();
    annotate->add_option("--out", an_out, "output annotation file")->required();
    annotate->add_option("--format", an_fmt, "m2|compact");
    annotate->add_option("--data", an_data, "lexicon data directory");

    // convert
    auto* convert = app.add_subcommand("convert", "convert between annotation formats");
    std::string cv_in, cv_out, cv_to = "m2";
    convert->add_option("--in", cv_in, "annotation file")->required();
    convert->add_option("--out", cv_out, "output file")->required();
    convert->add_option("--to", cv_to, "m2|compact");

    // score
    auto* score = app.add_subcommand("score", "score hypothesis edits against gold");
    std::string sc_hyp, sc_gold, sc_scorer = "both", sc_mode = "span", sc_out,
                sc_method = "system";
    score->add_option("--hyp", sc_hyp, "hypothesis annotation file")->required();
    score->add_option("--gold", sc_gold, "gold annotation file")->required();
    score->add_option("--scorer", sc_scorer, "errant|m2|both");
    score->add_option("--mode", sc_mode, "errant matching: span|type");
    score->add_option("--out", sc_out, "output CSV (default: stdout report)");
    score->add_option("--method", sc_method, "method name for the CSV row");

    // correct
    auto* correct = app.add_subcommand("correct", "run a correction model over sentences");
    std::string co_in, co_out, co_tmpl, co_url, co_model, co_cache;
    int co_shots = 0, co_conc = 4;
    correct->add_option("--in", co_in, "sentences, one per line")->required();
    correct->add_option("--out", co_out, "output JSONL")->required();
    correct->add_option("--shots", co_shots, "few-shot example count (0,1,3,5)");
    correct->add_option("--template", co_tmpl, "prompt template JSON");
    correct->add_option("--url", co_url, "chat-completion endpoint URL");
    correct->add_option("--model", co_model, "model name");
    correct->add_option("--cache-dir", co_cache, "response cache directory");
    correct->add_option("--concurrency", co_conc, "parallel requests");

    // report
    auto* report = app.add_subcommand("report", "dataset descriptive statistics");
    std::string rp_in, rp_out;
    report->add_option("--in", rp_in, "annotation file")->required();
    report->add_option("--out", rp_out, "output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // any malformed invocation is an input error
    }

    // --seed is accepted for interface stability; nothing in the current
    // subcommands draws random numbers.
    (void)seed;

    try {
        if (*ingest)
            return cmd_ingest(ingest_in, ingest_out, ingest_fetch, ingest_rate,
                              ingest_lang, quiet);
        if (*letterfreq) return cmd_letterfreq(lf_in, lf_out, lf_set);
        if (*wordfreq) return cmd_wordfreq(wf_in, wf_out, wf_eo, wf_num, wf_stop);
        if (*entropy) return cmd_entropy(en_in, en_out);
        if (*zipf) return cmd_zipf(zf_in, zf_out, zf_top);
        if (*annotate) return cmd_annotate(an_src, an_tgt, an_out, an_fmt, an_data);
        if (*convert) return cmd_convert(cv_in, cv_out, cv_to);
        if (*score)
            return cmd_score(sc_hyp, sc_gold, sc_scorer, sc_mode, sc_out, sc_method);
        if (*correct) {
            if (!config_path.empty()) {
                auto cfg = eogec::harness::EndpointConfig::from_json_file(config_path);
                if (co_url.empty()) co_url = cfg.url;
                if (co_model.empty()) co_model = cfg.model;
                if (co_cache.empty()) co_cache = cfg.cache_dir;
            }
            return cmd_correct(co_in, co_out, co_shots, co_tmpl, co_url, co_model,
                               co_cache, co_conc, quiet);
        }
        if (*report) return cmd_report(rp_in, rp_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2; // unreachable: require_subcommand(1)
}
