// expedition: command line front end for building, querying and serving an index.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expedition/corpus.hpp"
#include "expedition/error.hpp"
#include "expedition/http_server.hpp"
#include "expedition/index.hpp"
#include "expedition/ranking.hpp"
#include "expedition/service.hpp"
#include "expedition/session.hpp"
#include "expedition/timeline.hpp"
#include "expedition/wire.hpp"

namespace fs = std::filesystem;
using namespace expedition;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

constexpr const char* kIndexFile = "index.bin";

fs::path index_file(const fs::path& location) {
    return fs::is_directory(location) ? location / kIndexFile : location;
}

bool looks_like_index(const std::string& arg) {
    std::error_code ec;
    return fs::is_regular_file(index_file(arg), ec);
}

// Positional layout is `<indexdir> <rest...>`; the directory may come from
// --index or EXPEDITION_INDEX instead, in which case an explicit leading
// directory still wins.
fs::path take_index(std::string& index_opt, std::vector<std::string>& positional) {
    if (!positional.empty() && (index_opt.empty() || looks_like_index(positional.front()))) {
        index_opt = positional.front();
        positional.erase(positional.begin());
    }
    if (index_opt.empty()) throw CLI::ValidationError("indexdir", "no index given (argument or EXPEDITION_INDEX)");
    return index_file(index_opt);
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

RetrievalModel model_arg(const std::string& name) {
    auto m = parse_model(name);
    if (!m) throw CLI::ValidationError("--model", "unknown retrieval model '" + name + "'");
    return *m;
}

MonthInterval interval_arg(const std::string& text, const char* what) {
    auto iv = MonthInterval::parse(text);
    if (!iv) throw CLI::ValidationError(what, "expected YYYY-MM..YYYY-MM, got '" + text + "'");
    return *iv;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Options shared by query and timeline.
struct QueryArgs {
    std::string index;
    std::vector<std::string> positional;
    std::string model = "TEXTUAL";
    std::size_t k = 50;
    std::string time;
    std::vector<std::string> entities;
    std::vector<std::string> types;
    double alpha = 0.5;
    double gamma = 1.0;
    double burst_k = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--index", index, "Index directory")->envname("EXPEDITION_INDEX");
        cmd->add_option("args", positional, "<indexdir> <terms...>")->required();
        cmd->add_option("--model", model, "TEXTUAL, TEMPORAL, TEMPORAL_DIV, TOPICAL_DIV or HIST_DIV");
        cmd->add_option("--k", k, "Result count")->check(CLI::PositiveNumber);
        cmd->add_option("--time", time, "Publication window YYYY-MM..YYYY-MM");
        cmd->add_option("--entity", entities, "Required entity id (repeatable)");
        cmd->add_option("--type", types, "Allowed article type (repeatable)");
        cmd->add_option("--alpha", alpha, "Publication/reference mix")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--gamma", gamma, "Temporal diversity decay")->check(CLI::NonNegativeNumber);
        cmd->add_option("--burst-k", burst_k, "Burst threshold in standard deviations");
    }

    std::pair<QueryRequest, Params> request(fs::path& file) {
        file = take_index(index, positional);
        if (positional.empty()) throw CLI::ValidationError("terms", "at least one query term is required");
        QueryRequest req;
        req.q = join(positional);
        req.model = model_arg(model);
        req.k = k;
        if (!time.empty()) req.constraints.time = interval_arg(time, "--time");
        req.constraints.entities.insert(entities.begin(), entities.end());
        req.constraints.article_types.insert(types.begin(), types.end());
        Params params;
        params.k = k;
        params.alpha = alpha;
        params.gamma = gamma;
        params.burst_k = burst_k;
        return {req, params};
    }
};

int run_ingest(const std::string& corpus_path, const std::string& out_dir, const std::string& span) {
    IngestOptions options;
    if (!span.empty()) options.declared_span = interval_arg(span, "--span");
    auto result = ingest(corpus_path, options);
    const auto& report = result.report;
    for (const auto& issue : report.errors) std::cerr << "line " << issue.line << ": " << issue.message << "\n";
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (result.corpus.empty()) throw DataError("no valid documents in " + corpus_path);

    auto index = Index::build(result.corpus);
    fs::create_directories(out_dir);
    index.save(fs::path(out_dir) / kIndexFile);

    std::cout << "lines read: " << report.lines_read << "\n"
              << report.accepted << " documents\n"
              << "warnings: " << report.errors.size() + report.warnings.size() << "\n"
              << "span: " << index.span().to_string() << "\n"
              << "vocabulary: " << index.vocabulary_size() << "\n";
    return kExitOk;
}

int run_query(QueryArgs& args, bool as_json) {
    fs::path file;
    auto [req, params] = args.request(file);
    auto engine = Engine(std::make_shared<const Index>(Index::load(file)), params);
    auto response = engine.search(req, params);
    if (as_json) {
        std::cout << wire::to_json(response).dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& w : response.warnings) std::cerr << "warning: " << w << "\n";
    if (response.no_matches) std::cerr << "no matches\n";
    for (const auto& r : response.results) {
        std::cout << r.rank << '\t' << fmt(r.score) << '\t' << r.doc_id << '\t' << r.headline << '\t'
                  << r.published.bucket().to_string() << "\n";
    }
    return kExitOk;
}

int run_timeline(QueryArgs& args, bool as_json) {
    fs::path file;
    auto [req, params] = args.request(file);
    auto engine = Engine(std::make_shared<const Index>(Index::load(file)), params);
    auto profile = engine.timeline(req, params);
    if (as_json) {
        std::cout << wire::to_json(profile).dump(2) << "\n";
        return kExitOk;
    }
    if (profile.no_data) std::cerr << "no data\n";
    std::cout << "month\tp_pub\tp_ref\tp_combined\n";
    for (const auto& b : profile.buckets) {
        std::cout << b.month.to_string() << '\t' << fmt(b.p_pub) << '\t' << fmt(b.p_ref) << '\t'
                  << fmt(b.p_combined) << "\n";
    }
    for (const auto& b : profile.bursts) {
        std::cout << "burst\t" << b.start.to_string() << '\t' << b.end.to_string() << '\t' << b.peak.to_string();
        for (const auto& label : b.labels) std::cout << '\t' << label;
        std::cout << "\n";
    }
    return kExitOk;
}

int run_replay(const std::string& export_path, std::string index_opt, std::vector<std::string> rest, bool as_json) {
    auto file = take_index(index_opt, rest);
    auto text = read_file(export_path);
    auto session = Session::import_json(text);
    auto index = Index::load(file);
    auto report = replay(session, index);
    if (as_json) {
        std::cout << wire::to_json(report).dump(2) << "\n";
    } else {
        for (const auto& s : report.stages) {
            std::cout << "stage " << s.stage << '\t' << s.results.size() << " results"
                      << (s.status == MatchStatus::Ok ? "" : "\tno matches") << "\n";
        }
        for (const auto& c : report.saved) {
            const char* verdict = c.found ? "verified" : (c.in_index ? "not in results" : "missing from index");
            std::cout << "saved " << c.doc_id << '\t' << "stage " << c.stage << '\t' << verdict << "\n";
        }
        std::cout << "verified " << report.verified() << "/" << report.saved.size() << "\n";
    }
    return report.all_verified() ? kExitOk : kExitData;
}

int run_serve(std::string index_opt, std::vector<std::string> rest, const std::string& host, int port) {
    auto file = take_index(index_opt, rest);
    auto engine = std::make_shared<const Engine>(std::make_shared<const Index>(Index::load(file)));
    HttpServer server(engine);
    int bound = server.bind(host, port);
    std::cout << "listening on http://" << host << ":" << bound << std::endl;
    server.listen();
    return kExitOk;
}

// "A..B:intensity:term term" (terms separated by spaces or commas).
BurstSpec burst_arg(const std::string& text) {
    auto c1 = text.find(':');
    auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw CLI::ValidationError("--burst", "expected A..B:intensity:terms");
    BurstSpec spec;
    spec.interval = interval_arg(text.substr(0, c1), "--burst");
    try {
        spec.intensity = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--burst", "intensity must be a number");
    }
    auto list = text.substr(c2 + 1);
    std::replace(list.begin(), list.end(), ',', ' ');
    std::istringstream words(list);
    for (std::string w; words >> w;) spec.terms.push_back(w);
    if (spec.terms.empty()) throw CLI::ValidationError("--burst", "no burst terms");
    return spec;
}

int run_generate(SyntheticSpec spec, const std::string& span, const std::vector<std::string>& bursts,
                 const std::string& out) {
    if (!span.empty()) spec.span = interval_arg(span, "--span");
    for (const auto& b : bursts) spec.bursts.push_back(burst_arg(b));
    auto docs = generate_synthetic(spec);
    if (out.empty() || out == "-") {
        std::cout << serialize_corpus(docs);
    } else {
        write_corpus(out, docs);
        std::cerr << docs.size() << " documents written to " << out << "\n";
    }
    return kExitOk;
}

int run_annotate(const std::string& in_path, const std::string& gazetteer_path, const std::string& out) {
    Gazetteer gazetteer;
    if (!gazetteer_path.empty()) {
        auto j = nlohmann::json::parse(read_file(gazetteer_path), nullptr, false);
        if (!j.is_object()) throw DataError("gazetteer must be a JSON object of surface -> entity id");
        for (const auto& [surface, id] : j.items()) {
            if (!id.is_string()) throw DataError("gazetteer value for '" + surface + "' is not a string");
            gazetteer[surface] = id.get<std::string>();
        }
    }
    auto result = ingest(in_path);
    for (const auto& issue : result.report.errors) std::cerr << "line " << issue.line << ": " << issue.message << "\n";
    std::vector<Document> docs;
    for (const auto& d : result.corpus.documents()) docs.push_back(trivial_annotate(d, gazetteer));
    if (out.empty() || out == "-") {
        std::cout << serialize_corpus(docs);
    } else {
        write_corpus(out, docs);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-aware exploratory search over annotated news archives"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "expedition 0.1.0");

    std::string corpus_path, out_dir, span;
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a JSONL corpus and build an index");
    ingest_cmd->add_option("corpus", corpus_path, "Corpus file (one JSON document per line)")->required();
    ingest_cmd->add_option("--out", out_dir, "Output index directory")->required();
    ingest_cmd->add_option("--span", span, "Reject documents outside YYYY-MM..YYYY-MM");

    QueryArgs query_args;
    bool query_json = false;
    auto* query_cmd = app.add_subcommand("query", "Rank documents; prints rank, score, doc_id, headline, month");
    query_args.attach(query_cmd);
    query_cmd->add_flag("--json", query_json, "Print the search response JSON");

    QueryArgs timeline_args;
    bool timeline_json = false;
    auto* timeline_cmd = app.add_subcommand("timeline", "Monthly profile and bursts of a query");
    timeline_args.attach(timeline_cmd);
    timeline_cmd->add_flag("--json", timeline_json, "Print the timeline JSON");

    std::string export_path, replay_index;
    std::vector<std::string> replay_rest;
    bool replay_json = false;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run an exported session and verify saved articles");
    replay_cmd->add_option("export", export_path, "Session export file")->required();
    replay_cmd->add_option("indexdir", replay_rest, "Index directory");
    replay_cmd->add_option("--index", replay_index, "Index directory")->envname("EXPEDITION_INDEX");
    replay_cmd->add_flag("--json", replay_json, "Print the replay report JSON");

    std::string serve_index, host = "127.0.0.1";
    std::vector<std::string> serve_rest;
    int port = 8080;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the REST API");
    serve_cmd->add_option("indexdir", serve_rest, "Index directory");
    serve_cmd->add_option("--index", serve_index, "Index directory")->envname("EXPEDITION_INDEX");
    serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--host", host, "Bind address");

    SyntheticSpec synth;
    std::string synth_span, synth_out;
    std::vector<std::string> synth_bursts;
    auto* gen_cmd = app.add_subcommand("generate", "Write a deterministic synthetic corpus");
    gen_cmd->add_option("--seed", synth.seed, "Random seed");
    gen_cmd->add_option("--docs", synth.n_docs, "Document count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--span", synth_span, "Publication span YYYY-MM..YYYY-MM");
    gen_cmd->add_option("--entities", synth.n_entities, "Entity vocabulary size");
    gen_cmd->add_option("--burst", synth_bursts, "Burst as A..B:intensity:terms (repeatable)");
    gen_cmd->add_option("--topic-share", synth.topic_share, "Share of documents per burst topic")
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--out", synth_out, "Output file (default stdout)");

    std::string annotate_in, gazetteer_path, annotate_out;
    auto* annotate_cmd = app.add_subcommand("annotate", "Add dictionary entities and date references");
    annotate_cmd->add_option("corpus", annotate_in, "Corpus file")->required();
    annotate_cmd->add_option("--gazetteer", gazetteer_path, "JSON object mapping surface form to entity id");
    annotate_cmd->add_option("--out", annotate_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest_cmd) return run_ingest(corpus_path, out_dir, span);
        if (*query_cmd) return run_query(query_args, query_json);
        if (*timeline_cmd) return run_timeline(timeline_args, timeline_json);
        if (*replay_cmd) return run_replay(export_path, replay_index, replay_rest, replay_json);
        if (*serve_cmd) return run_serve(serve_index, serve_rest, host, port);
        if (*gen_cmd) return run_generate(synth, synth_span, synth_bursts, synth_out);
        if (*annotate_cmd) return run_annotate(annotate_in, gazetteer_path, annotate_out);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.path() << ": " << e.what() << "\n";
        return kExitData;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
