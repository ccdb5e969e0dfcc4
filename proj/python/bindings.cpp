#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "expedition/corpus.hpp"
#include "expedition/http_server.hpp"
#include "expedition/index.hpp"
#include "expedition/service.hpp"
#include "expedition/session.hpp"
#include "expedition/wire.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;
using namespace expedition;

namespace {

constexpr const char* kIndexFile = "index.bin";

fs::path index_file(const fs::path& location) {
    return fs::is_directory(location) ? location / kIndexFile : location;
}

MonthInterval interval_arg(const std::string& text) {
    auto iv = MonthInterval::parse(text);
    if (!iv) throw InvalidArgument("expected YYYY-MM..YYYY-MM, got '" + text + "'");
    return *iv;
}

RetrievalModel model_arg(const std::string& name) {
    auto m = parse_model(name);
    if (!m) throw InvalidArgument("unknown model '" + name + "'");
    return *m;
}

// Keyword arguments of the GET endpoints, as the query-string multimap.
std::multimap<std::string, std::string> query_params(const py::dict& kwargs) {
    std::multimap<std::string, std::string> out;
    for (auto [key, value] : kwargs) {
        const auto name = py::str(key).cast<std::string>();
        if (value.is_none()) continue;
        if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
            for (auto item : value) out.emplace(name, py::str(item).cast<std::string>());
        } else if (py::isinstance<py::bool_>(value)) {
            out.emplace(name, value.cast<bool>() ? "true" : "false");
        } else {
            out.emplace(name, py::str(value).cast<std::string>());
        }
    }
    return out;
}

struct IngestSummary {
    std::size_t lines_read = 0;
    std::size_t accepted = 0;
    std::vector<std::pair<std::size_t, std::string>> errors;
    std::vector<std::string> warnings;
    std::string span;
    std::size_t vocabulary = 0;
};

IngestSummary build_index(const fs::path& corpus_path, const fs::path& out_dir, const std::optional<std::string>& span) {
    IngestOptions options;
    if (span) options.declared_span = interval_arg(*span);
    auto result = ingest(corpus_path, options);
    auto index = Index::build(result.corpus);
    fs::create_directories(out_dir);
    index.save(out_dir / kIndexFile);
    IngestSummary s{result.report.lines_read, result.report.accepted, {}, result.report.warnings,
                    index.size() ? index.span().to_string() : "", index.vocabulary_size()};
    for (const auto& e : result.report.errors) s.errors.emplace_back(e.line, e.message);
    return s;
}

class PyEngine {
public:
    explicit PyEngine(std::shared_ptr<const Index> index) : engine_(std::make_shared<const Engine>(std::move(index))) {}

    static PyEngine open(const fs::path& location) {
        return PyEngine(std::make_shared<const Index>(Index::load(index_file(location))));
    }
    static PyEngine from_corpus(const fs::path& corpus_path) {
        return PyEngine(std::make_shared<const Index>(Index::build(ingest(corpus_path).corpus)));
    }
    static PyEngine from_jsonl(const std::string& text) {
        std::istringstream in(text);
        return PyEngine(std::make_shared<const Index>(Index::build(ingest_stream(in).corpus)));
    }

    std::string search(const std::string& body) const {
        auto parsed = wire::parse_search_body(body, engine_->defaults());
        return wire::to_json(engine_->search(parsed.request, parsed.params)).dump();
    }
    std::string timeline(const py::kwargs& kwargs) const {
        auto parsed = wire::parse_query_params(query_params(kwargs), engine_->defaults());
        return wire::to_json(engine_->timeline(parsed.request, parsed.params)).dump();
    }
    std::string entities(const py::kwargs& kwargs) const {
        auto parsed = wire::parse_query_params(query_params(kwargs), engine_->defaults());
        return wire::selectors_to_json(engine_->entities(parsed.request, parsed.params)).dump();
    }
    std::optional<std::string> document(const std::string& doc_id) const {
        auto view = engine_->document(doc_id);
        if (!view) return std::nullopt;
        return wire::to_json(*view).dump();
    }
    std::string health() const { return wire::to_json(engine_->health()).dump(); }
    std::string replay(const std::string& export_text) const {
        return wire::to_json(expedition::replay(export_text, engine_->index(), engine_->defaults())).dump();
    }
    std::size_t size() const { return engine_->index().size(); }

    std::shared_ptr<const Engine> engine() const { return engine_; }

private:
    std::shared_ptr<const Engine> engine_;
};

class PyServer {
public:
    explicit PyServer(const PyEngine& engine) : server_(std::make_unique<HttpServer>(engine.engine())) {}
    int start(const std::string& host, int port) {
        py::gil_scoped_release release;
        return server_->start(host, port);
    }
    void stop() {
        py::gil_scoped_release release;
        server_->stop();
    }

private:
    std::unique_ptr<HttpServer> server_;
};

std::string generate(std::uint64_t seed, std::size_t docs, const std::string& span, std::size_t entities,
                     const std::vector<std::tuple<std::string, double, std::vector<std::string>>>& bursts,
                     double topic_share) {
    SyntheticSpec spec;
    spec.seed = seed;
    spec.n_docs = docs;
    spec.span = interval_arg(span);
    spec.n_entities = entities;
    spec.topic_share = topic_share;
    for (const auto& [interval, intensity, terms] : bursts) spec.bursts.push_back({interval_arg(interval), terms, intensity});
    return serialize_corpus(generate_synthetic(spec));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Time-aware exploratory search over a news archive";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<VersionError>(m, "VersionError", data_error.ptr());
    // Raised with (message, json_pointer) so callers can report the offending path.
    static PyObject* schema_error = py::exception<SchemaError>(m, "SchemaError", data_error.ptr()).release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SchemaError& e) {
            PyErr_SetObject(schema_error, py::make_tuple(e.what(), e.path()).ptr());
        }
    });

    m.attr("INDEX_FILE") = kIndexFile;
    m.attr("MODELS") = [] {
        std::vector<std::string> names;
        for (auto model : kAllModels) names.emplace_back(to_string(model));
        return names;
    }();

    py::class_<IngestSummary>(m, "IngestSummary")
        .def_readonly("lines_read", &IngestSummary::lines_read)
        .def_readonly("accepted", &IngestSummary::accepted)
        .def_readonly("errors", &IngestSummary::errors)
        .def_readonly("warnings", &IngestSummary::warnings)
        .def_readonly("span", &IngestSummary::span)
        .def_readonly("vocabulary", &IngestSummary::vocabulary);

    m.def("build_index", &build_index, py::arg("corpus"), py::arg("out_dir"), py::arg("span") = py::none(),
          "Ingest a JSONL corpus and write <out_dir>/index.bin.");

    py::class_<PyEngine>(m, "Engine")
        .def_static("open", &PyEngine::open, py::arg("location"), "Load an index directory or file.")
        .def_static("from_corpus", &PyEngine::from_corpus, py::arg("path"))
        .def_static("from_jsonl", &PyEngine::from_jsonl, py::arg("text"))
        .def("search_json", &PyEngine::search, py::arg("body"))
        .def("timeline_json", &PyEngine::timeline)
        .def("entities_json", &PyEngine::entities)
        .def("document_json", &PyEngine::document, py::arg("doc_id"))
        .def("health_json", &PyEngine::health)
        .def("replay_json", &PyEngine::replay, py::arg("export"))
        .def("__len__", &PyEngine::size);

    py::class_<PyServer>(m, "Server")
        .def(py::init<const PyEngine&>(), py::keep_alive<1, 2>())
        .def("start", &PyServer::start, py::arg("host") = "127.0.0.1", py::arg("port") = 0)
        .def("stop", &PyServer::stop);

    m.def("generate", &generate, py::arg("seed") = 1, py::arg("docs") = 1000, py::arg("span") = "1987-01..2007-06",
          py::arg("entities") = 50, py::arg("bursts") = std::vector<std::tuple<std::string, double, std::vector<std::string>>>{},
          py::arg("topic_share") = 0.1, "Deterministic synthetic corpus as JSONL text.");

    py::class_<Session>(m, "Session")
        .def(py::init<std::string, std::string>(), py::arg("session_id"), py::arg("created_at"))
        .def(
            "new_query",
            [](Session& s, const std::string& q, const std::optional<std::string>& model, const std::string& ts) {
                std::optional<RetrievalModel> m;
                if (model) m = model_arg(*model);
                return s.apply(action::NewQuery{q, m}, ts);
            },
            py::arg("query"), py::arg("model") = py::none(), py::arg("ts") = "")
        .def(
            "change_model",
            [](Session& s, const std::string& model, const std::string& ts) {
                return s.apply(action::ChangeModel{model_arg(model)}, ts);
            },
            py::arg("model"), py::arg("ts") = "")
        .def(
            "select_time",
            [](Session& s, const std::string& interval, const std::string& ts) {
                return s.apply(action::SelectTime{interval_arg(interval)}, ts);
            },
            py::arg("interval"), py::arg("ts") = "")
        .def(
            "select_entity",
            [](Session& s, const std::string& id, const std::string& ts) { return s.apply(action::SelectEntity{id}, ts); },
            py::arg("entity_id"), py::arg("ts") = "")
        .def(
            "select_type",
            [](Session& s, const std::string& type, const std::string& ts) { return s.apply(action::SelectType{type}, ts); },
            py::arg("article_type"), py::arg("ts") = "")
        .def(
            "clear",
            [](Session& s, const std::string& kind, const std::string& value, const std::string& ts) {
                using K = action::ClearConstraint::Kind;
                static const std::map<std::string, K> kinds{{"time", K::Time}, {"entity", K::Entity}, {"type", K::Type}, {"all", K::All}};
                auto it = kinds.find(kind);
                if (it == kinds.end()) throw InvalidArgument("unknown constraint kind '" + kind + "'");
                return s.apply(action::ClearConstraint{it->second, value}, ts);
            },
            py::arg("kind") = "all", py::arg("value") = "", py::arg("ts") = "")
        .def("revisit", &Session::revisit, py::arg("stage"))
        .def("save_article", &Session::save_article, py::arg("doc_id"), py::arg("headline"))
        .def_property_readonly("stage_count", [](const Session& s) { return s.stages().size(); })
        .def_property_readonly("current_stage", &Session::current_stage)
        .def_property_readonly("saved", [](const Session& s) {
            std::vector<std::string> out;
            for (const auto& e : s.corpus()) out.push_back(e.doc_id);
            return out;
        })
        .def("export_json", &Session::export_json)
        .def_static("import_json", [](const std::string& text) { return Session::import_json(text); }, py::arg("text"));

    m.def(
        "normalize_export", [](const std::string& text) { return Session::import_json(text).export_json(); },
        py::arg("text"), "Validate a session export and return its canonical text.");
}
