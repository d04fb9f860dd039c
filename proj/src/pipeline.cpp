#include "rasaeco/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rasaeco/render_html.hpp"
#include "rasaeco/visual.hpp"

#include <unistd.h>

namespace rasaeco {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FatalError(kExitIo, "cannot read " + path.generic_string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw FatalError(kExitIo, "cannot read " + path.generic_string());
    return buffer.str();
}

Config load_config(Config config, const ConfigOverrides& overrides) {
    std::error_code ec;
    if (!fs::is_directory(config.scenarios_dir, ec)) {
        throw FatalError(kExitNoInput, "scenarios directory not found: " + config.scenarios_dir.generic_string());
    }
    const auto file = config.scenarios_dir / kConfigFileName;
    if (fs::exists(file, ec)) {
        const auto text = read_file(file);
        const auto where = file.generic_string();
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw FatalError(kExitConfig, where + ": malformed config: " + e.what());
        }
        if (!j.is_object()) throw FatalError(kExitConfig, where + ": malformed config: expected an object");
        if (auto it = j.find("ifc_vocabulary_path"); it != j.end()) {
            if (!it->is_string()) {
                throw FatalError(kExitConfig, where + ": malformed config: ifc_vocabulary_path must be a string");
            }
            config.ifc_vocabulary_path = config.scenarios_dir / it->get<std::string>();
        }
        if (auto it = j.find("nature_vocabulary"); it != j.end()) {
            const bool ok = it->is_array() &&
                            std::all_of(it->begin(), it->end(), [](const auto& v) { return v.is_string(); });
            if (!ok) {
                throw FatalError(kExitConfig,
                                 where + ": malformed config: nature_vocabulary must be an array of strings");
            }
            config.nature_vocabulary = it->get<std::vector<std::string>>();
        }
    }
    if (overrides.ifc_vocabulary_path) config.ifc_vocabulary_path = overrides.ifc_vocabulary_path;
    if (overrides.nature_vocabulary) config.nature_vocabulary = *overrides.nature_vocabulary;
    return config;
}

unsigned worker_count() {
    if (const char* v = std::getenv("RASAECO_NO_PARALLEL"); v != nullptr && std::string(v) == "1") return 1;
    return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const auto workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (auto i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

Analysis analyze(const Config& config) {
    Analysis analysis;
    analysis.vocabulary = config.ifc_vocabulary_path ? parse_vocabulary(read_file(*config.ifc_vocabulary_path))
                                                     : default_ifc_vocabulary();

    Discovery discovery;
    try {
        discovery = discover(config.scenarios_dir);
    } catch (const fs::filesystem_error& e) {
        throw FatalError(kExitIo, e.what());
    }
    analysis.report.add_all(discovery.diagnostics);

    const auto& files = discovery.files;
    std::vector<Parsed<ScenarioDocument>> loaded(files.size());
    parallel_for(files.size(), [&](std::size_t i) {
        const auto& f = files[i];
        const auto display = f.path.generic_string();
        loaded[i] = load_document(f.identifier, display, read_file(f.path));
        if (loaded[i].value) {
            auto& diags = loaded[i].diagnostics;
            const auto local = resolve_local(*loaded[i].value);
            const auto ifc = lint_ifc(*loaded[i].value, analysis.vocabulary);
            diags.insert(diags.end(), local.begin(), local.end());
            diags.insert(diags.end(), ifc.begin(), ifc.end());
        }
    });
    for (auto& l : loaded) {
        analysis.report.add_all(l.diagnostics);
        if (l.value) {
            auto id = l.value->identifier;
            analysis.corpus.documents.emplace(std::move(id), std::move(*l.value));
        }
    }

    auto graph = build_graph(analysis.corpus, config.nature_vocabulary);
    analysis.report.add_all(graph.diagnostics);
    analysis.report.add_all(resolve_cross(analysis.corpus));
    analysis.graph = std::move(graph.graph);
    return analysis;
}

std::map<fs::path, std::string> render_outputs(const Analysis& analysis) {
    const auto& corpus = analysis.corpus;
    std::vector<const ScenarioDocument*> docs;
    for (const auto& [id, doc] : corpus.documents) docs.push_back(&doc);

    std::vector<RenderedPage> pages(docs.size());
    std::vector<std::string> plots(docs.size());
    parallel_for(docs.size(), [&](std::size_t i) {
        pages[i] = render_page(*docs[i], corpus);
        plots[i] = render_volumetric_svg(docs[i]->volumetric, false);
    });

    std::map<fs::path, std::string> files;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        files.emplace(pages[i].output_path, std::move(pages[i].html));
        files.emplace(fs::path(docs[i]->identifier) / "volumetric.svg", std::move(plots[i]));
    }
    auto index = render_corpus_index(corpus, analysis.graph);
    files.emplace(index.output_path, std::move(index.html));
    files.emplace("ontology.svg", render_graph_svg(layout_graph(analysis.graph), analysis.graph, corpus));
    return files;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw FatalError(kExitIo, "cannot write " + path.generic_string());
}

}  // namespace

void write_tree(const fs::path& out_dir, const std::map<fs::path, std::string>& files) {
    const auto target = fs::absolute(out_dir).lexically_normal();
    const auto parent = target.has_filename() ? target.parent_path() : target.parent_path().parent_path();
    const auto name = target.has_filename() ? target.filename() : target.parent_path().filename();
    const auto staging = parent / ("." + name.string() + ".staging-" + std::to_string(::getpid()));

    std::error_code ec;
    try {
        fs::create_directories(parent);
        fs::remove_all(staging, ec);
        fs::create_directories(staging);
        for (const auto& [rel, content] : files) {
            fs::create_directories((staging / rel).parent_path());
            write_file(staging / rel, content);
        }
        if (!fs::exists(target)) {
            fs::rename(staging, target);
            return;
        }
        for (const auto& [rel, content] : files) {
            fs::create_directories((target / rel).parent_path());
            fs::rename(staging / rel, target / rel);
        }
        fs::remove_all(staging);
    } catch (const fs::filesystem_error& e) {
        fs::remove_all(staging, ec);
        throw FatalError(kExitIo, e.what());
    } catch (const FatalError&) {
        fs::remove_all(staging, ec);
        throw;
    }
}

}  // namespace rasaeco
