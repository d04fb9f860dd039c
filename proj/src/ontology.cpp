#include "rasaeco/ontology.hpp"

#include <algorithm>
#include <set>

namespace rasaeco {

namespace fs = std::filesystem;

Discovery discover(const fs::path& scenarios_dir) {
    std::vector<fs::path> found;
    for (const auto& entry : fs::recursive_directory_iterator(scenarios_dir)) {
        if (entry.is_regular_file() && entry.path().filename() == "scenario.md") {
            found.push_back(entry.path());
        }
    }
    std::sort(found.begin(), found.end());

    Discovery result;
    std::map<std::string, fs::path> by_identifier;
    for (const auto& path : found) {
        const auto identifier = path.parent_path().filename().string();
        const auto display = path.generic_string();
        if (!is_valid_identifier(identifier)) {
            result.diagnostics.push_back(make_diagnostic(
                Code::E010, "invalid scenario identifier '" + identifier + "', expected [a-z0-9_]+",
                SourcePos{display, 0, 0}));
            continue;
        }
        auto [it, inserted] = by_identifier.emplace(identifier, path);
        if (!inserted) {
            result.diagnostics.push_back(make_diagnostic(
                Code::E010,
                "duplicate scenario identifier '" + identifier + "', also at " + it->second.generic_string(),
                SourcePos{display, 0, 0}));
        }
    }
    for (auto& [identifier, path] : by_identifier) {
        result.files.push_back(DiscoveredFile{identifier, path});
    }
    return result;
}

const ScenarioDocument* Corpus::find(const std::string& identifier) const {
    auto it = documents.find(identifier);
    return it == documents.end() ? nullptr : &it->second;
}

const std::vector<std::string>& default_nature_vocabulary() {
    static const std::vector<std::string> kNatures{"uses", "refines", "is-step-of", "bundles"};
    return kNatures;
}

GraphResult build_graph(const Corpus& corpus, const std::vector<std::string>& natures) {
    GraphResult result;
    for (const auto& [identifier, doc] : corpus.documents) {
        result.graph.nodes.push_back(identifier);
    }
    for (const auto& [identifier, doc] : corpus.documents) {
        const auto at = doc.meta.span.start();
        for (const auto& relation : doc.meta.relations) {
            if (std::find(natures.begin(), natures.end(), relation.nature) == natures.end()) {
                result.diagnostics.push_back(make_diagnostic(
                    Code::W102,
                    "relation to '" + relation.target + "' has non-canonical nature '" + relation.nature + "'",
                    at));
            }
            if (corpus.find(relation.target) == nullptr) {
                result.diagnostics.push_back(make_diagnostic(
                    Code::E008, "relation targets unknown scenario '" + relation.target + "'", at));
                continue;
            }
            result.graph.edges.push_back(Edge{identifier, relation.target, relation.nature});
        }
    }
    return result;
}

std::vector<Diagnostic> resolve_cross(const Corpus& corpus) {
    std::vector<Diagnostic> out;
    for (const auto& [identifier, doc] : corpus.documents) {
        for (const auto& r : doc.references) {
            if (r.is_local()) continue;
            const auto* target = corpus.find(r.target_scenario);
            if (target == nullptr) {
                out.push_back(make_diagnostic(
                    Code::E007, "reference '" + r.raw_name + "' names unknown scenario '" + r.target_scenario + "'",
                    r.span.start()));
                continue;
            }
            if (r.kind == TagKind::ref && target->definitions.count(r.target_name) == 0) {
                out.push_back(make_diagnostic(Code::E006, "unresolved reference '" + r.raw_name + "'",
                                              r.span.start()));
            } else if (r.kind == TagKind::modelref && target->models.count(r.target_name) == 0) {
                out.push_back(make_diagnostic(Code::E006, "unresolved model reference '" + r.raw_name + "'",
                                              r.span.start()));
            }
        }
    }
    return out;
}

NodeDegree DegreeStats::at(const std::string& node) const {
    auto it = per_node.find(node);
    return it == per_node.end() ? NodeDegree{} : it->second;
}

DegreeStats degree_stats(const OntologyGraph& graph) {
    DegreeStats stats;
    for (const auto& node : graph.nodes) stats.per_node[node];
    for (const auto& e : graph.edges) {
        ++stats.per_node[e.source].out_degree;
        ++stats.per_node[e.target].in_degree;
    }
    return stats;
}

}  // namespace rasaeco
