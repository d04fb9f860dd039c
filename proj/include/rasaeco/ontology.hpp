#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rasaeco/diagnostics.hpp"
#include "rasaeco/document.hpp"

namespace rasaeco {

struct DiscoveredFile {
    std::string identifier;
    std::filesystem::path path;
};

struct Discovery {
    std::vector<DiscoveredFile> files;  // sorted by identifier
    std::vector<Diagnostic> diagnostics;
};

/// Recursively finds every `scenario.md` below `scenarios_dir`; the parent
/// directory name is the identifier. E010 for identifiers that repeat or do
/// not match [a-z0-9_]+. Throws std::filesystem::filesystem_error when the
/// directory cannot be read.
Discovery discover(const std::filesystem::path& scenarios_dir);

struct Corpus {
    std::map<std::string, ScenarioDocument> documents;

    const ScenarioDocument* find(const std::string& identifier) const;
};

struct Edge {
    std::string source;
    std::string target;
    std::string nature;

    bool operator==(const Edge&) const = default;
};

struct OntologyGraph {
    std::vector<std::string> nodes;  // lexicographic
    std::vector<Edge> edges;         // sources lexicographic, meta order per source
};

const std::vector<std::string>& default_nature_vocabulary();

struct GraphResult {
    OntologyGraph graph;
    std::vector<Diagnostic> diagnostics;
};

/// One edge per relation. Relations to unknown scenarios are reported as
/// E008 and left out of the graph; natures outside `natures` yield W102.
GraphResult build_graph(const Corpus& corpus,
                        const std::vector<std::string>& natures = default_nature_vocabulary());

/// E007 for qualified references or scenariorefs naming an unknown scenario;
/// E006 when the scenario exists but lacks the referenced symbol.
std::vector<Diagnostic> resolve_cross(const Corpus& corpus);

struct NodeDegree {
    int in_degree = 0;
    int out_degree = 0;

    bool operator==(const NodeDegree&) const = default;
};

struct DegreeStats {
    std::map<std::string, NodeDegree> per_node;

    NodeDegree at(const std::string& node) const;
};

DegreeStats degree_stats(const OntologyGraph& graph);

}  // namespace rasaeco
