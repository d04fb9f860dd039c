#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rasaeco/document.hpp"
#include "rasaeco/ontology.hpp"

namespace rasaeco {

/// Anchors of the markings of one document, per axis value in document order.
struct MarkingIndex {
    std::map<int, std::vector<std::string>> phases;
    std::map<int, std::vector<std::string>> levels;
};

MarkingIndex build_marking_index(const ScenarioDocument& doc);

struct RenderedPage {
    std::string identifier;
    std::string html;
    std::filesystem::path output_path;  // relative to the output directory
};

/// Renders the supported markdown subset of `markdown` (no semantic tags).
std::string render_markdown(std::string_view markdown);

/// Renders a body forest: markdown with the semantic tags transformed.
std::string render_segments(const std::vector<BodySegment>& segments, const ScenarioDocument& doc,
                            const Corpus& corpus);

/// A single tag; block-level containers come out as `div`, the rest inline.
std::string render_tag(const Tag& tag, const ScenarioDocument& doc, const Corpus& corpus);

/// True when a phase/level tag encloses block content (blank lines, headings,
/// list items or code fences) and is rendered as a `div`.
bool is_block_tag(const Tag& tag);

RenderedPage render_page(const ScenarioDocument& doc, const Corpus& corpus);

RenderedPage render_corpus_index(const Corpus& corpus, const OntologyGraph& graph);

/// The stylesheet embedded into every page.
std::string_view stylesheet();

}  // namespace rasaeco
