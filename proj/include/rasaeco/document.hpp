#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rasaeco/diagnostics.hpp"
#include "rasaeco/markup.hpp"
#include "rasaeco/scenario_space.hpp"

namespace rasaeco {

struct IfcMention {
    std::string token;
    SourcePos pos;
};

struct Definition {
    std::string name;
    std::string body_text;
    SourceSpan span;
    // Distinct `Ifc[A-Za-z0-9]+` tokens in order of first occurrence.
    std::vector<IfcMention> ifc_tokens;
};

struct ModelDecl {
    std::string name;
    std::string body_text;
    SourceSpan span;
};

struct Marking {
    Axis dimension = Axis::phase;  // phase or level
    int value = 0;                 // ordinal on that axis
    std::string text;
    SourceSpan span;
    std::string anchor_id;
};

/// `m-<dimension>-<value ordinal>-<occurrence>`, occurrence counted from 1
/// per (dimension, value) in document order.
std::string marking_anchor(Axis dimension, int value, int occurrence);

inline constexpr std::string_view kLocalScenario = "local";

struct Reference {
    TagKind kind = TagKind::ref;  // ref, modelref or scenarioref
    std::string raw_name;
    std::string target_scenario;  // kLocalScenario for unqualified ref/modelref
    std::string target_name;      // empty for scenarioref
    SourceSpan span;

    bool is_local() const { return target_scenario == kLocalScenario; }
};

/// Splits `name` or `scenario#name` for ref/modelref; scenarioref keeps the
/// whole text as the target scenario.
Reference make_reference(TagKind kind, const std::string& raw_name, const SourceSpan& span);

struct ScenarioDocument {
    std::string identifier;
    std::string path;
    MetaHeader meta;
    Volumetric volumetric;
    std::string body;
    std::vector<BodySegment> segments;
    std::map<std::string, ModelDecl> models;
    std::map<std::string, Definition> definitions;
    std::vector<Marking> markings;
    std::vector<Reference> references;

    /// Marking created for the phase/level tag whose span starts at `span`,
    /// or nullptr.
    const Marking* marking_at(const SourceSpan& span) const;
};

/// Identifiers are non-empty and consist of [a-z0-9_].
bool is_valid_identifier(std::string_view identifier);

struct BuildResult {
    ScenarioDocument document;
    std::vector<Diagnostic> diagnostics;
};

/// Registers symbols (E005 on duplicates), collects markings (E003 for
/// non-canonical values) and references, and validates the volumetric.
BuildResult build_document(std::string identifier, MetaHeader meta, std::string body,
                           std::vector<BodySegment> segments);

/// Full per-file front end: newline normalization, header extraction and
/// parsing, tokenizing, tag parsing and build_document. The document is absent
/// only when the header is missing or malformed.
Parsed<ScenarioDocument> load_document(const std::string& identifier, const std::string& path,
                                       std::string_view source);

/// E006 for each local ref/modelref without a matching local symbol.
std::vector<Diagnostic> resolve_local(const ScenarioDocument& doc);

using Vocabulary = std::set<std::string, std::less<>>;

/// The IFC entity names used when no vocabulary file is configured.
const Vocabulary& default_ifc_vocabulary();

/// One entity name per line; blank lines and `#` comments ignored.
Vocabulary parse_vocabulary(std::string_view text);

/// W101 per IFC token of a definition that is absent from the vocabulary.
std::vector<Diagnostic> lint_ifc(const ScenarioDocument& doc, const Vocabulary& vocabulary);

/// Removes the seven known tag kinds from `text`, keeping inner text. Repeats
/// until no tag is left, so the result never contains a tag.
std::string strip_tags(std::string_view text);
std::string strip_tags(const ScenarioDocument& doc);

/// Whitespace-separated runs after dropping heading markers, list bullets and
/// code fence lines. Code block contents count.
int count_words(std::string_view stripped_text);
int word_count(const ScenarioDocument& doc);

/// `Ifc[A-Za-z0-9]+` tokens not preceded by [A-Za-z0-9_], with byte offsets.
std::vector<std::pair<std::size_t, std::string>> find_ifc_tokens(std::string_view text);

}  // namespace rasaeco
