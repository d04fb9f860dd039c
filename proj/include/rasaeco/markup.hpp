#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rasaeco/diagnostics.hpp"
#include "rasaeco/scenario_space.hpp"

namespace rasaeco {

/// A value together with the diagnostics produced while computing it. The
/// value is absent when a fatal diagnostic prevented producing one.
template <class T>
struct Parsed {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value(); }
};

/// Lines and columns are 1-based byte positions in the newline-normalized
/// file. The end position is exclusive: it points just past the last byte.
struct SourceSpan {
    std::string path;
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    SourcePos start() const { return SourcePos{path, start_line, start_col}; }
    bool operator==(const SourceSpan&) const = default;
};

/// Replaces every CRLF by LF.
std::string normalize_newlines(std::string_view text);

struct MetaExtraction {
    std::string raw_meta;
    SourceSpan meta_span;
    std::string body;
    SourceSpan body_span;
};

/// Splits a (normalized) scenario file into its `<rasaeco-meta>` payload and
/// the body. A single LF directly after the closing tag belongs to neither.
/// E001 when there is no header; E002 when it is not the first construct or
/// is not closed.
Parsed<MetaExtraction> extract_meta(std::string_view source, const std::string& path);

struct Relation {
    std::string target;
    std::string nature;

    bool operator==(const Relation&) const = default;
};

struct RawCuboid {
    std::string aspect_from;
    std::string aspect_to;
    std::string phase_from;
    std::string phase_to;
    std::string level_from;
    std::string level_to;

    bool operator==(const RawCuboid&) const = default;
};

struct MetaHeader {
    std::string title;
    std::optional<std::string> contact;
    std::vector<Relation> relations;
    std::vector<RawCuboid> volumetric;
    SourceSpan span;
};

/// Parses the JSON payload of the header. E002 for malformed JSON, a missing
/// or empty title, or ill-typed fields; E003 per unknown axis token. Unknown
/// axis tokens do not prevent producing a header.
Parsed<MetaHeader> parse_meta(std::string_view raw, const SourceSpan& span);

/// The cuboids whose six tokens are all canonical spellings, in header order.
Volumetric resolve_volumetric(const MetaHeader& header);

enum class TagKind { phase, level, model, def, ref, modelref, scenarioref };

std::string_view tag_kind_name(TagKind kind);
std::optional<TagKind> parse_tag_kind(std::string_view name);
bool is_container(TagKind kind);

enum class TokenType { text, open, close, void_tag };

struct Token {
    TokenType type = TokenType::text;
    TagKind kind = TagKind::phase;  // meaningless for text tokens
    std::string name;
    std::string raw;
    SourceSpan span;
};

struct TokenizeResult {
    std::vector<Token> tokens;
    std::vector<Diagnostic> diagnostics;
};

/// Splits a body into text runs and tag tokens. `origin` is the position of
/// the first body byte in the file. Never fails: anything that is not a
/// well-formed tag of a known kind stays text, and the concatenated `raw`
/// fields reproduce the body.
TokenizeResult tokenize_body(std::string_view body, const SourceSpan& origin);

struct BodySegment;

struct TextRun {
    std::string text;
    SourceSpan span;
};

struct Tag {
    TagKind kind = TagKind::phase;
    std::string name;
    std::vector<BodySegment> children;
    SourceSpan span;
    std::string open_raw;
    std::string close_raw;
};

struct BodySegment {
    std::variant<TextRun, Tag> node;

    const TextRun* text() const { return std::get_if<TextRun>(&node); }
    const Tag* tag() const { return std::get_if<Tag>(&node); }
};

struct ParseTagsResult {
    std::vector<BodySegment> segments;
    std::vector<Diagnostic> diagnostics;
};

/// Builds the tag forest. Misnesting is reported as E009 and recovered from
/// so that raw_source(segments) still equals the tokenized body.
ParseTagsResult parse_tags(const std::vector<Token>& tokens);

std::string raw_source(const std::vector<BodySegment>& segments);

/// Text of all runs below `segments` in document order, tags removed.
std::string flatten_text(const std::vector<BodySegment>& segments);

}  // namespace rasaeco
