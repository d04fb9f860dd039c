#include "rasaeco/markup.hpp"

#include <array>
#include <utility>

#include "json.hpp"

namespace rasaeco {

namespace {

constexpr std::string_view kMetaOpen = "<rasaeco-meta>";
constexpr std::string_view kMetaClose = "</rasaeco-meta>";

struct Cursor {
    int line = 1;
    int col = 1;

    void advance(std::string_view text) {
        for (char c : text) {
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    }
};

Cursor cursor_at(std::string_view text, std::size_t offset, Cursor from = {}) {
    from.advance(text.substr(0, offset));
    return from;
}

SourcePos pos_of(const std::string& path, Cursor c) { return SourcePos{path, c.line, c.col}; }

SourceSpan span_between(const std::string& path, Cursor start, Cursor end) {
    return SourceSpan{path, start.line, start.col, end.line, end.col};
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string decode_entities(std::string_view value) {
    static constexpr std::array<std::pair<std::string_view, char>, 4> kEntities{{
        {"&lt;", '<'}, {"&gt;", '>'}, {"&amp;", '&'}, {"&quot;", '"'}}};
    std::string out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size();) {
        bool replaced = false;
        if (value[i] == '&') {
            for (const auto& [entity, c] : kEntities) {
                if (value.substr(i, entity.size()) == entity) {
                    out.push_back(c);
                    i += entity.size();
                    replaced = true;
                    break;
                }
            }
        }
        if (!replaced) out.push_back(value[i++]);
    }
    return out;
}

const nlohmann::json* find_key(const nlohmann::json& object, const char* key) {
    auto it = object.find(key);
    return it == object.end() ? nullptr : &*it;
}

}  // namespace

std::string normalize_newlines(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
        out.push_back(text[i]);
    }
    return out;
}

Parsed<MetaExtraction> extract_meta(std::string_view source, const std::string& path) {
    Parsed<MetaExtraction> result;
    std::size_t first = 0;
    while (first < source.size() && is_space(source[first])) ++first;

    const auto open = source.find(kMetaOpen);
    if (open == std::string_view::npos) {
        result.diagnostics.push_back(
            make_diagnostic(Code::E001, "missing <rasaeco-meta> header", SourcePos{path, 1, 1}));
        return result;
    }
    if (open != first) {
        result.diagnostics.push_back(
            make_diagnostic(Code::E002, "the <rasaeco-meta> header must be the first construct",
                            pos_of(path, cursor_at(source, first))));
        return result;
    }
    const auto content_begin = open + kMetaOpen.size();
    const auto close = source.find(kMetaClose, content_begin);
    if (close == std::string_view::npos) {
        result.diagnostics.push_back(make_diagnostic(
            Code::E002, "unclosed <rasaeco-meta> header", pos_of(path, cursor_at(source, open))));
        return result;
    }
    auto body_begin = close + kMetaClose.size();
    if (body_begin < source.size() && source[body_begin] == '\n') ++body_begin;

    const Cursor meta_start = cursor_at(source, content_begin);
    const Cursor meta_end = cursor_at(source.substr(content_begin), close - content_begin, meta_start);
    const Cursor body_start = cursor_at(source.substr(content_begin), body_begin - content_begin, meta_start);
    const Cursor body_end = cursor_at(source.substr(body_begin), source.size() - body_begin, body_start);

    MetaExtraction extraction;
    extraction.raw_meta = std::string(source.substr(content_begin, close - content_begin));
    extraction.meta_span = span_between(path, meta_start, meta_end);
    extraction.body = std::string(source.substr(body_begin));
    extraction.body_span = span_between(path, body_start, body_end);
    result.value = std::move(extraction);
    return result;
}

Parsed<MetaHeader> parse_meta(std::string_view raw, const SourceSpan& span) {
    Parsed<MetaHeader> result;
    const SourcePos at = span.start();
    auto malformed = [&](const std::string& what) {
        result.diagnostics.push_back(make_diagnostic(Code::E002, "malformed meta header: " + what, at));
    };

    nlohmann::json root;
    try {
        root = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        Cursor c{span.start_line, span.start_col};
        const auto consumed = e.byte > 0 ? std::min<std::size_t>(e.byte - 1, raw.size()) : 0;
        c.advance(raw.substr(0, consumed));
        result.diagnostics.push_back(make_diagnostic(
            Code::E002, "malformed meta header: invalid JSON", SourcePos{span.path, c.line, c.col}));
        return result;
    }
    if (!root.is_object()) {
        malformed("expected a JSON object");
        return result;
    }

    MetaHeader header;
    header.span = span;

    const auto* title = find_key(root, "title");
    if (title == nullptr || !title->is_string() || trim(title->get<std::string>()).empty()) {
        malformed("\"title\" must be a non-empty string");
    } else {
        header.title = trim(title->get<std::string>());
    }

    if (const auto* contact = find_key(root, "contact")) {
        if (contact->is_string()) {
            header.contact = contact->get<std::string>();
        } else {
            malformed("\"contact\" must be a string");
        }
    }

    if (const auto* relations = find_key(root, "relations")) {
        if (!relations->is_array()) {
            malformed("\"relations\" must be an array");
        } else {
            for (const auto& item : *relations) {
                const auto* target = item.is_object() ? find_key(item, "target") : nullptr;
                const auto* nature = item.is_object() ? find_key(item, "nature") : nullptr;
                if (target == nullptr || nature == nullptr || !target->is_string() ||
                    !nature->is_string() || target->get<std::string>().empty() ||
                    nature->get<std::string>().empty()) {
                    malformed("every relation needs non-empty string \"target\" and \"nature\"");
                    continue;
                }
                header.relations.push_back({target->get<std::string>(), nature->get<std::string>()});
            }
        }
    }

    static constexpr std::array<const char*, 6> kAxisKeys{
        "aspect_from", "aspect_to", "phase_from", "phase_to", "level_from", "level_to"};
    if (const auto* volumetric = find_key(root, "volumetric")) {
        if (!volumetric->is_array()) {
            malformed("\"volumetric\" must be an array");
        } else {
            for (const auto& item : *volumetric) {
                std::array<std::string, 6> tokens;
                bool complete = item.is_object();
                for (std::size_t k = 0; complete && k < kAxisKeys.size(); ++k) {
                    const auto* value = find_key(item, kAxisKeys[k]);
                    if (value == nullptr || !value->is_string()) {
                        complete = false;
                    } else {
                        tokens[k] = value->get<std::string>();
                    }
                }
                if (!complete) {
                    malformed("every cuboid needs the six string keys aspect_from .. level_to");
                    continue;
                }
                header.volumetric.push_back(
                    RawCuboid{tokens[0], tokens[1], tokens[2], tokens[3], tokens[4], tokens[5]});
            }
        }
    }

    if (!result.diagnostics.empty()) return result;

    for (std::size_t i = 0; i < header.volumetric.size(); ++i) {
        const auto& c = header.volumetric[i];
        const std::array<std::pair<const std::string*, Axis>, 6> fields{{
            {&c.aspect_from, Axis::aspect}, {&c.aspect_to, Axis::aspect},
            {&c.phase_from, Axis::phase}, {&c.phase_to, Axis::phase},
            {&c.level_from, Axis::level}, {&c.level_to, Axis::level}}};
        for (std::size_t k = 0; k < fields.size(); ++k) {
            const auto& [token, axis] = fields[k];
            if (!try_parse_axis_value(axis, *token)) {
                result.diagnostics.push_back(make_diagnostic(
                    Code::E003,
                    "unknown " + std::string(axis_name(axis)) + " '" + *token + "' in cuboid " +
                        std::to_string(i + 1) + " (" + kAxisKeys[k] + ")",
                    at));
            }
        }
    }
    result.value = std::move(header);
    return result;
}

Volumetric resolve_volumetric(const MetaHeader& header) {
    Volumetric v;
    for (const auto& raw : header.volumetric) {
        auto af = try_parse_axis_value(Axis::aspect, raw.aspect_from);
        auto at = try_parse_axis_value(Axis::aspect, raw.aspect_to);
        auto pf = try_parse_axis_value(Axis::phase, raw.phase_from);
        auto pt = try_parse_axis_value(Axis::phase, raw.phase_to);
        auto lf = try_parse_axis_value(Axis::level, raw.level_from);
        auto lt = try_parse_axis_value(Axis::level, raw.level_to);
        if (!af || !at || !pf || !pt || !lf || !lt) continue;
        v.cuboids.push_back(Cuboid{static_cast<Aspect>(af->ordinal), static_cast<Aspect>(at->ordinal),
                                   static_cast<Phase>(pf->ordinal), static_cast<Phase>(pt->ordinal),
                                   static_cast<Level>(lf->ordinal), static_cast<Level>(lt->ordinal)});
    }
    return v;
}

// ---------------------------------------------------------------------------
// Tag tokens

std::string_view tag_kind_name(TagKind kind) {
    switch (kind) {
        case TagKind::phase: return "phase";
        case TagKind::level: return "level";
        case TagKind::model: return "model";
        case TagKind::def: return "def";
        case TagKind::ref: return "ref";
        case TagKind::modelref: return "modelref";
        case TagKind::scenarioref: return "scenarioref";
    }
    return "phase";
}

std::optional<TagKind> parse_tag_kind(std::string_view name) {
    static constexpr std::array<TagKind, 7> kKinds{TagKind::phase, TagKind::level, TagKind::model,
                                                   TagKind::def, TagKind::ref, TagKind::modelref,
                                                   TagKind::scenarioref};
    for (auto kind : kKinds) {
        if (tag_kind_name(kind) == name) return kind;
    }
    return std::nullopt;
}

bool is_container(TagKind kind) {
    return kind == TagKind::phase || kind == TagKind::level || kind == TagKind::model ||
           kind == TagKind::def;
}

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

std::string_view read_word(std::string_view s, std::size_t& i) {
    const auto begin = i;
    while (i < s.size() && is_lower(s[i])) ++i;
    return s.substr(begin, i - begin);
}

bool is_boundary(std::string_view s, std::size_t i, bool allow_slash) {
    if (i >= s.size()) return false;
    return is_space(s[i]) || s[i] == '>' || (allow_slash && s[i] == '/');
}

// Outcome of trying to read a tag at a '<'.
struct TagScan {
    enum class Status { not_a_tag, tag, malformed } status = Status::not_a_tag;
    Token token;             // valid when status == tag
    std::size_t length = 0;  // bytes consumed for tag or malformed
    std::vector<std::string> problems;
};

// Extent of a malformed construct starting at `begin`: through the next '>'
// unless another '<' comes first.
std::size_t malformed_extent(std::string_view s, std::size_t begin) {
    for (std::size_t i = begin + 1; i < s.size(); ++i) {
        if (s[i] == '>') return i + 1 - begin;
        if (s[i] == '<') return i - begin;
    }
    return s.size() - begin;
}

TagScan scan_tag(std::string_view s, std::size_t begin) {
    TagScan scan;
    std::size_t i = begin + 1;
    const bool closing = i < s.size() && s[i] == '/';
    if (closing) ++i;
    const auto word = read_word(s, i);
    const auto kind = parse_tag_kind(word);
    if (!kind || !is_boundary(s, i, !closing)) return scan;

    auto fail = [&](std::string problem) {
        scan.status = TagScan::Status::malformed;
        scan.length = malformed_extent(s, begin);
        scan.problems.push_back(std::move(problem));
        return scan;
    };
    const std::string label = std::string(word);

    if (closing) {
        while (i < s.size() && is_space(s[i])) ++i;
        if (i >= s.size() || s[i] != '>') return fail("malformed closing tag </" + label + ">");
        if (!is_container(*kind)) {
            return fail("<" + label + "> is a void tag and has no closing tag");
        }
        scan.status = TagScan::Status::tag;
        scan.length = i + 1 - begin;
        scan.token.type = TokenType::close;
        scan.token.kind = *kind;
        return scan;
    }

    std::optional<std::string> name;
    bool self_closing = false;
    for (;;) {
        const auto before_space = i;
        while (i < s.size() && is_space(s[i])) ++i;
        if (i >= s.size()) return fail("unterminated <" + label + "> tag");
        if (s[i] == '>') break;
        if (s[i] == '/') {
            if (i + 1 < s.size() && s[i + 1] == '>') {
                self_closing = true;
                ++i;
                break;
            }
            return fail("malformed <" + label + "> tag");
        }
        if (i == before_space) return fail("malformed <" + label + "> tag");
        const auto attr_begin = i;
        while (i < s.size() && (is_lower(s[i]) || s[i] == '_' || s[i] == '-')) ++i;
        const auto attr = std::string(s.substr(attr_begin, i - attr_begin));
        while (i < s.size() && is_space(s[i])) ++i;
        if (attr.empty() || i >= s.size() || s[i] != '=') {
            return fail("malformed attribute in <" + label + "> tag");
        }
        ++i;
        while (i < s.size() && is_space(s[i])) ++i;
        if (i >= s.size() || (s[i] != '"' && s[i] != '\'')) {
            return fail("attribute values in <" + label + "> must be quoted");
        }
        const char quote = s[i++];
        const auto value_begin = i;
        while (i < s.size() && s[i] != quote && s[i] != '<' && s[i] != '>') ++i;
        if (i >= s.size() || s[i] != quote) return fail("unterminated attribute value in <" + label + ">");
        const auto value = decode_entities(s.substr(value_begin, i - value_begin));
        ++i;
        if (attr != "name") {
            scan.problems.push_back("unexpected attribute '" + attr + "' on <" + label + ">");
        } else if (name) {
            scan.problems.push_back("duplicate name attribute on <" + label + ">");
        } else {
            name = value;
        }
    }

    if (is_container(*kind) && self_closing) {
        return fail("<" + label + "> is a container tag and needs a closing tag");
    }
    if (!is_container(*kind) && !self_closing) {
        return fail("<" + label + "> is a void tag and must be self-closing");
    }
    if (!name || name->empty()) {
        scan.problems.push_back("<" + label + "> tag requires a non-empty name attribute");
    }
    scan.status = TagScan::Status::tag;
    scan.length = i + 1 - begin;
    scan.token.type = self_closing ? TokenType::void_tag : TokenType::open;
    scan.token.kind = *kind;
    scan.token.name = name.value_or("");
    return scan;
}

}  // namespace

TokenizeResult tokenize_body(std::string_view body, const SourceSpan& origin) {
    TokenizeResult result;
    Cursor cursor{origin.start_line, origin.start_col};
    std::size_t text_begin = 0;
    Cursor text_cursor = cursor;

    auto flush_text = [&](std::size_t end) {
        if (end == text_begin) return;
        Token t;
        t.type = TokenType::text;
        t.raw = std::string(body.substr(text_begin, end - text_begin));
        Cursor end_cursor = text_cursor;
        end_cursor.advance(t.raw);
        t.span = span_between(origin.path, text_cursor, end_cursor);
        result.tokens.push_back(std::move(t));
    };

    std::size_t i = 0;
    while (i < body.size()) {
        if (body[i] != '<') {
            cursor.advance(body.substr(i, 1));
            ++i;
            continue;
        }
        auto scan = scan_tag(body, i);
        if (scan.status == TagScan::Status::not_a_tag) {
            cursor.advance(body.substr(i, 1));
            ++i;
            continue;
        }
        for (auto& problem : scan.problems) {
            result.diagnostics.push_back(
                make_diagnostic(Code::E009, std::move(problem), pos_of(origin.path, cursor)));
        }
        const auto raw = body.substr(i, scan.length);
        if (scan.status == TagScan::Status::malformed) {
            cursor.advance(raw);
            i += scan.length;
            continue;
        }
        flush_text(i);
        Cursor end_cursor = cursor;
        end_cursor.advance(raw);
        scan.token.raw = std::string(raw);
        scan.token.span = span_between(origin.path, cursor, end_cursor);
        result.tokens.push_back(std::move(scan.token));
        cursor = end_cursor;
        i += scan.length;
        text_begin = i;
        text_cursor = cursor;
    }
    flush_text(body.size());
    return result;
}

// ---------------------------------------------------------------------------
// Tag forest

namespace {

std::string open_label(const Tag& tag) {
    return "<" + std::string(tag_kind_name(tag.kind)) + " name=\"" + tag.name + "\">";
}

bool is_symbol_container(TagKind kind) { return kind == TagKind::def || kind == TagKind::model; }

}  // namespace

ParseTagsResult parse_tags(const std::vector<Token>& tokens) {
    ParseTagsResult result;
    // Open containers; the bottom frame collects top-level segments.
    std::vector<Tag> stack;
    std::vector<BodySegment> top;

    auto children = [&]() -> std::vector<BodySegment>& {
        return stack.empty() ? top : stack.back().children;
    };
    auto close_top = [&](const Token* closer) {
        Tag tag = std::move(stack.back());
        stack.pop_back();
        if (closer != nullptr) {
            tag.close_raw = closer->raw;
            tag.span.end_line = closer->span.end_line;
            tag.span.end_col = closer->span.end_col;
        } else if (!tag.children.empty()) {
            const auto& last = tag.children.back();
            const auto& last_span = last.text() ? last.text()->span : last.tag()->span;
            tag.span.end_line = last_span.end_line;
            tag.span.end_col = last_span.end_col;
        }
        children().push_back(BodySegment{std::move(tag)});
    };
    auto append_text = [&](const Token& t) {
        auto& list = children();
        if (!list.empty()) {
            if (auto* run = std::get_if<TextRun>(&list.back().node)) {
                run->text += t.raw;
                run->span.end_line = t.span.end_line;
                run->span.end_col = t.span.end_col;
                return;
            }
        }
        list.push_back(BodySegment{TextRun{t.raw, t.span}});
    };

    for (const auto& t : tokens) {
        switch (t.type) {
            case TokenType::text:
                append_text(t);
                break;
            case TokenType::void_tag: {
                Tag tag;
                tag.kind = t.kind;
                tag.name = t.name;
                tag.span = t.span;
                tag.open_raw = t.raw;
                children().push_back(BodySegment{std::move(tag)});
                break;
            }
            case TokenType::open: {
                if (is_symbol_container(t.kind)) {
                    for (const auto& open : stack) {
                        if (is_symbol_container(open.kind)) {
                            result.diagnostics.push_back(make_diagnostic(
                                Code::E009,
                                "<" + std::string(tag_kind_name(t.kind)) + "> may not be nested inside " +
                                    open_label(open),
                                t.span.start()));
                            break;
                        }
                    }
                }
                Tag tag;
                tag.kind = t.kind;
                tag.name = t.name;
                tag.span = t.span;
                tag.open_raw = t.raw;
                stack.push_back(std::move(tag));
                break;
            }
            case TokenType::close: {
                const auto kind_name = std::string(tag_kind_name(t.kind));
                if (stack.empty()) {
                    result.diagnostics.push_back(make_diagnostic(
                        Code::E009, "</" + kind_name + "> without a matching open tag", t.span.start()));
                    append_text(t);
                    break;
                }
                if (stack.back().kind != t.kind) {
                    bool deeper = false;
                    for (const auto& open : stack) deeper = deeper || open.kind == t.kind;
                    if (deeper) {
                        // Implicitly close everything above the matching container.
                        while (stack.back().kind != t.kind) {
                            result.diagnostics.push_back(make_diagnostic(
                                Code::E009, "unclosed " + open_label(stack.back()) + " before </" + kind_name + ">",
                                stack.back().span.start()));
                            close_top(nullptr);
                        }
                    } else {
                        result.diagnostics.push_back(make_diagnostic(
                            Code::E009,
                            "mismatched </" + kind_name + ">, expected </" +
                                std::string(tag_kind_name(stack.back().kind)) + ">",
                            t.span.start()));
                    }
                }
                close_top(&t);
                break;
            }
        }
    }
    while (!stack.empty()) {
        result.diagnostics.push_back(make_diagnostic(
            Code::E009, "unclosed " + open_label(stack.back()) + " at end of body", stack.back().span.start()));
        close_top(nullptr);
    }
    result.segments = std::move(top);
    return result;
}

namespace {

void append_raw(const std::vector<BodySegment>& segments, std::string& out) {
    for (const auto& s : segments) {
        if (const auto* run = s.text()) {
            out += run->text;
        } else if (const auto* tag = s.tag()) {
            out += tag->open_raw;
            append_raw(tag->children, out);
            out += tag->close_raw;
        }
    }
}

void append_text(const std::vector<BodySegment>& segments, std::string& out) {
    for (const auto& s : segments) {
        if (const auto* run = s.text()) {
            out += run->text;
        } else if (const auto* tag = s.tag()) {
            append_text(tag->children, out);
        }
    }
}

}  // namespace

std::string raw_source(const std::vector<BodySegment>& segments) {
    std::string out;
    append_raw(segments, out);
    return out;
}

std::string flatten_text(const std::vector<BodySegment>& segments) {
    std::string out;
    append_text(segments, out);
    return out;
}

}  // namespace rasaeco
