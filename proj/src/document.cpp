#include "rasaeco/document.hpp"

#include <utility>

namespace rasaeco {

namespace {

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_alnum(char c) { return is_word_char(c) && c != '_'; }

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

bool is_space(char c) { return is_blank(c) || c == '\n'; }

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

// Text of a subtree plus where each run starts, for mapping offsets back to
// source positions.
struct LocatedText {
    std::string text;
    std::vector<std::pair<std::size_t, SourceSpan>> runs;

    SourcePos position(std::size_t offset) const {
        const std::pair<std::size_t, SourceSpan>* run = nullptr;
        for (const auto& r : runs) {
            if (r.first <= offset) run = &r;
        }
        if (run == nullptr) return {};
        SourcePos pos{run->second.path, run->second.start_line, run->second.start_col};
        for (std::size_t i = run->first; i < offset; ++i) {
            if (text[i] == '\n') {
                ++pos.line;
                pos.col = 1;
            } else {
                ++pos.col;
            }
        }
        return pos;
    }
};

void collect_text(const std::vector<BodySegment>& segments, LocatedText& out) {
    for (const auto& s : segments) {
        if (const auto* run = s.text()) {
            out.runs.emplace_back(out.text.size(), run->span);
            out.text += run->text;
        } else if (const auto* tag = s.tag()) {
            collect_text(tag->children, out);
        }
    }
}

class DocumentBuilder {
public:
    DocumentBuilder(ScenarioDocument& doc, std::vector<Diagnostic>& diagnostics)
        : doc_(doc), diagnostics_(diagnostics) {}

    void walk(const std::vector<BodySegment>& segments) {
        for (const auto& s : segments) {
            if (const auto* tag = s.tag()) visit(*tag);
        }
    }

private:
    void visit(const Tag& tag) {
        // Empty names were already reported by the tokenizer.
        if (!tag.name.empty()) {
            switch (tag.kind) {
                case TagKind::phase: add_marking(tag, Axis::phase); break;
                case TagKind::level: add_marking(tag, Axis::level); break;
                case TagKind::def: add_definition(tag); break;
                case TagKind::model: add_model(tag); break;
                case TagKind::ref:
                case TagKind::modelref:
                case TagKind::scenarioref:
                    doc_.references.push_back(make_reference(tag.kind, tag.name, tag.span));
                    break;
            }
        }
        walk(tag.children);
    }

    void add_marking(const Tag& tag, Axis axis) {
        auto value = try_parse_axis_value(axis, tag.name);
        if (!value) {
            diagnostics_.push_back(make_diagnostic(
                Code::E003, "unknown " + std::string(axis_name(axis)) + " '" + tag.name + "' in marking",
                tag.span.start()));
            return;
        }
        auto& seen = occurrences_[{axis, value->ordinal}];
        ++seen;
        Marking m;
        m.dimension = axis;
        m.value = value->ordinal;
        m.text = trim(flatten_text(tag.children));
        m.span = tag.span;
        m.anchor_id = marking_anchor(axis, value->ordinal, seen);
        doc_.markings.push_back(std::move(m));
    }

    bool check_duplicate(const Tag& tag, bool exists, const char* what) {
        if (!exists) return false;
        diagnostics_.push_back(make_diagnostic(
            Code::E005, std::string("duplicate ") + what + " '" + tag.name + "'", tag.span.start()));
        return true;
    }

    void add_definition(const Tag& tag) {
        if (check_duplicate(tag, doc_.definitions.count(tag.name) > 0, "definition")) return;
        LocatedText located;
        collect_text(tag.children, located);
        Definition d;
        d.name = tag.name;
        d.body_text = trim(located.text);
        d.span = tag.span;
        std::set<std::string> seen;
        for (auto& [offset, token] : find_ifc_tokens(located.text)) {
            if (!seen.insert(token).second) continue;
            d.ifc_tokens.push_back(IfcMention{token, located.position(offset)});
        }
        doc_.definitions.emplace(tag.name, std::move(d));
    }

    void add_model(const Tag& tag) {
        if (check_duplicate(tag, doc_.models.count(tag.name) > 0, "model")) return;
        doc_.models.emplace(tag.name, ModelDecl{tag.name, trim(flatten_text(tag.children)), tag.span});
    }

    ScenarioDocument& doc_;
    std::vector<Diagnostic>& diagnostics_;
    std::map<std::pair<Axis, int>, int> occurrences_;
};

}  // namespace

std::string marking_anchor(Axis dimension, int value, int occurrence) {
    return "m-" + std::string(axis_name(dimension)) + "-" + std::to_string(value) + "-" +
           std::to_string(occurrence);
}

Reference make_reference(TagKind kind, const std::string& raw_name, const SourceSpan& span) {
    Reference r;
    r.kind = kind;
    r.raw_name = raw_name;
    r.span = span;
    if (kind == TagKind::scenarioref) {
        r.target_scenario = raw_name;
        return r;
    }
    const auto hash = raw_name.find('#');
    if (hash == std::string::npos) {
        r.target_scenario = std::string(kLocalScenario);
        r.target_name = raw_name;
    } else {
        r.target_scenario = raw_name.substr(0, hash);
        r.target_name = raw_name.substr(hash + 1);
    }
    return r;
}

const Marking* ScenarioDocument::marking_at(const SourceSpan& span) const {
    for (const auto& m : markings) {
        if (m.span.start_line == span.start_line && m.span.start_col == span.start_col) return &m;
    }
    return nullptr;
}

bool is_valid_identifier(std::string_view identifier) {
    if (identifier.empty()) return false;
    for (char c : identifier) {
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    }
    return true;
}

BuildResult build_document(std::string identifier, MetaHeader meta, std::string body,
                           std::vector<BodySegment> segments) {
    BuildResult result;
    auto& doc = result.document;
    doc.identifier = std::move(identifier);
    doc.path = meta.span.path;
    doc.volumetric = resolve_volumetric(meta);
    doc.meta = std::move(meta);
    doc.body = std::move(body);
    doc.segments = std::move(segments);

    DocumentBuilder(doc, result.diagnostics).walk(doc.segments);

    auto volumetric = validate_volumetric(doc.volumetric, doc.meta.span.start());
    result.diagnostics.insert(result.diagnostics.end(), volumetric.begin(), volumetric.end());
    return result;
}

Parsed<ScenarioDocument> load_document(const std::string& identifier, const std::string& path,
                                       std::string_view source) {
    Parsed<ScenarioDocument> result;
    const auto text = normalize_newlines(source);
    auto extracted = extract_meta(text, path);
    result.diagnostics = std::move(extracted.diagnostics);
    if (!extracted.value) return result;

    auto meta = parse_meta(extracted.value->raw_meta, extracted.value->meta_span);
    result.diagnostics.insert(result.diagnostics.end(), meta.diagnostics.begin(), meta.diagnostics.end());
    if (!meta.value) return result;

    auto tokens = tokenize_body(extracted.value->body, extracted.value->body_span);
    auto tags = parse_tags(tokens.tokens);
    auto built = build_document(identifier, std::move(*meta.value), std::move(extracted.value->body),
                                std::move(tags.segments));
    for (auto* list : {&tokens.diagnostics, &tags.diagnostics, &built.diagnostics}) {
        result.diagnostics.insert(result.diagnostics.end(), list->begin(), list->end());
    }
    result.value = std::move(built.document);
    return result;
}

std::vector<Diagnostic> resolve_local(const ScenarioDocument& doc) {
    std::vector<Diagnostic> out;
    for (const auto& r : doc.references) {
        if (!r.is_local()) continue;
        if (r.kind == TagKind::ref && doc.definitions.count(r.target_name) == 0) {
            out.push_back(make_diagnostic(Code::E006, "unresolved reference '" + r.target_name + "'",
                                          r.span.start()));
        } else if (r.kind == TagKind::modelref && doc.models.count(r.target_name) == 0) {
            out.push_back(make_diagnostic(Code::E006, "unresolved model reference '" + r.target_name + "'",
                                          r.span.start()));
        }
    }
    return out;
}

const Vocabulary& default_ifc_vocabulary() {
    static const Vocabulary kDefault{
        "IfcActor",    "IfcControl",         "IfcCostItem", "IfcPerformanceHistory",
        "IfcRelAssignsToControl", "IfcTask", "IfcZone",
    };
    return kDefault;
}

Vocabulary parse_vocabulary(std::string_view text) {
    Vocabulary out;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        auto line = trim(text.substr(begin, end - begin));
        if (!line.empty() && line.front() != '#') out.insert(std::move(line));
        begin = end + 1;
    }
    return out;
}

std::vector<Diagnostic> lint_ifc(const ScenarioDocument& doc, const Vocabulary& vocabulary) {
    std::vector<Diagnostic> out;
    for (const auto& [name, def] : doc.definitions) {
        for (const auto& mention : def.ifc_tokens) {
            if (vocabulary.count(mention.token) == 0) {
                out.push_back(make_diagnostic(
                    Code::W101, "unknown IFC entity '" + mention.token + "' in definition '" + name + "'",
                    mention.pos));
            }
        }
    }
    return out;
}

std::vector<std::pair<std::size_t, std::string>> find_ifc_tokens(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    for (std::size_t i = text.find("Ifc"); i != std::string_view::npos; i = text.find("Ifc", i + 1)) {
        if (i > 0 && is_word_char(text[i - 1])) continue;
        auto end = i + 3;
        while (end < text.size() && is_alnum(text[end])) ++end;
        if (end == i + 3) continue;
        out.emplace_back(i, std::string(text.substr(i, end - i)));
    }
    return out;
}

std::string strip_tags(std::string_view text) {
    std::string current(text);
    for (;;) {
        auto tokens = tokenize_body(current, SourceSpan{});
        std::string stripped;
        bool removed = false;
        for (const auto& t : tokens.tokens) {
            if (t.type == TokenType::text) {
                stripped += t.raw;
            } else {
                removed = true;
            }
        }
        if (!removed) return current;
        current = std::move(stripped);
    }
}

std::string strip_tags(const ScenarioDocument& doc) { return strip_tags(flatten_text(doc.segments)); }

int count_words(std::string_view stripped_text) {
    int words = 0;
    bool in_code = false;
    std::size_t begin = 0;
    while (begin <= stripped_text.size()) {
        auto end = stripped_text.find('\n', begin);
        if (end == std::string_view::npos) end = stripped_text.size();
        auto line = stripped_text.substr(begin, end - begin);
        begin = end + 1;

        std::size_t i = 0;
        while (i < line.size() && is_blank(line[i])) ++i;
        line.remove_prefix(i);
        if (line.substr(0, 3) == "```") {
            in_code = !in_code;
            continue;
        }
        if (!in_code) {
            auto marker_end = [&](std::size_t n) {
                return n < line.size() ? (is_blank(line[n]) ? n : 0) : n;
            };
            std::size_t n = 0;
            while (n < line.size() && line[n] == '#') ++n;
            if (n > 0 && marker_end(n) == n) {
                line.remove_prefix(n);
            } else {
                n = 0;
                if (!line.empty() && (line[0] == '-' || line[0] == '*')) {
                    n = 1;
                } else {
                    while (n < line.size() && line[n] >= '0' && line[n] <= '9') ++n;
                    n = (n > 0 && n < line.size() && line[n] == '.') ? n + 1 : 0;
                }
                if (n > 0 && marker_end(n) == n) line.remove_prefix(n);
            }
        }
        bool in_word = false;
        for (char c : line) {
            const bool blank = is_blank(c);
            if (!blank && !in_word) ++words;
            in_word = !blank;
        }
    }
    return words;
}

int word_count(const ScenarioDocument& doc) { return count_words(strip_tags(doc)); }

}  // namespace rasaeco
