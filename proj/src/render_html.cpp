#include "rasaeco/render_html.hpp"

#include <cctype>
#include <optional>

#include "rasaeco/visual.hpp"

namespace rasaeco {

namespace {

// Inline tags are rendered first and stand in the markdown text as
// placeholders of the form \x01<index>\x02 until the markdown is rendered.
constexpr char kOpenMark = '\x01';
constexpr char kCloseMark = '\x02';

std::string sanitize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == kOpenMark || c == kCloseMark) {
            out += "\xEF\xBF\xBD";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string substitute(std::string_view html, const std::vector<std::string>& fragments) {
    std::string out;
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] == kOpenMark) {
            const auto close = html.find(kCloseMark, i);
            const auto index = std::stoul(std::string(html.substr(i + 1, close - i - 1)));
            out += fragments.at(index);
            i = close + 1;
        } else {
            out.push_back(html[i++]);
        }
    }
    return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

// ---------------------------------------------------------------------------
// Inline markdown

std::string render_inline(std::string_view text);

// Finds `delim` at or after `from` with a non-empty run before it.
std::size_t find_closing(std::string_view text, std::size_t from, std::string_view delim) {
    auto pos = text.find(delim, from);
    while (pos != std::string_view::npos && pos == from) pos = text.find(delim, pos + 1);
    return pos;
}

std::string render_inline(std::string_view text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == kOpenMark) {
            const auto close = text.find(kCloseMark, i);
            out += text.substr(i, close - i + 1);
            i = close + 1;
            continue;
        }
        if (c == '`') {
            const auto close = text.find('`', i + 1);
            if (close != std::string_view::npos) {
                out += "<code>" + xml_escape(text.substr(i + 1, close - i - 1)) + "</code>";
                i = close + 1;
                continue;
            }
        }
        if (c == '*' && i + 1 < text.size() && text[i + 1] == '*') {
            const auto close = find_closing(text, i + 2, "**");
            if (close != std::string_view::npos) {
                out += "<strong>" + render_inline(text.substr(i + 2, close - i - 2)) + "</strong>";
                i = close + 2;
                continue;
            }
        }
        if (c == '*' && i + 1 < text.size() && text[i + 1] != ' ') {
            const auto close = find_closing(text, i + 1, "*");
            if (close != std::string_view::npos && text[close - 1] != ' ') {
                out += "<em>" + render_inline(text.substr(i + 1, close - i - 1)) + "</em>";
                i = close + 1;
                continue;
            }
        }
        if (c == '[') {
            const auto mid = text.find("](", i + 1);
            const auto close = mid == std::string_view::npos ? mid : text.find(')', mid + 2);
            if (close != std::string_view::npos && text.substr(i + 1, mid - i - 1).find('\n') == std::string_view::npos) {
                out += "<a href=\"" + xml_escape(trim(text.substr(mid + 2, close - mid - 2))) + "\">" +
                       render_inline(text.substr(i + 1, mid - i - 1)) + "</a>";
                i = close + 1;
                continue;
            }
        }
        out += xml_escape(std::string_view(&text[i], 1));
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Block markdown

std::optional<int> heading_level(std::string_view line) {
    int level = 0;
    while (level < static_cast<int>(line.size()) && line[level] == '#') ++level;
    if (level == 0 || level > 6) return std::nullopt;
    if (level < static_cast<int>(line.size()) && line[level] != ' ' && line[level] != '\t') return std::nullopt;
    return level;
}

struct ListMarker {
    bool ordered = false;
    std::size_t indent = 0;
    std::string_view content;
};

std::optional<ListMarker> list_marker(std::string_view line) {
    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    auto rest = line.substr(indent);
    if (rest.empty()) return std::nullopt;
    if (rest[0] == '-' || rest[0] == '*' || rest[0] == '+') {
        if (rest.size() == 1) return ListMarker{false, indent, {}};
        if (rest[1] == ' ' || rest[1] == '\t') return ListMarker{false, indent, trim(rest.substr(2))};
        return std::nullopt;
    }
    std::size_t digits = 0;
    while (digits < rest.size() && std::isdigit(static_cast<unsigned char>(rest[digits]))) ++digits;
    if (digits == 0 || digits >= rest.size() || (rest[digits] != '.' && rest[digits] != ')')) return std::nullopt;
    if (digits + 1 == rest.size()) return ListMarker{true, indent, {}};
    if (rest[digits + 1] != ' ' && rest[digits + 1] != '\t') return std::nullopt;
    return ListMarker{true, indent, trim(rest.substr(digits + 2))};
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

bool is_fence(std::string_view line) { return starts_with(trim(line), "```"); }

bool starts_block(std::string_view line) {
    return heading_level(line).has_value() || list_marker(line).has_value() || is_fence(line);
}

struct ListItem {
    std::string text;
    std::vector<std::pair<bool, std::vector<std::string>>> nested;  // (ordered, items)
};

std::string render_list(const std::vector<std::string_view>& lines, std::size_t& i) {
    const auto first = *list_marker(lines[i]);
    const bool ordered = first.ordered;
    const std::size_t base = first.indent;
    std::vector<ListItem> items;
    while (i < lines.size()) {
        const auto line = lines[i];
        if (is_blank(line)) {
            // A blank line ends the list unless another item follows.
            if (i + 1 < lines.size() && list_marker(lines[i + 1]) &&
                list_marker(lines[i + 1])->ordered == ordered) {
                ++i;
                continue;
            }
            break;
        }
        const auto marker = list_marker(line);
        if (marker && marker->indent <= base + 1) {
            if (marker->ordered != ordered) break;
            items.push_back(ListItem{std::string(marker->content), {}});
        } else if (marker && !items.empty()) {
            auto& nested = items.back().nested;
            if (nested.empty() || nested.back().first != marker->ordered) {
                nested.push_back({marker->ordered, {}});
            }
            nested.back().second.emplace_back(marker->content);
        } else if (!items.empty() && !starts_block(line)) {
            auto& target = items.back().nested.empty() ? items.back().text
                                                        : items.back().nested.back().second.back();
            target += "\n" + std::string(trim(line));
        } else {
            break;
        }
        ++i;
    }
    const char* tag = ordered ? "ol" : "ul";
    std::string out = std::string("<") + tag + ">\n";
    for (const auto& item : items) {
        out += "<li>" + render_inline(item.text);
        for (const auto& [nested_ordered, nested_items] : item.nested) {
            const char* ntag = nested_ordered ? "ol" : "ul";
            out += std::string("\n<") + ntag + ">\n";
            for (const auto& n : nested_items) out += "<li>" + render_inline(n) + "</li>\n";
            out += std::string("</") + ntag + ">\n";
        }
        out += "</li>\n";
    }
    out += std::string("</") + tag + ">\n";
    return out;
}

}  // namespace

std::string render_markdown(std::string_view markdown) {
    const auto lines = split_lines(markdown);
    std::string out;
    std::size_t i = 0;
    while (i < lines.size()) {
        const auto line = lines[i];
        if (is_blank(line)) {
            ++i;
        } else if (is_fence(line)) {
            const auto info = trim(trim(line).substr(3));
            std::string code;
            ++i;
            while (i < lines.size() && !is_fence(lines[i])) {
                code += std::string(lines[i]) + "\n";
                ++i;
            }
            if (i < lines.size()) ++i;
            out += "<pre><code";
            if (!info.empty()) out += " class=\"language-" + xml_escape(info) + "\"";
            out += ">" + xml_escape(code) + "</code></pre>\n";
        } else if (auto level = heading_level(line)) {
            auto text = trim(line.substr(static_cast<std::size_t>(*level)));
            while (!text.empty() && text.back() == '#') text.remove_suffix(1);
            const auto n = std::to_string(*level);
            out += "<h" + n + ">" + render_inline(trim(text)) + "</h" + n + ">\n";
            ++i;
        } else if (list_marker(line)) {
            out += render_list(lines, i);
        } else {
            std::string paragraph(trim(line));
            ++i;
            while (i < lines.size() && !is_blank(lines[i]) && !starts_block(lines[i])) {
                paragraph += "\n" + std::string(trim(lines[i]));
                ++i;
            }
            out += "<p>" + render_inline(paragraph) + "</p>\n";
        }
    }
    return out;
}

namespace {

struct Renderer {
    const ScenarioDocument& doc;
    const Corpus& corpus;

    std::string blocks(const std::vector<BodySegment>& segments) {
        std::vector<std::string> fragments;
        std::string chunk;
        std::string out;
        auto flush = [&] {
            out += substitute(render_markdown(chunk), fragments);
            chunk.clear();
        };
        for (const auto& seg : segments) {
            if (const auto* run = seg.text()) {
                chunk += sanitize(run->text);
            } else if (const auto* tag = seg.tag(); is_block_tag(*tag)) {
                flush();
                out += block(*tag);
            } else {
                chunk += kOpenMark + std::to_string(fragments.size()) + kCloseMark;
                fragments.push_back(inline_tag(*tag));
            }
        }
        flush();
        return out;
    }

    std::string inlines(const std::vector<BodySegment>& segments) {
        std::vector<std::string> fragments;
        std::string chunk;
        for (const auto& seg : segments) {
            if (const auto* run = seg.text()) {
                chunk += sanitize(run->text);
            } else {
                chunk += kOpenMark + std::to_string(fragments.size()) + kCloseMark;
                fragments.push_back(inline_tag(*seg.tag()));
            }
        }
        return substitute(render_inline(trim(chunk)), fragments);
    }

    std::string marking_open(const Tag& tag, const char* element) {
        const auto* marking = doc.marking_at(tag.span);
        std::string out = std::string("<") + element + " class=\"" + std::string(tag_kind_name(tag.kind)) +
                          "\" data-value=\"" + xml_escape(tag.name) + "\"";
        if (marking != nullptr) out += " id=\"" + marking->anchor_id + "\"";
        return out + ">";
    }

    std::string block(const Tag& tag) {
        switch (tag.kind) {
            case TagKind::def:
            case TagKind::model: {
                const std::string kind(tag_kind_name(tag.kind));
                return "<div class=\"" + kind + "\" id=\"" + kind + "-" + xml_escape(tag.name) + "\"><strong>" +
                       xml_escape(tag.name) + "</strong>: " + blocks(tag.children) + "</div>\n";
            }
            case TagKind::phase:
            case TagKind::level:
                return marking_open(tag, "div") + "\n" + blocks(tag.children) + "<sup>" + xml_escape(tag.name) +
                       "</sup></div>\n";
            default:
                return "<p>" + inline_tag(tag) + "</p>\n";
        }
    }

    std::string broken(const std::string& label) {
        return "<span class=\"broken\">" + xml_escape(label) + "</span>";
    }

    std::string inline_tag(const Tag& tag) {
        switch (tag.kind) {
            case TagKind::phase:
            case TagKind::level:
                return marking_open(tag, "span") + inlines(tag.children) + "<sup>" + xml_escape(tag.name) +
                       "</sup></span>";
            case TagKind::def:
            case TagKind::model:
                return block(tag);
            case TagKind::ref:
            case TagKind::modelref: {
                const auto r = make_reference(tag.kind, tag.name, tag.span);
                const bool is_model = tag.kind == TagKind::modelref;
                const std::string prefix = is_model ? "#model-" : "#def-";
                const ScenarioDocument* target = r.is_local() ? &doc : corpus.find(r.target_scenario);
                if (target == nullptr) return broken(r.raw_name);
                const bool found = is_model ? target->models.count(r.target_name) > 0
                                            : target->definitions.count(r.target_name) > 0;
                if (!found) return broken(r.raw_name);
                const std::string href =
                    r.is_local() ? prefix + r.target_name : "../" + r.target_scenario + "/scenario.html" + prefix + r.target_name;
                return "<a href=\"" + xml_escape(href) + "\">" + xml_escape(r.raw_name) + "</a>";
            }
            case TagKind::scenarioref: {
                const auto* target = corpus.find(tag.name);
                if (target == nullptr) return broken(tag.name);
                return "<a href=\"../" + xml_escape(tag.name) + "/scenario.html\">" + xml_escape(target->meta.title) +
                       "</a>";
            }
        }
        return {};
    }
};

bool has_block_content(std::string_view source) {
    if (source.find("\n\n") != std::string_view::npos) return true;
    for (auto line : split_lines(source)) {
        if (starts_block(line)) return true;
    }
    return false;
}

std::string index_table(const char* caption, Axis axis, const std::map<int, std::vector<std::string>>& rows) {
    std::string out = "<table class=\"marking-index " + std::string(axis_name(axis)) + "\">\n<caption>" + caption +
                      "</caption>\n<thead><tr><th>Value</th><th>Markings</th></tr></thead>\n<tbody>\n";
    for (const auto& [value, anchors] : rows) {
        out += "<tr><td>" + xml_escape(spelling(axis, value)) + "</td><td>";
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            if (i > 0) out += " ";
            out += "<a href=\"#" + anchors[i] + "\">" + std::to_string(i + 1) + "</a>";
        }
        out += "</td></tr>\n";
    }
    out += "</tbody>\n</table>\n";
    return out;
}

std::string page_head(std::string_view title) {
    return "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" + xml_escape(title) +
           "</title>\n<style>\n" + std::string(stylesheet()) + "</style>\n</head>\n<body>\n";
}

std::string strip_prolog(const std::string& svg) {
    if (starts_with(svg, "<?xml")) return svg.substr(svg.find('\n') + 1);
    return svg;
}

}  // namespace

bool is_block_tag(const Tag& tag) {
    switch (tag.kind) {
        case TagKind::def:
        case TagKind::model:
            return true;
        case TagKind::phase:
        case TagKind::level:
            return has_block_content(raw_source(tag.children));
        default:
            return false;
    }
}

std::string render_segments(const std::vector<BodySegment>& segments, const ScenarioDocument& doc,
                            const Corpus& corpus) {
    return Renderer{doc, corpus}.blocks(segments);
}

std::string render_tag(const Tag& tag, const ScenarioDocument& doc, const Corpus& corpus) {
    Renderer r{doc, corpus};
    return is_block_tag(tag) ? r.block(tag) : r.inline_tag(tag);
}

MarkingIndex build_marking_index(const ScenarioDocument& doc) {
    MarkingIndex index;
    for (const auto& m : doc.markings) {
        auto& table = m.dimension == Axis::phase ? index.phases : index.levels;
        table[m.value].push_back(m.anchor_id);
    }
    return index;
}

RenderedPage render_page(const ScenarioDocument& doc, const Corpus& corpus) {
    const auto& title = doc.meta.title;
    std::string html = page_head(title);
    html += "<header>\n<h1 class=\"title\">" + xml_escape(title) + "</h1>\n";
    html += "<p class=\"identifier\"><code>" + xml_escape(doc.identifier) + "</code></p>\n";
    if (doc.meta.contact) {
        html += "<p class=\"contact\">Contact: " + xml_escape(*doc.meta.contact) + "</p>\n";
    }
    html += "<figure class=\"volumetric\"><img src=\"volumetric.svg\" alt=\"Volumetric plot\"></figure>\n";
    html += "<section class=\"relations\">\n<h2>Relations</h2>\n<ul>\n";
    for (const auto& rel : doc.meta.relations) {
        const auto* target = corpus.find(rel.target);
        html += "<li>";
        if (target != nullptr) {
            html += "<a href=\"../" + xml_escape(rel.target) + "/scenario.html\">" + xml_escape(target->meta.title) +
                    "</a>";
        } else {
            html += "<span class=\"broken\">" + xml_escape(rel.target) + "</span>";
        }
        html += " <span class=\"nature\">" + xml_escape(rel.nature) + "</span></li>\n";
    }
    html += "</ul>\n</section>\n</header>\n";
    html += "<main>\n" + render_segments(doc.segments, doc, corpus) + "</main>\n";

    const auto index = build_marking_index(doc);
    html += "<section class=\"index\">\n<h2>Index</h2>\n";
    html += index_table("Phases", Axis::phase, index.phases);
    html += index_table("Levels", Axis::level, index.levels);
    html += "</section>\n";
    html += "<footer><a href=\"../index.html\">All scenarios</a></footer>\n</body>\n</html>\n";
    return RenderedPage{doc.identifier, std::move(html), std::filesystem::path(doc.identifier) / "scenario.html"};
}

RenderedPage render_corpus_index(const Corpus& corpus, const OntologyGraph& graph) {
    (void)graph;
    std::string html = page_head("Scenarios");
    html += "<header>\n<h1 class=\"title\">Scenarios</h1>\n</header>\n<main>\n";
    html += "<table class=\"scenarios\">\n<thead><tr><th>Scenario</th><th>Identifier</th><th>Words</th>"
            "<th>Volumetric</th></tr></thead>\n<tbody>\n";
    for (const auto& [id, doc] : corpus.documents) {
        const auto eid = xml_escape(id);
        html += "<tr><td><a href=\"" + eid + "/scenario.html\">" + xml_escape(doc.meta.title) + "</a></td><td><code>" +
                eid + "</code></td><td>" + std::to_string(word_count(doc)) + "</td><td><a href=\"" + eid +
                "/volumetric.svg\">" + strip_prolog(render_volumetric_svg(doc.volumetric, true)) + "</a></td></tr>\n";
    }
    html += "</tbody>\n</table>\n";
    html += "<h2>Ontology</h2>\n<figure class=\"ontology\"><img src=\"ontology.svg\" alt=\"Ontology graph\"></figure>\n";
    html += "</main>\n</body>\n</html>\n";
    return RenderedPage{"index", std::move(html), "index.html"};
}

std::string_view stylesheet() {
    return "body { font-family: sans-serif; max-width: 50em; margin: 2em auto; padding: 0 1em; line-height: 1.5; "
           "color: #222222; }\n"
           "code, pre { font-family: monospace; background: #f3f3f3; }\n"
           "pre { padding: 0.5em; overflow-x: auto; }\n"
           ".identifier { color: #666666; }\n"
           ".phase { background: #fdf1d6; }\n"
           ".level { background: #e3f0da; }\n"
           "div.phase, div.level { padding: 0.2em 0.5em; }\n"
           ".phase sup, .level sup { font-size: 0.7em; color: #555555; margin-left: 0.2em; }\n"
           ".def, .model { border-left: 3px solid #4a5a78; padding: 0.2em 0.8em; margin: 0.8em 0; }\n"
           ".model { border-left-color: #8a6d3b; }\n"
           ".broken { color: #b00020; text-decoration: underline wavy; }\n"
           ".nature { color: #666666; font-style: italic; }\n"
           "table { border-collapse: collapse; margin: 0.8em 0; }\n"
           "th, td { border: 1px solid #cccccc; padding: 0.2em 0.6em; text-align: left; vertical-align: middle; }\n"
           "caption { font-weight: bold; text-align: left; }\n"
           "footer { margin-top: 2em; border-top: 1px solid #cccccc; padding-top: 0.5em; }\n";
}

}  // namespace rasaeco
