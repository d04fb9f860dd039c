#include "rasaeco/visual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>

namespace rasaeco {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    std::string s = buffer;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

namespace {

std::string points_attr(const std::vector<Point>& points) {
    std::string out;
    for (const auto& p : points) {
        if (!out.empty()) out += ' ';
        out += format_number(p.x) + "," + format_number(p.y);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph layout

GraphLayout layout_graph(const OntologyGraph& graph) {
    GraphLayout layout;
    std::map<std::string, std::vector<std::size_t>> outgoing;
    for (const auto& node : graph.nodes) outgoing[node];
    for (std::size_t i = 0; i < graph.edges.size(); ++i) outgoing[graph.edges[i].source].push_back(i);
    for (auto& [node, edges] : outgoing) {
        std::stable_sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
            return graph.edges[a].target < graph.edges[b].target;
        });
    }

    // Depth-first classification of back edges.
    enum class Color { white, gray, black };
    std::map<std::string, Color> color;
    for (const auto& [node, edges] : outgoing) color[node] = Color::white;
    std::vector<bool> back(graph.edges.size(), false);
    std::function<void(const std::string&)> visit = [&](const std::string& node) {
        color[node] = Color::gray;
        for (auto e : outgoing[node]) {
            const auto& target = graph.edges[e].target;
            if (color[target] == Color::gray) {
                back[e] = true;
            } else if (color[target] == Color::white) {
                visit(target);
            }
        }
        color[node] = Color::black;
    };
    for (const auto& [node, edges] : outgoing) {
        if (color[node] == Color::white) visit(node);
    }

    // Longest path to a sink over forward edges.
    std::map<std::string, int> layer;
    std::function<int(const std::string&)> layer_of = [&](const std::string& node) -> int {
        if (auto it = layer.find(node); it != layer.end()) return it->second;
        int best = 0;
        for (auto e : outgoing[node]) {
            if (!back[e]) best = std::max(best, layer_of(graph.edges[e].target) + 1);
        }
        layer[node] = best;
        return best;
    };

    std::map<int, int> slots_used;
    int layer_count = 0;
    int max_slots = 0;
    for (const auto& [node, edges] : outgoing) {
        NodeLayout n;
        n.layer = layer_of(node);
        n.slot = slots_used[n.layer]++;
        n.x = n.slot * (kNodeWidth + kNodeGapX) + kGraphMargin;
        n.y = n.layer * (kNodeHeight + kLayerGapY) + kGraphMargin;
        layer_count = std::max(layer_count, n.layer + 1);
        max_slots = std::max(max_slots, n.slot + 1);
        layout.nodes.emplace(node, n);
    }

    // Edge geometry; parallel edges between the same pair are spread apart.
    std::map<std::pair<std::string, std::string>, int> pair_total;
    for (const auto& e : graph.edges) ++pair_total[std::minmax(e.source, e.target)];
    std::map<std::pair<std::string, std::string>, int> pair_seen;
    bool has_loop = false;
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        const auto& s = layout.nodes.at(e.source);
        const auto& t = layout.nodes.at(e.target);
        const auto key = std::minmax(e.source, e.target);
        const int k = pair_seen[key]++;
        const double spread = 14.0 * (k - (pair_total[key] - 1) / 2.0);

        EdgeLayout el;
        el.back_edge = back[i];
        if (e.source == e.target) {
            has_loop = true;
            const double right = s.x + kNodeWidth;
            const double reach = 24 + 8.0 * k;
            el.points = {{right, s.y + 14}, {right + reach, s.y + 14},
                         {right + reach, s.y + kNodeHeight - 14}, {right, s.y + kNodeHeight - 14}};
            el.label = {right + reach + 4, s.y + kNodeHeight / 2};
        } else {
            const double sx = s.x + kNodeWidth / 2 + spread;
            const double tx = t.x + kNodeWidth / 2 + spread;
            if (s.layer > t.layer) {
                el.points = {{sx, s.y}, {tx, t.y + kNodeHeight}};
            } else {
                el.points = {{sx, s.y + kNodeHeight}, {tx, t.y}};
            }
            el.label = {(el.points[0].x + el.points[1].x) / 2, (el.points[0].y + el.points[1].y) / 2};
        }
        layout.edges.push_back(std::move(el));
    }

    if (max_slots > 0) {
        layout.width = max_slots * (kNodeWidth + kNodeGapX) - kNodeGapX + 2 * kGraphMargin;
        layout.height = layer_count * (kNodeHeight + kLayerGapY) - kLayerGapY + 2 * kGraphMargin;
    }
    if (has_loop) layout.width += 60;
    return layout;
}

std::string truncate_label(std::string_view title) {
    std::size_t chars = 0;
    for (std::size_t i = 0; i < title.size(); ++i) {
        if ((static_cast<unsigned char>(title[i]) & 0xC0) == 0x80) continue;
        if (chars == kMaxNodeLabel) return std::string(title.substr(0, i)) + "…";
        ++chars;
    }
    return std::string(title);
}

std::string render_graph_svg(const GraphLayout& layout, const OntologyGraph& graph, const Corpus& corpus) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + format_number(layout.width) +
           "\" height=\"" + format_number(layout.height) + "\" viewBox=\"0 0 " + format_number(layout.width) +
           " " + format_number(layout.height) + "\">\n";
    out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" "
           "markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333333\"/></marker></defs>\n";

    for (const auto& [id, node] : layout.nodes) {
        const auto* doc = corpus.find(id);
        const auto title = doc != nullptr ? doc->meta.title : id;
        const auto c = node.center();
        out += "<g class=\"node\" data-id=\"" + xml_escape(id) + "\">";
        out += "<rect x=\"" + format_number(node.x) + "\" y=\"" + format_number(node.y) + "\" width=\"" +
               format_number(kNodeWidth) + "\" height=\"" + format_number(kNodeHeight) +
               "\" rx=\"8\" ry=\"8\" fill=\"#f4f6fa\" stroke=\"#4a5a78\" stroke-width=\"1.5\"/>";
        out += "<text x=\"" + format_number(c.x) + "\" y=\"" + format_number(c.y + 5) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
               xml_escape(truncate_label(title)) + "</text>";
        out += "</g>\n";
    }
    for (std::size_t i = 0; i < graph.edges.size() && i < layout.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        const auto& el = layout.edges[i];
        out += "<g class=\"edge\" data-source=\"" + xml_escape(e.source) + "\" data-target=\"" +
               xml_escape(e.target) + "\">";
        out += "<polyline points=\"" + points_attr(el.points) +
               "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.2\"";
        if (el.back_edge) out += " stroke-dasharray=\"6,4\"";
        out += " marker-end=\"url(#arrow)\"/>";
        out += "<text x=\"" + format_number(el.label.x) + "\" y=\"" + format_number(el.label.y) +
               "\" text-anchor=\"" + (e.source == e.target ? "start" : "middle") +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">" + xml_escape(e.nature) +
               "</text>";
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

// ---------------------------------------------------------------------------
// Volumetric plots

namespace {

const double kCos30 = std::sqrt(3.0) / 2.0;
constexpr double kSin30 = 0.5;

struct PlotStyle {
    double scale;
    double side_margin;
    double top_margin;
    double bottom_margin;
};

PlotStyle plot_style(bool thumbnail) {
    return thumbnail ? PlotStyle{6, 4, 4, 4} : PlotStyle{18, 100, 10, 30};
}

}  // namespace

Point IsoProjection::project(double aspect, double phase, double level) const {
    return {(aspect - level) * kCos30 * scale + x_offset,
            (aspect + level) * kSin30 * scale - phase * kPhaseHeight * scale + y_offset};
}

IsoProjection volumetric_projection(bool thumbnail) {
    const auto style = plot_style(thumbnail);
    IsoProjection p;
    p.scale = style.scale;
    p.x_offset = kLevelCount * kCos30 * style.scale + style.side_margin;
    p.y_offset = kPhaseCount * IsoProjection::kPhaseHeight * style.scale + style.top_margin;
    return p;
}

std::vector<Cell> painting_order(const CellSet& cells) {
    auto order = cells.cells();
    std::sort(order.begin(), order.end(), [](const Cell& x, const Cell& y) {
        const int sx = x.aspect + x.phase + x.level;
        const int sy = y.aspect + y.phase + y.level;
        if (sx != sy) return sx < sy;
        return x < y;
    });
    return order;
}

std::string render_volumetric_svg(const Volumetric& v, bool thumbnail) {
    const auto style = plot_style(thumbnail);
    const auto proj = volumetric_projection(thumbnail);
    const double width = 2 * proj.x_offset;
    const double height = proj.y_offset + (kAspectCount + kLevelCount) * kSin30 * style.scale + style.bottom_margin;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + format_number(width) +
           "\" height=\"" + format_number(height) + "\" viewBox=\"0 0 " + format_number(width) + " " +
           format_number(height) + "\">\n";

    auto line = [&](Point a, Point b) {
        out += "<line x1=\"" + format_number(a.x) + "\" y1=\"" + format_number(a.y) + "\" x2=\"" +
               format_number(b.x) + "\" y2=\"" + format_number(b.y) + "\"/>";
    };

    const double A = kAspectCount;
    const double P = kPhaseCount;
    const double L = kLevelCount;
    out += "<g class=\"frame\" stroke=\"#b0b0b0\" stroke-width=\"" + std::string(thumbnail ? "0.5" : "1") + "\">";
    for (int a = 0; a <= kAspectCount; ++a) line(proj.project(a, 0, 0), proj.project(a, 0, L));
    for (int l = 0; l <= kLevelCount; ++l) line(proj.project(0, 0, l), proj.project(A, 0, l));
    for (int p = 1; p <= kPhaseCount; ++p) {
        line(proj.project(0, p, 0), proj.project(A, p, 0));
        line(proj.project(0, p, 0), proj.project(0, p, L));
    }
    line(proj.project(0, 0, 0), proj.project(0, P, 0));
    line(proj.project(A, 0, 0), proj.project(A, P, 0));
    line(proj.project(0, 0, L), proj.project(0, P, L));
    out += "</g>\n";

    if (!thumbnail) {
        auto label = [&](Point at, double dx, double dy, const char* anchor, std::string_view text) {
            out += "<text x=\"" + format_number(at.x + dx) + "\" y=\"" + format_number(at.y + dy) +
                   "\" text-anchor=\"" + anchor + "\">" + xml_escape(text) + "</text>";
        };
        out += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#333333\">";
        for (int a = 0; a < kAspectCount; ++a) {
            label(proj.project(a + 0.5, 0, L), -4, 12, "end", spelling(Axis::aspect, a));
        }
        for (int l = 0; l < kLevelCount; ++l) {
            label(proj.project(A, 0, l + 0.5), 4, 12, "start", spelling(Axis::level, l));
        }
        for (int p = 0; p < kPhaseCount; ++p) {
            label(proj.project(0, p + 0.5, L), -6, 4, "end", spelling(Axis::phase, p));
        }
        out += "</g>\n";
    }

    out += "<g class=\"cells\" stroke=\"#1c4587\" stroke-width=\"" + std::string(thumbnail ? "0.3" : "0.6") +
           "\" stroke-linejoin=\"round\">\n";
    for (const auto& c : painting_order(volumetric_cells(v))) {
        const double a = c.aspect;
        const double p = c.phase;
        const double l = c.level;
        auto face = [&](const char* cls, const char* fill, std::vector<Point> pts) {
            out += "<polygon class=\"face " + std::string(cls) + "\" fill=\"" + fill + "\" points=\"" +
                   points_attr(pts) + "\"/>";
        };
        out += "<g class=\"cell\" data-cell=\"" + std::to_string(c.aspect) + "," + std::to_string(c.phase) +
               "," + std::to_string(c.level) + "\">";
        face("top", "#a4c8ec",
             {proj.project(a, p + 1, l), proj.project(a + 1, p + 1, l), proj.project(a + 1, p + 1, l + 1),
              proj.project(a, p + 1, l + 1)});
        face("left", "#6d9fd3",
             {proj.project(a, p, l + 1), proj.project(a + 1, p, l + 1), proj.project(a + 1, p + 1, l + 1),
              proj.project(a, p + 1, l + 1)});
        face("right", "#3f78b5",
             {proj.project(a + 1, p, l), proj.project(a + 1, p, l + 1), proj.project(a + 1, p + 1, l + 1),
              proj.project(a + 1, p + 1, l)});
        out += "</g>\n";
    }
    out += "</g>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace rasaeco
