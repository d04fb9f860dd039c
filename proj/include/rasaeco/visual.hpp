#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rasaeco/ontology.hpp"
#include "rasaeco/scenario_space.hpp"

namespace rasaeco {

struct Point {
    double x = 0;
    double y = 0;

    bool operator==(const Point&) const = default;
};

// ---------------------------------------------------------------------------
// Ontology graph

inline constexpr double kNodeWidth = 180;
inline constexpr double kNodeHeight = 46;
inline constexpr double kNodeGapX = 40;
inline constexpr double kLayerGapY = 60;
inline constexpr double kGraphMargin = 20;

struct NodeLayout {
    int layer = 0;
    int slot = 0;
    // Top-left corner of the node box.
    double x = 0;
    double y = 0;

    Point center() const { return {x + kNodeWidth / 2, y + kNodeHeight / 2}; }
};

struct EdgeLayout {
    bool back_edge = false;
    std::vector<Point> points;
    Point label;
};

struct GraphLayout {
    std::map<std::string, NodeLayout> nodes;
    std::vector<EdgeLayout> edges;  // parallel to OntologyGraph::edges
    double width = 2 * kGraphMargin;
    double height = 2 * kGraphMargin;
};

/// Back edges are found by a depth-first traversal that enters nodes and
/// follows edges in lexicographic identifier order. The remaining DAG is
/// layered by longest path to a sink (sinks in layer 0, drawn on top) and
/// slots within a layer follow identifier order.
GraphLayout layout_graph(const OntologyGraph& graph);

/// Titles longer than this many characters are cut and end with an ellipsis.
inline constexpr std::size_t kMaxNodeLabel = 24;

std::string truncate_label(std::string_view title);

std::string render_graph_svg(const GraphLayout& layout, const OntologyGraph& graph, const Corpus& corpus);

// ---------------------------------------------------------------------------
// Volumetric plots

/// Parallel projection of the scenario space: aspect runs to the lower right,
/// level to the lower left and phase upwards.
struct IsoProjection {
    double scale = 18;
    double x_offset = 0;
    double y_offset = 0;

    // Height of one phase step relative to `scale`. Not 1, so that no two
    // grid points fall onto the same screen position.
    static constexpr double kPhaseHeight = 1.2;

    Point project(double aspect, double phase, double level) const;
    Point project(const Cell& cell) const {
        return project(cell.aspect, cell.phase, cell.level);
    }
};

/// The projection used by render_volumetric_svg for a full plot (scale 18)
/// or a thumbnail (scale 6).
IsoProjection volumetric_projection(bool thumbnail);

/// Cells in painting order: ascending a+p+l, ties by (a, p, l).
std::vector<Cell> painting_order(const CellSet& cells);

std::string render_volumetric_svg(const Volumetric& v, bool thumbnail);

// Shared SVG/HTML helpers.
std::string xml_escape(std::string_view text);
std::string format_number(double value);

}  // namespace rasaeco
