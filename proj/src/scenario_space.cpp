#include "rasaeco/scenario_space.hpp"

namespace rasaeco {

namespace {

template <std::size_t N>
std::optional<int> find_spelling(const std::array<std::string_view, N>& spellings,
                                 std::string_view token) {
    for (std::size_t i = 0; i < N; ++i) {
        if (spellings[i] == token) return static_cast<int>(i);
    }
    return std::nullopt;
}

std::string describe_cuboid(const Cuboid& c) {
    std::string out;
    out += spelling(c.aspect_from);
    out += "..";
    out += spelling(c.aspect_to);
    out += ", ";
    out += spelling(c.phase_from);
    out += "..";
    out += spelling(c.phase_to);
    out += ", ";
    out += spelling(c.level_from);
    out += "..";
    out += spelling(c.level_to);
    return out;
}

}  // namespace

std::string_view axis_name(Axis axis) {
    switch (axis) {
        case Axis::aspect: return "aspect";
        case Axis::phase: return "phase";
        case Axis::level: return "level";
    }
    return "aspect";
}

int axis_size(Axis axis) {
    switch (axis) {
        case Axis::aspect: return kAspectCount;
        case Axis::phase: return kPhaseCount;
        case Axis::level: return kLevelCount;
    }
    return 0;
}

std::string_view spelling(Aspect a) { return kAspectSpellings.at(static_cast<std::size_t>(a)); }
std::string_view spelling(Phase p) { return kPhaseSpellings.at(static_cast<std::size_t>(p)); }
std::string_view spelling(Level l) { return kLevelSpellings.at(static_cast<std::size_t>(l)); }

std::string_view spelling(Axis axis, int ordinal) {
    const auto i = static_cast<std::size_t>(ordinal);
    switch (axis) {
        case Axis::aspect: return kAspectSpellings.at(i);
        case Axis::phase: return kPhaseSpellings.at(i);
        case Axis::level: return kLevelSpellings.at(i);
    }
    return {};
}

UnknownAxisValue::UnknownAxisValue(Axis axis, std::string token)
    : std::runtime_error("unknown " + std::string(axis_name(axis)) + " '" + token + "'"),
      axis_(axis),
      token_(std::move(token)) {}

std::optional<AxisValue> try_parse_axis_value(Axis axis, std::string_view token) {
    std::optional<int> found;
    switch (axis) {
        case Axis::aspect: found = find_spelling(kAspectSpellings, token); break;
        case Axis::phase: found = find_spelling(kPhaseSpellings, token); break;
        case Axis::level: found = find_spelling(kLevelSpellings, token); break;
    }
    if (!found) return std::nullopt;
    return AxisValue{axis, *found};
}

AxisValue parse_axis_value(Axis axis, std::string_view token) {
    if (auto value = try_parse_axis_value(axis, token)) return *value;
    throw UnknownAxisValue(axis, std::string(token));
}

bool Cell::in_grid() const {
    return aspect >= 0 && aspect < kAspectCount && phase >= 0 && phase < kPhaseCount &&
           level >= 0 && level < kLevelCount;
}

Cell Cell::from_index(int index) {
    return Cell{index / (kPhaseCount * kLevelCount), (index / kLevelCount) % kPhaseCount,
                index % kLevelCount};
}

std::vector<Cell> CellSet::cells() const {
    std::vector<Cell> out;
    out.reserve(size());
    for (int i = 0; i < kCellCount; ++i) {
        if (bits_.test(static_cast<std::size_t>(i))) out.push_back(Cell::from_index(i));
    }
    return out;
}

bool Cuboid::is_valid() const {
    return ordinal(aspect_from) <= ordinal(aspect_to) && ordinal(phase_from) <= ordinal(phase_to) &&
           ordinal(level_from) <= ordinal(level_to);
}

int Cuboid::cell_count() const {
    if (!is_valid()) return 0;
    return (ordinal(aspect_to) - ordinal(aspect_from) + 1) *
           (ordinal(phase_to) - ordinal(phase_from) + 1) *
           (ordinal(level_to) - ordinal(level_from) + 1);
}

Cuboid full_space_cuboid() {
    return Cuboid{Aspect::as_planned, Aspect::analytics, Phase::planning,
                  Phase::demolition, Level::device_person, Level::network};
}

CellSet cuboid_cells(const Cuboid& c) {
    CellSet out;
    if (!c.is_valid()) return out;
    for (int a = ordinal(c.aspect_from); a <= ordinal(c.aspect_to); ++a) {
        for (int p = ordinal(c.phase_from); p <= ordinal(c.phase_to); ++p) {
            for (int l = ordinal(c.level_from); l <= ordinal(c.level_to); ++l) {
                out.insert(Cell{a, p, l});
            }
        }
    }
    return out;
}

CellSet volumetric_cells(const Volumetric& v) {
    CellSet out;
    for (const auto& c : v.cuboids) out |= cuboid_cells(c);
    return out;
}

std::vector<Diagnostic> validate_volumetric(const Volumetric& v, const SourcePos& pos) {
    std::vector<Diagnostic> out;
    std::vector<CellSet> cells;
    cells.reserve(v.cuboids.size());
    for (std::size_t i = 0; i < v.cuboids.size(); ++i) {
        const auto& c = v.cuboids[i];
        if (!c.is_valid()) {
            out.push_back(make_diagnostic(Code::E004,
                                          "cuboid " + std::to_string(i + 1) +
                                              " has an inverted range (" + describe_cuboid(c) + ")",
                                          pos));
        }
        cells.push_back(cuboid_cells(c));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            const auto shared = cells[i].intersection(cells[j]).size();
            if (shared > 0) {
                out.push_back(make_diagnostic(
                    Code::W103,
                    "cuboids " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                        " share " + std::to_string(shared) + " cell(s)",
                    pos));
            }
        }
    }
    if (volumetric_cells(v).empty()) {
        out.push_back(make_diagnostic(Code::W104, "volumetric covers no cell", pos));
    }
    return out;
}

}  // namespace rasaeco
