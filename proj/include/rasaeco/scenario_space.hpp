#pragma once

#include <array>
#include <bitset>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rasaeco/diagnostics.hpp"

namespace rasaeco {

// The three fixed axes of the scenario space. Enumerator values are the
// ordinals; listing order is the canonical order.

enum class Aspect { as_planned, as_observed, divergence, scheduling, cost, safety, analytics };
enum class Phase { planning, construction, operation, renovation, demolition };
enum class Level { device_person, machine_crew, site_unit, site, site_office, company, network };

enum class Axis { aspect, phase, level };

inline constexpr int kAspectCount = 7;
inline constexpr int kPhaseCount = 5;
inline constexpr int kLevelCount = 7;
inline constexpr int kCellCount = kAspectCount * kPhaseCount * kLevelCount;

inline constexpr std::array<std::string_view, kAspectCount> kAspectSpellings{
    "as-planned", "as-observed", "divergence", "scheduling", "cost", "safety", "analytics"};
inline constexpr std::array<std::string_view, kPhaseCount> kPhaseSpellings{
    "planning", "construction", "operation", "renovation", "demolition"};
inline constexpr std::array<std::string_view, kLevelCount> kLevelSpellings{
    "device/person", "machine/crew", "site-unit", "site", "site-office", "company", "network"};

std::string_view axis_name(Axis axis);
int axis_size(Axis axis);

constexpr int ordinal(Aspect a) { return static_cast<int>(a); }
constexpr int ordinal(Phase p) { return static_cast<int>(p); }
constexpr int ordinal(Level l) { return static_cast<int>(l); }

std::string_view spelling(Aspect a);
std::string_view spelling(Phase p);
std::string_view spelling(Level l);

/// Canonical spelling of the value with the given ordinal on an axis.
std::string_view spelling(Axis axis, int ordinal);

/// A value on one of the axes, identified by its ordinal.
struct AxisValue {
    Axis axis;
    int ordinal;

    bool operator==(const AxisValue&) const = default;
};

class UnknownAxisValue : public std::runtime_error {
public:
    UnknownAxisValue(Axis axis, std::string token);

    Axis axis() const { return axis_; }
    const std::string& token() const { return token_; }

private:
    Axis axis_;
    std::string token_;
};

// Case-sensitive exact match against the canonical spellings; no aliases.
std::optional<AxisValue> try_parse_axis_value(Axis axis, std::string_view token);

/// Throws UnknownAxisValue when the token is not a canonical spelling.
AxisValue parse_axis_value(Axis axis, std::string_view token);

struct Cell {
    int aspect = 0;
    int phase = 0;
    int level = 0;

    auto operator<=>(const Cell&) const = default;

    bool in_grid() const;
    // Dense index in (aspect, phase, level) lexicographic order.
    int index() const { return (aspect * kPhaseCount + phase) * kLevelCount + level; }
    static Cell from_index(int index);
};

/// A set of cells of the 7x5x7 grid. Iteration order is (aspect, phase, level)
/// lexicographic.
class CellSet {
public:
    void insert(const Cell& cell) { bits_.set(static_cast<std::size_t>(cell.index())); }
    bool contains(const Cell& cell) const {
        return cell.in_grid() && bits_.test(static_cast<std::size_t>(cell.index()));
    }
    std::size_t size() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }

    CellSet& operator|=(const CellSet& other) {
        bits_ |= other.bits_;
        return *this;
    }
    CellSet intersection(const CellSet& other) const {
        CellSet out;
        out.bits_ = bits_ & other.bits_;
        return out;
    }

    std::vector<Cell> cells() const;

    bool operator==(const CellSet&) const = default;

private:
    std::bitset<kCellCount> bits_;
};

/// Inclusive ranges on all three axes. A cuboid read from a header may be
/// inverted; validate_volumetric reports that as E004.
struct Cuboid {
    Aspect aspect_from = Aspect::as_planned;
    Aspect aspect_to = Aspect::as_planned;
    Phase phase_from = Phase::planning;
    Phase phase_to = Phase::planning;
    Level level_from = Level::device_person;
    Level level_to = Level::device_person;

    bool operator==(const Cuboid&) const = default;

    bool is_valid() const;
    // Product of the three inclusive range lengths; 0 for an inverted cuboid.
    int cell_count() const;
};

Cuboid full_space_cuboid();

struct Volumetric {
    std::vector<Cuboid> cuboids;

    bool operator==(const Volumetric&) const = default;
};

/// Empty for an inverted cuboid.
CellSet cuboid_cells(const Cuboid& c);

CellSet volumetric_cells(const Volumetric& v);

/// E004 per inverted cuboid, W103 per pair of cuboids sharing a cell, W104
/// when the volumetric covers no cell. Findings are reported at `pos`.
std::vector<Diagnostic> validate_volumetric(const Volumetric& v, const SourcePos& pos = {});

}  // namespace rasaeco
