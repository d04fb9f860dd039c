#include <doctest.h>

#include <algorithm>
#include <random>

#include "rasaeco/scenario_space.hpp"

using namespace rasaeco;

namespace {

Cuboid cuboid(int a0, int a1, int p0, int p1, int l0, int l1) {
    return Cuboid{Aspect(a0), Aspect(a1), Phase(p0), Phase(p1), Level(l0), Level(l1)};
}

bool inside(const Cell& c, int a0, int a1, int p0, int p1, int l0, int l1) {
    return a0 <= c.aspect && c.aspect <= a1 && p0 <= c.phase && c.phase <= p1 && l0 <= c.level && c.level <= l1;
}

std::vector<Code> codes(const std::vector<Diagnostic>& diags) {
    std::vector<Code> out;
    for (const auto& d : diags) out.push_back(d.code);
    return out;
}

}  // namespace

TEST_CASE("axis values parse to their listing ordinal") {
    CHECK(parse_axis_value(Axis::aspect, "as-planned") == AxisValue{Axis::aspect, 0});
    CHECK(parse_axis_value(Axis::phase, "construction") == AxisValue{Axis::phase, 1});
    CHECK(parse_axis_value(Axis::level, "network") == AxisValue{Axis::level, 6});
    CHECK_THROWS_AS(parse_axis_value(Axis::level, "helicopter"), UnknownAxisValue);
}

TEST_CASE("unknown axis values carry axis and token") {
    try {
        parse_axis_value(Axis::level, "helicopter");
        FAIL("expected UnknownAxisValue");
    } catch (const UnknownAxisValue& e) {
        CHECK(e.axis() == Axis::level);
        CHECK(e.token() == "helicopter");
    }
}

TEST_CASE("matching is exact: no case folding, no aliases") {
    CHECK_FALSE(try_parse_axis_value(Axis::aspect, "As-planned"));
    CHECK_FALSE(try_parse_axis_value(Axis::aspect, "as planned"));
    CHECK_FALSE(try_parse_axis_value(Axis::level, "Site unit"));
    CHECK_FALSE(try_parse_axis_value(Axis::level, "site "));
    CHECK_FALSE(try_parse_axis_value(Axis::phase, ""));
    CHECK_FALSE(try_parse_axis_value(Axis::phase, "site"));
}

TEST_CASE("spelling and parsing are inverse on every axis") {
    for (auto axis : {Axis::aspect, Axis::phase, Axis::level}) {
        for (int i = 0; i < axis_size(axis); ++i) {
            CHECK(parse_axis_value(axis, spelling(axis, i)) == AxisValue{axis, i});
        }
    }
    CHECK(axis_size(Axis::aspect) == 7);
    CHECK(axis_size(Axis::phase) == 5);
    CHECK(axis_size(Axis::level) == 7);
}

TEST_CASE("cells index densely") {
    for (int i = 0; i < kCellCount; ++i) {
        const auto c = Cell::from_index(i);
        CHECK(c.in_grid());
        CHECK(c.index() == i);
    }
    CHECK_FALSE(Cell{7, 0, 0}.in_grid());
    CHECK_FALSE(Cell{0, 5, 0}.in_grid());
    CHECK_FALSE(Cell{0, 0, -1}.in_grid());
}

TEST_CASE("cuboid cell counts") {
    CHECK(cuboid_cells(full_space_cuboid()).size() == 245);
    CHECK(cuboid_cells(cuboid(0, 0, 0, 0, 3, 3)).size() == 1);
    // as-planned..divergence, construction, machine/crew..site
    const auto c = cuboid(0, 2, 1, 1, 1, 3);
    CHECK(c.cell_count() == 9);
    CHECK(cuboid_cells(c).size() == 9);
    CHECK(cuboid_cells(cuboid(4, 0, 0, 0, 0, 0)).empty());
    CHECK(cuboid(4, 0, 0, 0, 0, 0).cell_count() == 0);
}

TEST_CASE("cuboid cells match brute force membership for random cuboids") {
    std::mt19937 rng(3);
    for (int round = 0; round < 500; ++round) {
        int b[6];
        for (int axis = 0; axis < 3; ++axis) {
            const int size = axis == 1 ? kPhaseCount : kAspectCount;
            int x = static_cast<int>(rng() % size);
            int y = static_cast<int>(rng() % size);
            b[2 * axis] = std::min(x, y);
            b[2 * axis + 1] = std::max(x, y);
        }
        const auto cells = cuboid_cells(cuboid(b[0], b[1], b[2], b[3], b[4], b[5]));
        std::size_t expected = 0;
        for (int i = 0; i < kCellCount; ++i) {
            const auto cell = Cell::from_index(i);
            const bool in = inside(cell, b[0], b[1], b[2], b[3], b[4], b[5]);
            expected += in ? 1 : 0;
            CHECK(cells.contains(cell) == in);
        }
        CHECK(cells.size() == expected);
        CHECK(static_cast<int>(expected) == (b[1] - b[0] + 1) * (b[3] - b[2] + 1) * (b[5] - b[4] + 1));
    }
}

TEST_CASE("volumetric union") {
    CHECK(volumetric_cells(Volumetric{}).empty());
    const auto a = cuboid(0, 2, 1, 1, 1, 3);
    CHECK(volumetric_cells(Volumetric{{a, a}}).size() == 9);

    // Two 9-cell cuboids sharing the aspect column 2.
    const auto b = cuboid(2, 4, 1, 1, 1, 3);
    const auto cells = volumetric_cells(Volumetric{{a, b}});
    int brute = 0;
    for (int i = 0; i < kCellCount; ++i) {
        const auto c = Cell::from_index(i);
        if (inside(c, 0, 2, 1, 1, 1, 3) || inside(c, 2, 4, 1, 1, 1, 3)) ++brute;
    }
    CHECK(brute == 15);
    CHECK(cells.size() == 15);
    CHECK(cuboid_cells(a).intersection(cuboid_cells(b)).size() == 3);
}

TEST_CASE("volumetric cells ignore cuboid order and duplicates") {
    std::mt19937 rng(5);
    for (int round = 0; round < 100; ++round) {
        Volumetric v;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            const int a = static_cast<int>(rng() % 7);
            const int p = static_cast<int>(rng() % 5);
            const int l = static_cast<int>(rng() % 7);
            v.cuboids.push_back(cuboid(a, std::min(6, a + static_cast<int>(rng() % 3)), p,
                                       std::min(4, p + static_cast<int>(rng() % 2)), l,
                                       std::min(6, l + static_cast<int>(rng() % 3))));
        }
        const auto expected = volumetric_cells(v);
        auto shuffled = v;
        shuffled.cuboids.push_back(v.cuboids[rng() % v.cuboids.size()]);
        std::shuffle(shuffled.cuboids.begin(), shuffled.cuboids.end(), rng);
        CHECK(volumetric_cells(shuffled) == expected);
        for (const auto& c : expected.cells()) CHECK(c.in_grid());
    }
}

TEST_CASE("validate_volumetric") {
    CHECK(codes(validate_volumetric(Volumetric{{cuboid(4, 0, 0, 0, 0, 0)}})) ==
          std::vector<Code>{Code::E004, Code::W104});
    CHECK(codes(validate_volumetric(Volumetric{{cuboid(4, 0, 0, 0, 0, 0), cuboid(0, 0, 0, 0, 0, 0)}})) ==
          std::vector<Code>{Code::E004});
    // Risk management: two disjoint aspect blocks around cost.
    const Volumetric risk{{cuboid(0, 3, 0, 1, 3, 3), cuboid(5, 6, 0, 1, 3, 3)}};
    CHECK(validate_volumetric(risk).empty());
    CHECK(volumetric_cells(risk).size() == 12);
    const auto c = cuboid(0, 2, 1, 1, 1, 3);
    CHECK(codes(validate_volumetric(Volumetric{{c, c}})) == std::vector<Code>{Code::W103});
    CHECK(codes(validate_volumetric(Volumetric{})) == std::vector<Code>{Code::W104});

    const auto diags = validate_volumetric(Volumetric{{cuboid(0, 0, 3, 2, 0, 0), c}}, SourcePos{"x.md", 1, 15});
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "x.md");
    CHECK(diags[0].line == 1);
    CHECK(diags[0].col == 15);
}
