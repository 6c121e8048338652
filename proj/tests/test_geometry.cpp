#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace coldgen;

TEST_CASE("grid rejects fewer than 3x3 cells or non-positive spacing") {
  CHECK_THROWS_AS((Grid{2, 5, 1.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((Grid{5, 5, 0.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((Grid{5, 5, 1.0, -1.0}.validate()), DomainError);
  CHECK_NOTHROW((Grid{3, 3, 1.0, 1.0}.validate()));
}

TEST_CASE("default layout carries the standard TDPs and port width") {
  const auto [grid, layout] = default_layout();
  REQUIRE(layout.chips.size() == 3);
  CHECK(layout.chips[0].tdp == 1200.0);
  CHECK(layout.chips[1].tdp == 1200.0);
  CHECK(layout.chips[2].tdp == 300.0);
  CHECK(layout.port_width == 0.0254);
  CHECK(grid.dx == 0.001);
  CHECK(grid.dy == 0.001);
  CHECK_NOTHROW(validate_layout(grid, layout));

  // GPUs toward the inlet edge, CPU toward the outlet edge.
  CHECK(layout.chips[0].region.y1 < 0.5 * grid.height());
  CHECK(layout.chips[1].region.y1 < 0.5 * grid.height());
  CHECK(layout.chips[2].region.y0 > 0.5 * grid.height());

  // 25.4 mm centered on a 100 mm edge: centers 37.5 .. 62.5 mm.
  CHECK(layout.inlet.edge == Edge::j_min);
  CHECK(layout.outlet.edge == Edge::j_max);
  CHECK(layout.inlet.i0 == 37);
  CHECK(layout.inlet.i1 == 62);
  CHECK(layout.outlet.i0 == 37);
  CHECK(layout.outlet.i1 == 62);
}

TEST_CASE("heat flux map") {
  const Grid grid{100, 100, 0.001, 0.001};
  BoardLayout layout;
  layout.inlet = {Edge::j_min, 40, 60};
  layout.outlet = {Edge::j_max, 40, 60};

  SUBCASE("empty chip list gives an all-zero field") {
    const auto q = build_heat_flux_map(grid, layout);
    CHECK(std::all_of(q.values().begin(), q.values().end(), [](double x) { return x == 0.0; }));
  }

  SUBCASE("40 mm square chip at 1200 W") {
    layout.chips.push_back({{0.030, 0.030, 0.070, 0.070, "GPU"}, 1200.0});
    const auto q = build_heat_flux_map(grid, layout);
    std::size_t hot = 0;
    for (const double x : q.values()) {
      if (x != 0.0) {
        ++hot;
        CHECK(x == doctest::Approx(750000.0).epsilon(1e-12));
      }
    }
    CHECK(hot == 1600);
    CHECK(q.at(30, 30) > 0.0);
    CHECK(q.at(69, 69) > 0.0);
    CHECK(q.at(70, 50) == 0.0);
    CHECK(q.at(29, 50) == 0.0);
  }

  SUBCASE("chip smaller than a cell center spacing is rejected") {
    layout.chips.push_back({{0.0101, 0.0101, 0.0104, 0.0104, "tiny"}, 5.0});
    CHECK_THROWS_AS(build_heat_flux_map(grid, layout), DomainError);
  }
}

TEST_CASE("default layout integrates to 2700 W") {
  const auto [grid, layout] = default_layout();
  const auto q = build_heat_flux_map(grid, layout);
  const double total = q.sum() * grid.cell_area();
  CHECK(std::abs(total - 2700.0) <= 0.01 * 2700.0);
}

TEST_CASE("flux total is stable under grid refinement") {
  auto [grid, layout] = default_layout();
  const double coarse = build_heat_flux_map(grid, layout).sum() * grid.cell_area();
  Grid fine{grid.nx * 2, grid.ny * 2, grid.dx / 2, grid.dy / 2};
  layout.inlet = rasterize_port(fine, Edge::j_min, 0.05, layout.port_width);
  layout.outlet = rasterize_port(fine, Edge::j_max, 0.05, layout.port_width);
  const double refined = build_heat_flux_map(fine, layout).sum() * fine.cell_area();
  CHECK(std::abs(refined - coarse) <= 0.01 * coarse);
}

TEST_CASE("layout validation names the offending element") {
  auto [grid, layout] = default_layout();
  SUBCASE("non-positive TDP") {
    layout.chips[1].tdp = 0.0;
    try {
      validate_layout(grid, layout);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field() == "layout.chips[1].tdp");
    }
  }
  SUBCASE("chip off the board") {
    layout.chips[0].region.x1 = 0.2;
    CHECK_THROWS_AS(validate_layout(grid, layout), ValidationError);
  }
  SUBCASE("inlet on the wrong edge") {
    layout.inlet.edge = Edge::j_max;
    CHECK_THROWS_AS(validate_layout(grid, layout), ValidationError);
  }
  SUBCASE("span beyond nx") {
    layout.outlet.i1 = grid.nx;
    CHECK_THROWS_AS(build_pinned_sets(grid, layout), ValidationError);
  }
}

TEST_CASE("pinned sets") {
  SUBCASE("inlet span 10..35 on a 100x200 grid") {
    const Grid grid{100, 200, 0.001, 0.001};
    BoardLayout layout;
    layout.inlet = {Edge::j_min, 10, 35};
    layout.outlet = {Edge::j_max, 10, 35};
    const auto pinned = build_pinned_sets(grid, layout);
    REQUIRE(pinned.inlet().size() == 26);
    CHECK(pinned.inlet().front() == Cell{10, 0});
    CHECK(pinned.inlet().back() == Cell{35, 0});
    for (const auto c : pinned.inlet()) CHECK(c.j == 0);
    for (const auto c : pinned.outlet()) CHECK(c.j == 199);
    CHECK(pinned.size() == 52);
  }

  SUBCASE("no chips and single-cell ports") {
    const Grid grid{10, 10, 0.001, 0.001};
    BoardLayout layout;
    layout.inlet = {Edge::j_min, 4, 4};
    layout.outlet = {Edge::j_max, 4, 4};
    CHECK(build_pinned_sets(grid, layout).size() == 2);
  }

  SUBCASE("default layout covers every rasterized chip cell") {
    const auto [grid, layout] = default_layout();
    const auto pinned = build_pinned_sets(grid, layout);
    std::size_t chip_cells = 0;
    for (const auto& chip : layout.chips) {
      for (const auto c : rasterize(grid, chip.region)) {
        CHECK(pinned.contains(c));
        ++chip_cells;
      }
    }
    CHECK(pinned.chips().size() == chip_cells);
    CHECK(pinned.size() == chip_cells + 52);
    for (std::size_t k = 0; k < pinned.size(); ++k) {
      const auto c = pinned.combined()[k];
      CHECK(pinned.indices()[k] == grid.index(c.i, c.j));
    }
  }

  SUBCASE("out-of-grid cells are rejected") {
    const Grid grid{5, 5, 1.0, 1.0};
    CHECK_THROWS_AS(PinnedSet(grid, {{5, 0}}, {}, {}), DomainError);
  }
}

TEST_CASE("port rasterization needs at least one cell") {
  const Grid grid{10, 10, 0.001, 0.001};
  CHECK_THROWS_AS(rasterize_port(grid, Edge::j_min, 0.0051, 0.0002), DomainError);
  const auto span = rasterize_port(grid, Edge::j_min, 0.0055, 0.0002);
  CHECK(span.i0 == 5);
  CHECK(span.i1 == 5);
}
