#include "doctest.h"

#include "mds/instance.hpp"
#include "mds/solvers.hpp"
#include "mds/svg.hpp"

using namespace mds;

TEST_CASE("svg output is a stable pure function of its inputs") {
    const HexGrid grid;
    const Instance inst = gen_uniform(10, 4, 4, 17);
    const Solution sol = four_factor(inst, grid);
    const auto desc = default_septa();

    const std::string a = render_svg(inst, &sol, &desc, grid);
    const std::string b = render_svg(inst, &sol, &desc, grid);
    CHECK(a == b);
    CHECK(a.rfind("<?xml", 0) == 0);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("<polygon") != std::string::npos);
    CHECK(a.find("<circle") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
}

TEST_CASE("empty instance renders a grid-only document") {
    const HexGrid grid;
    Instance inst;
    inst.name = "empty";
    inst.width = 2;
    inst.height = 2;
    const std::string svg = render_svg(inst, nullptr, nullptr, grid);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<circle") == std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("a three point fixture with its exact cover renders one unit disk") {
    const HexGrid grid;
    Instance inst;
    inst.points = {{0, 0}, {0.9, 0}, {1.8, 0}};
    const Solution sol = exact_mds(inst.points, grid);
    REQUIRE(sol.size() == 1);
    const std::string svg = render_svg(inst, &sol, nullptr, grid);
    // one unit circle (r = scale) plus one chosen-center marker and 3 dots
    CHECK(svg.find("r=\"60.0000\"") != std::string::npos);
}
