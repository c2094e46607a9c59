#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mds/cover.hpp"
#include "mds/instance.hpp"
#include "mds/rng.hpp"

using namespace mds;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("csv round trip preserves values and order") {
    Instance inst = gen_uniform(50, 10, 10, 123);
    const auto path = temp_file("mds_io_roundtrip.csv");
    save_instance(inst, path.string());
    const Instance back = load_instance(path.string());
    REQUIRE(back.size() == inst.size());
    for (int i = 0; i < inst.size(); ++i) {
        CHECK(back.points[i].x == inst.points[i].x);
        CHECK(back.points[i].y == inst.points[i].y);
    }
    std::filesystem::remove(path);
}

TEST_CASE("json envelope round trip keeps provenance") {
    Instance inst = gen_clustered(20, 4, 0.5, 8, 8, 7);
    const auto path = temp_file("mds_io_roundtrip.json");
    save_instance(inst, path.string());
    const Instance back = load_instance(path.string());
    REQUIRE(back.size() == inst.size());
    for (int i = 0; i < inst.size(); ++i) {
        CHECK(back.points[i].x == inst.points[i].x);
        CHECK(back.points[i].y == inst.points[i].y);
    }
    CHECK(back.provenance["generator"] == "clustered");
    CHECK(back.provenance["seed"].get<std::uint64_t>() == 7);
    std::filesystem::remove(path);
}

TEST_CASE("empty input parses to an empty instance") {
    CHECK(parse_instance("", "empty").size() == 0);
    CHECK(parse_instance("# just a comment\n\n", "empty").size() == 0);
}

TEST_CASE("malformed lines are reported with their line number") {
    CHECK_THROWS_WITH_AS(parse_instance("1.0;2.0\n", "bad"),
                         doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance("1.0,2.0\nx,y\n", "bad"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_instance("nan,2.0\n", "bad"), ParseError);
}

TEST_CASE("gen_uniform is deterministic and stays in the box") {
    CHECK(gen_uniform(0, 4, 4, 1).size() == 0);
    const Instance a = gen_uniform(5, 4, 4, 42);
    const Instance b = gen_uniform(5, 4, 4, 42);
    REQUIRE(a.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
    }
    const Instance big = gen_uniform(1000, 10, 10, 99);
    for (const Point& p : big.points) {
        REQUIRE(p.x >= 0.0);
        REQUIRE(p.x <= 10.0);
        REQUIRE(p.y >= 0.0);
        REQUIRE(p.y <= 10.0);
    }
}

TEST_CASE("gen_uniform output is pinned by the generator algorithm") {
    // splitmix64(seed=1): first two outputs determine the first point
    const Instance inst = gen_uniform(1, 1, 1, 1);
    SplitMix64 rng(1);
    const double x = rng.uniform();
    const double y = rng.uniform();
    CHECK(inst.points[0].x == x);
    CHECK(inst.points[0].y == y);
}

TEST_CASE("gen_clustered: determinism, box, and tight clusters") {
    const Instance a = gen_clustered(50, 5, 0.5, 10, 10, 8);
    const Instance b = gen_clustered(50, 5, 0.5, 10, 10, 8);
    REQUIRE(a.size() == 50);
    for (int i = 0; i < 50; ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        REQUIRE(a.points[i].x >= 0.0);
        REQUIRE(a.points[i].x <= 10.0);
        REQUIRE(a.points[i].y >= 0.0);
        REQUIRE(a.points[i].y <= 10.0);
    }

    // one tight cluster is dominated by a single disk
    const Instance tight = gen_clustered(8, 1, 0.001, 6, 6, 5);
    const HexGrid grid;
    CHECK(exact_mds(tight.points, grid).size() == 1);
}
