#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "locograph/errors.hpp"
#include "locograph/io.hpp"

using namespace loco;

namespace {

SublatticeHnf scaled(int d, int64_t m) {
    std::vector<int64_t> rows(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) rows[static_cast<size_t>(i) * d + i] = m;
    return SublatticeHnf::from_rows_unchecked(d, rows);
}

}  // namespace

TEST_CASE("edge list round trip") {
    auto g = build_quotient(scaled(2, 4));
    std::ostringstream os;
    write_edge_list(os, g, 2);
    std::istringstream is(os.str());
    auto f = read_edge_list(is);
    CHECK(f.d == 2);
    CHECK(f.graph.vertex_count() == g.vertex_count());
    CHECK(f.graph.edge_count() == g.edge_count());
    CHECK(graph_isomorphic(f.graph, g));
    // writing again is byte-identical
    std::ostringstream os2;
    write_edge_list(os2, f.graph, f.d);
    CHECK(os.str() == os2.str());
}

TEST_CASE("edge list parse failures carry line numbers") {
    auto expect_line = [](const std::string& text, long line) {
        std::istringstream is(text);
        try {
            read_edge_list(is);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line_number == line);
        }
    };
    expect_line("bogus header\n0 1\n", 1);
    expect_line("# locograph v1 n=4\n0 1\n", 1);           // missing d=
    expect_line("# locograph v1 n=4 d=1\n0\n", 2);          // short line
    expect_line("# locograph v1 n=4 d=1\n1 0\n", 2);        // u >= v
    expect_line("# locograph v1 n=4 d=1\n0 9\n", 2);        // out of range
    expect_line("# locograph v1 n=4 d=1\n0 1\n0 1\n", 3);   // duplicate
    expect_line("# locograph v1 n=4 d=1\n0 2\n0 1\n", 3);   // unsorted
    expect_line("# locograph v1 n=4 d=1\n0 1 7\n", 2);      // trailing token
}

TEST_CASE("orbit JSON round trip") {
    auto oc = orbit_of(SublatticeHnf::from_rows_unchecked(2, {6, 3, 0, 3}));
    auto j = orbit_to_json(oc, 2);
    CHECK(j["index"] == 18);
    CHECK(j["min_distance"] == 6);
    CHECK(j["rep"][0][0] == 6);
    CHECK(j["rep"][1][0] == 0);  // row-major nested arrays
    auto back = orbit_from_json(j);
    CHECK(back.rep == oc.rep);
    CHECK(back.orbit_size == oc.orbit_size);
    CHECK(back.stabilizer_size == oc.stabilizer_size);
}

TEST_CASE("census shards and resume") {
    const std::string dir =
        (std::filesystem::temp_directory_path() / "locograph-test-shards").string();
    std::filesystem::remove_all(dir);
    auto direct = build_census(2, 2, 40);
    auto cached = cached_census(dir, 2, 2, 40, 1);
    CHECK(cached.gamma == direct.gamma);
    // a second run resumes from the shard without rebuilding; tables match
    auto resumed = cached_census(dir, 2, 2, 40, 1);
    CHECK(resumed.gamma == direct.gamma);
    for (int64_t n = 1; n <= 40; ++n) {
        REQUIRE(resumed.orbits[n].size() == direct.orbits[n].size());
        for (size_t k = 0; k < direct.orbits[n].size(); ++k) {
            CHECK(resumed.orbits[n][k].rep == direct.orbits[n][k].rep);
            CHECK(resumed.orbits[n][k].min_distance == direct.orbits[n][k].min_distance);
            CHECK(resumed.orbits[n][k].orbit_size == direct.orbits[n][k].orbit_size);
        }
    }
    // an incomplete shard is rebuilt, not trusted
    {
        std::ofstream trunc(shard_path(dir, 2, 2, 1, 40 < kShardSpan ? 40 : kShardSpan));
        trunc << "{\"artifact\":\"census-shard\",\"lo\":1,\"hi\":40}\n";
    }
    auto rebuilt = cached_census(dir, 2, 2, 40, 1);
    CHECK(rebuilt.gamma == direct.gamma);
    std::filesystem::remove_all(dir);
}
