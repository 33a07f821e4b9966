#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "liftlab/graph.hpp"

using namespace liftlab;

namespace {

std::string temp_file(const std::string& name, const std::string& contents) {
    auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream f(path);
    f << contents;
    return path;
}

}  // namespace

TEST_SUITE("graphs") {

TEST_CASE("cycle builder") {
    Graph g = build_cycle(4);
    CHECK(g.n == 4);
    REQUIRE(g.m() == 4);
    std::vector<std::pair<int, int>> want = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    CHECK(g.edges == want);
    CHECK(g.q.minCoeff() == 1.0);
    CHECK(g.q.maxCoeff() == 1.0);
    CHECK(build_cycle(128).m() == 128);
    CHECK_THROWS_AS(build_cycle(2), std::invalid_argument);
}

TEST_CASE("torus builder") {
    Graph g = build_torus(3);
    CHECK(g.n == 9);
    REQUIRE(g.m() == 18);
    std::set<std::pair<int, int>> uniq(g.edges.begin(), g.edges.end());
    CHECK(uniq.size() == 18);  // wrap-around edges must not duplicate
    CHECK(std::is_sorted(g.edges.begin(), g.edges.end()));
    FactorGraph fg = factor_graph(g);
    for (int v = 0; v < g.n; ++v) CHECK(fg.deg[v] == 4);
    CHECK(build_torus(5).m() == 50);  // 2k^2
    CHECK_THROWS_AS(build_torus(2), std::invalid_argument);
}

TEST_CASE("barbell builder") {
    Graph g = build_barbell(3);
    CHECK(g.n == 6);
    REQUIRE(g.m() == 7);  // two K3 + bridge
    CHECK(std::count(g.edges.begin(), g.edges.end(), std::make_pair(0, 3)) == 1);
    FactorGraph fg = factor_graph(g);
    CHECK(fg.deg[0] == 3);
    CHECK(fg.deg[3] == 3);
    CHECK(fg.deg[1] == 2);
    CHECK(fg.deg[5] == 2);
    CHECK_THROWS_AS(build_barbell(1), std::invalid_argument);
}

TEST_CASE("complete graph minus lexicographically last edge") {
    Graph g = build_complete_minus_edge(4);
    CHECK(g.n == 4);
    REQUIRE(g.m() == 5);
    std::vector<std::pair<int, int>> want = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(g.edges == want);  // (2,3) dropped
    CHECK_THROWS_AS(build_complete_minus_edge(3), std::invalid_argument);
}

TEST_CASE("single edge") {
    Graph g = build_single_edge(2.5);
    CHECK(g.n == 2);
    CHECK(g.m() == 1);
    CHECK(g.q[0] == 2.5);
    CHECK_THROWS_AS(build_single_edge(0.0), std::invalid_argument);
}

TEST_CASE("factor graph selection matrix") {
    Graph g = build_cycle(5);
    FactorGraph fg = factor_graph(g);
    REQUIRE(fg.m2() == 10);
    CHECK(fg.S.rows() == 10);
    CHECK(fg.S.cols() == 5);
    for (int p = 0; p < fg.m2(); ++p) {
        CHECK(fg.S.row(p).sum() == 1.0);
        CHECK(fg.S(p, fg.ehat[p].second) == 1.0);
    }
    for (int e = 0; e < g.m(); ++e) {
        CHECK(fg.ehat[2 * e] == std::make_pair(e, g.edges[e].first));
        CHECK(fg.ehat[2 * e + 1] == std::make_pair(e, g.edges[e].second));
    }
    // S^T S = diag(deg)
    Mat StS = fg.S.transpose() * fg.S;
    for (int v = 0; v < g.n; ++v) {
        CHECK(StS(v, v) == static_cast<double>(fg.deg[v]));
        CHECK(fg.deg[v] == 2);
    }
    CHECK((StS - Mat(StS.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(build_cycle(7)));
    CHECK(is_connected(build_barbell(4)));
    Graph g;
    g.n = 4;
    g.edges = {{0, 1}, {2, 3}};
    g.q = Vec::Ones(2);
    CHECK_FALSE(is_connected(g));
}

TEST_CASE("edge list round trip") {
    Graph g = build_torus(3);
    g.q[0] = 0.125;
    g.q[5] = 2.75;
    g.q[17] = 1e-3;
    std::stringstream ss;
    write_edge_list(g, ss);
    Graph h = read_edge_list(ss);
    CHECK(h.n == g.n);
    REQUIRE(h.edges == g.edges);
    for (int e = 0; e < g.m(); ++e) CHECK(h.q[e] == g.q[e]);
}

TEST_CASE("edge list sorts unsorted input") {
    std::stringstream ss("3 2\n1 2 5.0\n1 0 2.0\n");
    Graph g = read_edge_list(ss);
    std::vector<std::pair<int, int>> want = {{0, 1}, {1, 2}};
    REQUIRE(g.edges == want);  // endpoints normalized to i<j, rows sorted
    CHECK(g.q[0] == 2.0);      // weights follow their edges
    CHECK(g.q[1] == 5.0);
}

TEST_CASE("edge list validation") {
    auto reject = [](const std::string& text) {
        std::stringstream ss(text);
        CHECK_THROWS_AS(read_edge_list(ss), std::invalid_argument);
    };
    reject("1 1\n0 0 1.0\n");        // n too small
    reject("3 0\n");                 // no edges
    reject("3 2\n0 1 1.0\n");        // truncated
    reject("3 1\n0 0 1.0\n");        // self loop
    reject("3 1\n0 3 1.0\n");        // endpoint out of range
    reject("3 2\n0 1 1.0\n1 0 1.0\n");  // duplicate edge
    reject("3 1\n0 1 -2.0\n");       // nonpositive weight
}

TEST_CASE("graph spec grammar") {
    CHECK(parse_graph_spec("cycle:8").n == 8);
    CHECK(parse_graph_spec("torus:4").n == 16);
    CHECK(parse_graph_spec("barbell:5").n == 10);
    CHECK(parse_graph_spec("k4minus").m() == 5);

    std::string path = temp_file("liftlab_spec_graph.txt", "3 3\n0 1 1\n0 2 1\n1 2 1\n");
    Graph g = parse_graph_spec("file:" + path);
    CHECK(g.n == 3);
    CHECK(g.m() == 3);
    std::remove(path.c_str());

    CHECK_THROWS_AS(parse_graph_spec("cycle:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_spec("cycle:abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_spec("cycle:4x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_spec("cycle:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_spec("k4minus:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_spec("wat"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_spec("file:/no/such/file"), std::invalid_argument);
}

}  // TEST_SUITE
