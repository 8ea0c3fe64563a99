#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vbs/graph.hpp"

using namespace vbs;

TEST_CASE("parse minimal graphs") {
    auto p = parse_graph("e 0 1 1\n");
    CHECK(p.graph.vertex_count() == 2);
    CHECK(p.graph.edge_count() == 1);
    CHECK(p.graph.edges[0].multiplicity == 1);
    CHECK(p.graph.connected);

    auto path = parse_graph("e 0 1 1\ne 1 2 1\n");
    CHECK(path.graph.vertex_count() == 3);
    CHECK(path.graph.edge_count() == 2);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse_graph("e 0 0 1\n"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("e 0 0 1\n"), doctest::Contains("SelfLoop"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("e 0 1 0\n"), doctest::Contains("NonPositiveMultiplicity"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_graph("e 0 1 1\ne 1 0 2\n"), doctest::Contains("DuplicateEdge"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_graph("e 0 1 1\nblock 0 7\n"),
                         doctest::Contains("UnknownVertexInBlockDirective"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("edge 0 1 1\n"), doctest::Contains("SyntaxError"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("e 0 1\n"), doctest::Contains("SyntaxError"), Error);

    try {
        parse_graph("# fine\ne 0 1 x\n");
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == Errc::SyntaxError);
        CHECK(err.line() == 2);
    }
}

TEST_CASE("comments, vertex declarations, directives") {
    auto p = parse_graph("# header\nv 5\ne 0 1 2\nblock 0\nspin 1 4\n");
    CHECK(p.graph.vertex_count() == 3);
    CHECK(p.graph.has_vertex(5));
    CHECK(p.default_block == std::vector<VertexId>{0});
    CHECK(p.spin_overrides.at(1) == 4);
    CHECK_FALSE(p.graph.connected);  // vertex 5 is isolated
}

TEST_CASE("infer_spins matches incident multiplicity sums") {
    auto path = parse_graph("e 0 1 1\ne 1 2 1\n").graph;
    auto s = infer_spins(path);
    CHECK(s.twice_spin == std::vector<TwiceSpin>{1, 2, 1});

    auto single = parse_graph("e 0 1 1\n").graph;
    CHECK(infer_spins(single).twice_spin == std::vector<TwiceSpin>{1, 1});

    auto chain121 = parse_graph("e 0 1 1\ne 1 2 2\ne 2 3 1\n").graph;
    CHECK(infer_spins(chain121).twice_spin == std::vector<TwiceSpin>{1, 3, 3, 1});
}

TEST_CASE("check_uniqueness on inferred and overridden spins") {
    auto path = parse_graph("e 0 1 1\ne 1 2 1\n").graph;
    auto s = infer_spins(path);
    auto uc = check_uniqueness(path, s);
    CHECK(uc.unique);
    CHECK(uc.residual.isZero());

    // override vertex 0 to spin 1: residual 2*1 - 1 = 1
    auto bad = apply_overrides(path, s, {{0, 2}});
    auto uc2 = check_uniqueness(path, bad);
    CHECK_FALSE(uc2.unique);
    CHECK(uc2.residual(0) == 1);
    CHECK(uc2.residual(1) == 0);
    CHECK(uc2.residual(2) == 0);

    auto star = parse_graph("e 0 1 1\ne 0 2 1\ne 0 3 1\n").graph;
    auto ss = infer_spins(star);
    CHECK(ss.twice_spin[0] == 3);
    CHECK(check_uniqueness(star, ss).unique);
}

TEST_CASE("incidence matrix columns have exactly two unit entries") {
    auto g = parse_graph("e 0 1 1\ne 1 2 2\ne 0 2 1\n").graph;
    auto inc = incidence_matrix(g);
    REQUIRE(inc.rows() == 3);
    REQUIRE(inc.cols() == 3);
    for (int j = 0; j < inc.cols(); ++j) CHECK(inc.col(j).sum() == 2);
}

TEST_CASE("cut_graph populates boundaries and cut edges") {
    auto path = parse_graph("e 0 1 1\ne 1 2 1\n").graph;
    auto cut = cut_graph(path, {0, 1});
    CHECK(cut.cut_edges.size() == 1);
    CHECK(cut.cut_edges[0].a == 1);
    CHECK(cut.cut_edges[0].b == 2);
    CHECK(cut.boundary_block == std::vector<VertexId>{1});
    CHECK(cut.boundary_env == std::vector<VertexId>{2});
    CHECK(cut.block_size() == 2);
    CHECK(cut.boundary_size() == 1);

    auto single = parse_graph("e 0 1 1\n").graph;
    auto c1 = cut_graph(single, {0});
    CHECK(c1.cut_edges.size() == 1);
    CHECK(c1.boundary_block == std::vector<VertexId>{0});
    CHECK(c1.boundary_env == std::vector<VertexId>{1});

    auto ring = parse_graph("e 0 1 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\ne 0 5 1\n").graph;
    auto c6 = cut_graph(ring, {0, 1, 2});
    CHECK(c6.cut_edges.size() == 2);
    CHECK(c6.boundary_size() == 2);

    CHECK_THROWS_AS(cut_graph(path, {}), Error);
    CHECK_THROWS_AS(cut_graph(path, {0, 1, 2}), Error);
    CHECK_THROWS_AS(cut_graph(path, {9}), Error);
}

TEST_CASE("cut symmetry and edge partition property") {
    auto g = parse_graph("e 0 1 1\ne 1 2 2\ne 2 3 1\ne 0 3 2\ne 1 3 1\n").graph;
    auto cb = cut_graph(g, {0, 1});
    auto ce = cut_graph(g, {2, 3});
    REQUIRE(cb.cut_edges.size() == ce.cut_edges.size());
    for (std::size_t i = 0; i < cb.cut_edges.size(); ++i)
        CHECK(cb.cut_edges[i].key() == ce.cut_edges[i].key());

    std::size_t internal_b = induced_subgraph(g, cb.block).edge_count();
    std::size_t internal_e = induced_subgraph(g, cb.environment).edge_count();
    CHECK(internal_b + internal_e + cb.cut_edges.size() == g.edge_count());
}

TEST_CASE("spin assignment at unknown vertex throws") {
    auto g = parse_graph("e 0 1 1\n").graph;
    auto s = infer_spins(g);
    CHECK_THROWS_AS(s.at(g, 42), Error);
}
