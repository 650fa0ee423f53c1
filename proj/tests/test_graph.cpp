#include <doctest.h>

#include <algorithm>
#include <vector>

#include "helpers.hpp"
#include "p4c/graph.hpp"

using namespace p4c;
using p4c::testing::graph_from_edges;
using p4c::testing::same_graph;

TEST_CASE("bitset: basic operations") {
    Bitset b(70);
    CHECK(b.empty());
    b.set(0);
    b.set(65);
    CHECK(b.count() == 2);
    CHECK(b.test(65));
    CHECK_FALSE(b.test(1));
    CHECK(b.first() == 0);
    b.reset(0);
    CHECK(b.first() == 65);

    Bitset x = Bitset::of(8, {1, 3, 5});
    Bitset y = Bitset::of(8, {3, 5, 7});
    CHECK((x & y).to_vector() == std::vector<int>{3, 5});
    CHECK((x | y).to_vector() == std::vector<int>{1, 3, 5, 7});
    CHECK(x.minus(y).to_vector() == std::vector<int>{1});
    CHECK(x.intersects(y));
    CHECK_FALSE(Bitset::of(8, {0}).intersects(y));
    CHECK(Bitset::of(8, {3, 5}).subset_of(x));
    CHECK_FALSE(x.subset_of(y));
    CHECK(Bitset::full(4).count() == 4);

    std::vector<int> seen;
    x.for_each([&](int i) { seen.push_back(i); });
    CHECK(seen == std::vector<int>{1, 3, 5}); // ascending visit order
}

TEST_CASE("graph: edges are symmetric and reported in sorted order") {
    Graph g = graph_from_edges(5, {{3, 1}, {0, 4}, {2, 0}});
    CHECK(g.n() == 5);
    CHECK(g.adjacent(1, 3));
    CHECK(g.adjacent(3, 1));
    CHECK_FALSE(g.adjacent(0, 1));
    auto e = g.edges();
    CHECK(e == std::vector<std::pair<int, int>>{{0, 2}, {0, 4}, {1, 3}});
}

TEST_CASE("graph: builders") {
    CHECK(path_graph(5).edges().size() == 4);
    CHECK(cycle_graph(5).edges().size() == 5);
    CHECK(complete_graph(4).edges().size() == 6);
    CHECK(empty_graph(4).edges().empty());
    Graph net = net_graph();
    CHECK(net.n() == 6);
    CHECK(net.edges().size() == 6); // triangle plus three pendants
    Graph chair = chair_graph();
    CHECK(chair.n() == 5);
    CHECK(chair.edges().size() == 4);
    Graph bull = bull_graph();
    CHECK(bull.n() == 5);
    CHECK(bull.edges().size() == 5);
    // The chair is a path with one extra leg; the bull is a triangle with two
    // pendant horns.  Check the degree multisets.
    auto degrees = [](const Graph& g) {
        std::vector<int> d(g.n(), 0);
        for (auto [u, v] : g.edges()) ++d[u], ++d[v];
        std::sort(d.begin(), d.end());
        return d;
    };
    CHECK(degrees(chair) == std::vector<int>{1, 1, 1, 2, 3});
    CHECK(degrees(bull) == std::vector<int>{1, 1, 2, 3, 3});
    CHECK(degrees(net) == std::vector<int>{1, 1, 1, 3, 3, 3});
}

TEST_CASE("graph: complement") {
    Graph p4 = path_graph(4);
    Graph co = complement(p4);
    CHECK(co.edges().size() == 3);
    CHECK(same_graph(complement(co), p4));
    for (int i = 0; i < 4; ++i) CHECK_FALSE(co.adjacent(i, i));
    CHECK(co.adjacent(0, 2));
    CHECK_FALSE(co.adjacent(0, 1));
}

TEST_CASE("graph: disjoint union and join") {
    Graph a = complete_graph(2);
    Graph b = path_graph(3);
    Graph u = disjoint_union(a, b);
    CHECK(u.n() == 5);
    CHECK(u.edges().size() == 1 + 2);
    CHECK(u.adjacent(0, 1));
    CHECK(u.adjacent(2, 3));
    CHECK_FALSE(u.adjacent(1, 2));
    Graph j = join(a, b);
    CHECK(j.edges().size() == 1 + 2 + 2 * 3);
    CHECK(j.adjacent(1, 2));
    CHECK(j.adjacent(0, 4));
}

TEST_CASE("graph: connectivity") {
    Graph two = disjoint_union(path_graph(3), complete_graph(2));
    auto comps = connected_components(two);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].count() == 3);
    CHECK(comps[1].count() == 2);
    CHECK_FALSE(is_connected(two));
    CHECK(is_connected(cycle_graph(4)));
    CHECK(is_connected(complete_graph(1)));
    CHECK(connected_components(empty_graph(3)).size() == 3);
}

TEST_CASE("graph: clique and stable set predicates") {
    Graph bull = bull_graph();
    CHECK(is_clique(bull, VertexSet::of(5, {0, 1, 2})));
    CHECK_FALSE(is_clique(bull, VertexSet::of(5, {0, 1, 3})));
    CHECK(is_stable(bull, VertexSet::of(5, {3, 4})));
    CHECK_FALSE(is_stable(bull, VertexSet::of(5, {0, 1})));
    CHECK(is_clique(bull, VertexSet::of(5, {3})));
    CHECK(is_stable(bull, VertexSet(5)));
}

TEST_CASE("graph: induced subgraph keeps ascending vertex order") {
    Graph c5 = cycle_graph(5);
    auto sub = induced_subgraph(c5, VertexSet::of(5, {1, 2, 4}));
    CHECK(sub.graph.n() == 3);
    CHECK(sub.to_parent == std::vector<int>{1, 2, 4});
    CHECK(sub.graph.adjacent(0, 1));  // 1-2
    CHECK_FALSE(sub.graph.adjacent(0, 2)); // 1-4
    CHECK_FALSE(sub.graph.adjacent(1, 2)); // 2-4
    CHECK_THROWS_AS(induced_subgraph(c5, VertexSet(5)), std::invalid_argument);
}

TEST_CASE("graph: induced path enumeration") {
    for (int n = 4; n <= 8; ++n)
        CHECK(enumerate_p4s(path_graph(n)).size() == size_t(n - 3));
    CHECK(enumerate_p4s(cycle_graph(5)).size() == 5);
    CHECK(enumerate_p4s(net_graph()).size() == 3);
    CHECK(enumerate_p4s(complete_graph(6)).empty());
    CHECK(enumerate_p4s(empty_graph(6)).empty());

    // Every reported quadruple is an induced path listed with its smaller
    // endpoint first.  The bull has exactly one: horn-shoulder-shoulder-horn.
    Graph bull = bull_graph();
    for (const auto& p : enumerate_p4s(bull)) {
        CHECK(p[0] < p[3]);
        CHECK(bull.adjacent(p[0], p[1]));
        CHECK(bull.adjacent(p[1], p[2]));
        CHECK(bull.adjacent(p[2], p[3]));
        CHECK_FALSE(bull.adjacent(p[0], p[2]));
        CHECK_FALSE(bull.adjacent(p[0], p[3]));
        CHECK_FALSE(bull.adjacent(p[1], p[3]));
    }
    CHECK(enumerate_p4s(bull).size() == 1);
    for (const auto& p : enumerate_p4s(cycle_graph(6))) CHECK(p[0] < p[3]);
    CHECK(enumerate_p4s(cycle_graph(6)).size() == 6);
}

TEST_CASE("graph: counting induced paths inside a subset") {
    Graph c5 = cycle_graph(5);
    CHECK(count_p4s_within(c5, Bitset::full(5)) == 5);
    CHECK(count_p4s_within(c5, VertexSet::of(5, {0, 1, 2, 3})) == 1);
    CHECK(count_p4s_within(c5, VertexSet::of(5, {0, 1, 2})) == 0);
    Graph p7 = path_graph(7);
    CHECK(count_p4s_within(p7, Bitset::full(7)) == 4);
    CHECK(count_p4s_within(p7, VertexSet::of(7, {0, 1, 2, 3, 4})) == 2);
}

TEST_CASE("graph: maximal cliques") {
    auto cliques = maximal_cliques(cycle_graph(5));
    CHECK(cliques.size() == 5);
    for (const auto& q : cliques) CHECK(q.count() == 2);

    cliques = maximal_cliques(complete_graph(4));
    REQUIRE(cliques.size() == 1);
    CHECK(cliques[0].count() == 4);

    cliques = maximal_cliques(bull_graph());
    CHECK(cliques.size() == 3); // triangle and the two horn edges

    cliques = maximal_cliques(empty_graph(3));
    CHECK(cliques.size() == 3);
    for (const auto& q : cliques) CHECK(q.count() == 1);
}

TEST_CASE("graph: small isomorphism checks") {
    CHECK(isomorphic_small(cycle_graph(5), complement(cycle_graph(5))));
    CHECK(isomorphic_small(path_graph(4), complement(path_graph(4))));
    CHECK_FALSE(isomorphic_small(path_graph(5), cycle_graph(5)));
    CHECK_FALSE(isomorphic_small(chair_graph(), bull_graph()));
    CHECK(isomorphic_small(complete_graph(3), cycle_graph(3)));
    CHECK_FALSE(isomorphic_small(path_graph(4), path_graph(5)));
    // Relabeled chair.
    Graph relabeled = graph_from_edges(5, {{4, 2}, {2, 0}, {0, 3}, {2, 1}});
    CHECK(isomorphic_small(relabeled, chair_graph()));
}
