#include <doctest.h>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "p4c/decomposition.hpp"
#include "p4c/errors.hpp"
#include "p4c/graph.hpp"
#include "p4c/oracle.hpp"

using namespace p4c;
using p4c::testing::graph_from_edges;
using p4c::testing::graph_from_mask;
using p4c::testing::random_graph;
using p4c::testing::same_graph;
using p4c::testing::spider_graph;

namespace {

const std::vector<ColoringFamily> kAllFamilies = {
    ColoringFamily::Proper,     ColoringFamily::Acyclic,    ColoringFamily::Star,
    ColoringFamily::Nonrepetitive, ColoringFamily::Harmonious, ColoringFamily::Clique,
};

int oracle_value(const Graph& g, ColoringFamily f) { return exact_chromatic(g, f).value; }

// Expected values per family, in the order proper, acyclic, star,
// nonrepetitive, harmonious, clique.  -1 skips a family.
void check_row(const Graph& g, const std::vector<int>& expected) {
    REQUIRE(expected.size() == kAllFamilies.size());
    for (size_t i = 0; i < kAllFamilies.size(); ++i) {
        if (expected[i] < 0) continue;
        CAPTURE(i);
        CHECK(oracle_value(g, kAllFamilies[i]) == expected[i]);
    }
}

std::uint64_t falling_factorial(int n, int b) {
    std::uint64_t r = 1;
    for (int i = 0; i < b; ++i) r *= std::uint64_t(n - i);
    return r;
}

} // namespace

TEST_CASE("oracle: five-cycle values") {
    Graph c5 = cycle_graph(5);
    check_row(c5, {3, 3, 4, 4, 5, 3});
}

TEST_CASE("oracle: four-path and five-path values") {
    check_row(path_graph(4), {2, 2, 3, 3, 3, 2});
    check_row(path_graph(5), {2, 2, 3, 3, 4, 2});
}

TEST_CASE("oracle: chair values") {
    Graph chair = chair_graph();
    check_row(chair, {2, 2, 3, 3, 4, 2});
}

TEST_CASE("oracle: thin spider (net) values") {
    Graph net = net_graph();
    check_row(net, {3, 3, 3, 3, 4, 2});
}

TEST_CASE("oracle: thick spider k=3 values") {
    Graph thick = spider_graph(3, /*thin=*/false, Graph(0));
    REQUIRE(thick.n() == 6);
    check_row(thick, {3, 3, 4, 4, 6, 2});
}

TEST_CASE("oracle: complete and edgeless graphs") {
    check_row(complete_graph(1), {1, 1, 1, 1, 1, 1});
    check_row(complete_graph(2), {2, 2, 2, 2, 2, 2});
    check_row(complete_graph(3), {3, 3, 3, 3, 3, 2});
    check_row(complete_graph(4), {4, 4, 4, 4, 4, 2});
    // Edgeless graphs: disconnected, so the harmonious family is skipped.
    check_row(empty_graph(3), {1, 1, 1, 1, -1, 1});
    Graph star = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    check_row(star, {2, 2, 2, 2, 4, 2});
}

TEST_CASE("oracle: empty input") {
    Graph g(0);
    for (ColoringFamily f : kAllFamilies) {
        auto r = exact_chromatic(g, f);
        CHECK(r.value == 0);
        CHECK(r.witness.k == 0);
        CHECK(r.witness.colors.empty());
    }
}

TEST_CASE("oracle: trace shape") {
    auto r = exact_chromatic(cycle_graph(5), ColoringFamily::Star);
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].node == -1);
    CHECK(r.trace[0].rule == "oracle");
    CHECK(r.trace[0].value == 4);
}

TEST_CASE("oracle: witnesses are valid and use exactly the reported colors") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + int(rng() % 6);
        Graph g = random_graph(n, 0.4, rng);
        for (ColoringFamily f : kAllFamilies) {
            if (f == ColoringFamily::Harmonious && !is_connected(g)) continue;
            auto r = exact_chromatic(g, f);
            CAPTURE(trial);
            CHECK(r.witness.k == r.value);
            CHECK(is_valid(g, r.witness, f));
            int max_color = -1;
            for (int c : r.witness.colors) max_color = std::max(max_color, c);
            CHECK(max_color == r.value - 1);
        }
    }
}

TEST_CASE("oracle: values are minimal") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + int(rng() % 4);
        Graph g = random_graph(n, 0.5, rng);
        for (ColoringFamily f : kAllFamilies) {
            if (f == ColoringFamily::Harmonious && !is_connected(g)) continue;
            int v = oracle_value(g, f);
            int below = 0, at = 0;
            if (v > 1)
                family_colorings(g, f, v - 1, [&](const Coloring&) {
                    ++below;
                    return false;
                });
            family_colorings(g, f, v, [&](const Coloring&) {
                ++at;
                return false;
            });
            CHECK(below == 0);
            CHECK(at == 1);
        }
    }
}

TEST_CASE("oracle: chromatic chain across families") {
    // proper <= acyclic <= star <= nonrepetitive, and nonrepetitive <=
    // harmonious on connected graphs.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + int(rng() % 6);
        Graph g = random_graph(n, 0.35 + 0.1 * double(trial % 4), rng);
        int chi = oracle_value(g, ColoringFamily::Proper);
        int a = oracle_value(g, ColoringFamily::Acyclic);
        int st = oracle_value(g, ColoringFamily::Star);
        int pi = oracle_value(g, ColoringFamily::Nonrepetitive);
        CAPTURE(trial);
        CHECK(chi <= a);
        CHECK(a <= st);
        CHECK(st <= pi);
        if (is_connected(g)) CHECK(pi <= oracle_value(g, ColoringFamily::Harmonious));
    }
}

TEST_CASE("oracle: canonical enumeration counts labeled colorings") {
    // Summing the falling factorial n!/(n-b)! over canonical colorings with b
    // color blocks must equal the number of valid labelings V -> [n], counted
    // directly.
    std::vector<Graph> graphs = {path_graph(4), cycle_graph(5), complete_graph(3),
                                 graph_from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}})};
    for (const Graph& g : graphs) {
        int n = g.n();
        for (ColoringFamily f : kAllFamilies) {
            if (f == ColoringFamily::Harmonious && !is_connected(g)) continue;
            std::uint64_t canonical_sum = 0;
            family_colorings(g, f, n, [&](const Coloring& c) {
                canonical_sum += falling_factorial(n, c.k);
                return true;
            });
            std::uint64_t direct = 0;
            std::vector<int> assign(n, 0);
            while (true) {
                Coloring c{n, assign};
                if (is_valid(g, c, f)) ++direct;
                int i = 0;
                while (i < n && ++assign[i] == n) assign[i++] = 0;
                if (i == n) break;
            }
            CAPTURE(int(f));
            CHECK(canonical_sum == direct);
        }
    }
}

TEST_CASE("oracle: distinct-vertex constraint filters colorings") {
    Graph p3 = path_graph(3);
    int unconstrained = 0, constrained = 0;
    family_colorings(p3, ColoringFamily::Proper, 3, [&](const Coloring&) {
        ++unconstrained;
        return true;
    });
    family_colorings(
        p3, ColoringFamily::Proper, 3,
        [&](const Coloring& c) {
            ++constrained;
            CHECK(c.colors[0] != c.colors[2]);
            return true;
        },
        VertexSet::of(3, {0, 2}));
    CHECK(unconstrained == 2); // {0,2}{1} and {0}{1}{2}
    CHECK(constrained == 1);   // only the rainbow coloring keeps 0 and 2 apart
}

TEST_CASE("oracle: visitor can stop enumeration") {
    int visits = 0;
    family_colorings(empty_graph(6), ColoringFamily::Proper, 6, [&](const Coloring&) {
        ++visits;
        return false;
    });
    CHECK(visits == 1);
}

TEST_CASE("oracle: size and partition budgets") {
    CHECK_THROWS_AS(exact_chromatic(empty_graph(15), ColoringFamily::Proper), BudgetError);
    CHECK_THROWS_AS(exact_chromatic(path_graph(13), ColoringFamily::Nonrepetitive), BudgetError);
    CHECK_THROWS_AS(exact_chromatic(path_graph(13), ColoringFamily::Harmonious), BudgetError);
    CHECK(exact_chromatic(empty_graph(14), ColoringFamily::Star).value == 1);

    OracleBudget tight;
    tight.max_partitions = 10;
    CHECK_THROWS_AS(exact_chromatic(cycle_graph(9), ColoringFamily::Star, tight), BudgetError);
}

TEST_CASE("oracle: harmonious requires a connected graph") {
    Graph two_isolated(2);
    CHECK_THROWS_AS(exact_chromatic(two_isolated, ColoringFamily::Harmonious),
                    DisconnectedError);
    Graph two_edges = graph_from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(exact_chromatic(two_edges, ColoringFamily::Harmonious), DisconnectedError);
}

TEST_CASE("generator: instances are members of the requested class") {
    struct Case {
        TargetClass target;
        int q;
    };
    std::vector<Case> cases = {{TargetClass::Cograph, 4},
                               {TargetClass::P4Sparse, 5},
                               {TargetClass::QQ4, 6},
                               {TargetClass::QQ4, 8},
                               {TargetClass::P4Tidy, 7}};
    for (const auto& c : cases) {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            GeneratorSpec spec;
            spec.target = c.target;
            spec.q = c.q;
            spec.n_min = 4;
            spec.n_max = 11;
            spec.seed = seed;
            spec.require_connected = (seed % 2 == 0);
            auto inst = generate(spec);
            const Graph& g = inst.graph;
            CAPTURE(int(c.target));
            CAPTURE(seed);
            CHECK(g.n() >= spec.n_min);
            CHECK(g.n() <= spec.n_max);
            if (spec.require_connected) CHECK(is_connected(g));
            switch (c.target) {
                case TargetClass::Cograph: CHECK(enumerate_p4s(g).empty()); break;
                case TargetClass::P4Sparse: CHECK(is_qq4(g, 5)); break;
                case TargetClass::QQ4: CHECK(is_qq4(g, c.q)); break;
                case TargetClass::P4Tidy: CHECK(is_p4_tidy(g)); break;
            }
            // The ground-truth tree must describe exactly the generated graph.
            REQUIRE(inst.tree.root >= 0);
            CHECK(inst.tree.at(inst.tree.root).vertices.count() == g.n());
            CHECK(same_graph(reassemble(inst.tree, inst.tree.root, g), g));
        }
    }
}

TEST_CASE("generator: deterministic per seed") {
    GeneratorSpec spec;
    spec.target = TargetClass::P4Tidy;
    spec.seed = 42;
    Graph a = generate(spec).graph;
    Graph b = generate(spec).graph;
    CHECK(same_graph(a, b));
}

TEST_CASE("generator: separable bodies appear at large q") {
    GeneratorSpec spec;
    spec.target = TargetClass::QQ4;
    spec.q = 8;
    spec.n_min = 7;
    spec.n_max = 12;
    spec.weights.separable_op = 8;
    int with_separable = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        spec.seed = seed;
        auto inst = generate(spec);
        for (const auto& node : inst.tree.nodes)
            if (node.type == NodeType::Separable) {
                ++with_separable;
                break;
            }
    }
    CHECK(with_separable >= 1);
}
