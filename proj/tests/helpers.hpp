#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "p4c/graph.hpp"

namespace p4c::testing {

inline Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

// Graph on n vertices from an edge bitmask over pairs (i, j), i < j, in
// lexicographic order; enumerating masks 0..2^(n(n-1)/2)-1 visits every
// labeled graph exactly once.
inline Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1) g.add_edge(i, j);
    return g;
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
    Graph g(n);
    std::bernoulli_distribution edge(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) g.add_edge(i, j);
    return g;
}

inline bool same_graph(const Graph& a, const Graph& b) {
    if (a.n() != b.n()) return false;
    for (int i = 0; i < a.n(); ++i)
        for (int j = i + 1; j < a.n(); ++j)
            if (a.adjacent(i, j) != b.adjacent(i, j)) return false;
    return true;
}

// Thin/thick spider on 2k + |head_edges graph| vertices: clique 0..k-1,
// stable k..2k-1, head vertices appended and joined to the clique.
inline Graph spider_graph(int k, bool thin, const Graph& head) {
    int n = 2 * k + head.n();
    Graph g(n);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) g.add_edge(i, j);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (thin ? i == j : i != j) g.add_edge(k + i, j);
    for (int h = 0; h < head.n(); ++h)
        for (int c = 0; c < k; ++c) g.add_edge(2 * k + h, c);
    for (auto [u, v] : head.edges()) g.add_edge(2 * k + u, 2 * k + v);
    return g;
}

} // namespace p4c::testing
