#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "p4c/bitset.hpp"

namespace p4c {

// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
public:
    Graph() : n_(0), m_(0) {}
    explicit Graph(int n) : n_(n), m_(0), adj_(n, Bitset(n)) {}

    int n() const { return n_; }
    int m() const { return m_; }

    void add_edge(int u, int v) {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_ && u != v);
        if (adj_[u].test(v)) return;
        adj_[u].set(v);
        adj_[v].set(u);
        ++m_;
    }

    bool adjacent(int u, int v) const { return adj_[u].test(v); }
    const Bitset& row(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        e.reserve(m_);
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (u < v) e.emplace_back(u, v);
            });
        return e;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    // Optional vertex labels carried through from input files.
    std::optional<std::vector<std::string>> labels;

private:
    int n_;
    int m_;
    std::vector<Bitset> adj_;
};

// An induced subgraph together with the map from its vertices back to the
// vertices of the graph it was taken from.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_parent;
};

// Throws std::invalid_argument if s is empty.
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

Graph complement(const Graph& g);
Graph disjoint_union(const Graph& a, const Graph& b);
Graph join(const Graph& a, const Graph& b);

std::vector<VertexSet> connected_components(const Graph& g);
bool is_connected(const Graph& g);

bool is_clique(const Graph& g, const VertexSet& s);
bool is_stable(const Graph& g, const VertexSet& s);

// All induced paths on four vertices, as ordered arrays a-b-c-d oriented so
// the numerically smaller endpoint comes first.
std::vector<std::array<int, 4>> enumerate_p4s(const Graph& g);

// Number of induced P4s contained in the subset s.
int count_p4s_within(const Graph& g, const VertexSet& s);

// All maximal cliques (Bron-Kerbosch with pivoting).
std::vector<VertexSet> maximal_cliques(const Graph& g);

// Named small graphs used in tests and fixtures.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph empty_graph(int n);
Graph net_graph();      // triangle with a pendant vertex on each corner
Graph chair_graph();    // P4 plus a degree-1 vertex on an interior vertex
Graph bull_graph();     // triangle with two pendant horns

// Exhaustive isomorphism test for small graphs (n <= 8).
bool isomorphic_small(const Graph& a, const Graph& b);

} // namespace p4c
