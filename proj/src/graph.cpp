#include "p4c/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace p4c {

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    if (s.empty()) throw std::invalid_argument("induced_subgraph: empty vertex set");
    std::vector<int> verts = s.to_vector();
    std::vector<int> index(g.n(), -1);
    for (size_t i = 0; i < verts.size(); ++i) index[verts[i]] = int(i);
    Graph h(int(verts.size()));
    for (size_t i = 0; i < verts.size(); ++i) {
        (g.row(verts[i]) & s).for_each([&](int v) {
            if (index[v] > int(i)) h.add_edge(int(i), index[v]);
        });
    }
    if (g.labels) {
        std::vector<std::string> labels;
        labels.reserve(verts.size());
        for (int v : verts) labels.push_back((*g.labels)[v]);
        h.labels = std::move(labels);
    }
    return {std::move(h), std::move(verts)};
}

Graph complement(const Graph& g) {
    Graph h(g.n());
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.adjacent(u, v)) h.add_edge(u, v);
    h.labels = g.labels;
    return h;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph h(a.n() + b.n());
    for (auto [u, v] : a.edges()) h.add_edge(u, v);
    for (auto [u, v] : b.edges()) h.add_edge(a.n() + u, a.n() + v);
    return h;
}

Graph join(const Graph& a, const Graph& b) {
    Graph h = disjoint_union(a, b);
    for (int u = 0; u < a.n(); ++u)
        for (int v = 0; v < b.n(); ++v) h.add_edge(u, a.n() + v);
    return h;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    VertexSet seen(g.n());
    for (int s = 0; s < g.n(); ++s) {
        if (seen.test(s)) continue;
        VertexSet comp(g.n());
        comp.set(s);
        VertexSet frontier(g.n());
        frontier.set(s);
        while (frontier.any()) {
            VertexSet next(g.n());
            frontier.for_each([&](int v) { next |= g.row(v); });
            frontier = next.minus(comp);
            comp |= frontier;
        }
        seen |= comp;
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) {
    return g.n() <= 1 || connected_components(g).size() == 1;
}

bool is_clique(const Graph& g, const VertexSet& s) {
    bool ok = true;
    s.for_each([&](int u) {
        if (!ok) return;
        VertexSet rest = s;
        rest.reset(u);
        if (!rest.subset_of(g.row(u))) ok = false;
    });
    return ok;
}

bool is_stable(const Graph& g, const VertexSet& s) {
    bool ok = true;
    s.for_each([&](int u) {
        if (ok && g.row(u).intersects(s)) ok = false;
    });
    return ok;
}

std::vector<std::array<int, 4>> enumerate_p4s(const Graph& g) {
    // A P4 a-b-c-d is determined by its middle edge bc plus endpoints a, d.
    // Scanning each middle edge once (b < c) lists every P4 exactly once;
    // the emitted tuple is oriented so the smaller endpoint comes first.
    std::vector<std::array<int, 4>> out;
    for (int b = 0; b < g.n(); ++b) {
        g.row(b).for_each([&](int c) {
            if (c <= b) return;
            // a: neighbor of b, non-neighbor of c.
            VertexSet as = g.row(b).minus(g.row(c));
            as.reset(c);
            // d: neighbor of c, non-neighbor of b.
            VertexSet ds = g.row(c).minus(g.row(b));
            ds.reset(b);
            as.for_each([&](int a) {
                ds.for_each([&](int d) {
                    if (a == d || g.adjacent(a, d)) return;
                    if (a < d)
                        out.push_back({a, b, c, d});
                    else
                        out.push_back({d, c, b, a});
                });
            });
        });
    }
    return out;
}

int count_p4s_within(const Graph& g, const VertexSet& s) {
    int count = 0;
    s.for_each([&](int b) {
        (g.row(b) & s).for_each([&](int c) {
            if (c <= b) return;
            VertexSet as = (g.row(b) & s).minus(g.row(c));
            as.reset(c);
            VertexSet ds = (g.row(c) & s).minus(g.row(b));
            ds.reset(b);
            as.for_each([&](int a) {
                ds.for_each([&](int d) {
                    if (a != d && !g.adjacent(a, d)) ++count;
                });
            });
        });
    });
    return count;
}

namespace {

void bron_kerbosch(const Graph& g, VertexSet r, VertexSet p, VertexSet x,
                   std::vector<VertexSet>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    // Pivot: vertex of p|x with most neighbors in p.
    int pivot = -1, best = -1;
    (p | x).for_each([&](int u) {
        int d = (g.row(u) & p).count();
        if (d > best) {
            best = d;
            pivot = u;
        }
    });
    VertexSet candidates = p.minus(g.row(pivot));
    candidates.for_each([&](int v) {
        VertexSet r2 = r;
        r2.set(v);
        bron_kerbosch(g, r2, p & g.row(v), x & g.row(v), out);
        p.reset(v);
        x.set(v);
    });
}

} // namespace

std::vector<VertexSet> maximal_cliques(const Graph& g) {
    std::vector<VertexSet> out;
    if (g.n() == 0) return out;
    bron_kerbosch(g, VertexSet(g.n()), VertexSet::full(g.n()), VertexSet(g.n()), out);
    return out;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph net_graph() {
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(0, 3);
    g.add_edge(1, 4);
    g.add_edge(2, 5);
    return g;
}

Graph chair_graph() {
    Graph g = path_graph(4); // 0-1-2-3
    Graph h(5);
    for (auto [u, v] : g.edges()) h.add_edge(u, v);
    h.add_edge(1, 4);
    return h;
}

Graph bull_graph() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(0, 3);
    g.add_edge(1, 4);
    return g;
}

bool isomorphic_small(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    const int n = a.n();
    if (n > 8) throw std::invalid_argument("isomorphic_small: n > 8");
    // Degree multisets must match.
    std::vector<int> da(n), db(n);
    for (int i = 0; i < n; ++i) {
        da[i] = a.degree(i);
        db[i] = b.degree(i);
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if (a.adjacent(u, v) != b.adjacent(perm[u], perm[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace p4c
