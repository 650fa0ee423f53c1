#include "p4c/coloring.hpp"

#include <map>
#include <set>

#include "p4c/errors.hpp"

namespace p4c {

std::string family_name(ColoringFamily f) {
    switch (f) {
        case ColoringFamily::Proper: return "proper";
        case ColoringFamily::Acyclic: return "acyclic";
        case ColoringFamily::Star: return "star";
        case ColoringFamily::Nonrepetitive: return "thue";
        case ColoringFamily::Harmonious: return "harmonious";
        case ColoringFamily::Clique: return "clique";
    }
    return "?";
}

std::optional<ColoringFamily> family_from_name(const std::string& name) {
    if (name == "proper") return ColoringFamily::Proper;
    if (name == "acyclic") return ColoringFamily::Acyclic;
    if (name == "star") return ColoringFamily::Star;
    if (name == "thue" || name == "nonrepetitive") return ColoringFamily::Nonrepetitive;
    if (name == "harmonious") return ColoringFamily::Harmonious;
    if (name == "clique") return ColoringFamily::Clique;
    return std::nullopt;
}

namespace {

bool well_formed(const Graph& g, const Coloring& c) {
    if (int(c.colors.size()) != g.n()) return false;
    for (int col : c.colors)
        if (col < 0 || col >= c.k) return false;
    return true;
}

// Vertices with either of the two colors.
VertexSet color_pair_set(const Graph& g, const Coloring& c, int a, int b) {
    VertexSet s(g.n());
    for (int v = 0; v < g.n(); ++v)
        if (c.colors[v] == a || c.colors[v] == b) s.set(v);
    return s;
}

// The subgraph induced by s has a cycle?
bool has_cycle_within(const Graph& g, const VertexSet& s) {
    // Count edges and vertices per connected piece: a forest has exactly
    // |V| - #components edges.
    int verts = s.count();
    int edges = 0;
    s.for_each([&](int u) { edges += (g.row(u) & s).count(); });
    edges /= 2;
    // Components of the induced subgraph.
    int comps = 0;
    VertexSet seen(g.n());
    s.for_each([&](int start) {
        if (seen.test(start)) return;
        ++comps;
        VertexSet comp(g.n());
        comp.set(start);
        VertexSet frontier = comp;
        while (frontier.any()) {
            VertexSet next(g.n());
            frontier.for_each([&](int v) { next |= g.row(v) & s; });
            frontier = next.minus(comp);
            comp |= frontier;
        }
        seen |= comp;
    });
    return edges > verts - comps;
}

// Every connected piece of the subgraph induced by s is a star (at most one
// vertex of degree >= 2 within the piece; this also excludes cycles).
bool is_star_forest_within(const Graph& g, const VertexSet& s) {
    VertexSet seen(g.n());
    bool ok = true;
    s.for_each([&](int start) {
        if (!ok || seen.test(start)) return;
        VertexSet comp(g.n());
        comp.set(start);
        VertexSet frontier = comp;
        while (frontier.any()) {
            VertexSet next(g.n());
            frontier.for_each([&](int v) { next |= g.row(v) & s; });
            frontier = next.minus(comp);
            comp |= frontier;
        }
        seen |= comp;
        int centers = 0;
        int edges = 0;
        comp.for_each([&](int v) {
            int d = (g.row(v) & comp).count();
            edges += d;
            if (d >= 2) ++centers;
        });
        edges /= 2;
        if (centers > 1 || edges > comp.count() - 1) ok = false;
    });
    return ok;
}

} // namespace

bool is_proper(const Graph& g, const Coloring& c) {
    if (!well_formed(g, c)) return false;
    for (auto [u, v] : g.edges())
        if (c.colors[u] == c.colors[v]) return false;
    return true;
}

bool is_acyclic_coloring(const Graph& g, const Coloring& c) {
    if (!is_proper(g, c)) return false;
    for (int a = 0; a < c.k; ++a)
        for (int b = a + 1; b < c.k; ++b)
            if (has_cycle_within(g, color_pair_set(g, c, a, b))) return false;
    return true;
}

bool is_star_coloring(const Graph& g, const Coloring& c) {
    if (!is_proper(g, c)) return false;
    for (int a = 0; a < c.k; ++a)
        for (int b = a + 1; b < c.k; ++b)
            if (!is_star_forest_within(g, color_pair_set(g, c, a, b))) return false;
    return true;
}

namespace {

// Search for a repetitively colored path: a path x_1..x_2t whose color
// sequence repeats (col(x_i) = col(x_{i+t})).  Grows the two halves in
// lockstep from their start vertices; the halves must stay vertex-disjoint
// and color-matched position by position, and a repetition closes when the
// first half's end is adjacent to the second half's start.
struct RepetitionSearch {
    const Graph& g;
    const Coloring& c;
    int q_start; // w_1: start vertex of the second half

    bool grow(int u_last, int w_last, VertexSet& used) {
        if (g.adjacent(u_last, q_start)) return true; // link edge closes a repetition
        bool found = false;
        g.row(u_last).minus(used).for_each([&](int u2) {
            if (found) return;
            VertexSet used2 = used;
            used2.set(u2);
            g.row(w_last).minus(used2).for_each([&](int w2) {
                if (found || c.colors[u2] != c.colors[w2]) return;
                used2.set(w2);
                if (grow(u2, w2, used2)) found = true;
                used2.reset(w2);
            });
        });
        return found;
    }
};

} // namespace

bool is_nonrepetitive_coloring(const Graph& g, const Coloring& c,
                               const ValidatorOptions& opts) {
    if (!well_formed(g, c)) return false;
    if (!is_proper(g, c)) return false; // length-2 repetitions
    if (g.n() > opts.nonrepetitive_max_vertices)
        throw BudgetError("nonrepetitive check beyond size budget (n=" +
                          std::to_string(g.n()) + ")");
    for (int a = 0; a < g.n(); ++a) {
        for (int b = 0; b < g.n(); ++b) {
            if (a == b || c.colors[a] != c.colors[b]) continue;
            VertexSet used(g.n());
            used.set(a);
            used.set(b);
            RepetitionSearch search{g, c, b};
            if (search.grow(a, b, used)) return false;
        }
    }
    return true;
}

bool is_harmonious_coloring(const Graph& g, const Coloring& c) {
    if (!is_connected(g))
        throw DisconnectedError("harmonious coloring requires a connected graph");
    if (!is_proper(g, c)) return false;
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges()) {
        int a = c.colors[u], b = c.colors[v];
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) return false;
    }
    return true;
}

bool is_clique_coloring(const Graph& g, const Coloring& c) {
    if (!well_formed(g, c)) return false;
    for (const VertexSet& q : maximal_cliques(g)) {
        if (q.count() < 2) continue;
        int first = q.first();
        bool mono = true;
        q.for_each([&](int v) {
            if (c.colors[v] != c.colors[first]) mono = false;
        });
        if (mono) return false;
    }
    return true;
}

bool is_valid(const Graph& g, const Coloring& c, ColoringFamily f,
              const ValidatorOptions& opts) {
    switch (f) {
        case ColoringFamily::Proper: return is_proper(g, c);
        case ColoringFamily::Acyclic: return is_acyclic_coloring(g, c);
        case ColoringFamily::Star: return is_star_coloring(g, c);
        case ColoringFamily::Nonrepetitive: return is_nonrepetitive_coloring(g, c, opts);
        case ColoringFamily::Harmonious: return is_harmonious_coloring(g, c);
        case ColoringFamily::Clique: return is_clique_coloring(g, c);
    }
    return false;
}

} // namespace p4c
