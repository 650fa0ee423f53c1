#include "p4c/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "p4c/errors.hpp"

namespace p4c {

// ===========================================================================
// Exhaustive chromatic oracle
// ===========================================================================

namespace {

// Shared state for restricted-growth-string enumeration of vertex partitions.
// Colors are assigned to vertices 0..n-1 with c[0] = 0 and
// c[i] <= 1 + max(c[0..i-1]), so each partition appears exactly once.
struct PartitionEnum {
    const Graph& g;
    bool prune_proper;                  // skip branches with a monochromatic edge
    std::uint64_t budget;
    std::uint64_t explored = 0;
    std::vector<int> colors;

    explicit PartitionEnum(const Graph& g_, bool prune_proper_, std::uint64_t budget_)
        : g(g_), prune_proper(prune_proper_), budget(budget_), colors(g_.n(), -1) {}

    bool color_clashes(int v, int color) const {
        bool clash = false;
        g.row(v).for_each([&](int u) {
            if (u < v && colors[u] == color) clash = true;
        });
        return clash;
    }

    void spend() {
        if (++explored > budget)
            throw BudgetError("oracle: partition enumeration budget exceeded");
    }
};

// Enumerate partitions with exactly k blocks; leaf(colors) returns true to
// accept (stopping the search).
template <typename Leaf>
bool enumerate_exactly_k(PartitionEnum& st, int k, const Leaf& leaf) {
    const int n = st.g.n();
    auto dfs = [&](auto&& self, int i, int used) -> bool {
        st.spend();
        if (i == n) return used == k && leaf(st.colors);
        // Not enough vertices left to open the remaining blocks.
        if (k - used > n - i) return false;
        int top = std::min(used, k - 1); // may reuse an open block or open block `used`
        for (int color = 0; color <= top; ++color) {
            if (st.prune_proper && st.color_clashes(i, color)) continue;
            st.colors[i] = color;
            if (self(self, i + 1, std::max(used, color + 1))) return true;
        }
        st.colors[i] = -1;
        return false;
    };
    return dfs(dfs, 0, 0);
}

// Leaf test for the clique family against a precomputed maximal clique list.
bool clique_leaf_ok(const std::vector<std::vector<int>>& cliques,
                    const std::vector<int>& colors) {
    for (const auto& cl : cliques) {
        bool mono = true;
        for (size_t i = 1; i < cl.size() && mono; ++i)
            if (colors[cl[i]] != colors[cl[0]]) mono = false;
        if (mono) return false;
    }
    return true;
}

} // namespace

ChromaticResult exact_chromatic(const Graph& g, ColoringFamily f,
                                const OracleBudget& budget) {
    ChromaticResult result;
    if (f == ColoringFamily::Harmonious && !is_connected(g))
        throw DisconnectedError("harmonious number undefined here: graph is disconnected");
    if (g.n() == 0) {
        result.trace.push_back({-1, "oracle", 0, "", std::nullopt});
        return result;
    }
    if (g.n() > budget.limit_for(f))
        throw BudgetError("oracle: graph exceeds the vertex budget for " + family_name(f));

    std::vector<std::vector<int>> cliques;
    if (f == ColoringFamily::Clique) {
        for (const auto& cl : maximal_cliques(g)) {
            auto vs = cl.to_vector();
            if (vs.size() >= 2) cliques.push_back(std::move(vs));
        }
    }
    ValidatorOptions vopts;

    PartitionEnum st(g, f != ColoringFamily::Clique, budget.max_partitions);
    for (int k = 1; k <= g.n(); ++k) {
        bool found = enumerate_exactly_k(st, k, [&](const std::vector<int>& colors) {
            Coloring c{k, colors};
            if (f == ColoringFamily::Clique) return clique_leaf_ok(cliques, colors);
            return is_valid(g, c, f, vopts);
        });
        if (found) {
            result.value = k;
            result.witness = Coloring{k, st.colors};
            result.trace.push_back({-1, "oracle", k, family_name(f), std::nullopt});
            if (!is_valid(g, result.witness, f, vopts))
                throw std::logic_error("oracle: accepted coloring fails its validator");
            return result;
        }
    }
    throw std::logic_error("oracle: no valid coloring found (unreachable)");
}

void family_colorings(const Graph& g, ColoringFamily f, int max_colors,
                      const std::function<bool(const Coloring&)>& visit,
                      const std::optional<VertexSet>& distinct,
                      const OracleBudget& budget) {
    const int n = g.n();
    if (n == 0) return;
    if (f == ColoringFamily::Harmonious && !is_connected(g))
        throw DisconnectedError("harmonious colorings undefined here: graph is disconnected");
    if (n > budget.limit_for(f))
        throw BudgetError("oracle: graph exceeds the vertex budget for " + family_name(f));
    if (max_colors <= 0) return;

    std::vector<std::vector<int>> cliques;
    if (f == ColoringFamily::Clique) {
        for (const auto& cl : maximal_cliques(g)) {
            auto vs = cl.to_vector();
            if (vs.size() >= 2) cliques.push_back(std::move(vs));
        }
    }
    ValidatorOptions vopts;

    PartitionEnum st(g, f != ColoringFamily::Clique, budget.max_partitions);
    auto dfs = [&](auto&& self, int i, int used) -> bool { // false = stop everything
        st.spend();
        if (i == n) {
            Coloring c{used, st.colors};
            bool ok = f == ColoringFamily::Clique ? clique_leaf_ok(cliques, st.colors)
                                                  : is_valid(g, c, f, vopts);
            if (!ok) return true;
            return visit(c);
        }
        int top = std::min(used, max_colors - 1);
        for (int color = 0; color <= top; ++color) {
            if (st.prune_proper && st.color_clashes(i, color)) continue;
            if (distinct && distinct->test(i)) {
                bool taken = false;
                distinct->for_each([&](int u) {
                    if (u < i && st.colors[u] == color) taken = true;
                });
                if (taken) continue;
            }
            st.colors[i] = color;
            if (!self(self, i + 1, std::max(used, color + 1))) return false;
        }
        st.colors[i] = -1;
        return true;
    };
    dfs(dfs, 0, 0);
}

// ===========================================================================
// Random class-member generation
// ===========================================================================

namespace {

enum class PieceOp { LeafK1, LeafP5, LeafP5Bar, LeafC5, Union, Join, Spider, Quasi, Separable };

struct Recipe {
    PieceOp op = PieceOp::LeafK1;
    int size = 1;
    std::vector<Recipe> children; // union/join pieces, or the single R / G-H piece

    // Spider / Quasi fields.
    Thickness thickness = Thickness::Thin;
    int k = 2;
    bool pair_in_clique = false;
    bool pair_adjacent = false;

    // Separable H body: an exact spider with empty head, or (doubled) a path
    // a-m1-m2-b with both of its end legs doubled — six vertices whose
    // separation is not any spider partition, so the tree keeps it separable.
    Thickness h_thickness = Thickness::Thin;
    int h_k = 2;            // |H| = 2 * h_k
    bool h_doubled = false; // |H| = 6, midpoints {m1, m2} form H1
};

struct GenContext {
    const GeneratorSpec& spec;
    std::mt19937_64 rng;

    int rand_int(int lo, int hi) { // inclusive
        return int(std::uniform_int_distribution<int>(lo, hi)(rng));
    }
    bool coin() { return rand_int(0, 1) == 1; }

    bool allow_spiders() const { return spec.target != TargetClass::Cograph; }
    bool allow_quasi() const {
        return spec.target == TargetClass::P4Tidy || spec.target == TargetClass::QQ4;
    }
    bool allow_separable() const {
        return spec.target == TargetClass::P4Tidy || spec.target == TargetClass::QQ4;
    }
    bool allow_small5() const {
        if (spec.target == TargetClass::P4Tidy) return true;
        return spec.target == TargetClass::QQ4 && spec.q >= 6; // P5 and its complement
    }
    bool allow_c5() const {
        return spec.target == TargetClass::P4Tidy ||
               (spec.target == TargetClass::QQ4 && spec.q >= 9);
    }
    bool allow_k3_spider() const {
        if (spec.target == TargetClass::QQ4) return spec.q >= 7;
        return allow_spiders();
    }
    // The doubled body carries four P4s on six vertices, and each of its P4s
    // has two partners, so it fits the q-parameterized classes from q = 8 up
    // and never the tidy class.
    bool allow_doubled_separable() const {
        return spec.target == TargetClass::QQ4 && spec.q >= 8;
    }

    // Recipe over complement-reducible pieces only (no induced P4s).
    Recipe gen_cograph(int budget, bool root) {
        Recipe r;
        r.size = budget;
        if (budget == 1) return r;
        bool allow_union = !(root && spec.require_connected);
        r.op = allow_union && coin() ? PieceOp::Union : PieceOp::Join;
        int cut = rand_int(1, budget - 1);
        r.children.push_back(gen_cograph(cut, false));
        r.children.push_back(gen_cograph(budget - cut, false));
        return r;
    }

    Recipe gen(int budget, bool root) {
        Recipe r;
        r.size = budget;
        if (budget == 1) return r; // LeafK1

        struct Option {
            PieceOp op;
            int weight;
        };
        std::vector<Option> options;
        const GeneratorWeights& w = spec.weights;
        if (!(root && spec.require_connected) && w.union_op > 0)
            options.push_back({PieceOp::Union, w.union_op});
        if (w.join_op > 0) options.push_back({PieceOp::Join, w.join_op});
        if (budget == 5 && allow_small5() && w.small_leaf > 0) {
            options.push_back({PieceOp::LeafP5, w.small_leaf});
            options.push_back({PieceOp::LeafP5Bar, w.small_leaf});
            if (allow_c5()) options.push_back({PieceOp::LeafC5, w.small_leaf});
        }
        // Spider: k=2 needs a head (the headless k=2 body is an indivisible
        // small piece), so budget >= 5; k=3 fits budget >= 6.
        if (allow_spiders() && w.spider_op > 0 &&
            (budget >= 5 || (budget >= 6 && allow_k3_spider())))
            options.push_back({PieceOp::Spider, w.spider_op});
        if (allow_quasi() && w.quasi_spider_op > 0 && budget >= 6)
            options.push_back({PieceOp::Quasi, w.quasi_spider_op});
        if (allow_separable() && w.separable_op > 0 && budget >= 5)
            options.push_back({PieceOp::Separable, w.separable_op});
        if (options.empty()) options.push_back({PieceOp::Join, 1});

        int total = 0;
        for (const auto& o : options) total += o.weight;
        int pick = rand_int(1, total);
        PieceOp op = options.back().op;
        for (const auto& o : options) {
            pick -= o.weight;
            if (pick <= 0) {
                op = o.op;
                break;
            }
        }
        r.op = op;

        switch (op) {
            case PieceOp::LeafP5:
            case PieceOp::LeafP5Bar:
            case PieceOp::LeafC5:
                break;
            case PieceOp::Union:
            case PieceOp::Join: {
                int cut = rand_int(1, budget - 1);
                r.children.push_back(gen(cut, false));
                r.children.push_back(gen(budget - cut, false));
                break;
            }
            case PieceOp::Spider: {
                std::vector<int> ks;
                if (budget >= 5) ks.push_back(2);
                if (budget >= 6 && allow_k3_spider()) ks.push_back(3);
                r.k = ks[size_t(rand_int(0, int(ks.size()) - 1))];
                r.thickness = (r.k >= 3 && coin()) ? Thickness::Thick : Thickness::Thin;
                int head = budget - 2 * r.k;
                if (head > 0) r.children.push_back(gen(head, false));
                break;
            }
            case PieceOp::Quasi: {
                // size = 2k + 1 + head; k=2 keeps a nonempty head so the
                // piece is never a headless k=2 shape.
                std::vector<int> ks;
                if (budget >= 6) ks.push_back(2);
                if (budget >= 7 && allow_k3_spider()) ks.push_back(3);
                r.k = ks[size_t(rand_int(0, int(ks.size()) - 1))];
                r.thickness = (r.k >= 3 && coin()) ? Thickness::Thick : Thickness::Thin;
                r.pair_in_clique = coin();
                r.pair_adjacent = coin();
                int head = budget - 2 * r.k - 1;
                if (head > 0) r.children.push_back(gen(head, false));
                break;
            }
            case PieceOp::Separable: {
                struct Body {
                    Thickness th;
                    int k;
                    bool doubled;
                };
                std::vector<Body> bodies = {{Thickness::Thin, 2, false}};
                if (budget >= 7 && allow_k3_spider()) {
                    bodies.push_back({Thickness::Thin, 3, false});
                    bodies.push_back({Thickness::Thick, 3, false});
                }
                if (budget >= 7 && allow_doubled_separable())
                    bodies.push_back({Thickness::Thin, 3, true});
                auto body = bodies[size_t(rand_int(0, int(bodies.size()) - 1))];
                r.h_thickness = body.th;
                r.h_k = body.k;
                r.h_doubled = body.doubled;
                int h_size = body.doubled ? 6 : 2 * r.h_k;
                // The doubled body's membership margin is exactly used up by
                // its own P4s; keep the absorbed rest free of induced P4s.
                r.children.push_back(body.doubled ? gen_cograph(budget - h_size, false)
                                                  : gen(budget - h_size, false));
                break;
            }
            case PieceOp::LeafK1:
                break;
        }
        return r;
    }
};

struct Materializer {
    Graph graph;
    DecompositionTree tree;

    VertexSet range_set(int start, int size) const {
        VertexSet s(graph.n());
        for (int i = 0; i < size; ++i) s.set(start + i);
        return s;
    }

    int add_node(DecompositionNode node) {
        tree.nodes.push_back(std::move(node));
        return int(tree.nodes.size()) - 1;
    }

    // Spider-shaped edges over explicit unit vertex lists.
    void emit_spider_edges(const std::vector<std::vector<int>>& cu,
                           const std::vector<std::vector<int>>& su, Thickness th,
                           const std::vector<int>& head,
                           const std::optional<SpiderPartition::Replacement>& rep) {
        const int k = int(cu.size());
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                for (int a : cu[i])
                    for (int b : cu[j]) graph.add_edge(a, b);
        if (rep && rep->adjacent_pair) graph.add_edge(rep->pair[0], rep->pair[1]);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                bool want = th == Thickness::Thin ? i == j : i != j;
                if (!want) continue;
                for (int a : su[i])
                    for (int b : cu[j]) graph.add_edge(a, b);
            }
        for (int h : head)
            for (const auto& unit : cu)
                for (int c : unit) graph.add_edge(h, c);
    }

    // Returns the tree node id for the piece occupying [start, start+size).
    int build(const Recipe& r, int start) {
        DecompositionNode node;
        node.vertices = range_set(start, r.size);
        switch (r.op) {
            case PieceOp::LeafK1:
                node.type = NodeType::Leaf;
                node.leaf_reason = LeafReason::K1;
                return add_node(std::move(node));
            case PieceOp::LeafP5:
            case PieceOp::LeafC5: {
                for (int i = 0; i + 1 < 5; ++i) graph.add_edge(start + i, start + i + 1);
                if (r.op == PieceOp::LeafC5) graph.add_edge(start + 4, start);
                node.type = NodeType::Leaf;
                node.leaf_reason = r.op == PieceOp::LeafC5 ? LeafReason::C5 : LeafReason::P5;
                return add_node(std::move(node));
            }
            case PieceOp::LeafP5Bar: {
                Graph p5bar = complement(path_graph(5));
                for (auto [u, v] : p5bar.edges()) graph.add_edge(start + u, start + v);
                node.type = NodeType::Leaf;
                node.leaf_reason = LeafReason::P5Bar;
                return add_node(std::move(node));
            }
            case PieceOp::Union:
            case PieceOp::Join: {
                node.type = r.op == PieceOp::Union ? NodeType::Union : NodeType::Join;
                int at = start;
                std::vector<std::pair<int, int>> spans;
                for (const Recipe& child : r.children) {
                    node.children.push_back(build(child, at));
                    spans.emplace_back(at, child.size);
                    at += child.size;
                }
                if (r.op == PieceOp::Join)
                    for (size_t a = 0; a < spans.size(); ++a)
                        for (size_t b = a + 1; b < spans.size(); ++b)
                            for (int u = spans[a].first; u < spans[a].first + spans[a].second; ++u)
                                for (int v = spans[b].first; v < spans[b].first + spans[b].second; ++v)
                                    graph.add_edge(u, v);
                return add_node(std::move(node));
            }
            case PieceOp::Spider:
            case PieceOp::Quasi: {
                SpiderPartition sp;
                sp.thickness = r.thickness;
                int at = start;
                std::vector<std::vector<int>> cu, su;
                for (int i = 0; i < r.k; ++i) cu.push_back({at++});
                for (int i = 0; i < r.k; ++i) su.push_back({at++});
                if (r.op == PieceOp::Quasi) {
                    // Grow unit 0 on the chosen side by the extra vertex.
                    auto& unit = r.pair_in_clique ? cu[0] : su[0];
                    sp.replacement = SpiderPartition::Replacement{
                        r.pair_in_clique, r.pair_adjacent, {unit[0], at}};
                    unit.push_back(at++);
                }
                std::vector<int> head;
                for (int i = at; i < start + r.size; ++i) head.push_back(i);
                emit_spider_edges(cu, su, r.thickness, head, sp.replacement);

                sp.head = VertexSet(graph.n());
                for (int h : head) sp.head.set(h);
                sp.clique = VertexSet(graph.n());
                sp.stable = VertexSet(graph.n());
                for (const auto& u : cu)
                    for (int v : u) sp.clique.set(v);
                for (const auto& u : su)
                    for (int v : u) sp.stable.set(v);
                sp.clique_units = cu;
                sp.stable_units = su;

                if (!r.children.empty()) node.children.push_back(build(r.children[0], at));
                node.type = r.op == PieceOp::Quasi ? NodeType::QuasiSpider : NodeType::Spider;
                node.spider = std::move(sp);
                return add_node(std::move(node));
            }
            case PieceOp::Separable: {
                // H = either a headless spider body (H1 = clique side) or the
                // doubled path body; H1 is joined to every vertex of G-H.
                int at = start;
                DecompositionNode::SeparablePart part;
                part.h1 = VertexSet(graph.n());
                part.h2 = VertexSet(graph.n());
                if (r.h_doubled) {
                    int a1 = at++, a2 = at++, m1 = at++, m2 = at++, b1 = at++, b2 = at++;
                    graph.add_edge(a1, m1);
                    graph.add_edge(a2, m1);
                    graph.add_edge(m1, m2);
                    graph.add_edge(m2, b1);
                    graph.add_edge(m2, b2);
                    part.h = range_set(start, 6);
                    part.h1.set(m1);
                    part.h1.set(m2);
                    for (int v : {a1, a2, b1, b2}) part.h2.set(v);
                } else {
                    std::vector<std::vector<int>> cu, su;
                    for (int i = 0; i < r.h_k; ++i) cu.push_back({at++});
                    for (int i = 0; i < r.h_k; ++i) su.push_back({at++});
                    emit_spider_edges(cu, su, r.h_thickness, {}, std::nullopt);
                    part.h = range_set(start, 2 * r.h_k);
                    for (const auto& u : cu)
                        for (int v : u) part.h1.set(v);
                    for (const auto& u : su)
                        for (int v : u) part.h2.set(v);
                }

                int rest_start = at;
                node.children.push_back(build(r.children[0], rest_start));
                for (int v = rest_start; v < start + r.size; ++v)
                    part.h1.for_each([&](int h1) { graph.add_edge(v, h1); });

                node.type = NodeType::Separable;
                node.separable = std::move(part);
                return add_node(std::move(node));
            }
        }
        return -1; // unreachable
    }
};

bool member_of_target(const Graph& g, const GeneratorSpec& spec) {
    switch (spec.target) {
        case TargetClass::Cograph: return enumerate_p4s(g).empty();
        case TargetClass::P4Sparse: return is_qq4(g, 5);
        case TargetClass::QQ4: return is_qq4(g, spec.q);
        case TargetClass::P4Tidy: return is_p4_tidy(g);
    }
    return false;
}

} // namespace

GeneratedInstance generate(const GeneratorSpec& spec) {
    if (spec.n_min < 1 || spec.n_max < spec.n_min)
        throw std::invalid_argument("generate: bad size bounds");
    GenContext ctx{spec, std::mt19937_64(spec.seed)};
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int n = ctx.rand_int(spec.n_min, spec.n_max);
        Recipe recipe = ctx.gen(n, true);
        Materializer mat;
        mat.graph = Graph(n);
        mat.tree.root = mat.build(recipe, 0);
        if (spec.require_connected && !is_connected(mat.graph)) continue;
        if (!member_of_target(mat.graph, spec)) continue;
        return GeneratedInstance{std::move(mat.graph), std::move(mat.tree)};
    }
    throw std::logic_error("generate: rejection sampling failed to produce a member");
}

} // namespace p4c
