#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "p4c/graph.hpp"

namespace p4c {

// ---------------------------------------------------------------------------
// Target graph classes
// ---------------------------------------------------------------------------

// Few-P4s graphs parameterized by q: every induced subgraph on at most q
// vertices contains at most q-4 induced P4s.
struct QQ4Mode {
    int q = 4;
};

// Tidy graphs: every induced P4 has at most one partner (a vertex that forms
// another P4 with three of its vertices).
struct P4TidyMode {};

using Mode = std::variant<QQ4Mode, P4TidyMode>;

// ---------------------------------------------------------------------------
// Membership tests and violation witnesses
// ---------------------------------------------------------------------------

// Definitional membership test for the q-parameterized class.
bool is_qq4(const Graph& g, int q);

struct QQ4Violation {
    VertexSet vertices; // a set of <= q vertices inducing > q-4 P4s
    int p4_count = 0;
    int q = 0;
};

// A witness subset when g is not in the class, std::nullopt when it is.
std::optional<QQ4Violation> qq4_violation(const Graph& g, int q);

// Smallest q >= 4 for which g is a member (every graph is a member for some q).
int compute_q(const Graph& g);

bool is_p4_tidy(const Graph& g);

struct TidyViolation {
    std::array<int, 4> p4{};     // a P4 with two or more partners
    std::vector<int> partners;   // two distinct partner vertices
};

std::optional<TidyViolation> tidy_violation(const Graph& g);

// ---------------------------------------------------------------------------
// Structure discovery
// ---------------------------------------------------------------------------

// Partition of V into p-components: the classes of the transitive closure of
// "lie on a common induced P4".  Vertices on no P4 are singleton classes.
std::vector<VertexSet> p_components(const Graph& g);

// A graph is p-connected if it has at least 2 vertices and every proper
// bipartition of V has a crossing P4.  (Equivalently: one p-component = V.)
bool is_p_connected(const Graph& g);

// All maximal homogeneous sets (proper modules M with 2 <= |M| < n that are
// not contained in a larger one and overlap no other module).
std::vector<VertexSet> homogeneous_sets(const Graph& g);

// Partition of V into maximal strong proper modules (the homogeneous sets
// above plus singletons for uncovered vertices); this is the partition
// underlying the characteristic graph.
std::vector<VertexSet> strong_module_partition(const Graph& g);

struct CharacteristicGraph {
    Graph graph;                  // quotient on the partition classes
    std::vector<VertexSet> parts; // class i of the partition = vertex i of graph
};

CharacteristicGraph characteristic_graph(const Graph& g);

// Split partition (K clique, S stable) of g if one exists.
std::optional<std::pair<VertexSet, VertexSet>> split_partition(const Graph& g);

// Separations of a p-connected graph: bipartitions (H1, H2) such that every
// crossing P4 has both midpoints in H1 and both endpoints in H2.  Several can
// exist when a module sits in no crossing P4.  Throws std::invalid_argument
// if g is not p-connected.
std::vector<std::pair<VertexSet, VertexSet>> separable_bipartitions(const Graph& g);

// First separation per separable_bipartitions, if any.
std::optional<std::pair<VertexSet, VertexSet>> separable_bipartition(const Graph& g);

// ---------------------------------------------------------------------------
// Spiders
// ---------------------------------------------------------------------------

enum class Thickness { Thin, Thick };

// A spider partition (R, C, S): C a clique, S a stable set, |C| = |S| = k >= 2,
// R (possibly empty) completely joined to C and non-adjacent to S, and the
// C-S edges form a perfect matching (thin) or its bipartite complement
// (thick).  k = 2 is reported as Thin (the two cases coincide there).
//
// In a quasi-spider one vertex of C or S is replaced by a pair inducing K2 or
// its complement; `replacement` records that pair.  clique_units/stable_units
// list the legs in matched order: unit i of the clique side corresponds to
// unit i of the stable side.  Units are singletons except the replaced one.
struct SpiderPartition {
    VertexSet head;   // R
    VertexSet clique; // C (all vertices, including a replaced pair)
    VertexSet stable; // S
    Thickness thickness = Thickness::Thin;

    struct Replacement {
        bool in_clique = false;   // pair sits on the clique side
        bool adjacent_pair = false; // pair induces an edge (K2) rather than a non-edge
        std::array<int, 2> pair{};
    };
    std::optional<Replacement> replacement;

    std::vector<std::vector<int>> clique_units;
    std::vector<std::vector<int>> stable_units;

    int k() const { return int(stable_units.size()); } // = min(|C|,|S|) for quasi
};

// Recognize an exact spider (no replaced pair).
std::optional<SpiderPartition> recognize_spider(const Graph& g);

// Recognize a spider or quasi-spider; exact spiders come back with
// replacement == nullopt.
std::optional<SpiderPartition> recognize_quasi_spider(const Graph& g);

// Verify a claimed partition against the definition.
bool check_spider_partition(const Graph& g, const SpiderPartition& sp);

// ---------------------------------------------------------------------------
// Decomposition tree
// ---------------------------------------------------------------------------

enum class NodeType { Union, Join, Spider, QuasiSpider, Separable, Leaf };

// Why a node is a leaf rather than decomposed further.  P5/P5Bar/C5 tag
// leaves isomorphic to those graphs; SmallQ covers every other indivisible
// piece (small p-connected subgraphs, including all k = 2 spider shapes,
// which are solved exactly rather than by formula).
enum class LeafReason { Empty, K1, P5, P5Bar, C5, SmallQ };

struct DecompositionNode {
    NodeType type = NodeType::Leaf;
    VertexSet vertices;             // vertex set in the root graph's numbering
    std::vector<int> children;      // indices into DecompositionTree::nodes

    // Spider / QuasiSpider payload: partition in root numbering; children[0]
    // (if present) is the head subtree.
    std::optional<SpiderPartition> spider;

    // Separable payload: H with its bipartition, in root numbering;
    // children[0] is the G-H subtree.
    struct SeparablePart {
        VertexSet h;
        VertexSet h1; // midpoint side; joined to all of G-H
        VertexSet h2; // endpoint side; anticomplete to G-H
    };
    std::optional<SeparablePart> separable;

    std::optional<LeafReason> leaf_reason;
};

struct DecompositionTree {
    std::vector<DecompositionNode> nodes;
    int root = -1;
    const DecompositionNode& at(int i) const { return nodes[i]; }
};

struct QQ4Rejection {
    QQ4Violation violation;
};
struct TidyRejection {
    TidyViolation violation;
};
using Rejection = std::variant<QQ4Rejection, TidyRejection>;

struct BuildResult {
    std::optional<DecompositionTree> tree;   // set iff member
    std::optional<Rejection> rejection;      // set iff not a member
};

// Verify membership (definitional test), then build the decomposition tree.
BuildResult build_tree(const Graph& g, const Mode& mode);

// Rebuild the subgraph a node represents from its payload (children composed
// by the node's operation).  Used to check trees independently of the graph.
Graph reassemble(const DecompositionTree& t, int node, const Graph& root_graph);

} // namespace p4c
