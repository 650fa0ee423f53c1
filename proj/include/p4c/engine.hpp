#pragma once

#include "p4c/coloring.hpp"
#include "p4c/decomposition.hpp"
#include "p4c/oracle.hpp"

namespace p4c {

struct SolveOptions {
    OracleBudget budget;
    // Leaf subgraphs above this size raise BudgetError instead of being
    // solved exhaustively.
    int max_component_size = 10;
    // Check every composition-rule witness with the validators; on failure,
    // re-solve that node exhaustively and record a fallback trace entry.
    bool validate_witnesses = true;
};

// ---------------------------------------------------------------------------
// Per-node composition rules
//
// All witnesses use the convention: colors.size() equals the root graph's
// vertex count, vertices outside the piece a result covers hold -1, covered
// vertices hold colors 0..k-1 (k = the result's value).
// ---------------------------------------------------------------------------

// Disjoint union: value = max of the children; components share one palette.
// Throws std::invalid_argument for the Harmonious family (not defined on
// disconnected graphs here).
ChromaticResult combine_union(ColoringFamily f, const ChromaticResult& left,
                              const ChromaticResult& right);

// Join of pieces with n1 and n2 vertices.  Acyclic/Star/Nonrepetitive:
// min{left + n2, right + n1}, keeping the cheaper side's structure and
// rainbowing the other side (ties keep the left).  Harmonious: n1 + n2, all
// distinct.  Clique: 2, constant on each side.
ChromaticResult combine_join(ColoringFamily f, const ChromaticResult& left,
                             const ChromaticResult& right, int n1, int n2);

// Spider with exact legs (no replaced pair).  inner_r is the result for the
// head R (value 0 with an empty witness when R is empty).
ChromaticResult spider_value(ColoringFamily f, const SpiderPartition& part,
                             const ChromaticResult& inner_r);

// Spider with one leg replaced by a pair (part.replacement present).
ChromaticResult quasi_spider_value(ColoringFamily f, const SpiderPartition& part,
                                   const ChromaticResult& inner_r);

// Separable piece: H (with bipartition comp.h1/comp.h2) absorbed by the rest.
// inner_gh is the result for G-H; its covered vertices define G-H.  h_graph
// is the subgraph induced on comp.h with vertices in ascending order.
// Enumerates family colorings of h_graph via the oracle.
ChromaticResult separable_value(ColoringFamily f,
                                const DecompositionNode::SeparablePart& comp,
                                const ChromaticResult& inner_gh, const Graph& h_graph,
                                const SolveOptions& opts = {});

// Compute the chromatic number of family f for a graph in the mode's class,
// by decomposition-tree rules with oracle leaves.  Throws RejectionError when
// g is not in the class, DisconnectedError for Harmonious on a disconnected
// graph, BudgetError when a leaf or validation exceeds the budget.
ChromaticResult solve(const Graph& g, ColoringFamily f, const Mode& mode,
                      const SolveOptions& opts = {});

// Same, over an already-built tree for g.
ChromaticResult solve_tree(const Graph& g, const DecompositionTree& tree,
                           ColoringFamily f, const SolveOptions& opts = {});

// Direct 2-clique-coloring of a connected member of the q-parameterized class
// on at least q vertices, built from the decomposition structure (an
// exhaustive solve is used only when the whole graph is an indivisible leaf).
Coloring two_clique_color(const Graph& g, int q);

} // namespace p4c
