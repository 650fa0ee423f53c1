#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "p4c/coloring.hpp"
#include "p4c/decomposition.hpp"
#include "p4c/graph.hpp"

namespace p4c {

// ---------------------------------------------------------------------------
// Exhaustive chromatic-number oracle
// ---------------------------------------------------------------------------

struct OracleBudget {
    int max_vertices = 14;       // hard cap for most families
    int max_vertices_hard = 12;  // cap for the nonrepetitive and harmonious families
    std::uint64_t max_partitions = 250'000'000; // cap on partitions examined

    int limit_for(ColoringFamily f) const {
        return (f == ColoringFamily::Nonrepetitive || f == ColoringFamily::Harmonious)
                   ? max_vertices_hard
                   : max_vertices;
    }
};

// Minimum number of colors of any valid coloring of family f, found by
// enumerating set partitions by ascending block count.  Throws BudgetError
// when g exceeds the budget, DisconnectedError for Harmonious on a
// disconnected graph.  trace = [{-1, "oracle", value}].
ChromaticResult exact_chromatic(const Graph& g, ColoringFamily f,
                                const OracleBudget& budget = {});

// Visit every valid coloring of family f with at most max_colors colors
// (canonical form: restricted growth strings).  Visitor returns false to stop.
// When distinct != nullopt, only colorings giving the vertices in *distinct
// pairwise different colors are visited.
void family_colorings(const Graph& g, ColoringFamily f, int max_colors,
                      const std::function<bool(const Coloring&)>& visit,
                      const std::optional<VertexSet>& distinct = std::nullopt,
                      const OracleBudget& budget = {});

// ---------------------------------------------------------------------------
// Random instance generation
// ---------------------------------------------------------------------------

enum class TargetClass { Cograph, P4Sparse, QQ4, P4Tidy };

struct GeneratorWeights {
    int union_op = 3;
    int join_op = 3;
    int spider_op = 2;
    int quasi_spider_op = 1;
    int separable_op = 1;
    int small_leaf = 1; // indivisible leaf pieces (K1 and, class permitting, P5/P5bar/C5)
};

struct GeneratorSpec {
    TargetClass target = TargetClass::P4Tidy;
    int q = 7; // only used for TargetClass::QQ4
    int n_min = 4;
    int n_max = 10;
    std::uint64_t seed = 1;
    GeneratorWeights weights;
    bool require_connected = false;
};

struct GeneratedInstance {
    Graph graph;
    DecompositionTree tree; // ground-truth tree built during generation
};

// Build a random member of the target class by composing operations, then
// verify membership definitionally (rejection sampling: composition may fall
// outside the class, such instances are discarded and retried).
GeneratedInstance generate(const GeneratorSpec& spec);

} // namespace p4c
