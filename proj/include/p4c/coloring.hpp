#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p4c/graph.hpp"

namespace p4c {

// A coloring assigns colors 0..k-1 to the vertices of a graph.
struct Coloring {
    int k = 0;
    std::vector<int> colors;
};

enum class ColoringFamily {
    Proper,
    Acyclic,
    Star,
    Nonrepetitive,
    Harmonious,
    Clique,
};

// Canonical CLI/JSON name of a family ("thue" for Nonrepetitive).
std::string family_name(ColoringFamily f);
std::optional<ColoringFamily> family_from_name(const std::string& name);

struct ValidatorOptions {
    // The nonrepetitive check enumerates color-matched path pairs; beyond
    // this size it throws BudgetError instead of running hot.
    int nonrepetitive_max_vertices = 14;
};

// Each validator checks that `c` assigns a color in [0, c.k) to every vertex
// and that the family constraint holds.  They do not require c.k colors to
// all be used.  is_nonrepetitive_coloring throws BudgetError beyond its size
// guard; is_harmonious_coloring throws DisconnectedError on disconnected
// graphs (the harmonious family is only handled for connected inputs).
bool is_proper(const Graph& g, const Coloring& c);
bool is_acyclic_coloring(const Graph& g, const Coloring& c);
bool is_star_coloring(const Graph& g, const Coloring& c);
bool is_nonrepetitive_coloring(const Graph& g, const Coloring& c,
                               const ValidatorOptions& opts = {});
bool is_harmonious_coloring(const Graph& g, const Coloring& c);
bool is_clique_coloring(const Graph& g, const Coloring& c);

bool is_valid(const Graph& g, const Coloring& c, ColoringFamily f,
              const ValidatorOptions& opts = {});

// One step in the derivation of a chromatic number: which decomposition node
// produced a contribution, by which rule, and with what value.
struct TraceEntry {
    int node = -1;              // decomposition node id, -1 for whole-graph oracle
    std::string rule;           // e.g. "union", "join", "spider-thin", "oracle", "fallback"
    int value = 0;              // the value this node contributed / resolved to
    std::string note;           // free-form detail (fallback reasons, parameters)
    std::optional<int> alt_value; // alternative closed-form value where one exists
};

struct ChromaticResult {
    int value = 0;
    Coloring witness;
    std::vector<TraceEntry> trace;
};

} // namespace p4c
