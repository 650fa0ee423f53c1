#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "p4c/coloring.hpp"
#include "p4c/decomposition.hpp"
#include "p4c/graph.hpp"

namespace p4c {

enum class GraphFormat { Auto, EdgeList, Dimacs, Json };

// Parse a graph from text.  Formats:
//   EdgeList: one "u v" pair per line, 0-based; '#' comments; n = max index + 1,
//             unless a first line "n <count>" fixes it.
//   Dimacs:   "c" comments, "p edge <n> <m>", "e <u> <v>" 1-based; m must match.
//   Json:     {"n": int, "edges": [[u,v],...], "labels": [str,...]?}, 0-based.
// Auto sniffs: '{' -> Json, a "p edge" line -> Dimacs, else EdgeList.
// Throws ParseError (with 1-based line numbers for text formats).
Graph parse_graph(const std::string& text, GraphFormat format = GraphFormat::Auto);

std::optional<GraphFormat> format_from_name(const std::string& name);

// JSON emitters.  All use ordered keys so output is byte-stable.
nlohmann::ordered_json graph_json(const Graph& g);
nlohmann::ordered_json coloring_json(const Graph& g, const Coloring& c,
                                     ColoringFamily f);
nlohmann::ordered_json result_json(const Graph& g, const ChromaticResult& r,
                                   ColoringFamily f);
nlohmann::ordered_json tree_json(const DecompositionTree& t);
nlohmann::ordered_json rejection_json(const Rejection& r);

// GraphViz rendering of a decomposition tree.
std::string tree_dot(const DecompositionTree& t);

} // namespace p4c
