#include "p4c/io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "p4c/errors.hpp"

namespace p4c {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

bool parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    try {
        out = std::stoll(s);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

struct EdgeAccumulator {
    int fixed_n = -1; // -1: infer from the largest index
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    int max_index = -1;

    void add(long long u, long long v, int line) {
        if (u < 0 || v < 0) throw ParseError("vertex index must be non-negative", line);
        if (fixed_n >= 0 && (u >= fixed_n || v >= fixed_n))
            throw ParseError("vertex index out of range", line);
        if (u > 1'000'000 || v > 1'000'000)
            throw ParseError("vertex index implausibly large", line);
        if (u == v) throw ParseError("self-loop", line);
        std::pair<int, int> key{std::min(int(u), int(v)), std::max(int(u), int(v))};
        if (!seen.insert(key).second) throw ParseError("duplicate edge", line);
        edges.push_back(key);
        max_index = std::max(max_index, key.second);
    }

    Graph build() const {
        int n = fixed_n >= 0 ? fixed_n : max_index + 1;
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }
};

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    EdgeAccumulator acc;
    bool first_content = true;
    for (int ln = 1; std::getline(in, line); ++ln) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (first_content && toks[0] == "n") {
            if (toks.size() != 2) throw ParseError("expected 'n <count>'", ln);
            long long n;
            if (!parse_int(toks[1], n) || n < 0 || n > 1'000'000)
                throw ParseError("invalid vertex count", ln);
            acc.fixed_n = int(n);
            first_content = false;
            continue;
        }
        first_content = false;
        if (toks.size() != 2) throw ParseError("expected two vertex indices", ln);
        long long u, v;
        if (!parse_int(toks[0], u) || !parse_int(toks[1], v))
            throw ParseError("expected two vertex indices", ln);
        acc.add(u, v, ln);
    }
    return acc.build();
}

Graph parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    EdgeAccumulator acc;
    long long declared_m = -1;
    int edge_lines = 0;
    for (int ln = 1; std::getline(in, line); ++ln) {
        auto toks = tokens_of(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (declared_m >= 0) throw ParseError("duplicate problem line", ln);
            if (toks.size() != 4 || toks[1] != "edge")
                throw ParseError("expected 'p edge <n> <m>'", ln);
            long long n, m;
            if (!parse_int(toks[2], n) || !parse_int(toks[3], m) || n < 0 || m < 0 ||
                n > 1'000'000)
                throw ParseError("invalid problem line", ln);
            acc.fixed_n = int(n);
            declared_m = m;
            continue;
        }
        if (toks[0] == "e") {
            if (declared_m < 0) throw ParseError("edge before problem line", ln);
            if (toks.size() != 3) throw ParseError("expected 'e <u> <v>'", ln);
            long long u, v;
            if (!parse_int(toks[1], u) || !parse_int(toks[2], v))
                throw ParseError("expected 'e <u> <v>'", ln);
            if (u < 1 || v < 1) throw ParseError("vertex index out of range", ln);
            acc.add(u - 1, v - 1, ln); // 1-based on the wire
            ++edge_lines;
            continue;
        }
        throw ParseError("unrecognized line '" + toks[0] + " ...'", ln);
    }
    if (declared_m < 0) throw ParseError("missing problem line");
    if (edge_lines != declared_m)
        throw ParseError("edge count mismatch: problem line declares " +
                         std::to_string(declared_m) + ", found " +
                         std::to_string(edge_lines));
    return acc.build();
}

Graph parse_json_graph(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("expected a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("missing integer field 'n'");
    long long n = doc["n"].get<long long>();
    if (n < 0 || n > 1'000'000) throw ParseError("invalid vertex count");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("missing array field 'edges'");
    if (doc.contains("labels")) {
        const auto& labels = doc["labels"];
        if (!labels.is_array() || static_cast<long long>(labels.size()) != n)
            throw ParseError("'labels' must list one string per vertex");
        for (const auto& l : labels)
            if (!l.is_string()) throw ParseError("'labels' must list one string per vertex");
    }
    EdgeAccumulator acc;
    acc.fixed_n = int(n);
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError("each edge must be a pair of vertex indices");
        acc.add(e[0].get<long long>(), e[1].get<long long>(), 0);
    }
    return acc.build();
}

} // namespace

Graph parse_graph(const std::string& text, GraphFormat format) {
    if (format == GraphFormat::Auto) {
        format = GraphFormat::EdgeList;
        for (char ch : text) {
            if (std::isspace(static_cast<unsigned char>(ch))) continue;
            if (ch == '{') format = GraphFormat::Json;
            break;
        }
        if (format == GraphFormat::EdgeList) {
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line)) {
                auto toks = tokens_of(line);
                if (toks.size() >= 2 && toks[0] == "p" && toks[1] == "edge") {
                    format = GraphFormat::Dimacs;
                    break;
                }
            }
        }
    }
    switch (format) {
        case GraphFormat::EdgeList: return parse_edge_list(text);
        case GraphFormat::Dimacs: return parse_dimacs(text);
        case GraphFormat::Json: return parse_json_graph(text);
        case GraphFormat::Auto: break;
    }
    throw std::logic_error("unreachable graph format");
}

std::optional<GraphFormat> format_from_name(const std::string& name) {
    if (name == "auto") return GraphFormat::Auto;
    if (name == "edgelist") return GraphFormat::EdgeList;
    if (name == "dimacs") return GraphFormat::Dimacs;
    if (name == "json") return GraphFormat::Json;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON emitters
// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json set_json(const VertexSet& s) {
    auto arr = nlohmann::ordered_json::array();
    s.for_each([&](int v) { arr.push_back(v); });
    return arr;
}

std::string node_type_name(NodeType t) {
    switch (t) {
        case NodeType::Leaf: return "leaf";
        case NodeType::Union: return "union";
        case NodeType::Join: return "join";
        case NodeType::Spider: return "spider";
        case NodeType::QuasiSpider: return "quasi-spider";
        case NodeType::Separable: return "separable";
    }
    return "?";
}

std::string leaf_reason_name(LeafReason r) {
    switch (r) {
        case LeafReason::Empty: return "empty";
        case LeafReason::K1: return "single-vertex";
        case LeafReason::P5: return "P5";
        case LeafReason::P5Bar: return "co-P5";
        case LeafReason::C5: return "C5";
        case LeafReason::SmallQ: return "small";
    }
    return "?";
}

nlohmann::ordered_json units_json(const std::vector<std::vector<int>>& units) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& u : units) arr.push_back(u);
    return arr;
}

nlohmann::ordered_json spider_json(const SpiderPartition& sp) {
    nlohmann::ordered_json j;
    j["thickness"] = sp.thickness == Thickness::Thin ? "thin" : "thick";
    j["head"] = set_json(sp.head);
    j["clique_units"] = units_json(sp.clique_units);
    j["stable_units"] = units_json(sp.stable_units);
    if (sp.replacement) {
        nlohmann::ordered_json r;
        r["in_clique"] = sp.replacement->in_clique;
        r["adjacent"] = sp.replacement->adjacent_pair;
        r["pair"] = {sp.replacement->pair[0], sp.replacement->pair[1]};
        j["replacement"] = std::move(r);
    }
    return j;
}

} // namespace

nlohmann::ordered_json graph_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n();
    j["m"] = g.m();
    auto edges = nlohmann::ordered_json::array();
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.adjacent(u, v)) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

nlohmann::ordered_json coloring_json(const Graph& g, const Coloring& c,
                                     ColoringFamily f) {
    nlohmann::ordered_json j;
    j["family"] = family_name(f);
    j["n"] = g.n();
    j["k"] = c.k;
    j["colors"] = c.colors;
    return j;
}

nlohmann::ordered_json result_json(const Graph& g, const ChromaticResult& r,
                                   ColoringFamily f) {
    nlohmann::ordered_json j;
    j["variant"] = family_name(f);
    j["n"] = g.n();
    j["value"] = r.value;
    j["colors"] = r.witness.colors;
    auto trace = nlohmann::ordered_json::array();
    for (const TraceEntry& e : r.trace) {
        nlohmann::ordered_json t;
        t["node"] = e.node;
        t["rule"] = e.rule;
        t["value"] = e.value;
        t["note"] = e.note;
        if (e.alt_value) t["alt_value"] = *e.alt_value;
        trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
    return j;
}

nlohmann::ordered_json tree_json(const DecompositionTree& t) {
    nlohmann::ordered_json j;
    j["root"] = t.root;
    auto nodes = nlohmann::ordered_json::array();
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        const DecompositionNode& node = t.nodes[i];
        nlohmann::ordered_json nj;
        nj["id"] = int(i);
        nj["type"] = node_type_name(node.type);
        nj["vertices"] = set_json(node.vertices);
        nj["children"] = node.children;
        if (node.leaf_reason) nj["reason"] = leaf_reason_name(*node.leaf_reason);
        if (node.spider) nj["spider"] = spider_json(*node.spider);
        if (node.separable) {
            nlohmann::ordered_json s;
            s["h"] = set_json(node.separable->h);
            s["h1"] = set_json(node.separable->h1);
            s["h2"] = set_json(node.separable->h2);
            nj["separable"] = std::move(s);
        }
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    return j;
}

nlohmann::ordered_json rejection_json(const Rejection& r) {
    nlohmann::ordered_json j;
    if (const auto* qq = std::get_if<QQ4Rejection>(&r)) {
        j["member"] = false;
        j["reason"] = "p4-budget-exceeded";
        j["q"] = qq->violation.q;
        j["witness_vertices"] = set_json(qq->violation.vertices);
        j["p4_count"] = qq->violation.p4_count;
        j["budget"] = qq->violation.q - 4;
    } else {
        const auto& tv = std::get<TidyRejection>(r).violation;
        j["member"] = false;
        j["reason"] = "p4-with-two-partners";
        j["p4"] = {tv.p4[0], tv.p4[1], tv.p4[2], tv.p4[3]};
        j["partners"] = tv.partners;
    }
    return j;
}

std::string tree_dot(const DecompositionTree& t) {
    std::ostringstream out;
    out << "digraph decomposition {\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        const DecompositionNode& node = t.nodes[i];
        std::string label = node_type_name(node.type);
        if (node.leaf_reason) label += "\\n" + leaf_reason_name(*node.leaf_reason);
        if (node.spider) {
            label += node.spider->thickness == Thickness::Thin ? "\\nthin" : "\\nthick";
            label += " k=" + std::to_string(node.spider->k());
        }
        std::vector<int> verts = node.vertices.to_vector();
        if (verts.size() <= 12) {
            label += "\\n{";
            for (size_t k = 0; k < verts.size(); ++k) {
                if (k) label += ",";
                label += std::to_string(verts[k]);
            }
            label += "}";
        } else {
            label += "\\n|V|=" + std::to_string(verts.size());
        }
        out << "  n" << i << " [label=\"" << label << "\"];\n";
        for (int c : node.children) out << "  n" << i << " -> n" << c << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace p4c
