#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "p4c/cli.hpp"
#include "p4c/decomposition.hpp"
#include "p4c/errors.hpp"
#include "p4c/graph.hpp"
#include "p4c/io.hpp"

using namespace p4c;
using p4c::testing::graph_from_edges;
using p4c::testing::same_graph;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / ("p4c_test_" + name);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    return path;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("io: edge list parsing") {
    Graph g = parse_graph("0 1\n1 2\n", GraphFormat::EdgeList);
    CHECK(same_graph(g, path_graph(3)));

    // Optional first line fixing the vertex count; comments and blanks.
    Graph fixed = parse_graph("# a comment\nn 5\n0 1\n\n3 4 # trailing\n");
    CHECK(fixed.n() == 5);
    CHECK(fixed.edges().size() == 2);

    // Isolated vertices only exist via the header.
    CHECK(parse_graph("0 1\n").n() == 2);
    CHECK(parse_graph("n 1\n").n() == 1);

    CHECK_THROWS_AS(parse_graph("0 0\n", GraphFormat::EdgeList), ParseError);
    CHECK_THROWS_AS(parse_graph("0 1\n1 0\n", GraphFormat::EdgeList), ParseError);
    CHECK_THROWS_AS(parse_graph("n 2\n0 5\n", GraphFormat::EdgeList), ParseError);
    CHECK_THROWS_AS(parse_graph("0 -1\n", GraphFormat::EdgeList), ParseError);
    CHECK_THROWS_AS(parse_graph("0 x\n", GraphFormat::EdgeList), ParseError);
    CHECK_THROWS_AS(parse_graph("0 1 2\n", GraphFormat::EdgeList), ParseError);
    CHECK_THROWS_AS(parse_graph("0 9999999\n", GraphFormat::EdgeList), ParseError);

    try {
        parse_graph("0 1\n1 2\n2 1\n", GraphFormat::EdgeList);
        FAIL("duplicate edge accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("io: DIMACS parsing") {
    Graph g = parse_graph("c comment\np edge 3 2\ne 1 2\ne 2 3\n", GraphFormat::Dimacs);
    CHECK(same_graph(g, path_graph(3))); // 1-based input, 0-based graph

    CHECK_THROWS_AS(parse_graph("p edge 3 2\ne 1 2\n", GraphFormat::Dimacs),
                    ParseError); // fewer edges than declared
    CHECK_THROWS_AS(parse_graph("p edge 3 1\ne 1 2\ne 2 3\n", GraphFormat::Dimacs),
                    ParseError); // more edges than declared
    CHECK_THROWS_AS(parse_graph("e 1 2\np edge 3 1\n", GraphFormat::Dimacs),
                    ParseError); // edge before the problem line
    CHECK_THROWS_AS(parse_graph("p edge 3 0\np edge 3 0\n", GraphFormat::Dimacs),
                    ParseError); // duplicate problem line
    CHECK_THROWS_AS(parse_graph("p edge 3 1\ne 0 1\n", GraphFormat::Dimacs),
                    ParseError); // vertices are 1-based
    CHECK_THROWS_AS(parse_graph("p edge 3 1\nq 1 2\n", GraphFormat::Dimacs),
                    ParseError); // unrecognized line
}

TEST_CASE("io: JSON parsing") {
    Graph g = parse_graph(R"({"n": 4, "edges": [[0,1],[2,3]]})", GraphFormat::Json);
    CHECK(g.n() == 4);
    CHECK(g.edges().size() == 2);

    Graph labeled =
        parse_graph(R"({"n": 2, "edges": [[0,1]], "labels": ["a", "b"]})", GraphFormat::Json);
    CHECK(labeled.n() == 2);

    CHECK_THROWS_AS(parse_graph("{not json", GraphFormat::Json), ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"edges": []})", GraphFormat::Json), ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"n": -1, "edges": []})", GraphFormat::Json), ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[0]]})", GraphFormat::Json), ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[0,5]]})", GraphFormat::Json),
                    ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [], "labels": ["a"]})",
                                GraphFormat::Json),
                    ParseError); // wrong label count
    CHECK_THROWS_AS(parse_graph(R"({"n": 1, "edges": [], "labels": [3]})", GraphFormat::Json),
                    ParseError); // non-string label
}

TEST_CASE("io: format sniffing and names") {
    CHECK(parse_graph(R"(  {"n": 1, "edges": []})").n() == 1);
    CHECK(same_graph(parse_graph("c x\np edge 3 2\ne 1 2\ne 2 3\n"), path_graph(3)));
    CHECK(same_graph(parse_graph("0 1\n1 2\n"), path_graph(3)));

    CHECK(format_from_name("auto") == GraphFormat::Auto);
    CHECK(format_from_name("edgelist") == GraphFormat::EdgeList);
    CHECK(format_from_name("dimacs") == GraphFormat::Dimacs);
    CHECK(format_from_name("json") == GraphFormat::Json);
    CHECK_FALSE(format_from_name("csv").has_value());
}

TEST_CASE("io: JSON emitters") {
    Graph p3 = path_graph(3);
    CHECK(graph_json(p3).dump() == R"({"n":3,"m":2,"edges":[[0,1],[1,2]]})");

    Coloring c{2, {0, 1, 0}};
    CHECK(coloring_json(p3, c, ColoringFamily::Acyclic).dump() ==
          R"({"family":"acyclic","n":3,"k":2,"colors":[0,1,0]})");

    ChromaticResult r;
    r.value = 2;
    r.witness = c;
    r.trace.push_back({-1, "oracle", 2, "small piece", std::nullopt});
    auto rj = result_json(p3, r, ColoringFamily::Star);
    CHECK(rj["variant"] == "star");
    CHECK(rj["value"] == 2);
    CHECK(rj["trace"].size() == 1);
    CHECK(rj["trace"][0]["rule"] == "oracle");
    CHECK(rj["trace"][0]["node"] == -1);
    CHECK_FALSE(rj["trace"][0].contains("alt_value"));
    r.trace[0].alt_value = 5;
    CHECK(result_json(p3, r, ColoringFamily::Star)["trace"][0]["alt_value"] == 5);
}

TEST_CASE("io: decomposition tree emitters") {
    auto net = build_tree(net_graph(), Mode{P4TidyMode{}});
    REQUIRE(net.tree.has_value());
    auto tj = tree_json(*net.tree);
    CHECK(tj["root"].is_number_integer());
    const auto& root_node = tj["nodes"][tj["root"].get<int>()];
    CHECK(root_node["type"] == "spider");
    CHECK(root_node["spider"]["thickness"] == "thin");
    CHECK(root_node["spider"]["clique_units"].size() == 3);
    CHECK_FALSE(root_node["spider"].contains("replacement"));

    auto p5 = build_tree(path_graph(5), Mode{P4TidyMode{}});
    auto pj = tree_json(*p5.tree);
    CHECK(pj["nodes"][0]["type"] == "leaf");
    CHECK(pj["nodes"][0]["reason"] == "P5");

    std::string dot = tree_dot(*net.tree);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("spider") != std::string::npos);
    CHECK(dot.find("thin k=3") != std::string::npos);

    auto bull = build_tree(bull_graph(), Mode{P4TidyMode{}});
    std::string bull_dot = tree_dot(*bull.tree);
    CHECK(bull_dot.find("->") != std::string::npos); // head child edge
}

TEST_CASE("io: rejection emitters") {
    auto net6 = build_tree(net_graph(), Mode{QQ4Mode{6}});
    REQUIRE(net6.rejection.has_value());
    auto j = rejection_json(*net6.rejection);
    CHECK(j["member"] == false);
    CHECK(j["reason"] == "p4-budget-exceeded");
    CHECK(j["q"] == 6);
    CHECK(j["budget"] == 2);
    CHECK(j["p4_count"].get<int>() > 2);

    Graph doubled = graph_from_edges(6, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}});
    auto tidy = build_tree(doubled, Mode{P4TidyMode{}});
    REQUIRE(tidy.rejection.has_value());
    auto jt = rejection_json(*tidy.rejection);
    CHECK(jt["reason"] == "p4-with-two-partners");
    CHECK(jt["p4"].size() == 4);
    CHECK(jt["partners"].size() >= 2);
}

TEST_CASE("cli: recognize") {
    auto c5 = write_temp("c5.txt", "0 1\n1 2\n2 3\n3 4\n0 4\n");

    auto r = cli({"recognize", c5.string(), "--class", "qq4", "--q", "8"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"member\": false") != std::string::npos);
    CHECK(r.out.find("\"p4_count\": 5") != std::string::npos);

    r = cli({"recognize", c5.string(), "--class", "qq4", "--q", "9"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"member\": true") != std::string::npos);

    r = cli({"recognize", c5.string(), "--class", "p4tidy"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"member\": true") != std::string::npos);

    auto doubled = write_temp("doubled.txt", "0 2\n1 2\n2 3\n3 4\n3 5\n");
    r = cli({"recognize", doubled.string(), "--class", "p4tidy"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"member\": false") != std::string::npos);
    CHECK(r.out.find("\"partners\"") != std::string::npos);

    r = cli({"recognize", c5.string(), "--class", "cograph"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"member\": false") != std::string::npos);

    // qq4 without --q, unknown class.
    CHECK(cli({"recognize", c5.string(), "--class", "qq4"}).code == EXIT_PARSE);
    CHECK(cli({"recognize", c5.string(), "--class", "planar"}).code == EXIT_PARSE);
}

TEST_CASE("cli: qvalue") {
    auto c5 = write_temp("c5b.txt", "0 1\n1 2\n2 3\n3 4\n0 4\n");
    auto r = cli({"qvalue", c5.string()});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"q\": 9") != std::string::npos);
    CHECK(r.out.find("\"n\": 5") != std::string::npos);
}

TEST_CASE("cli: decompose") {
    auto net = write_temp("net.txt", "0 1\n0 2\n1 2\n0 3\n1 4\n2 5\n");

    auto r = cli({"decompose", net.string()});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"type\": \"spider\"") != std::string::npos);

    r = cli({"decompose", net.string(), "--tree-format", "dot"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("digraph") != std::string::npos);

    r = cli({"decompose", net.string(), "--mode", "qq4", "--q", "6"});
    CHECK(r.code == EXIT_NOT_IN_CLASS);
    CHECK(r.out.find("\"reason\": \"p4-budget-exceeded\"") != std::string::npos);

    r = cli({"decompose", net.string(), "--mode", "qq4", "--q", "7"});
    CHECK(r.code == EXIT_OK);

    CHECK(cli({"decompose", net.string(), "--mode", "qq4"}).code == EXIT_PARSE);
    CHECK(cli({"decompose", net.string(), "--tree-format", "yaml"}).code == EXIT_PARSE);
}

TEST_CASE("cli: color") {
    auto c5 = write_temp("c5c.txt", "0 1\n1 2\n2 3\n3 4\n0 4\n");

    auto r = cli({"color", c5.string(), "--variant", "star"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"value\": 4") != std::string::npos);
    CHECK(r.out.find("\"colors\"") == std::string::npos); // witness withheld

    r = cli({"color", c5.string(), "--variant", "star", "--emit-witness"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"colors\"") != std::string::npos);

    // Family alias.
    r = cli({"color", c5.string(), "--variant", "nonrepetitive"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"variant\": \"thue\"") != std::string::npos);
    CHECK(r.out.find("\"value\": 4") != std::string::npos);

    // q-parameterized mode.
    r = cli({"color", c5.string(), "--variant", "acyclic", "--mode", "qq4", "--q", "9"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"value\": 3") != std::string::npos);
    CHECK(cli({"color", c5.string(), "--variant", "acyclic", "--mode", "qq4", "--q", "8"})
              .code == EXIT_NOT_IN_CLASS);

    CHECK(cli({"color", c5.string(), "--variant", "proper"}).code == EXIT_PARSE);
    CHECK(cli({"color", c5.string(), "--variant", "rainbow"}).code == EXIT_PARSE);

    // Harmonious needs a connected graph.
    auto two = write_temp("twok2.txt", "0 1\n2 3\n");
    CHECK(cli({"color", two.string(), "--variant", "harmonious"}).code == EXIT_DISCONNECTED);
    CHECK(cli({"color", two.string(), "--variant", "acyclic"}).code == EXIT_OK);

    // An indivisible piece larger than the component cap. A 12-vertex path has
    // nine four-vertex induced paths, so it is a member once q - 4 >= 9, and it
    // decomposes no further.
    std::string p12;
    for (int i = 0; i + 1 < 12; ++i) p12 += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
    auto long_path = write_temp("p12.txt", p12);
    CHECK(cli({"color", long_path.string(), "--variant", "star", "--mode", "qq4", "--q",
               "13"})
              .code == EXIT_BUDGET);
    CHECK(cli({"color", long_path.string(), "--variant", "star", "--mode", "qq4", "--q", "13",
               "--component-cap", "12"})
              .code == EXIT_OK);
}

TEST_CASE("cli: oracle and witness verification") {
    auto c5 = write_temp("c5d.txt", "0 1\n1 2\n2 3\n3 4\n0 4\n");

    auto r = cli({"oracle", c5.string(), "--variant", "proper"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"value\": 3") != std::string::npos);

    // Round-trip: the color subcommand's witness verifies.
    auto witness = cli({"color", c5.string(), "--variant", "star", "--emit-witness"});
    REQUIRE(witness.code == EXIT_OK);
    auto wfile = write_temp("witness.json", witness.out);
    r = cli({"oracle", c5.string(), "--variant", "star", "--verify", wfile.string()});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"valid\": true") != std::string::npos);

    // A corrupted witness fails verification.
    auto bad = write_temp("witness_bad.json", R"({"k": 4, "colors": [0,0,1,2,3]})");
    r = cli({"oracle", c5.string(), "--variant", "star", "--verify", bad.string()});
    CHECK(r.code == EXIT_INTERNAL);
    CHECK(r.out.find("\"valid\": false") != std::string::npos);

    auto malformed = write_temp("witness_malformed.json", R"({"colors": [0,0,1,2,3]})");
    CHECK(cli({"oracle", c5.string(), "--variant", "star", "--verify", malformed.string()})
              .code == EXIT_PARSE);

    // Enumeration budget, via flag and via environment.
    std::string c9;
    for (int i = 0; i < 9; ++i) c9 += std::to_string(i) + " " + std::to_string((i + 1) % 9) + "\n";
    auto big = write_temp("c9.txt", c9);
    CHECK(cli({"oracle", big.string(), "--variant", "star", "--budget", "10"}).code ==
          EXIT_BUDGET);
    setenv("P4COLOR_ORACLE_BUDGET", "10", 1);
    CHECK(cli({"oracle", big.string(), "--variant", "star"}).code == EXIT_BUDGET);
    CHECK(cli({"oracle", big.string(), "--variant", "star", "--budget", "100000000"}).code ==
          EXIT_OK);
    setenv("P4COLOR_ORACLE_BUDGET", "not-a-number", 1);
    CHECK(cli({"oracle", big.string(), "--variant", "star"}).code == EXIT_PARSE);
    unsetenv("P4COLOR_ORACLE_BUDGET");
}

TEST_CASE("cli: selftest") {
    auto r = cli({"selftest", "--samples", "6", "--n-max", "6", "--seed", "3"});
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"discrepancies\": 0") != std::string::npos);
    CHECK(r.out.find("\"comparisons\"") != std::string::npos);
}

TEST_CASE("cli: input and usage failures") {
    CHECK(cli({}).code == EXIT_USAGE);
    CHECK(cli({"transmogrify"}).code == EXIT_USAGE);
    CHECK(cli({"--help"}).code == EXIT_OK);
    CHECK(cli({"color", "--variant", "star", "/nonexistent/file.txt"}).code == EXIT_PARSE);

    auto bad = write_temp("bad.txt", "0 0\n");
    auto r = cli({"qvalue", bad.string()});
    CHECK(r.code == EXIT_PARSE);
    CHECK(r.err.find("line 1") != std::string::npos);

    auto c5 = write_temp("c5e.txt", "0 1\n1 2\n2 3\n3 4\n0 4\n");
    CHECK(cli({"qvalue", c5.string(), "--format", "yaml"}).code == EXIT_PARSE);
    // Valid but mis-matched explicit format: C5 edge list is not DIMACS.
    CHECK(cli({"qvalue", c5.string(), "--format", "dimacs"}).code == EXIT_PARSE);
}

TEST_CASE("cli: reads standard input") {
    std::istringstream fake_in("0 1\n1 2\n");
    auto* saved = std::cin.rdbuf(fake_in.rdbuf());
    auto r = cli({"qvalue", "-"});
    std::cin.rdbuf(saved);
    CHECK(r.code == EXIT_OK);
    CHECK(r.out.find("\"n\": 3") != std::string::npos);
    CHECK(r.out.find("\"q\": 4") != std::string::npos);
}
