#include "p4c/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "p4c/decomposition.hpp"
#include "p4c/engine.hpp"
#include "p4c/errors.hpp"
#include "p4c/io.hpp"
#include "p4c/oracle.hpp"

namespace p4c {

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_graph(const std::string& path, const std::string& format_name) {
    auto fmt = format_from_name(format_name);
    if (!fmt) throw ParseError("unknown input format '" + format_name + "'");
    return parse_graph(read_input(path), *fmt);
}

OracleBudget budget_from_env_and_flag(long long flag_value) {
    OracleBudget budget;
    if (const char* env = std::getenv("P4COLOR_ORACLE_BUDGET")) {
        try {
            budget.max_partitions = std::stoll(env);
        } catch (const std::exception&) {
            throw ParseError("P4COLOR_ORACLE_BUDGET is not a number");
        }
    }
    if (flag_value > 0) budget.max_partitions = flag_value;
    return budget;
}

struct CommandState {
    std::string file = "-";
    std::string format = "auto";
    std::string klass;
    std::string mode = "p4tidy";
    int q = -1;
    std::string variant;
    std::string tree_format = "json";
    bool emit_witness = false;
    long long budget = -1;
    std::string verify_path;
    int component_cap = 10;
    int n_max = 7;
    int samples = 50;
    std::uint64_t seed = 1;
};

Mode make_mode(const std::string& mode_name, int q) {
    if (mode_name == "p4tidy") return P4TidyMode{};
    if (mode_name == "qq4") {
        if (q < 4) throw ParseError("qq4 mode requires --q with a value of at least 4");
        return QQ4Mode{q};
    }
    throw ParseError("unknown mode '" + mode_name + "' (expected p4tidy or qq4)");
}

void emit(std::ostream& out, const nlohmann::ordered_json& j) {
    out << j.dump(2) << "\n";
}

// --------------------------- subcommand bodies ----------------------------

int cmd_recognize(const CommandState& st, std::ostream& out) {
    Graph g = load_graph(st.file, st.format);
    nlohmann::ordered_json j;
    j["class"] = st.klass;
    if (st.klass == "p4tidy") {
        auto v = tidy_violation(g);
        j["member"] = !v.has_value();
        if (v) {
            nlohmann::ordered_json w;
            w["p4"] = {v->p4[0], v->p4[1], v->p4[2], v->p4[3]};
            w["partners"] = v->partners;
            j["witness"] = std::move(w);
        }
    } else {
        int q;
        if (st.klass == "cograph") q = 4;
        else if (st.klass == "p4sparse") q = 5;
        else if (st.klass == "qq4") {
            if (st.q < 4) throw ParseError("--class qq4 requires --q >= 4");
            q = st.q;
        } else {
            throw ParseError("unknown class '" + st.klass +
                             "' (expected cograph, p4sparse, qq4, or p4tidy)");
        }
        j["q"] = q;
        auto v = qq4_violation(g, q);
        j["member"] = !v.has_value();
        if (v) {
            nlohmann::ordered_json w;
            w["vertices"] = v->vertices.to_vector();
            w["p4_count"] = v->p4_count;
            w["budget"] = q - 4;
            j["witness"] = std::move(w);
        }
    }
    emit(out, j);
    return EXIT_OK;
}

int cmd_qvalue(const CommandState& st, std::ostream& out) {
    Graph g = load_graph(st.file, st.format);
    nlohmann::ordered_json j;
    j["n"] = g.n();
    j["q"] = compute_q(g);
    emit(out, j);
    return EXIT_OK;
}

int cmd_decompose(const CommandState& st, std::ostream& out) {
    Graph g = load_graph(st.file, st.format);
    BuildResult r = build_tree(g, make_mode(st.mode, st.q));
    if (!r.tree) {
        emit(out, rejection_json(*r.rejection));
        return EXIT_NOT_IN_CLASS;
    }
    if (st.tree_format == "dot") {
        out << tree_dot(*r.tree);
    } else if (st.tree_format == "json") {
        emit(out, tree_json(*r.tree));
    } else {
        throw ParseError("unknown tree format '" + st.tree_format +
                         "' (expected json or dot)");
    }
    return EXIT_OK;
}

int cmd_color(const CommandState& st, std::ostream& out) {
    auto fam = family_from_name(st.variant);
    if (!fam)
        throw ParseError("unknown variant '" + st.variant +
                         "' (expected acyclic, star, thue, harmonious, or clique)");
    if (*fam == ColoringFamily::Proper)
        throw ParseError("variant 'proper' has no decomposition rules; "
                         "use the oracle subcommand");
    Graph g = load_graph(st.file, st.format);
    SolveOptions opts;
    opts.budget = budget_from_env_and_flag(st.budget);
    opts.max_component_size = st.component_cap;
    ChromaticResult r = solve(g, *fam, make_mode(st.mode, st.q), opts);
    auto j = result_json(g, r, *fam);
    if (!st.emit_witness) j.erase("colors");
    emit(out, j);
    return EXIT_OK;
}

int cmd_oracle(const CommandState& st, std::ostream& out) {
    auto fam = family_from_name(st.variant);
    if (!fam) throw ParseError("unknown variant '" + st.variant + "'");
    Graph g = load_graph(st.file, st.format);
    OracleBudget budget = budget_from_env_and_flag(st.budget);
    if (!st.verify_path.empty()) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_input(st.verify_path));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("witness file: ") + e.what());
        }
        Coloring c;
        if (doc.contains("k") && doc["k"].is_number_integer())
            c.k = doc["k"].get<int>();
        else if (doc.contains("value") && doc["value"].is_number_integer())
            c.k = doc["value"].get<int>();
        else
            throw ParseError("witness file: missing integer field 'k' or 'value'");
        if (!doc.contains("colors") || !doc["colors"].is_array())
            throw ParseError("witness file: missing array field 'colors'");
        c.colors = doc["colors"].get<std::vector<int>>();
        bool valid = is_valid(g, c, *fam);
        nlohmann::ordered_json j;
        j["family"] = family_name(*fam);
        j["k"] = c.k;
        j["valid"] = valid;
        emit(out, j);
        return valid ? EXIT_OK : EXIT_INTERNAL;
    }
    ChromaticResult r = exact_chromatic(g, *fam, budget);
    emit(out, result_json(g, r, *fam));
    return EXIT_OK;
}

int cmd_selftest(const CommandState& st, std::ostream& out, std::ostream& err) {
    std::mt19937_64 rng(st.seed);
    const ColoringFamily families[] = {
        ColoringFamily::Acyclic, ColoringFamily::Star, ColoringFamily::Nonrepetitive,
        ColoringFamily::Harmonious, ColoringFamily::Clique};
    int comparisons = 0, discrepancies = 0, skipped = 0;
    for (int i = 0; i < st.samples; ++i) {
        GeneratorSpec spec;
        switch (rng() % 3) {
            case 0: spec.target = TargetClass::Cograph; break;
            case 1: spec.target = TargetClass::P4Tidy; break;
            default:
                spec.target = TargetClass::QQ4;
                spec.q = 5 + int(rng() % 4);
                break;
        }
        spec.n_min = 4;
        spec.n_max = st.n_max;
        spec.seed = rng();
        spec.require_connected = true;
        GeneratedInstance inst = generate(spec);
        Mode mode = spec.target == TargetClass::QQ4 ? Mode(QQ4Mode{spec.q})
                                                    : Mode(P4TidyMode{});
        for (ColoringFamily f : families) {
            int engine_value = -1, oracle_value = -1;
            try {
                engine_value = solve(inst.graph, f, mode).value;
                oracle_value = exact_chromatic(inst.graph, f).value;
            } catch (const BudgetError&) {
                ++skipped;
                continue;
            }
            ++comparisons;
            if (engine_value != oracle_value) {
                ++discrepancies;
                err << "selftest: " << family_name(f) << " mismatch (engine "
                    << engine_value << ", exhaustive " << oracle_value << ") on "
                    << graph_json(inst.graph).dump() << "\n";
            }
        }
    }
    nlohmann::ordered_json j;
    j["samples"] = st.samples;
    j["comparisons"] = comparisons;
    j["skipped"] = skipped;
    j["discrepancies"] = discrepancies;
    emit(out, j);
    return discrepancies == 0 ? EXIT_OK : EXIT_INTERNAL;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"decomposition-based restricted graph coloring"};
    app.require_subcommand(1);
    CommandState st;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("file", st.file, "input graph file, or - for stdin")
            ->default_val("-");
        cmd->add_option("--format", st.format,
                        "input format: auto, edgelist, dimacs, json")
            ->default_val("auto");
    };

    CLI::App* recognize = app.add_subcommand("recognize", "test class membership");
    add_input(recognize);
    recognize->add_option("--class", st.klass,
                          "graph class: cograph, p4sparse, qq4, p4tidy")
        ->required();
    recognize->add_option("--q", st.q, "q parameter (with --class qq4)");

    CLI::App* qvalue = app.add_subcommand(
        "qvalue", "smallest q for which the graph is a member");
    add_input(qvalue);

    CLI::App* decompose = app.add_subcommand("decompose", "build the decomposition tree");
    add_input(decompose);
    decompose->add_option("--mode", st.mode, "decomposition mode: p4tidy or qq4")
        ->default_val("p4tidy");
    decompose->add_option("--q", st.q, "q parameter (with --mode qq4)");
    decompose->add_option("--tree-format", st.tree_format, "output: json or dot")
        ->default_val("json");

    CLI::App* color = app.add_subcommand("color", "compute a restricted chromatic number");
    add_input(color);
    color->add_option("--variant", st.variant,
                      "acyclic, star, thue (alias nonrepetitive), harmonious, clique")
        ->required();
    color->add_option("--mode", st.mode, "decomposition mode: p4tidy or qq4")
        ->default_val("p4tidy");
    color->add_option("--q", st.q, "q parameter (with --mode qq4)");
    color->add_flag("--emit-witness", st.emit_witness, "include the coloring itself");
    color->add_option("--budget", st.budget, "exhaustive-search partition budget");
    color->add_option("--component-cap", st.component_cap,
                      "largest piece solved exhaustively")
        ->default_val(10);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "exhaustive chromatic number, or witness verification");
    add_input(oracle);
    oracle->add_option("--variant", st.variant,
                       "proper, acyclic, star, thue, harmonious, clique")
        ->required();
    oracle->add_option("--budget", st.budget, "partition enumeration budget");
    oracle->add_option("--verify", st.verify_path,
                       "verify the witness coloring in this JSON file");

    CLI::App* selftest = app.add_subcommand(
        "selftest", "compare the engine against exhaustive search on random members");
    selftest->add_option("--n-max", st.n_max, "largest instance size")->default_val(7);
    selftest->add_option("--samples", st.samples, "number of random instances")
        ->default_val(50);
    selftest->add_option("--seed", st.seed, "random seed")->default_val(1);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("p4color");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? EXIT_OK : EXIT_USAGE;
    }

    try {
        if (recognize->parsed()) return cmd_recognize(st, out);
        if (qvalue->parsed()) return cmd_qvalue(st, out);
        if (decompose->parsed()) return cmd_decompose(st, out);
        if (color->parsed()) return cmd_color(st, out);
        if (oracle->parsed()) return cmd_oracle(st, out);
        if (selftest->parsed()) return cmd_selftest(st, out, err);
        err << "error: no subcommand\n";
        return EXIT_USAGE;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const RejectionError& e) {
        err << "not in class: " << e.what() << "\n";
        return EXIT_NOT_IN_CLASS;
    } catch (const DisconnectedError& e) {
        err << "disconnected input: " << e.what() << "\n";
        return EXIT_DISCONNECTED;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return EXIT_BUDGET;
    } catch (const std::invalid_argument& e) {
        err << "invalid request: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return EXIT_INTERNAL;
    }
}

} // namespace p4c
