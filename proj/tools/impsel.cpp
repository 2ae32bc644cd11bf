// Command-line surface for the selection mechanisms: single runs, exact
// distributions and ratios, bound tables, verification sweeps, worst-case
// searches, Monte Carlo estimates, and instance generation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "impsel/bounds.hpp"
#include "impsel/exact.hpp"
#include "impsel/graph.hpp"
#include "impsel/guards.hpp"
#include "impsel/mechanisms.hpp"
#include "impsel/montecarlo.hpp"
#include "impsel/rng.hpp"
#include "impsel/verify.hpp"

namespace {

using nlohmann::json;
using namespace impsel;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSizeGuard = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t used = 0;
        std::uint64_t value = (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0)
                                  ? std::stoull(text.substr(2), &used, 16)
                                  : std::stoull(text, &used, 10);
        std::size_t expect = (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0)
                                 ? text.size() - 2
                                 : text.size();
        if (used != expect) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw UsageError("bad seed '" + text + "' (decimal or 0x-hex)");
    }
}

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
    Range r;
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "' (use N or LO..HI)");
    }
    if (r.lo > r.hi) throw UsageError("bad range '" + text + "': lower bound above upper");
    return r;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open graph file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return graph_from_json(text);
    return parse_graph(text);
}

MechanismSpec make_mech(const std::string& name, int k, bool k_given) {
    if (name == "k-partition") {
        if (!k_given) throw UsageError("--mech k-partition needs --k");
        return MechanismSpec::k_partition(k);
    }
    if (k_given) throw UsageError("--k only applies to --mech k-partition");
    return mechanism_from_name(name);
}

struct GuardSetup {
    Guards guards;
    bool env_used = false;
    std::string env_value;
};

GuardSetup resolve_guards(const std::vector<std::string>& cli_overrides) {
    GuardSetup setup;
    if (const char* env = std::getenv("IMPSEL_GUARDS"); env && *env) {
        setup.env_used = true;
        setup.env_value = env;
        try {
            setup.guards.apply_overrides(env);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("IMPSEL_GUARDS: ") + e.what());
        }
    }
    for (const auto& o : cli_overrides) {
        try {
            setup.guards.apply_overrides(o);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--guard: ") + e.what());
        }
    }
    return setup;
}

json config_json(const GuardSetup& setup) {
    json c;
    c["guards"] = setup.guards.describe();
    if (setup.env_used) c["guards_env"] = setup.env_value;
    return c;
}

json mech_json(const MechanismSpec& mech) {
    json m;
    m["name"] = mech.name();
    switch (mech.kind) {
        case MechanismKind::TwoPartition: m["kind"] = "two-partition"; break;
        case MechanismKind::KPartition:
            m["kind"] = "k-partition";
            m["k"] = mech.k;
            break;
        case MechanismKind::Permutation: m["kind"] = "permutation"; break;
    }
    return m;
}

json probs_json(const SelectionDistribution& d) {
    json arr = json::array();
    for (const auto& p : d.probs) arr.push_back(p.str());
    return arr;
}

// --- subcommand bodies ---------------------------------------------------

int cmd_select(const std::string& file, const MechanismSpec& mech, std::uint64_t seed,
               const GuardSetup& setup) {
    Graph g = load_graph(file);
    Prng rng(seed);
    int winner = run_mechanism(g, mech, rng);
    json out;
    out["command"] = "select";
    out["winner"] = winner;
    out["seed"] = seed;
    out["mech"] = mech_json(mech);
    out["config"] = config_json(setup);
    out["config"]["graph_file"] = file;
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_dist(const std::string& file, const MechanismSpec& mech, const GuardSetup& setup) {
    Graph g = load_graph(file);
    SelectionDistribution d = exact_distribution(g, mech, setup.guards);
    json out;
    out["command"] = "dist";
    out["n"] = g.vertex_count();
    out["mech"] = mech_json(mech);
    out["probs"] = probs_json(d);
    out["expected_degree"] = expected_degree(d, g).str();
    out["config"] = config_json(setup);
    out["config"]["graph_file"] = file;
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_ratio(const std::string& file, const MechanismSpec& mech, const GuardSetup& setup) {
    Graph g = load_graph(file);
    RatioReport report = ratio(g, mech, setup.guards, file);
    json out;
    out["command"] = "ratio";
    out["graph_id"] = report.graph_id;
    out["mech"] = mech_json(mech);
    out["expected_degree"] = report.expected_degree.str();
    out["delta"] = report.delta;
    if (report.ratio) {
        out["ratio"] = report.ratio->str();
        out["ratio_float"] = report.ratio->to_double();
    } else {
        out["ratio"] = nullptr;
        out["note"] = "delta zero";
    }
    out["config"] = config_json(setup);
    out["config"]["graph_file"] = file;
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_bounds(const std::string& table, const std::string& delta_range,
               const std::string& k_range, const std::string& n_range,
               const std::string& cls_name, const GuardSetup& setup) {
    std::ostringstream body;
    if (table == "alpha2") {
        Range d = parse_range(delta_range.empty() ? "1..10" : delta_range);
        for (int delta = d.lo; delta <= d.hi; ++delta)
            body << bounds_csv_row({"alpha2", std::nullopt, delta, std::nullopt, alpha2_sum(delta)})
                 << "\n";
    } else if (table == "alphak") {
        Range kr = parse_range(k_range.empty() ? "2..5" : k_range);
        Range d = parse_range(delta_range.empty() ? "1..8" : delta_range);
        for (int k = kr.lo; k <= kr.hi; ++k)
            for (int delta = d.lo; delta <= d.hi; ++delta)
                body << bounds_csv_row({"alpha_k", k, delta, std::nullopt,
                                        alpha_k(k, delta, setup.guards)})
                     << "\n";
    } else if (table == "upper") {
        GraphClass c = class_from_name(cls_name.empty() ? "no-abstention" : cls_name);
        Range nr = parse_range(n_range.empty() ? "3..10" : n_range);
        for (int n = nr.lo; n <= nr.hi; ++n)
            body << bounds_csv_row({"upper", std::nullopt, n, c, upper_bound(n, c)}) << "\n";
    } else {
        throw UsageError("unknown table '" + table + "' (alpha2|alphak|upper)");
    }
    std::cout << "# config guards=" << setup.guards.describe() << "\n"
              << bounds_csv_header() << "\n"
              << body.str();
    return kExitOk;
}

int cmd_verify(const std::string& suite, int max_n, std::uint64_t seed, const GuardSetup& setup) {
    std::vector<CheckResult> checks;
    auto append = [&](std::vector<CheckResult> more) {
        for (auto& c : more) checks.push_back(std::move(c));
    };
    if (suite == "formulas" || suite == "all") append(verify_formulas(setup.guards));
    if (suite == "impartiality" || suite == "all")
        append(verify_impartiality(max_n, seed, setup.guards));
    if (suite == "lemmas" || suite == "all") append(verify_lemmas(seed, setup.guards));
    if (checks.empty())
        throw UsageError("unknown suite '" + suite + "' (impartiality|formulas|lemmas|all)");

    int failed = 0;
    json arr = json::array();
    for (const auto& c : checks) {
        json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(std::move(j));
        if (!c.pass) ++failed;
    }
    json out;
    out["command"] = "verify";
    out["suite"] = suite;
    out["seed"] = seed;
    out["max_n"] = max_n;
    out["checks"] = std::move(arr);
    out["passed"] = static_cast<int>(checks.size()) - failed;
    out["failed"] = failed;
    out["config"] = config_json(setup);
    std::cout << out.dump(2) << "\n";
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_search(int n, const std::string& cls_name, const MechanismSpec& mech, int threads,
               const GuardSetup& setup) {
    GraphClass c = class_from_name(cls_name);
    WorstCase wc = worst_case_search(n, mech, c, setup.guards, threads);
    json out;
    out["command"] = "search";
    out["n"] = n;
    out["class"] = class_name(c);
    out["mech"] = mech_json(mech);
    out["examined"] = wc.graphs_examined;
    out["skipped_delta_zero"] = wc.graphs_skipped;
    if (wc.found) {
        out["min_ratio"] = wc.min_ratio.str();
        out["min_ratio_float"] = wc.min_ratio.to_double();
        out["argmin_index"] = wc.argmin_index;
        json edges = json::array();
        for (auto [u, v] : wc.argmin.edges()) edges.push_back({u, v});
        out["argmin_edges"] = std::move(edges);
    } else {
        out["min_ratio"] = nullptr;
        out["note"] = "no graph in the class has positive maximum degree";
    }
    out["config"] = config_json(setup);
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_mc(const std::string& file, const MechanismSpec& mech, std::uint64_t trials,
           std::uint64_t seed, double conf_delta, int threads, const GuardSetup& setup) {
    Graph g = load_graph(file);
    McEstimate est = estimate(g, mech, trials, seed, threads);
    json out;
    out["command"] = "mc";
    out["trials"] = est.trials;
    out["seed"] = est.seed;
    json freq = json::array();
    for (double f : est.frequencies()) freq.push_back(f);
    out["freq"] = std::move(freq);
    out["mean_degree"] = est.mean_degree;
    out["delta"] = est.delta;
    if (est.delta > 0) {
        out["ratio"] = est.mean_degree / est.delta;
        out["band"] = est.hoeffding_eps(conf_delta);
    } else {
        out["ratio"] = nullptr;
        out["band"] = nullptr;
        out["note"] = "delta zero";
    }
    out["conf_delta"] = conf_delta;
    out["mech"] = mech_json(mech);
    out["config"] = config_json(setup);
    out["config"]["graph_file"] = file;
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_gen(const std::string& gadget, std::optional<int> n, const GuardSetup& setup) {
    Graph g = gen_gadget(gadget, n);
    std::cout << "# gadget " << gadget;
    if (n) std::cout << " n=" << *n;
    std::cout << "\n# config guards=" << setup.guards.describe() << "\n" << serialize_graph(g);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impartial selection mechanisms: exact oracles, bounds, and estimators"};
    app.require_subcommand(1);

    std::vector<std::string> guard_overrides;
    app.add_option("--guard", guard_overrides, "guard override key=value (repeatable)");

    std::string file, mech_name = "two-partition", seed_text = "0", table, cls_name;
    std::string delta_range, k_range, n_range, suite = "all";
    int k = 0, n = 0, max_n = 3, threads = 0;
    std::uint64_t trials = 100000;
    double conf_delta = 1e-6;
    std::optional<int> gadget_n;
    std::string gadget;

    auto add_mech_opts = [&](CLI::App* cmd, bool with_seed) {
        cmd->add_option("--mech", mech_name, "two-partition|k-partition|permutation");
        cmd->add_option("--k", k, "block count for k-partition");
        if (with_seed) cmd->add_option("--seed", seed_text, "seed (decimal or 0x-hex)");
    };

    CLI::App* select = app.add_subcommand("select", "run a mechanism once");
    select->add_option("graph", file, "graph file")->required();
    add_mech_opts(select, true);

    CLI::App* dist = app.add_subcommand("dist", "exact selection distribution");
    dist->add_option("graph", file, "graph file")->required();
    add_mech_opts(dist, false);

    CLI::App* ratio_cmd = app.add_subcommand("ratio", "exact expected-degree ratio");
    ratio_cmd->add_option("graph", file, "graph file")->required();
    add_mech_opts(ratio_cmd, false);

    CLI::App* bounds_cmd = app.add_subcommand("bounds", "performance bound tables as CSV");
    bounds_cmd->add_option("--table", table, "alpha2|alphak|upper")->required();
    bounds_cmd->add_option("--delta", delta_range, "delta or range LO..HI");
    bounds_cmd->add_option("--k", k_range, "k or range LO..HI");
    bounds_cmd->add_option("--n", n_range, "n or range LO..HI");
    bounds_cmd->add_option("--class", cls_name, "all|no-abstention|outdegree-one");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites");
    verify_cmd->add_option("--suite", suite, "impartiality|formulas|lemmas|all");
    verify_cmd->add_option("--max-n", max_n, "largest exhaustive size (4 adds the seeded n=4 corpus)");
    verify_cmd->add_option("--seed", seed_text, "corpus seed");

    CLI::App* search_cmd = app.add_subcommand("search", "worst-case ratio over a graph class");
    search_cmd->add_option("--n", n, "graph size")->required();
    search_cmd->add_option("--class", cls_name, "all|no-abstention|outdegree-one")->required();
    add_mech_opts(search_cmd, false);
    search_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate");
    mc_cmd->add_option("graph", file, "graph file")->required();
    add_mech_opts(mc_cmd, true);
    mc_cmd->add_option("--trials", trials, "number of trials");
    mc_cmd->add_option("--conf-delta", conf_delta, "Hoeffding confidence delta");
    mc_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI::App* gen_cmd = app.add_subcommand("gen", "write a named instance as an edge list");
    gen_cmd->add_option("--gadget", gadget, "instance name (see README catalog)")->required();
    gen_cmd->add_option("--n", gadget_n, "size for parameterized families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        GuardSetup setup = resolve_guards(guard_overrides);
        bool k_given = k != 0;
        if (select->parsed())
            return cmd_select(file, make_mech(mech_name, k, k_given), parse_seed(seed_text), setup);
        if (dist->parsed()) return cmd_dist(file, make_mech(mech_name, k, k_given), setup);
        if (ratio_cmd->parsed()) return cmd_ratio(file, make_mech(mech_name, k, k_given), setup);
        if (bounds_cmd->parsed())
            return cmd_bounds(table, delta_range, k_range, n_range, cls_name, setup);
        if (verify_cmd->parsed()) return cmd_verify(suite, max_n, parse_seed(seed_text), setup);
        if (search_cmd->parsed())
            return cmd_search(n, cls_name, make_mech(mech_name, k, k_given), threads, setup);
        if (mc_cmd->parsed())
            return cmd_mc(file, make_mech(mech_name, k, k_given), trials, parse_seed(seed_text),
                          conf_delta, threads, setup);
        if (gen_cmd->parsed()) return cmd_gen(gadget, gadget_n, setup);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
