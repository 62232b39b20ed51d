// Command-line front end: experiment CSV emitters plus a one-shot
// interpolation solve. Exit codes: 0 success, 2 usage or input-format error,
// 1 numerical failure (singular matrix, invalid node set, out-of-range
// degree for a table-backed method).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bernvand/bernvand.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Whitespace-separated numbers; '#' starts a comment running to end of line.
std::vector<double> read_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open file: " + path);
    std::vector<double> vals;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            if (tok[0] == '#') break;
            try {
                std::size_t used = 0;
                double v = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument("trailing characters");
                vals.push_back(v);
            } catch (const std::exception&) {
                throw UsageError(path + ": line " + std::to_string(lineno) +
                                 ": not a number: '" + tok + "'");
            }
        }
    }
    return vals;
}

int run_solve(int n, const std::string& method, const std::string& nodes_spec,
              const std::string& rhs_path, std::uint64_t seed) {
    using namespace bernvand;
    const bool equispaced_spec = nodes_spec == "equispaced";
    if (method == "dft-equispaced" && !equispaced_spec)
        throw UsageError("method dft-equispaced requires --nodes equispaced");

    std::vector<double> b = read_values_file(rhs_path);
    if (b.size() != static_cast<std::size_t>(n) + 1)
        throw UsageError(rhs_path + ": expected " + std::to_string(n + 1) +
                         " values, found " + std::to_string(b.size()));

    auto make_nodes = [&]() -> NodeSet {
        if (equispaced_spec) return equispaced_nodes(n);
        if (nodes_spec == "stratified") return random_stratified_nodes(n, seed);
        std::vector<double> xs = read_values_file(nodes_spec);
        if (xs.size() != static_cast<std::size_t>(n) + 1)
            throw UsageError(nodes_spec + ": expected " + std::to_string(n + 1) +
                             " nodes, found " + std::to_string(xs.size()));
        return NodeSet(std::move(xs));
    };

    std::vector<double> c;
    if (method == "lu") {
        c = solve(SolveMethod::LU, make_nodes(), b);
    } else if (method == "bezout") {
        c = solve(SolveMethod::BezoutInverse, make_nodes(), b);
    } else if (method == "dft" || method == "dft-equispaced") {
        if (equispaced_spec)
            c = factored_inverse_equispaced(n).apply(b);
        else
            c = factored_inverse(make_nodes()).apply(b);
    }
    for (double v : c) std::printf("%.17g\n", v);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bernstein-Vandermonde interpolation: solvers and experiment drivers"};
    app.require_subcommand(1);

    int nmax = 20;
    std::uint64_t seed = 0;
    int trials = 1;
    std::string out;
    auto add_experiment_flags = [&](CLI::App* sub) {
        sub->add_option("--nmax", nmax, "largest degree (rows run n = 1..nmax)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--trials", trials, "random draws averaged per degree")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", out, "output CSV path")->required();
    };
    CLI::App* cond = app.add_subcommand(
        "conditioning", "condition numbers and upper bound on equispaced nodes");
    CLI::App* equi = app.add_subcommand(
        "equispaced", "solver accuracy on equispaced nodes (all three methods)");
    CLI::App* rand_nodes = app.add_subcommand(
        "random", "solver accuracy on randomly jittered nodes");
    CLI::App* block = app.add_subcommand(
        "blocklu", "block solver accuracy on the 2- and 3-simplex");
    for (CLI::App* sub : {cond, equi, rand_nodes, block}) add_experiment_flags(sub);

    int n = 0;
    std::string method, nodes_spec = "equispaced", rhs_path;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one interpolation problem");
    solve_cmd->add_option("--n", n, "polynomial degree")->required()->check(CLI::PositiveNumber);
    solve_cmd->add_option("--method", method, "solution method")
        ->required()
        ->check(CLI::IsMember({"lu", "bezout", "dft", "dft-equispaced"}));
    solve_cmd->add_option("--nodes", nodes_spec,
                          "'equispaced', 'stratified', or a file of n+1 nodes");
    solve_cmd->add_option("--rhs", rhs_path, "file with n+1 right-hand-side values")->required();
    solve_cmd->add_option("--seed", seed, "seed for stratified nodes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        bernvand::ExperimentConfig cfg;
        cfg.n_max = nmax;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.output_path = out;
        if (cond->parsed()) {
            cfg.experiment = bernvand::Experiment::Conditioning;
            bernvand::run_experiment(cfg);
        } else if (equi->parsed()) {
            cfg.experiment = bernvand::Experiment::Equispaced;
            bernvand::run_experiment(cfg);
        } else if (rand_nodes->parsed()) {
            cfg.experiment = bernvand::Experiment::RandomNodes;
            bernvand::run_experiment(cfg);
        } else if (block->parsed()) {
            cfg.experiment = bernvand::Experiment::BlockLu;
            bernvand::run_experiment(cfg);
        } else if (solve_cmd->parsed()) {
            return run_solve(n, method, nodes_spec, rhs_path, seed);
        }
        return 0;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
