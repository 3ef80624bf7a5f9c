// graphsl: experiment driver. Exit codes: 0 pass, 1 failed check or error, 2 usage.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphsl/error.hpp"
#include "graphsl/experiment.hpp"

namespace {

struct RawOptions {
    std::vector<std::string> alpha_grid;
    std::vector<std::string> radii;
};

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

void add_common(CLI::App* app, graphsl::ExperimentConfig& cfg, RawOptions& raw) {
    app->set_config("--config", "", "key = value file; command-line flags win");
    app->add_option("--tree-b", cfg.tree_b, "branching b of the model tree")->capture_default_str();
    app->add_option("--tree-depth", cfg.tree_depth, "truncation depth R")->capture_default_str();
    app->add_option("--measure-c", cfg.measure_c, "vertex measure c")->capture_default_str();
    app->add_option("--alpha-grid", raw.alpha_grid, "comma-separated alphas (default 0.5,1,1.5,2)");
    app->add_option("--potential-scale", cfg.potential_scale, "C0 in V = C0 (1 + d)^-alpha")
        ->capture_default_str();
    app->add_option("--gamma", cfg.gamma, "boundary value gamma")->capture_default_str();
    app->add_option("--lambda-cap", cfg.lambda_cap, "Lambda in the volume-growth sum")
        ->capture_default_str();
    app->add_option("--lambda-xi", cfg.lambda_xi, "lambda in the time weight")->capture_default_str();
    app->add_option("--radii", raw.radii, "radius schedule, 'a..b' or a comma list (default 2..12)");
    app->add_option("--tol", cfg.tol, "exhaustion convergence tolerance")->capture_default_str();
    app->add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    app->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app->add_option("--normalize-m", cfg.normalize_m, "level M of the normalization run")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schroedinger operators on weighted graphs: experiments and verification"};
    app.require_subcommand(1);

    graphsl::ExperimentConfig cfg;
    RawOptions raw;

    // Shared options live on the top level so that config-file keys apply
    // without sections; subcommands fall through to them.
    add_common(&app, cfg, raw);
    app.add_option("--trials", cfg.trials, "weak maximum principle trials (verify)")
        ->capture_default_str();
    app.add_option("--quadrature-nodes", cfg.quadrature_nodes,
                   "time nodes for the energy estimate (verify)")
        ->capture_default_str();

    auto* dichotomy = app.add_subcommand("dichotomy", "exhaustion over the alpha grid with CSV output");
    dichotomy->fallthrough();

    auto* verify = app.add_subcommand("verify", "run every verification suite");
    verify->fallthrough();
    bool negate_laplacian = false;
    verify->add_flag("--inject-laplacian-fault", negate_laplacian,
                     "negate the Laplacian in the calculus suite (mutation check)");

    auto* solve = app.add_subcommand("solve", "solve the Dirichlet problem in a graph file");
    solve->fallthrough();
    solve->add_option("problem", cfg.problem_file, "graph file with omega/dirichlet blocks")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
        if (!raw.alpha_grid.empty()) cfg.alpha_grid = graphsl::parse_real_list(join(raw.alpha_grid));
        if (!raw.radii.empty()) cfg.radii = graphsl::parse_radii(join(raw.radii));
        if (negate_laplacian) cfg.laplacian_sign = -1.0;
        graphsl::validate(cfg);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const graphsl::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (*dichotomy) return graphsl::cmd_dichotomy(cfg, std::cout);
    if (*verify) return graphsl::cmd_verify(cfg, std::cout);
    return graphsl::cmd_solve(cfg, std::cout);
}
