#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace conjpair;
using namespace conjpair::cli;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    int level = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config = true) {
    auto* c = cmd->add_option("--config", opts.config_path, "config file (TOML-style)");
    if (needs_config) c->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
    cmd->add_option("--level", opts.level, "mesh refinement override");
    cmd->add_option("--seed", opts.seed, "solver seed override")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
}

RunConfig load(const CommonOpts& opts) {
    RunConfig cfg = interpret_config(parse_config_file(opts.config_path));
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.level > 0) cfg.level = opts.level;
    if (opts.seed_set) cfg.solver.seed = opts.seed;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conjugate harmonic pairs in 3D with respect to a unitary gradient"};
    app.require_subcommand(1);

    CommonOpts mesh_opts, solve_opts, verify_opts, dtn_opts, conv_opts;
    std::vector<std::string> verify_files;
    std::string cr_matrix, cr_alpha = "0.5,0.5,0";

    auto* mesh_cmd = app.add_subcommand("mesh", "build a mesh, write VTK and stats");
    add_common(mesh_cmd, mesh_opts);

    auto* solve_cmd = app.add_subcommand("solve", "run the alternating pair solver");
    add_common(solve_cmd, solve_opts);

    auto* verify_cmd = app.add_subcommand("verify", "residual report for stored fields");
    add_common(verify_cmd, verify_opts);
    verify_cmd->add_option("files", verify_files, "VTK files holding u, v, w point data")
        ->required();

    auto* dtn_cmd = app.add_subcommand("dtn", "Dirichlet-to-Neumann experiment");
    add_common(dtn_cmd, dtn_opts);

    auto* conv_cmd = app.add_subcommand("convergence", "refinement study table");
    add_common(conv_cmd, conv_opts);

    auto* cr_cmd = app.add_subcommand("check-cr", "relaxed Cauchy-Riemann residual of a matrix");
    cr_cmd->add_option("--matrix", cr_matrix, "9 row-major entries, comma separated")
        ->required();
    cr_cmd->add_option("--alpha", cr_alpha, "3 exponents, comma separated (default 0.5,0.5,0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (mesh_cmd->parsed()) return cmd_mesh(load(mesh_opts));
        if (solve_cmd->parsed()) return cmd_solve(load(solve_opts));
        if (verify_cmd->parsed()) return cmd_verify(load(verify_opts), verify_files);
        if (dtn_cmd->parsed()) return cmd_dtn(load(dtn_opts));
        if (conv_cmd->parsed()) return cmd_convergence(load(conv_opts));
        if (cr_cmd->parsed()) return cmd_check_cr(cr_matrix, cr_alpha);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_code_for(ex);
    }
    return kExitConfig;
}
