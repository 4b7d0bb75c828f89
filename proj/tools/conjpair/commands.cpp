#include "commands.hpp"

#include "conjpair/io.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

namespace conjpair::cli {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

Mesh build_mesh(const RunConfig& cfg) {
    return cfg.domain == Domain::Cube ? build_cube_mesh(cfg.level) : build_ball_mesh(cfg.level);
}

ScalarField require_w(const RunConfig& cfg, const Mesh& mesh) {
    if (!cfg.w) throw ConfigError("missing [w] table");
    return sample_w(*cfg.w, mesh);
}

CoefficientField gamma_for(const RunConfig& cfg, const Mesh& mesh, const ScalarField* w) {
    GammaSpec spec;  // constant 1 unless configured
    if (cfg.gamma) spec = *cfg.gamma;
    return make_gamma(spec, mesh, w);
}

std::vector<double> parse_csv_numbers(const std::string& text, size_t expected,
                                      const std::string& what) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(what + ": bad number '" + item + "'");
        }
    }
    if (out.size() != expected)
        throw ConfigError(what + ": expected " + std::to_string(expected) + " numbers, got " +
                          std::to_string(out.size()));
    return out;
}

}  // namespace

int exit_code_for(const std::exception& ex) {
    if (dynamic_cast<const ConvergenceError*>(&ex) != nullptr) return kExitNoConvergence;
    if (dynamic_cast<const DegenerateFieldError*>(&ex) != nullptr) return kExitNoConvergence;
    return kExitConfig;
}

int cmd_mesh(const RunConfig& cfg) {
    const Mesh mesh = build_mesh(cfg);
    write_vtk(out_path(cfg, "mesh.vtk"), mesh);

    JsonWriter w;
    w.begin_object();
    w.field("domain", domain_name(mesh.domain));
    w.field("level", cfg.level);
    w.field("vertices", mesh.num_vertices());
    w.field("tets", mesh.num_tets());
    w.field("volume", mesh.total_volume());
    w.field("surface_area", mesh.surface_area());
    w.end_object();
    write_text(out_path(cfg, "mesh_stats.json"), w.str() + "\n");

    std::cout << "mesh: " << mesh.num_vertices() << " vertices, " << mesh.num_tets()
              << " tets, volume " << format_double(mesh.total_volume()) << "\n";
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
    const Mesh mesh = build_mesh(cfg);
    const ScalarField w = require_w(cfg, mesh);

    const CoefficientField gamma = gamma_for(cfg, mesh, &w);
    const CoefficientField* gamma_ptr = cfg.solver.mode == Mode::Gamma ? &gamma : nullptr;
    const ScalarField* v0 = cfg.v0 == "w" ? &w : nullptr;

    const PairSolveReport report = alternating_pair_solve(mesh, w, v0, gamma_ptr, cfg.solver);
    write_text(out_path(cfg, "pair_report.json"), to_json(report));
    write_vtk(out_path(cfg, "fields.vtk"), mesh, {{"u", report.u}, {"v", report.v}, {"w", w}},
              {{"gamma", gamma.values}});

    std::cout << "solve: mu " << format_double(report.mu) << ", " << report.iterations
              << " sweeps, converged " << (report.converged ? "yes" : "no") << "\n";
    return report.converged ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& files) {
    if (files.empty()) throw ConfigError("verify: no field files given");
    const Mesh mesh = build_mesh(cfg);

    std::map<std::string, Eigen::VectorXd> fields;
    for (const auto& file : files) {
        const VtkPointData data = read_vtk_point_data(file);
        if (data.num_points != mesh.num_vertices())
            throw DimensionError("verify: '" + file + "' has " +
                                 std::to_string(data.num_points) + " points, mesh has " +
                                 std::to_string(mesh.num_vertices()));
        for (const auto& [name, values] : data.fields) fields[name] = values;
    }
    for (const char* need : {"u", "v", "w"})
        if (!fields.count(need))
            throw ConfigError(std::string("verify: field '") + need +
                              "' not found in the given files");

    const ScalarField& w = fields.at("w");
    const CoefficientField gamma = gamma_for(cfg, mesh, &w);
    const CoefficientField* gamma_ptr = cfg.solver.mode == Mode::Gamma ? &gamma : nullptr;
    const ResidualReport report =
        residual_report(mesh, fields.at("u"), fields.at("v"), w, gamma_ptr, cfg.solver.mode);
    write_text(out_path(cfg, "residual_report.json"), to_json(report));

    std::cout << "verify: r1 " << format_double(report.r1) << ", r2 "
              << format_double(report.r2) << ", orth " << format_double(report.orth) << "\n";
    return kExitOk;
}

int cmd_dtn(const RunConfig& cfg) {
    const Mesh mesh = build_mesh(cfg);

    std::vector<ScalarField> ws;
    for (const auto& spec : cfg.w_list) ws.push_back(sample_w(spec, mesh));

    if (cfg.gamma_list.empty()) throw ConfigError("dtn: no [[gamma]] tables given");
    std::vector<CoefficientField> gammas;
    for (const auto& spec : cfg.gamma_list) {
        const bool needs_w =
            spec.kind == GammaSpec::Kind::AbsW || spec.kind == GammaSpec::Kind::AbsW2;
        if (needs_w && ws.empty())
            throw ConfigError("dtn: |grad w| gamma kinds need at least one [[w]] table");
        gammas.push_back(make_gamma(spec, mesh, needs_w ? &ws.front() : nullptr));
    }

    const DtnExperimentReport report = dtn_experiment(mesh, gammas, ws, cfg.solver);
    write_text(out_path(cfg, "dtn_experiment.json"), to_json(report));
    for (size_t i = 0; i < gammas.size(); ++i) {
        if (!report.gamma_ok[i]) continue;
        const DtnMatrix dtn = assemble_dtn(mesh, gammas[i], cfg.solver);
        const std::string stem = "dtn_" + std::to_string(i);
        write_dense_csv(out_path(cfg, stem + ".csv"), dtn.mat);
        write_matrix_market(out_path(cfg, stem + ".mtx"), dtn.mat);
    }

    std::cout << "dtn: " << gammas.size() << " conductivities, " << ws.size() << " w fields\n";
    return kExitOk;
}

int cmd_convergence(const RunConfig& cfg) {
    const StudyCase kind = study_case_from_name(cfg.study_case);
    std::vector<int> levels = cfg.study_levels;
    if (levels.empty()) {
        switch (kind) {
            case StudyCase::QuadraticPair: levels = {8, 16, 32}; break;
            case StudyCase::AffinePair: levels = {2, 4, 8}; break;
            case StudyCase::BallUnitarity: levels = {2, 3, 4}; break;
        }
    }
    const ConvergenceStudy study = convergence_study(kind, levels, cfg.solver);
    write_convergence_csv(out_path(cfg, "convergence.csv"), study);

    std::cout << "convergence " << cfg.study_case << ": fitted rate "
              << format_double(study.fitted_rate) << " (monotone "
              << (study.monotone ? "yes" : "no") << ")\n";
    return kExitOk;
}

int cmd_check_cr(const std::string& matrix_csv, const std::string& alpha_csv) {
    const auto entries = parse_csv_numbers(matrix_csv, 9, "check-cr matrix");
    Eigen::Matrix3d J;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) J(i, j) = entries[3 * i + j];
    const auto a = parse_csv_numbers(alpha_csv, 3, "check-cr alpha");
    const ExponentTriple alpha(a[0], a[1], a[2]);
    const double residual = relaxed_cr_check(J, alpha);

    JsonWriter w;
    w.begin_object();
    w.field("det", J.determinant());
    w.field("residual", residual);
    w.end_object();
    std::cout << w.str() << "\n";
    return kExitOk;
}

} // namespace conjpair::cli
