#include "conjpair/dtn.hpp"
#include "conjpair/io.hpp"
#include "conjpair/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace conjpair;

namespace {

WSpec wspec_from_kwargs(const std::string& kind, py::object axis, double offset,
                        py::object point, py::object direction, py::object values) {
    if (kind == "coordinate") {
        CoordinateW c;
        c.axis = axis.is_none() ? 2 : axis.cast<int>();
        c.offset = offset;
        return c;
    }
    if (kind == "dist_point") return DistToPointW{point.cast<Vec3>()};
    if (kind == "dist_axis") return DistToAxisW{point.cast<Vec3>(), direction.cast<Vec3>()};
    if (kind == "nodal") return NodalW{values.cast<Eigen::VectorXd>()};
    throw InvalidParameterError("w kind must be coordinate, dist_point, dist_axis or nodal");
}

SolverConfig config_from_kwargs(double tol, int maxit, double cg_tol, int cg_maxit,
                                const std::string& mode, std::uint64_t seed) {
    SolverConfig cfg;
    cfg.tol = tol;
    cfg.maxit = maxit;
    cfg.cg_tol = cg_tol;
    cfg.cg_maxit = cg_maxit;
    cfg.mode = mode_from_name(mode);
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(conjpair, m) {
    m.doc() = "Conjugate harmonic pairs in 3D with respect to a unitary gradient";

    py::register_exception<Error>(m, "ConjpairError");

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("num_vertices", &Mesh::num_vertices)
        .def_property_readonly("num_tets", &Mesh::num_tets)
        .def_property_readonly("vertices",
                               [](const Mesh& mesh) { return Eigen::MatrixXd(mesh.vertices); })
        .def_property_readonly("tets",
                               [](const Mesh& mesh) { return Eigen::MatrixXi(mesh.tets); })
        .def_property_readonly("domain",
                               [](const Mesh& mesh) { return domain_name(mesh.domain); })
        .def("total_volume", &Mesh::total_volume)
        .def("surface_area", &Mesh::surface_area)
        .def("boundary_vertex_indices", &Mesh::boundary_vertex_indices)
        .def("mean", &Mesh::mean, py::arg("field"))
        .def("__repr__", [](const Mesh& mesh) {
            return "<conjpair.Mesh " + domain_name(mesh.domain) + ", " +
                   std::to_string(mesh.num_vertices()) + " vertices, " +
                   std::to_string(mesh.num_tets()) + " tets>";
        });

    py::class_<CoefficientField>(m, "CoefficientField")
        .def_readonly("values", &CoefficientField::values)
        .def_readonly("bound", &CoefficientField::bound);

    py::class_<PairSolveReport>(m, "PairSolveReport")
        .def_readonly("u", &PairSolveReport::u)
        .def_readonly("v", &PairSolveReport::v)
        .def_readonly("mu", &PairSolveReport::mu)
        .def_readonly("iterations", &PairSolveReport::iterations)
        .def_readonly("restarts", &PairSolveReport::restarts)
        .def_readonly("converged", &PairSolveReport::converged)
        .def_readonly("residual_history", &PairSolveReport::residual_history);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("r1", &ResidualReport::r1)
        .def_readonly("r2", &ResidualReport::r2)
        .def_readonly("orth", &ResidualReport::orth)
        .def_readonly("det_mean", &ResidualReport::det_mean)
        .def_readonly("norm_gap", &ResidualReport::norm_gap)
        .def_readonly("r1_abs", &ResidualReport::r1_abs)
        .def_readonly("r2_abs", &ResidualReport::r2_abs)
        .def_readonly("orth_abs", &ResidualReport::orth_abs);

    py::class_<DtnMatrix>(m, "DtnMatrix")
        .def_readonly("mat", &DtnMatrix::mat)
        .def_readonly("boundary_nodes", &DtnMatrix::boundary_nodes);

    py::class_<HwSolveReport>(m, "HwSolveReport")
        .def_readonly("solution", &HwSolveReport::solution)
        .def_readonly("basis_size", &HwSolveReport::basis_size)
        .def_readonly("rank_deficiency", &HwSolveReport::rank_deficiency);

    m.def("build_cube_mesh", &build_cube_mesh, py::arg("n"));
    m.def("build_ball_mesh", &build_ball_mesh, py::arg("n"));
    m.def("element_gradients", &element_gradients, py::arg("mesh"), py::arg("field"));

    m.def(
        "sample_w",
        [](const Mesh& mesh, const std::string& kind, py::object axis, double offset,
           py::object point, py::object direction, py::object values) {
            return sample_w(wspec_from_kwargs(kind, axis, offset, point, direction, values),
                            mesh);
        },
        py::arg("mesh"), py::arg("kind"), py::arg("axis") = py::none(),
        py::arg("offset") = 0.0, py::arg("point") = py::none(),
        py::arg("direction") = py::none(), py::arg("values") = py::none());

    m.def(
        "unitarity_report",
        [](const Mesh& mesh, const ScalarField& w) {
            const auto rep = unitarity_report(mesh, w);
            return py::make_tuple(rep.max_dev, rep.mean_dev);
        },
        py::arg("mesh"), py::arg("w"));

    m.def(
        "make_gamma",
        [](const Mesh& mesh, const std::string& kind, double value, py::object center,
           double radius, double inside, double outside, double bound, py::object w) {
            GammaSpec spec;
            spec.value = value;
            spec.radius = radius;
            spec.inside = inside;
            spec.outside = outside;
            spec.bound = bound;
            if (!center.is_none()) spec.center = center.cast<Vec3>();
            if (kind == "constant") spec.kind = GammaSpec::Kind::Constant;
            else if (kind == "two_phase") spec.kind = GammaSpec::Kind::TwoPhase;
            else if (kind == "absw") spec.kind = GammaSpec::Kind::AbsW;
            else if (kind == "absw2") spec.kind = GammaSpec::Kind::AbsW2;
            else throw InvalidParameterError("gamma kind must be constant, two_phase, absw or absw2");
            ScalarField wf;
            const ScalarField* wp = nullptr;
            if (!w.is_none()) {
                wf = w.cast<ScalarField>();
                wp = &wf;
            }
            return make_gamma(spec, mesh, wp);
        },
        py::arg("mesh"), py::arg("kind"), py::arg("value") = 1.0,
        py::arg("center") = py::none(), py::arg("radius") = 0.0, py::arg("inside") = 1.0,
        py::arg("outside") = 1.0, py::arg("bound") = 0.1, py::arg("w") = py::none());

    m.def(
        "conjugate_of",
        [](const Mesh& mesh, const ScalarField& v, const ScalarField& w,
           const CoefficientField& gamma, double tol, int maxit, double cg_tol, int cg_maxit,
           const std::string& mode, std::uint64_t seed) {
            return conjugate_of(mesh, v, w, gamma,
                                config_from_kwargs(tol, maxit, cg_tol, cg_maxit, mode, seed));
        },
        py::arg("mesh"), py::arg("v"), py::arg("w"), py::arg("gamma"), py::arg("tol") = 1e-10,
        py::arg("maxit") = 500, py::arg("cg_tol") = 1e-12, py::arg("cg_maxit") = 0,
        py::arg("mode") = "unitary", py::arg("seed") = 42);

    m.def(
        "dual_conjugate_of",
        [](const Mesh& mesh, const ScalarField& u, const ScalarField& w,
           const CoefficientField& gamma, double tol, int maxit, double cg_tol, int cg_maxit,
           const std::string& mode, std::uint64_t seed) {
            return dual_conjugate_of(
                mesh, u, w, gamma, config_from_kwargs(tol, maxit, cg_tol, cg_maxit, mode, seed));
        },
        py::arg("mesh"), py::arg("u"), py::arg("w"), py::arg("gamma"), py::arg("tol") = 1e-10,
        py::arg("maxit") = 500, py::arg("cg_tol") = 1e-12, py::arg("cg_maxit") = 0,
        py::arg("mode") = "unitary", py::arg("seed") = 42);

    m.def(
        "alternating_pair_solve",
        [](const Mesh& mesh, const ScalarField& w, py::object v0, py::object gamma,
           double tol, int maxit, double cg_tol, int cg_maxit, const std::string& mode,
           std::uint64_t seed) {
            ScalarField v0f;
            const ScalarField* v0p = nullptr;
            if (!v0.is_none()) {
                v0f = v0.cast<ScalarField>();
                v0p = &v0f;
            }
            CoefficientField gf;
            const CoefficientField* gp = nullptr;
            if (!gamma.is_none()) {
                gf = gamma.cast<CoefficientField>();
                gp = &gf;
            }
            return alternating_pair_solve(
                mesh, w, v0p, gp, config_from_kwargs(tol, maxit, cg_tol, cg_maxit, mode, seed));
        },
        py::arg("mesh"), py::arg("w"), py::arg("v0") = py::none(),
        py::arg("gamma") = py::none(), py::arg("tol") = 1e-10, py::arg("maxit") = 500,
        py::arg("cg_tol") = 1e-12, py::arg("cg_maxit") = 0, py::arg("mode") = "unitary",
        py::arg("seed") = 42);

    m.def(
        "residual_report",
        [](const Mesh& mesh, const ScalarField& u, const ScalarField& v, const ScalarField& w,
           py::object gamma, const std::string& mode) {
            CoefficientField gf;
            const CoefficientField* gp = nullptr;
            if (!gamma.is_none()) {
                gf = gamma.cast<CoefficientField>();
                gp = &gf;
            }
            return residual_report(mesh, u, v, w, gp, mode_from_name(mode));
        },
        py::arg("mesh"), py::arg("u"), py::arg("v"), py::arg("w"), py::arg("gamma") = py::none(),
        py::arg("mode") = "unitary");

    m.def(
        "relaxed_cr_check",
        [](const Eigen::Matrix3d& J, double a1, double a2, double a3) {
            return relaxed_cr_check(J, ExponentTriple(a1, a2, a3));
        },
        py::arg("J"), py::arg("a1"), py::arg("a2"), py::arg("a3"));

    m.def(
        "assemble_dtn",
        [](const Mesh& mesh, const CoefficientField& gamma, double cg_tol, int cg_maxit) {
            SolverConfig cfg;
            cfg.cg_tol = cg_tol;
            cfg.cg_maxit = cg_maxit;
            return assemble_dtn(mesh, gamma, cfg);
        },
        py::arg("mesh"), py::arg("gamma"), py::arg("cg_tol") = 1e-12, py::arg("cg_maxit") = 0);

    m.def("dtn_distance", &dtn_distance, py::arg("a"), py::arg("b"));

    m.def(
        "solve_in_hw",
        [](const Mesh& mesh, const ScalarField& w, const Eigen::VectorXd& f, int bins,
           py::object gamma) {
            CoefficientField g;
            if (gamma.is_none()) {
                g.values = Eigen::VectorXd::Ones(mesh.num_tets());
                g.bound = 1.0;
            } else {
                g = gamma.cast<CoefficientField>();
            }
            return solve_in_hw(mesh, w, assemble_stiffness(mesh, g), f, bins);
        },
        py::arg("mesh"), py::arg("w"), py::arg("f"), py::arg("bins"),
        py::arg("gamma") = py::none());

    m.def(
        "dense_eig_oracle",
        [](const Mesh& mesh, const ScalarField& w, py::object gamma, const std::string& mode,
           int dof_limit) {
            CoefficientField gf;
            const CoefficientField* gp = nullptr;
            if (!gamma.is_none()) {
                gf = gamma.cast<CoefficientField>();
                gp = &gf;
            }
            const auto [wa, wd] = mode_weights(mesh, w, mode_from_name(mode), gp);
            const auto oracle = dense_eig_oracle(assemble_stiffness(mesh, wa),
                                                 assemble_stiffness(mesh, wd),
                                                 assemble_det_form(mesh, w), dof_limit);
            return py::make_tuple(oracle.eigenvalues, oracle.eigenvectors);
        },
        py::arg("mesh"), py::arg("w"), py::arg("gamma") = py::none(),
        py::arg("mode") = "unitary", py::arg("dof_limit") = 3000);

    m.def(
        "write_vtk",
        [](const std::string& path, const Mesh& mesh, const NamedFields& point_fields,
           const NamedFields& cell_fields) {
            write_vtk(path, mesh, point_fields, cell_fields);
        },
        py::arg("path"), py::arg("mesh"), py::arg("point_fields") = NamedFields{},
        py::arg("cell_fields") = NamedFields{});
}
