#ifndef CONJPAIR_MESH_HPP
#define CONJPAIR_MESH_HPP

#include "conjpair/types.hpp"

#include <array>
#include <vector>

namespace conjpair {

enum class Domain { Cube, Ball };

std::string domain_name(Domain d);
Domain domain_from_name(const std::string& name);

struct BoundaryFace {
    std::array<int, 3> vertices;
    int tet;           // parent element
    Vec3 normal;       // outward unit normal
    double area;
};

/// Tetrahedral P1 mesh of a model domain. Immutable after construction;
/// per-element volumes and basis gradients are precomputed. Every tet has
/// positive signed volume under its stored vertex ordering.
struct Mesh {
    Eigen::Matrix<double, Eigen::Dynamic, 3> vertices;
    Eigen::Matrix<int, Eigen::Dynamic, 4> tets;
    std::vector<BoundaryFace> boundary_faces;
    Domain domain = Domain::Cube;

    Eigen::VectorXd volumes;  // per tet
    // basis_gradients[e].col(i) = gradient of the i-th local hat function on tet e;
    // the four columns sum to zero exactly (the first is stored as minus the others).
    std::vector<Eigen::Matrix<double, 3, 4>> basis_gradients;
    std::vector<char> vertex_on_boundary;

    int num_vertices() const { return static_cast<int>(vertices.rows()); }
    int num_tets() const { return static_cast<int>(tets.rows()); }

    double total_volume() const { return volumes.sum(); }
    double surface_area() const;

    /// Volume of the polyhedron enclosed by the boundary faces, via the
    /// divergence theorem. Independent of the tet decomposition.
    double enclosed_volume() const;

    std::vector<int> boundary_vertex_indices() const;
    std::vector<int> interior_vertex_indices() const;

    /// Integral of the P1 interpolant over the domain (exact).
    double integrate(const ScalarField& f) const;
    /// Mean of the P1 interpolant over the domain.
    double mean(const ScalarField& f) const;
};

/// Structured mesh of the unit cube (0,1)^3: n^3 voxels, each split into
/// 6 tets sharing the voxel diagonal. Throws InvalidParameterError for n < 1.
Mesh build_cube_mesh(int n);

/// Mesh of the closed unit ball at the origin: a structured cube mesh of
/// (-1,1)^3 with 2n cells per axis, every vertex scaled radially so that the
/// cube boundary lands on the unit sphere. Throws InvalidParameterError for n < 1.
Mesh build_ball_mesh(int n);

/// Per-element gradient of the P1 interpolant, one row per tet.
/// Exact for nodal samples of affine functions.
Eigen::Matrix<double, Eigen::Dynamic, 3> element_gradients(const Mesh& mesh,
                                                           const ScalarField& field);

} // namespace conjpair

#endif
