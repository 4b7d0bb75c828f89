#include "conjpair/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace conjpair {

std::string domain_name(Domain d) {
    return d == Domain::Cube ? "cube" : "ball";
}

Domain domain_from_name(const std::string& name) {
    if (name == "cube") return Domain::Cube;
    if (name == "ball") return Domain::Ball;
    throw InvalidParameterError("unknown domain '" + name + "' (expected cube or ball)");
}

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::Unitary: return "unitary";
        case Mode::WeightedW2: return "weighted_w2";
        case Mode::Gamma: return "gamma";
        case Mode::GammaAbsW: return "gamma_absw";
    }
    return "unitary";
}

Mode mode_from_name(const std::string& name) {
    if (name == "unitary") return Mode::Unitary;
    if (name == "weighted_w2") return Mode::WeightedW2;
    if (name == "gamma") return Mode::Gamma;
    if (name == "gamma_absw") return Mode::GammaAbsW;
    throw InvalidParameterError("unknown solver mode '" + name + "'");
}

namespace {

double tet_signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return (b - a).cross(c - a).dot(d - a) / 6.0;
}

// The six tets of the Kuhn split of a voxel walk the edges of the voxel in
// every axis order; all share the main diagonal corner0 -> corner7.
constexpr int kAxisOrders[6][3] = {
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
};

void finalize_mesh(Mesh& mesh) {
    const int nt = mesh.num_tets();

    // Orientation fixed once here: swap two vertices when the signed volume
    // comes out negative, reject degenerate elements.
    mesh.volumes.resize(nt);
    mesh.basis_gradients.resize(nt);
    for (int e = 0; e < nt; ++e) {
        Vec3 p[4];
        for (int i = 0; i < 4; ++i) p[i] = mesh.vertices.row(mesh.tets(e, i));
        double vol = tet_signed_volume(p[0], p[1], p[2], p[3]);
        if (vol < 0) {
            std::swap(mesh.tets(e, 2), mesh.tets(e, 3));
            std::swap(p[2], p[3]);
            vol = -vol;
        }
        if (!(vol > 1e-300)) throw InvalidParameterError("degenerate tet in mesh construction");
        mesh.volumes[e] = vol;

        Eigen::Matrix3d edges;
        edges.col(0) = p[1] - p[0];
        edges.col(1) = p[2] - p[0];
        edges.col(2) = p[3] - p[0];
        const Eigen::Matrix3d inv = edges.inverse();
        auto& g = mesh.basis_gradients[e];
        // rows of edges^{-1} are the gradients of the barycentric coordinates 1..3
        g.col(1) = inv.row(0).transpose();
        g.col(2) = inv.row(1).transpose();
        g.col(3) = inv.row(2).transpose();
        g.col(0) = -(g.col(1) + g.col(2) + g.col(3));
    }

    // Face census: boundary faces appear in exactly one tet, interior in two.
    // Local face i of a tet is the one opposite local vertex i.
    std::map<std::array<int, 3>, std::pair<int, int>> faces;  // sorted verts -> (tet, local)
    std::map<std::array<int, 3>, int> count;
    for (int e = 0; e < nt; ++e) {
        for (int i = 0; i < 4; ++i) {
            std::array<int, 3> f;
            int k = 0;
            for (int j = 0; j < 4; ++j)
                if (j != i) f[k++] = mesh.tets(e, j);
            std::sort(f.begin(), f.end());
            auto [it, inserted] = faces.try_emplace(f, e, i);
            (void)it;
            (void)inserted;
            count[f] += 1;
        }
    }

    mesh.boundary_faces.clear();
    mesh.vertex_on_boundary.assign(mesh.num_vertices(), 0);
    for (const auto& [key, c] : count) {
        if (c > 2) throw InvalidParameterError("non-manifold face in mesh construction");
        if (c != 1) continue;
        const auto [e, local] = faces.at(key);
        BoundaryFace bf;
        int k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != local) bf.vertices[k++] = mesh.tets(e, j);
        bf.tet = e;
        const Vec3 a = mesh.vertices.row(bf.vertices[0]);
        const Vec3 b = mesh.vertices.row(bf.vertices[1]);
        const Vec3 c2 = mesh.vertices.row(bf.vertices[2]);
        const Vec3 opposite = mesh.vertices.row(mesh.tets(e, local));
        Vec3 n = (b - a).cross(c2 - a);
        const double doubled_area = n.norm();
        if (!(doubled_area > 1e-300))
            throw InvalidParameterError("degenerate boundary face in mesh construction");
        if (n.dot(a - opposite) < 0) n = -n;
        bf.normal = n / doubled_area;
        bf.area = 0.5 * doubled_area;
        mesh.boundary_faces.push_back(bf);
        for (int v : bf.vertices) mesh.vertex_on_boundary[v] = 1;
    }
}

Mesh build_structured(int cells, double lo, double hi) {
    Mesh mesh;
    const int np = cells + 1;
    const double h = (hi - lo) / cells;
    mesh.vertices.resize(np * np * np, 3);
    auto vid = [np](int i, int j, int k) { return i + np * (j + np * k); };
    for (int k = 0; k < np; ++k)
        for (int j = 0; j < np; ++j)
            for (int i = 0; i < np; ++i)
                mesh.vertices.row(vid(i, j, k)) = Vec3(lo + i * h, lo + j * h, lo + k * h);

    mesh.tets.resize(6 * cells * cells * cells, 4);
    int e = 0;
    for (int k = 0; k < cells; ++k)
        for (int j = 0; j < cells; ++j)
            for (int i = 0; i < cells; ++i)
                for (const auto& order : kAxisOrders) {
                    int c[3] = {i, j, k};
                    mesh.tets(e, 0) = vid(c[0], c[1], c[2]);
                    for (int s = 0; s < 3; ++s) {
                        c[order[s]] += 1;
                        mesh.tets(e, s + 1) = vid(c[0], c[1], c[2]);
                    }
                    ++e;
                }
    return mesh;
}

}  // namespace

Mesh build_cube_mesh(int n) {
    if (n < 1) throw InvalidParameterError("cube mesh needs n >= 1");
    Mesh mesh = build_structured(n, 0.0, 1.0);
    mesh.domain = Domain::Cube;
    finalize_mesh(mesh);
    return mesh;
}

Mesh build_ball_mesh(int n) {
    if (n < 1) throw InvalidParameterError("ball mesh needs n >= 1");
    Mesh mesh = build_structured(2 * n, -1.0, 1.0);
    mesh.domain = Domain::Ball;
    // Smooth cube-to-ball map: |y| = 1 exactly on the cube boundary, identity
    // near the center, no kinks inside (a plain radial |x|_inf / |x|_2
    // rescaling degrades element quality near the cube corners under
    // refinement).
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Vec3 x = mesh.vertices.row(v);
        Vec3 y;
        for (int i = 0; i < 3; ++i) {
            const double a = x[(i + 1) % 3], b = x[(i + 2) % 3];
            y[i] = x[i] * std::sqrt(1.0 - a * a / 2.0 - b * b / 2.0 + a * a * b * b / 3.0);
        }
        mesh.vertices.row(v) = y;
    }
    finalize_mesh(mesh);
    return mesh;
}

double Mesh::surface_area() const {
    double s = 0;
    for (const auto& f : boundary_faces) s += f.area;
    return s;
}

double Mesh::enclosed_volume() const {
    // V = (1/3) sum over faces of area * (centroid . n)
    double v = 0;
    for (const auto& f : boundary_faces) {
        const Vec3 c = (Vec3(vertices.row(f.vertices[0])) + Vec3(vertices.row(f.vertices[1])) +
                        Vec3(vertices.row(f.vertices[2]))) /
                       3.0;
        v += f.area * c.dot(f.normal);
    }
    return v / 3.0;
}

std::vector<int> Mesh::boundary_vertex_indices() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v)
        if (vertex_on_boundary[v]) out.push_back(v);
    return out;
}

std::vector<int> Mesh::interior_vertex_indices() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v)
        if (!vertex_on_boundary[v]) out.push_back(v);
    return out;
}

double Mesh::integrate(const ScalarField& f) const {
    if (f.size() != num_vertices()) throw DimensionError("field length != vertex count");
    double total = 0;
    for (int e = 0; e < num_tets(); ++e) {
        double s = 0;
        for (int i = 0; i < 4; ++i) s += f[tets(e, i)];
        total += volumes[e] * s / 4.0;  // exact for P1
    }
    return total;
}

double Mesh::mean(const ScalarField& f) const { return integrate(f) / total_volume(); }

Eigen::Matrix<double, Eigen::Dynamic, 3> element_gradients(const Mesh& mesh,
                                                           const ScalarField& field) {
    if (field.size() != mesh.num_vertices())
        throw DimensionError("field length != vertex count");
    Eigen::Matrix<double, Eigen::Dynamic, 3> g(mesh.num_tets(), 3);
    for (int e = 0; e < mesh.num_tets(); ++e) {
        Eigen::Vector4d local;
        for (int i = 0; i < 4; ++i) local[i] = field[mesh.tets(e, i)];
        g.row(e) = (mesh.basis_gradients[e] * local).transpose();
    }
    return g;
}

} // namespace conjpair
