#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "specgap/common.hpp"
#include "specgap/fields.hpp"
#include "specgap/geometry.hpp"

namespace specgap {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Deterministic sparse assembly: triplets are sorted by (column, row) with a
// stable sort, duplicate entries are summed left to right in that fixed
// order, and only then handed to the sparse constructor. Repeated runs give
// bitwise identical matrices.
inline SpMat from_triplets_deterministic(int n, std::vector<Triplet>& trips) {
    std::stable_sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
        if (a.col() != b.col()) return a.col() < b.col();
        return a.row() < b.row();
    });
    std::vector<Triplet> unique;
    unique.reserve(trips.size());
    for (std::size_t i = 0; i < trips.size();) {
        const int r = trips[i].row(), c = trips[i].col();
        double sum = 0;
        std::size_t j = i;
        for (; j < trips.size() && trips[j].row() == r && trips[j].col() == c; ++j)
            sum += trips[j].value();
        unique.emplace_back(r, c, sum);
        i = j;
    }
    SpMat A(n, n);
    A.setFromTriplets(unique.begin(), unique.end());
    A.makeCompressed();
    return A;
}

inline Eigen::Vector2d triangle_barycenter(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    return (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
}

inline std::vector<Eigen::Vector2d> mesh_barycenters(const Mesh& mesh) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(mesh.triangles.size());
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t)
        pts.push_back(triangle_barycenter(mesh, t));
    return pts;
}

// Element stiffness for piecewise linear fields: area * g a g^T where the
// rows of g are the P1 shape function gradients.
inline Eigen::Matrix3d element_stiffness(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                                         const Eigen::Vector2d& p2, const Eigen::Matrix2d& a) {
    const double det = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
    Eigen::Matrix<double, 3, 2> g;
    g << p1.y() - p2.y(), p2.x() - p1.x(),
         p2.y() - p0.y(), p0.x() - p2.x(),
         p0.y() - p1.y(), p1.x() - p0.x();
    g /= det;
    return (det / 2.0) * (g * a * g.transpose());
}

// Consistent P1 element mass: |T|/12 * (ones + identity).
inline Eigen::Matrix3d element_mass(double area) {
    return (area / 12.0) * (Eigen::Matrix3d::Ones() + Eigen::Matrix3d::Identity());
}

// Edge mass (L/6)[[2,1],[1,2]] scaled by a weight, the boundary-term block
// for P1 traces on a straight edge of length L.
inline Eigen::Matrix2d element_edge_mass(double length, double weight) {
    Eigen::Matrix2d e;
    e << 2, 1, 1, 2;
    return (weight * length / 6.0) * e;
}

inline SpMat assemble_stiffness(const Mesh& mesh, const CoefficientField& a) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<Triplet> trips;
    trips.reserve(mesh.triangles.size() * 9);
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        const auto& tri = mesh.triangles[t];
        const Eigen::Matrix3d ke = element_stiffness(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                                     mesh.vertices[tri[2]], a(triangle_barycenter(mesh, t)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(tri[i], tri[j], ke(i, j));
    }
    return from_triplets_deterministic(n, trips);
}

inline SpMat assemble_mass(const Mesh& mesh) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<Triplet> trips;
    trips.reserve(mesh.triangles.size() * 9);
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        const auto& tri = mesh.triangles[t];
        const Eigen::Matrix3d me = element_mass(mesh.triangle_area(t));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(tri[i], tri[j], me(i, j));
    }
    return from_triplets_deterministic(n, trips);
}

// Potential term: element mass weighted by V evaluated at the barycenter.
inline SpMat assemble_potential(const Mesh& mesh, const PotentialSpec& V) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<Triplet> trips;
    trips.reserve(mesh.triangles.size() * 9);
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        const auto& tri = mesh.triangles[t];
        const double v = V(triangle_barycenter(mesh, t));
        if (v == 0) continue;
        const Eigen::Matrix3d me = v * element_mass(mesh.triangle_area(t));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(tri[i], tri[j], me(i, j));
    }
    return from_triplets_deterministic(n, trips);
}

// Boundary term alpha * trace mass over the edges carrying the natural
// condition. alpha == 0 produces a matrix with no stored entries at all, so
// the pure-Neumann operator is literally the Dirichlet-form matrix on the
// larger free set.
inline SpMat assemble_robin_boundary(const Mesh& mesh, double alpha) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<Triplet> trips;
    if (alpha != 0) {
        for (const auto& e : mesh.boundary_edges) {
            if (e.tag != EdgeTag::Omega) continue;
            const double len = (mesh.vertices[e.b] - mesh.vertices[e.a]).norm();
            const Eigen::Matrix2d be = element_edge_mass(len, alpha);
            const int idx[2] = {e.a, e.b};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    trips.emplace_back(idx[i], idx[j], be(i, j));
        }
    }
    return from_triplets_deterministic(n, trips);
}

// Trace mass over the whole obstacle boundary (both tagged parts), used to
// measure boundary L2 norms of discrete eigenfunctions.
inline SpMat obstacle_boundary_mass(const Mesh& mesh) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<Triplet> trips;
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag == EdgeTag::Truncation) continue;
        const double len = (mesh.vertices[e.b] - mesh.vertices[e.a]).norm();
        const Eigen::Matrix2d be = element_edge_mass(len, 1.0);
        const int idx[2] = {e.a, e.b};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                trips.emplace_back(idx[i], idx[j], be(i, j));
    }
    return from_triplets_deterministic(n, trips);
}

enum class ConstraintMode { Dirichlet, RobinMixed };

struct DofMap {
    int n_vertices = 0;
    std::vector<int> free;         // ascending vertex indices kept as unknowns
    std::vector<int> full_to_free; // -1 on constrained vertices

    int n_free() const { return static_cast<int>(free.size()); }
    bool is_free(int v) const { return full_to_free[v] >= 0; }
};

// Dirichlet mode constrains every boundary vertex. RobinMixed keeps the
// vertices interior to the natural-condition window free and constrains the
// rest, including the interface endpoints shared with the essential part, so
// the Dirichlet free set is always a subset of the mixed free set.
inline DofMap make_dof_map(const Mesh& mesh, ConstraintMode mode) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<char> constrained(n, 0);
    bool saw_natural = false;
    for (const auto& e : mesh.boundary_edges) {
        const bool natural = (mode == ConstraintMode::RobinMixed && e.tag == EdgeTag::Omega);
        if (natural) {
            saw_natural = true;
            continue;
        }
        constrained[e.a] = 1;
        constrained[e.b] = 1;
    }
    if (mode == ConstraintMode::RobinMixed && !saw_natural)
        throw SpecgapError("mixed constraint mode requires at least one natural-condition edge");
    DofMap dof;
    dof.n_vertices = n;
    dof.full_to_free.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        if (constrained[v]) continue;
        dof.full_to_free[v] = dof.n_free();
        dof.free.push_back(v);
    }
    return dof;
}

// Drops constrained rows and columns. Traversal is column-major over the
// compressed matrix, so the result is deterministic given the input.
inline SpMat restrict_matrix(const SpMat& A, const DofMap& dof) {
    std::vector<Triplet> trips;
    trips.reserve(A.nonZeros());
    for (int k = 0; k < A.outerSize(); ++k) {
        const int c = dof.full_to_free[k];
        if (c < 0) continue;
        for (SpMat::InnerIterator it(A, k); it; ++it) {
            const int r = dof.full_to_free[it.row()];
            if (r < 0) continue;
            trips.emplace_back(r, c, it.value());
        }
    }
    SpMat out(dof.n_free(), dof.n_free());
    out.setFromTriplets(trips.begin(), trips.end());
    out.makeCompressed();
    return out;
}

inline Eigen::VectorXd embed_free(const DofMap& dof, const Eigen::VectorXd& u_free) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(dof.n_vertices);
    for (int i = 0; i < dof.n_free(); ++i) full[dof.free[i]] = u_free[i];
    return full;
}

inline Eigen::VectorXd extract_free(const DofMap& dof, const Eigen::VectorXd& full) {
    Eigen::VectorXd u(dof.n_free());
    for (int i = 0; i < dof.n_free(); ++i) u[i] = full[dof.free[i]];
    return u;
}

struct AssembledSystem {
    SpMat A; // bilinear form matrix on the free set
    SpMat M; // consistent mass on the free set
    DofMap dof;
};

// Full pipeline for one operator on a tagged mesh. The form matrix is
// stiffness + potential, plus the boundary term in mixed mode; constraints
// are applied by eliminating rows and columns, never by penalties.
inline AssembledSystem assemble_system(const Mesh& mesh, const FieldPair& fields,
                                       const BoundarySpec& bc, ConstraintMode mode) {
    SpMat K = assemble_stiffness(mesh, fields.a);
    SpMat P = assemble_potential(mesh, fields.V);
    SpMat form = K + P;
    if (mode == ConstraintMode::RobinMixed) {
        SpMat B = assemble_robin_boundary(mesh, bc.robin_alpha);
        form = form + B;
    }
    AssembledSystem sys;
    sys.dof = make_dof_map(mesh, mode);
    sys.A = restrict_matrix(form, sys.dof);
    sys.M = restrict_matrix(assemble_mass(mesh), sys.dof);
    return sys;
}

// Coordinate-format text export: one "row col value" line per stored entry,
// 17 significant digits, column-major order.
inline void write_matrix_coord(std::ostream& os, const SpMat& A) {
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it)
            os << it.row() << " " << it.col() << " " << fmt17(it.value()) << "\n";
}

} // namespace specgap
