#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "specgap/common.hpp"

namespace specgap {

// Boundary edge tags. Omega carries the Robin condition, OmegaPrime the
// Dirichlet condition on the obstacle, Truncation the artificial outer circle
// (always Dirichlet).
enum class EdgeTag { Omega, OmegaPrime, Truncation };

inline const char* tag_name(EdgeTag t) {
    switch (t) {
        case EdgeTag::Omega: return "omega";
        case EdgeTag::OmegaPrime: return "omega_prime";
        default: return "trunc";
    }
}

struct DiskObstacle {
    double radius = 1.0;
};

// Star-shaped with respect to the origin, origin strictly inside, vertices
// counter-clockwise. Star-shapedness makes the layered transfinite mesh and
// angle-based boundary selectors well defined.
struct PolygonObstacle {
    std::vector<Eigen::Vector2d> vertices;
};

using Obstacle = std::variant<DiskObstacle, PolygonObstacle>;

struct DomainSpec {
    Obstacle obstacle = DiskObstacle{1.0};
    double trunc_radius = 4.0;
    int refinement_level = 0;
    double grading = 1.0; // >= 1, radial clustering toward the obstacle
    // Base angular/radial resolution at level 0; both double per level.
    int base_ntheta = 16;
    int base_nr = 8;
    // Circle radii forced onto mesh rings at every level (disk obstacles only).
    // Aligning a discontinuity of the potential with mesh rings keeps the
    // barycenter quadrature second-order accurate.
    std::vector<double> radial_anchors;

    double obstacle_extent() const {
        if (const auto* d = std::get_if<DiskObstacle>(&obstacle)) return d->radius;
        const auto& p = std::get<PolygonObstacle>(obstacle);
        double ext = 0;
        for (const auto& v : p.vertices) ext = std::max(ext, v.norm());
        return ext;
    }

    void validate() const {
        if (refinement_level < 0) throw SpecgapError("domain: refinement_level must be >= 0");
        if (grading < 1.0) throw SpecgapError("domain: grading must be >= 1");
        if (base_ntheta < 4) throw SpecgapError("domain: base_ntheta must be >= 4");
        if (base_nr < 2) throw SpecgapError("domain: base_nr must be >= 2");
        if (const auto* d = std::get_if<DiskObstacle>(&obstacle)) {
            if (d->radius <= 0) throw SpecgapError("domain: obstacle radius must be > 0");
        } else {
            const auto& p = std::get<PolygonObstacle>(obstacle);
            if (p.vertices.size() < 3) throw SpecgapError("domain: polygon needs >= 3 vertices");
            const int n = static_cast<int>(p.vertices.size());
            for (int i = 0; i < n; ++i) {
                const auto& a = p.vertices[i];
                const auto& b = p.vertices[(i + 1) % n];
                // cross > 0 with a turn < pi around the origin per edge means the
                // boundary angle is strictly increasing: star-shaped, origin inside.
                const double cross = a.x() * b.y() - a.y() * b.x();
                if (cross <= 0)
                    throw SpecgapError("domain: polygon must be counter-clockwise and star-shaped around the origin");
                double da = std::atan2(b.y(), b.x()) - std::atan2(a.y(), a.x());
                if (da <= 0) da += 2 * kPi;
                if (da >= kPi)
                    throw SpecgapError("domain: polygon edge spans an angle >= pi around the origin");
            }
            if (!(trunc_radius > 0)) throw SpecgapError("domain: trunc_radius must be > 0");
        }
        if (!(obstacle_extent() < trunc_radius))
            throw SpecgapError("domain: obstacle not strictly inside the truncation disk (extent " +
                               fmt17(obstacle_extent()) + " vs R " + fmt17(trunc_radius) + ")");
        for (double a : radial_anchors) {
            if (std::holds_alternative<PolygonObstacle>(obstacle))
                throw SpecgapError("domain: radial_anchors require a disk obstacle");
            if (!(a > obstacle_extent() && a < trunc_radius))
                throw SpecgapError("domain: radial anchor " + fmt17(a) + " outside (r0, R)");
        }
    }
};

struct BoundaryEdge {
    int a = 0, b = 0;
    EdgeTag tag = EdgeTag::Truncation;
};

struct Mesh {
    std::vector<Eigen::Vector2d> vertices;
    std::vector<std::array<int, 3>> triangles; // positively oriented
    std::vector<BoundaryEdge> boundary_edges;
    // Curved-boundary metadata for midpoint projection under refinement.
    // Zero radius disables projection for that boundary family.
    double obstacle_circle_radius = 0; // disk obstacles only
    double truncation_circle_radius = 0;

    double triangle_area(int t) const {
        const auto& tri = triangles[t];
        const Eigen::Vector2d d1 = vertices[tri[1]] - vertices[tri[0]];
        const Eigen::Vector2d d2 = vertices[tri[2]] - vertices[tri[0]];
        return 0.5 * (d1.x() * d2.y() - d1.y() * d2.x());
    }

    double total_area() const {
        double s = 0;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t) s += triangle_area(t);
        return s;
    }

    double mesh_size() const { // longest edge
        double h = 0;
        for (const auto& tri : triangles)
            for (int e = 0; e < 3; ++e)
                h = std::max(h, (vertices[tri[e]] - vertices[tri[(e + 1) % 3]]).norm());
        return h;
    }

    std::vector<int> obstacle_vertices() const {
        std::set<int> s;
        for (const auto& e : boundary_edges)
            if (e.tag != EdgeTag::Truncation) {
                s.insert(e.a);
                s.insert(e.b);
            }
        return {s.begin(), s.end()};
    }

    std::vector<int> truncation_vertices() const {
        std::set<int> s;
        for (const auto& e : boundary_edges)
            if (e.tag == EdgeTag::Truncation) {
                s.insert(e.a);
                s.insert(e.b);
            }
        return {s.begin(), s.end()};
    }
};

// Half-open angular intervals [a, b) within [0, 2*pi) selecting the Robin part
// omega of the obstacle boundary; the complement omega' is Dirichlet.
struct AngularInterval {
    double a = 0, b = 0;
};

struct BoundarySpec {
    std::vector<AngularInterval> omega;
    double robin_alpha = 0;

    static BoundarySpec dirichlet() { return {}; }
    static BoundarySpec neumann() { return {{{0.0, 2 * kPi}}, 0.0}; }
    static BoundarySpec robin_full(double alpha) { return {{{0.0, 2 * kPi}}, alpha}; }

    bool omega_empty() const { return omega.empty(); }

    bool contains_angle(double theta) const {
        theta = std::fmod(theta, 2 * kPi);
        if (theta < 0) theta += 2 * kPi;
        for (const auto& iv : omega)
            if (theta >= iv.a && theta < iv.b) return true;
        return false;
    }

    void validate() const {
        std::vector<AngularInterval> sorted = omega;
        std::sort(sorted.begin(), sorted.end(), [](auto& x, auto& y) { return x.a < y.a; });
        for (size_t i = 0; i < sorted.size(); ++i) {
            const auto& iv = sorted[i];
            if (!(iv.a >= 0 && iv.a < 2 * kPi + 1e-12) || !(iv.b > iv.a) || iv.b > 2 * kPi + 1e-12)
                throw SpecgapError("bc: omega interval [" + fmt17(iv.a) + ", " + fmt17(iv.b) +
                                   ") must satisfy 0 <= a < b <= 2*pi");
            if (i + 1 < sorted.size() && sorted[i + 1].a < iv.b)
                throw SpecgapError("bc: omega intervals overlap");
        }
    }
};

namespace detail {

// Radial node placement on [r0, R]: segments split at the anchors, intervals
// allocated proportional to length^(1/grading) with at least 2 per segment at
// level 0, doubled per level; the outermost segment is graded toward its inner
// end by t -> t^grading.
inline std::vector<double> radial_nodes(double r0, double R, std::vector<double> anchors,
                                        int base_nr, int level, double grading) {
    std::sort(anchors.begin(), anchors.end());
    std::vector<double> pts{r0};
    for (double a : anchors)
        if (a > r0 && a < R) pts.push_back(a);
    pts.push_back(R);
    const int nseg = static_cast<int>(pts.size()) - 1;
    std::vector<long> alloc(nseg);
    double wsum = 0;
    std::vector<double> w(nseg);
    for (int s = 0; s < nseg; ++s) {
        w[s] = std::pow(pts[s + 1] - pts[s], 1.0 / grading);
        wsum += w[s];
    }
    long total = 0;
    for (int s = 0; s < nseg; ++s) {
        alloc[s] = std::max<long>(2, std::lround(base_nr * w[s] / wsum));
        total += alloc[s];
    }
    alloc[nseg - 1] = std::max<long>(2, alloc[nseg - 1] + (base_nr - total));
    std::vector<double> rs{r0};
    for (int s = 0; s < nseg; ++s) {
        const long n = alloc[s] << level;
        const double a = pts[s], b = pts[s + 1];
        for (long j = 1; j <= n; ++j) {
            double t = static_cast<double>(j) / static_cast<double>(n);
            if (s == nseg - 1) t = std::pow(t, grading);
            rs.push_back(a + (b - a) * t);
        }
    }
    rs.back() = R; // guard pow roundoff at t = 1
    return rs;
}

// Ring-major structured mesh between two closed curves sampled at the same
// angular stations: ring i vertex j has index i*nt + j.
inline Mesh rings_to_mesh(const std::vector<std::vector<Eigen::Vector2d>>& rings, int nt) {
    Mesh m;
    const int nring = static_cast<int>(rings.size());
    m.vertices.reserve(static_cast<size_t>(nring) * nt);
    for (const auto& ring : rings)
        for (const auto& v : ring) m.vertices.push_back(v);
    for (int i = 0; i + 1 < nring; ++i)
        for (int j = 0; j < nt; ++j) {
            const int j2 = (j + 1) % nt;
            const int v00 = i * nt + j, v01 = i * nt + j2;
            const int v10 = (i + 1) * nt + j, v11 = (i + 1) * nt + j2;
            m.triangles.push_back({v00, v10, v11});
            m.triangles.push_back({v00, v11, v01});
        }
    for (int j = 0; j < nt; ++j)
        m.boundary_edges.push_back({j, (j + 1) % nt, EdgeTag::OmegaPrime});
    const int off = (nring - 1) * nt;
    for (int j = 0; j < nt; ++j)
        m.boundary_edges.push_back({off + j, off + (j + 1) % nt, EdgeTag::Truncation});
    return m;
}

// Samples the polygon boundary with corner-snapped, per-edge arc-length
// uniform points so refinement midpoints stay on the polygon.
inline std::vector<Eigen::Vector2d> polygon_samples(const PolygonObstacle& poly, int nt) {
    const int n = static_cast<int>(poly.vertices.size());
    std::vector<double> len(n);
    double total = 0;
    for (int i = 0; i < n; ++i) {
        len[i] = (poly.vertices[(i + 1) % n] - poly.vertices[i]).norm();
        total += len[i];
    }
    std::vector<long> alloc(n);
    long sum = 0;
    int longest = 0;
    for (int i = 0; i < n; ++i) {
        alloc[i] = std::max<long>(1, std::lround(nt * len[i] / total));
        sum += alloc[i];
        if (len[i] > len[longest]) longest = i;
    }
    alloc[longest] = std::max<long>(1, alloc[longest] + (nt - sum));
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(nt);
    for (int i = 0; i < n; ++i) {
        const auto& a = poly.vertices[i];
        const auto& b = poly.vertices[(i + 1) % n];
        for (long j = 0; j < alloc[i]; ++j) {
            const double t = static_cast<double>(j) / static_cast<double>(alloc[i]);
            pts.push_back(a + t * (b - a));
        }
    }
    return pts;
}

} // namespace detail

inline Mesh build_mesh(const DomainSpec& spec) {
    spec.validate();
    const int level = spec.refinement_level;
    const int nt = spec.base_ntheta << level;
    const double R = spec.trunc_radius;
    std::vector<std::vector<Eigen::Vector2d>> rings;

    if (const auto* disk = std::get_if<DiskObstacle>(&spec.obstacle)) {
        const auto rs = detail::radial_nodes(disk->radius, R, spec.radial_anchors,
                                             spec.base_nr, level, spec.grading);
        rings.reserve(rs.size());
        for (double r : rs) {
            std::vector<Eigen::Vector2d> ring(nt);
            for (int j = 0; j < nt; ++j) {
                const double th = 2 * kPi * j / nt;
                ring[j] = {r * std::cos(th), r * std::sin(th)};
            }
            rings.push_back(std::move(ring));
        }
    } else {
        const auto& poly = std::get<PolygonObstacle>(spec.obstacle);
        const auto base = detail::polygon_samples(poly, nt);
        // Radial layers interpolate between each boundary sample and the outer
        // circle point on the same ray; star-shapedness keeps rays disjoint.
        const auto ss = detail::radial_nodes(0.0, 1.0, {}, spec.base_nr, level, spec.grading);
        rings.reserve(ss.size());
        for (double s : ss) {
            std::vector<Eigen::Vector2d> ring(nt);
            for (int j = 0; j < nt; ++j) {
                const double phi = std::atan2(base[j].y(), base[j].x());
                const Eigen::Vector2d outer{R * std::cos(phi), R * std::sin(phi)};
                ring[j] = (1.0 - s) * base[j] + s * outer;
            }
            rings.push_back(std::move(ring));
        }
    }

    Mesh m = detail::rings_to_mesh(rings, nt);
    if (const auto* disk = std::get_if<DiskObstacle>(&spec.obstacle))
        m.obstacle_circle_radius = disk->radius;
    m.truncation_circle_radius = R;
    for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t)
        if (!(m.triangle_area(t) > 0))
            throw SpecgapError("build_mesh: nonpositive triangle area (degenerate domain spec)");
    return m;
}

// Uniform red refinement: each triangle splits into 4 similar children.
// Midpoints of tagged boundary edges are projected onto their circle when the
// mesh carries one, so refined meshes track the curved boundaries.
inline Mesh refine(const Mesh& mesh) {
    Mesh out;
    out.vertices = mesh.vertices;
    out.obstacle_circle_radius = mesh.obstacle_circle_radius;
    out.truncation_circle_radius = mesh.truncation_circle_radius;

    std::map<std::pair<int, int>, EdgeTag> boundary_tag;
    for (const auto& e : mesh.boundary_edges)
        boundary_tag[{std::min(e.a, e.b), std::max(e.a, e.b)}] = e.tag;

    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        const auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Eigen::Vector2d p = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
        auto bt = boundary_tag.find(key);
        if (bt != boundary_tag.end()) {
            const double r = bt->second == EdgeTag::Truncation ? mesh.truncation_circle_radius
                                                               : mesh.obstacle_circle_radius;
            if (r > 0) p *= r / p.norm();
        }
        const int idx = static_cast<int>(out.vertices.size());
        out.vertices.push_back(p);
        midpoint.emplace(key, idx);
        return idx;
    };

    out.triangles.reserve(mesh.triangles.size() * 4);
    for (const auto& tri : mesh.triangles) {
        const int m01 = mid(tri[0], tri[1]);
        const int m12 = mid(tri[1], tri[2]);
        const int m20 = mid(tri[2], tri[0]);
        out.triangles.push_back({tri[0], m01, m20});
        out.triangles.push_back({tri[1], m12, m01});
        out.triangles.push_back({tri[2], m20, m12});
        out.triangles.push_back({m01, m12, m20});
    }
    out.boundary_edges.reserve(mesh.boundary_edges.size() * 2);
    for (const auto& e : mesh.boundary_edges) {
        const int m = mid(e.a, e.b);
        out.boundary_edges.push_back({e.a, m, e.tag});
        out.boundary_edges.push_back({m, e.b, e.tag});
    }
    return out;
}

// Retags obstacle edges by midpoint angle: inside an omega interval -> Omega,
// otherwise OmegaPrime. Truncation edges are untouched.
inline Mesh tag_boundary(Mesh mesh, const BoundarySpec& bc) {
    bc.validate();
    int omega_count = 0;
    for (auto& e : mesh.boundary_edges) {
        if (e.tag == EdgeTag::Truncation) continue;
        const Eigen::Vector2d m = 0.5 * (mesh.vertices[e.a] + mesh.vertices[e.b]);
        const double theta = std::atan2(m.y(), m.x());
        e.tag = bc.contains_angle(theta) ? EdgeTag::Omega : EdgeTag::OmegaPrime;
        omega_count += e.tag == EdgeTag::Omega;
    }
    if (!bc.omega_empty() && omega_count == 0)
        throw SpecgapError("tag_boundary: omega selector matches no obstacle edges");
    return mesh;
}

// Structural validation used by tests: positive areas, conformity, boundary
// edges covered by exactly one triangle and consistently tagged.
inline void validate_mesh(const Mesh& mesh) {
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t)
        if (!(mesh.triangle_area(t) > 0)) throw SpecgapError("mesh: nonpositive triangle area");
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            const int a = tri[e], b = tri[(e + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    for (const auto& [edge, cnt] : edge_count)
        if (cnt != 1 && cnt != 2) throw SpecgapError("mesh: nonconforming edge");
    std::set<std::pair<int, int>> tagged;
    for (const auto& e : mesh.boundary_edges) {
        const auto key = std::make_pair(std::min(e.a, e.b), std::max(e.a, e.b));
        auto it = edge_count.find(key);
        if (it == edge_count.end() || it->second != 1)
            throw SpecgapError("mesh: boundary edge not matched by exactly one triangle");
        if (!tagged.insert(key).second) throw SpecgapError("mesh: duplicate boundary edge");
    }
    int n_boundary = 0;
    for (const auto& [edge, cnt] : edge_count) n_boundary += cnt == 1;
    if (n_boundary != static_cast<int>(mesh.boundary_edges.size()))
        throw SpecgapError("mesh: untagged boundary edges present");
}

// Plain-text export: header `vertices N triangles T edges E`, then one line
// per vertex (x y), per triangle (i j k), per boundary edge (a b tag).
inline void write_mesh_text(const Mesh& mesh, std::ostream& os) {
    os << "vertices " << mesh.vertices.size() << " triangles " << mesh.triangles.size()
       << " edges " << mesh.boundary_edges.size() << "\n";
    for (const auto& v : mesh.vertices) os << fmt17(v.x()) << " " << fmt17(v.y()) << "\n";
    for (const auto& t : mesh.triangles) os << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (const auto& e : mesh.boundary_edges)
        os << e.a << " " << e.b << " " << tag_name(e.tag) << "\n";
}

} // namespace specgap
