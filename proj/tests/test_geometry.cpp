#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <sstream>

#include "specgap/geometry.hpp"

using namespace specgap;

namespace {

DomainSpec default_disk(int level = 0) {
    DomainSpec d;
    d.obstacle = DiskObstacle{1.0};
    d.trunc_radius = 4.0;
    d.refinement_level = level;
    return d;
}

int count_tag(const Mesh& m, EdgeTag t) {
    int c = 0;
    for (const auto& e : m.boundary_edges) c += e.tag == t;
    return c;
}

} // namespace

TEST_CASE("level-0 disk mesh has the documented entity counts") {
    const Mesh m = build_mesh(default_disk());
    CHECK(m.vertices.size() == 144);
    CHECK(m.triangles.size() == 256);
    CHECK(count_tag(m, EdgeTag::OmegaPrime) == 16);
    CHECK(count_tag(m, EdgeTag::Truncation) == 16);
    validate_mesh(m);
}

TEST_CASE("triangles are positively oriented and cover the annulus") {
    for (int level : {0, 1}) {
        const Mesh m = build_mesh(default_disk(level));
        for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t)
            REQUIRE(m.triangle_area(t) > 0);
        const double exact = kPi * (16.0 - 1.0);
        const double tol = level == 0 ? 0.03 : 0.01;
        CHECK(std::abs(m.total_area() - exact) / exact < tol);
    }
}

TEST_CASE("per-level build doubles resolution in both directions") {
    const Mesh m0 = build_mesh(default_disk(0));
    const Mesh m1 = build_mesh(default_disk(1));
    CHECK(m1.vertices.size() == 544);
    CHECK(m1.triangles.size() == 1024);
    const double ratio = m1.mesh_size() / m0.mesh_size();
    CHECK(ratio > 0.45);
    CHECK(ratio < 0.55);
}

TEST_CASE("red refinement matches the direct next-level counts and projects boundary midpoints") {
    const Mesh m0 = build_mesh(default_disk(0));
    const Mesh r = refine(m0);
    validate_mesh(r);
    const Mesh m1 = build_mesh(default_disk(1));
    CHECK(r.vertices.size() == m1.vertices.size());
    CHECK(r.triangles.size() == m1.triangles.size());
    CHECK(r.boundary_edges.size() == m1.boundary_edges.size());
    for (int v : r.obstacle_vertices()) CHECK(std::abs(r.vertices[v].norm() - 1.0) < 1e-13);
    for (int v : r.truncation_vertices()) CHECK(std::abs(r.vertices[v].norm() - 4.0) < 1e-13);
}

TEST_CASE("radial anchors force exact rings and polygon obstacles reject them") {
    DomainSpec d = default_disk();
    d.radial_anchors = {2.0};
    const Mesh m = build_mesh(d);
    double best = 1e300;
    for (const auto& v : m.vertices) best = std::min(best, std::abs(v.norm() - 2.0));
    CHECK(best < 1e-13);

    DomainSpec p;
    p.obstacle = PolygonObstacle{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    p.radial_anchors = {2.0};
    CHECK_THROWS_AS(p.validate(), SpecgapError);
}

TEST_CASE("grading clusters radial nodes toward the obstacle") {
    DomainSpec d = default_disk();
    d.grading = 2.0;
    const Mesh m = build_mesh(d);
    // vertices along the positive x axis are ring samples at theta = 0
    std::vector<double> rs;
    for (const auto& v : m.vertices)
        if (std::abs(v.y()) < 1e-14 && v.x() > 0) rs.push_back(v.x());
    std::sort(rs.begin(), rs.end());
    REQUIRE(rs.size() >= 3);
    for (size_t i = 0; i + 2 < rs.size(); ++i)
        CHECK(rs[i + 1] - rs[i] < rs[i + 2] - rs[i + 1] + 1e-14);
    CHECK(rs.front() == 1.0);
    CHECK(rs.back() == 4.0);
}

TEST_CASE("boundary tagging follows the angular window") {
    const Mesh base = build_mesh(default_disk());

    const Mesh all_robin = tag_boundary(base, BoundarySpec::neumann());
    CHECK(count_tag(all_robin, EdgeTag::Omega) == 16);
    CHECK(count_tag(all_robin, EdgeTag::OmegaPrime) == 0);
    CHECK(count_tag(all_robin, EdgeTag::Truncation) == 16);

    const Mesh all_dirichlet = tag_boundary(base, BoundarySpec::dirichlet());
    CHECK(count_tag(all_dirichlet, EdgeTag::Omega) == 0);
    CHECK(count_tag(all_dirichlet, EdgeTag::OmegaPrime) == 16);

    BoundarySpec half;
    half.omega = {{0.0, kPi}};
    const Mesh mixed = tag_boundary(base, half);
    CHECK(count_tag(mixed, EdgeTag::Omega) == 8);
    CHECK(count_tag(mixed, EdgeTag::OmegaPrime) == 8);

    BoundarySpec tiny;
    tiny.omega = {{0.01, 0.02}}; // narrower than any edge and off every midpoint
    CHECK_THROWS_AS(tag_boundary(base, tiny), SpecgapError);
}

TEST_CASE("angular window validation") {
    BoundarySpec bad;
    bad.omega = {{0.0, 2.0}, {1.0, 3.0}};
    CHECK_THROWS_AS(bad.validate(), SpecgapError);
    bad.omega = {{2.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), SpecgapError);
    bad.omega = {{0.0, 7.0}};
    CHECK_THROWS_AS(bad.validate(), SpecgapError);

    BoundarySpec full = BoundarySpec::neumann();
    full.validate();
    CHECK(full.contains_angle(-0.1)); // wraps into [0, 2*pi)
    CHECK(full.contains_angle(9.0));

    BoundarySpec half;
    half.omega = {{0.0, kPi}};
    CHECK(half.contains_angle(1.0));
    CHECK_FALSE(half.contains_angle(4.0));
}

TEST_CASE("polygon obstacles mesh with layers attached to the boundary") {
    DomainSpec d;
    d.obstacle = PolygonObstacle{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    d.trunc_radius = 4.0;
    const Mesh m = build_mesh(d);
    validate_mesh(m);
    CHECK(m.obstacle_circle_radius == 0.0); // no circle to project onto
    CHECK(m.truncation_circle_radius == 4.0);
    for (const auto& e : m.boundary_edges) {
        if (e.tag == EdgeTag::Truncation) continue;
        const Eigen::Vector2d mid = 0.5 * (m.vertices[e.a] + m.vertices[e.b]);
        CHECK(std::abs(std::max(std::abs(mid.x()), std::abs(mid.y())) - 1.0) < 1e-13);
    }
    const Mesh r = refine(m);
    validate_mesh(r);
    CHECK(r.triangles.size() == 4 * m.triangles.size());
}

TEST_CASE("invalid domains are rejected") {
    DomainSpec d = default_disk();
    d.trunc_radius = 0.5;
    CHECK_THROWS_AS(d.validate(), SpecgapError);

    d = default_disk();
    d.grading = 0.5;
    CHECK_THROWS_AS(d.validate(), SpecgapError);

    d = default_disk();
    d.base_ntheta = 3;
    CHECK_THROWS_AS(d.validate(), SpecgapError);

    d = default_disk();
    d.radial_anchors = {0.5};
    CHECK_THROWS_AS(d.validate(), SpecgapError);
    d.radial_anchors = {5.0};
    CHECK_THROWS_AS(d.validate(), SpecgapError);

    DomainSpec cw;
    cw.obstacle = PolygonObstacle{{{1, -1}, {-1, -1}, {-1, 1}, {1, 1}}};
    CHECK_THROWS_AS(cw.validate(), SpecgapError);

    DomainSpec off;
    off.obstacle = PolygonObstacle{{{1, 1}, {2, 1}, {1.5, 2}}}; // origin outside
    CHECK_THROWS_AS(off.validate(), SpecgapError);
}

TEST_CASE("plain-text mesh export shape") {
    const Mesh m = tag_boundary(build_mesh(default_disk()), BoundarySpec::neumann());
    std::ostringstream os;
    write_mesh_text(m, os);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "vertices 144 triangles 256 edges 32");
    int n_lines = 0;
    std::set<std::string> tags;
    while (std::getline(is, line)) {
        ++n_lines;
        if (n_lines > 144 + 256) {
            std::istringstream fields(line);
            int a, b;
            std::string tag;
            REQUIRE((fields >> a >> b >> tag));
            tags.insert(tag);
        }
    }
    CHECK(n_lines == 144 + 256 + 32);
    CHECK(tags == std::set<std::string>{"omega", "trunc"});
}
