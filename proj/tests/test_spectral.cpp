#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <vector>

#include "specgap/assembly.hpp"
#include "specgap/spectral.hpp"

using namespace specgap;

namespace {

SpMat diag_sp(const std::vector<double>& d) {
    SpMat A(static_cast<int>(d.size()), static_cast<int>(d.size()));
    std::vector<Triplet> trips;
    for (int i = 0; i < static_cast<int>(d.size()); ++i) trips.emplace_back(i, i, d[i]);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    return A;
}

SpMat identity_sp(int n) { return diag_sp(std::vector<double>(n, 1.0)); }

AssembledSystem well_system(int level, ConstraintMode mode) {
    DomainSpec d;
    d.obstacle = DiskObstacle{1.0};
    d.trunc_radius = 4.0;
    d.refinement_level = level;
    const BoundarySpec bc = BoundarySpec::neumann();
    const Mesh m = tag_boundary(build_mesh(d), bc);
    const FieldPair fields{CoefficientField::identity(), PotentialSpec::radial_well(8.0, 1.0, 2.0)};
    return assemble_system(m, fields, bc, mode);
}

} // namespace

TEST_CASE("inertia counts a diagonal pencil exactly") {
    const SpMat A = diag_sp({1, 2, 3, 4});
    const SpMat M = identity_sp(4);

    CHECK(inertia_count(A, M, 0.5).count == 0);
    CHECK(inertia_count(A, M, 1.5).count == 1);
    CHECK(inertia_count(A, M, 2.5).count == 2);
    CHECK(inertia_count(A, M, 100.0).count == 4);

    // probe exactly on an eigenvalue: zero pivot, one nudged retry
    const InertiaResult at2 = inertia_count(A, M, 2.0);
    CHECK(at2.count == 1);
    CHECK(at2.shifted);
    CHECK(at2.mu_used < 2.0);

    // nontrivial mass rescales the pencil
    const SpMat M2 = diag_sp({2, 2, 2, 2});
    CHECK(inertia_count(A, M2, 1.3).count == 2); // eigenvalues 0.5, 1, 1.5, 2
}

TEST_CASE("open and closed counts straddle a probe on the spectrum") {
    const SpMat A = diag_sp({1, 2, 2, 3});
    const SpMat M = identity_sp(4);
    const CountingReport rep = counting_report(A, M, 2.0);
    CHECK(rep.n_strictly_below == 1);
    CHECK(rep.n_below_or_equal == 3); // the widened probe swallows the double eigenvalue
    CHECK(rep.strict_shifted);
    CHECK_FALSE(rep.closed_shifted);

    const CountingReport off = counting_report(A, M, 2.5);
    CHECK(off.n_strictly_below == 3);
    CHECK(off.n_below_or_equal == 3);
    CHECK_FALSE(off.strict_shifted);
}

TEST_CASE("dense path returns sorted verified eigenpairs") {
    const AssembledSystem sys = well_system(0, ConstraintMode::Dirichlet);
    const double mu = -0.05;
    const InertiaResult want = inertia_count(sys.A, sys.M, mu);
    REQUIRE(want.count > 0);

    const SpectralResult r = eigs_below(sys.A, sys.M, mu);
    CHECK(r.used_dense);
    REQUIRE(static_cast<int>(r.values.size()) == want.count);
    for (std::size_t i = 1; i < r.values.size(); ++i) CHECK(r.values[i - 1] <= r.values[i]);
    for (std::size_t i = 0; i < r.values.size(); ++i) CHECK(r.values[i] < mu);

    // M-orthonormal columns and small true residuals
    const Eigen::MatrixXd G = r.vectors.transpose() * (sys.M * r.vectors);
    CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i < static_cast<int>(r.values.size()); ++i) {
        const Eigen::VectorXd res =
            sys.A * r.vectors.col(i) - r.values[i] * (sys.M * r.vectors.col(i));
        CHECK(res.norm() < 1e-8 * (1 + std::abs(r.values[i])));
    }
}

TEST_CASE("iterative path agrees with the dense path to tight tolerance") {
    const AssembledSystem sys = well_system(1, ConstraintMode::RobinMixed);
    for (double mu : {-3.0, -0.5, -0.05}) {
        const SpectralResult dense = eigs_below(sys.A, sys.M, mu);
        SolverOptions opts;
        opts.force_iterative = true;
        const SpectralResult iter = eigs_below(sys.A, sys.M, mu, opts);
        CHECK_FALSE(iter.used_dense);
        REQUIRE(iter.values.size() == dense.values.size());
        REQUIRE(static_cast<int>(iter.values.size()) == inertia_count(sys.A, sys.M, mu).count);
        for (std::size_t i = 0; i < iter.values.size(); ++i)
            CHECK(std::abs(iter.values[i] - dense.values[i]) <=
                  1e-9 * (1 + std::abs(dense.values[i])));

        const Eigen::MatrixXd G = iter.vectors.transpose() * (sys.M * iter.vectors);
        CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-8);
        for (int i = 0; i < static_cast<int>(iter.values.size()); ++i) {
            const Eigen::VectorXd res =
                sys.A * iter.vectors.col(i) - iter.values[i] * (sys.M * iter.vectors.col(i));
            CHECK(res.norm() <= 1e-9 * (1 + std::abs(iter.values[i])) *
                                    (sys.M * iter.vectors.col(i)).norm() * 1.0001);
        }
    }
}

TEST_CASE("iterative path survives a tight subspace cap") {
    const AssembledSystem sys = well_system(1, ConstraintMode::Dirichlet);
    const double mu = -0.05;
    const SpectralResult dense = eigs_below(sys.A, sys.M, mu);
    SolverOptions opts;
    opts.force_iterative = true;
    opts.max_subspace = 24; // forces thick restarts
    const SpectralResult iter = eigs_below(sys.A, sys.M, mu, opts);
    REQUIRE(iter.values.size() == dense.values.size());
    for (std::size_t i = 0; i < iter.values.size(); ++i)
        CHECK(std::abs(iter.values[i] - dense.values[i]) <= 1e-9 * (1 + std::abs(dense.values[i])));
}

TEST_CASE("an empty window returns an empty result") {
    const AssembledSystem sys = well_system(0, ConstraintMode::Dirichlet);
    const SpectralResult r = eigs_below(sys.A, sys.M, -100.0);
    CHECK(r.values.empty());
    CHECK(r.vectors.cols() == 0);
    CHECK(r.vectors.rows() == sys.A.rows());
}

TEST_CASE("counts are monotone in the probe") {
    const AssembledSystem sys = well_system(0, ConstraintMode::RobinMixed);
    int prev = 0;
    for (double mu : {-8.0, -6.0, -4.0, -2.0, -1.0, -0.5, -0.05}) {
        const int c = inertia_count(sys.A, sys.M, mu).count;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("lowest-k eigenvalues match the head of the full list") {
    const AssembledSystem sys = well_system(0, ConstraintMode::Dirichlet);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> full(Eigen::MatrixXd(sys.A),
                                                                   Eigen::MatrixXd(sys.M));
    REQUIRE(full.info() == Eigen::Success);

    const SpectralResult r3 = eigs_lowest(sys.A, sys.M, 3);
    REQUIRE(r3.values.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(r3.values[i] == Catch::Approx(full.eigenvalues()[i]).epsilon(1e-12));

    SolverOptions opts;
    opts.force_iterative = true;
    const SpectralResult it3 = eigs_lowest(sys.A, sys.M, 3, opts);
    REQUIRE(it3.values.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(it3.values[i] - full.eigenvalues()[i]) <=
              1e-9 * (1 + std::abs(full.eigenvalues()[i])));

    CHECK(eigs_lowest(sys.A, sys.M, 0).values.empty());
    CHECK_THROWS_AS(eigs_lowest(sys.A, sys.M, sys.A.rows() + 1), SpecgapError);
}

TEST_CASE("eigenvalue clustering merges roundoff splits") {
    const std::vector<double> vals{-3.0, -2.0 + 1e-12, -2.0 + 3e-12, -0.5};
    const auto clusters = cluster_eigenvalues(vals);
    REQUIRE(clusters.size() == 3);
    CHECK(clusters[0] == std::pair<double, int>{-3.0, 1});
    CHECK(clusters[1].second == 2);
    CHECK(clusters[1].first == Catch::Approx(-2.0).margin(1e-11));
    CHECK(clusters[2].second == 1);
    CHECK(cluster_eigenvalues({}).empty());
}

TEST_CASE("iterative solves are bitwise reproducible") {
    const AssembledSystem sys = well_system(1, ConstraintMode::Dirichlet);
    SolverOptions opts;
    opts.force_iterative = true;
    const SpectralResult a = eigs_below(sys.A, sys.M, -0.5, opts);
    const SpectralResult b = eigs_below(sys.A, sys.M, -0.5, opts);
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::memcmp(a.values.data(), b.values.data(), sizeof(double) * a.values.size()) == 0);
    CHECK(a.iterations == b.iterations);
}
